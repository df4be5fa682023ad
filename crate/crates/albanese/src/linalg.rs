//! Exact linear algebra over ℚ: echelon forms, null spaces, determinants and
//! incremental row spaces.

use num_traits::{One, Zero};

use crate::funcfield::Rat;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rat>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[Vec<Rat>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..ncols {
                    let delta = &factor * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

pub fn rank(m: &[Vec<Rat>], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Basis of `{x : m·x = 0}`, one vector per free column, with a one in that
/// column; vectors come out in increasing free-column order.
pub fn nullspace(m: &[Vec<Rat>], ncols: usize) -> Matrix {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    d
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// A subspace of ℚⁿ kept as echelon rows, for repeated membership tests.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    dim: usize,
    /// Each row has a leading one at its pivot; pivots strictly increase.
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating against the stored rows.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        let idx = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(idx, (p, r));
        true
    }

    /// Stored basis vectors, in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.rows.iter().map(|(_, r)| r)
    }
}
