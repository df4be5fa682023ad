//! Integer matrices: Smith normal form with transforms, saturated kernels and
//! Hermite-reduced lattice bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `left · m · right = diag`, with `left` and `right` unimodular and the
/// nonzero diagonal entries positive and successively dividing.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

struct Work {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q · row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
    }

    /// col_i -= q · col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                let s = row[j].clone();
                row[i] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.left] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

pub fn smith(m: &IntMatrix, ncols: usize) -> Smith {
    let nrows = m.len();
    let mut w = Work {
        a: m.clone(),
        left: identity(nrows),
        right: identity(ncols),
    };
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let offender = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&w.a[i][j] % &w.a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    w.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Smith {
        diag: w.a,
        left: w.left,
        right: w.right,
        rank: t,
    }
}

/// Z-basis of `{x ∈ Zⁿ : m·x = 0}`, in Hermite-reduced row form (leading
/// entries positive, entries above each pivot reduced); every vector is
/// primitive since the kernel is saturated.
pub fn integer_kernel(m: &IntMatrix, ncols: usize) -> IntMatrix {
    let s = smith(m, ncols);
    let raw: IntMatrix = (s.rank..ncols)
        .map(|j| s.right.iter().map(|row| row[j].clone()).collect())
        .collect();
    hermite_rows(raw, ncols)
}

/// Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hermite_rows(mut rows: IntMatrix, ncols: usize) -> IntMatrix {
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // gcd-combine column entries into row r
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][col].clone(), rows[i][col].clone());
            let e = a.extended_gcd(&b);
            let (ua, ub) = (&a / &e.gcd, &b / &e.gcd);
            let new_r: Vec<BigInt> = rows[r]
                .iter()
                .zip(&rows[i])
                .map(|(x, y)| &e.x * x + &e.y * y)
                .collect();
            let new_i: Vec<BigInt> = rows[r]
                .iter()
                .zip(&rows[i])
                .map(|(x, y)| &ua * y - &ub * x)
                .collect();
            rows[r] = new_r;
            rows[i] = new_i;
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                let src = rows[r].clone();
                for (x, s) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * s;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// LLL-reduces a basis of linearly independent integer rows with
/// parameter `delta` (commonly 3/4), using exact rational Gram-Schmidt data.
pub fn lll_reduce(rows: &IntMatrix, delta: &BigRational) -> IntMatrix {
    let n = rows.len();
    if n < 2 {
        return rows.clone();
    }
    let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let to_rat = |v: &[BigInt]| -> Vec<BigRational> {
        v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    };
    let mut b = rows.clone();
    let mut bs: Vec<Vec<BigRational>> = vec![Vec::new(); n];
    let mut bn = vec![BigRational::zero(); n];
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    bs[0] = to_rat(&b[0]);
    bn[0] = dot(&bs[0], &bs[0]);
    let (mut k, mut kmax) = (1, 0);

    let reduce = |b: &mut IntMatrix, mu: &mut Vec<Vec<BigRational>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = (&mu[k][l] + &half).floor().to_integer();
            let src = b[l].clone();
            for (x, s) in b[k].iter_mut().zip(&src) {
                *x -= &q * s;
            }
            let qr = BigRational::from_integer(q);
            mu[k][l] -= &qr;
            for i in 0..l {
                let d = &qr * &mu[l][i];
                mu[k][i] -= d;
            }
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            let bk = to_rat(&b[k]);
            let mut star = bk.clone();
            for j in 0..k {
                mu[k][j] = dot(&bk, &bs[j]) / &bn[j];
                for (x, y) in star.iter_mut().zip(&bs[j]) {
                    *x -= &mu[k][j] * y;
                }
            }
            bn[k] = dot(&star, &star);
            bs[k] = star;
        }
        reduce(&mut b, &mut mu, k, k - 1);
        let lovasz = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if bn[k] < lovasz {
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let m = mu[k][k - 1].clone();
            let big = &bn[k] + &m * &m * &bn[k - 1];
            mu[k][k - 1] = &m * &bn[k - 1] / &big;
            let old = bs[k - 1].clone();
            bs[k - 1] = bs[k].iter().zip(&old).map(|(x, y)| x + &m * y).collect();
            let ratio = &bn[k] / &big;
            bs[k] = bs[k]
                .iter()
                .zip(&old)
                .map(|(x, y)| -&mu[k][k - 1] * x + &ratio * y)
                .collect();
            bn[k] = &bn[k - 1] * &bn[k] / &big;
            bn[k - 1] = big;
            for i in k + 1..=kmax {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    b
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, ncols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}
