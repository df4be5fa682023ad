//! Seeded random rationals, polynomials and split rational functions of
//! bounded height.

use rand::Rng;

use crate::funcfield::{frac, Poly, Rat, RatFunc};

/// `p/q` with `|p| ≤ h` and `1 ≤ q ≤ h`.
pub fn random_rat<R: Rng + ?Sized>(rng: &mut R, h: i64) -> Rat {
    let h = h.max(1);
    frac(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn random_nonzero_rat<R: Rng + ?Sized>(rng: &mut R, h: i64) -> Rat {
    loop {
        let r = random_rat(rng, h);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// Integer coefficients in `[-h, h]`, degree at most `deg`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, deg: usize, h: i64) -> Poly {
    Poly::from_ints(&(0..=deg).map(|_| rng.gen_range(-h..=h)).collect::<Vec<_>>())
}

/// `c · ∏ (t - a_i) / ∏ (t - b_j)` with at most `deg` factors above and
/// below and all constants of height at most `h`.
pub fn random_split_func<R: Rng + ?Sized>(rng: &mut R, deg: usize, h: i64) -> RatFunc {
    let mut f = RatFunc::constant(random_nonzero_rat(rng, h));
    for _ in 0..rng.gen_range(0..=deg) {
        f = &f * &RatFunc::linear(&random_rat(rng, h));
    }
    for _ in 0..rng.gen_range(0..=deg) {
        let l = RatFunc::linear(&random_rat(rng, h));
        f = (&f / &l).expect("nonzero linear factor");
    }
    f
}
