//! Thin float helpers over `libm` so the crate builds without `std`.

pub(crate) use libm::{exp, expm1, fabs, log, log1p, sqrt};

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

/// Arguments below this are treated as zero in `x·log x` terms.
pub(crate) const ENTROPY_FLOOR: f64 = 1e-30;

/// `(1 + a)·log₂(1 + a)` with `0·log 0 = 0`.
pub(crate) fn one_plus_xlog2(a: f64) -> f64 {
    let x = 1.0 + a;
    if x < ENTROPY_FLOOR {
        0.0
    } else {
        x * log1p(a) / LN_2
    }
}

/// `-p·log₂ p`, zero at the endpoint.
pub(crate) fn neg_plog2(p: f64) -> f64 {
    if p < ENTROPY_FLOOR {
        0.0
    } else {
        -p * log(p) / LN_2
    }
}

pub(crate) fn sq(x: f64) -> f64 {
    x * x
}
