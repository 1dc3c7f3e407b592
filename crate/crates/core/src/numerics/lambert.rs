use crate::error::{Error, Result};
use crate::math::{exp, fabs, log1p, sqrt};

const MAX_ITERATIONS: usize = 50;

/// Principal branch of the Lambert function, `W·e^W = x`.
///
/// Halley iteration started from `ln(1 + x)`; near the branch point the
/// start comes from the square-root expansion around `x = -1/e`.
pub fn lambert_w(x: f64) -> Result<f64> {
    const INV_E: f64 = 1.0 / core::f64::consts::E;
    if x.is_nan() {
        return Err(Error::NotFinite { name: "x" });
    }
    if x < -INV_E {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            lo: -INV_E,
            hi: f64::INFINITY,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == -INV_E {
        return Ok(-1.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }

    let mut w = if x < -0.25 {
        let p = sqrt(2.0 * (core::f64::consts::E * x + 1.0));
        -1.0 + p - p * p / 3.0
    } else {
        log1p(x)
    };

    for _ in 0..MAX_ITERATIONS {
        let ew = exp(w);
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if fabs(step) <= 4.0 * f64::EPSILON * (1.0 + fabs(w)) {
            return Ok(w);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}
