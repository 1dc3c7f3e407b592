use crate::error::{Error, Result};
use crate::math::fabs;

/// A central value with a one-sigma half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithUncertainty {
    pub value: f64,
    pub sigma: f64,
}

impl ValueWithUncertainty {
    pub fn new(value: f64, sigma: f64) -> Result<Self> {
        if !value.is_finite() || !sigma.is_finite() {
            return Err(Error::NotFinite { name: "value" });
        }
        if sigma < 0.0 {
            return Err(Error::OutOfRange {
                name: "sigma",
                value: sigma,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        Ok(Self { value, sigma })
    }

    pub const fn exact(value: f64) -> Self {
        Self { value, sigma: 0.0 }
    }
}

/// Which end of the error bar was usable when the other left the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagated {
    pub result: ValueWithUncertainty,
    /// Set when only one end of `x ± σ` was inside the domain of `f`.
    pub one_sided: Option<Side>,
}

/// Secant propagation over the full error bar.
///
/// `σ_out = |f(x+σ) - f(x-σ)|/2`. If one end falls outside the domain of
/// `f`, the secant over the remaining half-interval is used instead and the
/// result is flagged. Fails if `f(x)` fails or both ends are outside.
pub fn propagate_uncertainty<F>(f: F, x: ValueWithUncertainty) -> Result<Propagated>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = f(x.value)?;
    if x.sigma == 0.0 {
        return Ok(Propagated {
            result: ValueWithUncertainty::exact(center),
            one_sided: None,
        });
    }
    let upper = f(x.value + x.sigma);
    let lower = f(x.value - x.sigma);
    let (sigma, one_sided) = match (lower, upper) {
        (Ok(lo), Ok(hi)) => (fabs(hi - lo) / 2.0, None),
        (Ok(lo), Err(_)) => (fabs(center - lo), Some(Side::Lower)),
        (Err(_), Ok(hi)) => (fabs(hi - center), Some(Side::Upper)),
        (Err(e), Err(_)) => return Err(e),
    };
    Ok(Propagated {
        result: ValueWithUncertainty {
            value: center,
            sigma,
        },
        one_sided,
    })
}
