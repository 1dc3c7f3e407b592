use crate::dimer::{correlator_from_temperature, DimerParameters};
use crate::error::{Error, Result};
use crate::math::{exp, fabs, log, sq, sqrt};
use crate::sample::Sample;
use crate::thermo::CURIE_PREFACTOR;

/// Objective evaluations allowed before giving up.
pub const MAX_EVALUATIONS: usize = 10_000;
const STEP_TOLERANCE: f64 = 1e-8;
const MAX_DAMPING: f64 = 1e20;

/// Outcome of a Bleaney-Bowers least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub j_over_kb: f64,
    pub g_factor: f64,
    /// `√Σ wᵢ (χ_model - χᵢ)²`.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl FitResult {
    pub fn parameters(&self) -> Result<DimerParameters> {
        DimerParameters::new(self.j_over_kb)?.with_g(self.g_factor)
    }
}

/// Model value and its derivatives with respect to `ln|J|` and `g`.
fn model(sign: f64, log_j: f64, g: f64, t: f64) -> (f64, f64, f64) {
    let j = sign * exp(log_j);
    // the exponent form mirrors correlator_from_temperature, differentiated by hand
    let x = 2.0 * j / t;
    let (one_plus_g, d_dj) = if fabs(x) > crate::dimer::ZERO_T_EXPONENT {
        let limit = DimerParameters::new(j)
            .and_then(|p| correlator_from_temperature(&p, t))
            .map(|c| 1.0 + c.value())
            .unwrap_or(1.0);
        (limit, 0.0)
    } else {
        let e = exp(-x);
        (4.0 / (3.0 + e), 8.0 * e / (t * sq(3.0 + e)))
    };
    let prefactor = CURIE_PREFACTOR * g * g / (2.0 * t);
    let chi = prefactor * one_plus_g;
    (chi, prefactor * d_dj * j, 2.0 * chi / g)
}

/// Least-squares fit of `χ(T; J, g)` to a susceptibility series.
///
/// Damped Gauss-Newton (Levenberg-Marquardt) over `(ln|J|, g)`, so the sign
/// of `J` stays that of the initial guess. Rows with a `sigma` are weighted
/// by `1/σ²`. Running out of evaluations is not an error: the best point
/// found is returned with `converged = false`.
pub fn fit_bleaney_bowers(series: &[Sample], init: &DimerParameters) -> Result<FitResult> {
    if series.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: series.len(),
        });
    }
    for s in series {
        if !(s.t > 0.0) {
            return Err(Error::NonPositive {
                name: "temperature",
                value: s.t,
            });
        }
        if !s.value.is_finite() {
            return Err(Error::NotFinite {
                name: "susceptibility",
            });
        }
        if let Some(sigma) = s.sigma {
            if !(sigma > 0.0) {
                return Err(Error::OutOfRange {
                    name: "sigma",
                    value: sigma,
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
        }
    }
    let t0 = series[0].t;
    if series.iter().all(|s| s.t == t0) {
        return Err(Error::DegenerateData);
    }

    let sign = if init.j_over_kb() < 0.0 { -1.0 } else { 1.0 };
    let mut params = [log(fabs(init.j_over_kb())), init.g_factor()?];
    let weight = |s: &Sample| s.sigma.map_or(1.0, |sigma| 1.0 / (sigma * sigma));

    let cost = |p: &[f64; 2]| -> f64 {
        series
            .iter()
            .map(|s| weight(s) * sq(model(sign, p[0], p[1], s.t).0 - s.value))
            .sum()
    };

    let mut evaluations = 1;
    let mut current = cost(&params);
    let mut damping = 1e-3;
    let mut iterations = 0;
    let mut converged = current == 0.0;

    while !converged && evaluations < MAX_EVALUATIONS {
        iterations += 1;
        // normal equations JᵀWJ δ = -JᵀW r
        let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for s in series {
            let w = weight(s);
            let (chi, d_log_j, d_g) = model(sign, params[0], params[1], s.t);
            let r = chi - s.value;
            a11 += w * d_log_j * d_log_j;
            a12 += w * d_log_j * d_g;
            a22 += w * d_g * d_g;
            b1 -= w * d_log_j * r;
            b2 -= w * d_g * r;
        }
        evaluations += 1;

        loop {
            let m11 = a11 * (1.0 + damping);
            let m22 = a22 * (1.0 + damping);
            let det = m11 * m22 - a12 * a12;
            let step = if det != 0.0 && det.is_finite() {
                [(b1 * m22 - a12 * b2) / det, (m11 * b2 - a12 * b1) / det]
            } else {
                [0.0, 0.0]
            };
            let trial = [params[0] + step[0], params[1] + step[1]];
            let trial_cost = cost(&trial);
            evaluations += 1;

            // ln|J| steps are already relative changes of J
            let relative = fabs(step[0]).max(fabs(step[1]) / fabs(params[1]));
            if trial_cost <= current {
                params = trial;
                current = trial_cost;
                damping = (damping / 10.0).max(1e-12);
                converged = relative < STEP_TOLERANCE || current == 0.0;
                break;
            }
            if relative < STEP_TOLERANCE || damping > MAX_DAMPING {
                // no descent left within round-off
                converged = true;
                break;
            }
            damping *= 10.0;
            if evaluations >= MAX_EVALUATIONS {
                break;
            }
        }
    }

    Ok(FitResult {
        j_over_kb: sign * exp(params[0]),
        g_factor: fabs(params[1]),
        residual_norm: sqrt(current),
        iterations,
        converged,
    })
}
