//! Thermodynamics of the dimer and the inversions that recover `G` from it.
//!
//! Units are CGS-emu. Extensive quantities are per mole of *dimers*;
//! per-copper literature values must be doubled before they reach this
//! module.

use alloc::vec::Vec;

use crate::dimer::{
    check_temperature, correlator_from_temperature, Correlator, Coupling, DimerParameters, G_MAX,
    G_MIN,
};
use crate::error::{Error, Result, RowError};
use crate::math::{exp, fabs, log1p, sq, sqrt, ENTROPY_FLOOR};
use crate::numerics::{
    find_root, integrate_series_with_tail, lambert_w, maximize_scalar, Bracket, Maximum, TailModel,
};
use crate::sample::Sample;

/// CGS values of the constants entering the Bleaney-Bowers prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// erg/K
    pub boltzmann: f64,
    /// erg/G
    pub bohr_magneton: f64,
    /// 1/mol
    pub avogadro: f64,
}

impl PhysicalConstants {
    pub const CODATA: Self = Self {
        boltzmann: 1.380_649e-16,
        bohr_magneton: 9.274_010_078_3e-21,
        avogadro: 6.022_140_76e23,
    };

    /// `N_A μ_B² / k_B` in emu·K/mol.
    pub const fn curie_prefactor(&self) -> f64 {
        self.avogadro * self.bohr_magneton * self.bohr_magneton / self.boltzmann
    }
}

/// `N_A μ_B² / k_B` ≈ 0.375148 emu·K/mol.
pub const CURIE_PREFACTOR: f64 = PhysicalConstants::CODATA.curie_prefactor();

/// Internal energy per mole of dimers over `R`, in kelvin.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MolarEnergy(pub f64);

/// Magnetic specific heat per mole of dimers over `R`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpecificHeat(pub f64);

/// Molar susceptibility (emu per mole of dimers) measured at `t` kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibility {
    pub chi: f64,
    pub t: f64,
}

/// Which side of the Schottky peak a specific-heat value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Above `T_max`, `|G|` below the peak correlator.
    Hot,
    /// Below `T_max`, `|G|` above the peak correlator.
    Cold,
}

/// Tolerance on the specific-heat input range of the inversion.
pub const SPECIFIC_HEAT_TOLERANCE: f64 = 1e-6;
/// Widened range check for `G` implied by a susceptibility measurement.
pub const SUSCEPTIBILITY_G_TOLERANCE: f64 = 1e-2;

/// `u/R = -(3/2)(J/k_B)·G`.
pub fn internal_energy(params: &DimerParameters, g: Correlator) -> MolarEnergy {
    MolarEnergy(-1.5 * params.j_over_kb() * g.value())
}

pub fn correlator_from_internal_energy(
    params: &DimerParameters,
    u: MolarEnergy,
) -> Result<Correlator> {
    let g = -2.0 * u.0 / (3.0 * params.j_over_kb());
    Correlator::new(g).map_err(|_| Error::Inconsistent { value: g })
}

/// `c_m/R = 12 x² e^{2x} / (1 + 3e^{2x})²` with `x = J/k_BT`.
pub fn specific_heat(params: &DimerParameters, t: f64) -> Result<SpecificHeat> {
    check_temperature(t)?;
    let x = params.j_over_kb() / t;
    if fabs(2.0 * x) > crate::dimer::ZERO_T_EXPONENT {
        return Ok(SpecificHeat(0.0));
    }
    // keep the exponential below one on both sides of x = 0
    let (e, denom) = if x > 0.0 {
        let e = exp(-2.0 * x);
        (e, e + 3.0)
    } else {
        let e = exp(2.0 * x);
        (e, 1.0 + 3.0 * e)
    };
    Ok(SpecificHeat(12.0 * x * x * e / sq(denom)))
}

/// `c_m/R = (3/16)(1+G)(1-3G) ln²[(1+G)/(1-3G)]`; zero at `G = -1, 0, 1/3`.
pub fn specific_heat_from_correlator(g: Correlator) -> SpecificHeat {
    let g = g.value();
    let a = 1.0 + g;
    let b = 1.0 - 3.0 * g;
    if a < ENTROPY_FLOOR || b < ENTROPY_FLOOR {
        return SpecificHeat(0.0);
    }
    let ln_ratio = log1p(g) - log1p(-3.0 * g);
    SpecificHeat(3.0 / 16.0 * a * b * ln_ratio * ln_ratio)
}

fn cm_of(g: f64) -> f64 {
    specific_heat_from_correlator(
        Correlator::new(g.clamp(G_MIN, G_MAX)).unwrap_or(Correlator::UNCORRELATED),
    )
    .0
}

/// Correlator at which `c_m(G)` peaks on the given side, with the peak value.
pub fn specific_heat_branch_split(coupling: Coupling) -> Maximum {
    let (lo, hi) = match coupling {
        Coupling::Antiferro => (G_MIN, 0.0),
        Coupling::Ferro => (0.0, G_MAX),
    };
    // c_m(G) is unimodal on each side
    maximize_scalar(cm_of, lo, hi).unwrap_or(Maximum { x: lo, value: 0.0 })
}

/// Solves `c_m(G) = cm` on one side of the Schottky peak.
///
/// With `branch = None` the answer is only unique at the peak itself;
/// anywhere else [`Error::AmbiguousBranch`] is returned.
pub fn correlator_from_specific_heat(
    cm: SpecificHeat,
    coupling: Coupling,
    branch: Option<Branch>,
) -> Result<Correlator> {
    let split = specific_heat_branch_split(coupling);
    let target = cm.0;
    if !target.is_finite() {
        return Err(Error::NotFinite { name: "c_m/R" });
    }
    if target < -SPECIFIC_HEAT_TOLERANCE {
        return Err(Error::OutOfRange {
            name: "c_m/R",
            value: target,
            lo: 0.0,
            hi: split.value,
        });
    }
    if target > split.value + SPECIFIC_HEAT_TOLERANCE {
        return Err(Error::NoSolution {
            value: target,
            max: split.value,
        });
    }
    if target >= split.value {
        return Correlator::new(split.x);
    }
    let branch = branch.ok_or(Error::AmbiguousBranch { value: target })?;
    let end = match (coupling, branch) {
        (_, Branch::Hot) => 0.0,
        (Coupling::Antiferro, Branch::Cold) => G_MIN,
        (Coupling::Ferro, Branch::Cold) => G_MAX,
    };
    if target <= 0.0 {
        return Correlator::new(end);
    }
    let (lo, hi) = if end < split.x {
        (end, split.x)
    } else {
        (split.x, end)
    };
    let f = |g: f64| cm_of(g) - target;
    let g = find_root(f, Bracket::new(f, lo, hi)?, 1e-13)?;
    Correlator::new(g)
}

/// Picks the branch by comparing `t` with the Schottky peak temperature.
pub fn correlator_from_specific_heat_at(
    params: &DimerParameters,
    t: f64,
    cm: SpecificHeat,
) -> Result<Correlator> {
    check_temperature(t)?;
    let peak = schottky_maximum(params)?;
    let branch = if t >= peak.t_max {
        Branch::Hot
    } else {
        Branch::Cold
    };
    correlator_from_specific_heat(cm, params.coupling(), Some(branch))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchottkyMaximum {
    pub t_max: f64,
    pub cm_max: SpecificHeat,
}

/// Peak of the specific heat, located numerically.
pub fn schottky_maximum(params: &DimerParameters) -> Result<SchottkyMaximum> {
    let scale = fabs(params.j_over_kb());
    let m = maximize_scalar(
        |t| specific_heat(params, t).map(|c| c.0).unwrap_or(0.0),
        0.2 * scale,
        3.0 * scale,
    )?;
    Ok(SchottkyMaximum {
        t_max: m.x,
        cm_max: SpecificHeat(m.value),
    })
}

/// Bleaney-Bowers: `χ = N_A g² μ_B² (1 + G) / (2 k_B T)`.
pub fn susceptibility(params: &DimerParameters, t: f64) -> Result<Susceptibility> {
    check_temperature(t)?;
    let g_factor = params.g_factor()?;
    let g = correlator_from_temperature(params, t)?;
    Ok(Susceptibility {
        chi: CURIE_PREFACTOR * g_factor * g_factor / (2.0 * t) * (1.0 + g.value()),
        t,
    })
}

/// `G = 2 k_B T χ / (N_A g² μ_B²) - 1`.
pub fn correlator_from_susceptibility(chi: Susceptibility, g_factor: f64) -> Result<Correlator> {
    check_temperature(chi.t)?;
    if !(g_factor > 0.0) {
        return Err(Error::NonPositive {
            name: "g-factor",
            value: g_factor,
        });
    }
    let g = 2.0 * chi.t * chi.chi / (CURIE_PREFACTOR * g_factor * g_factor) - 1.0;
    Correlator::with_tolerance(g, SUSCEPTIBILITY_G_TOLERANCE)
        .map_err(|_| Error::Inconsistent { value: g })
}

/// `W(3/e)`, the root of `W e^W = 3/e`.
pub fn lambert_w_three_over_e() -> f64 {
    lambert_w(3.0 / core::f64::consts::E).unwrap_or(f64::NAN)
}

/// `(k_B T_max/|J|, |J| χ_max / (N_A g² μ_B²))` for the antiferromagnetic dimer.
pub fn reduced_susceptibility_maximum() -> (f64, f64) {
    let w = lambert_w_three_over_e();
    (2.0 / (1.0 + w), w / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityMaximum {
    pub t_max: f64,
    /// emu/mol; `None` when no g-factor is set.
    pub chi_max: Option<f64>,
}

pub fn susceptibility_maximum(params: &DimerParameters) -> Result<SusceptibilityMaximum> {
    if params.coupling() == Coupling::Ferro {
        return Err(Error::NoSusceptibilityMaximum);
    }
    let j = fabs(params.j_over_kb());
    let (t_reduced, chi_reduced) = reduced_susceptibility_maximum();
    Ok(SusceptibilityMaximum {
        t_max: t_reduced * j,
        chi_max: params
            .g_factor_opt()
            .map(|g| chi_reduced * CURIE_PREFACTOR * g * g / j),
    })
}

/// Powder-averaged g-factor `√((g_x² + g_y² + g_z²)/3)`.
pub fn powder_g(gx: f64, gy: f64, gz: f64) -> Result<f64> {
    for value in [gx, gy, gz] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositive {
                name: "g-factor component",
                value,
            });
        }
    }
    Ok(sqrt((gx * gx + gy * gy + gz * gz) / 3.0))
}

/// `u = -3 N_A J (k_B T χ / (N_A g² μ_B²) - ½)`, divided by `R`.
pub fn internal_energy_from_susceptibility(
    params: &DimerParameters,
    chi: Susceptibility,
) -> Result<MolarEnergy> {
    // same domain as the correlator inversion
    correlator_from_susceptibility(chi, params.g_factor()?)?;
    let g_factor = params.g_factor()?;
    let reduced = chi.t * chi.chi / (CURIE_PREFACTOR * g_factor * g_factor);
    Ok(MolarEnergy(-3.0 * params.j_over_kb() * (reduced - 0.5)))
}

/// Per-row results of a series transformation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeriesOutcome {
    pub values: Vec<Sample>,
    pub errors: Vec<RowError>,
}

/// `χ(T) → G(T) → c_m(T)/R`, point by point and without differentiation.
pub fn specific_heat_from_susceptibility_series(
    params: &DimerParameters,
    series: &[Sample],
) -> Result<SeriesOutcome> {
    let g_factor = params.g_factor()?;
    let mut out = SeriesOutcome::default();
    for (row, s) in series.iter().enumerate() {
        let chi = Susceptibility {
            chi: s.value,
            t: s.t,
        };
        match correlator_from_susceptibility(chi, g_factor) {
            Ok(g) => out
                .values
                .push(Sample::new(s.t, specific_heat_from_correlator(g).0)),
            Err(error) => out.errors.push(RowError { row, error }),
        }
    }
    Ok(out)
}

/// Internal energy reconstructed from calorimetry.
#[derive(Debug, Clone, PartialEq)]
pub struct CalorimetricEnergy {
    /// Temperature at which `energy` applies: the tail start, else the last sample.
    pub t: f64,
    pub energy: MolarEnergy,
    /// `u(0)/R` used or implied.
    pub ground_state: MolarEnergy,
    /// True when neither a tail nor `u(0)` was available, so the part of
    /// `∫ c_m dT` above the data is missing and `u` is biased.
    pub truncated: bool,
    pub clamped_rows: Vec<usize>,
}

/// `u(T) = u(0) + ∫₀^T c_m dT` with `u(0) = -∫₀^∞ c_m dT` unless supplied.
///
/// With a supplied `u(0)` and data, the data integral is added to it. Without
/// data, or without `u(0)`, the energy follows from `u(∞) = 0` as minus the
/// tail integral.
pub fn internal_energy_from_specific_heat(
    series: &[Sample],
    tail: Option<&TailModel>,
    ground_state: Option<MolarEnergy>,
) -> Result<CalorimetricEnergy> {
    let t = match (tail, series.last()) {
        (Some(tail), _) => tail.t_start,
        (None, Some(last)) => last.t,
        (None, None) => return Err(Error::TooFewPoints { needed: 1, got: 0 }),
    };
    let total = integrate_series_with_tail(series, tail)?;
    let above = tail.map_or(0.0, TailModel::integral);
    let below = total.value - above;

    let (energy, ground, truncated) = match ground_state {
        Some(u0) if !series.is_empty() => (u0.0 + below, u0.0, false),
        Some(u0) if tail.is_some() => (-above, u0.0, false),
        Some(u0) => (u0.0, u0.0, false),
        None => (-above, -total.value, tail.is_none()),
    };
    Ok(CalorimetricEnergy {
        t,
        energy: MolarEnergy(energy),
        ground_state: MolarEnergy(ground),
        truncated,
        clamped_rows: total.clamped_rows,
    })
}
