//! Dimensionless reference points of the dimer, in units of `|J|/k_B`.
//!
//! Scale the temperatures by `|J/k_B|` to get kelvin for a material.

use crate::dimer::{
    classical_correlation, concurrence, correlator_from_temperature, discord,
    entanglement_death_temperature, entanglement_of_formation, mutual_information, Correlator,
    Coupling, DimerParameters,
};
use crate::error::Result;
use crate::numerics::{find_crossing, maximize_scalar, Crossing};
use crate::thermo::{reduced_susceptibility_maximum, schottky_maximum, SchottkyMaximum};

const CROSSING_TOLERANCE: f64 = 1e-12;

fn unit(coupling: Coupling) -> DimerParameters {
    let j = match coupling {
        Coupling::Antiferro => -1.0,
        Coupling::Ferro => 1.0,
    };
    DimerParameters::new(j).expect("unit coupling is nonzero")
}

fn g_at(params: &DimerParameters, t: f64) -> Correlator {
    correlator_from_temperature(params, t).unwrap_or(Correlator::UNCORRELATED)
}

fn entanglement_at(params: &DimerParameters, t: f64) -> f64 {
    let g = g_at(params, t);
    concurrence(g, params.coupling())
        .and_then(entanglement_of_formation)
        .unwrap_or(0.0)
}

/// Landmarks of the antiferromagnetic dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiferroLandmarks {
    /// `k_B T_e / |J| = 2/ln 3`.
    pub death_temperature: f64,
    /// Where discord and entanglement of formation cross.
    pub discord_entanglement: Crossing,
    /// Where classical correlation and entanglement of formation cross;
    /// `value` is `C = E` there.
    pub classical_entanglement: Crossing,
    /// Discord at the `C = E` crossing.
    pub discord_at_classical_crossing: f64,
    /// `I(T_e) = 1 - ½ log₂ 3`.
    pub mutual_information_at_death: f64,
    /// `Q(T_e) = ½ log₂ 3 - 2/3`.
    pub discord_at_death: f64,
    pub schottky: SchottkyMaximum,
    /// `(k_B T_max/|J|, |J| χ_max / N_A g² μ_B²)` from `W(3/e)`.
    pub susceptibility_maximum: (f64, f64),
    /// The same pair from direct maximisation of `(1 + G)/2T`.
    pub susceptibility_maximum_numeric: (f64, f64),
}

/// Landmarks of the ferromagnetic dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerroLandmarks {
    /// Ground-state discord `Q₀ = 1/3`.
    pub ground_discord: f64,
    /// Ground-state classical correlation `C₀ = 5/3 - log₂ 3`.
    pub ground_classical: f64,
    pub schottky: SchottkyMaximum,
}

impl FerroLandmarks {
    /// `Q₀/C₀ = 1/(5 - 3 log₂ 3)`.
    pub fn discord_to_classical_ratio(&self) -> f64 {
        self.ground_discord / self.ground_classical
    }
}

pub fn antiferro_landmarks() -> Result<AntiferroLandmarks> {
    let params = unit(Coupling::Antiferro);
    let death_temperature = entanglement_death_temperature(&params)?;

    let q = |t: f64| discord(g_at(&params, t));
    let c = |t: f64| classical_correlation(g_at(&params, t));
    let e = |t: f64| entanglement_at(&params, t);
    let discord_entanglement = find_crossing(q, e, 0.3, 0.8, CROSSING_TOLERANCE)?;
    let classical_entanglement = find_crossing(c, e, 0.7, 1.2, CROSSING_TOLERANCE)?;

    let g_death = Correlator::new(-1.0 / 3.0)?;
    let numeric = maximize_scalar(|t| (1.0 + g_at(&params, t).value()) / (2.0 * t), 0.5, 3.0)?;

    Ok(AntiferroLandmarks {
        death_temperature,
        discord_entanglement,
        classical_entanglement,
        discord_at_classical_crossing: q(classical_entanglement.t),
        mutual_information_at_death: mutual_information(g_death),
        discord_at_death: discord(g_death),
        schottky: schottky_maximum(&params)?,
        susceptibility_maximum: reduced_susceptibility_maximum(),
        susceptibility_maximum_numeric: (numeric.x, numeric.value),
    })
}

pub fn ferro_landmarks() -> Result<FerroLandmarks> {
    let params = unit(Coupling::Ferro);
    Ok(FerroLandmarks {
        ground_discord: discord(Correlator::FERRO_GROUND),
        ground_classical: classical_correlation(Correlator::FERRO_GROUND),
        schottky: schottky_maximum(&params)?,
    })
}
