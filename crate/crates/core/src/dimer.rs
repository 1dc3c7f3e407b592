//! Information-theoretic quantities of the thermal dimer state.
//!
//! The Gibbs state of `H = -½ J σ⃗₁·σ⃗₂` is `ρ = ¼(1 + G σ⃗₁·σ⃗₂)`, so every
//! measure below is a closed-form function of the correlator `G`.

use crate::error::{Error, Result};
use crate::math::{exp, expm1, fabs, neg_plog2, one_plus_xlog2, sqrt};

/// Lower end of the physical correlator range (singlet).
pub const G_MIN: f64 = -1.0;
/// Upper end of the physical correlator range (ferromagnetic ground state).
pub const G_MAX: f64 = 1.0 / 3.0;
/// Values this close outside `[G_MIN, G_MAX]` are clamped instead of rejected.
pub const RANGE_TOLERANCE: f64 = 1e-9;
/// Beyond `|2J/T|` of this size `exp` overflows; the zero-temperature limit is returned.
pub const ZERO_T_EXPONENT: f64 = 700.0;

/// Sign class of the exchange coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coupling {
    /// `J < 0`, singlet ground state.
    Antiferro,
    /// `J > 0`, triplet ground state.
    Ferro,
}

impl Coupling {
    pub fn of(j_over_kb: f64) -> Option<Self> {
        if j_over_kb < 0.0 {
            Some(Self::Antiferro)
        } else if j_over_kb > 0.0 {
            Some(Self::Ferro)
        } else {
            None
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Antiferro => "antiferromagnetic",
            Self::Ferro => "ferromagnetic",
        }
    }
}

/// The spin-spin correlator `G`, always inside `[-1, 1/3]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Correlator(f64);

impl Correlator {
    pub const SINGLET: Self = Self(G_MIN);
    pub const FERRO_GROUND: Self = Self(G_MAX);
    pub const UNCORRELATED: Self = Self(0.0);

    /// Checks the physical range, clamping values within [`RANGE_TOLERANCE`].
    pub fn new(g: f64) -> Result<Self> {
        Self::with_tolerance(g, RANGE_TOLERANCE)
    }

    pub fn with_tolerance(g: f64, tolerance: f64) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::NotFinite { name: "G" });
        }
        if g < G_MIN - tolerance || g > G_MAX + tolerance {
            return Err(Error::OutOfRange {
                name: "G",
                value: g,
                lo: G_MIN,
                hi: G_MAX,
            });
        }
        Ok(Self(g.clamp(G_MIN, G_MAX)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Coupling class implied by the sign of `G`; `None` at `G = 0`.
    pub fn coupling(self) -> Option<Coupling> {
        Coupling::of(self.0)
    }
}

/// Exchange coupling `J/k_B` (kelvin) and an effective g-factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParameters {
    j_over_kb: f64,
    g_factor: Option<f64>,
}

impl DimerParameters {
    pub fn new(j_over_kb: f64) -> Result<Self> {
        if !j_over_kb.is_finite() {
            return Err(Error::NotFinite { name: "J/k_B" });
        }
        if j_over_kb == 0.0 {
            return Err(Error::ZeroCoupling);
        }
        Ok(Self {
            j_over_kb,
            g_factor: None,
        })
    }

    /// From the `2J/k_B` convention used by many susceptibility fits.
    pub fn from_two_j(two_j_over_kb: f64) -> Result<Self> {
        Self::new(two_j_over_kb / 2.0)
    }

    pub fn with_g(mut self, g: f64) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::NonPositive {
                name: "g-factor",
                value: g,
            });
        }
        self.g_factor = Some(g);
        Ok(self)
    }

    /// Uses the powder average of principal g-values.
    pub fn with_powder_g(self, gx: f64, gy: f64, gz: f64) -> Result<Self> {
        self.with_g(crate::thermo::powder_g(gx, gy, gz)?)
    }

    pub fn j_over_kb(&self) -> f64 {
        self.j_over_kb
    }

    pub fn two_j_over_kb(&self) -> f64 {
        2.0 * self.j_over_kb
    }

    pub fn g_factor(&self) -> Result<f64> {
        self.g_factor.ok_or(Error::MissingGFactor)
    }

    pub fn g_factor_opt(&self) -> Option<f64> {
        self.g_factor
    }

    pub fn coupling(&self) -> Coupling {
        if self.j_over_kb < 0.0 {
            Coupling::Antiferro
        } else {
            Coupling::Ferro
        }
    }
}

pub(crate) fn check_temperature(t: f64) -> Result<()> {
    if t.is_nan() {
        return Err(Error::NotFinite {
            name: "temperature",
        });
    }
    if t <= 0.0 {
        return Err(Error::NonPositive {
            name: "temperature",
            value: t,
        });
    }
    Ok(())
}

/// `G(T) = -1 + 4/(3 + exp(-2J/k_BT))`.
pub fn correlator_from_temperature(params: &DimerParameters, t: f64) -> Result<Correlator> {
    check_temperature(t)?;
    let x = 2.0 * params.j_over_kb / t;
    if fabs(x) > ZERO_T_EXPONENT {
        return Ok(match params.coupling() {
            Coupling::Antiferro => Correlator::SINGLET,
            Coupling::Ferro => Correlator::FERRO_GROUND,
        });
    }
    // (1 - e^{-x}) / (3 + e^{-x}), free of cancellation at high T
    let g = if x >= 0.0 {
        -expm1(-x) / (3.0 + exp(-x))
    } else {
        expm1(x) / (3.0 * exp(x) + 1.0)
    };
    Ok(Correlator(g.clamp(G_MIN, G_MAX)))
}

/// `I = ¼[(1-3G)log₂(1-3G) + 3(1+G)log₂(1+G)]`, bits.
pub fn mutual_information(g: Correlator) -> f64 {
    let g = g.0;
    (one_plus_xlog2(-3.0 * g) + 3.0 * one_plus_xlog2(g)) / 4.0
}

/// `C = ½[(1+|G|)log₂(1+|G|) + (1-|G|)log₂(1-|G|)]`, bits.
pub fn classical_correlation(g: Correlator) -> f64 {
    let a = fabs(g.0);
    (one_plus_xlog2(a) + one_plus_xlog2(-a)) / 2.0
}

/// Thermal discord `Q = I - C`, bits.
pub fn discord(g: Correlator) -> f64 {
    mutual_information(g) - classical_correlation(g)
}

/// Wootters concurrence of the dimer state.
///
/// Zero for every ferromagnetic state; `max(0, -(1+3G)/2)` otherwise.
pub fn concurrence(g: Correlator, coupling: Coupling) -> Result<f64> {
    match coupling {
        Coupling::Antiferro if g.0 > RANGE_TOLERANCE => Err(Error::CouplingMismatch {
            value: g.0,
            coupling: coupling.name(),
        }),
        Coupling::Ferro if g.0 < -RANGE_TOLERANCE => Err(Error::CouplingMismatch {
            value: g.0,
            coupling: coupling.name(),
        }),
        Coupling::Antiferro => Ok(f64::max(0.0, -(1.0 + 3.0 * g.0) / 2.0)),
        Coupling::Ferro => Ok(0.0),
    }
}

/// Entanglement of formation from the concurrence, bits.
pub fn entanglement_of_formation(c_tilde: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c_tilde) {
        return Err(Error::OutOfRange {
            name: "concurrence",
            value: c_tilde,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let root = sqrt((1.0 - c_tilde) * (1.0 + c_tilde));
    let p = (1.0 + root) / 2.0;
    let q = (1.0 - root) / 2.0;
    Ok(neg_plog2(p) + neg_plog2(q))
}

/// Temperature above which the antiferromagnetic dimer is separable:
/// `T_e = 2|J|/(k_B ln 3)`.
pub fn entanglement_death_temperature(params: &DimerParameters) -> Result<f64> {
    match params.coupling() {
        Coupling::Ferro => Err(Error::NoEntanglement),
        Coupling::Antiferro => Ok(2.0 / crate::math::log(3.0) * fabs(params.j_over_kb)),
    }
}

/// Real symmetric 4×4 state in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    pub entries: [[f64; 4]; 4],
}

impl DensityMatrix4 {
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// Transposes the second qubit's indices.
    pub fn partial_transpose(&self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (row, out_row) in out.iter_mut().enumerate() {
            for (col, value) in out_row.iter_mut().enumerate() {
                let (a, b) = (row / 2, row % 2);
                let (c, d) = (col / 2, col % 2);
                *value = self.entries[2 * a + d][2 * c + b];
            }
        }
        Self { entries: out }
    }
}

/// The X-shaped thermal state `¼(1 + G σ⃗₁·σ⃗₂)`.
pub fn density_matrix(g: Correlator) -> DensityMatrix4 {
    let g = g.0;
    let d = (1.0 + g) / 4.0;
    let m = (1.0 - g) / 4.0;
    let o = g / 2.0;
    DensityMatrix4 {
        entries: [
            [d, 0.0, 0.0, 0.0],
            [0.0, m, o, 0.0],
            [0.0, o, m, 0.0],
            [0.0, 0.0, 0.0, d],
        ],
    }
}

/// Spectrum of the partially transposed state, ascending.
///
/// `(1+3G)/4` once and `(1-G)/4` three times; the first is negative exactly
/// when the state is entangled.
pub fn ppt_eigenvalues(g: Correlator) -> [f64; 4] {
    let g = g.0;
    let single = (1.0 + 3.0 * g) / 4.0;
    let triple = (1.0 - g) / 4.0;
    let mut out = [single, triple, triple, triple];
    out.sort_by(f64::total_cmp);
    out
}

/// `{I, C, Q, C̃, E}` for one state, all in bits except the concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSet {
    pub mutual_information: f64,
    pub classical: f64,
    pub discord: f64,
    pub concurrence: f64,
    pub entanglement: f64,
}

impl CorrelationSet {
    /// Coupling class is read off the sign of `G`.
    pub fn from_correlator(g: Correlator) -> Self {
        let coupling = g.coupling().unwrap_or(Coupling::Ferro);
        let mutual_information = mutual_information(g);
        let classical = classical_correlation(g);
        let concurrence = concurrence(g, coupling).unwrap_or(0.0);
        let entanglement = entanglement_of_formation(concurrence.min(1.0)).unwrap_or(0.0);
        Self {
            mutual_information,
            classical,
            discord: mutual_information - classical,
            concurrence,
            entanglement,
        }
    }
}

/// All correlation measures of the dimer at temperature `t`.
pub fn correlation_set(params: &DimerParameters, t: f64) -> Result<CorrelationSet> {
    let g = correlator_from_temperature(params, t)?;
    let mut set = CorrelationSet::from_correlator(g);
    if params.coupling() == Coupling::Ferro {
        set.concurrence = 0.0;
        set.entanglement = 0.0;
    }
    Ok(set)
}
