use dimerq_core::DimerParameters;

use crate::error::{DataError, Result};

/// Fitted exchange constant and g-factor of a real compound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialPreset {
    pub name: &'static str,
    pub j_over_kb: f64,
    pub g_factor: Option<f64>,
    pub source: &'static str,
}

impl MaterialPreset {
    pub fn parameters(&self) -> DimerParameters {
        let p = DimerParameters::new(self.j_over_kb).expect("preset coupling is nonzero");
        match self.g_factor {
            Some(g) => p.with_g(g).expect("preset g-factor is positive"),
            None => p,
        }
    }
}

pub const PRESETS: [MaterialPreset; 5] = [
    MaterialPreset {
        name: "copper-nitrate-calorimetric",
        j_over_kb: -2.59,
        g_factor: None,
        source: "Cu(NO3)2·2.5H2O, specific heat: 2J/k_B = -5.18 K",
    },
    MaterialPreset {
        name: "copper-nitrate-magnetometric",
        j_over_kb: -2.56,
        g_factor: Some(2.11),
        source: "Cu(NO3)2·2.5H2O, susceptibility: -J/2k_B = 1.28 K, g = 2.11",
    },
    MaterialPreset {
        name: "copper-acetate-hydrate",
        j_over_kb: -204.0,
        g_factor: Some(2.13),
        source: "Cu2(CH3COO)4·2H2O, susceptibility: 2J/k_B = -408 K, g = 2.13",
    },
    MaterialPreset {
        name: "copper-acetate-anhydrous",
        j_over_kb: -216.0,
        g_factor: Some(2.17),
        source: "Cu2(CH3COO)4, susceptibility: 2J/k_B = -432 K, g = 2.17",
    },
    MaterialPreset {
        name: "cu2l-oac-ferro",
        j_over_kb: 35.4,
        g_factor: Some(2.13),
        source: "[Cu2L(OAc)]·6H2O, susceptibility: J/k_B = 35.4 K, g = 2.13",
    },
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.name)
}

pub fn preset(name: &str) -> Result<MaterialPreset> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .copied()
        .ok_or_else(|| DataError::UnknownPreset {
            name: name.to_owned(),
            available: preset_names().collect::<Vec<_>>().join(", "),
        })
}
