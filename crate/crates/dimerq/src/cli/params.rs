use clap::Args;
use dimerq_core::DimerParameters;

use super::CliError;
use crate::dataio::{preset, MaterialPreset};

/// Dimer parameters, either from a named preset or given explicitly.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Material preset; excludes explicit parameters.
    #[arg(long, conflicts_with_all = ["j_over_kb", "two_j_over_kb", "g", "powder_g"])]
    pub preset: Option<String>,

    /// Exchange constant J/k_B in kelvin (negative: antiferromagnetic).
    #[arg(
        long = "J-over-kB",
        allow_hyphen_values = true,
        conflicts_with = "two_j_over_kb"
    )]
    pub j_over_kb: Option<f64>,

    /// Exchange constant quoted as 2J/k_B in kelvin.
    #[arg(long = "2J-over-kB", allow_hyphen_values = true)]
    pub two_j_over_kb: Option<f64>,

    /// Isotropic g-factor.
    #[arg(long, conflicts_with = "powder_g")]
    pub g: Option<f64>,

    /// Principal g values, averaged as sqrt((gx² + gy² + gz²)/3).
    #[arg(long, value_delimiter = ',', num_args = 3, value_names = ["GX", "GY", "GZ"])]
    pub powder_g: Option<Vec<f64>>,
}

/// Parameters after resolving the preset and the coupling convention.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub j_over_kb: Option<f64>,
    pub g_factor: Option<f64>,
    pub preset: Option<MaterialPreset>,
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        if let Some(name) = &self.preset {
            let p = preset(name).map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok(Resolved {
                j_over_kb: Some(p.j_over_kb),
                g_factor: p.g_factor,
                preset: Some(p),
            });
        }
        let j_over_kb = self.j_over_kb.or(self.two_j_over_kb.map(|j2| j2 / 2.0));
        if j_over_kb == Some(0.0) {
            return Err(CliError::Usage("exchange coupling must be nonzero".into()));
        }
        let g_factor = match &self.powder_g {
            Some(g) => Some(
                dimerq_core::thermo::powder_g(g[0], g[1], g[2])
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            None => self.g,
        };
        if let Some(g) = g_factor {
            if !(g > 0.0) {
                return Err(CliError::Usage(format!(
                    "g-factor must be positive, got {g}"
                )));
            }
        }
        Ok(Resolved {
            j_over_kb,
            g_factor,
            preset: None,
        })
    }
}

impl Resolved {
    pub fn preset_name(&self) -> Option<&'static str> {
        self.preset.map(|p| p.name)
    }

    /// Full parameters; usage error when the coupling is missing.
    pub fn parameters(&self) -> Result<DimerParameters, CliError> {
        let j = self
            .j_over_kb
            .ok_or_else(|| CliError::Usage("give --J-over-kB, --2J-over-kB or --preset".into()))?;
        let p = DimerParameters::new(j).map_err(|e| CliError::Usage(e.to_string()))?;
        match self.g_factor {
            Some(g) => p.with_g(g).map_err(|e| CliError::Usage(e.to_string())),
            None => Ok(p),
        }
    }

    pub fn require_g(&self) -> Result<f64, CliError> {
        self.g_factor.ok_or_else(|| {
            CliError::Usage("give --g, --powder-g or a preset with a g-factor".into())
        })
    }
}
