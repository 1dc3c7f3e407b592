use std::fs::File;
use std::io::Read;
use std::path::Path;

use dimerq_core::Sample;

use crate::error::{DataError, Result};

/// Gas constant in J/(mol·K), used only to convert `cm_J_per_mol_K` columns.
pub const GAS_CONSTANT: f64 = 8.31446;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Susceptibility,
    SpecificHeat,
    Correlator,
}

/// Unit tag of the value column; it doubles as the column name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    EmuPerMol,
    CmOverR,
    JoulePerMolKelvin,
    Dimensionless,
}

const UNIT_TAGS: &str = "chi_emu_per_mol, cm_over_R, cm_J_per_mol_K, G";

impl Units {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "chi_emu_per_mol" | "emu_per_mol" => Ok(Self::EmuPerMol),
            "cm_over_R" => Ok(Self::CmOverR),
            "cm_J_per_mol_K" => Ok(Self::JoulePerMolKelvin),
            "G" | "dimensionless" => Ok(Self::Dimensionless),
            _ => Err(DataError::UnknownUnit {
                tag: tag.to_owned(),
                accepted: UNIT_TAGS,
            }),
        }
    }

    pub fn column(self) -> &'static str {
        match self {
            Self::EmuPerMol => "chi_emu_per_mol",
            Self::CmOverR => "cm_over_R",
            Self::JoulePerMolKelvin => "cm_J_per_mol_K",
            Self::Dimensionless => "G",
        }
    }

    fn sigma_column(self) -> &'static str {
        match self {
            Self::EmuPerMol => "sigma_chi",
            Self::CmOverR | Self::JoulePerMolKelvin => "sigma",
            Self::Dimensionless => "sigma_G",
        }
    }

    fn kind(self) -> SeriesKind {
        match self {
            Self::EmuPerMol => SeriesKind::Susceptibility,
            Self::CmOverR | Self::JoulePerMolKelvin => SeriesKind::SpecificHeat,
            Self::Dimensionless => SeriesKind::Correlator,
        }
    }

    /// Factor taking file values to the stored unit.
    fn scale(self) -> f64 {
        match self {
            Self::JoulePerMolKelvin => 1.0 / GAS_CONSTANT,
            _ => 1.0,
        }
    }
}

impl SeriesKind {
    fn accepted_units(self) -> &'static [Units] {
        match self {
            Self::Susceptibility => &[Units::EmuPerMol],
            Self::SpecificHeat => &[Units::CmOverR, Units::JoulePerMolKelvin],
            Self::Correlator => &[Units::Dimensionless],
        }
    }

    fn expected_header(self) -> &'static str {
        match self {
            Self::Susceptibility => "T_K,chi_emu_per_mol[,sigma_chi]",
            Self::SpecificHeat => "T_K,cm_over_R[,sigma] or T_K,cm_J_per_mol_K[,sigma]",
            Self::Correlator => "T_K,G[,sigma_G]",
        }
    }
}

/// Whether extensive quantities in a file count per mole of dimers or of copper ions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Normalization {
    #[default]
    #[value(name = "dimer")]
    PerDimer,
    #[value(name = "monomer")]
    PerMonomer,
}

/// A temperature series, stored per dimer with `c_m` as `c_m/R`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    pub kind: SeriesKind,
    pub rows: Vec<Sample>,
    /// Unit tag of the source column.
    pub units: Units,
    /// Normalization of the source file; `rows` are always per dimer.
    pub normalization: Normalization,
    /// File line of each row, in sorted order.
    pub lines: Vec<u64>,
}

/// Reads a series from a CSV file.
pub fn load_series(
    path: &Path,
    kind: SeriesKind,
    units: Option<Units>,
    normalization: Normalization,
) -> Result<MeasurementSeries> {
    let file = File::open(path).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_series(file, kind, units, normalization)
}

/// Parses `#`-commented CSV with a header naming the columns.
///
/// Columns are matched by name and extra columns are ignored. With `units`
/// unset the value column is whichever accepted unit column is present.
pub fn parse_series<R: Read>(
    reader: R,
    kind: SeriesKind,
    units: Option<Units>,
    normalization: Normalization,
) -> Result<MeasurementSeries> {
    let mut csv = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = csv.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);

    let units = match units {
        Some(u) if u.kind() != kind => {
            return Err(DataError::UnknownUnit {
                tag: u.column().to_owned(),
                accepted: kind.expected_header(),
            })
        }
        Some(u) => u,
        None => *kind
            .accepted_units()
            .iter()
            .find(|u| find(u.column()).is_some())
            .ok_or(DataError::MissingColumn {
                column: kind.accepted_units()[0].column(),
                expected: kind.expected_header(),
            })?,
    };
    let t_col = find("T_K").ok_or(DataError::MissingColumn {
        column: "T_K",
        expected: kind.expected_header(),
    })?;
    let v_col = find(units.column()).ok_or(DataError::MissingColumn {
        column: units.column(),
        expected: kind.expected_header(),
    })?;
    let s_col = find(units.sigma_column());

    let extensive = kind != SeriesKind::Correlator && normalization == Normalization::PerMonomer;
    let factor = units.scale() * if extensive { 2.0 } else { 1.0 };

    let mut rows: Vec<(Sample, u64)> = Vec::new();
    for record in csv.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |col: usize, name: &str| -> Result<Option<f64>> {
            match record.get(col) {
                None | Some("") => Ok(None),
                Some(text) => text
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .map(Some)
                    .ok_or_else(|| DataError::Malformed {
                        line,
                        message: format!("{name} {text:?} is not a finite number"),
                    }),
            }
        };
        let missing = |name: &str| DataError::Malformed {
            line,
            message: format!("missing {name}"),
        };
        let t = field(t_col, "T_K")?.ok_or_else(|| missing("T_K"))?;
        if !(t > 0.0) {
            return Err(DataError::Malformed {
                line,
                message: format!("temperature {t} K is not positive"),
            });
        }
        let value = field(v_col, units.column())?.ok_or_else(|| missing(units.column()))?;
        let sigma = match s_col {
            Some(col) => field(col, units.sigma_column())?,
            None => None,
        };
        if let Some(s) = sigma {
            if s < 0.0 {
                return Err(DataError::Malformed {
                    line,
                    message: format!("negative sigma {s}"),
                });
            }
        }
        let sample = Sample {
            t,
            value: value * factor,
            sigma: sigma.map(|s| s * factor),
        };
        rows.push((sample, line));
    }

    rows.sort_by(|a, b| a.0.t.total_cmp(&b.0.t));
    for w in rows.windows(2) {
        if w[0].0.t == w[1].0.t {
            let (first, second) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            return Err(DataError::DuplicateTemperature {
                t: w[0].0.t,
                first,
                second,
            });
        }
    }
    let (rows, lines) = rows.into_iter().unzip();
    Ok(MeasurementSeries {
        kind,
        rows,
        units,
        normalization,
        lines,
    })
}
