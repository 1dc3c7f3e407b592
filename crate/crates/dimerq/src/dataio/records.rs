use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use dimerq_core::numerics::ValueWithUncertainty;
use dimerq_core::CorrelationSet;
use serde::{Deserialize, Serialize};

use crate::error::{DataError, Result};

pub const DEFAULT_DIGITS: usize = 6;
pub const CSV_HEADER: &str = "T_K,G,sigma_G,Q,sigma_Q,C,I,E,channel";
pub const UNITS: &str = "T_K in K; G dimensionless; Q, C, I, E in bits per dimer";

/// Which measurement a record was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Neutron,
    Calorimetric,
    Magnetometric,
    Theory,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Self::Neutron => "neutron",
            Self::Calorimetric => "calorimetric",
            Self::Magnetometric => "magnetometric",
            Self::Theory => "theory",
        }
    }
}

/// Correlations of one state, with the uncertainty carried through `G` and `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRecord {
    /// Absent when the source gives `G` without a temperature.
    pub t: Option<f64>,
    pub correlator: ValueWithUncertainty,
    pub discord: ValueWithUncertainty,
    pub classical: f64,
    pub mutual_information: f64,
    pub entanglement: f64,
    pub channel: Channel,
}

impl ResultRecord {
    pub fn new(
        t: Option<f64>,
        correlator: ValueWithUncertainty,
        discord_sigma: f64,
        set: &CorrelationSet,
        channel: Channel,
    ) -> Self {
        Self {
            t,
            correlator,
            discord: ValueWithUncertainty {
                value: set.discord,
                sigma: discord_sigma,
            },
            classical: set.classical,
            mutual_information: set.mutual_information,
            entanglement: set.entanglement,
            channel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputMeta {
    pub channel: Channel,
    pub preset: Option<String>,
    pub units: String,
}

impl OutputMeta {
    pub fn new(channel: Channel, preset: Option<&str>) -> Self {
        Self {
            channel,
            preset: preset.map(str::to_owned),
            units: UNITS.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct JsonRow {
    #[serde(rename = "T_K")]
    t: Option<f64>,
    #[serde(rename = "G")]
    g: f64,
    #[serde(rename = "sigma_G")]
    sigma_g: f64,
    #[serde(rename = "Q")]
    q: f64,
    #[serde(rename = "sigma_Q")]
    sigma_q: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "I")]
    i: f64,
    #[serde(rename = "E")]
    e: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct JsonDocument {
    meta: OutputMeta,
    rows: Vec<JsonRow>,
}

/// Rounds to `digits` significant digits.
pub fn round_significant(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .unwrap_or(v)
}

/// Shortest text that reads back as `v` rounded to `digits` significant digits.
pub fn format_number(v: f64, digits: usize) -> String {
    let r = round_significant(v, digits);
    if r == 0.0 {
        return "0".to_owned();
    }
    let a = r.abs();
    if (1e-4..1e6).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn row(r: &ResultRecord, digits: usize) -> JsonRow {
    let round = |v| round_significant(v, digits);
    JsonRow {
        t: r.t.map(round),
        g: round(r.correlator.value),
        sigma_g: round(r.correlator.sigma),
        q: round(r.discord.value),
        sigma_q: round(r.discord.sigma),
        c: round(r.classical),
        i: round(r.mutual_information),
        e: round(r.entanglement),
    }
}

/// Writes records with a fixed column order and `digits` significant digits.
pub fn write_results<W: Write>(
    out: W,
    records: &[ResultRecord],
    format: Format,
    meta: &OutputMeta,
    digits: usize,
) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                let f = |v| format_number(v, digits);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.t.map(f).unwrap_or_default(),
                    f(r.correlator.value),
                    f(r.correlator.sigma),
                    f(r.discord.value),
                    f(r.discord.sigma),
                    f(r.classical),
                    f(r.mutual_information),
                    f(r.entanglement),
                    r.channel.name()
                )?;
            }
        }
        Format::Json => {
            let doc = JsonDocument {
                meta: meta.clone(),
                rows: records.iter().map(|r| row(r, digits)).collect(),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()
}

pub fn write_results_to_path(
    path: &Path,
    records: &[ResultRecord],
    format: Format,
    meta: &OutputMeta,
    digits: usize,
) -> Result<()> {
    let io = |source| DataError::Io {
        path: path.to_owned(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    write_results(file, records, format, meta, digits).map_err(io)
}

/// Reads a JSON document produced by [`write_results`].
pub fn read_results_json<R: Read>(reader: R) -> Result<(OutputMeta, Vec<ResultRecord>)> {
    let doc: JsonDocument = serde_json::from_reader(reader)?;
    let channel = doc.meta.channel;
    let records = doc
        .rows
        .into_iter()
        .map(|r| ResultRecord {
            t: r.t,
            correlator: ValueWithUncertainty {
                value: r.g,
                sigma: r.sigma_g,
            },
            discord: ValueWithUncertainty {
                value: r.q,
                sigma: r.sigma_q,
            },
            classical: r.c,
            mutual_information: r.i,
            entanglement: r.e,
            channel,
        })
        .collect();
    Ok((doc.meta, records))
}
