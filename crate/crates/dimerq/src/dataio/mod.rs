//! Files in and out: measurement series, material presets and result tables.

mod literal;
mod preset;
mod records;
mod series;

pub use literal::{format_uncertain, parse_uncertain};
pub use preset::{preset, preset_names, MaterialPreset, PRESETS};
pub use records::{
    format_number, read_results_json, round_significant, write_results, write_results_to_path,
    Channel, Format, OutputMeta, ResultRecord, CSV_HEADER, DEFAULT_DIGITS, UNITS,
};
pub use series::{
    load_series, parse_series, MeasurementSeries, Normalization, SeriesKind, Units, GAS_CONSTANT,
};
