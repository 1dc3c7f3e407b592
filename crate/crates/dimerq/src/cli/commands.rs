use std::io::Write;
use std::path::Path;

use dimerq_core::dimer::{
    correlator_from_temperature, discord, Correlator, Coupling, RANGE_TOLERANCE,
};
use dimerq_core::landmarks::{antiferro_landmarks, ferro_landmarks};
use dimerq_core::numerics::{
    fit_bleaney_bowers, propagate_uncertainty, Side, TailModel, ValueWithUncertainty,
};
use dimerq_core::thermo::{
    correlator_from_internal_energy, correlator_from_specific_heat, correlator_from_susceptibility,
    internal_energy, internal_energy_from_specific_heat, schottky_maximum, susceptibility, Branch,
    MolarEnergy, SpecificHeat, Susceptibility, CURIE_PREFACTOR,
};
use dimerq_core::{CorrelationSet, DimerParameters, Sample};

use super::figure::figure_table;
use super::{BranchArg, Cli, CliError, Command, GridKind, Resolved, Route, Table};
use crate::dataio::{
    format_uncertain, load_series, parse_uncertain, write_results, Channel, Format,
    MeasurementSeries, Normalization, OutputMeta, ResultRecord, SeriesKind,
};

type Outcome = Result<(), CliError>;

struct Io<'a, O, E> {
    out: &'a mut O,
    err: &'a mut E,
    format: Format,
    digits: usize,
}

impl<O: Write, E: Write> Io<'_, O, E> {
    fn note(&mut self, message: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{message}");
    }

    fn records(
        &mut self,
        records: &[ResultRecord],
        channel: Channel,
        preset: Option<&str>,
    ) -> Outcome {
        let meta = OutputMeta::new(channel, preset);
        write_results(&mut *self.out, records, self.format, &meta, self.digits)?;
        Ok(())
    }

    fn table(&mut self, table: &Table) -> Outcome {
        table.write(&mut *self.out, self.format, self.digits)?;
        Ok(())
    }
}

pub(super) fn dispatch<O: Write, E: Write>(
    cli: Cli,
    digits: usize,
    out: &mut O,
    err: &mut E,
) -> Outcome {
    let mut io = Io {
        out,
        err,
        format: cli.format,
        digits,
    };
    match cli.command {
        Command::Theory {
            params,
            t_min,
            t_max,
            points,
            grid,
            t,
        } => theory(&mut io, &params.resolve()?, t_min, t_max, points, grid, t),
        Command::Landmarks { params } => landmarks(&mut io, &params.resolve()?),
        Command::FromChi {
            params,
            input,
            t,
            chi,
            sigma,
            per,
        } => {
            let series = single_or_file(
                input.as_deref(),
                t,
                chi,
                sigma,
                SeriesKind::Susceptibility,
                per,
            )?;
            from_chi(&mut io, &params.resolve()?, &series)
        }
        Command::FromCm {
            params,
            route,
            input,
            t,
            cm,
            sigma,
            branch,
            tail_coefficient,
            tail_start,
            u0,
            u0_from_data,
            per,
        } => {
            let resolved = params.resolve()?;
            match route {
                Route::Invert => {
                    let series = single_or_file(
                        input.as_deref(),
                        t,
                        cm,
                        sigma,
                        SeriesKind::SpecificHeat,
                        per,
                    )?;
                    from_cm_invert(&mut io, &resolved, &series, branch)
                }
                Route::Integrate => {
                    if t.is_some() {
                        return Err(CliError::Usage(
                            "--t/--cm apply to the invert route; integrate takes --input and/or a tail".into(),
                        ));
                    }
                    let series = match input.as_deref() {
                        Some(path) => load_series(path, SeriesKind::SpecificHeat, None, per)?.rows,
                        None => Vec::new(),
                    };
                    let scale = extensive_scale(per);
                    let tail = match (tail_coefficient, tail_start) {
                        (Some(a), Some(t0)) => Some(
                            TailModel::new(a * scale, t0)
                                .map_err(|e| CliError::Usage(e.to_string()))?,
                        ),
                        _ => None,
                    };
                    let ground = if u0_from_data {
                        Ground::FromData
                    } else {
                        u0.map_or(Ground::Model, |u| Ground::Given(u * scale))
                    };
                    from_cm_integrate(&mut io, &resolved, &series, tail, ground)
                }
            }
        }
        Command::FromNeutron {
            params,
            correlator,
            t,
            input,
        } => from_neutron(
            &mut io,
            &params.resolve()?,
            &correlator,
            t,
            input.as_deref(),
        ),
        Command::Fit { params, input, per } => {
            let series = load_series(&input, SeriesKind::Susceptibility, None, per)?;
            fit(&mut io, &params.resolve()?, &series)
        }
        Command::Figure { id, points } => {
            let table = figure_table(id, points)?;
            io.table(&table)
        }
    }
}

fn extensive_scale(per: Normalization) -> f64 {
    match per {
        Normalization::PerDimer => 1.0,
        Normalization::PerMonomer => 2.0,
    }
}

fn single_or_file(
    input: Option<&Path>,
    t: Option<f64>,
    value: Option<f64>,
    sigma: Option<f64>,
    kind: SeriesKind,
    per: Normalization,
) -> Result<MeasurementSeries, CliError> {
    if let Some(path) = input {
        return Ok(load_series(path, kind, None, per)?);
    }
    let (Some(t), Some(value)) = (t, value) else {
        return Err(CliError::Usage(
            "give --input or a single --t with its value".into(),
        ));
    };
    if !(t > 0.0) {
        return Err(CliError::Usage(format!(
            "temperature must be positive, got {t}"
        )));
    }
    if sigma.is_some_and(|s| !(s >= 0.0)) {
        return Err(CliError::Usage("sigma must be non-negative".into()));
    }
    let scale = extensive_scale(per);
    Ok(MeasurementSeries {
        kind,
        rows: vec![Sample {
            t,
            value: value * scale,
            sigma: sigma.map(|s| s * scale),
        }],
        units: match kind {
            SeriesKind::Susceptibility => crate::dataio::Units::EmuPerMol,
            SeriesKind::SpecificHeat => crate::dataio::Units::CmOverR,
            SeriesKind::Correlator => crate::dataio::Units::Dimensionless,
        },
        normalization: per,
        lines: vec![0],
    })
}

/// Correlation measures of `g`; a known ferromagnetic coupling forces `E = 0`.
fn correlations(g: Correlator, coupling: Option<Coupling>) -> CorrelationSet {
    let mut set = CorrelationSet::from_correlator(g);
    if coupling == Some(Coupling::Ferro) {
        set.concurrence = 0.0;
        set.entanglement = 0.0;
    }
    set
}

/// Maps a measured value to `G` and carries its error bar through to `G` and `Q`.
fn derive_record<F>(
    t: Option<f64>,
    x: ValueWithUncertainty,
    to_g: F,
    coupling: Option<Coupling>,
    channel: Channel,
) -> Result<(ResultRecord, Option<Side>), dimerq_core::Error>
where
    F: Fn(f64) -> dimerq_core::Result<Correlator>,
{
    let g = to_g(x.value)?;
    let g_prop = propagate_uncertainty(|v| to_g(v).map(Correlator::value), x)?;
    let q_prop = propagate_uncertainty(|v| to_g(v).map(discord), x)?;
    let set = correlations(g, coupling);
    let record = ResultRecord::new(t, g_prop.result, q_prop.result.sigma, &set, channel);
    Ok((record, g_prop.one_sided.or(q_prop.one_sided)))
}

fn sample_value(s: &Sample) -> Result<ValueWithUncertainty, dimerq_core::Error> {
    ValueWithUncertainty::new(s.value, s.sigma.unwrap_or(0.0))
}

/// Runs `row` over the series, reporting failures by line; fails if every row fails.
fn per_row<O, E, F>(
    io: &mut Io<'_, O, E>,
    series: &MeasurementSeries,
    mut row: F,
) -> Result<Vec<ResultRecord>, CliError>
where
    O: Write,
    E: Write,
    F: FnMut(&Sample) -> Result<(ResultRecord, Option<Side>), dimerq_core::Error>,
{
    let mut records = Vec::new();
    let mut failures = 0;
    for (i, s) in series.rows.iter().enumerate() {
        let line = series.lines.get(i).copied().unwrap_or(0);
        let label = if line > 0 {
            format!("row {i} (line {line})")
        } else {
            format!("row {i}")
        };
        match row(s) {
            Ok((record, side)) => {
                if let Some(side) = side {
                    let end = match side {
                        Side::Lower => "lower",
                        Side::Upper => "upper",
                    };
                    io.note(format!(
                        "warning: {label}: error bar leaves the physical range; sigma from the {end} side only"
                    ));
                }
                records.push(record);
            }
            Err(e) => {
                failures += 1;
                io.note(format!("error: {label} at T = {} K: {e}", s.t));
            }
        }
    }
    if failures > 0 && failures == series.rows.len() {
        return Err(CliError::Failure(format!("all {failures} rows failed")));
    }
    Ok(records)
}

fn coupling_of(resolved: &Resolved) -> Option<Coupling> {
    resolved.j_over_kb.and_then(Coupling::of)
}

fn grid(lo: f64, hi: f64, n: usize, kind: GridKind) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            match kind {
                GridKind::Linear => lo + (hi - lo) * s,
                GridKind::Log => lo * (hi / lo).powf(s),
            }
        })
        .collect();
    out[n - 1] = hi;
    out
}

fn theory<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    t_min: Option<f64>,
    t_max: Option<f64>,
    points: usize,
    kind: GridKind,
    explicit: Vec<f64>,
) -> Outcome {
    let params = resolved.parameters()?;
    let scale = params.j_over_kb().abs();
    let temps = if explicit.is_empty() {
        let lo = t_min.unwrap_or(0.01 * scale);
        let hi = t_max.unwrap_or(5.0 * scale);
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(CliError::Usage(format!(
                "need 0 < t-min < t-max, got [{lo}, {hi}]"
            )));
        }
        if points < 2 {
            return Err(CliError::Usage("need at least 2 points".into()));
        }
        grid(lo, hi, points, kind)
    } else {
        if let Some(t) = explicit.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(CliError::Usage(format!(
                "temperature must be positive, got {t}"
            )));
        }
        explicit
    };
    let coupling = Some(params.coupling());
    let records = temps
        .iter()
        .map(|&t| {
            let g = correlator_from_temperature(&params, t)?;
            let set = correlations(g, coupling);
            Ok(ResultRecord::new(
                Some(t),
                ValueWithUncertainty::exact(g.value()),
                0.0,
                &set,
                Channel::Theory,
            ))
        })
        .collect::<Result<Vec<_>, dimerq_core::Error>>()?;
    io.records(&records, Channel::Theory, resolved.preset_name())
}

fn landmarks<O: Write, E: Write>(io: &mut Io<'_, O, E>, resolved: &Resolved) -> Outcome {
    let params = resolved.parameters()?;
    let j = params.j_over_kb().abs();
    let mut table = Table::new(&["quantity", "reduced", "scaled", "unit"])
        .meta("coupling", params.coupling().name())
        .meta("J_over_kB", params.j_over_kb());
    if let Some(name) = resolved.preset_name() {
        table = table.meta("preset", name);
    }
    let temperature = |table: &mut Table, name: &'static str, reduced: f64| {
        table.push(vec![
            name.into(),
            reduced.into(),
            (reduced * j).into(),
            "K".into(),
        ]);
    };
    let bits = |table: &mut Table, name: &'static str, value: f64| {
        table.push(vec![name.into(), value.into(), value.into(), "bit".into()]);
    };
    match params.coupling() {
        Coupling::Antiferro => {
            let l = antiferro_landmarks()?;
            temperature(&mut table, "T_e", l.death_temperature);
            bits(&mut table, "I_e", l.mutual_information_at_death);
            bits(&mut table, "Q_e", l.discord_at_death);
            temperature(&mut table, "T_QE", l.discord_entanglement.t);
            bits(&mut table, "Q_at_T_QE", l.discord_entanglement.value);
            temperature(&mut table, "T_CE", l.classical_entanglement.t);
            bits(&mut table, "C_at_T_CE", l.classical_entanglement.value);
            bits(&mut table, "Q_at_T_CE", l.discord_at_classical_crossing);
            temperature(&mut table, "schottky_T_max", l.schottky.t_max);
            table.push(vec![
                "schottky_cm_max".into(),
                l.schottky.cm_max.0.into(),
                l.schottky.cm_max.0.into(),
                "R".into(),
            ]);
            let (t_chi, chi) = l.susceptibility_maximum;
            temperature(&mut table, "chi_T_max", t_chi);
            temperature(
                &mut table,
                "chi_T_max_numeric",
                l.susceptibility_maximum_numeric.0,
            );
            let emu = params
                .g_factor_opt()
                .map(|g| chi * CURIE_PREFACTOR * g * g / j);
            table.push(vec![
                "chi_max".into(),
                chi.into(),
                emu.into(),
                "emu/mol".into(),
            ]);
            table.push(vec![
                "chi_max_numeric".into(),
                l.susceptibility_maximum_numeric.1.into(),
                params
                    .g_factor_opt()
                    .map(|g| l.susceptibility_maximum_numeric.1 * CURIE_PREFACTOR * g * g / j)
                    .into(),
                "emu/mol".into(),
            ]);
        }
        Coupling::Ferro => {
            let l = ferro_landmarks()?;
            bits(&mut table, "Q_0", l.ground_discord);
            bits(&mut table, "C_0", l.ground_classical);
            table.push(vec![
                "Q_0_over_C_0".into(),
                l.discord_to_classical_ratio().into(),
                l.discord_to_classical_ratio().into(),
                "1".into(),
            ]);
            temperature(&mut table, "schottky_T_max", l.schottky.t_max);
            table.push(vec![
                "schottky_cm_max".into(),
                l.schottky.cm_max.0.into(),
                l.schottky.cm_max.0.into(),
                "R".into(),
            ]);
        }
    }
    io.table(&table)
}

fn from_chi<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    series: &MeasurementSeries,
) -> Outcome {
    let g_factor = resolved.require_g()?;
    let coupling = coupling_of(resolved);
    let records = per_row(io, series, |s| {
        let to_g =
            |chi: f64| correlator_from_susceptibility(Susceptibility { chi, t: s.t }, g_factor);
        derive_record(
            Some(s.t),
            sample_value(s)?,
            to_g,
            coupling,
            Channel::Magnetometric,
        )
    })?;
    io.records(&records, Channel::Magnetometric, resolved.preset_name())
}

fn from_cm_invert<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    series: &MeasurementSeries,
    branch: Option<BranchArg>,
) -> Outcome {
    let params = resolved.parameters()?;
    let coupling = params.coupling();
    let peak = schottky_maximum(&params)?;
    let records = per_row(io, series, |s| {
        let branch = match branch {
            Some(BranchArg::Hot) => Branch::Hot,
            Some(BranchArg::Cold) => Branch::Cold,
            None if s.t >= peak.t_max => Branch::Hot,
            None => Branch::Cold,
        };
        let to_g =
            |cm: f64| correlator_from_specific_heat(SpecificHeat(cm), coupling, Some(branch));
        derive_record(
            Some(s.t),
            sample_value(s)?,
            to_g,
            Some(coupling),
            Channel::Calorimetric,
        )
    })?;
    io.records(&records, Channel::Calorimetric, resolved.preset_name())
}

enum Ground {
    Model,
    Given(f64),
    FromData,
}

fn from_cm_integrate<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    series: &[Sample],
    tail: Option<TailModel>,
    ground: Ground,
) -> Outcome {
    let params = resolved.parameters()?;
    if series.is_empty() && tail.is_none() {
        return Err(CliError::Usage(
            "integrate needs --input data, a tail, or both".into(),
        ));
    }
    if let (Some(tail), Some(last)) = (&tail, series.last()) {
        if tail.t_start < last.t {
            return Err(CliError::Usage(format!(
                "tail starts at {} K, below the last data point {} K",
                tail.t_start, last.t
            )));
        }
    }
    let ground_state = match ground {
        Ground::Given(u) => Some(MolarEnergy(u)),
        Ground::FromData => None,
        Ground::Model => {
            let g0 = match params.coupling() {
                Coupling::Antiferro => Correlator::SINGLET,
                Coupling::Ferro => Correlator::FERRO_GROUND,
            };
            Some(internal_energy(&params, g0))
        }
    };
    let energy = internal_energy_from_specific_heat(series, tail.as_ref(), ground_state)?;
    if energy.truncated {
        io.note("warning: no high-temperature tail and no u(0); the integral misses c_m above the data and u is biased");
    }
    if !energy.clamped_rows.is_empty() {
        io.note(format!(
            "warning: negative c_m clamped to 0 in rows {:?}",
            energy.clamped_rows
        ));
    }
    io.note(format!(
        "u({} K)/R = {} K, u(0)/R = {} K",
        crate::dataio::format_number(energy.t, io.digits),
        crate::dataio::format_number(energy.energy.0, io.digits),
        crate::dataio::format_number(energy.ground_state.0, io.digits),
    ));
    let g = correlator_from_internal_energy(&params, energy.energy)?;
    let set = correlations(g, Some(params.coupling()));
    let record = ResultRecord::new(
        Some(energy.t),
        ValueWithUncertainty::exact(g.value()),
        0.0,
        &set,
        Channel::Calorimetric,
    );
    io.records(&[record], Channel::Calorimetric, resolved.preset_name())
}

fn from_neutron<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    literals: &[String],
    t: Option<f64>,
    input: Option<&Path>,
) -> Outcome {
    let coupling = coupling_of(resolved);
    let to_g = |g: f64| Correlator::with_tolerance(g, RANGE_TOLERANCE);
    let records = if let Some(path) = input {
        let series = load_series(path, SeriesKind::Correlator, None, Normalization::PerDimer)?;
        per_row(io, &series, |s| {
            derive_record(
                Some(s.t),
                sample_value(s)?,
                to_g,
                coupling,
                Channel::Neutron,
            )
        })?
    } else {
        if literals.is_empty() {
            return Err(CliError::Usage("give --correlator or --input".into()));
        }
        if let Some(t) = t.filter(|t| !(*t > 0.0)) {
            return Err(CliError::Usage(format!(
                "temperature must be positive, got {t}"
            )));
        }
        let mut records = Vec::new();
        for literal in literals {
            let x = parse_uncertain(literal)?;
            let (record, side) = derive_record(t, x, to_g, coupling, Channel::Neutron)?;
            if side.is_some() {
                io.note(format!(
                    "warning: {literal}: error bar leaves [-1, 1/3]; sigma from one side only"
                ));
            }
            io.note(format!(
                "G = {} -> Q = {} bit",
                format_uncertain(x),
                format_uncertain(record.discord)
            ));
            records.push(record);
        }
        records
    };
    io.records(&records, Channel::Neutron, resolved.preset_name())
}

fn fit<O: Write, E: Write>(
    io: &mut Io<'_, O, E>,
    resolved: &Resolved,
    series: &MeasurementSeries,
) -> Outcome {
    let j0 = resolved.j_over_kb.ok_or_else(|| {
        CliError::Usage("give an initial --J-over-kB, --2J-over-kB or --preset".into())
    })?;
    let init = DimerParameters::new(j0)
        .and_then(|p| p.with_g(resolved.g_factor.unwrap_or(2.0)))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let result = match fit_bleaney_bowers(&series.rows, &init) {
        Err(e @ dimerq_core::Error::TooFewPoints { .. }) => {
            return Err(CliError::Usage(e.to_string()))
        }
        other => other?,
    };
    let fitted = result.parameters()?;
    let mut table = Table::new(&["T_K", "chi_emu_per_mol", "chi_fit", "residual"])
        .meta("J_over_kB", result.j_over_kb)
        .meta("2J_over_kB", 2.0 * result.j_over_kb)
        .meta("g", result.g_factor)
        .meta("residual_norm", result.residual_norm)
        .meta("iterations", result.iterations as f64)
        .meta("converged", if result.converged { "true" } else { "false" });
    for s in &series.rows {
        let model = susceptibility(&fitted, s.t)?.chi;
        table.push(vec![
            s.t.into(),
            s.value.into(),
            model.into(),
            (s.value - model).into(),
        ]);
    }
    io.table(&table)?;
    if !result.converged {
        return Err(CliError::Failure(format!(
            "fit did not converge in {} evaluations; best values reported",
            dimerq_core::numerics::MAX_EVALUATIONS
        )));
    }
    Ok(())
}
