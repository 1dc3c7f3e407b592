use dimerq_core::dimer::{correlation_set, correlator_from_temperature, Correlator, G_MAX, G_MIN};
use dimerq_core::thermo::specific_heat_from_correlator;
use dimerq_core::{CorrelationSet, DimerParameters};

use super::{CliError, Table};
use crate::dataio::preset;

pub const DEFAULT_POINTS: usize = 400;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect();
    out[n - 1] = hi;
    out
}

fn correlator_grid(n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n)
        .map(|i| G_MIN + (G_MAX - G_MIN) * i as f64 / (n - 1) as f64)
        .collect();
    out[n - 1] = G_MAX;
    out
}

fn unit(j: f64) -> DimerParameters {
    DimerParameters::new(j).expect("nonzero coupling")
}

fn set_at(params: &DimerParameters, t: f64) -> Result<(f64, CorrelationSet), CliError> {
    let g = correlator_from_temperature(params, t)?.value();
    Ok((g, correlation_set(params, t)?))
}

/// Curve data of figure `id`.
///
/// 1, 2: correlations against k_BT/|J| (antiferro, ferro), 0.01 to 4, log grid.
/// 3, 4: Q, C, I and c_m/R against G on [-1, 1/3], uniform grid.
/// 5: acetate discord and entanglement, 1 to 400 K, log grid.
/// 6: ferromagnetic complex, 1 to 300 K, log grid.
pub fn figure_table(id: u8, points: usize) -> Result<Table, CliError> {
    if points < 2 {
        return Err(CliError::Usage("need at least 2 points".into()));
    }
    let table = match id {
        1 => {
            let p = unit(-1.0);
            let mut t = Table::new(&["T_over_J", "abs_G", "Q", "C", "E"])
                .meta("figure", 1.0)
                .meta("title", "antiferromagnetic dimer correlations");
            for x in log_grid(0.01, 4.0, points) {
                let (g, s) = set_at(&p, x)?;
                t.push(vec![
                    x.into(),
                    g.abs().into(),
                    s.discord.into(),
                    s.classical.into(),
                    s.entanglement.into(),
                ]);
            }
            t
        }
        2 => {
            let p = unit(1.0);
            let mut t = Table::new(&["T_over_J", "G", "Q", "C"])
                .meta("figure", 2.0)
                .meta("title", "ferromagnetic dimer correlations");
            for x in log_grid(0.01, 4.0, points) {
                let (g, s) = set_at(&p, x)?;
                t.push(vec![
                    x.into(),
                    g.into(),
                    s.discord.into(),
                    s.classical.into(),
                ]);
            }
            t
        }
        3 => {
            let mut t = Table::new(&["G", "Q", "C", "I"])
                .meta("figure", 3.0)
                .meta("title", "discord against the correlator");
            for g in correlator_grid(points) {
                let s = CorrelationSet::from_correlator(Correlator::new(g)?);
                t.push(vec![
                    g.into(),
                    s.discord.into(),
                    s.classical.into(),
                    s.mutual_information.into(),
                ]);
            }
            t
        }
        4 => {
            let mut t = Table::new(&["G", "cm_over_R"])
                .meta("figure", 4.0)
                .meta("title", "specific heat against the correlator");
            let mut grid = correlator_grid(points);
            // keep G = 0 exactly on the grid
            if !grid.contains(&0.0) {
                grid.push(0.0);
                grid.sort_by(f64::total_cmp);
            }
            for g in grid {
                t.push(vec![
                    g.into(),
                    specific_heat_from_correlator(Correlator::new(g)?).0.into(),
                ]);
            }
            t
        }
        5 => {
            let hydrate = preset("copper-acetate-hydrate")?.parameters();
            let anhydrous = preset("copper-acetate-anhydrous")?.parameters();
            let mut t = Table::new(&[
                "T_K",
                "Q_hydrate",
                "E_hydrate",
                "Q_anhydrous",
                "E_anhydrous",
            ])
            .meta("figure", 5.0)
            .meta("title", "copper(II) acetates, hydrated and anhydrous");
            for temp in log_grid(1.0, 400.0, points) {
                let (_, h) = set_at(&hydrate, temp)?;
                let (_, a) = set_at(&anhydrous, temp)?;
                t.push(vec![
                    temp.into(),
                    h.discord.into(),
                    h.entanglement.into(),
                    a.discord.into(),
                    a.entanglement.into(),
                ]);
            }
            t
        }
        6 => {
            let p = preset("cu2l-oac-ferro")?.parameters();
            let mut t = Table::new(&["T_K", "G", "Q", "C"])
                .meta("figure", 6.0)
                .meta("title", "ferromagnetic [Cu2L(OAc)]·6H2O");
            for temp in log_grid(1.0, 300.0, points) {
                let (g, s) = set_at(&p, temp)?;
                t.push(vec![
                    temp.into(),
                    g.into(),
                    s.discord.into(),
                    s.classical.into(),
                ]);
            }
            t
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown figure {id}; choose 1 to 6"
            )))
        }
    };
    Ok(table)
}
