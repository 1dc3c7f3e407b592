use std::process::{Command, ExitCode};

use dimerq::cli::{run, EXIT_FAILURE, EXIT_SUCCESS, EXIT_USAGE};
use dimerq::dataio::preset;
use dimerq_core::dimer::{
    classical_correlation, concurrence, correlation_set, correlator_from_temperature,
    density_matrix, discord, entanglement_death_temperature, entanglement_of_formation,
    mutual_information, ppt_eigenvalues,
};
use dimerq_core::landmarks::{antiferro_landmarks, ferro_landmarks};
use dimerq_core::numerics::{
    find_crossing, fit_bleaney_bowers, integrate_series_with_tail, lambert_w,
};
use dimerq_core::thermo::{
    correlator_from_specific_heat, correlator_from_susceptibility, specific_heat,
    specific_heat_branch_split, specific_heat_from_correlator, susceptibility, Branch,
};
use dimerq_core::{Correlator, Coupling, DimerParameters, Sample};
use nalgebra::{Matrix2, Matrix4, SymmetricEigen};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn near(label: &str, got: f64, want: f64, tol: f64) -> Check {
    if (got - want).abs() <= tol {
        Ok(format!("{label} = {got:.6}"))
    } else {
        Err(format!("{label} = {got:.6}, expected {want} ± {tol}"))
    }
}

fn all(checks: Vec<Check>) -> Check {
    let mut ok = Vec::new();
    for c in checks {
        ok.push(c?);
    }
    Ok(ok.join("; "))
}

fn ensure(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn dimerq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("dimerq").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap_or_default(),
        String::from_utf8(err).unwrap_or_default(),
    )
}

/// Named column of the first data row of CSV output.
fn first_row(csv: &str, column: &str) -> Result<f64, String> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().ok_or("empty output")?;
    let row = lines.next().ok_or("no data rows")?;
    let idx = header
        .split(',')
        .position(|h| h == column)
        .ok_or_else(|| format!("no column {column}"))?;
    row.split(',')
        .nth(idx)
        .ok_or("short row")?
        .parse()
        .map_err(e)
}

fn channel(args: &[&str]) -> Result<String, String> {
    let (code, out, err) = dimerq(args);
    ensure(
        code == EXIT_SUCCESS,
        format!("{args:?} exited {code}: {err}"),
    )?;
    Ok(out)
}

fn landmarks() -> Check {
    let af = antiferro_landmarks().map_err(e)?;
    let f = ferro_landmarks().map_err(e)?;
    let tol = 1e-3;
    all(vec![
        near("T_e", af.death_temperature, 1.8204, tol),
        near("T_QE", af.discord_entanglement.t, 0.5880, tol),
        near("Q(T_QE)", af.discord_entanglement.value, 0.7462, tol),
        near("T_CE", af.classical_entanglement.t, 0.9260, tol),
        near("C(T_CE)", af.classical_entanglement.value, 0.3390, tol),
        near("I_e", af.mutual_information_at_death, 0.2075, tol),
        near("Q_e", af.discord_at_death, 0.1259, tol),
        near("Q_0", f.ground_discord, 1.0 / 3.0, tol),
        near("C_0", f.ground_classical, 0.0817, tol),
        near("Q_0/C_0", f.discord_to_classical_ratio(), 4.0798, tol),
    ])
}

fn maxima() -> Check {
    let af = antiferro_landmarks().map_err(e)?;
    let f = ferro_landmarks().map_err(e)?;
    let tol = 1e-3;
    let (t_w, chi_w) = af.susceptibility_maximum;
    let (t_n, chi_n) = af.susceptibility_maximum_numeric;
    all(vec![
        near("ferro T_max", f.schottky.t_max, 0.9259, tol),
        near("ferro c_max", f.schottky.cm_max.0, 0.1663, tol),
        near("antiferro T_max", af.schottky.t_max, 0.7029, tol),
        near("antiferro c_max", af.schottky.cm_max.0, 1.0234, tol),
        near("chi T_max (W)", t_w, 1.2472, tol),
        near("chi max (W)", chi_w, 0.2011, tol),
        near("chi T_max numeric - W", t_n - t_w, 0.0, 1e-6),
        near("chi max numeric - W", chi_n - chi_w, 0.0, 1e-6),
    ])
}

fn copper_nitrate() -> Check {
    let neutron = channel(&["from-neutron", "--correlator", "-0.54(9)", "--t", "4"])?;
    let integrate = channel(&[
        "from-cm",
        "--route",
        "integrate",
        "--preset",
        "copper-nitrate-calorimetric",
        "--tail-coefficient",
        "6.6",
        "--tail-start",
        "4",
        "--u0",
        "-3.885",
    ])?;
    let invert = channel(&[
        "from-cm",
        "--route",
        "invert",
        "--preset",
        "copper-nitrate-calorimetric",
        "--t",
        "4",
        "--cm",
        "0.4125",
    ])?;
    let chi = channel(&[
        "from-chi",
        "--J-over-kB",
        "-2.59",
        "--g",
        "2.11",
        "--t",
        "4",
        "--chi",
        "0.126",
    ])?;
    all(vec![
        near("neutron Q", first_row(&neutron, "Q")?, 0.30, 0.005),
        near(
            "neutron sigma_Q",
            first_row(&neutron, "sigma_Q")?,
            0.09,
            0.005,
        ),
        near("integrate Q", first_row(&integrate, "Q")?, 0.19, 0.01),
        near("invert G", first_row(&invert, "G")?, -0.398, 0.002),
        near("invert Q", first_row(&invert, "Q")?, 0.18, 0.01),
        near("magnetometric G", first_row(&chi, "G")?, -0.3965, 0.001),
        near("magnetometric Q", first_row(&chi, "Q")?, 0.17, 0.01),
    ])
}

fn acetates() -> Check {
    let mut checks = Vec::new();
    for (name, t_e, t_qe) in [
        ("copper-acetate-hydrate", 371.4, 120.0),
        ("copper-acetate-anhydrous", 393.2, 127.0),
    ] {
        let p = preset(name).map_err(e)?.parameters();
        checks.push(near(
            &format!("{name} T_e"),
            entanglement_death_temperature(&p).map_err(e)?,
            t_e,
            0.5,
        ));
        let set = |t: f64| correlation_set(&p, t).expect("positive temperature");
        let crossing = find_crossing(
            |t| set(t).discord,
            |t| set(t).entanglement,
            50.0,
            300.0,
            1e-9,
        )
        .map_err(e)?;
        checks.push(near(&format!("{name} Q=E crossing"), crossing.t, t_qe, 1.0));
    }
    let p = preset("copper-acetate-hydrate").map_err(e)?.parameters();
    let q400 = correlation_set(&p, 400.0).map_err(e)?.discord;
    checks.push(near("hydrate Q(400 K)", q400, 0.108, 0.005));
    all(checks)
}

fn ferro_complex() -> Check {
    let out = channel(&[
        "from-chi",
        "--preset",
        "cu2l-oac-ferro",
        "--t",
        "300",
        "--chi",
        &(0.89 / 300.0).to_string(),
    ])?;
    let p = preset("cu2l-oac-ferro").map_err(e)?.parameters();
    let mut max_e = 0.0f64;
    for i in 0..=2000 {
        let t = 0.01 * (300.0f64 / 0.01).powf(i as f64 / 2000.0);
        let g = correlator_from_temperature(&p, t).map_err(e)?;
        let c = concurrence(g, Coupling::Ferro).map_err(e)?;
        let set = correlation_set(&p, t).map_err(e)?;
        max_e = max_e.max(c).max(set.entanglement);
    }
    all(vec![
        near("Q(300 K)", first_row(&out, "Q")?, 0.003, 0.001),
        ensure(max_e == 0.0, format!("max concurrence or E = {max_e}"))
            .map(|_| "C~ = E = 0 over 0.01 to 300 K".into()),
    ])
}

fn entropy_bits(eigenvalues: impl Iterator<Item = f64>) -> f64 {
    eigenvalues
        .filter(|&p| p > 1e-300)
        .map(|p| -p * p.log2())
        .sum()
}

fn mutual_information_by_entropies(g: Correlator) -> f64 {
    let rho = density_matrix(g);
    let m = Matrix4::from_fn(|i, j| rho.get(i, j));
    let mut rho_a = Matrix2::<f64>::zeros();
    let mut rho_b = Matrix2::<f64>::zeros();
    for a in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                rho_a[(a, a2)] += m[(2 * a + b, 2 * a2 + b)];
                rho_b[(a, a2)] += m[(2 * b + a, 2 * b + a2)];
            }
        }
    }
    entropy_bits(SymmetricEigen::new(rho_a).eigenvalues.iter().copied())
        + entropy_bits(SymmetricEigen::new(rho_b).eigenvalues.iter().copied())
        - entropy_bits(SymmetricEigen::new(m).eigenvalues.iter().copied())
}

fn properties() -> Check {
    let grid: Vec<f64> = (0..2000)
        .map(|i| -1.0 + (4.0 / 3.0) * i as f64 / 1999.0)
        .collect();
    let mut worst_identity = 0.0f64;
    let mut worst_entropy = 0.0f64;
    for &g in &grid {
        let c = Correlator::new(g).map_err(e)?;
        let (i, cl, q) = (mutual_information(c), classical_correlation(c), discord(c));
        worst_identity = worst_identity.max((i - (q + cl)).abs());
        worst_entropy = worst_entropy.max((i - mutual_information_by_entropies(c)).abs());
        if g == -1.0 {
            ensure(q == cl, "Q = C at the singlet")?;
        } else if g != 0.0 {
            ensure(q > cl, format!("Q > C fails at G = {g}"))?;
        }
        let coupling = if g < 0.0 {
            Coupling::Antiferro
        } else {
            Coupling::Ferro
        };
        let conc = concurrence(c, coupling).map_err(e)?;
        ensure(
            (ppt_eigenvalues(c)[0] < 0.0) == (conc > 0.0),
            format!("PPT and concurrence disagree at G = {g}"),
        )?;
        entanglement_of_formation(conc).map_err(e)?;
    }
    ensure(
        worst_identity <= 1e-12,
        format!("I - Q - C up to {worst_identity:e}"),
    )?;
    ensure(
        worst_entropy <= 1e-10,
        format!("entropy oracle off by {worst_entropy:e}"),
    )?;

    let mut worst_cm = 0.0f64;
    for coupling in [Coupling::Antiferro, Coupling::Ferro] {
        let split = specific_heat_branch_split(coupling).x;
        let outer = if coupling == Coupling::Antiferro {
            -1.0
        } else {
            1.0 / 3.0
        };
        for (branch, lo, hi) in [(Branch::Hot, 0.0, split), (Branch::Cold, split, outer)] {
            for i in 1..=1000 {
                let g = lo + (hi - lo) * i as f64 / 1001.0;
                let cm = specific_heat_from_correlator(Correlator::new(g).map_err(e)?);
                let back = correlator_from_specific_heat(cm, coupling, Some(branch)).map_err(e)?;
                worst_cm = worst_cm.max((back.value() - g).abs());
            }
        }
    }
    ensure(
        worst_cm <= 1e-8,
        format!("c_m round trip off by {worst_cm:e}"),
    )?;

    let mut worst_chi = 0.0f64;
    for j in [-204.0, -2.59, 35.4] {
        let p = DimerParameters::new(j)
            .map_err(e)?
            .with_g(2.13)
            .map_err(e)?;
        for i in 0..1000 {
            let t = 0.05 * j.abs() * (100.0f64).powf(i as f64 / 999.0);
            let g = correlator_from_temperature(&p, t).map_err(e)?.value();
            let chi = susceptibility(&p, t).map_err(e)?;
            let back = correlator_from_susceptibility(chi, 2.13)
                .map_err(e)?
                .value();
            worst_chi = worst_chi.max((back - g).abs());
        }
    }
    ensure(
        worst_chi <= 1e-8,
        format!("chi round trip off by {worst_chi:e}"),
    )?;

    let truth = DimerParameters::from_two_j(-408.0)
        .map_err(e)?
        .with_g(2.13)
        .map_err(e)?;
    let series: Vec<Sample> = (0..32)
        .map(|i| {
            let t = 90.0 + 10.0 * i as f64;
            Sample::new(
                t,
                susceptibility(&truth, t).expect("positive temperature").chi,
            )
        })
        .collect();
    let init = DimerParameters::new(-150.0)
        .map_err(e)?
        .with_g(2.0)
        .map_err(e)?;
    let fit = fit_bleaney_bowers(&series, &init).map_err(e)?;
    let rel_j = (fit.j_over_kb / -204.0 - 1.0).abs();
    let rel_g = (fit.g_factor / 2.13 - 1.0).abs();
    ensure(
        rel_j <= 1e-6 && rel_g <= 1e-6,
        format!("fit off by {rel_j:e}, {rel_g:e}"),
    )?;

    let mut worst_w = 0.0f64;
    for i in 0..1000 {
        let x = 10f64.powf(-8.0 + 16.0 * i as f64 / 999.0);
        let w = lambert_w(x).map_err(e)?;
        worst_w = worst_w.max((w * w.exp() - x).abs() / x);
    }
    ensure(worst_w <= 1e-12, format!("Lambert W residual {worst_w:e}"))?;

    let p = DimerParameters::new(-1.0).map_err(e)?;
    let exact = 1.335_760_053_848_65;
    let mut errors = Vec::new();
    for n in [50, 100, 200, 400] {
        let series: Vec<Sample> = (1..=n)
            .map(|i| {
                let t = 5.0 * i as f64 / n as f64;
                Sample::new(t, specific_heat(&p, t).expect("positive temperature").0)
            })
            .collect();
        errors.push((integrate_series_with_tail(&series, None).map_err(e)?.value - exact).abs());
    }
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    ensure(
        orders.iter().all(|&o| o >= 1.8),
        format!("trapezoid orders {orders:?}"),
    )?;

    Ok(format!(
        "identity {worst_identity:.1e}, entropy {worst_entropy:.1e}, c_m {worst_cm:.1e}, chi {worst_chi:.1e}, \
         fit {:.1e}, W {worst_w:.1e}, trapezoid order {:.2}",
        rel_j.max(rel_g),
        orders.last().copied().unwrap_or(0.0)
    ))
}

fn binary(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dimerq"))
        .args(args)
        .env_remove("DIMER_DISCORD_PRECISION")
        .output()
        .map_err(e)?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Check {
    let invocations: [&[&str]; 5] = [
        &["theory", "--preset", "copper-acetate-hydrate"],
        &["landmarks", "--J-over-kB", "-1", "--format", "json"],
        &["from-neutron", "--correlator", "-0.54(9)", "--t", "4"],
        &["figure", "--id", "5"],
        &[
            "from-cm",
            "--route",
            "invert",
            "--J-over-kB",
            "-2.59",
            "--t",
            "4",
            "--cm",
            "0.4125",
        ],
    ];
    for args in invocations {
        let (c1, a) = binary(args)?;
        let (c2, b) = binary(args)?;
        ensure(
            c1 == EXIT_SUCCESS && c2 == EXIT_SUCCESS,
            format!("{args:?} exited {c1}, {c2}"),
        )?;
        ensure(
            !a.is_empty() && a == b,
            format!("{args:?} output differs between runs"),
        )?;
    }
    let (failure, _) = binary(&["from-neutron", "--correlator", "0.5(1)"])?;
    ensure(
        failure == EXIT_FAILURE,
        format!("out-of-range G exited {failure}"),
    )?;
    let (usage, _) = binary(&["landmarks", "--preset", "no-such-material"])?;
    ensure(
        usage == EXIT_USAGE,
        format!("unknown preset exited {usage}"),
    )?;
    let (usage, _) = binary(&["theory", "--J-over-kB"])?;
    ensure(usage == EXIT_USAGE, format!("missing value exited {usage}"))?;
    Ok("5 commands byte-identical across runs; exit codes 0, 1, 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("landmark constants", landmarks),
        ("thermodynamic maxima", maxima),
        ("copper nitrate channels", copper_nitrate),
        ("copper acetates", acetates),
        ("ferromagnetic complex", ferro_complex),
        ("property suites", properties),
        ("CLI determinism and exit codes", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
