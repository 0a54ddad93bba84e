use std::path::Path;

use entropic::{
    classical_series_force_reduced, compare_histogram, differential_entropy,
    entropic_force_reduced, low_temp_force_reduced, maxent_solve, nc_entropic_force_reduced,
    relative_entropy, scale_transform, simulate_pair, Constraint, DensityGrid, Domain, Error,
    Geometry, LangevinConfig, MaxEntProblem, NcParams, PairLaw, Statistics, ThermalState,
};

use crate::args::{
    Command, EntropyArgs, GeometryChoice, LimitsArgs, MaxentArgs, PairChoice, ProfileArgs, Regime,
    SimulateArgs, StatsChoice,
};
use crate::output::Table;
use crate::CliError;

/// Finished output plus an optional check failure to report after writing.
pub struct Outcome {
    pub body: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            failure: None,
        }
    }
}

pub fn dispatch(command: &Command, digits: u8) -> Result<Outcome, CliError> {
    match command {
        Command::ForceProfile(a) => force_profile(a, digits),
        Command::Maxent(a) => maxent(a, digits),
        Command::LimitsCheck(a) => limits_check(a, digits),
        Command::Simulate(a) => simulate(a, digits),
        Command::Entropy(a) => entropy(a, digits),
    }
}

fn selected(choice: StatsChoice) -> Vec<Statistics> {
    let mut out = Vec::new();
    if choice.bose() {
        out.push(Statistics::Bose);
    }
    if choice.fermi() {
        out.push(Statistics::Fermi);
    }
    out
}

fn geometry(choice: GeometryChoice) -> Geometry {
    match choice {
        GeometryChoice::Line => Geometry::Line,
        GeometryChoice::Radial => Geometry::Radial,
    }
}

/// Two named numeric columns from a CSV file with a header row.
fn read_columns(path: &Path, names: [&str; 2]) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let shown = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {shown}: {e}")))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("{shown}: {e}")))?
        .clone();
    let mut idx = [0; 2];
    for (slot, name) in idx.iter_mut().zip(names) {
        *slot = headers.iter().position(|h| h == name).ok_or_else(|| {
            CliError::Usage(format!(
                "{shown}: expected columns {}, found {}",
                names.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ))
        })?;
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{shown}: {e}")))?;
        for (col, out) in idx.iter().zip([&mut a, &mut b]) {
            let field = record.get(*col).unwrap_or("");
            let v: f64 = field.parse().map_err(|_| {
                CliError::Usage(format!(
                    "{shown}: row {}: `{field}` is not a number",
                    row + 1
                ))
            })?;
            out.push(v);
        }
    }
    Ok((a, b))
}

fn force_profile(a: &ProfileArgs, digits: u8) -> Result<Outcome, CliError> {
    if !(a.x_min.is_finite() && a.x_max.is_finite() && a.x_min >= 0.0 && a.x_min < a.x_max) {
        return Err(CliError::Usage(format!(
            "need 0 <= x-min < x-max, got [{}, {}]",
            a.x_min, a.x_max
        )));
    }
    if a.steps < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 steps, got {}",
            a.steps
        )));
    }
    let p = &a.physical;
    let state = if p.physical {
        let (m, t) = (
            p.mass.unwrap_or(f64::NAN),
            p.temperature.unwrap_or(f64::NAN),
        );
        Some(ThermalState::new(m, t, p.hbar, p.kb)?)
    } else {
        None
    };
    let params = match (a.tau, p.theta, &state) {
        (_, Some(theta), Some(state)) => NcParams::from_theta(theta, state)?,
        (tau, _, _) => NcParams::from_tau(tau.unwrap_or(0.0))?,
    };
    let tau = params.tau();
    // reduced (x, g) -> physical (r, F): r = x λ, F = (k_B T / λ) g
    let (length, force_unit) = match &state {
        Some(s) => (s.thermal_wavelength(), s.kt() / s.thermal_wavelength()),
        None => (1.0, 1.0),
    };

    let stats = selected(a.stats);
    let mut header = vec![if p.physical { "r" } else { "x" }];
    for s in &stats {
        header.push(match (s, p.physical) {
            (Statistics::Bose, false) => "g_bose",
            (Statistics::Fermi, false) => "g_fermi",
            (Statistics::Bose, true) => "f_bose",
            (Statistics::Fermi, true) => "f_fermi",
        });
    }
    let mut table = Table::new(&header, digits);
    let span = a.x_max - a.x_min;
    for i in 0..a.steps {
        let x = if i + 1 == a.steps {
            a.x_max
        } else {
            a.x_min + span * i as f64 / (a.steps - 1) as f64
        };
        let mut row = vec![table.num(x * length)];
        for &s in &stats {
            let g = if tau == 0.0 {
                entropic_force_reduced(x, s)
            } else {
                nc_entropic_force_reduced(x, s, tau)
            };
            row.push(match g {
                Ok(g) => table.num(g * force_unit),
                // contact pole of commutative fermions
                Err(Error::Pole { .. }) => String::new(),
                Err(e) => return Err(e.into()),
            });
        }
        table.row(row);
    }
    let mut summary = vec![("tau", table.num(tau))];
    if let Some(s) = &state {
        summary.push(("lambda_th", table.num(s.thermal_wavelength())));
        summary.push(("kt", table.num(s.kt())));
    }
    table.summary(&summary);
    Ok(Outcome::ok(table.finish()))
}

fn maxent(a: &MaxentArgs, digits: u8) -> Result<Outcome, CliError> {
    let (r, u) = read_columns(&a.potential, ["r", "U"])?;
    let domain = Domain::from_midpoints(&r, geometry(a.geometry))?;
    let constraint = match (a.beta, a.mean_energy) {
        (Some(beta), None) => Constraint::FixedBeta(beta),
        (None, Some(e)) => Constraint::TargetMeanEnergy(e),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --beta, --mean-energy".into(),
            ))
        }
    };
    let solution = maxent_solve(&MaxEntProblem::new(domain, u, constraint)?)?;

    let mut table = Table::new(&["r", "p"], digits);
    for (r, p) in r.iter().zip(solution.density.values()) {
        let row = [table.num(*r), table.num(*p)];
        table.row(row);
    }
    table.summary(&[
        ("beta", table.num(solution.beta)),
        ("lambda", table.num(solution.lambda)),
        ("Q", table.num(solution.partition)),
    ]);
    table.summary(&[
        ("mean_energy", table.num(solution.mean_energy)),
        ("ln_Q", table.num(solution.log_partition)),
    ]);
    Ok(Outcome::ok(table.finish()))
}

pub const LOW_POINTS: [f64; 4] = [0.2, 0.1, 0.05, 0.02];
pub const CLASSICAL_POINTS: [f64; 4] = [1.2, 1.5, 2.0, 3.0];

fn limits_check(a: &LimitsArgs, digits: u8) -> Result<Outcome, CliError> {
    let tolerance = a.tolerance.unwrap_or(match a.regime {
        Regime::Low => 0.01,
        Regime::Classical => 1e-9,
    });
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let mut table = Table::new(
        &["x", "stats", "exact", "limit", "deviation", "pass"],
        digits,
    );
    let (mut rows, mut failed) = (0, 0);
    for s in selected(a.stats) {
        let points = match a.regime {
            Regime::Low => LOW_POINTS,
            Regime::Classical => CLASSICAL_POINTS,
        };
        for x in points {
            let exact = entropic_force_reduced(x, s)?;
            let (limit, deviation) = match a.regime {
                Regime::Low => {
                    let limit = low_temp_force_reduced(x, s)?;
                    (limit, ((exact - limit) / limit).abs())
                }
                Regime::Classical => {
                    let limit = classical_series_force_reduced(x, s, a.terms)?;
                    (limit, (exact - limit).abs())
                }
            };
            if !deviation.is_finite() {
                return Err(CliError::Failure(format!(
                    "non-finite deviation at x = {x}"
                )));
            }
            let pass = deviation <= tolerance;
            rows += 1;
            failed += usize::from(!pass);
            let row = [
                table.num(x),
                s.name().to_string(),
                table.num(exact),
                table.num(limit),
                table.num(deviation),
                pass.to_string(),
            ];
            table.row(row);
        }
    }
    let regime = match a.regime {
        Regime::Low => "low",
        Regime::Classical => "classical",
    };
    table.summary(&[
        ("regime", regime.to_string()),
        ("tolerance", table.num(tolerance)),
        ("failed", failed.to_string()),
    ]);
    Ok(Outcome {
        body: table.finish(),
        failure: (failed > 0)
            .then(|| format!("{failed} of {rows} rows exceed the tolerance {tolerance}")),
    })
}

fn simulate(a: &SimulateArgs, digits: u8) -> Result<Outcome, CliError> {
    let law = match a.stats {
        PairChoice::Free if a.tau != 0.0 => {
            return Err(CliError::Usage(
                "--tau has no meaning for a free pair".into(),
            ))
        }
        PairChoice::Free => PairLaw::Free,
        PairChoice::Bose => PairLaw::quantum(Statistics::Bose, a.tau),
        PairChoice::Fermi => PairLaw::quantum(Statistics::Fermi, a.tau),
    };
    let config = LangevinConfig {
        friction: a.friction,
        kt: a.kt,
        dt: a.dt,
        n_steps: a.steps,
        burn_in: a.burn_in,
        n_walkers: a.walkers,
        seed: a.seed,
        x_min: a.x_min,
        x_max: a.x_max,
        bins: a.bins,
    };
    let hist = simulate_pair(&law, &config)?;
    let cmp = compare_histogram(&hist)?;

    let mut table = Table::new(&["x_lo", "x_hi", "count", "empirical", "reference"], digits);
    let rows = hist
        .edges()
        .windows(2)
        .zip(hist.counts())
        .zip(hist.empirical().iter().zip(hist.reference()));
    for ((edge, count), (emp, reference)) in rows {
        let row = [
            table.num(edge[0]),
            table.num(edge[1]),
            count.to_string(),
            table.num(*emp),
            table.num(*reference),
        ];
        table.row(row);
    }
    table.summary(&[
        ("tv", table.num(cmp.tv_distance)),
        ("chi_square", table.num(cmp.chi_square)),
        ("dof", cmp.dof.to_string()),
    ]);
    let name = match a.stats {
        PairChoice::Bose => "bose",
        PairChoice::Fermi => "fermi",
        PairChoice::Free => "free",
    };
    table.summary(&[
        ("stats", name.to_string()),
        ("tau", table.num(a.tau)),
        ("seed", a.seed.to_string()),
        ("samples", hist.total().to_string()),
    ]);
    Ok(Outcome::ok(table.finish()))
}

fn entropy(a: &EntropyArgs, digits: u8) -> Result<Outcome, CliError> {
    let (x, p) = read_columns(&a.dist, ["x", "p"])?;
    let domain = Domain::from_midpoints(&x, geometry(a.geometry))?;
    let density = DensityGrid::normalized(domain.clone(), p)?;
    let s = differential_entropy(&density)?;

    let mut table = Table::new(&["quantity", "value"], digits);
    let row = ["differential_entropy".to_string(), table.num(s)];
    table.row(row);
    if let Some(path) = &a.reference {
        let (xq, q) = read_columns(path, ["x", "p"])?;
        let same = xq.len() == x.len()
            && x.iter()
                .zip(&xq)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0));
        if !same {
            return Err(CliError::Usage(
                "--dist and --ref must list the same x values".into(),
            ));
        }
        let q = DensityGrid::normalized(domain, q)?;
        let row = [
            "divergence".to_string(),
            table.num(relative_entropy(&density, &q)?),
        ];
        table.row(row);
    }
    if let Some(alpha) = a.alpha {
        let scaled = differential_entropy(&scale_transform(&density, alpha)?)?;
        let rows = [
            ["scaled_entropy".to_string(), table.num(scaled)],
            ["gain".to_string(), table.num(scaled - s)],
        ];
        for row in rows {
            table.row(row);
        }
    }
    Ok(Outcome::ok(table.finish()))
}
