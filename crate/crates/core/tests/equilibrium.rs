//! Langevin runs checked against the analytic pair densities.

use entropic::dynamics::THINNING;
use entropic::*;

fn config(dt: f64, walkers: usize, burn_in: usize, samples: usize, x_min: f64) -> LangevinConfig {
    LangevinConfig {
        dt,
        n_walkers: walkers,
        burn_in,
        n_steps: burn_in + samples * THINNING,
        x_min,
        ..LangevinConfig::default()
    }
}

fn smooth() -> LangevinConfig {
    config(0.01, 20_000, 300, 10, 0.0)
}

fn fermi() -> LangevinConfig {
    config(9e-4, 25_000, 1500, 8, 0.02)
}

fn run(law: PairLaw, cfg: &LangevinConfig) -> (SeparationHistogram, HistogramComparison) {
    let hist = simulate_pair(&law, cfg).unwrap();
    let cmp = compare_histogram(&hist).unwrap();
    (hist, cmp)
}

#[test]
fn free_and_bose_runs_match_reference() {
    let (free, free_cmp) = run(PairLaw::Free, &smooth());
    let (bose, bose_cmp) = run(PairLaw::quantum(Statistics::Bose, 0.0), &smooth());
    assert_eq!(free.total(), 200_000);
    assert!(
        free_cmp.tv_distance < 0.02,
        "free tv {}",
        free_cmp.tv_distance
    );
    assert!(
        bose_cmp.tv_distance < 0.02,
        "bose tv {}",
        bose_cmp.tv_distance
    );
    // exchange attraction pulls the pair together
    assert!(bose.mean_separation() < free.mean_separation());
}

#[test]
fn fermi_run_matches_reference_and_avoids_contact() {
    let cfg = fermi();
    let (hist, cmp) = run(PairLaw::quantum(Statistics::Fermi, 0.0), &cfg);
    assert!(cmp.tv_distance < 0.03, "fermi tv {}", cmp.tv_distance);
    let (free, _) = run(PairLaw::Free, &cfg);
    let decile = cfg.x_min + 0.1 * (cfg.x_max - cfg.x_min);
    assert!(hist.mass_below(decile) < free.mass_below(decile));
}

#[test]
fn halving_dt_does_not_hurt() {
    let law = PairLaw::quantum(Statistics::Bose, 0.0);
    let (_, coarse) = run(law, &smooth());
    // same seed, same burn-in time and sample count
    let (_, fine) = run(law, &config(0.005, 20_000, 600, 10, 0.0));
    // sampling noise on the tv distance at 2e5 samples is a few 1e-3
    assert!(
        fine.tv_distance <= coarse.tv_distance + 0.005,
        "{} -> {}",
        coarse.tv_distance,
        fine.tv_distance
    );
}

#[test]
fn samples_stay_inside_the_shell() {
    let cfg = LangevinConfig {
        x_max: 1.0,
        ..config(0.02, 500, 50, 20, 0.5)
    };
    let hist = simulate_pair(&PairLaw::quantum(Statistics::Bose, 0.5), &cfg).unwrap();
    assert_eq!(hist.total(), 500 * 20);
    assert_eq!(hist.edges()[0], 0.5);
    assert_eq!(*hist.edges().last().unwrap(), 1.0);
}

#[test]
fn unstable_step_is_rejected_with_a_bound() {
    let cfg = config(0.05, 10, 10, 1, 0.02);
    match simulate_pair(&PairLaw::quantum(Statistics::Fermi, 0.0), &cfg) {
        Err(Error::Config(msg)) => assert!(msg.contains("dt <"), "{msg}"),
        other => panic!("expected a config error, got {other:?}"),
    }
}
