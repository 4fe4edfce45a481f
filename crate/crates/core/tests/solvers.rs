mod common;

use std::sync::Arc;

use bicoord::bench::{gen_convex_log, gen_quadratic, Cell, Series, REFERENCE_BETAS, REFERENCE_NS};
use bicoord::{
    audit_trace, bcv_solve, bcv_solve_from, build_problem, cgm_solve, check_feasibility, check_stationarity,
    error_bound, mbc_solve, select_pair, BoxBounds, ConstantStage, GeometricSchedule, Linear, LinearEquality,
    Linesearch, Objective, PairStrategy, ProblemInstance, Quadratic, SeparableQuadratic, SolverConfig,
    StageProvider, Termination, BALANCE_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tight() -> SolverConfig {
    SolverConfig {
        target_accuracy: 0.0,
        max_inner_iterations: 100_000,
        max_stages: 1_000,
        ..SolverConfig::default()
    }
}

#[test]
fn gradient_parallel_to_a_needs_no_steps() {
    let a = vec![1.0, 2.0, 0.5];
    let p = build_problem(
        BoxBounds::new(vec![0.0; 3], vec![2.0; 3]).unwrap(),
        LinearEquality::new(a.clone(), 2.0).unwrap(),
        Arc::new(Linear {
            c: a.iter().map(|v| 3.0 * v).collect(),
        }),
    )
    .unwrap();
    let r = bcv_solve(&GeometricSchedule::with_defaults(p.clone()).unwrap(), &SolverConfig::default()).unwrap();
    assert_eq!(r.inner_iterations_total, 0);
    assert!(r.converged);
    assert!(error_bound(&p, &r.point).unwrap().abs() < 1e-12);
}

#[test]
fn bcv_reaches_reference_accuracy_on_first_cell() {
    let r = Cell::new(Series::Quadratic, 5.0, 10).solve(bicoord::bench::Method::Bcv, 0.1, 500).unwrap();
    assert!(r.converged);
    assert!(r.error_bound <= 0.1);
    // the reference reports 30 steps for this cell
    assert!(r.inner_iterations_total <= 150);
}

#[test]
fn every_iterate_feasible_and_audited_on_n20() {
    let schedule = GeometricSchedule::with_defaults(gen_quadratic(20, 10.0).unwrap()).unwrap();
    let cfg = SolverConfig::default();
    let r = bcv_solve(&schedule, &cfg).unwrap();
    let report = audit_trace(&r.trace, &r.start, &cfg, &schedule).unwrap();
    assert!(report.passed(), "{:?}", report.failure);
    assert_eq!(report.events_checked, r.trace.len());
    assert!(check_feasibility(&r.point, schedule.base(), BALANCE_TOL).feasible);
}

#[test]
fn tampered_trace_fails_at_edit() {
    let schedule = GeometricSchedule::with_defaults(gen_quadratic(10, 5.0).unwrap()).unwrap();
    let cfg = SolverConfig::default();
    let r = bcv_solve(&schedule, &cfg).unwrap();
    let mut t = r.trace.clone();
    t[4].f_after += 1.0;
    let report = audit_trace(&t, &r.start, &cfg, &schedule).unwrap();
    assert_eq!(report.failure.unwrap().event, 4);
    assert!(audit_trace(&[], &r.start, &cfg, &schedule).unwrap().passed());
}

#[test]
fn sufficient_decrease_bound_on_total_step() {
    // Σ λ_k <= (f(x^0) - f*) / (σ δ_l) for each stage
    let p = gen_convex_log(20, 5.0).unwrap();
    let schedule = GeometricSchedule::with_defaults(p.clone()).unwrap();
    let cfg = SolverConfig {
        target_accuracy: 1e-3,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&schedule, &cfg).unwrap();
    let f_star = bcv_solve(&schedule, &tight()).unwrap().objective_value;
    for l in 1..=r.final_stage {
        let steps: Vec<_> = r.trace.iter().filter(|e| e.stage == l).collect();
        let Some(first) = steps.first() else { continue };
        let delta = schedule.stage(l).unwrap().delta;
        let total: f64 = steps.iter().map(|e| e.lambda).sum();
        assert!(total <= (first.f_before - f_star) / (cfg.sigma * delta) + 1e-9);
    }
}

#[test]
fn restart_means_no_eligible_pair() {
    let p = gen_quadratic(10, 5.0).unwrap();
    let schedule = GeometricSchedule::with_defaults(p).unwrap();
    let cfg = SolverConfig {
        target_accuracy: 1e-3,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&schedule, &cfg).unwrap();
    // replay each stage end and scan every pair
    let mut x = r.start.clone();
    for (idx, ev) in r.trace.iter().enumerate() {
        let next_stage = r.trace.get(idx + 1).map(|e| e.stage);
        let d = [-1.0, 1.0];
        x[ev.i] += d[0] * ev.lambda;
        x[ev.j] += d[1] * ev.lambda;
        if next_stage != Some(ev.stage) && next_stage.is_some() {
            let st = schedule.stage(ev.stage).unwrap();
            assert!(select_pair(&x, &st, PairStrategy::MaxViolation).is_none());
            let g = st.problem.objective().gradient(&x);
            for i in 0..10 {
                for j in 0..10 {
                    let dec = x[i] >= st.problem.lower()[i] + st.epsilon;
                    let inc = x[j] <= st.problem.upper()[j] - st.epsilon;
                    if i != j && dec && inc {
                        assert!(g[i] - g[j] < st.delta + 1e-9, "pair ({i}, {j}) still eligible");
                    }
                }
            }
        }
    }
}

#[test]
fn final_stationarity_at_floors() {
    for p in [gen_quadratic(10, 5.0).unwrap(), gen_convex_log(20, 10.0).unwrap()] {
        let schedule = GeometricSchedule::with_defaults(p).unwrap();
        let r = bcv_solve(&schedule, &tight()).unwrap();
        assert_eq!(r.termination, Termination::Floors);
        let last = schedule.stage(r.final_stage).unwrap();
        let rep = check_stationarity(&last.problem, &r.point, 1e-4).unwrap();
        assert!(rep.stationary, "violation {}", rep.worst_violation);
    }
}

#[test]
fn strategies_and_linesearches_all_converge() {
    for series in [Series::Quadratic, Series::ConvexLog] {
        for beta in REFERENCE_BETAS {
            for n in REFERENCE_NS {
                let cell = Cell::new(series, beta, n);
                let schedule = cell.schedule(0.1).unwrap();
                for pair_strategy in [PairStrategy::MaxViolation, PairStrategy::FirstFoundSweep] {
                    for linesearch in [Linesearch::Armijo, Linesearch::GradientDifference] {
                        let cfg = SolverConfig {
                            pair_strategy,
                            linesearch,
                            max_inner_iterations: 20_000,
                            ..SolverConfig::default()
                        };
                        let r = bcv_solve(&schedule, &cfg).unwrap();
                        assert!(r.converged, "{series:?} {beta} {n} {pair_strategy:?} {linesearch:?}");
                        assert!(audit_trace(&r.trace, &r.start, &cfg, &schedule).unwrap().passed());
                    }
                }
            }
        }
    }
}

#[test]
fn budget_exhaustion_is_reported() {
    let schedule = GeometricSchedule::with_defaults(gen_quadratic(50, 20.0).unwrap()).unwrap();
    let cfg = SolverConfig {
        max_inner_iterations: 5,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&schedule, &cfg).unwrap();
    assert!(!r.converged);
    assert_eq!(r.termination, Termination::IterationBudget);
    assert_eq!(r.inner_iterations_total, 5);
}

#[test]
fn projection_restart_toggle_keeps_feasibility() {
    let p = gen_quadratic(20, 5.0).unwrap();
    for use_projection_restart in [true, false] {
        let cfg = SolverConfig {
            use_projection_restart,
            ..SolverConfig::default()
        };
        let schedule = GeometricSchedule::with_defaults(p.clone()).unwrap();
        let r = bcv_solve(&schedule, &cfg).unwrap();
        assert!(r.converged);
        assert!(audit_trace(&r.trace, &r.start, &cfg, &schedule).unwrap().passed());
    }
}

#[test]
fn infeasible_start_is_projected() {
    let p = gen_quadratic(10, 5.0).unwrap();
    let schedule = GeometricSchedule::with_defaults(p.clone()).unwrap();
    let r = bcv_solve_from(&schedule, &SolverConfig::default(), Some(&[10.0; 10])).unwrap();
    assert!(check_feasibility(&r.start, &p, BALANCE_TOL).feasible);
    assert!(r.converged);
}

#[test]
fn cgm_from_optimum_takes_no_steps() {
    let p = gen_quadratic(10, 5.0).unwrap();
    let opt = bcv_solve(&GeometricSchedule::with_defaults(p.clone()).unwrap(), &tight()).unwrap();
    let cfg = SolverConfig {
        target_accuracy: 1e-3,
        ..SolverConfig::default()
    };
    let r = bicoord::cgm_solve_staged(&ConstantStage::new(p, 1.0, 1.0).unwrap(), &cfg, Some(&opt.point)).unwrap();
    assert_eq!(r.inner_iterations_total, 0);
    assert!(r.converged);
}

#[test]
fn cgm_iterates_stay_feasible_and_converge() {
    let p = gen_quadratic(10, 5.0).unwrap();
    let r = cgm_solve(&p, &SolverConfig::default()).unwrap();
    assert!(r.converged);
    assert!(r.error_bound <= 0.1);
    assert!(check_feasibility(&r.point, &p, BALANCE_TOL).feasible);
    for ev in &r.trace {
        assert!(ev.f_after < ev.f_before);
        assert!(ev.lambda > 0.0 && ev.lambda <= 1.0);
    }
}

#[test]
fn mbc_decreases_every_step() {
    let p = gen_convex_log(20, 10.0).unwrap();
    let r = mbc_solve(&p, &SolverConfig::default()).unwrap();
    for ev in &r.trace {
        assert!(ev.f_after < ev.f_before);
        assert!(ev.mu < 0.0);
    }
    assert!(check_feasibility(&r.point, &p, BALANCE_TOL).feasible);
}

#[test]
fn mbc_and_bcv_agree_on_two_variables() {
    let p = build_problem(
        BoxBounds::new(vec![0.0; 2], vec![1.0; 2]).unwrap(),
        LinearEquality::new(vec![1.0, 1.0], 1.0).unwrap(),
        Arc::new(SeparableQuadratic {
            linear: vec![1.0, 0.0],
            curvature: vec![2.0, 1.0],
        }),
    )
    .unwrap();
    let cfg = SolverConfig {
        target_accuracy: 1e-9,
        ..SolverConfig::default()
    };
    let m = mbc_solve(&p, &cfg).unwrap();
    let b = bcv_solve(&GeometricSchedule::new(p, 1e-3, 1e-3, 0.5, Default::default()).unwrap(), &cfg).unwrap();
    assert_eq!((m.trace[0].i, m.trace[0].j), (b.trace[0].i, b.trace[0].j));
}

fn random_quadratic(rng: &mut ChaCha8Rng, n: usize) -> Arc<dyn Objective> {
    // diagonally dominant, hence convex
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let v = rng.gen_range(-1.0..1.0);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    for i in 0..n {
        rows[i][i] = rows[i].iter().map(|v: &f64| v.abs()).sum::<f64>() + rng.gen_range(0.1..1.0);
    }
    let q: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    Arc::new(Quadratic::new(rows, Some(q)).unwrap())
}

#[test]
fn random_convex_instances_solve_to_stationarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rng.gen_range(2..=8);
        let f = random_quadratic(&mut rng, n);
        let p: ProblemInstance = common::random_instance(&mut rng, n, Some(f));
        let schedule = GeometricSchedule::with_defaults(p).unwrap();
        let cfg = SolverConfig {
            target_accuracy: 1e-6,
            max_inner_iterations: 100_000,
            ..SolverConfig::default()
        };
        let r = bcv_solve(&schedule, &cfg).unwrap();
        assert!(r.error_bound <= 1e-4, "gap {}", r.error_bound);
        assert!(audit_trace(&r.trace, &r.start, &cfg, &schedule).unwrap().passed());
    }
}
