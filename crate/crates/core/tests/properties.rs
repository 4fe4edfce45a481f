mod common;

use std::sync::Arc;

use bicoord::bench::{gen_convex_log, gen_nonsmooth_l1, gen_quadratic};
use bicoord::{
    build_problem, check_feasibility, error_bound, minimize_linear, normalize_signs, project, BoxBounds,
    LinearEquality, Objective, ProblemInstance, Quadratic, BALANCE_TOL,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (ChaCha8Rng, ProblemInstance) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=7);
    let p = common::random_instance(&mut rng, n, None);
    (rng, p)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(a, b)| a * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_idempotent(seed in any::<u64>()) {
        let (mut rng, p) = instance(seed);
        let z = random_point(&mut rng, p.n(), 6.0);
        let x = project(&z, &p).unwrap();
        prop_assert!(check_feasibility(&x, &p, BALANCE_TOL).feasible);
        let again = project(&x, &p).unwrap();
        for (a, b) in x.iter().zip(&again) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn projection_is_nonexpansive(seed in any::<u64>()) {
        let (mut rng, p) = instance(seed);
        let z1 = random_point(&mut rng, p.n(), 6.0);
        let z2 = random_point(&mut rng, p.n(), 6.0);
        let (x1, x2) = (project(&z1, &p).unwrap(), project(&z2, &p).unwrap());
        let d = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        prop_assert!(d(&x1, &x2) <= d(&z1, &z2) + 1e-9);
    }

    #[test]
    fn projection_satisfies_variational_inequality(seed in any::<u64>()) {
        // <z - x, y - x> <= 0 for every feasible y
        let (mut rng, p) = instance(seed);
        let z = random_point(&mut rng, p.n(), 6.0);
        let x = project(&z, &p).unwrap();
        let r: Vec<f64> = z.iter().zip(&x).map(|(z, x)| z - x).collect();
        for _ in 0..10 {
            let y = common::feasible_sample(&mut rng, &p);
            let yx: Vec<f64> = y.iter().zip(&x).map(|(y, x)| y - x).collect();
            prop_assert!(dot(&r, &yx) <= 1e-8);
        }
    }

    #[test]
    fn linear_minimum_below_samples(seed in any::<u64>()) {
        let (mut rng, p) = instance(seed);
        let c = random_point(&mut rng, p.n(), 3.0);
        let (xs, v) = minimize_linear(&c, &p).unwrap();
        prop_assert!(check_feasibility(&xs, &p, BALANCE_TOL).feasible);
        prop_assert!((dot(&c, &xs) - v).abs() <= 1e-9 * (1.0 + v.abs()));
        for _ in 0..20 {
            let y = common::feasible_sample(&mut rng, &p);
            prop_assert!(v <= dot(&c, &y) + 1e-9);
        }
    }

    #[test]
    fn gap_dominates_sampled_directions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=6);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2.0 } else { 0.3 }).collect())
            .collect();
        let lin = random_point(&mut rng, n, 2.0);
        let f: Arc<dyn Objective> = Arc::new(Quadratic::new(rows, Some(lin)).unwrap());
        let p = common::random_instance(&mut rng, n, Some(f));
        let x = common::feasible_sample(&mut rng, &p);
        let gap = error_bound(&p, &x).unwrap();
        prop_assert!(gap >= -1e-12);
        let g = p.objective().gradient(&x);
        for _ in 0..20 {
            let y = common::feasible_sample(&mut rng, &p);
            let xy: Vec<f64> = x.iter().zip(&y).map(|(x, y)| x - y).collect();
            prop_assert!(gap >= dot(&g, &xy) - 1e-9);
        }
    }

    #[test]
    fn sign_normalization_preserves_values(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=6);
        let a: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.2..3.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 })
            .collect();
        let lower = random_point(&mut rng, n, 1.0);
        let upper: Vec<f64> = lower.iter().map(|l| l + rng.gen_range(0.5..2.0)).collect();
        let mid: Vec<f64> = lower.iter().zip(&upper).map(|(l, u)| 0.5 * (l + u)).collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 3.0 } else { 0.5 }).collect())
            .collect();
        let f: Arc<dyn Objective> = Arc::new(Quadratic::new(rows, Some(random_point(&mut rng, n, 1.0))).unwrap());
        let p = build_problem(
            BoxBounds::new(lower, upper).unwrap(),
            LinearEquality::new(a.clone(), dot(&a, &mid)).unwrap(),
            f,
        )
        .unwrap();
        let (q, map) = normalize_signs(&p).unwrap();
        prop_assert!(q.is_normalized());
        let y = project(&random_point(&mut rng, n, 2.0), &q).unwrap();
        let x = bicoord::denormalize_point(&y, &map).unwrap();
        prop_assert!((p.balance(&x) - p.beta()).abs() <= 1e-9 * (1.0 + p.beta().abs()));
        let (fx, fy) = (p.objective().value(&x), q.objective().value(&y));
        prop_assert!((fx - fy).abs() <= 1e-12 * (1.0 + fx.abs()));
        prop_assert_eq!(map.apply(&x).unwrap(), y);
    }

    #[test]
    fn benchmark_gradients_match_partials(n in 3usize..25, beta in 1.0f64..20.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in [
            gen_quadratic(n, beta).unwrap(),
            gen_convex_log(n, beta).unwrap(),
            gen_nonsmooth_l1(n, beta, 0.5).unwrap(),
        ] {
            let x = common::feasible_sample(&mut rng, &p);
            let f = p.objective();
            let g = f.gradient(&x);
            for (i, gi) in g.iter().enumerate() {
                prop_assert!((gi - f.partial(i, &x)).abs() <= 1e-10 * (1.0 + gi.abs()));
            }
        }
    }
}
