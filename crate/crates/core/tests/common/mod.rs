//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use bicoord::{build_problem, BoxBounds, Linear, LinearEquality, Objective, ProblemInstance};
use rand::Rng;

/// Random normalized instance with `a > 0` and `beta` strictly inside the
/// attainable range.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, objective: Option<Arc<dyn Objective>>) -> ProblemInstance {
    let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
    let lower: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..1.0)).collect();
    let upper: Vec<f64> = lower.iter().map(|l| l + rng.gen_range(0.1..3.0)).collect();
    let min: f64 = a.iter().zip(&lower).map(|(a, l)| a * l).sum();
    let max: f64 = a.iter().zip(&upper).map(|(a, u)| a * u).sum();
    let beta = min + rng.gen_range(0.05..0.95) * (max - min);
    let objective = objective.unwrap_or_else(|| Arc::new(Linear { c: vec![0.0; n] }));
    build_problem(
        BoxBounds::new(lower, upper).unwrap(),
        LinearEquality::new(a, beta).unwrap(),
        objective,
    )
    .unwrap()
}

fn clip_at(z: &[f64], p: &ProblemInstance, lambda: f64) -> Vec<f64> {
    (0..p.n())
        .map(|i| (z[i] + lambda * p.a()[i]).clamp(p.lower()[i], p.upper()[i]))
        .collect()
}

/// Euclidean projection by plain bisection on the multiplier.
pub fn bisection_projection(z: &[f64], p: &ProblemInstance) -> Vec<f64> {
    let balance = |lam: f64| -> f64 {
        clip_at(z, p, lam).iter().zip(p.a()).map(|(x, a)| x * a).sum::<f64>() - p.beta()
    };
    let mut lo = -1.0;
    while balance(lo) > 0.0 {
        lo *= 2.0;
    }
    let mut hi = 1.0;
    while balance(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if balance(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    clip_at(z, p, 0.5 * (lo + hi))
}

/// Minimum of `<c, x>` over the feasible set by enumerating all vertex
/// patterns: one free coordinate, every other coordinate at a bound.
pub fn vertex_enumeration_min(c: &[f64], p: &ProblemInstance) -> f64 {
    let n = p.n();
    let mut best = f64::INFINITY;
    for free in 0..n {
        for mask in 0u32..(1 << (n - 1)) {
            let mut x = vec![0.0; n];
            let mut bit = 0;
            for s in 0..n {
                if s == free {
                    continue;
                }
                x[s] = if mask >> bit & 1 == 1 { p.upper()[s] } else { p.lower()[s] };
                bit += 1;
            }
            let rest: f64 = (0..n).filter(|&s| s != free).map(|s| p.a()[s] * x[s]).sum();
            let v = (p.beta() - rest) / p.a()[free];
            let slack = 1e-12 * (1.0 + v.abs());
            if v < p.lower()[free] - slack || v > p.upper()[free] + slack {
                continue;
            }
            x[free] = v.clamp(p.lower()[free], p.upper()[free]);
            best = best.min(c.iter().zip(&x).map(|(c, x)| c * x).sum());
        }
    }
    best
}

/// Random feasible point: the oracle projection of a random box point.
pub fn feasible_sample<R: Rng>(rng: &mut R, p: &ProblemInstance) -> Vec<f64> {
    let z: Vec<f64> = (0..p.n())
        .map(|i| {
            let w = p.upper()[i] - p.lower()[i];
            rng.gen_range(p.lower()[i] - w..p.upper()[i] + w)
        })
        .collect();
    bisection_projection(&z, p)
}

/// Whether some `λ` has `h <= λ + tol/2` on every coordinate that may
/// decrease and `h >= λ - tol/2` on every coordinate that may increase.
/// Only the values `h_s ± tol/2` need to be tried.
pub fn multiplier_exists(h: &[f64], may_decrease: &[bool], may_increase: &[bool], tol: f64) -> bool {
    let ok = |lam: f64| {
        (0..h.len()).all(|s| {
            (!may_decrease[s] || h[s] <= lam + 0.5 * tol) && (!may_increase[s] || h[s] >= lam - 0.5 * tol)
        })
    };
    h.iter().any(|&v| ok(v - 0.5 * tol) || ok(v + 0.5 * tol))
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
