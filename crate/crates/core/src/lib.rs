//! Bi-coordinate descent for problems of the form
//!
//! ```text
//! minimize f(x)  subject to  <a, x> = beta,  lower <= x <= upper
//! ```
//!
//! with `a_i != 0`. Each step of [`bcv_solve`] moves exactly two
//! coordinates along a direction that keeps the balance `<a, x>` fixed,
//! choosing pairs by a threshold on scaled partial derivatives that shrinks
//! from stage to stage. Stages may also change the objective, which is how
//! non-smooth costs are handled through a sequence of smoothed surrogates.
//!
//! ```
//! use std::sync::Arc;
//! use bicoord::{bcv_solve, build_problem, BoxBounds, GeometricSchedule, LinearEquality, Quadratic, SolverConfig};
//!
//! let f = Quadratic::new(vec![vec![2.0, 0.0], vec![0.0, 1.0]], None).unwrap();
//! let p = build_problem(
//!     BoxBounds::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap(),
//!     LinearEquality::new(vec![1.0, 1.0], 1.0).unwrap(),
//!     Arc::new(f),
//! )
//! .unwrap();
//! let schedule = GeometricSchedule::with_defaults(p).unwrap();
//! let cfg = SolverConfig { target_accuracy: 1e-6, ..SolverConfig::default() };
//! let r = bcv_solve(&schedule, &cfg).unwrap();
//! assert!(r.converged);
//! assert!((r.point[0] - 1.0 / 3.0).abs() < 1e-3);
//! ```
//!
//! Coefficients of either sign are accepted by [`build_problem`]; solvers
//! require `a > 0`, which [`normalize_signs`] provides.

pub mod applications;
pub mod bench;
pub mod diagnostics;
mod error;
pub mod geometry;
pub mod io;
pub mod objective;
pub mod problem;
pub mod smoothing;
pub mod solvers;
pub mod stages;

pub use diagnostics::{
    audit_trace, check_stationarity, check_stationarity_with, error_bound, write_trace_csv, AuditFailure,
    AuditReport, BoundStatus, StationarityReport,
};
pub use error::{Error, Result};
pub use geometry::{check_feasibility, minimize_linear, project, FeasibilityReport, BALANCE_TOL};
pub use objective::{
    finite_difference_gradient, Linear, LogBarrier, Objective, Quadratic, SeparableQuadratic, SignFlipped,
    SmoothedL1, Sum,
};
pub use problem::{
    build_problem, denormalize_point, normalize_signs, BoxBounds, LinearEquality, ProblemInstance, SignMap,
};
pub use smoothing::{smooth_abs_huber, smooth_abs_sqrt, smooth_plus};
pub use solvers::{
    armijo_linesearch, bcv_solve, bcv_solve_from, cgm_solve, cgm_solve_staged, gradient_difference_linesearch,
    mbc_solve, mbc_solve_from, select_pair, LineStep, Linesearch, PairSelection, PairSelector, PairStrategy,
    SolveResult, SolverConfig, Termination, TraceEvent,
};
pub use stages::{
    make_geometric_schedule, ConstantStage, Floors, FnStages, GeometricSchedule, Stage, StageProvider,
};
