//! Best uniform approximation by sums of two function algebras on finite
//! quotient spaces.
//!
//! A finite point set carries two labelings `s` and `p`; the approximating
//! family is `{ g(s(x)) + h(p(x)) }`. The crate computes the error of best
//! approximation `E(f)` by a Chebyshev linear program ([`solver::solve_lp`])
//! or alternating midrange sweeps on grids ([`solver::solve_ds`]), recovers it
//! independently as a maximum mean cycle over closed bolts
//! ([`boltgraph::max_mean_cycle`]), and checks lower-bound and optimality
//! certificates built from bolts ([`bolt::dvp_bound`],
//! [`boltgraph::find_extremal_bolt`]).
//!
//! ```
//! use bolt_approx::{build_grid, solve_lp, SampledFunction};
//!
//! let space = build_grid(2, 2)?;
//! let f = SampledFunction::new(vec![0.0, 0.0, 0.0, 1.0])?;
//! let sol = solve_lp(&space, &f)?;
//! assert!((sol.error - 0.25).abs() < 1e-12);
//! assert!((sol.dual_value - 0.25).abs() < 1e-12);
//! # Ok::<(), bolt_approx::Error>(())
//! ```

pub mod bolt;
pub mod boltgraph;
pub mod cli;
pub mod error;
pub mod simplex;
pub mod solver;
pub mod space;

pub use bolt::{bolt_functional, dvp_bound, dvp_bound_with_tol, validate_bolt, Bolt, Link};
pub use boltgraph::{
    build_graph, enumerate_closed_bolts, find_extremal_bolt, has_closed_bolt, max_mean_cycle,
    BoltGraph, DualResult, Layer,
};
pub use error::{Error, Result};
pub use solver::{solve_ds, solve_lp, ApproxSolution, Method};
pub use space::{
    build_explicit, build_grid, build_ridge, evaluate_sum, FiniteQuotientSpace, SampledFunction,
    SumElement,
};
