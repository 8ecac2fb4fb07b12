//! Best approximation of a corner spike on a 2x2 grid, and the closed bolt
//! that proves it cannot be beaten.
//!
//! cargo run --example grid_duality

use bolt_approx::{bolt_functional, build_grid, evaluate_sum, solve_lp, SampledFunction};

fn main() -> bolt_approx::Result<()> {
    let space = build_grid(2, 2)?;
    let f = SampledFunction::new(vec![0.0, 0.0, 0.0, 1.0])?;

    let sol = solve_lp(&space, &f)?;
    println!("E(f)           = {:.6}", sol.error);
    println!("g              = {:?}", sol.witness.g);
    println!("h              = {:?}", sol.witness.h);

    let u = evaluate_sum(&space, &sol.witness)?;
    let residual = f.sub(&u)?;
    println!("f - u          = {:?}", residual.values());

    let bolt = sol.dual_witness.expect("the grid has a closed bolt");
    println!("closed bolt    = {:?} (first link {:?})", bolt.points(), bolt.first_link());
    println!("r_l(f)         = {:.6}", bolt_functional(&bolt, &f)?);
    println!("r_l(u)         = {:.1e}", bolt_functional(&bolt, &u)?);
    Ok(())
}
