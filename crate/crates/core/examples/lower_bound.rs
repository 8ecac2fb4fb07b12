//! Lower bounds without solving: any closed bolt along which f - u alternates
//! in sign bounds E(f) from below by the smallest |f - u| on the bolt.

use bolt_approx::{build_grid, dvp_bound, solve_lp, validate_bolt, SampledFunction, SumElement};

fn main() -> bolt_approx::Result<()> {
    let space = build_grid(3, 3)?;
    let f = SampledFunction::new(vec![0.3, -0.7, 0.1, 0.9, 0.2, -0.4, -0.5, 0.8, 0.6])?;

    // a rectangle in the grid, guessed by hand
    let bolt = validate_bolt(&space, &[1, 7, 6, 0], true)?;
    for (label, u) in [
        ("u = 0", SumElement::zero(&space)),
        ("u = g[s]", SumElement::new(vec![-0.1, 0.2, 0.3], vec![0.0, 0.0, 0.0])?),
    ] {
        match dvp_bound(&space, &f, &u, &bolt) {
            Ok(b) => println!("{label:14} bound {b:.4}"),
            Err(e) => println!("{label:14} no bound: {e}"),
        }
    }
    println!("{:14} E(f)  {:.4}", "", solve_lp(&space, &f)?.error);
    Ok(())
}
