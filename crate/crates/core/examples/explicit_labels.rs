//! Spaces given directly by two labelings. Labels may be sparse; they are
//! relabeled densely in sorted order.

use bolt_approx::{build_explicit, has_closed_bolt, solve_lp, SampledFunction};

fn main() -> bolt_approx::Result<()> {
    // two points sharing both classes: a closed bolt of length 2
    let space = build_explicit(&[10, 10, 40], &[7, 7, 3])?;
    println!("s = {:?}, p = {:?}", space.s_class(), space.p_class());
    let f = SampledFunction::new(vec![1.0, -1.0, 0.0])?;
    let sol = solve_lp(&space, &f)?;
    println!("E(f) = {}  bolt {:?}", sol.error, sol.dual_witness.map(|b| b.points().to_vec()));

    // a hexagon: three s-pairs and three p-pairs closing into one cycle
    let space = build_explicit(&[0, 0, 1, 1, 2, 2], &[0, 1, 1, 2, 2, 0])?;
    let f = SampledFunction::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0])?;
    let sol = solve_lp(&space, &f)?;
    println!("hexagon: E(f) = {:.6} (expected 1/6)", sol.error);

    // a path has no closed bolt, so every f is an exact sum
    let space = build_explicit(&[0, 0, 1, 1], &[0, 1, 1, 2])?;
    let f = SampledFunction::new(vec![3.0, -2.0, 5.0, 0.5])?;
    println!("path: closed bolt {}, E(f) = {:.1e}", has_closed_bolt(&space), solve_lp(&space, &f)?.error);
    Ok(())
}
