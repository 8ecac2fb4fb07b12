//! Deciding optimality of a candidate u: it is best exactly when a closed
//! bolt runs through points where f - u attains +E and -E alternately.

use bolt_approx::{build_grid, evaluate_sum, find_extremal_bolt, solve_lp, SampledFunction, SumElement};

fn main() -> bolt_approx::Result<()> {
    let space = build_grid(4, 4)?;
    let f = SampledFunction::new((0..16).map(|i| ((i * 7 % 5) as f64 - 2.0) / 2.0).collect())?;
    let best = solve_lp(&space, &f)?.witness;

    let mut nudged = best.clone();
    nudged.g[1] += 0.05;
    let candidates = [("zero", SumElement::zero(&space)), ("LP optimum", best), ("nudged optimum", nudged)];
    for (label, u) in candidates {
        let residual = f.sub(&evaluate_sum(&space, &u)?)?;
        let verdict = match find_extremal_bolt(&space, &residual, 1e-9)? {
            Some(b) => format!("best, extremal bolt {:?}", b.points()),
            None => "not best".to_string(),
        };
        println!("{label:15} |f - u| = {:.4}  {verdict}", residual.max_abs());
    }
    Ok(())
}
