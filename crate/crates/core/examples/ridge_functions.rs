//! Approximating the Runge function on scattered points by a sum of two
//! ridge functions g(x + y) + h(x - y).
//!
//! cargo run --example ridge_functions -- [points] [eps]

use bolt_approx::{build_ridge, has_closed_bolt, solve_lp, SampledFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bolt_approx::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(60);
    let eps: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.05);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points: Vec<Vec<f64>> = (0..count)
        .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
        .collect();
    let runge = |x: &[f64]| 1.0 / (1.0 + 25.0 * (x[0] * x[0] + x[1] * x[1]));
    let f = SampledFunction::new(points.iter().map(|x| runge(x)).collect())?;

    let space = build_ridge(&points, &[1.0, 1.0], &[1.0, -1.0], eps)?;
    println!("{} points, {} classes along x+y, {} along x-y", space.n(), space.n_s(), space.n_p());
    if !has_closed_bolt(&space) {
        println!("no closed bolt: every function on these points is a sum of ridge functions");
    }
    let sol = solve_lp(&space, &f)?;
    println!("E(f) = {:.6}  (dual {:.6}, {} pivots)", sol.error, sol.dual_value, sol.iterations);
    if let Some(b) = &sol.dual_witness {
        println!("extremal closed bolt of length {}: {:?}", b.len(), b.points());
    }
    Ok(())
}
