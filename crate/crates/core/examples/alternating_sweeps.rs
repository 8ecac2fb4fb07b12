//! Alternating midrange sweeps on product grids against the linear program.
//!
//! cargo run --example alternating_sweeps -- [nx] [ny]

use bolt_approx::solver::ds_norm_history;
use bolt_approx::{build_grid, solve_ds, solve_lp, SampledFunction};

fn main() -> bolt_approx::Result<()> {
    let mut args = std::env::args().skip(1);
    let nx: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let ny: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let space = build_grid(nx, ny)?;
    let coords = space.coords().expect("grids carry coordinates");

    let functions: [(&str, fn(f64, f64) -> f64); 3] = [
        ("x y", |x, y| x * y),
        ("runge", |x, y| 1.0 / (1.0 + 25.0 * (x * x + y * y))),
        ("exp(x y)", |x, y| (x * y).exp()),
    ];
    for (name, g) in functions {
        let f = SampledFunction::new(coords.iter().map(|c| g(c[0], c[1])).collect())?;
        let ds = solve_ds(&space, &f, 1e-12, 100_000)?;
        let lp = solve_lp(&space, &f)?;
        let hist = ds_norm_history(&space, &f, 4)?;
        println!(
            "{name:9} ds {:.8} ({} sweeps)  lp {:.8}  first norms {:.4?}",
            ds.error, ds.iterations, lp.error, hist
        );
    }
    Ok(())
}
