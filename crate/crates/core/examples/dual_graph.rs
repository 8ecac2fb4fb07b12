//! The dual side on its own: build the bolt graph of a random instance and
//! read E(f) off its maximum mean cycle, then compare with brute force.
//!
//! cargo run --example dual_graph -- [seed]

use bolt_approx::{
    bolt_functional, build_explicit, build_graph, enumerate_closed_bolts, max_mean_cycle, SampledFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bolt_approx::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 8;
    let s: Vec<i64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let p: Vec<i64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let space = build_explicit(&s, &p)?;
    let f = SampledFunction::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
    println!("s = {:?}\np = {:?}", space.s_class(), space.p_class());

    let graph = build_graph(&space, &f)?;
    println!("bolt graph: {} nodes, {} edges", 2 * space.n(), graph.edge_count());
    let dual = max_mean_cycle(&graph);
    match &dual.witness {
        Some(b) => println!("max mean cycle {:.9} on bolt {:?}", dual.value, b.points()),
        None => println!("no closed bolt, E(f) = 0"),
    }

    let bolts = enumerate_closed_bolts(&space, 8)?;
    // first maximum, so the shortest bolt wins among repetitions of a cycle
    let mut best = None;
    for b in &bolts {
        let value = bolt_functional(b, &f)?.abs();
        if best.map_or(true, |(v, _)| value > v) {
            best = Some((value, b));
        }
    }
    println!("{} closed bolts of length <= 8 (up to rotation)", bolts.len());
    if let Some((value, b)) = best {
        println!("best by enumeration {:.9} on bolt {:?}", value, b.points());
    }
    Ok(())
}
