//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see them.

mod common;

use std::time::{Duration, Instant};

use bolt_approx::{
    bolt_functional, build_explicit, build_graph, build_grid, dvp_bound, dvp_bound_with_tol, enumerate_closed_bolts,
    evaluate_sum, find_extremal_bolt, has_closed_bolt, max_mean_cycle, solve_ds, solve_lp,
    validate_bolt, Bolt, FiniteQuotientSpace, SampledFunction, SumElement,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, ok: bool, detail: String, elapsed: Duration) {
    println!(
        "[{}] criterion {id}: {name} ({detail}; {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_1_duality_equality() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0_f64;
    let instances = 200;
    for _ in 0..instances {
        let n = rng.gen_range(2..=40);
        let space = common::random_space(&mut rng, n);
        let f = common::random_function(&mut rng, n);
        let sol = solve_lp(&space, &f).unwrap();
        let dual = max_mean_cycle(&build_graph(&space, &f).unwrap());
        worst = worst.max((sol.error - dual.value).abs());
    }
    let elapsed = started.elapsed();
    let ok = worst <= 1e-7 && elapsed < Duration::from_secs(10);
    report(1, "duality equality", ok, format!("{instances} instances, max gap {worst:.3e}"), elapsed);
    assert!(worst <= 1e-7, "max |E - dual| = {worst}");
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let instances = 100;
    let (mut by_enumeration, mut by_lp, mut failures) = (0, 0, 0);
    for _ in 0..instances {
        let n = rng.gen_range(2..=8);
        let space = common::random_space(&mut rng, n);
        let f = common::random_function(&mut rng, n);
        let dual = max_mean_cycle(&build_graph(&space, &f).unwrap());
        let enumerated = enumerate_closed_bolts(&space, 8)
            .unwrap()
            .iter()
            .map(|b| bolt_functional(b, &f).unwrap().abs())
            .fold(0.0_f64, f64::max);
        if (dual.value - enumerated).abs() <= 1e-9 {
            by_enumeration += 1;
        } else if (dual.value - solve_lp(&space, &f).unwrap().error).abs() <= 1e-9 {
            by_lp += 1;
        } else {
            failures += 1;
        }
    }
    let elapsed = started.elapsed();
    let ok = failures == 0 && elapsed < Duration::from_secs(5);
    report(
        2,
        "oracle equivalence",
        ok,
        format!("{by_enumeration} matched enumeration, {by_lp} matched LP, {failures} mismatches"),
        elapsed,
    );
    assert_eq!(failures, 0);
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
}

/// `f` such that `f - u` alternates along `bolt`: points met at both parities get residual 0.
fn alternating_instance(
    rng: &mut ChaCha8Rng,
    space: &FiniteQuotientSpace,
    bolt: &Bolt,
    u: &SumElement,
) -> SampledFunction {
    let uf = evaluate_sum(space, u).unwrap();
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut parity: Vec<Option<usize>> = vec![None; space.n()];
    let mut mixed = vec![false; space.n()];
    for (i, &x) in bolt.points().iter().enumerate() {
        match parity[x] {
            Some(q) if q != i % 2 => mixed[x] = true,
            _ => parity[x] = Some(i % 2),
        }
    }
    let values = (0..space.n())
        .map(|x| match parity[x] {
            _ if mixed[x] => uf[x],
            Some(q) => {
                let s = if q == 0 { sign } else { -sign };
                uf[x] + s * rng.gen_range(0.0..1.0)
            }
            None => rng.gen_range(-2.0..2.0),
        })
        .collect();
    SampledFunction::new(values).unwrap()
}

#[test]
fn criterion_3_dvp_soundness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut pairs, mut violations, mut worst_eq) = (0, 0, 0.0_f64);
    let mut equality_pairs = 0;
    while pairs < 500 {
        let n = rng.gen_range(2..=8);
        let space = common::random_space(&mut rng, n);
        let bolts = enumerate_closed_bolts(&space, 8).unwrap();
        let Some(bolt) = bolts.choose(&mut rng) else { continue };
        let u = common::random_sum(&mut rng, &space);
        let f = alternating_instance(&mut rng, &space, bolt, &u);
        let bound = dvp_bound(&space, &f, &u, bolt).unwrap();
        let sol = solve_lp(&space, &f).unwrap();
        pairs += 1;
        if bound > sol.error + 1e-9 {
            violations += 1;
        }
        // optimal pair on the same instance
        if let Some(w) = &sol.dual_witness {
            let b = dvp_bound_with_tol(&space, &f, &sol.witness, w, 1e-9).unwrap();
            pairs += 1;
            equality_pairs += 1;
            if b > sol.error + 1e-9 {
                violations += 1;
            }
            worst_eq = worst_eq.max((b - sol.error).abs());
        }
    }
    let elapsed = started.elapsed();
    let ok = violations == 0 && worst_eq <= 1e-7;
    report(
        3,
        "dVP soundness",
        ok,
        format!("{pairs} pairs, {violations} violations, {equality_pairs} optimal pairs with max gap {worst_eq:.3e}"),
        elapsed,
    );
    assert_eq!(violations, 0);
    assert!(worst_eq <= 1e-7);
}

#[test]
fn criterion_4_annihilation() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut closed_pairs, mut open_pairs) = (0, 0);
    let (mut worst_closed, mut worst_open_excess) = (0.0_f64, f64::NEG_INFINITY);
    while closed_pairs < 500 || open_pairs < 500 {
        let n = rng.gen_range(2..=12);
        let space = common::random_space(&mut rng, n);
        let u = common::random_sum(&mut rng, &space);
        let f = common::random_function(&mut rng, n);
        if let Some(bolt) = max_mean_cycle(&build_graph(&space, &f).unwrap()).witness {
            let uf = evaluate_sum(&space, &u).unwrap();
            worst_closed = worst_closed.max(bolt_functional(&bolt, &uf).unwrap().abs());
            closed_pairs += 1;
        }
        if let Some(bolt) = common::random_open_bolt(&mut rng, &space, 20) {
            let parts = [
                SumElement::new(u.g.clone(), vec![0.0; space.n_p()]).unwrap(),
                SumElement::new(vec![0.0; space.n_s()], u.h.clone()).unwrap(),
            ];
            for part in &parts {
                let fv = evaluate_sum(&space, part).unwrap();
                let r = bolt_functional(&bolt, &fv).unwrap().abs();
                let limit = 2.0 / bolt.len() as f64 * fv.max_abs();
                worst_open_excess = worst_open_excess.max(r - limit);
            }
            open_pairs += 1;
        }
    }
    let elapsed = started.elapsed();
    let ok = worst_closed <= 1e-12 && worst_open_excess <= 1e-12;
    report(
        4,
        "annihilation and near-annihilation",
        ok,
        format!(
            "{closed_pairs} closed pairs max |r| {worst_closed:.3e}; {open_pairs} open pairs max excess {worst_open_excess:.3e}"
        ),
        elapsed,
    );
    assert!(worst_closed <= 1e-12);
    assert!(worst_open_excess <= 1e-12);
}

#[test]
fn criterion_5_chebyshev_criterion() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut instances, mut missed, mut false_hits) = (0, 0, 0);
    while instances < 100 {
        let n = rng.gen_range(2..=20);
        let space = common::random_space(&mut rng, n);
        if !has_closed_bolt(&space) {
            continue;
        }
        let f = common::random_function(&mut rng, n);
        let sol = solve_lp(&space, &f).unwrap();
        if sol.error <= 1e-9 {
            continue;
        }
        instances += 1;
        let resid = f.sub(&evaluate_sum(&space, &sol.witness).unwrap()).unwrap();
        if find_extremal_bolt(&space, &resid, 1e-7).unwrap().is_none() {
            missed += 1;
        }

        // push one extremal point further out by moving its s-class value
        let i = (0..n)
            .max_by(|&a, &b| resid[a].abs().total_cmp(&resid[b].abs()))
            .unwrap();
        let mut u = sol.witness.clone();
        u.g[space.s_class()[i]] -= 0.01 * resid[i].signum();
        let resid = f.sub(&evaluate_sum(&space, &u).unwrap()).unwrap();
        assert!(resid.max_abs() >= sol.error + 1e-3);
        if find_extremal_bolt(&space, &resid, 1e-7).unwrap().is_some() {
            false_hits += 1;
        }
    }
    let elapsed = started.elapsed();
    let ok = missed == 0 && false_hits == 0;
    report(
        5,
        "Chebyshev criterion",
        ok,
        format!("{instances} instances, {missed} optimal witnesses without extremal bolt, {false_hits} perturbed witnesses with one"),
        elapsed,
    );
    assert_eq!(missed, 0);
    assert_eq!(false_hits, 0);
}

#[test]
fn criterion_6_canonical_instance() {
    let started = Instant::now();
    let space = build_grid(2, 2).unwrap();
    let f = SampledFunction::new(vec![0.0, 0.0, 0.0, 1.0]).unwrap();
    let sol = solve_lp(&space, &f).unwrap();
    let dual = max_mean_cycle(&build_graph(&space, &f).unwrap());
    let square = validate_bolt(&space, &[0, 1, 3, 2], true).unwrap();
    let bound = dvp_bound(&space, &f, &sol.witness, &square).unwrap();
    let ok = [sol.error, dual.value, bound]
        .iter()
        .all(|v| (v - 0.25).abs() <= 1e-9);
    report(
        6,
        "canonical 2x2 instance",
        ok,
        format!("error {}, dual {}, bound {}", sol.error, dual.value, bound),
        started.elapsed(),
    );
    assert!(ok);
}

#[test]
fn criterion_7_product_corner_case() {
    let started = Instant::now();
    let space = build_grid(20, 20).unwrap();
    let f = SampledFunction::new(space.coords().unwrap().iter().map(|c| c[0] * c[1]).collect()).unwrap();
    let lp = solve_lp(&space, &f).unwrap();
    let ds = solve_ds(&space, &f, 1e-9, 10_000).unwrap();
    let elapsed = started.elapsed();
    let ok = (lp.error - 1.0).abs() <= 1e-6
        && (ds.error - lp.error).abs() <= 1e-4
        && ds.iterations <= 10_000
        && elapsed < Duration::from_secs(5);
    report(
        7,
        "20x20 grid, f = xy",
        ok,
        format!("lp {}, ds {} after {} sweeps", lp.error, ds.error, ds.iterations),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_8_density_without_closed_bolts() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst, mut with_bolt) = (0.0_f64, 0);
    let instances = 50;
    for k in 0..instances {
        let n = rng.gen_range(1..=30);
        let mut singletons: Vec<i64> = (0..n as i64).collect();
        singletons.shuffle(&mut rng);
        let k_other = rng.gen_range(1..=n) as i64;
        let other: Vec<i64> = (0..n).map(|_| rng.gen_range(0..k_other)).collect();
        let space = if k % 2 == 0 {
            build_explicit(&singletons, &other).unwrap()
        } else {
            build_explicit(&other, &singletons).unwrap()
        };
        if has_closed_bolt(&space) {
            with_bolt += 1;
        }
        let f = common::random_function(&mut rng, n);
        worst = worst.max(solve_lp(&space, &f).unwrap().error);
    }
    let ok = with_bolt == 0 && worst <= 1e-9;
    report(
        8,
        "density without closed bolts",
        ok,
        format!("{instances} spaces, {with_bolt} with a closed bolt, max error {worst:.3e}"),
        started.elapsed(),
    );
    assert_eq!(with_bolt, 0);
    assert!(worst <= 1e-9);
}
