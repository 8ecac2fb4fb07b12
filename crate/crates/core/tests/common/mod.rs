//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use bolt_approx::{
    build_explicit, validate_bolt, Bolt, FiniteQuotientSpace, Link, SampledFunction, SumElement,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random labelings on `n` points with at least one class of two or more points.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FiniteQuotientSpace {
    assert!(n >= 2);
    loop {
        let k_s = rng.gen_range(1..=n) as i64;
        let k_p = rng.gen_range(1..=n) as i64;
        let s: Vec<i64> = (0..n).map(|_| rng.gen_range(0..k_s)).collect();
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(0..k_p)).collect();
        let space = build_explicit(&s, &p).unwrap();
        if space.n_s() < n || space.n_p() < n {
            return space;
        }
    }
}

pub fn random_function<R: Rng>(rng: &mut R, n: usize) -> SampledFunction {
    SampledFunction::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap()
}

pub fn random_sum<R: Rng>(rng: &mut R, space: &FiniteQuotientSpace) -> SumElement {
    SumElement::new(
        (0..space.n_s()).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
        (0..space.n_p()).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
    )
    .unwrap()
}

/// Random open bolt grown link by link; `None` if the start point has no partner.
pub fn random_open_bolt<R: Rng>(rng: &mut R, space: &FiniteQuotientSpace, max_len: usize) -> Option<Bolt> {
    let start = rng.gen_range(0..space.n());
    let mut link = if rng.gen_bool(0.5) { Link::S } else { Link::P };
    let target = rng.gen_range(2..=max_len.max(2));
    let mut points = vec![start];
    while points.len() < target {
        let last = *points.last().unwrap();
        let options: Vec<usize> = (0..space.n()).filter(|&y| link.holds(space, last, y)).collect();
        let Some(&next) = options.choose(rng) else { break };
        points.push(next);
        link = link.other();
    }
    (points.len() >= 2).then(|| validate_bolt(space, &points, false).unwrap())
}
