//! The layered bolt graph and the closed-bolt duality formula.
//!
//! Every point `x` appears twice, as `(x, Plus)` and `(x, Minus)`. Edges go
//! from `(x, Plus)` to `(y, Minus)` when `x != y` share an `s`-class and from
//! `(y, Minus)` to `(z, Plus)` when `y != z` share a `p`-class. Read from a
//! `Plus` node, a directed cycle is a closed bolt whose first link is an
//! `s`-link, and with node weights `+f(x)` / `-f(x)` its mean weight is the
//! bolt functional. The maximum mean cycle therefore equals the supremum of
//! `|r_l(f)|` over closed bolts, which on a finite space is the error of best
//! approximation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::bolt::{bolt_functional, validate_bolt, Bolt, Link};
use crate::error::{Error, Result};
use crate::space::{FiniteQuotientSpace, SampledFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    /// Even bolt positions (counted from zero), sign `+`.
    Plus,
    /// Odd bolt positions, sign `-`.
    Minus,
}

#[derive(Debug, Clone)]
pub struct BoltGraph<'a> {
    space: &'a FiniteQuotientSpace,
    adj: Vec<Vec<usize>>,
    weight: Vec<f64>,
}

impl<'a> BoltGraph<'a> {
    pub fn space(&self) -> &'a FiniteQuotientSpace {
        self.space
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn node_id(&self, point: usize, layer: Layer) -> usize {
        match layer {
            Layer::Plus => point,
            Layer::Minus => self.space.n() + point,
        }
    }

    /// `(point, layer)` of a node id.
    pub fn node(&self, id: usize) -> (usize, Layer) {
        let n = self.space.n();
        if id < n {
            (id, Layer::Plus)
        } else {
            (id - n, Layer::Minus)
        }
    }

    pub fn successors(&self, id: usize) -> &[usize] {
        &self.adj[id]
    }

    /// Weight carried by every edge leaving `id`.
    pub fn weight(&self, id: usize) -> f64 {
        self.weight[id]
    }
}

fn adjacency(space: &FiniteQuotientSpace) -> Vec<Vec<usize>> {
    let n = space.n();
    let mut adj = vec![Vec::new(); 2 * n];
    for class in space.s_members() {
        for &x in &class {
            adj[x].extend(class.iter().filter(|&&y| y != x).map(|&y| n + y));
        }
    }
    for class in space.p_members() {
        for &y in &class {
            adj[n + y].extend(class.iter().filter(|&&z| z != y));
        }
    }
    adj
}

pub fn build_graph<'a>(space: &'a FiniteQuotientSpace, f: &SampledFunction) -> Result<BoltGraph<'a>> {
    space.check_function(f)?;
    let weight = f
        .values()
        .iter()
        .copied()
        .chain(f.values().iter().map(|v| -v))
        .collect();
    Ok(BoltGraph {
        space,
        adj: adjacency(space),
        weight,
    })
}

/// Maximum mean cycle of a bolt graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DualResult {
    /// Maximum of the bolt functional over closed bolts; `0` when there is none.
    pub value: f64,
    /// A closed bolt attaining `value`, starting at a `Plus` node.
    pub witness: Option<Bolt>,
    pub no_cycle: bool,
}

/// Maximum mean cycle by Karp's dynamic program, run once per strongly
/// connected component.
pub fn max_mean_cycle(graph: &BoltGraph<'_>) -> DualResult {
    let mut best: Option<(f64, Bolt)> = None;
    for comp in strongly_connected_components(&graph.adj) {
        let Some(cycle) = karp_cycle(graph, &comp) else {
            continue;
        };
        let bolt = cycle_to_bolt(graph.space, &cycle);
        let value = bolt_functional(&bolt, &weights_as_function(graph))
            .expect("witness points lie in the space");
        if best.as_ref().map_or(true, |(v, _)| value > *v) {
            best = Some((value, bolt));
        }
    }
    match best {
        Some((value, bolt)) => DualResult {
            value,
            witness: Some(bolt),
            no_cycle: false,
        },
        None => DualResult {
            value: 0.0,
            witness: None,
            no_cycle: true,
        },
    }
}

fn weights_as_function(graph: &BoltGraph<'_>) -> SampledFunction {
    SampledFunction::new(graph.weight[..graph.space.n()].to_vec()).expect("finite weights")
}

/// Karp's algorithm on one component; returns a maximum mean cycle as node ids.
fn karp_cycle(graph: &BoltGraph<'_>, comp: &[usize]) -> Option<Vec<usize>> {
    let m = comp.len();
    // no self-loops, so singletons are acyclic
    if m < 2 {
        return None;
    }
    let mut local = vec![usize::MAX; graph.node_count()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let out: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| {
            graph.adj[v]
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect()
        })
        .collect();
    let w: Vec<f64> = comp.iter().map(|&v| graph.weight[v]).collect();

    // best[k * m + v]: heaviest walk of exactly k edges from node 0 to v; None if no such walk
    let mut best: Vec<Option<f64>> = vec![None; (m + 1) * m];
    let mut pred = vec![usize::MAX; (m + 1) * m];
    best[0] = Some(0.0);
    for k in 1..=m {
        let (prev, cur) = best.split_at_mut(k * m);
        let prev = &prev[(k - 1) * m..];
        let cur = &mut cur[..m];
        for u in 0..m {
            let Some(du) = prev[u] else { continue };
            let cand = du + w[u];
            for &v in &out[u] {
                if cur[v].map_or(true, |dv| cand > dv) {
                    cur[v] = Some(cand);
                    pred[k * m + v] = u;
                }
            }
        }
    }

    let mut target: Option<(usize, f64)> = None;
    for v in 0..m {
        let Some(dm) = best[m * m + v] else { continue };
        let worst = (0..m)
            .filter_map(|k| best[k * m + v].map(|dk| (dm - dk) / (m - k) as f64))
            .fold(f64::INFINITY, f64::min);
        if worst.is_finite() && target.map_or(true, |(_, t)| worst > t) {
            target = Some((v, worst));
        }
    }
    let (v, _) = target?;

    // walk of length m ending at v, reconstructed backwards
    let mut walk = vec![v; m + 1];
    for k in (1..=m).rev() {
        walk[k - 1] = pred[k * m + walk[k]];
    }
    let mut seen = vec![usize::MAX; m];
    for (pos, &x) in walk.iter().enumerate() {
        if seen[x] != usize::MAX {
            return Some(walk[seen[x]..pos].iter().map(|&l| comp[l]).collect());
        }
        seen[x] = pos;
    }
    unreachable!("a walk of m edges over m nodes repeats a node")
}

/// Converts a directed cycle of node ids into a closed bolt starting at a `Plus` node.
fn cycle_to_bolt(space: &FiniteQuotientSpace, cycle: &[usize]) -> Bolt {
    let n = space.n();
    let start = cycle.iter().position(|&id| id < n).expect("cycles alternate layers");
    let points: Vec<usize> = cycle[start..]
        .iter()
        .chain(&cycle[..start])
        .map(|&id| id % n)
        .collect();
    let bolt = validate_bolt(space, &points, true).expect("graph cycles are closed bolts");
    debug_assert_eq!(bolt.first_link(), Link::S);
    bolt
}

/// True iff the space carries at least one closed bolt.
pub fn has_closed_bolt(space: &FiniteQuotientSpace) -> bool {
    let adj = adjacency(space);
    find_cycle(&adj, &vec![true; adj.len()]).is_some()
}

/// Searches for a closed bolt along which `residual` alternates between
/// values `>= M - tol` and `<= -M + tol`, where `M` is its sup-norm.
///
/// On a finite space such a bolt exists (for small `tol`) exactly when the
/// residual comes from a best approximation.
pub fn find_extremal_bolt(
    space: &FiniteQuotientSpace,
    residual: &SampledFunction,
    tol: f64,
) -> Result<Option<Bolt>> {
    space.check_function(residual)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let m = residual.max_abs();
    if m == 0.0 {
        return Err(Error::ZeroResidual);
    }
    let n = space.n();
    let allowed: Vec<bool> = residual
        .values()
        .iter()
        .map(|&r| r >= m - tol)
        .chain(residual.values().iter().map(|&r| r <= -m + tol))
        .collect();
    let adj = adjacency(space);
    Ok(find_cycle(&adj, &allowed).map(|cycle| {
        debug_assert!(cycle.iter().any(|&id| id < n));
        cycle_to_bolt(space, &cycle)
    }))
}

/// All closed bolts of length at most `max_len`, one per rotation class.
///
/// Each class is represented by its lexicographically smallest rotation and
/// the result is sorted lexicographically. Exponential; guarded to
/// `n <= 12` and `max_len <= 10`.
pub fn enumerate_closed_bolts(space: &FiniteQuotientSpace, max_len: usize) -> Result<Vec<Bolt>> {
    if space.n() > 12 {
        return Err(Error::GuardExceeded(format!("space has {} > 12 points", space.n())));
    }
    if max_len > 10 {
        return Err(Error::GuardExceeded(format!("max_len {max_len} > 10")));
    }
    if max_len < 2 || max_len % 2 == 1 {
        return Err(Error::InvalidInput(format!("max_len must be a positive even number, got {max_len}")));
    }
    let s_members = space.s_members();
    let p_members = space.p_members();
    let classes = Classes {
        space,
        s: &s_members,
        p: &p_members,
    };
    let mut found = BTreeSet::new();
    let mut seq = Vec::with_capacity(max_len);
    for start in 0..space.n() {
        for first in [Link::S, Link::P] {
            seq.clear();
            seq.push(start);
            extend_closed(&classes, &mut seq, first, max_len, &mut found);
        }
    }
    Ok(found
        .into_iter()
        .map(|pts| validate_bolt(space, &pts, true).expect("enumerated sequences are closed bolts"))
        .collect())
}

struct Classes<'a> {
    space: &'a FiniteQuotientSpace,
    s: &'a [Vec<usize>],
    p: &'a [Vec<usize>],
}

impl Classes<'_> {
    fn neighbours(&self, x: usize, link: Link) -> &[usize] {
        match link {
            Link::S => &self.s[self.space.s_class()[x]],
            Link::P => &self.p[self.space.p_class()[x]],
        }
    }
}

fn extend_closed(
    classes: &Classes,
    seq: &mut Vec<usize>,
    link: Link,
    max_len: usize,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let space = classes.space;
    let start = seq[0];
    let last = *seq.last().expect("nonempty");
    for &next in classes.neighbours(last, link) {
        if next < start || next == last {
            continue;
        }
        seq.push(next);
        // after an even number of points the wraparound link has the type `link` would take next
        if seq.len() % 2 == 0 && link.other().holds(space, next, start) && is_min_rotation(seq) {
            found.insert(seq.clone());
        }
        if seq.len() < max_len {
            extend_closed(classes, seq, link.other(), max_len, found);
        }
        seq.pop();
    }
}

fn is_min_rotation(seq: &[usize]) -> bool {
    (1..seq.len()).all(|k| seq[k..].iter().chain(&seq[..k]).cmp(seq.iter()) != Ordering::Less)
}

/// Tarjan's algorithm, iterative.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));
        while let Some(&(v, ei)) = call.last() {
            if ei < adj[v].len() {
                call.last_mut().expect("nonempty").1 += 1;
                let w = adj[v][ei];
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Depth-first search for any directed cycle among allowed nodes.
fn find_cycle(adj: &[Vec<usize>], allowed: &[bool]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let n = adj.len();
    let mut color = vec![Color::White; n];
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != Color::White || !allowed[root] {
            continue;
        }
        color[root] = Color::Gray;
        call.push((root, 0));
        while let Some(&(v, ei)) = call.last() {
            if ei < adj[v].len() {
                call.last_mut().expect("nonempty").1 += 1;
                let w = adj[v][ei];
                if !allowed[w] {
                    continue;
                }
                match color[w] {
                    Color::White => {
                        color[w] = Color::Gray;
                        call.push((w, 0));
                    }
                    Color::Gray => {
                        let from = call.iter().position(|&(x, _)| x == w).expect("gray nodes are on the stack");
                        return Some(call[from..].iter().map(|&(x, _)| x).collect());
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                call.pop();
            }
        }
    }
    None
}
