//! Finite quotient spaces.
//!
//! A [`FiniteQuotientSpace`] is a finite point set `0..n` carrying two
//! labelings `s` and `p`. The first algebra consists of the functions that
//! are constant on every `s`-class (`g(s(x))`), the second of those constant
//! on every `p`-class (`h(p(x))`). Labels are always dense: every class id in
//! `0..n_s` (resp. `0..n_p`) is inhabited.

use std::collections::BTreeMap;
use std::ops::Index;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteQuotientSpace {
    s_class: Vec<usize>,
    p_class: Vec<usize>,
    n_s: usize,
    n_p: usize,
    coords: Option<Vec<Vec<f64>>>,
}

impl FiniteQuotientSpace {
    /// Number of points.
    pub fn n(&self) -> usize {
        self.s_class.len()
    }

    pub fn n_s(&self) -> usize {
        self.n_s
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn s_class(&self) -> &[usize] {
        &self.s_class
    }

    pub fn p_class(&self) -> &[usize] {
        &self.p_class
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    /// Attaches point coordinates (one tuple per point).
    pub fn with_coords(mut self, coords: Vec<Vec<f64>>) -> Result<Self> {
        if coords.len() != self.n() {
            return Err(Error::ShapeMismatch {
                what: "coords",
                expected: self.n(),
                found: coords.len(),
            });
        }
        if coords.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Point indices of every `s`-class, in increasing order.
    pub fn s_members(&self) -> Vec<Vec<usize>> {
        members(&self.s_class, self.n_s)
    }

    /// Point indices of every `p`-class, in increasing order.
    pub fn p_members(&self) -> Vec<Vec<usize>> {
        members(&self.p_class, self.n_p)
    }

    /// Returns `(n_s, n_p)` when every pair of an `s`-class and a `p`-class
    /// meets in exactly one point, i.e. the space is a product grid.
    pub fn product_shape(&self) -> Option<(usize, usize)> {
        if self.n() != self.n_s * self.n_p {
            return None;
        }
        let mut seen = vec![false; self.n()];
        for (&s, &p) in self.s_class.iter().zip(&self.p_class) {
            let cell = s * self.n_p + p;
            if seen[cell] {
                return None;
            }
            seen[cell] = true;
        }
        Some((self.n_s, self.n_p))
    }

    /// Checks that `f` is sampled on this space.
    pub fn check_function(&self, f: &SampledFunction) -> Result<()> {
        if f.len() != self.n() {
            return Err(Error::ShapeMismatch {
                what: "function values",
                expected: self.n(),
                found: f.len(),
            });
        }
        Ok(())
    }

    /// Checks that `u` has one `g` value per `s`-class and one `h` value per `p`-class.
    pub fn check_sum(&self, u: &SumElement) -> Result<()> {
        if u.g.len() != self.n_s {
            return Err(Error::ShapeMismatch {
                what: "g",
                expected: self.n_s,
                found: u.g.len(),
            });
        }
        if u.h.len() != self.n_p {
            return Err(Error::ShapeMismatch {
                what: "h",
                expected: self.n_p,
                found: u.h.len(),
            });
        }
        Ok(())
    }
}

fn members(labels: &[usize], classes: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); classes];
    for (i, &c) in labels.iter().enumerate() {
        out[c].push(i);
    }
    out
}

/// Real values at every point of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction(Vec<f64>);

impl SampledFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite value at point {i}")));
        }
        Ok(Self(values))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sup-norm `max_i |f(i)|` (zero for an empty function).
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &SampledFunction) -> Result<SampledFunction> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch {
                what: "function values",
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Index<usize> for SampledFunction {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// An element `g∘s + h∘p` of the sum of the two algebras.
#[derive(Debug, Clone, PartialEq)]
pub struct SumElement {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
}

impl SumElement {
    pub fn new(g: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        if g.iter().chain(&h).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry in sum element".into()));
        }
        Ok(Self { g, h })
    }

    pub fn zero(space: &FiniteQuotientSpace) -> Self {
        Self {
            g: vec![0.0; space.n_s()],
            h: vec![0.0; space.n_p()],
        }
    }

    /// `(g + c, h - c)`: the same function, another gauge.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            g: self.g.iter().map(|v| v + c).collect(),
            h: self.h.iter().map(|v| v - c).collect(),
        }
    }

    /// Gauge with `h[0] = 0`.
    pub fn anchored(&self) -> Self {
        match self.h.first() {
            Some(&c) => self.shifted(c),
            None => self.clone(),
        }
    }
}

/// Product grid with `nx` rows and `ny` columns.
///
/// Point `i * ny + j` is cell `(i, j)`; its `s`-class is the row `i` and its
/// `p`-class the column `j`. Coordinates are spaced linearly on `[-1, 1]` along
/// each axis with at least two cells, and are `0` along a single-cell axis.
pub fn build_grid(nx: usize, ny: usize) -> Result<FiniteQuotientSpace> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidInput(format!(
            "grid dimensions must be positive, got {nx}x{ny}"
        )));
    }
    let axis = |k: usize, len: usize| {
        if len >= 2 {
            -1.0 + 2.0 * k as f64 / (len - 1) as f64
        } else {
            0.0
        }
    };
    let n = nx * ny;
    let mut s_class = Vec::with_capacity(n);
    let mut p_class = Vec::with_capacity(n);
    let mut coords = Vec::with_capacity(n);
    for i in 0..nx {
        for j in 0..ny {
            s_class.push(i);
            p_class.push(j);
            coords.push(vec![axis(i, nx), axis(j, ny)]);
        }
    }
    Ok(FiniteQuotientSpace {
        s_class,
        p_class,
        n_s: nx,
        n_p: ny,
        coords: Some(coords),
    })
}

/// Space for the ridge algebras `g(a·x)` and `h(b·x)` on a finite point set.
///
/// Points are grouped by chaining: after sorting the inner products, two
/// neighbours fall into the same class iff they differ by at most
/// `eps_class`. Classes are numbered in increasing order of the inner product.
pub fn build_ridge(
    points: &[Vec<f64>],
    a: &[f64],
    b: &[f64],
    eps_class: f64,
) -> Result<FiniteQuotientSpace> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("no points".into()));
    };
    let d = first.len();
    if d == 0 {
        return Err(Error::InvalidInput("points have dimension 0".into()));
    }
    if let Some(i) = points.iter().position(|x| x.len() != d) {
        return Err(Error::InvalidInput(format!(
            "point {i} has dimension {}, expected {d}",
            points[i].len()
        )));
    }
    for (name, dir) in [("a", a), ("b", b)] {
        if dir.len() != d {
            return Err(Error::InvalidInput(format!(
                "direction {name} has dimension {}, expected {d}",
                dir.len()
            )));
        }
        if dir.iter().all(|&v| v == 0.0) {
            return Err(Error::InvalidInput(format!("direction {name} is zero")));
        }
    }
    if !(eps_class > 0.0) {
        return Err(Error::InvalidInput("eps_class must be positive".into()));
    }
    if points.iter().flatten().chain(a).chain(b).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }

    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(u, v)| u * v).sum::<f64>();
    let sa: Vec<f64> = points.iter().map(|x| dot(x, a)).collect();
    let sb: Vec<f64> = points.iter().map(|x| dot(x, b)).collect();
    let (s_class, n_s) = chain_classes(&sa, eps_class);
    let (p_class, n_p) = chain_classes(&sb, eps_class);
    Ok(FiniteQuotientSpace {
        s_class,
        p_class,
        n_s,
        n_p,
        coords: Some(points.to_vec()),
    })
}

/// Single-linkage grouping of reals along the line.
fn chain_classes(values: &[f64], eps: f64) -> (Vec<usize>, usize) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let mut labels = vec![0; values.len()];
    let mut class = 0;
    for w in 0..order.len() {
        if w > 0 && values[order[w]] - values[order[w - 1]] > eps {
            class += 1;
        }
        labels[order[w]] = class;
    }
    (labels, class + 1)
}

/// Space from arbitrary integer labelings, relabeled densely.
///
/// Relabeling preserves label order: the smallest label becomes class 0.
pub fn build_explicit(s: &[i64], p: &[i64]) -> Result<FiniteQuotientSpace> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty labeling".into()));
    }
    if s.len() != p.len() {
        return Err(Error::ShapeMismatch {
            what: "p labels",
            expected: s.len(),
            found: p.len(),
        });
    }
    let (s_class, n_s) = dense_labels(s, "s")?;
    let (p_class, n_p) = dense_labels(p, "p")?;
    Ok(FiniteQuotientSpace {
        s_class,
        p_class,
        n_s,
        n_p,
        coords: None,
    })
}

fn dense_labels(labels: &[i64], name: &str) -> Result<(Vec<usize>, usize)> {
    if let Some(i) = labels.iter().position(|&l| l < 0) {
        return Err(Error::InvalidInput(format!(
            "negative {name} label {} at point {i}",
            labels[i]
        )));
    }
    let mut ids = BTreeMap::new();
    for &l in labels {
        ids.insert(l, 0);
    }
    for (k, v) in ids.values_mut().enumerate() {
        *v = k;
    }
    Ok((labels.iter().map(|l| ids[l]).collect(), ids.len()))
}

/// Pointwise `u(x) = g(s(x)) + h(p(x))`.
pub fn evaluate_sum(space: &FiniteQuotientSpace, u: &SumElement) -> Result<SampledFunction> {
    space.check_sum(u)?;
    Ok(SampledFunction(
        space
            .s_class
            .iter()
            .zip(&space.p_class)
            .map(|(&s, &p)| u.g[s] + u.h[p])
            .collect(),
    ))
}
