//! Primal computation of the approximation error and a best approximation.

use crate::bolt::Bolt;
use crate::boltgraph::{build_graph, max_mean_cycle, DualResult};
use crate::error::{Error, Result};
use crate::simplex::{maximize, DenseMatrix};
use crate::space::{evaluate_sum, FiniteQuotientSpace, SampledFunction, SumElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Chebyshev linear program.
    Lp,
    /// Alternating midrange sweeps (product spaces only).
    Ds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSolution {
    /// `max_i |f(i) - u(i)|` for the witness `u`.
    pub error: f64,
    /// Best approximation, anchored so that `h[0] = 0`.
    pub witness: SumElement,
    /// Maximum mean cycle value on the same instance.
    pub dual_value: f64,
    /// Closed bolt attaining `dual_value`, if any closed bolt exists.
    pub dual_witness: Option<Bolt>,
    pub method: Method,
    /// Simplex pivots or completed sweeps.
    pub iterations: usize,
}

fn residual_norm(space: &FiniteQuotientSpace, f: &SampledFunction, u: &SumElement) -> f64 {
    let uf = evaluate_sum(space, u).expect("witness shaped for the space");
    f.sub(&uf).expect("same length").max_abs()
}

fn dual(space: &FiniteQuotientSpace, f: &SampledFunction) -> Result<DualResult> {
    Ok(max_mean_cycle(&build_graph(space, f)?))
}

/// Best approximation by the Chebyshev linear program
///
/// ```text
/// minimize t  subject to  -t <= f(i) - g[s(i)] - h[p(i)] <= t,  h[0] = 0.
/// ```
///
/// With `M = max|f|` and `t = M - d` the program becomes
/// `maximize d` over `A x <= b` with `b >= 0`, whose slack basis is feasible;
/// free `g`, `h` are split into nonnegative parts.
pub fn solve_lp(space: &FiniteQuotientSpace, f: &SampledFunction) -> Result<ApproxSolution> {
    space.check_function(f)?;
    let (n, n_s, n_p) = (space.n(), space.n_s(), space.n_p());
    let big = f.max_abs();

    // columns: d | g+ | g- | h+ (classes 1..) | h- (classes 1..)
    let free_h = n_p - 1;
    let g_pos = 1;
    let g_neg = g_pos + n_s;
    let h_pos = g_neg + n_s;
    let h_neg = h_pos + free_h;
    let cols = h_neg + free_h;

    let mut a = DenseMatrix::zeros(2 * n, cols);
    let mut b = vec![0.0; 2 * n];
    for i in 0..n {
        let (s, p) = (space.s_class()[i], space.p_class()[i]);
        // upper: d - u(i) <= M - f(i); lower: d + u(i) <= M + f(i)
        for (row, sign, rhs) in [(2 * i, -1.0, big - f[i]), (2 * i + 1, 1.0, big + f[i])] {
            a.set(row, 0, 1.0);
            a.set(row, g_pos + s, sign);
            a.set(row, g_neg + s, -sign);
            if p > 0 {
                a.set(row, h_pos + p - 1, sign);
                a.set(row, h_neg + p - 1, -sign);
            }
            b[row] = rhs.max(0.0);
        }
    }
    let mut c = vec![0.0; cols];
    c[0] = 1.0;

    let sol = maximize(&c, &a, &b)?;
    let g = (0..n_s).map(|k| sol.x[g_pos + k] - sol.x[g_neg + k]).collect();
    let h = std::iter::once(0.0)
        .chain((0..free_h).map(|k| sol.x[h_pos + k] - sol.x[h_neg + k]))
        .collect();
    let witness = SumElement::new(g, h)?;
    let error = residual_norm(space, f, &witness);
    let d = dual(space, f)?;
    Ok(ApproxSolution {
        error,
        witness,
        dual_value: d.value,
        dual_witness: d.witness,
        method: Method::Lp,
        iterations: sol.pivots,
    })
}

/// Diliberto–Straus alternating sweeps on a product space.
///
/// Each sweep subtracts the midrange of the residual on every `s`-class,
/// then on every `p`-class. Iteration stops once a sweep lowers the
/// residual norm by less than `tol`, or after `max_sweeps` sweeps; in the
/// latter case a gap above `100 * tol` to the dual value is an error.
pub fn solve_ds(
    space: &FiniteQuotientSpace,
    f: &SampledFunction,
    tol: f64,
    max_sweeps: usize,
) -> Result<ApproxSolution> {
    space.check_function(f)?;
    if space.product_shape().is_none() {
        return Err(Error::NotProductSpace);
    }
    if !(tol > 0.0) || max_sweeps == 0 {
        return Err(Error::InvalidInput("tol and max_sweeps must be positive".into()));
    }

    let mut state = Sweeps::new(space, f);
    let mut norm = f.max_abs();
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        let next = state.sweep();
        sweeps += 1;
        let decrease = norm - next;
        norm = next;
        if decrease < tol {
            converged = true;
            break;
        }
    }

    let witness = SumElement::new(state.g, state.h)?.anchored();
    let error = residual_norm(space, f, &witness);
    let d = dual(space, f)?;
    if !converged && (error - d.value).abs() > 100.0 * tol {
        return Err(Error::NonConvergence {
            error,
            dual_value: d.value,
            sweeps,
        });
    }
    Ok(ApproxSolution {
        error,
        witness,
        dual_value: d.value,
        dual_witness: d.witness,
        method: Method::Ds,
        iterations: sweeps,
    })
}

struct Sweeps {
    s_members: Vec<Vec<usize>>,
    p_members: Vec<Vec<usize>>,
    r: Vec<f64>,
    g: Vec<f64>,
    h: Vec<f64>,
}

impl Sweeps {
    fn new(space: &FiniteQuotientSpace, f: &SampledFunction) -> Self {
        Self {
            s_members: space.s_members(),
            p_members: space.p_members(),
            r: f.values().to_vec(),
            g: vec![0.0; space.n_s()],
            h: vec![0.0; space.n_p()],
        }
    }

    /// One `s` pass and one `p` pass; returns the new residual norm.
    fn sweep(&mut self) -> f64 {
        midrange_pass(&mut self.r, &self.s_members, &mut self.g);
        midrange_pass(&mut self.r, &self.p_members, &mut self.h);
        self.r.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn midrange_pass(r: &mut [f64], classes: &[Vec<usize>], acc: &mut [f64]) {
    for (class, slot) in classes.iter().zip(acc.iter_mut()) {
        let (lo, hi) = class
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| (lo.min(r[i]), hi.max(r[i])));
        let mid = 0.5 * (lo + hi);
        for &i in class {
            r[i] -= mid;
        }
        *slot += mid;
    }
}

/// Residual sup-norm after each of the first `sweeps` alternating sweeps
/// (entry 0 is `max|f|`).
pub fn ds_norm_history(space: &FiniteQuotientSpace, f: &SampledFunction, sweeps: usize) -> Result<Vec<f64>> {
    space.check_function(f)?;
    if space.product_shape().is_none() {
        return Err(Error::NotProductSpace);
    }
    let mut state = Sweeps::new(space, f);
    let mut out = vec![f.max_abs()];
    out.extend((0..sweeps).map(|_| state.sweep()));
    Ok(out)
}
