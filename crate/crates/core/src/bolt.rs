//! Lightning bolts, bolt functionals and the alternation lower bound.
//!
//! A bolt is a sequence of points in which consecutive points are distinct and
//! alternately share an `s`-class and a `p`-class. A closed bolt has even
//! length and its wraparound link (last point back to the first) continues
//! the alternation. The bolt functional of a closed bolt vanishes on every
//! element of the sum of the two algebras, which is what makes it a lower
//! bound for the approximation error.

use crate::error::{Error, Result};
use crate::space::{evaluate_sum, FiniteQuotientSpace, SampledFunction, SumElement};

/// Type of the class equality joining two consecutive bolt points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    /// Same `s`-class.
    S,
    /// Same `p`-class.
    P,
}

impl Link {
    pub fn other(self) -> Link {
        match self {
            Link::S => Link::P,
            Link::P => Link::S,
        }
    }

    /// Whether points `x` and `y` are joined by this link type.
    pub fn holds(self, space: &FiniteQuotientSpace, x: usize, y: usize) -> bool {
        x != y
            && match self {
                Link::S => space.s_class()[x] == space.s_class()[y],
                Link::P => space.p_class()[x] == space.p_class()[y],
            }
    }
}

/// A validated bolt. Construct with [`validate_bolt`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bolt {
    points: Vec<usize>,
    closed: bool,
    first_link: Link,
}

impl Bolt {
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn first_link(&self) -> Link {
        self.first_link
    }

    /// Type of the link leaving position `i` (for closed bolts `i = len - 1`
    /// is the wraparound link).
    pub fn link_at(&self, i: usize) -> Link {
        if i % 2 == 0 {
            self.first_link
        } else {
            self.first_link.other()
        }
    }

    /// Cyclic shift of a closed bolt so that it starts at position `k`.
    ///
    /// An odd shift swaps the first link type and negates the bolt functional.
    pub fn rotated(&self, k: usize) -> Result<Bolt> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        let n = self.points.len();
        let k = k % n;
        let mut points = self.points[k..].to_vec();
        points.extend_from_slice(&self.points[..k]);
        let first_link = if k % 2 == 0 {
            self.first_link
        } else {
            self.first_link.other()
        };
        Ok(Bolt {
            points,
            closed: true,
            first_link,
        })
    }

    /// True iff no point occurs both at an odd and at an even position, which
    /// is exactly when the bolt functional has norm one.
    pub fn has_unit_norm(&self) -> bool {
        let even: std::collections::HashSet<_> = self.points.iter().step_by(2).collect();
        !self.points.iter().skip(1).step_by(2).any(|x| even.contains(x))
    }
}

/// Validates `points` as a (closed) bolt on `space`, inferring the first link type.
///
/// When both link types hold between the first two points, `S` is tried
/// first and `P` second; the first that validates the whole sequence wins.
pub fn validate_bolt(space: &FiniteQuotientSpace, points: &[usize], closed: bool) -> Result<Bolt> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!("bolt needs at least 2 points, got {n}")));
    }
    if let Some(&x) = points.iter().find(|&&x| x >= space.n()) {
        return Err(Error::InvalidInput(format!(
            "point index {x} out of range for a space of {} points",
            space.n()
        )));
    }
    if let Some(i) = (0..n - 1).find(|&i| points[i] == points[i + 1]) {
        return Err(Error::ConsecutiveDuplicate {
            position: i,
            point: points[i],
        });
    }
    if closed && points[n - 1] == points[0] {
        return Err(Error::ConsecutiveDuplicate {
            position: n - 1,
            point: points[0],
        });
    }
    if closed && n % 2 == 1 {
        return Err(Error::NotClosable(format!("odd length {n}")));
    }

    let mut failure = None;
    for first_link in [Link::S, Link::P] {
        match check_chain(space, points, closed, first_link) {
            Ok(()) => {
                return Ok(Bolt {
                    points: points.to_vec(),
                    closed,
                    first_link,
                })
            }
            // keep the failure that got furthest along the sequence
            Err(e) => {
                if failure.as_ref().map_or(true, |f| progress(&e) > progress(f)) {
                    failure = Some(e);
                }
            }
        }
    }
    Err(failure.expect("at least one attempt"))
}

fn progress(e: &Error) -> usize {
    match e {
        Error::BrokenChain { position } => *position,
        _ => usize::MAX,
    }
}

fn check_chain(space: &FiniteQuotientSpace, points: &[usize], closed: bool, first: Link) -> Result<()> {
    let mut link = first;
    for (i, w) in points.windows(2).enumerate() {
        if !link.holds(space, w[0], w[1]) {
            return Err(Error::BrokenChain { position: i });
        }
        link = link.other();
    }
    if closed && !link.holds(space, points[points.len() - 1], points[0]) {
        return Err(Error::NotClosable(format!(
            "wraparound {:?}-link from point {} to point {} is absent",
            link,
            points[points.len() - 1],
            points[0]
        )));
    }
    Ok(())
}

/// Bolt functional: the mean of `f` along the bolt with alternating signs,
/// `+` at the first point.
pub fn bolt_functional(bolt: &Bolt, f: &SampledFunction) -> Result<f64> {
    if let Some(&x) = bolt.points.iter().find(|&&x| x >= f.len()) {
        return Err(Error::ShapeMismatch {
            what: "function values",
            expected: x + 1,
            found: f.len(),
        });
    }
    let sum: f64 = bolt
        .points
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { f[x] } else { -f[x] })
        .sum();
    Ok(sum / bolt.points.len() as f64)
}

/// Alternation lower bound on the approximation error.
///
/// If the residual `f - u` alternates in sign along the closed `bolt`
/// (either parity; zeros fit both), the smallest absolute residual on the
/// bolt is a lower bound for the error of best approximation of `f`.
pub fn dvp_bound(
    space: &FiniteQuotientSpace,
    f: &SampledFunction,
    u: &SumElement,
    bolt: &Bolt,
) -> Result<f64> {
    dvp_bound_with_tol(space, f, u, bolt, 0.0)
}

/// [`dvp_bound`] where residuals with `|r| <= zero_tol` count as zero in the
/// sign test. The bound is then valid up to `zero_tol`.
pub fn dvp_bound_with_tol(
    space: &FiniteQuotientSpace,
    f: &SampledFunction,
    u: &SumElement,
    bolt: &Bolt,
    zero_tol: f64,
) -> Result<f64> {
    if !bolt.closed {
        return Err(Error::NotClosed);
    }
    space.check_function(f)?;
    let uf = evaluate_sum(space, u)?;
    let residuals: Vec<f64> = bolt.points.iter().map(|&x| f[x] - uf[x]).collect();
    check_alternation(&residuals, zero_tol)?;
    Ok(residuals.iter().fold(f64::INFINITY, |m, r| m.min(r.abs())))
}

/// Checks `r[i] = ±(-1)^i |r[i]|` for one global sign.
fn check_alternation(residuals: &[f64], zero_tol: f64) -> Result<()> {
    // sign relative to (-1)^i
    let normalized = |i: usize, r: f64| if i % 2 == 0 { r } else { -r };
    let mut anchor: Option<(usize, bool)> = None;
    for (i, &r) in residuals.iter().enumerate() {
        if r.abs() <= zero_tol {
            continue;
        }
        let positive = normalized(i, r) > 0.0;
        match anchor {
            None => anchor = Some((i, positive)),
            Some((a, sign)) if sign != positive => {
                return Err(Error::SignViolation { first: a, second: i })
            }
            Some(_) => {}
        }
    }
    Ok(())
}
