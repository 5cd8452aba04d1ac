//! Attaching the arcs of a delineable strip to the points of a neighbouring
//! event fiber.

use std::cmp::Ordering;

use num_rational::BigRational;

use crate::error::{CurveError, Result};
use crate::lift::Fiber;
use crate::polycore::{BivariatePolynomial, Dyadic, DyadicInterval, PlanarBox};
use crate::realroots::{real_roots, AlgebraicNumber};

/// Which strip, relative to the event value, the arcs live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Where an arc ends above the event value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Point(usize),
    MinusInfinity,
    PlusInfinity,
}

/// Arcs over the strip containing `q`, one per point of the fiber at `q`.
#[derive(Clone, Debug)]
pub struct ArcSet {
    pub q: BigRational,
    pub fiber: Fiber,
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.fiber.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fiber.is_empty()
    }
}

/// Targets of the arcs of one strip, indexed bottom to top; weakly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMap {
    pub side: Side,
    pub targets: Vec<Target>,
}

/// Whether the counting rule applies: no asymptote, at most one critical
/// point, and enough arcs for every ordinary point.
pub fn is_generic(fiber: &Fiber, arcs: &ArcSet) -> bool {
    if fiber.asymptote {
        return false;
    }
    match fiber.critical_count() {
        0 => arcs.len() == fiber.len(),
        1 => arcs.len() + 1 >= fiber.len(),
        _ => false,
    }
}

/// Ordinary points below the critical one take arcs bottom-up, those above
/// take arcs top-down, the rest go to the critical point.
pub fn connect_generic(fiber: &Fiber, arcs: &ArcSet, side: Side) -> Result<ConnectionMap> {
    if !is_generic(fiber, arcs) {
        return Err(CurveError::Precondition("fiber is not in generic position for the counting rule".into()));
    }
    let m = fiber.len();
    let mi = arcs.len();
    let targets = match fiber.points.iter().position(|p| p.critical) {
        None => (0..m).map(Target::Point).collect(),
        Some(i0) => {
            let above = m - i0 - 1;
            (0..mi)
                .map(|j| {
                    if j < i0 {
                        Target::Point(j)
                    } else if j >= mi - above {
                        Target::Point(j + m - mi)
                    } else {
                        Target::Point(i0)
                    }
                })
                .collect()
        }
    };
    Ok(ConnectionMap { side, targets })
}

/// Rational separators below, between and above the fiber points.
fn separators(fiber: &Fiber) -> Vec<Dyadic> {
    let pts = &fiber.points;
    if pts.is_empty() {
        return vec![Dyadic::zero()];
    }
    let mut t = Vec::with_capacity(pts.len() + 1);
    t.push(pts[0].y.lo() - &Dyadic::one());
    for w in pts.windows(2) {
        t.push(Dyadic::midpoint(w[0].y.hi(), w[1].y.lo()));
    }
    t.push(pts[pts.len() - 1].y.hi() + &Dyadic::one());
    t
}

fn strictly_before(x: &Dyadic, q: &BigRational, side: Side) -> bool {
    match side {
        Side::Right => x.to_rational() < *q,
        Side::Left => x.to_rational() > *q,
    }
}

/// Matches arcs through separators: the x-range next to `alpha` is shrunk
/// until no arc crosses a horizontal separator segment, then the roots of
/// `f(b, y)` at the far end `b` are located between separators.
pub fn connect_nongeneric(
    f: &BivariatePolynomial,
    alpha: &AlgebraicNumber,
    fiber: &Fiber,
    arcs: &ArcSet,
    side: Side,
) -> Result<ConnectionMap> {
    let t = separators(fiber);
    let mut a = alpha.clone();
    // keep the isolating interval on the near side of q
    loop {
        let far = match side {
            Side::Right => a.hi().clone(),
            Side::Left => a.lo().clone(),
        };
        if strictly_before(&far, &arcs.q, side) {
            break;
        }
        a.bisect();
    }
    let mut delta = Dyadic::one();
    let range = |a: &AlgebraicNumber, delta: &Dyadic| -> DyadicInterval {
        if a.is_exact() {
            match side {
                Side::Right => DyadicInterval::new(a.lo().clone(), a.lo() + delta),
                Side::Left => DyadicInterval::new(a.lo() - delta, a.lo().clone()),
            }
        } else {
            a.interval()
        }
    };
    let x = loop {
        let x = range(&a, &delta);
        let far = match side {
            Side::Right => x.hi(),
            Side::Left => x.lo(),
        };
        let inside = strictly_before(far, &arcs.q, side);
        if inside
            && t.iter().all(|ti| {
                let seg = PlanarBox::new(x.clone(), DyadicInterval::point(ti.clone()));
                !f.eval_box(&seg, None).contains_zero()
            })
        {
            break x;
        }
        if a.is_exact() {
            delta = delta.half();
        } else {
            a.bisect();
            if a.is_exact() {
                delta = x.width();
            }
        }
    };
    let b = match side {
        Side::Right => x.hi().clone(),
        Side::Left => x.lo().clone(),
    };
    let gammas = real_roots(&f.specialize_x_dyadic(&b))?;
    if gammas.len() != arcs.len() {
        return Err(CurveError::CertificationFailed(format!(
            "{} roots at x = {} but {} arcs in the strip",
            gammas.len(),
            b,
            arcs.len()
        )));
    }
    let targets = gammas
        .into_iter()
        .map(|mut g| {
            let below = t.iter().filter(|ti| g.cmp_dyadic(ti) == Ordering::Greater).count();
            if below == 0 {
                Target::MinusInfinity
            } else if below == t.len() {
                Target::PlusInfinity
            } else {
                Target::Point(below - 1)
            }
        })
        .collect();
    Ok(ConnectionMap { side, targets })
}

/// Counting rule when it applies (and is not disabled), separators otherwise.
pub fn connect(
    f: &BivariatePolynomial,
    fiber: &Fiber,
    arcs: &ArcSet,
    side: Side,
    allow_generic: bool,
) -> Result<ConnectionMap> {
    if allow_generic && is_generic(fiber, arcs) {
        connect_generic(fiber, arcs, side)
    } else {
        connect_nongeneric(f, &fiber.x, fiber, arcs, side)
    }
}
