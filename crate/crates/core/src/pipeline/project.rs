use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::elim::{resultant, yun_squarefree, SquareFreeFactorization};
use crate::error::{CurveError, Result};
use crate::polycore::{BivariatePolynomial, Var};
use crate::realroots::{real_roots, AlgebraicNumber};

/// A real root of `R = res(f, f_y, y)` with its multiplicity in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub x: AlgebraicNumber,
    pub multiplicity: u32,
}

/// Sorted events with pairwise disjoint isolating intervals, and
/// `events.len() + 1` separators: `separators[i] < events[i] < separators[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub events: Vec<Event>,
    pub separators: Vec<BigRational>,
}

/// Events and separators of a square-free, content-free curve.
pub fn project(f: &BivariatePolynomial) -> Result<Projection> {
    let r = resultant(f, &f.derive(Var::Y, 1), Var::Y)?;
    if r.is_zero() {
        return Err(CurveError::NotSquarefree(format!("res({f}, f_y, y) vanishes")));
    }
    project_factored(&yun_squarefree(&r)?)
}

/// Projection from a square-free factorization of the resultant.
pub fn project_factored(r: &SquareFreeFactorization) -> Result<Projection> {
    let mut events: Vec<Event> = Vec::new();
    for (factor, m) in &r.factors {
        for x in real_roots(factor)? {
            let mut e = Event { x, multiplicity: *m };
            let mut pos = events.len();
            for (i, other) in events.iter_mut().enumerate() {
                if e.x.compare_mut(&mut other.x) == Ordering::Less {
                    pos = i;
                    break;
                }
            }
            events.insert(pos, e);
        }
    }
    // closed isolating intervals of neighbours may still touch
    for i in 1..events.len() {
        let (l, r) = events.split_at_mut(i);
        let (a, b) = (&mut l[i - 1].x, &mut r[0].x);
        while a.hi() >= b.lo() {
            if a.width() >= b.width() && !a.is_exact() {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }
    let mut separators = Vec::with_capacity(events.len() + 1);
    match (events.first(), events.last()) {
        (Some(first), Some(last)) => {
            let lo = first.x.lo().to_rational();
            separators.push(BigRational::from_integer(lo.ceil().to_integer() - BigInt::one()));
            for w in events.windows(2) {
                separators.push(simplest_between(&w[0].x.hi().to_rational(), &w[1].x.lo().to_rational()));
            }
            let hi = last.x.hi().to_rational();
            separators.push(BigRational::from_integer(hi.floor().to_integer() + BigInt::one()));
        }
        _ => separators.push(BigRational::zero()),
    }
    Ok(Projection { events, separators })
}

/// The rational of smallest denominator (then smallest magnitude) in the
/// open interval `(a, b)`, found by descending the Stern–Brocot tree.
pub fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return BigRational::zero();
    }
    if !b.is_positive() {
        return -simplest_nonneg(&-b, Some(&-a));
    }
    simplest_nonneg(a, Some(b))
}

/// `0 <= a < b`, with `b = None` meaning infinity.
fn simplest_nonneg(a: &BigRational, b: Option<&BigRational>) -> BigRational {
    let fl = a.floor();
    let next = &fl + BigRational::one();
    if b.is_none_or(|b| next < *b) {
        return next;
    }
    let b = b.unwrap();
    // x = fl + 1/y with y in (1 / (b - fl), 1 / (a - fl))
    let lo = (b - &fl).recip();
    let hi = if *a == fl { None } else { Some((a - &fl).recip()) };
    fl + simplest_nonneg(&lo, hi.as_ref()).recip()
}
