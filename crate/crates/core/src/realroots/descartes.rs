use num_bigint::BigInt;

use super::AlgebraicNumber;
use crate::error::{CurveError, Result};
use crate::polycore::{Dyadic, DyadicInterval, UnivariatePolynomial};

/// Number of sign variations of `(x + 1)^n q(1 / (x + 1))`: an upper bound
/// on the roots of `q` in `(0, 1)`, exact when it is 0 or 1.
fn descartes_bound(q: &UnivariatePolynomial) -> usize {
    q.reversed().taylor_shift_one().sign_variations()
}

/// `2^n q(x / 2)`.
fn left_half(q: &UnivariatePolynomial) -> UnivariatePolynomial {
    let n = q.degree().unwrap_or(0);
    UnivariatePolynomial::new(q.coeffs().iter().enumerate().map(|(i, c)| c << ((n - i) as u64)).collect())
}

struct Isolator<'a> {
    poly: &'a UnivariatePolynomial,
    /// `[-B, B]` with `B = 2^k`.
    k: i64,
    out: Vec<AlgebraicNumber>,
}

impl Isolator<'_> {
    /// Left endpoint of node `num` at depth `depth`: `-B + num * 2B / 2^depth`.
    fn point(&self, num: &BigInt, depth: u32) -> Dyadic {
        &Dyadic::new(num.clone(), self.k + 1 - depth as i64) - &Dyadic::pow2(self.k)
    }

    /// `q` is the polynomial transformed to `[0, 1]`; the flags mark node
    /// endpoints that are exact roots, which are never counted by
    /// `descartes_bound` but must not end up as isolating endpoints.
    fn visit(&mut self, q: UnivariatePolynomial, num: BigInt, depth: u32, lo_root: bool, hi_root: bool) {
        let v = descartes_bound(&q);
        if v == 0 {
            return;
        }
        if v == 1 && !lo_root && !hi_root {
            let lo = self.point(&num, depth);
            let hi = self.point(&(&num + 1), depth);
            self.out.push(AlgebraicNumber::new(self.poly, DyadicInterval::new(lo, hi)));
            return;
        }
        let left = left_half(&q).primitive_part();
        let right = left.taylor_shift_one().primitive_part();
        let mid_is_root = right.coeff(0) == BigInt::from(0);
        let num2: BigInt = &num * BigInt::from(2);
        self.visit(left, num2.clone(), depth + 1, lo_root, mid_is_root);
        if mid_is_root {
            self.out.push(AlgebraicNumber::from_dyadic(self.point(&(&num2 + 1), depth + 1)));
        }
        self.visit(right, num2 + 1, depth + 1, mid_is_root, hi_root);
    }
}

/// Isolates all real roots of a square-free polynomial, ascending.
pub fn descartes_isolate(p: &UnivariatePolynomial) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(CurveError::ZeroPolynomial("root isolation of the zero polynomial".into()));
    }
    if !p.is_squarefree() {
        return Err(CurveError::NotSquarefree(format!("gcd({p}, {p}') is not constant")));
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let poly = p.primitive_part();
    let b = poly.root_bound();
    let k = b.exponent();
    let bi = b.floor();
    // p(-B + 2B x) on [0, 1]
    let q0 = poly.compose_linear(&-&bi, &(&bi * BigInt::from(2))).primitive_part();
    let mut iso = Isolator { poly: &poly, k, out: Vec::new() };
    iso.visit(q0, BigInt::from(0), 0, false, false);
    let mut out = iso.out;
    // neighbouring intervals may share an endpoint; make them disjoint
    for i in 1..out.len() {
        while out[i - 1].hi() >= out[i].lo() {
            let (l, r) = out.split_at_mut(i);
            l[i - 1].bisect();
            r[0].bisect();
        }
    }
    Ok(out)
}

/// Isolates the real roots of any nonzero polynomial via its square-free part.
pub fn real_roots(p: &UnivariatePolynomial) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(CurveError::ZeroPolynomial("root isolation of the zero polynomial".into()));
    }
    descartes_isolate(&p.squarefree_part())
}
