use crate::error::{CurveError, Result};
use crate::polycore::{BivariatePolynomial, Poly, Ring, UnivariatePolynomial, Var};

/// `p = c * q` with `c` the normalized content and the sign kept in `q`.
pub(crate) fn split_content<R: Ring>(p: &Poly<R>) -> (R, Poly<R>) {
    let c = p.content();
    if c.is_one_elem() {
        return (c, p.clone());
    }
    let q = Poly::new(p.coeffs().iter().map(|a| a.div_exact(&c).expect("content divides")).collect());
    (c, q)
}

/// Resultant over an integral domain by the subresultant PRS.
///
/// Conventions: zero if either input is zero, `1` if both are nonzero
/// constants, `lc(b)^deg(a)` if `b` is a nonzero constant.
pub fn resultant_generic<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero_elem();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = true;
        }
    }
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if db == 0 {
        let r = b.lc().power(da as u32);
        return if negate { r.negated() } else { r };
    }
    let (ca, pa) = split_content(&a);
    let (cb, pb) = split_content(&b);
    let t = ca.power(db as u32).times(&cb.power(da as u32));
    let (mut a, mut b) = (pa, pb);
    let mut g = R::one_elem();
    let mut h = R::one_elem();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b);
        a = b;
        let div = g.times(&h.power(delta));
        b = Poly::new(r.coeffs().iter().map(|c| c.div_exact(&div).expect("subresultant PRS division")).collect());
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.power(delta).div_exact(&h.power(delta - 1)).expect("subresultant PRS h update")
        };
        match b.degree() {
            None => return R::zero_elem(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap() as u32;
    let h = b.lc().power(da).div_exact(&h.power(da - 1)).expect("subresultant PRS final step");
    let r = t.times(&h);
    if negate {
        r.negated()
    } else {
        r
    }
}

/// Resultant of two integer polynomials.
pub fn resultant_univariate(p: &UnivariatePolynomial, q: &UnivariatePolynomial) -> Result<num_bigint::BigInt> {
    if p.is_zero() && q.is_zero() {
        return Err(CurveError::ZeroPolynomial("resultant of two zero polynomials".into()));
    }
    Ok(resultant_generic(p, q))
}

/// `res(p, q)` with respect to `var`, as a polynomial in the other variable.
pub fn resultant(p: &BivariatePolynomial, q: &BivariatePolynomial, var: Var) -> Result<UnivariatePolynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(CurveError::ZeroPolynomial("resultant of two zero polynomials".into()));
    }
    Ok(match var {
        Var::Y => resultant_generic(p.as_y_major(), q.as_y_major()),
        Var::X => resultant_generic(&p.to_x_major(), &q.to_x_major()),
    })
}
