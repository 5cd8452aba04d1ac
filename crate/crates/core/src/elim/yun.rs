use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{CurveError, Result};
use crate::polycore::UnivariatePolynomial;
use crate::realroots::AlgebraicNumber;

/// `p = content * prod factor^multiplicity`.
///
/// Factors are primitive, square-free, pairwise coprime, of positive degree
/// and positive leading coefficient; multiplicities strictly increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeFactorization {
    pub content: BigInt,
    pub factors: Vec<(UnivariatePolynomial, u32)>,
}

impl SquareFreeFactorization {
    pub fn expand(&self) -> UnivariatePolynomial {
        self.factors
            .iter()
            .fold(UnivariatePolynomial::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    /// Product of all factors: the square-free part, primitive.
    pub fn squarefree_part(&self) -> UnivariatePolynomial {
        self.factors.iter().fold(UnivariatePolynomial::one(), |acc, (f, _)| acc.mul(f))
    }

    /// Factor `r_i`, or `1` when absent.
    pub fn factor(&self, i: u32) -> UnivariatePolynomial {
        self.factors.iter().find(|(_, m)| *m == i).map(|(f, _)| f.clone()).unwrap_or_else(UnivariatePolynomial::one)
    }
}

/// Yun's square-free factorization over the integers.
pub fn yun_squarefree(p: &UnivariatePolynomial) -> Result<SquareFreeFactorization> {
    if p.is_zero() {
        return Err(CurveError::ZeroPolynomial("square-free factorization of zero".into()));
    }
    let mut content = p.content();
    if p.lc().is_negative() {
        content = -content;
    }
    let q = p.primitive_part();
    let mut factors = Vec::new();
    if q.is_constant() {
        return Ok(SquareFreeFactorization { content, factors });
    }
    let dq = q.derivative();
    let b = q.gcd(&dq);
    let mut c = q.div_exact(&b).expect("gcd divides p");
    let mut d = dq.div_exact(&b).expect("gcd divides p'").sub(&c.derivative());
    let mut i = 1u32;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            factors.push((a.primitive_part(), i));
        }
        c = c.div_exact(&a).expect("factor divides c");
        d = d.div_exact(&a).expect("factor divides d").sub(&c.derivative());
        i += 1;
    }
    debug_assert!(c.coeffs().iter().all(|x| x.abs().is_one()));
    Ok(SquareFreeFactorization { content, factors })
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd_univariate(p: &UnivariatePolynomial, q: &UnivariatePolynomial) -> UnivariatePolynomial {
    p.gcd(q).primitive_part()
}

/// Multiplicity of `a` as a root of the factored polynomial (0 if not a root).
pub fn multiplicity_at(sf: &SquareFreeFactorization, a: &AlgebraicNumber) -> u32 {
    sf.factors.iter().find(|(f, _)| a.is_root_of(f)).map_or(0, |(_, m)| *m)
}
