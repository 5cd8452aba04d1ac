use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::polycore::{Dyadic, DyadicInterval, UnivariatePolynomial};

/// A real algebraic number: the unique root of a square-free primitive
/// polynomial inside an isolating interval.
///
/// Either `lo < hi`, the polynomial is nonzero at both endpoints and changes
/// sign on `[lo, hi]`, or `lo == hi` and the number is that dyadic exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: UnivariatePolynomial,
    lo: Dyadic,
    hi: Dyadic,
}

impl AlgebraicNumber {
    /// Builds from a square-free polynomial and an isolating interval.
    /// The polynomial is normalized to a primitive one with positive leading
    /// coefficient.
    pub fn new(poly: &UnivariatePolynomial, interval: DyadicInterval) -> AlgebraicNumber {
        let poly = poly.primitive_part();
        let (lo, hi) = (interval.lo().clone(), interval.hi().clone());
        debug_assert!(!poly.is_constant());
        if lo == hi {
            debug_assert_eq!(poly.sign_at_dyadic(&lo), 0);
        } else {
            debug_assert_eq!(poly.sign_at_dyadic(&lo) * poly.sign_at_dyadic(&hi), -1, "{poly} on [{lo}, {hi}]");
        }
        AlgebraicNumber { poly, lo, hi }
    }

    pub fn from_dyadic(d: Dyadic) -> AlgebraicNumber {
        // 2^k x - m for d = m 2^-k, or x - m 2^e
        let poly = if d.exponent() >= 0 {
            UnivariatePolynomial::new(vec![-d.mantissa() << (d.exponent() as u64), BigInt::from(1)])
        } else {
            UnivariatePolynomial::new(vec![-d.mantissa().clone(), BigInt::from(1) << ((-d.exponent()) as u64)])
        };
        AlgebraicNumber { poly: poly.primitive_part(), lo: d.clone(), hi: d }
    }

    pub fn from_integer(v: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_dyadic(Dyadic::from_i64(v))
    }

    pub fn from_rational(q: &BigRational) -> AlgebraicNumber {
        if let Some(d) = Dyadic::try_from_rational(q) {
            return AlgebraicNumber::from_dyadic(d);
        }
        let poly = UnivariatePolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).primitive_part();
        let bits = q.denom().bits() as i64 + 2;
        let iv = DyadicInterval::from_rational(q, bits);
        AlgebraicNumber { poly, lo: iv.lo().clone(), hi: iv.hi().clone() }
    }

    pub fn poly(&self) -> &UnivariatePolynomial {
        &self.poly
    }

    pub fn interval(&self) -> DyadicInterval {
        DyadicInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// Known exactly as a dyadic.
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_exact() {
            return Some(self.lo.to_rational());
        }
        (self.poly.degree() == Some(1))
            .then(|| BigRational::new(-self.poly.coeff(0), self.poly.coeff(1)))
    }

    /// One bisection step; an exact midpoint root collapses the interval.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = Dyadic::midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at_dyadic(&m);
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == self.poly.sign_at_dyadic(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Bisects until the width is at most `target`.
    pub fn refine_to(&mut self, target: &Dyadic) {
        while self.width() > *target {
            self.bisect();
        }
    }

    /// Copy with an isolating interval of width at most `target`.
    pub fn refined(&self, target: &Dyadic) -> AlgebraicNumber {
        let mut a = self.clone();
        a.refine_to(target);
        a
    }

    /// Whether the number is a root of `p`: gcd with the defining polynomial,
    /// then a sign change of the gcd on the isolating interval.
    pub fn is_root_of(&self, p: &UnivariatePolynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_exact() {
            return p.sign_at_dyadic(&self.lo) == 0;
        }
        let g = self.poly.gcd(p);
        if g.is_constant() {
            return false;
        }
        g.sign_at_dyadic(&self.lo) * g.sign_at_dyadic(&self.hi) < 0
    }

    /// Sign of `p` at this number, refining the interval as needed.
    pub fn sign_of(&mut self, p: &UnivariatePolynomial) -> i32 {
        if p.is_zero() {
            return 0;
        }
        if self.is_exact() {
            return p.sign_at_dyadic(&self.lo);
        }
        if p.is_constant() {
            return crate::polycore::univariate::sign_of(&p.coeff(0));
        }
        if let Some(s) = p.eval_interval(&self.interval(), None).sign() {
            return s;
        }
        if self.is_root_of(p) {
            return 0;
        }
        loop {
            self.bisect();
            if self.is_exact() {
                return p.sign_at_dyadic(&self.lo);
            }
            if let Some(s) = p.eval_interval(&self.interval(), None).sign() {
                return s;
            }
        }
    }

    /// Order against a dyadic, shrinking the interval to one side of it.
    pub fn cmp_dyadic(&mut self, d: &Dyadic) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(d);
        }
        if d <= &self.lo {
            return Ordering::Greater;
        }
        if d >= &self.hi {
            return Ordering::Less;
        }
        let sd = self.poly.sign_at_dyadic(d);
        if sd == 0 {
            self.lo = d.clone();
            self.hi = d.clone();
            return Ordering::Equal;
        }
        if sd == self.poly.sign_at_dyadic(&self.lo) {
            self.lo = d.clone();
            Ordering::Greater
        } else {
            self.hi = d.clone();
            Ordering::Less
        }
    }

    /// Order against a rational.
    pub fn cmp_rational(&mut self, q: &BigRational) -> Ordering {
        if let Some(d) = Dyadic::try_from_rational(q) {
            return self.cmp_dyadic(&d);
        }
        loop {
            if self.hi.to_rational() < *q {
                return Ordering::Less;
            }
            if self.lo.to_rational() > *q {
                return Ordering::Greater;
            }
            if self.is_exact() {
                return self.lo.to_rational().cmp(q);
            }
            // A non-dyadic rational equals the number iff it is a root.
            if self.poly.sign_at_rational(q) == 0 {
                return Ordering::Equal;
            }
            self.bisect();
        }
    }

    /// Exact order of two algebraic numbers; refines both as needed.
    pub fn compare_mut(&mut self, other: &mut AlgebraicNumber) -> Ordering {
        if self.hi < other.lo {
            return Ordering::Less;
        }
        if other.hi < self.lo {
            return Ordering::Greater;
        }
        if self.is_exact() {
            return other.cmp_dyadic(&self.lo.clone()).reverse();
        }
        if other.is_exact() {
            return self.cmp_dyadic(&other.lo.clone());
        }
        if self.equals_overlapping(other) {
            return Ordering::Equal;
        }
        loop {
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
            if self.hi < other.lo {
                return Ordering::Less;
            }
            if other.hi < self.lo {
                return Ordering::Greater;
            }
            if self.is_exact() {
                return other.cmp_dyadic(&self.lo.clone()).reverse();
            }
            if other.is_exact() {
                return self.cmp_dyadic(&other.lo.clone());
            }
        }
    }

    /// Equality test for two non-exact numbers with intersecting intervals:
    /// a common factor of the defining polynomials must vanish at both and
    /// have a root in the intersection.
    fn equals_overlapping(&self, other: &AlgebraicNumber) -> bool {
        let Some(j) = self.interval().intersection(&other.interval()) else {
            return false;
        };
        let g = if self.poly == other.poly {
            self.poly.clone()
        } else {
            let g = self.poly.gcd(&other.poly);
            if g.is_constant() || !self.is_root_of(&g) || !other.is_root_of(&g) {
                return false;
            }
            g
        };
        // endpoints of `j` are endpoints of one of the isolating intervals,
        // hence not roots of `g`; `g` has at most one root in each interval.
        g.sign_at_dyadic(j.lo()) * g.sign_at_dyadic(j.hi()) < 0
    }

    /// Midpoint approximation after refining to `2^-bits`.
    pub fn approximate(&self, bits: i64) -> Dyadic {
        self.refined(&Dyadic::pow2(-bits)).interval().midpoint()
    }

    pub fn to_f64(&self) -> f64 {
        self.approximate(60).to_f64()
    }

    pub fn signum(&mut self) -> i32 {
        match self.cmp_dyadic(&Dyadic::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Negation `-a`.
    pub fn neg(&self) -> AlgebraicNumber {
        let coeffs: Vec<BigInt> = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        let poly = UnivariatePolynomial::new(coeffs).primitive_part();
        AlgebraicNumber { poly, lo: -&self.hi, hi: -&self.lo }
    }
}

/// Exact order of two algebraic numbers without mutating either.
pub fn compare(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Ordering {
    a.clone().compare_mut(&mut b.clone())
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "~{}", self.to_f64())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c)
    }

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    fn alg(c: &[i64], lo: Dyadic, hi: Dyadic) -> AlgebraicNumber {
        AlgebraicNumber::new(&up(c), DyadicInterval::new(lo, hi))
    }

    #[test]
    fn refinement_keeps_the_root() {
        let sqrt2 = alg(&[-2, 0, 1], d(1, 0), d(2, 0));
        let r = sqrt2.refined(&d(1, -2));
        assert!(r.width() <= d(1, -2));
        assert!(r.lo().to_f64() <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= r.hi().to_f64());
        let one = alg(&[-1, 1], d(0, 0), d(2, 0)).refined(&d(1, -20));
        assert!(one.is_exact() && one.lo() == &d(1, 0));
        let cbrt2 = alg(&[-2, 0, 0, 1], d(1, 0), d(2, 0)).refined(&d(1, -10));
        let c = 2f64.cbrt();
        assert!(cbrt2.lo().to_f64() <= c && c <= cbrt2.hi().to_f64());
    }

    #[test]
    fn comparisons() {
        let a = alg(&[-2, 0, 1], d(1, 0), d(2, 0));
        let b = alg(&[-2, 0, 1], d(11, -3), d(3, -1));
        assert_eq!(compare(&a, &b), Ordering::Equal);
        let three_halves = AlgebraicNumber::from_rational(&BigRational::new(3.into(), 2.into()));
        assert_eq!(compare(&a, &three_halves), Ordering::Less);
        let neg = alg(&[-2, 0, 1], d(-2, 0), d(-1, 0));
        assert_eq!(compare(&neg, &a), Ordering::Less);
        // sqrt2 against a root of (x^2-2)(x-3) given by a different polynomial
        let other = alg(&[6, -2, -3, 1], d(1, 0), d(2, 0));
        assert_eq!(compare(&a, &other), Ordering::Equal);
        let third = AlgebraicNumber::from_rational(&BigRational::new(1.into(), 3.into()));
        let x3 = alg(&[-1, 3], d(0, 0), d(1, 0));
        assert_eq!(compare(&third, &x3), Ordering::Equal);
    }

    #[test]
    fn same_polynomial_overlap_is_not_equality() {
        // roots -1 and 1 of x^2 - 1 with touching intervals
        let a = alg(&[-1, 0, 1], d(-3, -1), d(-1, -2));
        let b = alg(&[-1, 0, 1], d(-1, -2), d(3, -1));
        assert_eq!(compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn signs_and_roots() {
        let mut a = alg(&[-2, 0, 1], d(1, 0), d(2, 0));
        assert_eq!(a.sign_of(&up(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of(&up(&[-3, 2])), -1); // 2 sqrt2 - 3 < 0
        assert_eq!(a.sign_of(&up(&[0, 0, 0, 1, 0, -1])), -1); // 2 sqrt2 - 4 sqrt2
        assert!(a.is_root_of(&up(&[-4, 0, 0, 0, 1])));
        assert!(!a.is_root_of(&up(&[2, 0, 1])));
        assert_eq!(a.neg().to_f64(), -a.to_f64());
    }
}
