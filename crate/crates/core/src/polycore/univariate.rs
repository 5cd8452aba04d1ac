//! Dense univariate polynomials over an integral domain.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::DyadicInterval;
use super::ring::Ring;

/// Dense polynomial with coefficients in `R`, stored lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Integer polynomial in one variable.
pub type UnivariatePolynomial = Poly<BigInt>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Poly<R> {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly<R> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly<R> {
        Poly::constant(R::one_elem())
    }

    pub fn constant(c: R) -> Poly<R> {
        Poly::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: R, k: usize) -> Poly<R> {
        let mut v = vec![R::zero_elem(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero_elem)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero_elem)
    }

    pub fn add(&self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly<R> {
        Poly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn mul(&self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero_elem(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero_elem() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &R) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Poly<R> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero_elem(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Poly<R> {
        Ring::power(self, e)
    }

    pub fn derivative(&self) -> Poly<R> {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.times(&R::from_i64(i as i64))).collect())
    }

    /// Keeps only the terms of degree `<= d`.
    pub fn truncate(&self, d: usize) -> Poly<R> {
        Poly::new(self.coeffs.iter().take(d + 1).cloned().collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero_elem(), |acc, c| acc.times(x).plus(c))
    }

    /// Pseudo-remainder `prem(self, b)`: remainder of `lc(b)^(m-n+1) * self` by `b`.
    pub fn prem(&self, b: &Poly<R>) -> Poly<R> {
        let n = b.degree().expect("pseudo-division by zero polynomial");
        let Some(m) = self.degree() else {
            return Poly::zero();
        };
        if m < n {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut steps = 0u32;
        while let Some(dr) = r.degree() {
            if dr < n {
                break;
            }
            let t = Poly::monomial(r.lc(), dr - n);
            r = r.scale(&lb).sub(&t.mul(b));
            steps += 1;
        }
        let missing = (m - n + 1) as u32 - steps;
        if missing > 0 {
            r = r.scale(&lb.power(missing));
        }
        r
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly<R>) -> Option<Poly<R>> {
        let n = b.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let m = self.degree().unwrap();
        if m < n {
            return None;
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![R::zero_elem(); m - n + 1];
        while let Some(dr) = r.degree() {
            if dr < n {
                return None;
            }
            let t = r.lc().div_exact(&lb)?;
            let k = dr - n;
            r = r.sub(&b.scale(&t).shift(k));
            if r.degree() == Some(dr) {
                return None;
            }
            q[k] = t;
        }
        Some(Poly::new(q))
    }

    /// Gcd of the coefficients, normalized (zero for the zero polynomial).
    pub fn content(&self) -> R {
        let mut g = R::zero_elem();
        for c in &self.coeffs {
            g = g.gcd_elem(c);
            if g.is_one_elem() {
                break;
            }
        }
        g
    }

    /// `self / content(self)` with a positive leading sign.
    pub fn primitive_part(&self) -> Poly<R> {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        let p = if c.is_one_elem() {
            self.clone()
        } else {
            Poly::new(self.coeffs.iter().map(|a| a.div_exact(&c).expect("content divides")).collect())
        };
        Ring::normalized(&p)
    }

    /// Greatest common divisor by the primitive polynomial remainder sequence,
    /// normalized to a positive leading sign.
    pub fn gcd(&self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() {
            return Ring::normalized(o);
        }
        if o.is_zero() {
            return Ring::normalized(self);
        }
        let c = self.content().gcd_elem(&o.content());
        let (mut p, mut q) = (self.primitive_part(), o.primitive_part());
        if p.deg() < q.deg() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            if q.is_constant() {
                p = Poly::one();
                break;
            }
            let r = p.prem(&q);
            p = q;
            q = r.primitive_part();
        }
        Ring::normalized(&p.primitive_part().scale(&c))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_elem() -> Self {
        Poly::zero()
    }
    fn one_elem() -> Self {
        Poly::one()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn negated(&self) -> Self {
        Poly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Poly::div_exact(self, o)
    }
    fn gcd_elem(&self, o: &Self) -> Self {
        Poly::gcd(self, o)
    }
    fn is_lead_negative(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_lead_negative())
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        Poly::add(self, o)
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        Poly::sub(self, o)
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        Poly::mul(self, o)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(self)
    }
}

impl UnivariatePolynomial {
    pub fn from_i64s(coeffs: &[i64]) -> UnivariatePolynomial {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `X`.
    pub fn x() -> UnivariatePolynomial {
        Poly::from_i64s(&[0, 1])
    }

    /// Exact value at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        self.coeffs.iter().rev().fold(Dyadic::zero(), |acc, c| &(&acc * x) + &Dyadic::from_int(c.clone()))
    }

    /// Sign of the value at a dyadic point, computed in integers only.
    pub fn sign_at_dyadic(&self, x: &Dyadic) -> i32 {
        let Some(n) = self.degree() else {
            return 0;
        };
        let e = x.exponent();
        if e >= 0 {
            let xi = x.floor();
            let v = self.eval(&xi);
            return sign_of(&v);
        }
        // p(M / 2^k) * 2^(k n) = sum c_i M^i 2^(k (n - i))
        let k = (-e) as u64;
        let m = x.mantissa();
        let mut acc = self.coeffs[n].clone();
        for i in (0..n).rev() {
            acc = acc * m + (&self.coeffs[i] << (k * (n - i) as u64));
        }
        sign_of(&acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let Some(n) = self.degree() else {
            return BigRational::zero();
        };
        // Homogeneous evaluation keeps everything in integers.
        let (num, den) = (x.numer(), x.denom());
        let mut acc = self.coeffs[n].clone();
        let mut den_pow = BigInt::one();
        for i in (0..n).rev() {
            den_pow *= den;
            acc = acc * num + &self.coeffs[i] * &den_pow;
        }
        BigRational::new(acc, den_pow)
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> i32 {
        match self.eval_rational(x).cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Horner enclosure of the range over an interval, rounded outward to
    /// `prec` significant bits after every multiplication (`None`: exact).
    pub fn eval_interval(&self, x: &DyadicInterval, prec: Option<u64>) -> DyadicInterval {
        if x.is_point() {
            return DyadicInterval::point(self.eval_dyadic(x.lo()));
        }
        let mut acc = DyadicInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&DyadicInterval::from_int(c));
            if let Some(p) = prec {
                acc = acc.round_outward(p);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).is_constant(),
        }
    }

    /// `self / gcd(self, self')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> UnivariatePolynomial {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").primitive_part()
    }

    /// Power of two strictly larger than the modulus of every complex root
    /// (Cauchy bound).
    pub fn root_bound(&self) -> Dyadic {
        let n = self.degree().expect("root bound of zero polynomial");
        let lc = self.coeffs[n].abs();
        let max = self.coeffs[..n].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
        // 1 + max/|lc| < 2^k
        let ratio = Dyadic::from_int(max).div(&Dyadic::from_int(lc), 16, super::dyadic::Rounding::Ceil);
        let bound = &ratio + &Dyadic::one();
        let k = bound.msb().max(1);
        Dyadic::pow2(k)
    }

    /// `p(a + b X)` for integers `a, b`.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> UnivariatePolynomial {
        let lin = Poly::new(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// `X^n p(1/X)`.
    pub fn reversed(&self) -> UnivariatePolynomial {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Taylor shift `p(X + 1)`.
    pub fn taylor_shift_one(&self) -> UnivariatePolynomial {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone();
                a[j] += t;
            }
        }
        Poly::new(a)
    }

    /// Sign variations in the coefficient sequence (zeros skipped).
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut count = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Renders the polynomial in the variable `var`, parseable by the CLI grammar.
    pub fn to_string_in(&self, var: &str) -> String {
        let terms: Vec<(BigInt, u32, u32)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), if var == "x" { i as u32 } else { 0 }, if var == "x" { 0 } else { i as u32 }))
            .rev()
            .collect();
        super::bivariate::format_terms(&terms)
    }
}

pub(crate) fn sign_of(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().enumerate().map(|(i, c)| format!("({c:?})*X^{i}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}
