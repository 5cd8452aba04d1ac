//! Sparse bivariate integer polynomials with a cached y-major dense view.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::{DyadicInterval, PlanarBox};
use super::ring::Ring;
use super::univariate::{Poly, UnivariatePolynomial};
use crate::error::CurveError;

/// Which variable an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Polynomial in `Z[x, y]`.
///
/// `terms` maps `(deg_x, deg_y)` to a nonzero coefficient; `by_y` holds the
/// same data as `sum_i f_i(x) y^i` and is always consistent with `terms`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
    by_y: Poly<UnivariatePolynomial>,
}

impl BivariatePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(it: I) -> BivariatePolynomial {
        let mut terms: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (k, c) in it {
            *terms.entry(k).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let dy = terms.keys().map(|k| k.1).max();
        let by_y = match dy {
            None => Poly::zero(),
            Some(dy) => {
                let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dy as usize + 1];
                for (&(i, j), c) in &terms {
                    let row = &mut rows[j as usize];
                    if row.len() <= i as usize {
                        row.resize(i as usize + 1, BigInt::zero());
                    }
                    row[i as usize] = c.clone();
                }
                Poly::new(rows.into_iter().map(Poly::new).collect())
            }
        };
        BivariatePolynomial { terms, by_y }
    }

    /// Builds from `(deg_x, deg_y, coefficient)` triples.
    pub fn from_i64_terms(t: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(t.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))))
    }

    /// Builds `sum_i c_i(x) y^i`.
    pub fn from_y_major(p: &Poly<UnivariatePolynomial>) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(p.coeffs().iter().enumerate().flat_map(|(j, cx)| {
            cx.coeffs().iter().enumerate().map(move |(i, c)| ((i as u32, j as u32), c.clone()))
        }))
    }

    /// Builds `sum_i c_i(y) x^i`.
    pub fn from_x_major(p: &Poly<UnivariatePolynomial>) -> BivariatePolynomial {
        BivariatePolynomial::from_y_major(p).swap_xy()
    }

    pub fn from_univariate(p: &UnivariatePolynomial, var: Var) -> BivariatePolynomial {
        let t = p.coeffs().iter().enumerate().map(|(i, c)| {
            let k = match var {
                Var::X => (i as u32, 0),
                Var::Y => (0, i as u32),
            };
            (k, c.clone())
        });
        BivariatePolynomial::from_terms(t)
    }

    pub fn zero() -> BivariatePolynomial {
        BivariatePolynomial::from_terms(std::iter::empty())
    }

    pub fn constant(c: BigInt) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((0, 0), c)])
    }

    pub fn x() -> BivariatePolynomial {
        BivariatePolynomial::from_i64_terms(&[(1, 0, 1)])
    }

    pub fn y() -> BivariatePolynomial {
        BivariatePolynomial::from_i64_terms(&[(0, 1, 1)])
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Degree in y, `None` for the zero polynomial.
    pub fn degree_y(&self) -> Option<usize> {
        self.by_y.degree()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0 as usize).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| (k.0 + k.1) as usize).max()
    }

    /// The coefficients `f_i(x)` of `y^i`.
    pub fn y_coeffs(&self) -> &[UnivariatePolynomial] {
        self.by_y.coeffs()
    }

    pub fn as_y_major(&self) -> &Poly<UnivariatePolynomial> {
        &self.by_y
    }

    /// Dense view as a polynomial in x with coefficients in `Z[y]`.
    pub fn to_x_major(&self) -> Poly<UnivariatePolynomial> {
        self.swap_xy().by_y
    }

    /// Leading coefficient in y, `f_n(x)`.
    pub fn leading_coeff_y(&self) -> UnivariatePolynomial {
        self.by_y.lc()
    }

    pub fn swap_xy(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn add(&self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().chain(o.terms.iter()).map(|(&k, c)| (k, c.clone())))
    }

    pub fn sub(&self, o: &BivariatePolynomial) -> BivariatePolynomial {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().map(|(&k, c)| (k, -c)))
    }

    pub fn mul(&self, o: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                *out.entry((i1 + i2, j1 + j2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        BivariatePolynomial::from_terms(out)
    }

    pub fn scale(&self, c: &BigInt) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn pow(&self, e: u32) -> BivariatePolynomial {
        let mut acc = BivariatePolynomial::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by a polynomial in x only.
    pub fn mul_univariate_x(&self, h: &UnivariatePolynomial) -> BivariatePolynomial {
        self.mul(&BivariatePolynomial::from_univariate(h, Var::X))
    }

    /// `order`-th partial derivative in `var`.
    pub fn derive(&self, var: Var, order: u32) -> BivariatePolynomial {
        let t = self.terms.iter().filter_map(|(&(i, j), c)| {
            let e = match var {
                Var::X => i,
                Var::Y => j,
            };
            if e < order {
                return None;
            }
            let falling: BigInt = (0..order).map(|k| BigInt::from(e - k)).product();
            let key = match var {
                Var::X => (i - order, j),
                Var::Y => (i, j - order),
            };
            Some((key, c * falling))
        });
        BivariatePolynomial::from_terms(t)
    }

    /// `gcd_i f_i(x)`, primitive with positive leading coefficient.
    pub fn content_y(&self) -> Result<UnivariatePolynomial, CurveError> {
        if self.is_zero() {
            return Err(CurveError::ZeroPolynomial("content of the zero polynomial".into()));
        }
        Ok(self.by_y.content().primitive_part())
    }

    /// Integer content of all coefficients (nonnegative).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by a polynomial in x, `None` if it does not divide.
    pub fn div_univariate_x(&self, h: &UnivariatePolynomial) -> Option<BivariatePolynomial> {
        let q: Option<Vec<UnivariatePolynomial>> = self.by_y.coeffs().iter().map(|c| c.div_exact(h)).collect();
        Some(BivariatePolynomial::from_y_major(&Poly::new(q?)))
    }

    /// Exact division, `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &BivariatePolynomial) -> Option<BivariatePolynomial> {
        Ring::div_exact(&self.by_y, &o.by_y).map(|p| BivariatePolynomial::from_y_major(&p))
    }

    /// Gcd in `Z[x, y]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::from_y_major(&Ring::gcd_elem(&self.by_y, &o.by_y))
    }

    /// Primitive part with respect to y (divides out `content_y`).
    pub fn primitive_part_y(&self) -> BivariatePolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let h = self.by_y.content();
        self.div_univariate_x(&h).expect("content divides")
    }

    /// `f(q, y)` as `(c, P)` with `c > 0` rational and `P` primitive in `Z[y]`,
    /// so that `f(q, y) = c * P(y)`. For `f(q, y) = 0`, returns `(0, 0)`.
    pub fn specialize_x_with_content(&self, q: &BigRational) -> (BigRational, UnivariatePolynomial) {
        let vals: Vec<BigRational> = self.by_y.coeffs().iter().map(|c| c.eval_rational(q)).collect();
        let den_lcm = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let ints: Vec<BigInt> = vals.iter().map(|v| (v * BigRational::from_integer(den_lcm.clone())).to_integer()).collect();
        let p = Poly::new(ints);
        if p.is_zero() {
            return (BigRational::zero(), p);
        }
        let g = p.content();
        let prim = Poly::new(p.coeffs().iter().map(|c| c / &g).collect());
        (BigRational::new(g, den_lcm), prim)
    }

    /// `f(q, y)` cleared of denominators and positive content; sign preserved.
    pub fn specialize_x(&self, q: &BigRational) -> UnivariatePolynomial {
        self.specialize_x_with_content(q).1
    }

    pub fn specialize_x_dyadic(&self, q: &Dyadic) -> UnivariatePolynomial {
        self.specialize_x(&q.to_rational())
    }

    /// `f(x, q)` with the same normalization as `specialize_x`.
    pub fn specialize_y(&self, q: &BigRational) -> UnivariatePolynomial {
        self.swap_xy().specialize_x(q)
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.by_y.coeffs().iter().rev() {
            acc = acc * y + c.eval_rational(x);
        }
        acc
    }

    /// Enclosure of the range over `b`: Horner in x for each `f_i`, then in y.
    /// With `prec = Some(p)` intermediate results are rounded outward to `p`
    /// significant bits.
    pub fn eval_box(&self, b: &PlanarBox, prec: Option<u64>) -> DyadicInterval {
        let mut acc = DyadicInterval::zero();
        for c in self.by_y.coeffs().iter().rev() {
            acc = acc.mul(&b.y).add(&c.eval_interval(&b.x, prec));
            if let Some(p) = prec {
                acc = acc.round_outward(p);
            }
        }
        acc
    }

    /// Coefficients `f_i(I)` as intervals for an x-interval `I`.
    pub fn coeff_intervals(&self, x: &DyadicInterval, prec: Option<u64>) -> Vec<DyadicInterval> {
        self.by_y.coeffs().iter().map(|c| c.eval_interval(x, prec)).collect()
    }

    /// Textual form accepted by the CLI parser.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<(BigInt, u32, u32)> = self.terms.iter().map(|(&(i, j), c)| (c.clone(), i, j)).collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.1 + t.2, t.2)));
        format_terms(&terms)
    }
}

/// Formats `(coefficient, x-exponent, y-exponent)` terms as `3*x^2*y - 1`.
pub(crate) fn format_terms(terms: &[(BigInt, u32, u32)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, i, j)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || (*i == 0 && *j == 0) {
            factors.push(a.to_string());
        }
        for (v, e) in [("x", *i), ("y", *j)] {
            match e {
                0 => {}
                1 => factors.push(v.to_string()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl std::ops::Add<&BivariatePolynomial> for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::add(self, o)
    }
}

impl std::ops::Sub<&BivariatePolynomial> for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::sub(self, o)
    }
}

impl std::ops::Mul<&BivariatePolynomial> for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, o: &BivariatePolynomial) -> BivariatePolynomial {
        BivariatePolynomial::mul(self, o)
    }
}

impl std::ops::Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_i64_terms(t)
    }

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn derivatives() {
        assert_eq!(bp(&[(0, 2, 1), (1, 0, -1)]).derive(Var::Y, 1), bp(&[(0, 1, 2)]));
        assert_eq!(bp(&[(0, 3, 1), (2, 0, -1)]).derive(Var::Y, 2), bp(&[(0, 1, 6)]));
        assert_eq!(bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]).derive(Var::X, 1), bp(&[(1, 0, 2)]));
        let f = bp(&[(1, 1, 3)]);
        assert_eq!(f.derive(Var::X, 0), f);
    }

    #[test]
    fn contents() {
        assert_eq!(bp(&[(1, 2, 1), (2, 0, -1)]).content_y().unwrap(), up(&[0, 1]));
        assert_eq!(bp(&[(0, 2, 1), (1, 0, -1)]).content_y().unwrap(), up(&[1]));
        // (x-1) y + (x-1) x
        let p = bp(&[(1, 1, 1), (0, 1, -1), (2, 0, 1), (1, 0, -1)]);
        assert_eq!(p.content_y().unwrap(), up(&[-1, 1]));
        assert!(BivariatePolynomial::zero().content_y().is_err());
    }

    #[test]
    fn specialization() {
        let circle = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        assert_eq!(circle.specialize_x(&q(0, 1)), up(&[-1, 0, 1]));
        let hyp = bp(&[(1, 1, 1), (0, 0, -1)]);
        assert_eq!(hyp.specialize_x(&q(0, 1)), up(&[-1]));
        let par = bp(&[(0, 2, 1), (1, 0, -1)]);
        assert_eq!(par.specialize_x(&q(1, 4)), up(&[-1, 0, 4]));
        let (c, _) = par.specialize_x_with_content(&q(1, 4));
        assert_eq!(c, q(1, 4));
    }

    #[test]
    fn box_evaluation() {
        let circle = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let z = PlanarBox::point(Dyadic::zero(), Dyadic::zero());
        assert_eq!(circle.eval_box(&z, None), DyadicInterval::point(Dyadic::from_i64(-1)));
        let unit = DyadicInterval::new(Dyadic::zero(), Dyadic::one());
        let r = bp(&[(1, 1, 1)]).eval_box(&PlanarBox::new(unit.clone(), unit.clone()), None);
        assert!(r.lo() <= &Dyadic::zero() && r.hi() >= &Dyadic::one());
        let sym = DyadicInterval::new(Dyadic::from_i64(-1), Dyadic::one());
        let r = bp(&[(0, 2, 1), (1, 0, -1)]).eval_box(&PlanarBox::new(unit, sym), None);
        assert!(r.lo() <= &Dyadic::from_i64(-1) && r.hi() >= &Dyadic::one());
    }

    #[test]
    fn gcd_and_division() {
        let a = bp(&[(1, 0, 1), (0, 1, 1)]); // x + y
        let b = bp(&[(1, 0, 1), (0, 1, -1)]); // x - y
        let c = bp(&[(0, 2, 1), (1, 0, -1)]);
        let ac = a.mul(&c);
        let bc = b.mul(&c);
        assert_eq!(ac.gcd(&bc), c);
        assert_eq!(ac.div_exact(&c), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]).to_text(), "y^2 + x^2 - 1");
        assert_eq!(bp(&[(1, 1, -3)]).to_text(), "-3*x*y");
        assert_eq!(BivariatePolynomial::zero().to_text(), "0");
    }
}
