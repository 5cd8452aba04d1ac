//! Arbitrary-precision dyadic numbers `m * 2^e`.
//!
//! Addition, subtraction and multiplication are exact. Everything that can
//! leave the dyadic rationals (division, square roots, conversion from
//! general rationals) takes an explicit precision and rounding direction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
    Nearest,
}

impl Rounding {
    pub fn reversed(self) -> Rounding {
        match self {
            Rounding::Floor => Rounding::Ceil,
            Rounding::Ceil => Rounding::Floor,
            Rounding::Nearest => Rounding::Nearest,
        }
    }
}

/// Exact dyadic rational `mant * 2^exp`, normalized so that `mant` is odd
/// (or zero with `exp == 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// Floor division of `m` by `2^k`.
fn shr_floor(m: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    m.div_floor(&(BigInt::one() << k))
}

fn shr_round(m: &BigInt, k: u64, mode: Rounding) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let d = BigInt::one() << k;
    match mode {
        Rounding::Floor => m.div_floor(&d),
        Rounding::Ceil => -((-m).div_floor(&d)),
        Rounding::Nearest => (m + (BigInt::one() << (k - 1))).div_floor(&d),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        match self.mant.trailing_zeros() {
            None => self.exp = 0,
            Some(0) => {}
            Some(tz) => {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn half(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the most significant bit: `2^(msb-1) <= |self| < 2^msb`.
    /// Returns `i64::MIN` for zero.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).half()
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u64, mode: Rounding) -> Dyadic {
        let prec = prec.max(1);
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let k = bits - prec;
        Dyadic::new(shr_round(&self.mant, k, mode), self.exp + k as i64)
    }

    /// Rounds to a multiple of `2^-frac_bits`.
    pub fn round_abs(&self, frac_bits: i64, mode: Rounding) -> Dyadic {
        let target = -frac_bits;
        if self.exp >= target || self.is_zero() {
            return self.clone();
        }
        let k = (target - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, k, mode), target)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            shr_floor(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn ceil(&self) -> BigInt {
        -((-self).floor())
    }

    /// `self / other` rounded to `prec` significant bits.
    pub fn div(&self, other: &Dyadic, prec: u64, mode: Rounding) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so that the integer quotient carries prec+2 bits.
        let shift = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let (mut q, r) = num.div_mod_floor(&other.mant);
        let exp = self.exp - other.exp - shift as i64;
        let inexact = !r.is_zero();
        if inexact {
            // q is the floor; keep a sticky bit so later rounding sees the remainder.
            q = (q << 1u32) + BigInt::one();
            Dyadic::new(q, exp - 1).round(prec, mode)
        } else {
            Dyadic::new(q, exp).round(prec, mode)
        }
    }

    /// Square root rounded to `prec` significant bits (self must be >= 0).
    pub fn sqrt(&self, prec: u64, mode: Rounding) -> Dyadic {
        assert!(self.signum() >= 0, "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Want m * 2^e with e even and m holding 2*prec+4 bits.
        let mut e = self.exp;
        let mut m = self.mant.clone();
        let want = 2 * prec as i64 + 4 - m.bits() as i64;
        let mut shift = want.max(0);
        if (e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        m <<= shift as u64;
        e -= shift;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let root = if exact {
            Dyadic::new(s, e / 2)
        } else {
            Dyadic::new((s << 1u32) + BigInt::one(), e / 2 - 1)
        };
        root.round(prec, mode)
    }

    /// Smallest dyadic `>= r` with denominator `2^frac_bits` (or `<=` for floor).
    pub fn from_rational(r: &BigRational, frac_bits: i64, mode: Rounding) -> Dyadic {
        let (num, den) = (r.numer(), r.denom());
        let scaled_num = if frac_bits >= 0 {
            num << (frac_bits as u64)
        } else {
            num.clone()
        };
        let scaled_den = if frac_bits >= 0 {
            den.clone()
        } else {
            den << ((-frac_bits) as u64)
        };
        let q = match mode {
            Rounding::Floor => scaled_num.div_floor(&scaled_den),
            Rounding::Ceil => -((-scaled_num).div_floor(&scaled_den)),
            Rounding::Nearest => (scaled_num * BigInt::from(2) + &scaled_den).div_floor(&(scaled_den * BigInt::from(2))),
        };
        Dyadic::new(q, -frac_bits)
    }

    /// Exact conversion when the rational has a power-of-two denominator.
    pub fn try_from_rational(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz).is_one() {
            Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = 60i64;
        let (m, e) = if bits > keep {
            (shr_floor(&self.mant, (bits - keep) as u64), self.exp + bits - keep)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        mf * (e as f64).exp2()
    }

    /// Nearest dyadic to a finite `f64` (exact: every finite double is dyadic).
    pub fn from_f64(v: f64) -> Dyadic {
        assert!(v.is_finite(), "non-finite float");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac as i64, -1074)
        } else {
            ((frac | (1u64 << 52)) as i64, exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(sign * m), e)
    }

    /// Exact fraction string `num/den` (or an integer).
    pub fn to_fraction_string(&self) -> String {
        if self.exp >= 0 {
            (&self.mant << (self.exp as u64)).to_string()
        } else {
            format!("{}/{}", self.mant, BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fraction_string())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fraction_string())
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (self.signum(), other.signum());
        if s1 != s2 {
            return s1.cmp(&s2);
        }
        if s1 == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes by leading-bit position first.
        let (m1, m2) = (self.msb(), other.msb());
        if m1 != m2 {
            let mag = m1.cmp(&m2);
            return if s1 > 0 { mag } else { mag.reverse() };
        }
        if self.exp <= other.exp {
            self.mant.cmp(&(&other.mant << ((other.exp - self.exp) as u64)))
        } else {
            (&self.mant << ((self.exp - other.exp) as u64)).cmp(&other.mant)
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.exp <= rhs.exp {
            Dyadic::new(&self.mant + (&rhs.mant << ((rhs.exp - self.exp) as u64)), self.exp)
        } else {
            Dyadic::new((&self.mant << ((self.exp - rhs.exp) as u64)) + &rhs.mant, rhs.exp)
        }
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -self.mant, exp: self.exp }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Dyadic {
        Dyadic::from_i64(v)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Dyadic {
        Dyadic::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_and_equality() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7), Dyadic::zero());
        assert_eq!(d(6, -1), d(3, 0));
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d(1, -10) < d(1, -9));
        assert!(d(-1, -10) > d(-1, -9));
        assert!(d(3, -1) > d(1, 0));
        assert!(d(-3, 5) < d(1, -100));
    }

    #[test]
    fn rounding_directions() {
        let x = d(11, -3); // 1.375
        assert_eq!(x.round(2, Rounding::Floor), d(1, 0));
        assert_eq!(x.round(2, Rounding::Ceil), d(3, -1));
        assert_eq!((-&x).round(2, Rounding::Floor), d(-3, -1));
        assert_eq!(x.round_abs(1, Rounding::Floor), d(1, 0));
        assert_eq!(x.round_abs(1, Rounding::Ceil), d(3, -1));
    }

    #[test]
    fn division_brackets_quotient() {
        let one = Dyadic::one();
        let three = d(3, 0);
        let lo = one.div(&three, 40, Rounding::Floor);
        let hi = one.div(&three, 40, Rounding::Ceil);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(&hi - &lo <= Dyadic::pow2(-40));
        assert_eq!(d(6, 0).div(&three, 10, Rounding::Floor), d(2, 0));
    }

    #[test]
    fn sqrt_brackets_root() {
        let two = d(2, 0);
        let lo = two.sqrt(50, Rounding::Floor);
        let hi = two.sqrt(50, Rounding::Ceil);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert_eq!(d(9, -4).sqrt(10, Rounding::Floor), d(3, -2));
    }

    #[test]
    fn rational_conversion() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let lo = Dyadic::from_rational(&third, 10, Rounding::Floor);
        let hi = Dyadic::from_rational(&third, 10, Rounding::Ceil);
        assert_eq!(&hi - &lo, Dyadic::pow2(-10));
        assert!(Dyadic::try_from_rational(&third).is_none());
        let q = BigRational::new(BigInt::from(-5), BigInt::from(8));
        assert_eq!(Dyadic::try_from_rational(&q), Some(d(-5, -3)));
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -3.75, 1e-300, 12345.678] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
        assert_eq!(d(-7, -1).floor(), BigInt::from(-4));
        assert_eq!(d(-7, -1).ceil(), BigInt::from(-3));
    }
}
