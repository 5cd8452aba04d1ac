//! Minimal integral-domain abstraction shared by integer and polynomial
//! coefficients, so that the same pseudo-division, gcd and determinant code
//! runs over `Z`, `Z[x]` and `Z[x][y]`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integral domain with exact division and a normalized gcd.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / o` when the division is exact in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// Greatest common divisor, normalized to a positive leading sign.
    fn gcd_elem(&self, o: &Self) -> Self;
    /// Whether the leading coefficient (recursively) is negative.
    fn is_lead_negative(&self) -> bool;

    fn is_one_elem(&self) -> bool {
        *self == Self::one_elem()
    }

    fn power(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_elem();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Unit-normal associate (positive leading sign).
    fn normalized(&self) -> Self {
        if self.is_lead_negative() {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl Ring for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd_elem(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_lead_negative(&self) -> bool {
        self.is_negative()
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one_elem();
    }
    let mut negate = false;
    let mut prev = R::one_elem();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return R::zero_elem(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.negated()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_small_determinants() {
        assert_eq!(bareiss_determinant(mat(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(bareiss_determinant(mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_determinant(mat(&[&[1, 0, -1], &[0, 2, 0], &[2, 0, 0]])), BigInt::from(4));
        assert_eq!(bareiss_determinant(mat(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn integer_gcd_is_nonnegative() {
        assert_eq!(Ring::gcd_elem(&BigInt::from(-12), &BigInt::from(18)), BigInt::from(6));
        assert_eq!(BigInt::from(-3).normalized(), BigInt::from(3));
    }
}
