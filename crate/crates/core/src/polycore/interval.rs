//! Closed intervals with dyadic endpoints and outward-rounded arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Rounding};

/// Closed interval `[lo, hi]` with exact dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> DyadicInterval {
        assert!(lo <= hi, "interval with lo > hi: [{lo}, {hi}]");
        DyadicInterval { lo, hi }
    }

    pub fn point(v: Dyadic) -> DyadicInterval {
        DyadicInterval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: &BigInt) -> DyadicInterval {
        DyadicInterval::point(Dyadic::from_int(v.clone()))
    }

    pub fn zero() -> DyadicInterval {
        DyadicInterval::point(Dyadic::zero())
    }

    /// Tightest enclosure of `r` with endpoints on the grid `2^-frac_bits`.
    pub fn from_rational(r: &BigRational, frac_bits: i64) -> DyadicInterval {
        match Dyadic::try_from_rational(r) {
            Some(d) => DyadicInterval::point(d),
            None => DyadicInterval::new(
                Dyadic::from_rational(r, frac_bits, Rounding::Floor),
                Dyadic::from_rational(r, frac_bits, Rounding::Ceil),
            ),
        }
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

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// Sign of every element, or `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Closed intervals share at least one point.
    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then(|| DyadicInterval { lo, hi })
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: Dyadic::min(&self.lo, &other.lo), hi: Dyadic::max(&self.hi, &other.hi) }
    }

    /// Largest absolute value of an element.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Smallest absolute value of an element.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    pub fn bisect(&self) -> (DyadicInterval, DyadicInterval) {
        let m = self.midpoint();
        (DyadicInterval { lo: self.lo.clone(), hi: m.clone() }, DyadicInterval { lo: m, hi: self.hi.clone() })
    }

    /// Widens the endpoints to at most `prec` significant bits.
    pub fn round_outward(&self, prec: u64) -> DyadicInterval {
        DyadicInterval { lo: self.lo.round(prec, Rounding::Floor), hi: self.hi.round(prec, Rounding::Ceil) }
    }

    /// Widens the endpoints onto the grid `2^-frac_bits`.
    pub fn round_outward_abs(&self, frac_bits: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.round_abs(frac_bits, Rounding::Floor),
            hi: self.hi.round_abs(frac_bits, Rounding::Ceil),
        }
    }

    pub fn add(&self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &DyadicInterval) -> DyadicInterval {
        if self.is_point() {
            return o.scale(&self.lo);
        }
        if o.is_point() {
            return self.scale(&o.lo);
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v < &lo {
                lo = v.clone();
            }
            if v > &hi {
                hi = v.clone();
            }
        }
        DyadicInterval { lo, hi }
    }

    /// Multiplication by an exact dyadic.
    pub fn scale(&self, s: &Dyadic) -> DyadicInterval {
        let a = &self.lo * s;
        let b = &self.hi * s;
        if a <= b {
            DyadicInterval { lo: a, hi: b }
        } else {
            DyadicInterval { lo: b, hi: a }
        }
    }

    pub fn square(&self) -> DyadicInterval {
        let lo2 = &self.lo * &self.lo;
        let hi2 = &self.hi * &self.hi;
        if self.contains_zero() {
            DyadicInterval { lo: Dyadic::zero(), hi: Dyadic::max(&lo2, &hi2) }
        } else if lo2 <= hi2 {
            DyadicInterval { lo: lo2, hi: hi2 }
        } else {
            DyadicInterval { lo: hi2, hi: lo2 }
        }
    }

    /// Outward-rounded quotient; `o` must not contain zero.
    pub fn div(&self, o: &DyadicInterval, prec: u64) -> DyadicInterval {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in cands {
            let l = a.div(b, prec, Rounding::Floor);
            let h = a.div(b, prec, Rounding::Ceil);
            if lo.as_ref().map_or(true, |x| &l < x) {
                lo = Some(l);
            }
            if hi.as_ref().map_or(true, |x| &h > x) {
                hi = Some(h);
            }
        }
        DyadicInterval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Axis-parallel box `x-interval × y-interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarBox {
    pub x: DyadicInterval,
    pub y: DyadicInterval,
}

impl PlanarBox {
    pub fn new(x: DyadicInterval, y: DyadicInterval) -> PlanarBox {
        PlanarBox { x, y }
    }

    pub fn point(x: Dyadic, y: Dyadic) -> PlanarBox {
        PlanarBox { x: DyadicInterval::point(x), y: DyadicInterval::point(y) }
    }

    pub fn is_subset_of(&self, other: &PlanarBox) -> bool {
        self.x.is_subset_of(&other.x) && self.y.is_subset_of(&other.y)
    }

    pub fn intersects(&self, other: &PlanarBox) -> bool {
        self.x.intersects(&other.x) && self.y.intersects(&other.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_i64(a), Dyadic::from_i64(b))
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        assert_eq!(iv(-2, 3).mul(&iv(-1, 4)), iv(-8, 12));
        assert_eq!(iv(1, 2).mul(&iv(-3, -1)), iv(-6, -1));
        assert_eq!(iv(-2, 3).square(), iv(0, 9));
        assert_eq!(iv(-3, -2).square(), iv(4, 9));
    }

    #[test]
    fn division_encloses_quotients() {
        let q = iv(1, 2).div(&iv(3, 3), 30);
        let third = BigRational::new(1.into(), 3.into());
        assert!(q.lo().to_rational() < third);
        assert!(q.hi().to_rational() > BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn set_relations() {
        assert!(iv(1, 2).is_subset_of(&iv(0, 2)));
        assert!(iv(0, 1).intersects(&iv(1, 2)));
        assert!(!iv(0, 1).intersects(&iv(2, 3)));
        assert_eq!(iv(0, 3).intersection(&iv(2, 5)), Some(iv(2, 3)));
        assert_eq!(iv(-1, 1).sign(), None);
        assert_eq!(iv(1, 1).sign(), Some(1));
    }
}
