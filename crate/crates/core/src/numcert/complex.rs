use std::fmt;

use crate::polycore::{Dyadic, DyadicInterval, Rounding};

/// Complex number with dyadic parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Complex {
    pub fn new(re: Dyadic, im: Dyadic) -> Complex {
        Complex { re, im }
    }

    pub fn zero() -> Complex {
        Complex::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn real(re: Dyadic) -> Complex {
        Complex::new(re, Dyadic::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Complex {
        Complex::new(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    /// Product rounded to `prec` significant bits per part.
    pub fn mul(&self, o: &Complex, prec: u64) -> Complex {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Complex::new(re.round(prec, Rounding::Nearest), im.round(prec, Rounding::Nearest))
    }

    pub fn scale(&self, s: &Dyadic, prec: u64) -> Complex {
        Complex::new((&self.re * s).round(prec, Rounding::Nearest), (&self.im * s).round(prec, Rounding::Nearest))
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Approximate quotient; `o` must be nonzero.
    pub fn div(&self, o: &Complex, prec: u64) -> Complex {
        let d = o.norm_sqr();
        let num = self.mul(&o.conj(), prec + 8);
        Complex::new(num.re.div(&d, prec, Rounding::Nearest), num.im.div(&d, prec, Rounding::Nearest))
    }

    pub fn round(&self, prec: u64) -> Complex {
        Complex::new(self.re.round(prec, Rounding::Nearest), self.im.round(prec, Rounding::Nearest))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "({a:e} {b:+e}i)")
    }
}

/// Rectangle `re × im` in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl ComplexInterval {
    pub fn point(z: &Complex) -> ComplexInterval {
        ComplexInterval { re: DyadicInterval::point(z.re.clone()), im: DyadicInterval::point(z.im.clone()) }
    }

    pub fn real(re: DyadicInterval) -> ComplexInterval {
        ComplexInterval { re, im: DyadicInterval::zero() }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Product with an exact complex number.
    pub fn mul_point(&self, z: &Complex) -> ComplexInterval {
        ComplexInterval {
            re: self.re.scale(&z.re).sub(&self.im.scale(&z.im)),
            im: self.re.scale(&z.im).add(&self.im.scale(&z.re)),
        }
    }

    pub fn scale_real(&self, s: &DyadicInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn round_outward(&self, prec: u64) -> ComplexInterval {
        ComplexInterval { re: self.re.round_outward(prec), im: self.im.round_outward(prec) }
    }

    /// Enclosure of `self / o`; `o` must exclude zero.
    pub fn div(&self, o: &ComplexInterval, prec: u64) -> ComplexInterval {
        let conj = ComplexInterval { re: o.re.clone(), im: o.im.neg() };
        let num = self.mul(&conj);
        let den = o.re.square().add(&o.im.square());
        ComplexInterval { re: num.re.div(&den, prec), im: num.im.div(&den, prec) }
    }

    /// Midpoint of the rectangle.
    pub fn midpoint(&self) -> Complex {
        Complex::new(self.re.midpoint(), self.im.midpoint())
    }

    /// Upper bound on `|z|` over the rectangle.
    pub fn mag_upper(&self, prec: u64) -> Dyadic {
        let r = self.re.mag();
        let i = self.im.mag();
        (&(&r * &r) + &(&i * &i)).sqrt(prec, Rounding::Ceil)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Complex::from_f64(1.0, 2.0);
        let b = Complex::from_f64(3.0, -1.0);
        assert_eq!(a.mul(&b, 64).to_f64(), (5.0, 5.0));
        let q = a.div(&b, 64).to_f64();
        assert!((q.0 - 0.1).abs() < 1e-15 && (q.1 - 0.7).abs() < 1e-15);
        let ia = ComplexInterval::point(&a);
        let ib = ComplexInterval::point(&b);
        let iq = ia.div(&ib, 64);
        assert!(iq.re.contains(&Dyadic::from_f64(0.1)) || iq.re.width() > Dyadic::zero());
        assert!(ia.mag_upper(30).to_f64() >= 5f64.sqrt());
    }
}
