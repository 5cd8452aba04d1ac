use std::fmt;
use std::sync::{Arc, Mutex};

use crate::polycore::{BivariatePolynomial, Dyadic, DyadicInterval, UnivariatePolynomial};
use crate::realroots::AlgebraicNumber;

/// Source of interval approximations of a fixed limit polynomial.
pub trait CoefficientOracle: Send + Sync {
    /// Degree of the limit polynomial; its leading coefficient is nonzero.
    fn degree(&self) -> usize;
    /// Intervals of width at most `2^-prec`, each containing the exact
    /// coefficient, lowest degree first. Successive calls with growing
    /// `prec` return nested intervals.
    fn approximate(&self, prec: u64) -> Vec<DyadicInterval>;
}

struct ExactOracle {
    coeffs: Vec<DyadicInterval>,
}

impl CoefficientOracle for ExactOracle {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    fn approximate(&self, _prec: u64) -> Vec<DyadicInterval> {
        self.coeffs.clone()
    }
}

/// Coefficients `f_i(alpha)` of `f(alpha, y)` up to its true degree at `alpha`.
struct FiberOracle {
    coeffs: Vec<UnivariatePolynomial>,
    alpha: Mutex<AlgebraicNumber>,
}

impl CoefficientOracle for FiberOracle {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn approximate(&self, prec: u64) -> Vec<DyadicInterval> {
        let mut alpha = self.alpha.lock().expect("fiber oracle lock");
        let half = Dyadic::pow2(-(prec as i64) - 1);
        loop {
            let x = alpha.interval();
            let vals: Vec<DyadicInterval> = self.coeffs.iter().map(|c| c.eval_interval(&x, None)).collect();
            let widest = vals.iter().map(|v| v.width()).max().unwrap_or_else(Dyadic::zero);
            if widest <= half {
                return vals.into_iter().map(|v| v.round_outward_abs(prec as i64 + 2)).collect();
            }
            // each halving of I(alpha) roughly halves every coefficient width
            let deficit = (widest.msb() - half.msb()).max(1);
            let target = alpha.width().mul_pow2(-deficit);
            alpha.refine_to(&target);
        }
    }
}

#[derive(Default)]
struct Cache {
    prec: Option<u64>,
    coeffs: Vec<DyadicInterval>,
}

/// A polynomial known through refinable interval coefficients.
#[derive(Clone)]
pub struct BitstreamPolynomial {
    oracle: Arc<dyn CoefficientOracle>,
    cache: Arc<Mutex<Cache>>,
}

impl BitstreamPolynomial {
    pub fn from_oracle(oracle: Arc<dyn CoefficientOracle>) -> BitstreamPolynomial {
        BitstreamPolynomial { oracle, cache: Arc::new(Mutex::new(Cache::default())) }
    }

    /// Stream of an exactly known integer polynomial (nonzero).
    pub fn exact(p: &UnivariatePolynomial) -> BitstreamPolynomial {
        assert!(!p.is_zero(), "bitstream of the zero polynomial");
        let coeffs = p.coeffs().iter().map(DyadicInterval::from_int).collect();
        BitstreamPolynomial::from_oracle(Arc::new(ExactOracle { coeffs }))
    }

    /// Stream of `f(alpha, y)`. `degree` is the degree of `f(alpha, y)`,
    /// i.e. every coefficient above it vanishes at `alpha`.
    pub fn fiber(f: &BivariatePolynomial, alpha: &AlgebraicNumber, degree: usize) -> BitstreamPolynomial {
        let coeffs: Vec<UnivariatePolynomial> = f.y_coeffs()[..=degree].to_vec();
        if let Some(q) = alpha.as_rational() {
            if alpha.is_exact() || Dyadic::try_from_rational(&q).is_some() {
                let vals = coeffs
                    .iter()
                    .map(|c| DyadicInterval::point(Dyadic::try_from_rational(&c.eval_rational(&q)).unwrap()))
                    .collect();
                return BitstreamPolynomial::from_oracle(Arc::new(ExactOracle { coeffs: vals }));
            }
        }
        BitstreamPolynomial::from_oracle(Arc::new(FiberOracle { coeffs, alpha: Mutex::new(alpha.clone()) }))
    }

    pub fn degree(&self) -> usize {
        self.oracle.degree()
    }

    /// Interval coefficients of width at most `2^-prec`.
    pub fn materialize(&self, prec: u64) -> Vec<DyadicInterval> {
        let mut cache = self.cache.lock().expect("bitstream cache lock");
        if cache.prec.is_some_and(|p| p >= prec) {
            return cache.coeffs.clone();
        }
        let c = self.oracle.approximate(prec);
        debug_assert_eq!(c.len(), self.degree() + 1);
        cache.prec = Some(prec);
        cache.coeffs = c.clone();
        c
    }

    /// Coefficients `(g_i^- + g_i^+) / 2` of the median polynomial.
    pub fn median(&self, prec: u64) -> Vec<Dyadic> {
        self.materialize(prec).iter().map(|c| c.midpoint()).collect()
    }
}

impl fmt::Debug for BitstreamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cache = self.cache.lock().expect("bitstream cache lock");
        write!(f, "BitstreamPolynomial(degree {}, prec {:?})", self.degree(), cache.prec)
    }
}

/// Interval Horner evaluation of interval coefficients at an exact point.
pub fn eval_intervals(coeffs: &[DyadicInterval], x: &Dyadic) -> DyadicInterval {
    coeffs.iter().rev().fold(DyadicInterval::zero(), |acc, c| acc.scale(x).add(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn fiber_stream_converges_and_nests() {
        // f = y^2 - x at alpha = sqrt(2): coefficients (-sqrt2, 0, 1)
        let f = BivariatePolynomial::from_i64_terms(&[(0, 2, 1), (1, 0, -1)]);
        let alpha = AlgebraicNumber::new(
            &UnivariatePolynomial::from_i64s(&[-2, 0, 1]),
            DyadicInterval::new(Dyadic::from_i64(1), Dyadic::from_i64(2)),
        );
        let g = BitstreamPolynomial::fiber(&f, &alpha, 2);
        let c20 = g.materialize(20);
        let c60 = g.materialize(60);
        assert!(c60[0].is_subset_of(&c20[0]));
        assert!(c60[0].width() <= Dyadic::pow2(-60));
        let v = -std::f64::consts::SQRT_2;
        assert!(c60[0].lo().to_f64() <= v && v <= c60[0].hi().to_f64());
        assert_eq!(c60[2], DyadicInterval::from_int(&BigInt::from(1)));
    }

    #[test]
    fn exact_and_dyadic_fibers_are_points() {
        let f = BivariatePolynomial::from_i64_terms(&[(0, 2, 1), (1, 0, -1)]);
        let g = BitstreamPolynomial::fiber(&f, &AlgebraicNumber::from_integer(4), 2);
        assert!(g.materialize(10).iter().all(|c| c.is_point()));
        let p = BitstreamPolynomial::exact(&UnivariatePolynomial::from_i64s(&[-1, 0, 1]));
        assert_eq!(p.degree(), 2);
    }
}
