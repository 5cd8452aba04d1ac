use super::complex::Complex;
use crate::polycore::{Dyadic, DyadicInterval};

/// Simultaneous root approximations. Entries are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AberthState {
    pub z: Vec<Complex>,
    pub iterations: usize,
    /// Working precision in bits of the current stage.
    pub prec: u64,
}

/// Angle offset of the initial configuration, in radians.
const ANGLE_OFFSET: f64 = 0.7;

/// Fujiwara bound `2 max |g_(n-k) / g_n|^(1/k)` (last term halved) on
/// approximate coefficients.
fn fujiwara_bound(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let mut best: f64 = 0.0;
    for k in 1..=n {
        let mut c = coeffs[n - k].abs() / lead;
        if k == n {
            c /= 2.0;
        }
        best = best.max(c.powf(1.0 / k as f64));
    }
    let r = 2.0 * best;
    if r.is_finite() && r > 0.0 {
        r
    } else {
        1.0
    }
}

impl AberthState {
    /// `n` points on a circle of Fujiwara radius, evenly spaced with a fixed
    /// angular offset shifted by `seed`.
    pub fn initial(coeffs: &[Dyadic], seed: u64, prec: u64) -> AberthState {
        let n = coeffs.len() - 1;
        let approx: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect();
        let r = fujiwara_bound(&approx);
        let offset = ANGLE_OFFSET + 0.1 * (seed % 31) as f64;
        let z = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64 + offset;
                Complex::from_f64(r * t.cos(), r * t.sin())
            })
            .collect();
        AberthState { z, iterations: 0, prec }
    }
}

fn horner(coeffs: &[Dyadic], z: &Complex, prec: u64) -> (Complex, Complex) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).add(&p);
        p = p.mul(z, prec).add(&Complex::real(c.clone()));
    }
    (p, dp)
}

/// One Jacobi-style Aberth sweep on the polynomial with coefficients
/// `median` (lowest degree first); `alternate` supplies a second
/// representative used when the derivative of the first vanishes.
pub fn aberth_step(state: &AberthState, median: &[Dyadic], alternate: Option<&[Dyadic]>) -> AberthState {
    let prec = state.prec;
    let n = state.z.len();
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let zi = &state.z[i];
        let (mut p, mut dp) = horner(median, zi, prec);
        if p.is_zero() {
            next.push(zi.clone());
            continue;
        }
        if dp.is_zero() {
            if let Some(alt) = alternate {
                (p, dp) = horner(alt, zi, prec);
            }
        }
        if dp.is_zero() || p.is_zero() {
            next.push(zi.clone());
            continue;
        }
        let ratio = p.div(&dp, prec);
        let mut s = Complex::zero();
        for (j, zj) in state.z.iter().enumerate() {
            if j != i {
                let d = zi.sub(zj);
                s = s.add(&Complex::real(Dyadic::one()).div(&d, prec));
            }
        }
        let denom = Complex::real(Dyadic::one()).sub(&ratio.mul(&s, prec));
        let w = if denom.is_zero() { ratio } else { ratio.div(&denom, prec) };
        next.push(zi.sub(&w).round(prec));
    }
    separate(&mut next, prec);
    AberthState { z: next, iterations: state.iterations + 1, prec }
}

/// Restores pairwise distinctness by deterministic tiny shifts.
fn separate(z: &mut [Complex], prec: u64) {
    let eps = Dyadic::pow2(-(prec as i64) / 2);
    for i in 1..z.len() {
        let mut k = 1i64;
        while z[..i].contains(&z[i]) {
            let shift = Complex::new(eps.clone() * Dyadic::from_i64(k), eps.clone() * Dyadic::from_i64(2 * k + 1));
            z[i] = z[i].add(&shift);
            k += 1;
        }
    }
}

/// Enclosure of `[g](z)` for interval coefficients at an exact point.
pub fn eval_complex(coeffs: &[DyadicInterval], z: &Complex) -> super::complex::ComplexInterval {
    use super::complex::ComplexInterval;
    let mut acc = ComplexInterval::real(DyadicInterval::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul_point(z).add(&ComplexInterval::real(c.clone()));
    }
    acc
}
