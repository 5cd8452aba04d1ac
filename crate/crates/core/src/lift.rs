//! Fibers of the curve: certified real roots of `f(alpha, y)` with
//! multiplicities, by a numerical filter with a degree certificate, by the
//! complete derivative cascade, or exactly at rational x-values.

use num_rational::BigRational;

use crate::bisolve::{distinct_real_roots, fiber_gcd, truncate_at, BisolveSystem, YPoly};
use crate::elim::{multiplicity_at, resultant, yun_squarefree, SquareFreeFactorization};
use crate::error::{CurveError, Result};
use crate::numcert::{BitstreamPolynomial, SolveOutcome, SolveSession, SolverConfig};
use crate::polycore::{BivariatePolynomial, Dyadic, DyadicInterval, PlanarBox, Var};
use crate::realroots::{bitstream_isolate_simple, real_roots, AlgebraicNumber, MultipleRootInterval};

/// Method that produced a fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    FastLift,
    Lift,
    Descartes,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FastLift => "fastlift",
            Provenance::Lift => "lift",
            Provenance::Descartes => "descartes",
        }
    }
}

/// A real root `beta` of `f(alpha, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    /// Contains `beta` and no other root of `f(alpha, y)`.
    pub y: DyadicInterval,
    pub multiplicity: u32,
    /// `f_y(alpha, beta) = 0`, i.e. multiplicity at least two.
    pub critical: bool,
}

impl FiberPoint {
    fn new(y: DyadicInterval, multiplicity: u32) -> FiberPoint {
        FiberPoint { y, multiplicity, critical: multiplicity > 1 }
    }
}

/// Real roots of `f(alpha, y)` sorted by `y`, with pairwise disjoint intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub x: AlgebraicNumber,
    /// The exact x-value when it is rational.
    pub rational: Option<BigRational>,
    pub points: Vec<FiberPoint>,
    /// `deg f(alpha, y) < deg_y f`.
    pub asymptote: bool,
    /// `deg f(alpha, y)`.
    pub degree: usize,
    pub provenance: Provenance,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn critical_count(&self) -> usize {
        self.points.iter().filter(|p| p.critical).count()
    }

    /// Same count, same multiplicities and pairwise overlapping intervals.
    pub fn agrees_with(&self, other: &Fiber) -> bool {
        self.points.len() == other.points.len()
            && self
                .points
                .iter()
                .zip(&other.points)
                .all(|(a, b)| a.multiplicity == b.multiplicity && a.y.intersects(&b.y))
    }
}

/// Degree data behind the bound `m*` on the distinct complex roots of `f(alpha, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeissierBoundData {
    pub m_star: usize,
    pub mult_r: u32,
    pub mult_q: u32,
    pub asymptote: bool,
}

/// Per-curve data shared by all fibers; immutable once built.
pub struct LiftContext {
    f: BivariatePolynomial,
    /// `derivs[k]` is the k-th y-derivative of `f`.
    derivs: Vec<BivariatePolynomial>,
    r: SquareFreeFactorization,
    /// Square-free factorization of `res(f_x / h, f_y / h, y)`; `None` stands for 1.
    q: Option<SquareFreeFactorization>,
    system: BisolveSystem,
}

impl LiftContext {
    /// `f` must be square-free with `deg_y f >= 1`.
    pub fn new(f: &BivariatePolynomial) -> Result<LiftContext> {
        let dy = f.degree_y().unwrap_or(0);
        if dy == 0 {
            return Err(CurveError::Precondition("curve has no y-dependence".into()));
        }
        let derivs: Vec<BivariatePolynomial> = (0..=dy as u32).map(|k| f.derive(Var::Y, k)).collect();
        let r_poly = resultant(f, &derivs[1], Var::Y)?;
        if r_poly.is_zero() {
            return Err(CurveError::NotSquarefree(format!("res({f}, f_y, y) vanishes")));
        }
        let r = yun_squarefree(&r_poly)?;
        let fx = f.derive(Var::X, 1);
        let q = if fx.is_zero() {
            None
        } else {
            let h = fx.gcd(&derivs[1]);
            let fx_s = fx.div_exact(&h).expect("gcd divides f_x");
            let fy_s = derivs[1].div_exact(&h).expect("gcd divides f_y");
            let qp = resultant(&fx_s, &fy_s, Var::Y)?;
            if qp.is_zero() { None } else { Some(yun_squarefree(&qp)?) }
        };
        let system = BisolveSystem::new(f, &derivs[1], Some(r_poly))?;
        Ok(LiftContext { f: f.clone(), derivs, r, q, system })
    }

    pub fn curve(&self) -> &BivariatePolynomial {
        &self.f
    }

    /// Square-free factorization of `R = res(f, f_y, y)`.
    pub fn resultant_factorization(&self) -> &SquareFreeFactorization {
        &self.r
    }

    pub fn degree_y(&self) -> usize {
        self.derivs.len() - 1
    }

    /// `f` with the leading y-coefficients vanishing at `alpha` dropped.
    fn fiber_poly(&self, alpha: &AlgebraicNumber) -> YPoly {
        truncate_at(self.f.as_y_major(), alpha)
    }

    /// Number of distinct complex roots of `f(alpha, y)`.
    pub fn distinct_complex_roots(&self, alpha: &AlgebraicNumber) -> Result<usize> {
        let n = self.fiber_poly(alpha).degree().unwrap_or(0);
        let g = fiber_gcd(self.f.as_y_major(), self.derivs[1].as_y_major(), alpha)?;
        Ok(n - g.degree().unwrap_or(0))
    }
}

/// `m*` for an event value `alpha`.
pub fn teissier_bound(ctx: &LiftContext, alpha: &AlgebraicNumber) -> TeissierBoundData {
    let n = ctx.fiber_poly(alpha).degree().unwrap_or(0);
    let mult_r = multiplicity_at(&ctx.r, alpha);
    let mult_q = ctx.q.as_ref().map_or(0, |q| multiplicity_at(q, alpha));
    let dy = ctx.degree_y();
    if n < dy {
        return TeissierBoundData { m_star: n, mult_r, mult_q, asymptote: true };
    }
    let raw = (dy as i64 - i64::from(mult_r) + i64::from(mult_q)).max(0) as usize;
    TeissierBoundData { m_star: raw.min(n), mult_r, mult_q, asymptote: false }
}

/// Certified fiber from Aberth clusters, accepted only when exactly `m*`
/// clusters are found. `Ok(None)` reports failure.
pub fn fast_lift(
    ctx: &LiftContext,
    alpha: &AlgebraicNumber,
    bound: &TeissierBoundData,
    config: &SolverConfig,
    width: Option<&Dyadic>,
) -> Result<Option<Fiber>> {
    let n = ctx.fiber_poly(alpha).degree().unwrap_or(0);
    let mut fiber = Fiber {
        x: alpha.clone(),
        rational: alpha.as_rational(),
        points: Vec::new(),
        asymptote: n < ctx.degree_y(),
        degree: n,
        provenance: Provenance::FastLift,
    };
    if n == 0 {
        return Ok(Some(fiber));
    }
    if config.stages == 0 || bound.m_star == 0 {
        return Ok(None);
    }
    let g = BitstreamPolynomial::fiber(&ctx.f, alpha, n);
    let mut session = SolveSession::new(g, bound.m_star, config.clone());
    let outcome = match session.solve() {
        Ok(o) => o,
        Err(CurveError::PrecisionExhausted(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if let SolveOutcome::Failure(_) = outcome {
        return Ok(None);
    }
    match session.extract_real_roots(width) {
        Ok(roots) => {
            fiber.points = roots.into_iter().map(|(y, m)| FiberPoint::new(y, m)).collect();
            Ok(Some(fiber))
        }
        Err(CurveError::CertificationFailed(_) | CurveError::PrecisionExhausted(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn excludes_zero(p: &BivariatePolynomial, x: &DyadicInterval, y: &DyadicInterval) -> bool {
    !p.eval_box(&PlanarBox::new(x.clone(), y.clone()), None).contains_zero()
}

/// Shrinks the isolating interval of a simple root `beta` of `f(alpha, y)`
/// to width at most `width` by exact sign evaluation.
fn refine_simple(f: &BivariatePolynomial, alpha: &mut AlgebraicNumber, iv: DyadicInterval, width: &Dyadic) -> DyadicInterval {
    let sign_at = |alpha: &mut AlgebraicNumber, y: &Dyadic| alpha.sign_of(&f.specialize_y(&y.to_rational()));
    let (mut lo, mut hi) = (iv.lo().clone(), iv.hi().clone());
    if &(&hi - &lo) <= width {
        return iv;
    }
    let s_lo = sign_at(alpha, &lo);
    debug_assert_ne!(s_lo, 0);
    while &(&hi - &lo) > width {
        let m = Dyadic::midpoint(&lo, &hi);
        let s = sign_at(alpha, &m);
        if s == 0 {
            return DyadicInterval::point(m);
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    DyadicInterval::new(lo, hi)
}

/// Interval around an exact root `b` with `p` nonzero on `x × [b - d, b + d]`
/// and staying inside `(lo_bound, hi_bound)`.
fn widen_exact(p: &BivariatePolynomial, x: &DyadicInterval, b: &Dyadic, lo_bound: Option<&Dyadic>, hi_bound: Option<&Dyadic>) -> DyadicInterval {
    let mut d = Dyadic::one();
    for bound in [lo_bound, hi_bound].into_iter().flatten() {
        while &(b - bound).abs() <= &d.mul_pow2(1) {
            d = d.half();
        }
    }
    loop {
        let iv = DyadicInterval::new(b - &d, b + &d);
        if excludes_zero(p, x, &iv) {
            return iv;
        }
        d = d.half();
    }
}

/// Complete fiber: multiple roots from the derivative cascade over
/// `f = f_y = 0`, simple roots from bitstream subdivision.
pub fn lift_complete(ctx: &LiftContext, alpha: &AlgebraicNumber, width: Option<&Dyadic>) -> Result<Fiber> {
    let fa = ctx.fiber_poly(alpha);
    let n = fa.degree().unwrap_or(0);
    let mut fiber = Fiber {
        x: alpha.clone(),
        rational: alpha.as_rational(),
        points: Vec::new(),
        asymptote: n < ctx.degree_y(),
        degree: n,
        provenance: Provenance::Lift,
    };
    if n == 0 {
        return Ok(fiber);
    }
    let mut a = alpha.clone();
    let mut pending: Vec<AlgebraicNumber> = ctx.system.fiber(alpha)?.into_iter().map(|s| s.y).collect();
    let mut multiple: Vec<(AlgebraicNumber, u32)> = Vec::new();
    let mut gcd = fiber_gcd(ctx.f.as_y_major(), ctx.derivs[1].as_y_major(), alpha)?;
    let mut k = 2usize;
    while !pending.is_empty() {
        // the level-k gcd has degree sum(m - k + 1) over complex roots with m >= k,
        // so equality with the real count pins every pending root at k
        let last = gcd.degree() == Some(pending.len());
        let next = if last { None } else { Some(fiber_gcd(&gcd, ctx.derivs[k].as_y_major(), alpha)?) };
        let leave = match &next {
            Some(next) => pending.len() - distinct_real_roots(next, alpha),
            None => pending.len(),
        };
        // a root leaves once d^k f / dy^k excludes zero on its box: by Rolle
        // the box then holds no other root of f(alpha, y)
        let mut marked = vec![false; pending.len()];
        let mut done = 0;
        loop {
            for (i, b) in pending.iter().enumerate() {
                if !marked[i] && excludes_zero(&ctx.derivs[k], &a.interval(), &b.interval()) {
                    marked[i] = true;
                    done += 1;
                }
            }
            if done == leave {
                break;
            }
            a.bisect();
            for (i, b) in pending.iter_mut().enumerate() {
                if !marked[i] {
                    b.bisect();
                }
            }
        }
        let mut rest = Vec::new();
        for (b, m) in pending.into_iter().zip(marked) {
            if m {
                multiple.push((b, k as u32));
            } else {
                rest.push(b);
            }
        }
        pending = rest;
        let Some(next) = next else { break };
        gcd = next;
        k += 1;
    }
    multiple.sort_by(|s, t| crate::realroots::compare(&s.0, &t.0));
    // isolating intervals with the root in the interior
    let mut windows = Vec::with_capacity(multiple.len());
    for (i, (b, k)) in multiple.iter().enumerate() {
        let iv = if b.is_exact() {
            let lo = i.checked_sub(1).map(|j| multiple[j].0.hi().clone());
            let hi = multiple.get(i + 1).map(|(c, _)| c.lo().clone());
            widen_exact(&ctx.derivs[*k as usize], &a.interval(), b.lo(), lo.as_ref(), hi.as_ref())
        } else {
            b.interval()
        };
        windows.push(MultipleRootInterval { interval: iv, multiplicity: *k });
    }
    let g = BitstreamPolynomial::fiber(&ctx.f, alpha, n);
    let simple = bitstream_isolate_simple(&g, &windows)?;
    for iv in simple {
        let iv = match width {
            Some(w) => refine_simple(&ctx.f, &mut a, iv, w),
            None => iv,
        };
        fiber.points.push(FiberPoint::new(iv, 1));
    }
    for (mut b, k) in multiple {
        if let Some(w) = width {
            b.refine_to(w);
        }
        fiber.points.push(FiberPoint::new(b.interval(), k));
    }
    fiber.points.sort_by(|p, q| p.y.lo().cmp(q.y.lo()));
    let total: usize = fiber.points.iter().map(|p| p.multiplicity as usize).sum();
    if total > n {
        return Err(CurveError::CertificationFailed(format!("real multiplicities sum to {total} > degree {n}")));
    }
    Ok(fiber)
}

/// Fiber above a rational `q` that is not an event value: all roots simple,
/// isolated exactly.
pub fn intermediate_fiber(f: &BivariatePolynomial, q: &BigRational, width: Option<&Dyadic>) -> Result<Fiber> {
    let (_, p) = f.specialize_x_with_content(q);
    if p.is_zero() {
        return Err(CurveError::Precondition(format!("the curve contains the line x = {q}")));
    }
    if !p.is_squarefree() {
        return Err(CurveError::NotSquarefree(format!("f({q}, y) = {p} has a repeated root")));
    }
    let mut points = Vec::new();
    for mut r in real_roots(&p)? {
        if let Some(w) = width {
            r.refine_to(w);
        }
        points.push(FiberPoint::new(r.interval(), 1));
    }
    let degree = p.degree().unwrap_or(0);
    Ok(Fiber {
        x: AlgebraicNumber::from_rational(q),
        rational: Some(q.clone()),
        points,
        asymptote: degree < f.degree_y().unwrap_or(0),
        degree,
        provenance: Provenance::Descartes,
    })
}

/// Fiber above an algebraic `alpha` that is not an event value.
pub fn ordinary_fiber(f: &BivariatePolynomial, alpha: &AlgebraicNumber, width: Option<&Dyadic>) -> Result<Fiber> {
    if let Some(q) = alpha.as_rational() {
        return intermediate_fiber(f, &q, width);
    }
    let n = truncate_at(f.as_y_major(), alpha).degree().unwrap_or(0);
    let mut a = alpha.clone();
    let mut points = Vec::new();
    if n > 0 {
        let g = BitstreamPolynomial::fiber(f, alpha, n);
        for iv in bitstream_isolate_simple(&g, &[])? {
            let iv = match width {
                Some(w) => refine_simple(f, &mut a, iv, w),
                None => iv,
            };
            points.push(FiberPoint::new(iv, 1));
        }
    }
    Ok(Fiber {
        x: alpha.clone(),
        rational: None,
        points,
        asymptote: n < f.degree_y().unwrap_or(0),
        degree: n,
        provenance: Provenance::Descartes,
    })
}
