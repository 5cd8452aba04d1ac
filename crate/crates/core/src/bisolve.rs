//! Certified real solutions of bivariate systems `f = g = 0`.
//!
//! Both resultants are isolated; candidate boxes from their cross product are
//! discarded by interval evaluation until, above each x-root `alpha`, exactly
//! as many remain as `f(alpha, y)` and `g(alpha, y)` have common real roots.
//! That count comes from the signed subresultants of the fiber gcd.

use std::sync::OnceLock;

use crate::elim::{pmv, resultant, signed_subresultant_coeffs, signed_subresultant_poly};
use crate::error::{CurveError, Result};
use crate::polycore::{BivariatePolynomial, PlanarBox, Poly, UnivariatePolynomial, Var};
use crate::realroots::{real_roots, AlgebraicNumber};

/// Bivariate polynomial as a polynomial in `y` over `Z[x]`.
pub(crate) type YPoly = Poly<UnivariatePolynomial>;

/// One real solution with its isolating box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSolution {
    /// Equals `x.interval() × y.interval()`.
    pub bx: PlanarBox,
    pub x: AlgebraicNumber,
    pub y: AlgebraicNumber,
}

impl SystemSolution {
    fn new(x: AlgebraicNumber, y: AlgebraicNumber) -> SystemSolution {
        SystemSolution { bx: PlanarBox::new(x.interval(), y.interval()), x, y }
    }
}

/// Drops the leading y-coefficients that vanish at `alpha`.
pub(crate) fn truncate_at(p: &YPoly, alpha: &AlgebraicNumber) -> YPoly {
    let mut c = p.coeffs().to_vec();
    while c.last().is_some_and(|top| alpha.is_root_of(top)) {
        c.pop();
    }
    Poly::new(c)
}

/// `G` in `Z[x][y]` whose specialization at `alpha` is a gcd of `p(alpha, y)`
/// and `q(alpha, y)` of the same degree; its leading coefficient does not
/// vanish at `alpha`. Fails when both specializations are zero.
pub(crate) fn fiber_gcd(p: &YPoly, q: &YPoly, alpha: &AlgebraicNumber) -> Result<YPoly> {
    let mut a = truncate_at(p, alpha);
    let mut b = truncate_at(q, alpha);
    let mut al = alpha.clone();
    loop {
        match (a.degree(), b.degree()) {
            (None, None) => {
                return Err(CurveError::CommonComponent("both polynomials vanish on the fiber".into()));
            }
            (None, Some(_)) => return Ok(b),
            (Some(_), None) => return Ok(a),
            (Some(0), _) | (_, Some(0)) => return Ok(Poly::one()),
            (Some(da), Some(db)) if da < db => std::mem::swap(&mut a, &mut b),
            (Some(da), Some(db)) if da == db => {
                // same gcd, lower degree
                let r = b.scale(&a.lc()).sub(&a.scale(&b.lc()));
                b = truncate_at(&r, alpha);
            }
            (Some(_), Some(db)) => {
                let s = signed_subresultant_coeffs(&a, &b);
                let d = (0..=db).find(|&j| al.sign_of(&s[j]) != 0).expect("sRes of deg Q is nonzero");
                if d == 0 {
                    return Ok(Poly::one());
                }
                return Ok(signed_subresultant_poly(&a, &b, d));
            }
        }
    }
}

/// Number of distinct real roots of `g(alpha, y)`; the leading coefficient
/// of `g` must not vanish at `alpha`.
pub(crate) fn distinct_real_roots(g: &YPoly, alpha: &AlgebraicNumber) -> usize {
    match g.degree() {
        None | Some(0) => 0,
        Some(1) => 1,
        Some(d) => {
            let s = signed_subresultant_coeffs(g, &g.derivative());
            let mut al = alpha.clone();
            let signs: Vec<i32> = (0..=d).rev().map(|j| al.sign_of(&s[j])).collect();
            pmv(&signs).max(0) as usize
        }
    }
}

fn box_excludes_zero(p: &BivariatePolynomial, bx: &PlanarBox, prec: u64) -> bool {
    !p.eval_box(bx, Some(prec)).contains_zero()
}

/// Lazily solved system; x-fibers are answered independently.
pub struct BisolveSystem {
    f: BivariatePolynomial,
    g: BivariatePolynomial,
    rx: UnivariatePolynomial,
    y_roots: OnceLock<std::result::Result<Vec<AlgebraicNumber>, CurveError>>,
}

impl BisolveSystem {
    /// `rx`, if given, must be `res(f, g, y)` up to a nonzero constant.
    pub fn new(f: &BivariatePolynomial, g: &BivariatePolynomial, rx: Option<UnivariatePolynomial>) -> Result<BisolveSystem> {
        let rx = match rx {
            Some(r) => r,
            None => resultant(f, g, Var::Y)?,
        };
        if rx.is_zero() {
            return Err(CurveError::CommonComponent(format!("{f} and {g} share a factor")));
        }
        Ok(BisolveSystem { f: f.clone(), g: g.clone(), rx, y_roots: OnceLock::new() })
    }

    pub fn x_resultant(&self) -> &UnivariatePolynomial {
        &self.rx
    }

    fn y_candidates(&self) -> Result<&[AlgebraicNumber]> {
        let r = self.y_roots.get_or_init(|| {
            let ry = resultant(&self.f, &self.g, Var::X)?;
            if ry.is_zero() {
                return Err(CurveError::CommonComponent(format!("{} and {} share a factor", self.f, self.g)));
            }
            real_roots(&ry)
        });
        r.as_ref().map(Vec::as_slice).map_err(Clone::clone)
    }

    /// Solutions with x-coordinate `alpha`, sorted by y. `alpha` must be a
    /// real root of `res(f, g, y)`.
    pub fn fiber(&self, alpha: &AlgebraicNumber) -> Result<Vec<SystemSolution>> {
        let gcd = fiber_gcd(self.f.as_y_major(), self.g.as_y_major(), alpha)?;
        let count = distinct_real_roots(&gcd, alpha);
        if count == 0 {
            return Ok(Vec::new());
        }
        let mut a = alpha.clone();
        let mut live: Vec<AlgebraicNumber> = self.y_candidates()?.to_vec();
        let mut prec = 64u64;
        loop {
            live.retain(|b| {
                let bx = PlanarBox::new(a.interval(), b.interval());
                !(box_excludes_zero(&self.f, &bx, prec) || box_excludes_zero(&self.g, &bx, prec))
            });
            if live.len() == count {
                break;
            }
            debug_assert!(live.len() > count, "a solution was excluded");
            a.bisect();
            for b in &mut live {
                b.bisect();
            }
            prec += 8;
        }
        Ok(live.into_iter().map(|b| SystemSolution::new(a.clone(), b)).collect())
    }

    /// All real solutions, sorted by x then y.
    pub fn solve(&self) -> Result<Vec<SystemSolution>> {
        let mut out = Vec::new();
        for alpha in real_roots(&self.rx)? {
            out.extend(self.fiber(&alpha)?);
        }
        Ok(out)
    }
}

/// Disjoint boxes, one per real solution of `f = g = 0`.
pub fn solve_system(f: &BivariatePolynomial, g: &BivariatePolynomial) -> Result<Vec<SystemSolution>> {
    BisolveSystem::new(f, g, None)?.solve()
}

/// The solutions with x-coordinate `alpha`, sorted by y.
pub fn solutions_on_fiber(solutions: &[SystemSolution], alpha: &AlgebraicNumber) -> Vec<SystemSolution> {
    let mut a = alpha.clone();
    let mut out: Vec<SystemSolution> = solutions
        .iter()
        .filter(|s| s.x.clone().compare_mut(&mut a) == std::cmp::Ordering::Equal)
        .cloned()
        .collect();
    out.sort_by(|s, t| crate::realroots::compare(&s.y, &t.y));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Dyadic;

    fn bp(t: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_i64_terms(t)
    }

    fn ys(sols: &[SystemSolution]) -> Vec<(f64, f64)> {
        sols.iter().map(|s| (s.x.to_f64(), s.y.to_f64())).collect()
    }

    #[test]
    fn circle_with_horizontal_axis() {
        let f = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let g = bp(&[(0, 1, 2)]);
        let s = solve_system(&f, &g).unwrap();
        assert_eq!(ys(&s), vec![(-1.0, 0.0), (1.0, 0.0)]);
        assert!(!s[0].bx.intersects(&s[1].bx));
        assert_eq!(solutions_on_fiber(&s, &AlgebraicNumber::from_integer(1)).len(), 1);
        assert!(solutions_on_fiber(&s, &AlgebraicNumber::from_integer(0)).is_empty());
    }

    #[test]
    fn parabola_vertex_and_cusp_derivatives() {
        let s = solve_system(&bp(&[(0, 2, 1), (1, 0, -1)]), &bp(&[(0, 1, 2)])).unwrap();
        assert_eq!(ys(&s), vec![(0.0, 0.0)]);
        // f_y = 2y and f_yy = 2 have no common root
        assert!(solve_system(&bp(&[(0, 1, 2)]), &bp(&[(0, 0, 2)])).unwrap().is_empty());
    }

    #[test]
    fn nodal_cubic_critical_points() {
        let f = bp(&[(0, 2, 1), (3, 0, -1), (2, 0, -1)]);
        let s = solve_system(&f, &f.derive(Var::Y, 1)).unwrap();
        assert_eq!(ys(&s), vec![(-1.0, 0.0), (0.0, 0.0)]);
        let on = solutions_on_fiber(&s, &AlgebraicNumber::from_integer(-1));
        assert_eq!(ys(&on), vec![(-1.0, 0.0)]);
    }

    #[test]
    fn irrational_solutions() {
        // x^2 + y^2 = 2 meets y = x at (±1, ±1); x^2 + y^2 = 3 meets y = x at irrational points
        let f = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -3)]);
        let g = bp(&[(0, 1, 1), (1, 0, -1)]);
        let s = solve_system(&f, &g).unwrap();
        assert_eq!(s.len(), 2);
        let r = (1.5f64).sqrt();
        assert!((s[1].x.to_f64() - r).abs() < 1e-12 && (s[1].y.to_f64() - r).abs() < 1e-12);
        for sol in &s {
            assert!(f.eval_box(&sol.bx, None).contains_zero());
        }
    }

    #[test]
    fn two_solutions_on_one_fiber() {
        // y^2 - 1 = 0 and x = 0
        let s = solve_system(&bp(&[(0, 2, 1), (0, 0, -1)]), &bp(&[(1, 0, 1)])).unwrap();
        assert_eq!(ys(&s), vec![(0.0, -1.0), (0.0, 1.0)]);
    }

    #[test]
    fn common_factor_is_rejected() {
        let f = bp(&[(1, 1, 1)]);
        assert!(solve_system(&f, &f.mul(&bp(&[(1, 0, 1)]))).is_err());
    }

    #[test]
    fn fiber_gcd_handles_degree_drop() {
        // f = x y^2 + y - 1 at x = 0 is y - 1; g = y - 1
        let f = bp(&[(1, 2, 1), (0, 1, 1), (0, 0, -1)]);
        let g = bp(&[(0, 1, 1), (0, 0, -1)]);
        let gcd = fiber_gcd(f.as_y_major(), g.as_y_major(), &AlgebraicNumber::from_integer(0)).unwrap();
        assert_eq!(gcd.degree(), Some(1));
        let s = BisolveSystem::new(&f, &g, None).unwrap();
        let on = s.fiber(&AlgebraicNumber::from_integer(0)).unwrap();
        assert_eq!(ys(&on), vec![(0.0, 1.0)]);
        assert!(on[0].y.interval().contains(&Dyadic::one()));
    }

    #[test]
    fn distinct_count_ignores_multiplicity() {
        // (y^2 - x)^2 at x = 1: two distinct real roots
        let f = bp(&[(0, 2, 1), (1, 0, -1)]).pow(2);
        assert_eq!(distinct_real_roots(f.as_y_major(), &AlgebraicNumber::from_integer(1)), 2);
        assert_eq!(distinct_real_roots(f.as_y_major(), &AlgebraicNumber::from_integer(-1)), 0);
    }
}
