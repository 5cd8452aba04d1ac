use num_rational::BigRational;
use std::cmp::Ordering;

use crate::bisolve::BisolveSystem;
use crate::error::Result;
use crate::polycore::{BivariatePolynomial, DyadicInterval, Var};
use crate::realroots::{real_roots, AlgebraicNumber};

use super::graph::{CurveGraph, Vertex, VertexKind};

fn in_closed(b: &mut AlgebraicNumber, iv: &DyadicInterval) -> bool {
    b.cmp_dyadic(iv.lo()) != Ordering::Less && b.cmp_dyadic(iv.hi()) != Ordering::Greater
}

/// Flags the critical points where `f_x` vanishes too. With `p = gcd(f, f_x)`,
/// a polynomial in `y` only, and `g = f / p`, a critical point is singular iff
/// it lies on `p = 0` or solves `g = g_x = 0`. Each isolating interval holds
/// a single root of the fiber, so membership of an exact solution decides.
pub(crate) fn mark_singular(f: &BivariatePolynomial, graph: &mut CurveGraph) -> Result<()> {
    if !graph.vertices.iter().any(|v| v.as_point().is_some_and(|p| p.kind == VertexKind::Critical)) {
        return Ok(());
    }
    let fx = f.derive(Var::X, 1);
    let p = if fx.is_zero() { f.clone() } else { f.gcd(&fx) };
    let g = f.div_exact(&p).expect("gcd divides");
    let mut p_roots = if p.degree_y().unwrap_or(0) > 0 {
        real_roots(&p.specialize_x(&BigRational::from_integer(0.into())))?
    } else {
        Vec::new()
    };
    let system = if g.degree_y().unwrap_or(0) > 0 {
        Some(BisolveSystem::new(&g, &g.derive(Var::X, 1), None)?)
    } else {
        None
    };
    for e in 0..graph.events.len() {
        let col = graph.events[e].column;
        let crit: Vec<usize> = graph.columns[col]
            .vertices
            .iter()
            .copied()
            .filter(|&i| graph.vertices[i].as_point().is_some_and(|p| p.kind == VertexKind::Critical))
            .collect();
        if crit.is_empty() {
            continue;
        }
        let alpha = graph.events[e].fiber.x.clone();
        let mut sols = match &system {
            Some(s) => s.fiber(&alpha)?,
            None => Vec::new(),
        };
        for i in crit {
            let Vertex::Point(pt) = &graph.vertices[i] else { unreachable!() };
            let iv = pt.y.clone();
            let singular = p_roots.iter_mut().any(|r| in_closed(r, &iv)) || sols.iter_mut().any(|s| in_closed(&mut s.y, &iv));
            if let Vertex::Point(pt) = &mut graph.vertices[i] {
                pt.singular = singular;
            }
        }
    }
    Ok(())
}
