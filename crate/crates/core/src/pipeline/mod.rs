//! End-to-end analysis: content and square-freeness, projection, fibers,
//! connections, graph assembly and the vertical lines of the content.

mod graph;
mod merge;
mod project;
mod singular;

use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use graph::{
    Column, ColumnKind, CurveGraph, Direction, Edge, EdgeTag, EventRecord, PointVertex, Vertex, VertexKind, XCoord,
};
pub use merge::merge_vertical_lines;
pub use project::{project, project_factored, simplest_between, Event, Projection};

use crate::connect::{connect, is_generic, ArcSet, ConnectionMap, Side, Target};
use crate::error::{CurveError, Result};
use crate::lift::{
    fast_lift, intermediate_fiber, lift_complete, teissier_bound, Fiber, LiftContext, Provenance, TeissierBoundData,
};
use crate::numcert::SolverConfig;
use crate::polycore::{BivariatePolynomial, Dyadic, Rounding, UnivariatePolynomial, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Fiber intervals are refined to width `2^-precision`; coordinate
    /// approximations carry as many fractional bits.
    pub precision: u64,
    /// Precision-doubling stages granted to the numerical filter.
    pub fastlift_budget: u32,
    /// Skip the numerical filter and lift every event completely.
    pub force_lift: bool,
    /// Replace `f` by its square-free part instead of rejecting it.
    pub make_squarefree: bool,
    pub seed: u64,
    /// Use the counting rule for connections where it applies.
    pub generic_connection: bool,
    pub parallel: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            precision: 30,
            fastlift_budget: 4,
            force_lift: false,
            make_squarefree: false,
            seed: 0,
            generic_connection: true,
            parallel: true,
        }
    }
}

/// `m*` against the number of distinct complex roots above one event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeissierRecord {
    pub m_star: usize,
    pub distinct_complex: usize,
    pub real_points: usize,
    pub asymptote: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub preprocessing: Duration,
    pub projection: Duration,
    pub lifting: Duration,
    pub connection: Duration,
    pub assembly: Duration,
    pub merge: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.preprocessing + self.projection + self.lifting + self.connection + self.assembly + self.merge
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalysisReport {
    pub events: usize,
    pub vertical_lines: usize,
    pub intermediate_fibers: usize,
    pub fastlift_fibers: usize,
    pub lift_fibers: usize,
    /// Events lifted completely, whether the filter failed or was skipped.
    pub fastlift_failures: usize,
    pub generic_connections: usize,
    pub nongeneric_connections: usize,
    pub teissier: Vec<TeissierRecord>,
    pub timings: PhaseTimings,
}

impl AnalysisReport {
    /// Events whose bound `m*` equals the distinct complex root count.
    pub fn teissier_sharp(&self) -> usize {
        self.teissier.iter().filter(|t| t.m_star == t.distinct_complex).count()
    }
}

fn par_map<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// `f = h(x) * f'` with `h = content_y(f)`, both checked (or made)
/// square-free.
pub fn split_content(f: &BivariatePolynomial, make_squarefree: bool) -> Result<(UnivariatePolynomial, BivariatePolynomial)> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial("cannot analyze the zero polynomial".into()));
    }
    if f.is_constant() {
        return Err(CurveError::ConstantPolynomial);
    }
    let mut h = f.content_y()?;
    let mut fp = f.div_univariate_x(&h).expect("content divides");
    let hg = h.gcd(&h.derivative());
    if !hg.is_constant() {
        if !make_squarefree {
            return Err(CurveError::NotSquarefree(format!(
                "repeated vertical line: gcd(h, h') = {} for the content h = {}",
                hg.to_string_in("x"),
                h.to_string_in("x")
            )));
        }
        h = h.squarefree_part();
    }
    if fp.degree_y().unwrap_or(0) > 0 {
        let g = fp.gcd(&fp.derive(Var::Y, 1));
        if g.degree_y().unwrap_or(0) > 0 {
            if !make_squarefree {
                return Err(CurveError::NotSquarefree(format!("gcd(f, f_y) = {g} is not constant")));
            }
            fp = fp.div_exact(&g).expect("gcd divides");
        }
    }
    Ok((h, fp))
}

/// Certified straight-line graph isotopic to the real zero set of `f`.
pub fn analyze(f: &BivariatePolynomial, config: &AnalysisConfig) -> Result<(CurveGraph, AnalysisReport)> {
    let mut report = AnalysisReport::default();
    let degree = f.total_degree().unwrap_or(0);
    let t0 = Instant::now();
    let (h, fp) = split_content(f, config.make_squarefree)?;
    report.timings.preprocessing = t0.elapsed();

    let mut graph = if fp.degree_y().unwrap_or(0) == 0 {
        CurveGraph::empty(degree, config.precision)
    } else {
        analyze_content_free(&fp, degree, config, &mut report)?
    };

    if !h.is_constant() {
        let t = Instant::now();
        graph = merge_vertical_lines(graph, &h, &fp)?;
        report.vertical_lines = graph.columns.iter().filter(|c| c.vertical_line).count();
        report.timings.merge = t.elapsed();
    }
    Ok((graph, report))
}

struct EventFiber {
    fiber: Fiber,
    bound: TeissierBoundData,
    distinct_complex: usize,
}

fn lift_event(ctx: &LiftContext, ev: &Event, config: &AnalysisConfig, width: &Dyadic) -> Result<EventFiber> {
    let bound = teissier_bound(ctx, &ev.x);
    let distinct_complex = ctx.distinct_complex_roots(&ev.x)?;
    if !config.force_lift && config.fastlift_budget > 0 {
        let solver = SolverConfig { stages: config.fastlift_budget, seed: config.seed, ..SolverConfig::default() };
        if let Some(fiber) = fast_lift(ctx, &ev.x, &bound, &solver, Some(width))? {
            return Ok(EventFiber { fiber, bound, distinct_complex });
        }
    }
    let fiber = lift_complete(ctx, &ev.x, Some(width))?;
    Ok(EventFiber { fiber, bound, distinct_complex })
}

fn analyze_content_free(
    f: &BivariatePolynomial,
    degree: usize,
    config: &AnalysisConfig,
    report: &mut AnalysisReport,
) -> Result<CurveGraph> {
    let width = Dyadic::pow2(-(config.precision as i64));

    let t = Instant::now();
    let ctx = LiftContext::new(f)?;
    let proj = project_factored(ctx.resultant_factorization())?;
    report.timings.projection = t.elapsed();
    report.events = proj.events.len();

    let t = Instant::now();
    let seps: Vec<Fiber> = par_map(&proj.separators, config.parallel, |q| intermediate_fiber(f, q, Some(&width)))
        .into_iter()
        .collect::<Result<_>>()?;
    let events: Vec<EventFiber> = par_map(&proj.events, config.parallel, |ev| lift_event(&ctx, ev, config, &width))
        .into_iter()
        .collect::<Result<_>>()?;
    report.timings.lifting = t.elapsed();
    report.intermediate_fibers = seps.len();
    for e in &events {
        match e.fiber.provenance {
            Provenance::FastLift => report.fastlift_fibers += 1,
            Provenance::Lift | Provenance::Descartes => report.lift_fibers += 1,
        }
        report.teissier.push(TeissierRecord {
            m_star: e.bound.m_star,
            distinct_complex: e.distinct_complex,
            real_points: e.fiber.len(),
            asymptote: e.bound.asymptote,
        });
    }
    report.fastlift_failures = report.lift_fibers;

    let t = Instant::now();
    let arcs: Vec<ArcSet> =
        proj.separators.iter().zip(&seps).map(|(q, fib)| ArcSet { q: q.clone(), fiber: fib.clone() }).collect();
    let indices: Vec<usize> = (0..events.len()).collect();
    let conns: Vec<(ConnectionMap, ConnectionMap)> = par_map(&indices, config.parallel, |&k| {
        let fib = &events[k].fiber;
        let l = connect(f, fib, &arcs[k], Side::Left, config.generic_connection)?;
        let r = connect(f, fib, &arcs[k + 1], Side::Right, config.generic_connection)?;
        Ok((l, r))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    for (k, e) in events.iter().enumerate() {
        for a in [&arcs[k], &arcs[k + 1]] {
            if config.generic_connection && is_generic(&e.fiber, a) {
                report.generic_connections += 1;
            } else {
                report.nongeneric_connections += 1;
            }
        }
    }
    report.timings.connection = t.elapsed();

    let t = Instant::now();
    let mut graph = assemble(degree, config.precision, &proj, &seps, events, &conns);
    singular::mark_singular(f, &mut graph)?;
    report.timings.assembly = t.elapsed();
    Ok(graph)
}

pub(crate) fn point_vertex(
    column: usize,
    x_approx: &Dyadic,
    y: &crate::polycore::DyadicInterval,
    kind: VertexKind,
    multiplicity: u32,
    precision: u64,
) -> Vertex {
    Vertex::Point(PointVertex {
        column,
        y: y.clone(),
        kind,
        multiplicity,
        singular: false,
        x_approx: x_approx.clone(),
        y_approx: y.midpoint().round_abs(precision as i64, Rounding::Nearest),
    })
}

/// Columns alternate separator, event, ..., separator. Each arc over a strip
/// is the edge pair through its separator point; its ends are the targets
/// of the neighbouring connection maps, or horizontal rays at the ends.
fn assemble(
    degree: usize,
    precision: u64,
    proj: &Projection,
    seps: &[Fiber],
    events: Vec<EventFiber>,
    conns: &[(ConnectionMap, ConnectionMap)],
) -> CurveGraph {
    let mut g = CurveGraph::empty(degree, precision);
    let ne = events.len();
    let mut sep_verts: Vec<Vec<usize>> = Vec::with_capacity(ne + 1);
    let mut ev_verts: Vec<Vec<usize>> = Vec::with_capacity(ne);
    let mut event_fibers = events.into_iter();
    for k in 0..=ne {
        let col = g.columns.len();
        let x = XCoord::Rational(proj.separators[k].clone());
        let xa = x.approximate(precision);
        let vs: Vec<usize> = seps[k]
            .points
            .iter()
            .map(|p| g.add_vertex(point_vertex(col, &xa, &p.y, VertexKind::Intermediate, 1, precision)))
            .collect();
        g.columns.push(Column { x, kind: ColumnKind::Intermediate, vertical_line: false, vertices: vs.clone() });
        sep_verts.push(vs);
        if k == ne {
            break;
        }
        let e = event_fibers.next().expect("one fiber per event");
        let col = g.columns.len();
        let x = XCoord::from_algebraic(&e.fiber.x);
        let xa = x.approximate(precision);
        let vs: Vec<usize> = e
            .fiber
            .points
            .iter()
            .map(|p| {
                let kind = if p.critical { VertexKind::Critical } else { VertexKind::Regular };
                g.add_vertex(point_vertex(col, &xa, &p.y, kind, p.multiplicity, precision))
            })
            .collect();
        g.columns.push(Column { x, kind: ColumnKind::Event, vertical_line: false, vertices: vs.clone() });
        g.events.push(EventRecord { column: col, multiplicity: proj.events[k].multiplicity, fiber: e.fiber, bound: e.bound });
        ev_verts.push(vs);
    }
    for k in 0..=ne {
        for (j, &v) in sep_verts[k].iter().enumerate() {
            if k == 0 {
                g.add_ray(v, Direction::Left, None, false);
            } else {
                let ecol = 2 * k - 1;
                match conns[k - 1].1.targets[j] {
                    Target::Point(i) => g.edges.push(Edge { a: ev_verts[k - 1][i], b: v, tag: EdgeTag::Finite, vertical_line: false }),
                    Target::MinusInfinity => g.add_ray(v, Direction::Down, Some(ecol), false),
                    Target::PlusInfinity => g.add_ray(v, Direction::Up, Some(ecol), false),
                }
            }
            if k == ne {
                g.add_ray(v, Direction::Right, None, false);
            } else {
                let ecol = 2 * k + 1;
                match conns[k].0.targets[j] {
                    Target::Point(i) => g.edges.push(Edge { a: v, b: ev_verts[k][i], tag: EdgeTag::Finite, vertical_line: false }),
                    Target::MinusInfinity => g.add_ray(v, Direction::Down, Some(ecol), false),
                    Target::PlusInfinity => g.add_ray(v, Direction::Up, Some(ecol), false),
                }
            }
        }
    }
    g
}
