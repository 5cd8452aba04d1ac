use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::lift::{Fiber, TeissierBoundData};
use crate::polycore::{BivariatePolynomial, Dyadic, DyadicInterval, PlanarBox, Rounding};
use crate::realroots::AlgebraicNumber;

/// Exact x-coordinate of a column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XCoord {
    Rational(BigRational),
    Algebraic(AlgebraicNumber),
}

impl XCoord {
    pub fn from_algebraic(a: &AlgebraicNumber) -> XCoord {
        match a.as_rational() {
            Some(q) => XCoord::Rational(q),
            None => XCoord::Algebraic(a.clone()),
        }
    }

    /// Interval of width at most `2^-bits` around the value.
    pub fn interval(&self, bits: u64) -> DyadicInterval {
        match self {
            XCoord::Rational(q) => DyadicInterval::from_rational(q, bits as i64),
            XCoord::Algebraic(a) => a.refined(&Dyadic::pow2(-(bits as i64))).interval(),
        }
    }

    /// Approximation within `2^-bits`.
    pub fn approximate(&self, bits: u64) -> Dyadic {
        match self {
            XCoord::Rational(q) => Dyadic::from_rational(q, bits as i64, Rounding::Nearest),
            XCoord::Algebraic(a) => a.approximate(bits as i64),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnKind {
    /// Separator between event values.
    Intermediate,
    /// Real root of `res(f, f_y, y)`.
    Event,
    /// Real root of the content that is not an event value.
    VerticalLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// Point with `f_y = 0` above an event value.
    Critical,
    /// Ordinary point above an event value.
    Regular,
    /// Arc representative above a separator.
    Intermediate,
    /// Point added where a vertical line of the content crosses an arc.
    VerticalLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
    Down,
    Up,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
            Direction::Down => "down",
            Direction::Up => "up",
        }
    }
}

/// A point of the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVertex {
    pub column: usize,
    pub y: DyadicInterval,
    pub kind: VertexKind,
    /// Multiplicity as a root of `f'(x, y)` in `y`, where `f'` is the curve
    /// without its vertical lines; 0 for points only on a vertical line.
    pub multiplicity: u32,
    /// Both partial derivatives of `f` vanish here.
    pub singular: bool,
    pub x_approx: Dyadic,
    pub y_approx: Dyadic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertex {
    Point(PointVertex),
    /// End of one unbounded arc: `x -> -inf / +inf`, or `y -> -inf / +inf`
    /// above the column `column`. Each ray owns its sentinel.
    Sentinel { direction: Direction, column: Option<usize> },
}

impl Vertex {
    pub fn as_point(&self) -> Option<&PointVertex> {
        match self {
            Vertex::Point(p) => Some(p),
            Vertex::Sentinel { .. } => None,
        }
    }

    pub fn column(&self) -> Option<usize> {
        match self {
            Vertex::Point(p) => Some(p.column),
            Vertex::Sentinel { column, .. } => *column,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    Finite,
    Ray(Direction),
}

impl EdgeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeTag::Finite => "finite",
            EdgeTag::Ray(Direction::Left) => "ray-left",
            EdgeTag::Ray(Direction::Right) => "ray-right",
            EdgeTag::Ray(Direction::Down) => "ray-down",
            EdgeTag::Ray(Direction::Up) => "ray-up",
        }
    }
}

/// Straight segment; for rays `b` is the sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub tag: EdgeTag,
    /// Part of a vertical line coming from the content.
    pub vertical_line: bool,
}

/// One x-value of the decomposition with its points, bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub x: XCoord,
    pub kind: ColumnKind,
    /// The content vanishes here; the column carries a vertical line.
    pub vertical_line: bool,
    pub vertices: Vec<usize>,
}

/// Event fiber as reported to callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventRecord {
    pub column: usize,
    pub multiplicity: u32,
    pub fiber: Fiber,
    pub bound: TeissierBoundData,
}

/// Straight-line graph isotopic to the real curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGraph {
    /// Total degree of the analyzed polynomial.
    pub degree: usize,
    pub columns: Vec<Column>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub events: Vec<EventRecord>,
    /// Bits of the coordinate approximations.
    pub precision: u64,
}

impl CurveGraph {
    pub fn empty(degree: usize, precision: u64) -> CurveGraph {
        CurveGraph { degree, columns: Vec::new(), vertices: Vec::new(), edges: Vec::new(), events: Vec::new(), precision }
    }

    pub fn add_vertex(&mut self, v: Vertex) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    /// New sentinel plus the ray edge from `from` to it.
    pub fn add_ray(&mut self, from: usize, direction: Direction, column: Option<usize>, vertical_line: bool) {
        let s = self.add_vertex(Vertex::Sentinel { direction, column });
        self.edges.push(Edge { a: from, b: s, tag: EdgeTag::Ray(direction), vertical_line });
    }

    pub fn point_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.as_point().is_some()).count()
    }

    /// Edges between two curve points.
    pub fn finite_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.tag == EdgeTag::Finite).count()
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.edges.iter().map(|e| usize::from(e.a == v) + usize::from(e.b == v)).sum()
    }

    fn union_find(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..parent.len()).map(|i| find(&mut parent, i)).collect()
    }

    /// Connected components of the curve.
    pub fn component_count(&self) -> usize {
        let roots = self.union_find();
        let mut seen: Vec<usize> = roots.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// First Betti number `E - V + C`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    /// Rays going to `y = -inf` or `y = +inf`, excluding vertical lines.
    pub fn asymptote_ray_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.vertical_line && matches!(e.tag, EdgeTag::Ray(Direction::Down | Direction::Up)))
            .count()
    }

    /// Graph degrees of the singular points, keyed by vertex index.
    pub fn singular_degrees(&self) -> BTreeMap<usize, usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.as_point().is_some_and(|p| p.singular))
            .map(|(i, _)| (i, self.degree_of(i)))
            .collect()
    }

    /// Every curve point box meets the zero set of `f` in the sense of
    /// interval evaluation.
    pub fn check_on_curve(&self, f: &BivariatePolynomial, bits: u64) -> bool {
        self.vertices.iter().filter_map(Vertex::as_point).all(|p| {
            let x = self.columns[p.column].x.interval(bits);
            f.eval_box(&PlanarBox::new(x, p.y.clone()), None).contains_zero()
        })
    }

    /// Structure with coordinates and fiber provenance removed: columns with
    /// kinds, vertex kinds and multiplicities, and edges, in the canonical
    /// order the pipeline produces.
    pub fn labeled_structure(&self) -> (Vec<ColumnKind>, Vec<(Option<usize>, String, u32)>, Vec<(usize, usize, EdgeTag, bool)>) {
        let cols = self.columns.iter().map(|c| c.kind).collect();
        let verts = self
            .vertices
            .iter()
            .map(|v| match v {
                Vertex::Point(p) => (Some(p.column), format!("{:?}/{}", p.kind, p.singular), p.multiplicity),
                Vertex::Sentinel { direction, column } => (*column, format!("{direction:?}"), 0),
            })
            .collect();
        let edges = self.edges.iter().map(|e| (e.a, e.b, e.tag, e.vertical_line)).collect();
        (cols, verts, edges)
    }

    /// Isomorphic as labeled graphs when both come from the same construction
    /// order; compares the labeled structure.
    pub fn same_topology(&self, other: &CurveGraph) -> bool {
        self.labeled_structure() == other.labeled_structure()
    }
}
