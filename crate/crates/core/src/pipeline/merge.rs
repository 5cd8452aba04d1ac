use std::cmp::Ordering;

use crate::error::{CurveError, Result};
use crate::lift::ordinary_fiber;
use crate::polycore::{BivariatePolynomial, Dyadic, DyadicInterval, UnivariatePolynomial};
use crate::realroots::{real_roots, AlgebraicNumber};

use super::graph::{Column, ColumnKind, CurveGraph, Direction, Edge, EdgeTag, Vertex, VertexKind, XCoord};
use super::point_vertex;

fn cmp_column(r: &mut AlgebraicNumber, x: &XCoord) -> Ordering {
    match x {
        XCoord::Rational(q) => r.cmp_rational(q),
        XCoord::Algebraic(a) => r.compare_mut(&mut a.clone()),
    }
}

enum Place {
    /// The line passes through an existing column.
    Existing(usize),
    /// New column inserted before `position`; `strip` is the separator
    /// column whose arcs the line crosses.
    Insert { position: usize, strip: Option<usize> },
}

/// Adds the vertical lines `x = alpha` for the real roots of `h` to the
/// graph of `V(f)`: arcs crossing a line are subdivided at a new column,
/// and each line becomes a chain through its column with a ray at each end.
/// `graph` must be the unmerged analysis of `f`.
pub fn merge_vertical_lines(mut graph: CurveGraph, h: &UnivariatePolynomial, f: &BivariatePolynomial) -> Result<CurveGraph> {
    let roots = real_roots(h)?;
    if roots.is_empty() {
        return Ok(graph);
    }
    let precision = graph.precision;
    let width = Dyadic::pow2(-(precision as i64));
    let has_y = f.degree_y().unwrap_or(0) > 0;

    let mut places = Vec::with_capacity(roots.len());
    for r in &roots {
        let mut r = r.clone();
        let mut position = graph.columns.len();
        let mut existing = None;
        for (c, col) in graph.columns.iter().enumerate() {
            match cmp_column(&mut r, &col.x) {
                Ordering::Less => {
                    position = c;
                    break;
                }
                Ordering::Equal => {
                    existing = Some(c);
                    break;
                }
                Ordering::Greater => {}
            }
        }
        places.push(match existing {
            Some(c) => Place::Existing(c),
            None => {
                let n = graph.columns.len();
                let strip = if n == 0 {
                    None
                } else if position == 0 {
                    Some(0)
                } else if position == n || graph.columns[position - 1].kind == ColumnKind::Intermediate {
                    Some(position - 1)
                } else {
                    Some(position)
                };
                Place::Insert { position, strip }
            }
        });
    }

    // renumber: inserts are sorted by position, so insert i lands at position + i
    let inserted: Vec<usize> = places
        .iter()
        .filter_map(|p| match p {
            Place::Insert { position, .. } => Some(*position),
            Place::Existing(_) => None,
        })
        .collect();
    let remap = |c: usize| c + inserted.iter().filter(|&&p| p <= c).count();
    for v in &mut graph.vertices {
        match v {
            Vertex::Point(p) => p.column = remap(p.column),
            Vertex::Sentinel { column: Some(c), .. } => *c = remap(*c),
            Vertex::Sentinel { column: None, .. } => {}
        }
    }
    for e in &mut graph.events {
        e.column = remap(e.column);
    }
    let mut old_columns = std::mem::take(&mut graph.columns).into_iter();
    let mut line_columns = Vec::with_capacity(roots.len());
    let mut subdivisions: Vec<(usize, usize)> = Vec::new();
    let mut next_old = 0;
    for (r, place) in roots.iter().zip(&places) {
        match place {
            Place::Existing(c) => line_columns.push(remap(*c)),
            Place::Insert { position, strip } => {
                while next_old < *position {
                    graph.columns.push(old_columns.next().expect("column"));
                    next_old += 1;
                }
                let col = graph.columns.len();
                let x = XCoord::from_algebraic(r);
                let xa = x.approximate(precision);
                let pts = if has_y { ordinary_fiber(f, r, Some(&width))?.points } else { Vec::new() };
                let vs: Vec<usize> = pts
                    .iter()
                    .map(|p| graph.add_vertex(point_vertex(col, &xa, &p.y, VertexKind::VerticalLine, p.multiplicity, precision)))
                    .collect();
                graph.columns.push(Column { x, kind: ColumnKind::VerticalLine, vertical_line: true, vertices: vs });
                line_columns.push(col);
                if let Some(s) = strip {
                    subdivisions.push((remap(*s), col));
                }
            }
        }
    }
    graph.columns.extend(old_columns);
    for &c in &line_columns {
        graph.columns[c].vertical_line = true;
        // curve points on a vertical line are crossings of two components
        for i in graph.columns[c].vertices.clone() {
            if let Vertex::Point(p) = &mut graph.vertices[i] {
                p.singular = true;
            }
        }
    }

    // farthest first, so each cut splits the edge between the separator
    // point and the previous cut
    subdivisions.sort_by_key(|&(s, c)| (s, c < s, std::cmp::Reverse(s.abs_diff(c))));
    for &(s, c) in &subdivisions {
        let arcs = graph.columns[s].vertices.clone();
        let cuts = graph.columns[c].vertices.clone();
        if arcs.len() != cuts.len() {
            return Err(CurveError::CertificationFailed(format!(
                "{} points on the vertical line but {} arcs in its strip",
                cuts.len(),
                arcs.len()
            )));
        }
        for (&v, &w) in arcs.iter().zip(&cuts) {
            subdivide(&mut graph, v, w, s, c)?;
        }
    }

    for &c in &line_columns {
        if graph.columns[c].vertices.is_empty() {
            let xa = graph.columns[c].x.approximate(precision);
            let v = graph.add_vertex(point_vertex(
                c,
                &xa,
                &DyadicInterval::point(Dyadic::zero()),
                VertexKind::VerticalLine,
                0,
                precision,
            ));
            graph.columns[c].vertices.push(v);
        }
        let vs = graph.columns[c].vertices.clone();
        graph.add_ray(vs[0], Direction::Down, Some(c), true);
        for w in vs.windows(2) {
            graph.edges.push(Edge { a: w[0], b: w[1], tag: EdgeTag::Finite, vertical_line: true });
        }
        graph.add_ray(vs[vs.len() - 1], Direction::Up, Some(c), true);
    }
    Ok(graph)
}

/// Column of a vertex for side tests; horizontal sentinels sit at the ends.
fn side_key(v: &Vertex) -> i64 {
    match v {
        Vertex::Point(p) => p.column as i64,
        Vertex::Sentinel { direction: Direction::Left, .. } => i64::MIN,
        Vertex::Sentinel { direction: Direction::Right, .. } => i64::MAX,
        Vertex::Sentinel { column, .. } => column.expect("vertical ray has a column") as i64,
    }
}

/// Splits the edge leaving the separator point `v` towards column `c` at
/// the new point `w`.
fn subdivide(graph: &mut CurveGraph, v: usize, w: usize, s: usize, c: usize) -> Result<()> {
    let left = c < s;
    let found = graph.edges.iter().position(|e| {
        if e.vertical_line || (e.a != v && e.b != v) {
            return false;
        }
        let o = if e.a == v { e.b } else { e.a };
        let k = side_key(&graph.vertices[o]);
        if left { k < s as i64 } else { k > s as i64 }
    });
    let Some(idx) = found else {
        return Err(CurveError::CertificationFailed(format!("no arc edge leaves column {s} towards column {c}")));
    };
    let e = graph.edges[idx].clone();
    let o = if e.a == v { e.b } else { e.a };
    let inner = if left { Edge { a: w, b: v, tag: EdgeTag::Finite, vertical_line: false } } else { Edge { a: v, b: w, tag: EdgeTag::Finite, vertical_line: false } };
    graph.edges[idx] = inner;
    let outer = match e.tag {
        EdgeTag::Ray(_) => Edge { a: w, b: o, tag: e.tag, vertical_line: false },
        EdgeTag::Finite if left => Edge { a: o, b: w, tag: EdgeTag::Finite, vertical_line: false },
        EdgeTag::Finite => Edge { a: w, b: o, tag: EdgeTag::Finite, vertical_line: false },
    };
    graph.edges.push(outer);
    Ok(())
}
