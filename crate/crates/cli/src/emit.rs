//! Serialization of curve graphs: JSON with exact coordinates, Graphviz DOT,
//! and an SVG drawing clipped to a bounding box.

use std::fmt::Write as _;

use curvetop::pipeline::{ColumnKind, CurveGraph, Direction, EdgeTag, Vertex, VertexKind, XCoord};
use curvetop::polycore::Dyadic;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

/// Drawing window `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl std::str::FromStr for BoundingBox {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad bounding box component '{p}': {e}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [x0, y0, x1, y1] if x0 < x1 && y0 < y1 && v.iter().all(|c| c.is_finite()) => Ok(BoundingBox { x0, y0, x1, y1 }),
            [_, _, _, _] => Err("bounding box needs x0 < x1 and y0 < y1".into()),
            _ => Err("bounding box is x0,y0,x1,y1".into()),
        }
    }
}

#[derive(Serialize)]
struct JsonX {
    #[serde(skip_serializing_if = "Option::is_none")]
    x_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_den: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defining_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<[String; 2]>,
    x_approx: String,
    x_decimal: f64,
}

fn json_x(x: &XCoord, precision: u64) -> JsonX {
    let approx = x.approximate(precision);
    let mut out = JsonX {
        x_num: None,
        x_den: None,
        defining_poly: None,
        interval: None,
        x_approx: approx.to_fraction_string(),
        x_decimal: approx.to_f64(),
    };
    match x {
        XCoord::Rational(q) => {
            out.x_num = Some(q.numer().to_string());
            out.x_den = Some(q.denom().to_string());
        }
        XCoord::Algebraic(a) => {
            let a = a.refined(&Dyadic::pow2(-(precision as i64)));
            out.defining_poly = Some(a.poly().to_string_in("x"));
            out.interval = Some([a.lo().to_fraction_string(), a.hi().to_fraction_string()]);
        }
    }
    out
}

#[derive(Serialize)]
struct JsonPoint {
    y_lo: String,
    y_hi: String,
    mult: u32,
    kind: &'static str,
}

#[derive(Serialize)]
struct JsonEvent {
    #[serde(flatten)]
    x: JsonX,
    multiplicity: u32,
    method: &'static str,
    asymptote: bool,
    points: Vec<JsonPoint>,
}

#[derive(Serialize)]
struct JsonVertex {
    id: usize,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direction: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mult: Option<u32>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    singular: bool,
}

#[derive(Serialize)]
struct JsonGraph {
    degree: usize,
    events: Vec<JsonEvent>,
    vertical_lines: Vec<JsonX>,
    vertices: Vec<JsonVertex>,
    edges: Vec<(usize, usize, &'static str)>,
}

pub fn kind_str(k: VertexKind) -> &'static str {
    match k {
        VertexKind::Critical => "critical",
        VertexKind::Regular => "regular",
        VertexKind::Intermediate => "intermediate",
        VertexKind::VerticalLine => "vertical-line",
    }
}

fn edge_tag(tag: EdgeTag, vertical_line: bool) -> &'static str {
    match (tag, vertical_line) {
        (EdgeTag::Finite, true) => "vertical",
        (EdgeTag::Ray(Direction::Down), true) => "vertical-ray-down",
        (EdgeTag::Ray(Direction::Up), true) => "vertical-ray-up",
        (t, _) => t.as_str(),
    }
}

/// Stable JSON: fixed key order, exact coordinates as dyadic fraction strings.
pub fn to_json(g: &CurveGraph) -> String {
    let p = g.precision;
    let events = g
        .events
        .iter()
        .map(|e| JsonEvent {
            x: json_x(&g.columns[e.column].x, p),
            multiplicity: e.multiplicity,
            method: e.fiber.provenance.as_str(),
            asymptote: e.fiber.asymptote,
            points: g.columns[e.column]
                .vertices
                .iter()
                .filter_map(|&v| g.vertices[v].as_point())
                .filter(|pt| pt.multiplicity > 0)
                .map(|pt| JsonPoint {
                    y_lo: pt.y.lo().to_fraction_string(),
                    y_hi: pt.y.hi().to_fraction_string(),
                    mult: pt.multiplicity,
                    kind: kind_str(pt.kind),
                })
                .collect(),
        })
        .collect();
    let vertical_lines = g.columns.iter().filter(|c| c.vertical_line).map(|c| json_x(&c.x, p)).collect();
    let vertices = g
        .vertices
        .iter()
        .enumerate()
        .map(|(id, v)| match v {
            Vertex::Point(pt) => JsonVertex {
                id,
                kind: kind_str(pt.kind),
                column: Some(pt.column),
                direction: None,
                x_approx: Some(pt.x_approx.to_fraction_string()),
                y_approx: Some(pt.y_approx.to_fraction_string()),
                y_lo: Some(pt.y.lo().to_fraction_string()),
                y_hi: Some(pt.y.hi().to_fraction_string()),
                mult: Some(pt.multiplicity),
                singular: pt.singular,
            },
            Vertex::Sentinel { direction, column } => JsonVertex {
                id,
                kind: "sentinel",
                column: *column,
                direction: Some(direction.as_str()),
                x_approx: None,
                y_approx: None,
                y_lo: None,
                y_hi: None,
                mult: None,
                singular: false,
            },
        })
        .collect();
    let edges = g.edges.iter().map(|e| (e.a, e.b, edge_tag(e.tag, e.vertical_line))).collect();
    let doc = JsonGraph { degree: g.degree, events, vertical_lines, vertices, edges };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Undirected Graphviz graph; curve points carry `pos` attributes.
pub fn to_dot(g: &CurveGraph) -> String {
    let mut s = String::from("graph curve {\n  node [shape=circle, width=0.08, label=\"\"];\n");
    for (i, v) in g.vertices.iter().enumerate() {
        match v {
            Vertex::Point(p) => {
                let _ = writeln!(
                    s,
                    "  v{i} [pos=\"{},{}!\", kind=\"{}\", mult={}, column={}{}];",
                    p.x_approx.to_f64(),
                    p.y_approx.to_f64(),
                    kind_str(p.kind),
                    p.multiplicity,
                    p.column,
                    if p.singular { ", singular=true" } else { "" }
                );
            }
            Vertex::Sentinel { direction, column } => {
                let col = column.map(|c| format!(", column={c}")).unwrap_or_default();
                let _ = writeln!(s, "  v{i} [shape=point, kind=\"sentinel\", direction=\"{}\"{col}];", direction.as_str());
            }
        }
    }
    for e in &g.edges {
        let style = if matches!(e.tag, EdgeTag::Ray(_)) { ", style=dashed" } else { "" };
        let _ = writeln!(s, "  v{} -- v{} [tag=\"{}\"{style}];", e.a, e.b, edge_tag(e.tag, e.vertical_line));
    }
    s.push_str("}\n");
    s
}

/// Box around all curve points with a margin of one unit.
pub fn default_bbox(g: &CurveGraph) -> BoundingBox {
    let pts: Vec<(f64, f64)> = g.vertices.iter().filter_map(Vertex::as_point).map(|p| (p.x_approx.to_f64(), p.y_approx.to_f64())).collect();
    let xs = g.columns.iter().map(|c| c.x.approximate(g.precision).to_f64());
    let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for x in xs.chain(pts.iter().map(|p| p.0)) {
        x0 = x0.min(x - 1.0);
        x1 = x1.max(x + 1.0);
    }
    for &(_, y) in &pts {
        y0 = y0.min(y - 1.0);
        y1 = y1.max(y + 1.0);
    }
    BoundingBox { x0, y0, x1, y1 }
}

/// Liang–Barsky clipping of a segment to the box.
fn clip(b: &BoundingBox, (ax, ay): (f64, f64), (bx, by): (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (bx - ax, by - ay);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-dx, ax - b.x0), (dx, b.x1 - ax), (-dy, ay - b.y0), (dy, b.y1 - ay)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    (t0 <= t1).then(|| ((ax + t0 * dx, ay + t0 * dy), (ax + t1 * dx, ay + t1 * dy)))
}

const SVG_SIZE: f64 = 800.0;

/// Straight segments for edges, dashed for rays, in a square canvas.
pub fn to_svg(g: &CurveGraph, bbox: &BoundingBox) -> String {
    let sx = SVG_SIZE / (bbox.x1 - bbox.x0);
    let sy = SVG_SIZE / (bbox.y1 - bbox.y0);
    let map = |(x, y): (f64, f64)| ((x - bbox.x0) * sx, (bbox.y1 - y) * sy);
    let pos = |v: usize| g.vertices[v].as_point().map(|p| (p.x_approx.to_f64(), p.y_approx.to_f64()));
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_SIZE}\" height=\"{SVG_SIZE}\" viewBox=\"0 0 {SVG_SIZE} {SVG_SIZE}\">"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for e in &g.edges {
        let Some(a) = pos(e.a) else { continue };
        let (b, dashed) = match (pos(e.b), e.tag) {
            (Some(b), _) => (b, false),
            (None, EdgeTag::Ray(d)) => {
                let column_x = |v: usize| match &g.vertices[v] {
                    Vertex::Sentinel { column: Some(c), .. } => g.columns[*c].x.approximate(g.precision).to_f64(),
                    _ => a.0,
                };
                let far = match d {
                    Direction::Left => (bbox.x0 - 1.0, a.1),
                    Direction::Right => (bbox.x1 + 1.0, a.1),
                    Direction::Down => (column_x(e.b), bbox.y0 - 1.0),
                    Direction::Up => (column_x(e.b), bbox.y1 + 1.0),
                };
                (far, true)
            }
            (None, EdgeTag::Finite) => continue,
        };
        if let Some((p, q)) = clip(bbox, a, b) {
            let (p, q) = (map(p), map(q));
            let color = if e.vertical_line { "#1f77b4" } else { "black" };
            let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
            let _ = writeln!(
                s,
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>",
                p.0, p.1, q.0, q.1
            );
        }
    }
    for v in g.vertices.iter().filter_map(Vertex::as_point) {
        let (x, y) = (v.x_approx.to_f64(), v.y_approx.to_f64());
        if x < bbox.x0 || x > bbox.x1 || y < bbox.y0 || y > bbox.y1 {
            continue;
        }
        let (px, py) = map((x, y));
        let (r, fill) = match (v.singular, v.kind) {
            (true, _) => (4.0, "#d62728"),
            (false, VertexKind::Critical) => (3.0, "#ff7f0e"),
            _ => (2.0, "black"),
        };
        let _ = writeln!(s, "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"{r}\" fill=\"{fill}\"/>");
    }
    s.push_str("</svg>\n");
    s
}

/// Number of columns of each kind, for reports.
pub fn column_summary(g: &CurveGraph) -> (usize, usize, usize) {
    let count = |k| g.columns.iter().filter(|c| c.kind == k).count();
    (count(ColumnKind::Intermediate), count(ColumnKind::Event), count(ColumnKind::VerticalLine))
}
