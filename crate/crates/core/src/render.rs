//! SVG drawings of expanded cut loci, cut-locus trees and planner regions.
//!
//! One length unit is 100 user units and the y axis points up. Face edges
//! are black, cut-locus elements red. The closed expanded polygon is the
//! element with `id="cut-locus"`.

use std::fmt::{self, Write};

use crate::cut_locus::{
    cut_locus_graph, diagram, expanded_cut_locus, special_points, ArcKind, ExpandedCutLocus, Label,
};
use crate::error::{Error, Result};
use crate::planar::PlanarPoint;
use crate::planner::domain_name;
use crate::surface::{reduce_to_canonical, unfold_across, Edge, Face, Placement, Stratum, SurfacePoint, Vertex};
use crate::trace::trace_point;

const SCALE: f64 = 100.0;
const MARGIN: f64 = 0.1;
/// Consecutive polyline samples farther apart than this lie on different
/// copies of a boundary edge of the net.
const JUMP: f64 = 0.3;
const LABEL_OFFSET: f64 = 0.14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    ExpandedCutLocus,
    CutLocus,
    POnEdge,
    POnLineX0,
    PAtCentroid,
    POnCM,
    PDomains,
    QMax,
    E5Star,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::ExpandedCutLocus,
        FigureId::CutLocus,
        FigureId::POnEdge,
        FigureId::POnLineX0,
        FigureId::PAtCentroid,
        FigureId::POnCM,
        FigureId::PDomains,
        FigureId::QMax,
        FigureId::E5Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::ExpandedCutLocus => "expanded_cut_locus",
            FigureId::CutLocus => "cut_locus",
            FigureId::POnEdge => "p_on_edge",
            FigureId::POnLineX0 => "p_on_line_x0",
            FigureId::PAtCentroid => "p_at_centroid",
            FigureId::POnCM => "p_on_CM",
            FigureId::PDomains => "p_domains",
            FigureId::QMax => "q_max",
            FigureId::E5Star => "e5_star",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }

    /// The stratum the figure's source point lives on, if it has one.
    pub fn stratum(self) -> Option<Stratum> {
        match self {
            FigureId::ExpandedCutLocus | FigureId::CutLocus => Some(Stratum::S0Interior),
            FigureId::POnEdge => Some(Stratum::S1EdgeAM),
            FigureId::POnLineX0 => Some(Stratum::S2SegmentAC),
            FigureId::PAtCentroid => Some(Stratum::S3Centroid),
            FigureId::POnCM => Some(Stratum::S4SegmentCM),
            FigureId::PDomains | FigureId::QMax | FigureId::E5Star => None,
        }
    }

    /// Fill in `(x, alpha)` from the defaults and the stratum relations and
    /// check them.
    pub fn resolve(self, params: FigureParams) -> Result<Option<(f64, f64)>> {
        let Some(stratum) = self.stratum() else {
            return match (params.x, params.alpha) {
                (None, None) => Ok(None),
                _ => Err(Error::BadParams(format!("figure {} takes no parameters", self.name()))),
            };
        };
        let (x, alpha) = match stratum {
            Stratum::S0Interior => (params.x.unwrap_or(0.25), params.alpha.unwrap_or(0.5)),
            Stratum::S1EdgeAM => {
                let x = params.x.unwrap_or(0.25);
                (x, params.alpha.unwrap_or(1.0 - x))
            }
            Stratum::S2SegmentAC => (params.x.unwrap_or(0.0), params.alpha.unwrap_or(2.0 / 3.0)),
            Stratum::S3Centroid => (params.x.unwrap_or(0.0), params.alpha.unwrap_or(1.0 / 3.0)),
            Stratum::S4SegmentCM => {
                let x = params.x.unwrap_or(0.25);
                (x, params.alpha.unwrap_or((1.0 + x) / 3.0))
            }
            Stratum::S5VertexA => (0.0, 1.0),
        };
        if !stratum.admits(x, alpha) {
            return Err(Error::BadParams(format!("(x, alpha) = ({x}, {alpha}) is not on stratum {stratum}")));
        }
        Ok(Some((x, alpha)))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FigureParams {
    pub x: Option<f64>,
    pub alpha: Option<f64>,
}

fn num(v: f64) -> String {
    let s = format!("{:.9}", v * SCALE);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000000".to_string()
    } else {
        s
    }
}

fn xy(p: PlanarPoint) -> (String, String) {
    (num(p.x), num(-p.y))
}

fn points_attr(points: &[PlanarPoint]) -> String {
    points
        .iter()
        .map(|&p| {
            let (x, y) = xy(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Accumulates SVG elements and the box the view is fitted to.
struct Svg {
    body: String,
    frame: Vec<PlanarPoint>,
}

impl Svg {
    fn new() -> Self {
        Self { body: String::new(), frame: Vec::new() }
    }

    fn fit(&mut self, points: &[PlanarPoint]) {
        self.frame.extend_from_slice(points);
    }

    fn polygon(&mut self, points: &[PlanarPoint], attrs: &str) {
        let _ = writeln!(self.body, r#"  <polygon points="{}" {attrs}/>"#, points_attr(points));
    }

    fn polyline(&mut self, points: &[PlanarPoint], attrs: &str) {
        let _ = writeln!(self.body, r#"  <polyline points="{}" fill="none" {attrs}/>"#, points_attr(points));
    }

    fn line(&mut self, p: PlanarPoint, q: PlanarPoint, attrs: &str) {
        let ((x1, y1), (x2, y2)) = (xy(p), xy(q));
        let _ = writeln!(self.body, r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {attrs}/>"#);
    }

    fn dot(&mut self, p: PlanarPoint, r: f64, attrs: &str) {
        let (x, y) = xy(p);
        let _ = writeln!(self.body, r#"  <circle cx="{x}" cy="{y}" r="{r}" {attrs}/>"#);
    }

    /// Text placed just outside `p` as seen from `center`.
    fn label(&mut self, p: PlanarPoint, center: PlanarPoint, text: &str, color: &str) {
        let away = p - center;
        let at = if away.norm() < 1e-9 {
            p + PlanarPoint::new(0.0, LABEL_OFFSET)
        } else {
            p + away.normalized() * LABEL_OFFSET
        };
        let (x, y) = xy(at);
        let _ = writeln!(
            self.body,
            r#"  <text x="{x}" y="{y}" font-size="16" font-family="serif" text-anchor="middle" dominant-baseline="middle" fill="{color}">{text}</text>"#
        );
    }

    fn finish(self, title: &str) -> String {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.frame {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let (mx, my) = ((x1 - x0) * MARGIN, (y1 - y0) * MARGIN);
        let (vx, vy) = (x0 - mx, -(y1 + my));
        let (w, h) = (x1 - x0 + 2.0 * mx, y1 - y0 + 2.0 * my);
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">\n\
             \x20 <title>{title}</title>\n{}</svg>\n",
            num(vx),
            num(vy),
            num(w),
            num(h),
            num(w),
            num(h),
            self.body
        )
    }
}

/// A face with its three neighbors unfolded around it, all in the standard
/// chart of `center`.
fn net(center: Face) -> Vec<(Face, Placement)> {
    let std = Placement::standard();
    let mut out = vec![(center, std)];
    out.extend(center.edges().into_iter().map(|e| unfold_across(center, &std, e)));
    out
}

/// Position of `p` in the net, on the copy nearest to `near` when `p` lies
/// on several placed faces.
fn net_position(net: &[(Face, Placement)], p: &SurfacePoint, near: Option<PlanarPoint>) -> PlanarPoint {
    let candidates: Vec<PlanarPoint> =
        net.iter().filter_map(|(f, pl)| p.bary_in(*f).map(|b| pl.to_planar(b))).collect();
    match near {
        Some(n) => {
            candidates.into_iter().min_by(|a, b| a.dist(n).total_cmp(&b.dist(n))).expect("net covers the surface")
        }
        None => candidates[0],
    }
}

/// Face edges in black and vertex names, except where `skip` already
/// carries a label.
fn draw_net(svg: &mut Svg, net: &[(Face, Placement)], skip: &[PlanarPoint]) {
    let center = net[0].1.to_planar([1.0 / 3.0; 3]);
    let mut named: Vec<PlanarPoint> = skip.to_vec();
    for (face, pl) in net {
        svg.polygon(&pl.corners, r#"class="face" fill="none" stroke="black" stroke-width="1""#);
        for v in face.vertices() {
            let at = pl.position(*face, v);
            if named.iter().all(|q| q.dist(at) > 1e-9) {
                svg.label(at, center, &v.to_string(), "black");
                named.push(at);
            }
        }
    }
}

/// Name printed at an expanded-polygon corner, e.g. `U+`, `B` or `d=U`.
pub fn corner_label(labels: &[Label]) -> String {
    let mut parts: Vec<String> = labels
        .iter()
        .filter_map(|l| match l {
            Label::Vertex(v) => Some(v.to_string()),
            _ => None,
        })
        .collect();
    let us: Vec<&Label> = labels.iter().filter(|l| matches!(l, Label::U0 | Label::UPlus | Label::UMinus)).collect();
    let ls: Vec<&Label> = labels.iter().filter(|l| matches!(l, Label::L0 | Label::LPlus | Label::LMinus)).collect();
    if labels.contains(&Label::B) {
        parts.push("B".into());
    } else if parts.is_empty() && us.len() + ls.len() == 1 {
        parts.push(us.iter().chain(&ls).next().unwrap().to_string());
    } else {
        if !us.is_empty() {
            parts.push("U".into());
        }
        if !ls.is_empty() {
            parts.push("L".into());
        }
    }
    parts.join("=")
}

/// The expanded cut locus of any source point, in the chart of the face it
/// is drawn on.
pub fn render_expanded(e: &ExpandedCutLocus, title: &str) -> String {
    let mut svg = Svg::new();
    let polygon: Vec<PlanarPoint> = e.polygon.iter().map(|v| v.point).collect();
    svg.fit(&polygon);
    let net = net(e.chart_face);
    draw_net(&mut svg, &net, &polygon);
    svg.polygon(&polygon, r#"id="cut-locus" fill="none" stroke="red" stroke-width="2""#);
    let center = polygon.iter().fold(PlanarPoint::new(0.0, 0.0), |s, &p| s + p) * (1.0 / polygon.len() as f64);
    for v in &e.polygon {
        svg.label(v.point, center, &corner_label(&v.labels), "red");
    }
    svg.dot(e.source_chart, 3.0, r#"fill="black""#);
    svg.label(e.source_chart, e.source_chart + PlanarPoint::new(0.0, -1.0), "P", "black");
    svg.finish(title)
}

/// The cut-locus tree of a source point on the net around its chart face.
fn render_tree(p: &SurfacePoint, title: &str) -> Result<String> {
    let e = expanded_cut_locus(p);
    let graph = cut_locus_graph(p)?;
    let net = net(e.chart_face);
    let mut svg = Svg::new();
    svg.fit(&net.iter().flat_map(|(_, pl)| pl.corners).collect::<Vec<_>>());
    draw_net(&mut svg, &net, &[]);
    for arc in &graph.arcs {
        let mut runs: Vec<Vec<PlanarPoint>> = vec![Vec::new()];
        for q in &arc.points {
            let prev = runs.last().unwrap().last().copied();
            let at = net_position(&net, q, prev);
            if prev.is_some_and(|r| r.dist(at) > JUMP) {
                runs.push(Vec::new());
            }
            runs.last_mut().unwrap().push(at);
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            svg.polyline(run, r#"class="cut-locus" stroke="red" stroke-width="2""#);
        }
    }
    let nodes: Vec<PlanarPoint> = graph.nodes.iter().map(|n| net_position(&net, &n.point, None)).collect();
    // Push the labels of nearby nodes apart.
    let center = if nodes.len() > 1 { centroid_of(&nodes) } else { net[0].1.to_planar([1.0 / 3.0; 3]) };
    for (node, &at) in graph.nodes.iter().zip(&nodes) {
        svg.dot(at, 4.0, r#"fill="red""#);
        svg.label(at, center, &node.name, "red");
    }
    let source = net_position(&net, p, None);
    svg.dot(source, 3.0, r#"fill="black""#);
    svg.label(source, source + PlanarPoint::new(0.0, -1.0), "P", "black");
    Ok(svg.finish(title))
}

fn centroid_of(points: &[PlanarPoint]) -> PlanarPoint {
    points.iter().fold(PlanarPoint::new(0.0, 0.0), |s, &p| s + p) * (1.0 / points.len() as f64)
}

/// Regions of `P` for the cut-locus arcs out of `d`, one per edge of `abc`.
fn render_domains(title: &str) -> String {
    let net = net(Face::ABC);
    let mut svg = Svg::new();
    svg.fit(&net.iter().flat_map(|(_, pl)| pl.corners).collect::<Vec<_>>());
    let fills = ["#fde0dd", "#e0ecf4", "#e5f5e0"];
    let std = net[0].1;
    let c = std.to_planar([1.0 / 3.0; 3]);
    for (i, edge) in Face::ABC.edges().into_iter().enumerate() {
        let (lo, hi) = (std.position(Face::ABC, edge.lo), std.position(Face::ABC, edge.hi));
        let (face, pl) = net.iter().find(|(f, _)| *f == Face::ABC.across(edge)).unwrap();
        let d = pl.position(*face, Vertex::D);
        svg.polygon(&[lo, c, hi, d], &format!(r#"class="domain" fill="{}" stroke="none""#, fills[i]));
        let sample = SurfacePoint::on_edge(edge, 0.5);
        let name = domain_name(&sample, Vertex::D);
        svg.label(centroid_of(&[lo, hi, d]), centroid_of(&[lo, hi, d]), &name, "black");
    }
    draw_net(&mut svg, &net, &[]);
    for v in Face::ABC.vertices() {
        svg.line(
            c,
            std.position(Face::ABC, v),
            r#"class="excluded" stroke="black" stroke-width="1" stroke-dasharray="6,4""#,
        );
    }
    svg.dot(c, 3.0, r#"fill="black""#);
    svg.label(c, c + PlanarPoint::new(0.0, 1.0), "C", "black");
    svg.finish(title)
}

/// Far end of the cut-locus arc out of `v` for source `p`, if that arc
/// exists.
fn arc_far_end(p: &SurfacePoint, v: Vertex) -> Result<Option<SurfacePoint>> {
    let position = reduce_to_canonical(p);
    let d = diagram(&position);
    let Some(index) = d.pairs.iter().position(|pair| pair.kind == ArcKind::FromVertex(position.g.map_vertex(v))) else {
        return Ok(None);
    };
    let q = trace_point(&position.image, d.arc_point(index, 1.0, false))?;
    Ok(Some(position.g.inverse().apply(&q)))
}

/// Sources in the region `aCcd` (black) and the far ends of their cut-locus
/// arcs out of `d` (red).
fn render_q_max(title: &str) -> Result<String> {
    const STEPS: usize = 12;
    let net = net(Face::ABC);
    let mut svg = Svg::new();
    svg.fit(&net.iter().flat_map(|(_, pl)| pl.corners).collect::<Vec<_>>());
    draw_net(&mut svg, &net, &[]);
    let std = net[0].1;
    let (a, c) = (std.position(Face::ABC, Vertex::A), std.position(Face::ABC, Vertex::C));
    let centroid = std.to_planar([1.0 / 3.0; 3]);
    let (acd, acd_pl) = net.iter().find(|(f, _)| *f == Face::ACD).unwrap();
    let d = acd_pl.position(*acd, Vertex::D);
    svg.polygon(&[a, centroid, c, d], r#"class="domain" fill="none" stroke="black" stroke-width="2""#);
    // Sources: the open triangle aCc of abc and the open face acd.
    let mut sources = Vec::new();
    for i in 1..STEPS {
        for j in 1..STEPS - i {
            let (s, t) = (i as f64 / STEPS as f64, j as f64 / STEPS as f64);
            let w = [1.0 - s - t, s, t];
            // Corners a, C, c of the subtriangle, as weights on abc.
            let abc = [w[0] + w[1] / 3.0, w[1] / 3.0, w[2] + w[1] / 3.0];
            sources.push(SurfacePoint::from_raw(Face::ABC, abc));
            sources.push(SurfacePoint::from_raw(Face::ACD, w));
        }
    }
    for p in &sources {
        let at = net_position(&net, p, None);
        svg.dot(at, 1.5, r#"class="source" fill="black""#);
        if let Some(q) = arc_far_end(p, Vertex::D)? {
            let out = net_position(&net, &q, None);
            svg.dot(out, 1.5, r#"class="q-max" fill="red""#);
        }
    }
    svg.label(centroid, centroid + PlanarPoint::new(0.0, 1.0), "C", "black");
    Ok(svg.finish(title))
}

/// The star of segments from the midpoint of `ac` to `a`, `c` and the
/// centroids of `abc` and `acd`, with its multiplicity-4 partner `B`.
fn render_e5_star(title: &str) -> Result<String> {
    let net = net(Face::ABC);
    let mut svg = Svg::new();
    svg.fit(&net.iter().flat_map(|(_, pl)| pl.corners).collect::<Vec<_>>());
    draw_net(&mut svg, &net, &[]);
    let m = SurfacePoint::midpoint(Edge::new(Vertex::A, Vertex::C));
    let ends = [
        SurfacePoint::vertex(Vertex::A),
        SurfacePoint::vertex(Vertex::C),
        SurfacePoint::centroid(Face::ABC),
        SurfacePoint::centroid(Face::ACD),
    ];
    let mp = net_position(&net, &m, None);
    for end in &ends {
        let at = net_position(&net, end, None);
        svg.line(mp, at, r#"class="star" stroke="red" stroke-width="2""#);
        svg.dot(at, 4.0, r#"fill="white" stroke="red" stroke-width="1.5""#);
        if end.as_vertex().is_none() {
            svg.label(at, at + PlanarPoint::new(0.0, -1.0), "C", "black");
        }
    }
    svg.dot(mp, 3.0, r#"fill="red""#);
    svg.label(mp, mp + PlanarPoint::new(-1.0, 0.0), "M", "black");
    if let Some(b) = special_points(&m)?.b_point {
        let at = net_position(&net, &b.point, None);
        svg.dot(at, 4.0, r#"fill="red""#);
        svg.label(at, at + PlanarPoint::new(-1.0, 0.0), "B", "red");
    }
    Ok(svg.finish(title))
}

pub fn render_figure(fig: FigureId, params: FigureParams) -> Result<String> {
    let resolved = fig.resolve(params)?;
    let title = match resolved {
        Some((x, alpha)) => format!("{fig} x={x} alpha={alpha}"),
        None => fig.to_string(),
    };
    match (fig, resolved) {
        (FigureId::CutLocus, Some((x, alpha))) => render_tree(&Stratum::point(x, alpha), &title),
        (FigureId::PDomains, _) => Ok(render_domains(&title)),
        (FigureId::QMax, _) => render_q_max(&title),
        (FigureId::E5Star, _) => render_e5_star(&title),
        (_, Some((x, alpha))) => Ok(render_expanded(&expanded_cut_locus(&Stratum::point(x, alpha)), &title)),
        (_, None) => unreachable!("every remaining figure has a stratum"),
    }
}

/// Planar vertices of the element with `id="cut-locus"` in a rendered
/// document, in length units.
pub fn cut_locus_vertices(svg: &str) -> Option<Vec<PlanarPoint>> {
    let line = svg.lines().find(|l| l.contains(r#"id="cut-locus""#))?;
    let start = line.find("points=\"")? + 8;
    let end = start + line[start..].find('"')?;
    line[start..end]
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',')?;
            Some(PlanarPoint::new(x.parse::<f64>().ok()? / SCALE, -y.parse::<f64>().ok()? / SCALE))
        })
        .collect()
}
