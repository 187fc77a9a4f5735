//! SVG pictures of rank-two levels and rank-three arrangements.
//!
//! Affine rank-three levels are planes and are drawn as honeycombs of alcove
//! triangles. Hyperbolic levels are hyperboloid sheets, drawn in the Poincaré
//! disc after diagonalising the level form and moving the fundamental alcove
//! to the centre. Root hyperplanes become geodesics there, computed exactly
//! from the plane they cut out.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arrangement::Region;
use crate::charge::level_form;
use crate::error::{Error, Result};
use crate::flow::{Direction, FlowAssignment};
use crate::graph::GraphType;
use crate::linalg::jacobi_eigen;
use crate::root::{CoxeterSystem, RootVec, ThetaVec};
use crate::tol;

pub type Point = [f64; 2];

/// Above this circle radius a geodesic is drawn as a diameter.
const DIAMETER_RADIUS: f64 = 1e6;
const ARROW_SIZE: f64 = 7.0;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub size: f64,
    pub stroke_width: f64,
    pub wall_color: String,
    pub alcove_fill: String,
    pub arrow_color: String,
    pub level_color: String,
    pub cone_color: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 1000.0,
            stroke_width: 1.5,
            wall_color: "#333333".into(),
            alcove_fill: "#dde8f5".into(),
            arrow_color: "#c0392b".into(),
            level_color: "#1f5fa8".into(),
            cone_color: "#888888".into(),
        }
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// A minimal SVG writer with fixed-precision coordinates.
#[derive(Clone, Debug)]
pub struct SvgDoc {
    width: f64,
    height: f64,
    elements: Vec<String>,
}

impl SvgDoc {
    pub fn new(width: f64, height: f64) -> Self {
        SvgDoc { width, height, elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn line(&mut self, a: Point, b: Point, class: &str, style: &str) {
        self.elements.push(format!(
            r#"<line class="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" style="{}"/>"#,
            esc(class),
            a[0],
            a[1],
            b[0],
            b[1],
            esc(style)
        ));
    }

    pub fn circle(&mut self, c: Point, r: f64, class: &str, style: &str) {
        self.elements.push(format!(
            r#"<circle class="{}" cx="{:.3}" cy="{:.3}" r="{:.3}" style="{}"/>"#,
            esc(class),
            c[0],
            c[1],
            r,
            esc(style)
        ));
    }

    pub fn polygon(&mut self, pts: &[Point], class: &str, style: &str) {
        self.elements.push(format!(
            r#"<polygon class="{}" points="{}" style="{}"/>"#,
            esc(class),
            points_attr(pts),
            esc(style)
        ));
    }

    pub fn polyline(&mut self, pts: &[Point], class: &str, style: &str) {
        self.elements.push(format!(
            r#"<polyline class="{}" points="{}" style="{}"/>"#,
            esc(class),
            points_attr(pts),
            esc(style)
        ));
    }

    pub fn path(&mut self, d: &str, class: &str, style: &str) {
        self.elements.push(format!(r#"<path class="{}" d="{}" style="{}"/>"#, esc(class), esc(d), esc(style)));
    }

    pub fn title(&mut self, text: &str) {
        self.elements.push(format!("<title>{}</title>", esc(text)));
    }

    pub fn count_class(&self, class: &str) -> usize {
        let needle = format!(r#"class="{}""#, esc(class));
        self.elements.iter().filter(|e| e.contains(&needle)).count()
    }

    pub fn to_svg_string(&self) -> String {
        let mut s = String::new();
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = self.width,
            h = self.height
        )
        .unwrap();
        for e in &self.elements {
            writeln!(s, "  {e}").unwrap();
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write(&self, path: &std::path::Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_svg_string())
    }
}

fn points_attr(pts: &[Point]) -> String {
    pts.iter().map(|p| format!("{:.3},{:.3}", p[0], p[1])).collect::<Vec<_>>().join(" ")
}

/// Affine map from model coordinates to the canvas (y flipped).
#[derive(Clone, Copy, Debug)]
struct View {
    scale: f64,
    cx: f64,
    cy: f64,
    mx: f64,
    my: f64,
}

impl View {
    fn fit(pts: &[Point], size: f64, margin: f64) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        View {
            scale: (size - 2.0 * margin) / span,
            cx: (lo[0] + hi[0]) / 2.0,
            cy: (lo[1] + hi[1]) / 2.0,
            mx: size / 2.0,
            my: size / 2.0,
        }
    }

    fn centred(half_width: f64, size: f64) -> Self {
        View { scale: size / (2.0 * half_width), cx: 0.0, cy: 0.0, mx: size / 2.0, my: size / 2.0 }
    }

    fn at(&self, p: Point) -> Point {
        [self.mx + self.scale * (p[0] - self.cx), self.my - self.scale * (p[1] - self.cy)]
    }
}

fn arrow(doc: &mut SvgDoc, at: Point, dir: Point, color: &str) {
    let len = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt();
    if len < 1e-12 {
        return;
    }
    let (ux, uy) = (dir[0] / len, dir[1] / len);
    let s = ARROW_SIZE;
    let tip = [at[0] + ux * s, at[1] + uy * s];
    let l = [at[0] - ux * s - uy * s * 0.6, at[1] - uy * s + ux * s * 0.6];
    let r = [at[0] - ux * s + uy * s * 0.6, at[1] - uy * s - ux * s * 0.6];
    doc.polygon(&[tip, l, r], "arrow", &format!("fill:{color};stroke:none"));
}

/// Screen direction of the arrow across a wall, from the lower side to the
/// upper side.
fn arrow_dir(flow: &FlowAssignment, wall: usize, base: Point, other: Point) -> Point {
    let d = [other[0] - base[0], other[1] - base[1]];
    match flow.direction(wall) {
        Some(Direction::Below) => [-d[0], -d[1]],
        _ => d,
    }
}

/// A geodesic of the Poincaré disc with its two ideal endpoints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GeodesicArc {
    Diameter { a: Point, b: Point },
    Circle { center: Point, radius: f64, a: Point, b: Point },
}

impl GeodesicArc {
    /// Geodesic cut out by the plane `n·y = 0` in hyperboloid coordinates
    /// `y₀² − y₁² − y₂² = 1`; `None` if the plane misses the sheet.
    pub fn from_plane(n: [f64; 3]) -> Option<Self> {
        let h = (n[1] * n[1] + n[2] * n[2]).sqrt();
        if h <= n[0].abs() * (1.0 + 1e-12) {
            return None;
        }
        let v = [-n[2] / h, n[1] / h];
        if n[0].abs() * DIAMETER_RADIUS < h {
            return Some(GeodesicArc::Diameter { a: v, b: [-v[0], -v[1]] });
        }
        // |p + n'/n₀|² = |n'|²/n₀² − 1
        let c = [-n[1] / n[0], -n[2] / n[0]];
        let cn = h / n[0].abs();
        let radius = (cn * cn - 1.0).sqrt();
        let cu = [c[0] / cn, c[1] / cn];
        let t = (1.0 - 1.0 / (cn * cn)).sqrt();
        let a = [cu[0] / cn + v[0] * t, cu[1] / cn + v[1] * t];
        let b = [cu[0] / cn - v[0] * t, cu[1] / cn - v[1] * t];
        Some(GeodesicArc::Circle { center: c, radius, a, b })
    }

    pub fn endpoints(&self) -> (Point, Point) {
        match *self {
            GeodesicArc::Diameter { a, b } | GeodesicArc::Circle { a, b, .. } => (a, b),
        }
    }

    /// `|c|² − 1 − r²`, zero for a circle orthogonal to the boundary.
    pub fn orthogonality_defect(&self) -> f64 {
        match *self {
            GeodesicArc::Diameter { .. } => 0.0,
            GeodesicArc::Circle { center, radius, .. } => {
                center[0] * center[0] + center[1] * center[1] - 1.0 - radius * radius
            }
        }
    }

    /// Distance-like defect of `p` from the geodesic.
    pub fn defect_at(&self, p: Point) -> f64 {
        match *self {
            GeodesicArc::Diameter { a, .. } => (a[0] * p[1] - a[1] * p[0]).abs(),
            GeodesicArc::Circle { center, radius, .. } => {
                (((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt() - radius).abs()
            }
        }
    }

    fn svg_path(&self, view: &View) -> String {
        let (a, b) = self.endpoints();
        let (sa, sb) = (view.at(a), view.at(b));
        match *self {
            GeodesicArc::Diameter { .. } => format!("M {:.3} {:.3} L {:.3} {:.3}", sa[0], sa[1], sb[0], sb[1]),
            GeodesicArc::Circle { center, radius, .. } => {
                let sc = view.at(center);
                let cross = (sb[0] - sa[0]) * (sc[1] - sa[1]) - (sb[1] - sa[1]) * (sc[0] - sa[0]);
                let sweep = (cross > 0.0) as u8;
                let r = radius * view.scale;
                format!("M {:.3} {:.3} A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", sa[0], sa[1], sb[0], sb[1])
            }
        }
    }
}

/// Whether two geodesics cross at an interior point of the disc: their
/// ideal endpoints must strictly interleave on the boundary circle.
pub fn geodesics_cross(g: &GeodesicArc, h: &GeodesicArc, eps: f64) -> bool {
    let ang = |p: Point| p[1].atan2(p[0]);
    let (a1, a2) = g.endpoints();
    let (lo, hi) = {
        let (x, y) = (ang(a1), ang(a2));
        (x.min(y), x.max(y))
    };
    let inside = |p: Point| {
        let t = ang(p);
        t > lo + eps && t < hi - eps
    };
    let outside = |p: Point| {
        let t = ang(p);
        t < lo - eps || t > hi + eps
    };
    let (b1, b2) = h.endpoints();
    (inside(b1) && outside(b2)) || (outside(b1) && inside(b2))
}

fn inv3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let c = |r: usize, k: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        m[r1][k1] * m[r2][k2] - m[r1][k2] * m[r2][k1]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    if det.abs() < 1e-300 {
        return None;
    }
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = c(j, i) / det;
        }
    }
    Some(out)
}

fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat3_vec(a: &[[f64; 3]; 3], v: &[f64]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

fn minkowski(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2]
}

/// Linear map from the dual space of a rank-three hyperbolic graph to
/// hyperboloid coordinates, composed with the disc projection.
#[derive(Clone, Debug)]
pub struct DiscMap {
    m: [[f64; 3]; 3],
    m_inv_t: [[f64; 3]; 3],
}

impl DiscMap {
    pub fn new(adj: &[Vec<f64>]) -> Result<Self> {
        let (vals, vecs) =
            jacobi_eigen(adj).ok_or_else(|| Error::DiagonalizationFailed("Jacobi sweep did not converge".into()))?;
        if vals.len() != 3 || !(vals[0] > tol::NONZERO && vals[1] < -tol::NONZERO && vals[2] < -tol::NONZERO) {
            return Err(Error::DiagonalizationFailed(format!("expected signature (1, 2), eigenvalues {vals:?}")));
        }
        let mut rows = [[0.0; 3]; 3];
        for k in 0..3 {
            let s = vals[k].abs().sqrt();
            for j in 0..3 {
                rows[k][j] = s * vecs[k][j];
            }
        }
        // the positive sheet should contain the interior of the fundamental chamber
        if rows[0].iter().sum::<f64>() < 0.0 {
            rows[0] = rows[0].map(|x| -x);
        }
        let q = |t: &[f64; 3]| minkowski(t, t);
        let yb = mat3_vec(&rows, &[1.0, 1.0, 1.0]);
        let b = yb.map(|x| x / q(&yb).sqrt());
        let e = [1.0, 0.0, 0.0];
        let be = [b[0] + e[0], b[1], b[2]];
        let denom = 1.0 + minkowski(&b, &e);
        let boost = |y: [f64; 3]| {
            let k = minkowski(&y, &be) / denom;
            let t = 2.0 * minkowski(&y, &b);
            [y[0] - k * be[0] + t, y[1] - k * be[1], y[2] - k * be[2]]
        };
        let cols = [boost([1.0, 0.0, 0.0]), boost([0.0, 1.0, 0.0]), boost([0.0, 0.0, 1.0])];
        let l = [0, 1, 2].map(|i| [cols[0][i], cols[1][i], cols[2][i]]);
        let m = mat3_mul(&l, &rows);
        let mi = inv3(&m).ok_or_else(|| Error::DiagonalizationFailed("singular change of basis".into()))?;
        let m_inv_t = [0, 1, 2].map(|i| [mi[0][i], mi[1][i], mi[2][i]]);
        Ok(DiscMap { m, m_inv_t })
    }

    pub fn hyperboloid(&self, theta: &ThetaVec) -> [f64; 3] {
        mat3_vec(&self.m, &theta.0)
    }

    pub fn to_disc(&self, theta: &ThetaVec) -> Point {
        let y = self.hyperboloid(theta);
        [y[1] / (1.0 + y[0]), y[2] / (1.0 + y[0])]
    }

    pub fn geodesic(&self, root: &RootVec) -> Option<GeodesicArc> {
        GeodesicArc::from_plane(mat3_vec(&self.m_inv_t, &root.as_f64()))
    }
}

fn check_rank3(sys: &CoxeterSystem, ty: &GraphType, want_affine: bool) -> Result<()> {
    let ok = sys.rank() == 3 && matches!(ty, GraphType::Affine { .. }) == want_affine && ty.is_affine_or_hyperbolic();
    if ok {
        return Ok(());
    }
    Err(Error::WrongGraphType {
        expected: format!("rank-three {}", if want_affine { "affine" } else { "hyperbolic" }),
        found: format!("rank-{} {}", sys.rank(), ty),
    })
}

/// Level point of the fundamental alcove with coordinate `skip` zeroed, if it
/// still lies strictly inside the cone.
fn face_point(sys: &CoxeterSystem, skip: Option<usize>) -> Option<ThetaVec> {
    let q = level_form(sys).ok()?;
    let t = ThetaVec((0..sys.rank()).map(|k| if Some(k) == skip { 0.0 } else { 1.0 }).collect());
    q.normalize(&t).ok()
}

#[derive(Clone, Debug)]
pub struct HyperbolicRender {
    pub doc: SvgDoc,
    pub geodesics: Vec<(RootVec, GeodesicArc)>,
    pub centres: Vec<Point>,
    pub arrows: usize,
}

pub fn render_hyperbolic_rank3(
    region: &Region,
    flow: Option<&FlowAssignment>,
    opts: &RenderOptions,
) -> Result<HyperbolicRender> {
    let sys = region.system();
    check_rank3(sys, region.graph_type(), false)?;
    let adj: Vec<Vec<f64>> = sys.adjugate().rows().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let map = DiscMap::new(&adj)?;
    let view = View::centred(1.05, opts.size);
    let mut doc = SvgDoc::new(opts.size, opts.size);
    doc.title(&format!("{} radius {}", sys.graph().name(), region.radius()));
    doc.circle(
        view.at([0.0, 0.0]),
        view.scale,
        "boundary",
        &format!("fill:none;stroke:{};stroke-width:{}", opts.cone_color, opts.stroke_width),
    );

    let mut roots: Vec<RootVec> = region.walls().iter().map(|w| w.root.clone()).collect();
    roots.sort();
    roots.dedup();
    let geodesics: Vec<(RootVec, GeodesicArc)> =
        roots.into_iter().filter_map(|r| map.geodesic(&r).map(|g| (r, g))).collect();
    let wall_style = format!("fill:none;stroke:{};stroke-width:{}", opts.wall_color, opts.stroke_width);
    for (_, g) in &geodesics {
        doc.path(&g.svg_path(&view), "wall", &wall_style);
    }

    let centre = face_point(sys, None).ok_or(Error::ProjectionFailed)?;
    let centres: Vec<Point> = region.alcoves().iter().map(|w| map.to_disc(&w.dual_apply(&centre))).collect();
    let dot_style = format!("fill:{};stroke:none", opts.level_color);
    for c in &centres {
        doc.circle(view.at(*c), 2.0, "alcove", &dot_style);
    }

    let mut arrows = 0;
    if let Some(flow) = flow {
        let faces: Vec<Option<ThetaVec>> = (0..3).map(|i| face_point(sys, Some(i))).collect();
        for (id, wall) in region.interior_walls() {
            let Some(face) = &faces[wall.gen] else { continue };
            let at = view.at(map.to_disc(&region.alcove(wall.base).dual_apply(face)));
            let (a, b) = (view.at(centres[wall.base]), view.at(centres[wall.other.unwrap()]));
            arrow(&mut doc, at, arrow_dir(flow, id, a, b), &opts.arrow_color);
            arrows += 1;
        }
    }
    Ok(HyperbolicRender { doc, geodesics, centres, arrows })
}

#[derive(Clone, Debug)]
pub struct AffineRender {
    pub doc: SvgDoc,
    pub polygons: usize,
    pub arrows: usize,
}

pub fn render_affine_rank3(
    region: &Region,
    flow: Option<&FlowAssignment>,
    opts: &RenderOptions,
) -> Result<AffineRender> {
    let sys = region.system();
    check_rank3(sys, region.graph_type(), true)?;
    let delta = sys.minimal_imaginary_root()?.as_f64();
    // orthonormal basis of δ^⊥
    let dn = delta.iter().map(|x| x * x).sum::<f64>().sqrt();
    let d: Vec<f64> = delta.iter().map(|x| x / dn).collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for k in 0..3 {
        let mut v = [0.0; 3];
        v[k] = 1.0;
        for u in std::iter::once(&d).chain(basis.iter()) {
            let p: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= p * y;
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 && basis.len() < 2 {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    let project = |t: &ThetaVec| -> Point { [0, 1].map(|k| t.0.iter().zip(&basis[k]).map(|(a, b)| a * b).sum()) };
    let corners: Vec<ThetaVec> = (0..3)
        .map(|k| {
            let mut v = vec![0.0; 3];
            v[k] = 1.0 / delta[k];
            ThetaVec(v)
        })
        .collect();
    let polys: Vec<Vec<Point>> =
        region.alcoves().iter().map(|w| corners.iter().map(|c| project(&w.dual_apply(c))).collect()).collect();
    let all: Vec<Point> = polys.iter().flatten().copied().collect();
    let view = View::fit(&all, opts.size, 20.0);
    let mut doc = SvgDoc::new(opts.size, opts.size);
    doc.title(&format!("{} radius {}", sys.graph().name(), region.radius()));

    let fill = format!("fill:{};stroke:none", opts.alcove_fill);
    for p in &polys {
        let screen: Vec<Point> = p.iter().map(|&q| view.at(q)).collect();
        doc.polygon(&screen, "alcove", &fill);
    }
    let wall_style = format!("stroke:{};stroke-width:{}", opts.wall_color, opts.stroke_width);
    let centroid = |p: &[Point]| [0, 1].map(|k| p.iter().map(|q| q[k]).sum::<f64>() / p.len() as f64);
    let mut arrows = 0;
    for (id, wall) in region.walls().iter().enumerate() {
        let p = &polys[wall.base];
        let ends: Vec<Point> = (0..3).filter(|&k| k != wall.gen).map(|k| view.at(p[k])).collect();
        doc.line(ends[0], ends[1], "wall", &wall_style);
        if let (Some(flow), Some(other)) = (flow, wall.other) {
            let mid = [(ends[0][0] + ends[1][0]) / 2.0, (ends[0][1] + ends[1][1]) / 2.0];
            let (a, b) = (view.at(centroid(p)), view.at(centroid(&polys[other])));
            arrow(&mut doc, mid, arrow_dir(flow, id, a, b), &opts.arrow_color);
            arrows += 1;
        }
    }
    Ok(AffineRender { doc, polygons: polys.len(), arrows })
}

#[derive(Clone, Debug)]
pub struct Rank2Render {
    pub doc: SvgDoc,
    pub dots: usize,
}

/// Level curve `θᵀ adj(A) θ = 1` of a rank-two graph in the plane
/// `[−x_range, x_range]²`, with the cone boundary dashed and open dots where
/// the real-root hyperplanes of roots up to `root_radius` meet it.
pub fn render_rank2(
    sys: &CoxeterSystem,
    x_range: f64,
    root_radius: usize,
    opts: &RenderOptions,
) -> Result<Rank2Render> {
    if sys.rank() != 2 || !sys.is_loop_free() {
        return Err(Error::WrongGraphType {
            expected: "loop-free rank two".into(),
            found: format!("rank {}", sys.rank()),
        });
    }
    let q = sys.adjugate().clone();
    let qv = |p: Point| q.quadratic_f64(&p);
    let adj: Vec<Vec<f64>> = q.rows().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let (vals, vecs) = jacobi_eigen(&adj).ok_or_else(|| Error::DiagonalizationFailed("rank two".into()))?;
    let (u1, u2) = ([vecs[0][0], vecs[0][1]], [vecs[1][0], vecs[1][1]]);
    let comb = |a: f64, b: f64| [a * u1[0] + b * u2[0], a * u1[1] + b * u2[1]];

    let view = View::centred(x_range, opts.size);
    let mut doc = SvgDoc::new(opts.size, opts.size);
    doc.title(&format!("level of {}", sys.graph().name()));
    let cone = format!("stroke:{};stroke-width:{};stroke-dasharray:8 6", opts.cone_color, opts.stroke_width);
    let level = format!("fill:none;stroke:{};stroke-width:{}", opts.level_color, opts.stroke_width * 1.5);
    let far = 4.0 * x_range;
    let steps = 400;

    let s1 = vals[0].sqrt();
    if vals[1] > tol::NONZERO {
        let s2 = vals[1].sqrt();
        let pts: Vec<Point> = (0..=steps)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / steps as f64;
                view.at(comb(t.cos() / s1, t.sin() / s2))
            })
            .collect();
        doc.polyline(&pts, "level", &level);
    } else if vals[1] > -tol::NONZERO {
        doc.line(view.at(comb(0.0, -far)), view.at(comb(0.0, far)), "cone", &cone);
        for sign in [-1.0, 1.0] {
            let a = view.at(comb(sign / s1, -far));
            let b = view.at(comb(sign / s1, far));
            doc.polyline(&[a, b], "level", &level);
        }
    } else {
        let s2 = (-vals[1]).sqrt();
        for sign in [-1.0, 1.0] {
            let d = comb(1.0 / s1, sign / s2);
            doc.line(view.at([-far * d[0], -far * d[1]]), view.at([far * d[0], far * d[1]]), "cone", &cone);
        }
        let tmax = (far * s1).asinh().max(1.0);
        for sign in [-1.0, 1.0] {
            let pts: Vec<Point> = (0..=steps)
                .map(|k| {
                    let t = -tmax + 2.0 * tmax * k as f64 / steps as f64;
                    let p = comb(t.cosh() / s1, t.sinh() / s2);
                    view.at([sign * p[0], sign * p[1]])
                })
                .collect();
            doc.polyline(&pts, "level", &level);
        }
    }

    let dot = format!("fill:white;stroke:{};stroke-width:{}", opts.wall_color, opts.stroke_width);
    let mut dots = 0;
    for beta in sys.positive_real_roots(root_radius) {
        let d = [beta.0[1] as f64, -(beta.0[0] as f64)];
        let qd = qv(d);
        if qd <= tol::ZERO {
            continue;
        }
        let p = [d[0] / qd.sqrt(), d[1] / qd.sqrt()];
        for sign in [-1.0, 1.0] {
            doc.circle(view.at([sign * p[0], sign * p[1]]), 5.0, "dot", &dot);
            dots += 1;
        }
    }
    Ok(Rank2Render { doc, dots })
}
