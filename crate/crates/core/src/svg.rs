//! Deterministic SVG pictures of the upper half-plane.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::esi::EsiSet;
use crate::frame::{hexagon_vertices, GroupFrame};
use crate::geodesic::{Geodesic, PlanePoint};
use crate::isometry::BoundaryPoint;
use crate::tol;

const WIDTH: f64 = 800.0;

/// Everything drawn in one figure.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub axes: Vec<Geodesic>,
    pub lines: Vec<(Geodesic, String)>,
    pub dots: Vec<PlanePoint>,
    pub crosses: Vec<PlanePoint>,
    /// Hexagon sides and vertices, drawn as a shaded region.
    pub hexagon: Option<([Geodesic; 6], [PlanePoint; 6])>,
}

impl Scene {
    /// Axis of `E`, its labeled lines over the half-open window, kept crossings
    /// as dots, right-angle feet as crosses, and the frame hexagon.
    pub fn from_esi(frame: &GroupFrame, esi: &EsiSet) -> Self {
        let period = &esi.records[..esi.records.len() - 1];
        let hexagon = hexagon_vertices(frame).map(|v| (frame.hexagon, v));
        Scene {
            axes: vec![esi.axis],
            lines: period.iter().map(|r| (r.line, format!("{} {}", r.index, r.line_word()))).collect(),
            dots: period.iter().filter(|r| !r.is_right_angle).map(|r| r.point).collect(),
            crosses: period.iter().filter(|r| r.is_right_angle).map(|r| r.point).collect(),
            hexagon,
        }
    }

    fn geodesics(&self) -> impl Iterator<Item = &Geodesic> {
        self.axes
            .iter()
            .chain(self.lines.iter().map(|(g, _)| g))
            .chain(self.hexagon.iter().flat_map(|(h, _)| h.iter()))
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Vertical(f64),
    Arc { center: f64, radius: f64 },
}

fn shape(g: &Geodesic) -> Result<Shape> {
    let eps = tol::get().fixed_point;
    if !g.is_planar(eps) {
        return Err(Error::PlanarOnly);
    }
    let [a, b] = g.endpoints();
    Ok(match (a, b) {
        (BoundaryPoint::Infinity, p) | (p, BoundaryPoint::Infinity) => Shape::Vertical(p.finite().map_or(0.0, |z| z.re)),
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => {
            Shape::Arc { center: 0.5 * (x.re + y.re), radius: 0.5 * (x.re - y.re).abs() }
        }
    })
}

struct View {
    x0: f64,
    y1: f64,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(scene: &Scene, shapes: &[Shape]) -> View {
        let (mut lo, mut hi, mut top) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for s in shapes {
            match *s {
                Shape::Vertical(x) => {
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
                Shape::Arc { center, radius } => {
                    lo = lo.min(center - radius);
                    hi = hi.max(center + radius);
                    top = top.max(radius);
                }
            }
        }
        for p in scene.dots.iter().chain(&scene.crosses) {
            lo = lo.min(p.z().re);
            hi = hi.max(p.z().re);
            top = top.max(p.z().im);
        }
        if !lo.is_finite() {
            (lo, hi, top) = (-1.0, 1.0, 1.0);
        }
        let span = (hi - lo).max(top).max(1e-12);
        let margin = 0.1 * span;
        let (x0, x1) = (lo - margin, hi + margin);
        let y1 = top.max(0.5 * span) + margin;
        let scale = WIDTH / (x1 - x0);
        View { x0, y1, scale, height: (y1 + margin) * scale }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        (self.y1 - y) * self.scale
    }
}

fn path(view: &View, s: Shape) -> String {
    match s {
        Shape::Vertical(x) => format!("M {:.3} {:.3} L {:.3} {:.3}", view.px(x), view.py(0.0), view.px(x), 0.0),
        Shape::Arc { center, radius } => {
            let r = radius * view.scale;
            format!(
                "M {:.3} {:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {:.3}",
                view.px(center - radius),
                view.py(0.0),
                view.px(center + radius),
                view.py(0.0)
            )
        }
    }
}

fn hexagon_path(view: &View, sides: &[Geodesic; 6], vertices: &[PlanePoint; 6]) -> Result<String> {
    let mut d = String::new();
    let v0 = vertices[5].z();
    write!(d, "M {:.3} {:.3}", view.px(v0.re), view.py(v0.im)).unwrap();
    for (i, v) in vertices.iter().enumerate() {
        let (from, to) = (if i == 0 { vertices[5] } else { vertices[i - 1] }.z(), v.z());
        match shape(&sides[i])? {
            Shape::Vertical(_) => write!(d, " L {:.3} {:.3}", view.px(to.re), view.py(to.im)).unwrap(),
            Shape::Arc { radius, .. } => {
                let r = radius * view.scale;
                let sweep = u8::from(to.re > from.re);
                write!(d, " A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", view.px(to.re), view.py(to.im)).unwrap();
            }
        }
    }
    d.push_str(" Z");
    Ok(d)
}

/// Render a planar scene.
pub fn render_svg(scene: &Scene) -> Result<String> {
    let shapes = scene.geodesics().map(shape).collect::<Result<Vec<_>>>()?;
    let view = View::fit(scene, &shapes);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{:.0}" viewBox="0 0 {WIDTH:.3} {:.3}">"#,
        view.height.ceil(),
        view.height
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    writeln!(
        out,
        r##"<line x1="0" y1="{0:.3}" x2="{WIDTH:.3}" y2="{0:.3}" stroke="#000000" stroke-width="1"/>"##,
        view.py(0.0)
    )
    .unwrap();
    if let Some((sides, vertices)) = &scene.hexagon {
        writeln!(
            out,
            r##"<path class="hexagon" d="{}" fill="#dde8f5" stroke="#6f8fb5" stroke-width="1"/>"##,
            hexagon_path(&view, sides, vertices)?
        )
        .unwrap();
    }
    for ((_, label), s) in scene.lines.iter().zip(&shapes[scene.axes.len()..]) {
        writeln!(
            out,
            r##"<path class="line" d="{}" fill="none" stroke="#888888" stroke-width="1"><title>{}</title></path>"##,
            path(&view, *s),
            escape(label)
        )
        .unwrap();
    }
    for s in &shapes[..scene.axes.len()] {
        writeln!(out, r##"<path class="axis" d="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##, path(&view, *s))
            .unwrap();
    }
    for p in &scene.dots {
        writeln!(
            out,
            r##"<circle class="esi" cx="{:.3}" cy="{:.3}" r="3" fill="#1a5276"/>"##,
            view.px(p.z().re),
            view.py(p.z().im)
        )
        .unwrap();
    }
    for p in &scene.crosses {
        let (x, y) = (view.px(p.z().re), view.py(p.z().im));
        writeln!(
            out,
            r##"<path class="foot" d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="#000000" stroke-width="1.5"/>"##,
            x - 4.0,
            y - 4.0,
            x + 4.0,
            y + 4.0,
            x - 4.0,
            y + 4.0,
            x + 4.0,
            y - 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
