//! SVG rendering of Coxeter-plane diagrams and soliton polytopes.
//!
//! Wheels are the only `<circle>` elements, rays and chords are `<line>`
//! elements, and every diagram point is one diamond `<path class="point">`.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::representation::SolitonGraph;
use crate::roots::CoxeterDiagram;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Pixels per unit modulus (a mass-1 wheel has this radius).
    pub scale: f64,
    pub point_radius: f64,
    pub labels: bool,
    /// Stroke colour for particle class k at index `(k - 1) % len`.
    pub class_strokes: Vec<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 640,
            height: 640,
            scale: 120.0,
            point_radius: 5.0,
            labels: true,
            class_strokes: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
                .into_iter()
                .map(String::from)
                .collect(),
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || !(self.scale > 0.0) || !(self.point_radius > 0.0) {
            return Err(Error::InvalidInput("render dimensions must be positive".into()));
        }
        if self.class_strokes.is_empty() {
            return Err(Error::InvalidInput("at least one class stroke is required".into()));
        }
        Ok(())
    }

    /// Shrinks `scale` so that `max_radius` stays inside 80% of the half canvas.
    pub fn fitted(mut self, max_radius: f64) -> Self {
        let half = 0.5 * self.width.min(self.height) as f64;
        if max_radius > 0.0 {
            self.scale = self.scale.min(0.8 * half / max_radius);
        }
        self
    }

    fn stroke(&self, class: usize) -> &str {
        &self.class_strokes[(class.max(1) - 1) % self.class_strokes.len()]
    }

    fn centre(&self) -> (f64, f64) {
        (0.5 * self.width as f64, 0.5 * self.height as f64)
    }

    fn to_canvas(&self, re: f64, im: f64) -> (f64, f64) {
        let (cx, cy) = self.centre();
        (cx + self.scale * re, cy - self.scale * im)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Avoids "-0.000" so equal geometry always prints identically.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".to_string()
    } else {
        s
    }
}

fn header(out: &mut String, spec: &RenderSpec, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r##"  <rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        spec.width, spec.height
    );
}

fn point_marker(out: &mut String, spec: &RenderSpec, re: f64, im: f64, label: &str) {
    let (x, y) = spec.to_canvas(re, im);
    let r = spec.point_radius;
    let _ = writeln!(
        out,
        r##"    <path class="point" data-label="{label}" d="M {} {} L {} {} L {} {} L {} {} Z" fill="#000000"/>"##,
        num(x),
        num(y - r),
        num(x + r),
        num(y),
        num(x),
        num(y + r),
        num(x - r),
        num(y),
        label = escape(label)
    );
    if spec.labels {
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" font-size="11" font-family="monospace">{}</text>"#,
            num(x + r + 2.0),
            num(y - r - 2.0),
            escape(label)
        );
    }
}

fn outer_radius(diagram: &CoxeterDiagram) -> f64 {
    diagram.points.iter().map(|p| p.position.norm()).fold(0.0, f64::max)
}

/// Wheels, spokes to the outermost wheel, and labelled points.
pub fn render_coxeter(diagram: &CoxeterDiagram, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    let mut out = String::new();
    header(
        &mut out,
        spec,
        &format!("Coxeter plane of A{} at spin order {}", diagram.n, diagram.spin_order),
    );
    let (cx, cy) = spec.centre();
    let reach = outer_radius(diagram) * 1.1;

    out.push_str("  <g class=\"wheels\">\n");
    for (idx, wheel) in diagram.wheels.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"    <circle class="wheel" cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            num(cx),
            num(cy),
            num(spec.scale * wheel.radius),
            spec.stroke(idx + 1)
        );
    }
    out.push_str("  </g>\n  <g class=\"rays\">\n");
    for ray in &diagram.rays {
        let (x, y) = spec.to_canvas(reach * ray.angle.cos(), reach * ray.angle.sin());
        let _ = writeln!(
            out,
            r##"    <line class="ray" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="0.75"/>"##,
            num(cx),
            num(cy),
            num(x),
            num(y)
        );
    }
    out.push_str("  </g>\n  <g class=\"points\">\n");
    for p in &diagram.points {
        point_marker(&mut out, spec, p.position.re, p.position.im, &p.sources.join("|"));
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}

/// Soliton chords coloured by particle class over the merged vertex positions.
pub fn render_polytope(graph: &SolitonGraph, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    let diagram = graph.diagram();
    let mut out = String::new();
    header(
        &mut out,
        spec,
        &format!("Soliton polytope of the exterior power {} of C^{}", graph.k, graph.n + 1),
    );
    out.push_str("  <g class=\"edges\">\n");
    for edge in &graph.edges {
        let a = graph.vertices[edge.from].position;
        let b = graph.vertices[edge.to].position;
        let (x1, y1) = spec.to_canvas(a.re, a.im);
        let (x2, y2) = spec.to_canvas(b.re, b.im);
        let _ = writeln!(
            out,
            r#"    <line class="edge" data-class="{}" data-root="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.25"/>"#,
            edge.class,
            edge.root.label(),
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            spec.stroke(edge.class)
        );
    }
    out.push_str("  </g>\n  <g class=\"points\">\n");
    for p in &diagram.points {
        point_marker(&mut out, spec, p.position.re, p.position.im, &p.sources.join("|"));
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}

/// Scale that keeps every point of `diagram` on the default canvas.
pub fn spec_for(diagram: &CoxeterDiagram) -> RenderSpec {
    RenderSpec::default().fitted(outer_radius(diagram) * 1.1)
}
