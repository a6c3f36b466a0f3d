//! SVG drawing of a truncation of the continuum.
//!
//! Geometry is exact up to the final viewport mapping, which is the only
//! place floats appear.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cantor::embed;
use crate::continuum::{center_x, make_arc, Arc, Half};
use crate::error::{Error, Result};
use crate::oracle::truncation_nodes;

const MAX_DEPTH: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Prefix length of the eventually-constant endpoints drawn.
    pub depth: usize,
    /// Highest arc level drawn.
    pub levels: usize,
    pub width: u32,
    pub height: u32,
    pub stroke: f64,
    pub margin: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            depth: 5,
            levels: 3,
            width: 1000,
            height: 700,
            stroke: 1.0,
            margin: 24.0,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRender(msg));
        if self.depth == 0 || self.depth > MAX_DEPTH {
            return bad(format!(
                "depth must be in 1..={MAX_DEPTH}, got {}",
                self.depth
            ));
        }
        if self.width == 0 || self.height == 0 {
            return bad("width and height must be positive".into());
        }
        if !(self.stroke.is_finite() && self.stroke > 0.0) {
            return bad(format!("stroke must be positive, got {}", self.stroke));
        }
        let room = f64::from(self.width.min(self.height));
        if !(self.margin.is_finite() && self.margin >= 0.0 && 2.0 * self.margin < room) {
            return bad(format!("margin {} does not fit the viewport", self.margin));
        }
        Ok(())
    }
}

/// World window drawn: `x ∈ [0, 1]`, `y ∈ [-1/3, 1/2]`.
const WORLD_TOP: f64 = 0.5;
const WORLD_BOTTOM: f64 = -1.0 / 3.0;

/// Affine map from world coordinates to SVG pixels (y grows downward).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    scale: f64,
    origin_x: f64,
    origin_y: f64,
}

impl Viewport {
    pub fn new(spec: &RenderSpec) -> Self {
        let inner_w = f64::from(spec.width) - 2.0 * spec.margin;
        let inner_h = f64::from(spec.height) - 2.0 * spec.margin;
        let world_h = WORLD_TOP - WORLD_BOTTOM;
        let scale = inner_w.min(inner_h / world_h);
        let origin_x = (f64::from(spec.width) - scale) / 2.0;
        let origin_y = (f64::from(spec.height) - scale * world_h) / 2.0 + scale * WORLD_TOP;
        Self {
            scale,
            origin_x,
            origin_y,
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn x(&self, x: f64) -> f64 {
        self.origin_x + x * self.scale
    }

    pub fn y(&self, y: f64) -> f64 {
        self.origin_y - y * self.scale
    }

    pub fn map_exact(&self, x: &BigRational, y: &BigRational) -> (f64, f64) {
        (self.x(to_f64(x)), self.y(to_f64(y)))
    }
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Deduplicated arcs of levels `0..=levels` through the eventually-constant
/// sequences with prefix length `≤ depth`, ordered by level then endpoints.
pub fn arcs_for(spec: &RenderSpec) -> Result<Vec<Arc>> {
    spec.validate()?;
    let universe = truncation_nodes(spec.depth);
    let mut arcs = BTreeSet::new();
    for s in &universe {
        arcs.insert(make_arc(0, s)?);
        if let Some(k) = s.level().filter(|&k| k >= 1 && k <= spec.levels) {
            arcs.insert(make_arc(k, s)?);
        }
    }
    Ok(arcs.into_iter().collect())
}

fn arc_path(arc: &Arc, view: &Viewport) -> String {
    let (x0, y0) = (view.x(to_f64(embed(arc.left()).value())), view.y(0.0));
    let x1 = view.x(to_f64(embed(arc.right()).value()));
    let r = to_f64(arc.radius()) * view.scale();
    // sweep 1 runs clockwise on screen: left to right over the top
    let sweep = match arc.half() {
        Half::Upper => 1,
        Half::Lower => 0,
    };
    format!("M {x0:.4} {y0:.4} A {r:.4} {r:.4} 0 0 {sweep} {x1:.4} {y0:.4}")
}

pub fn render(spec: &RenderSpec) -> Result<String> {
    let arcs = arcs_for(spec)?;
    let view = Viewport::new(spec);
    let (w, h) = (spec.width, spec.height);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, "  <title>The Knaster continuum</title>");
    let _ = writeln!(svg, r#"  <rect width="{w}" height="{h}" fill="white"/>"#);

    let axis_y = view.y(0.0);
    let _ = writeln!(
        svg,
        r##"  <g class="axes" stroke="#000" stroke-width="{:.2}">"##,
        spec.stroke * 1.5
    );
    let _ = writeln!(
        svg,
        r#"    <line x1="{:.4}" y1="{axis_y:.4}" x2="{:.4}" y2="{axis_y:.4}"/>"#,
        view.x(-0.05),
        view.x(1.05)
    );
    let _ = writeln!(
        svg,
        r#"    <line x1="{x:.4}" y1="{:.4}" x2="{x:.4}" y2="{:.4}"/>"#,
        view.y(WORLD_BOTTOM * 0.75),
        view.y(WORLD_TOP * 1.04),
        x = view.x(0.0)
    );
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(
        svg,
        r#"  <g class="ticks" font-family="serif" font-size="14">"#
    );
    for k in 0..=2 {
        let cx = view.x(to_f64(&center_x(k)));
        let _ = writeln!(
            svg,
            r#"    <circle cx="{cx:.4}" cy="{axis_y:.4}" r="{:.2}"/>"#,
            spec.stroke * 2.0
        );
        let _ = writeln!(
            svg,
            r#"    <text x="{cx:.4}" y="{:.4}" text-anchor="middle">x<tspan baseline-shift="sub" font-size="10">{k}</tspan></text>"#,
            axis_y + 18.0
        );
    }
    let _ = writeln!(svg, "  </g>");

    for level in 0..=spec.levels {
        let group: Vec<&Arc> = arcs.iter().filter(|a| a.level() == level).collect();
        if group.is_empty() {
            continue;
        }
        let _ = writeln!(
            svg,
            r##"  <g class="level" data-level="{level}" fill="none" stroke="#1f4fd1" stroke-width="{:.2}">"##,
            spec.stroke
        );
        for arc in group {
            let _ = writeln!(
                svg,
                r#"    <path class="arc" data-level="{}" data-left="{}" data-right="{}" d="{}"/>"#,
                arc.level(),
                arc.left(),
                arc.right(),
                arc_path(arc, &view)
            );
        }
        let _ = writeln!(svg, "  </g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
