//! Deterministic renderers: SVG and ASCII arc diagrams for meanders, DOT
//! for interlacement graphs. Identical inputs produce byte-identical output.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gaussdiag::InterlacementGraph;
use crate::meander::{arc_system_of, oracle_is_meandric, ArcSystem};
use crate::permcore::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("{0} is not meandric; run `check` to see which test fails")]
    NotMeandric(Permutation),
    #[error("render dimensions and spacing must be positive")]
    BadSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderTarget {
    Svg,
    Ascii,
    Dot,
}

/// Output description for [`render_meander`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub target: RenderTarget,
    /// Pixel width of the SVG canvas.
    pub width: u32,
    /// Pixel height of the SVG canvas.
    pub height: u32,
    /// Distance between consecutive points on the line.
    pub spacing: u32,
}

impl RenderSpec {
    pub fn new(
        target: RenderTarget,
        width: u32,
        height: u32,
        spacing: u32,
    ) -> Result<Self, RenderError> {
        if width == 0 || height == 0 || spacing == 0 {
            return Err(RenderError::BadSpec);
        }
        Ok(RenderSpec {
            target,
            width,
            height,
            spacing,
        })
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            target: RenderTarget::Svg,
            width: 800,
            height: 400,
            spacing: 40,
        }
    }
}

/// Renders a meandric permutation as semicircular arcs around an oriented
/// line. Non-meandric input is refused; meander arcs never cross, so no
/// collision handling is needed.
pub fn render_meander(mu: &Permutation, spec: &RenderSpec) -> Result<String, RenderError> {
    if spec.width == 0 || spec.height == 0 || spec.spacing == 0 {
        return Err(RenderError::BadSpec);
    }
    if !oracle_is_meandric(mu) {
        return Err(RenderError::NotMeandric(mu.clone()));
    }
    let arcs = arc_system_of(mu).expect("meandric implies even order");
    Ok(match spec.target {
        RenderTarget::Svg => svg_meander(&arcs, spec),
        RenderTarget::Ascii => ascii_meander(&arcs),
        RenderTarget::Dot => emit_dot(&InterlacementGraph::of_permutation(mu)),
    })
}

fn svg_meander(arcs: &ArcSystem, spec: &RenderSpec) -> String {
    let order = arcs.order();
    let s = spec.spacing as f64;
    let margin = s;
    let x = |p: usize| margin + (p - 1) as f64 * s;
    let y0 = spec.height as f64 / 2.0;
    let view_w = 2.0 * margin + (order - 1) as f64 * s;
    let view_h = spec.height as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {view_w} {view_h}">"#,
        spec.width, spec.height
    );
    let _ = writeln!(
        out,
        r#"  <line x1="0" y1="{y0}" x2="{view_w}" y2="{y0}" stroke="black" stroke-width="1"/>"#
    );
    let mut draw = |pairs: &[(usize, usize)], sweep: u8| {
        for &(a, b) in pairs {
            let r = (b - a) as f64 * s / 2.0;
            let _ = writeln!(
                out,
                r#"  <path d="M {} {y0} A {r} {r} 0 0 {sweep} {} {y0}" fill="none" stroke="black" stroke-width="1.5"/>"#,
                x(a),
                x(b)
            );
        }
    };
    draw(arcs.upper(), 1);
    draw(arcs.lower(), 0);
    for p in 1..=order {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{y0}" r="3" fill="black"/>"#,
            x(p)
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle">{p}</text>"#,
            x(p),
            y0 + 20.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Nesting height of each arc: innermost arcs sit at 1, enclosing arcs one
/// above their tallest content.
fn arc_heights(arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| arcs[i].1 - arcs[i].0);
    let mut heights = vec![1usize; arcs.len()];
    for &i in &order {
        let (a, b) = arcs[i];
        let tallest_inside = arcs
            .iter()
            .zip(&heights)
            .filter(|(&(c, d), _)| a < c && d < b)
            .map(|(_, &h)| h)
            .max()
            .unwrap_or(0);
        heights[i] = tallest_inside + 1;
    }
    heights
}

fn ascii_meander(arcs: &ArcSystem) -> String {
    let order = arcs.order();
    let cell = order.to_string().len() + 1;
    let col = |p: usize| (p - 1) * cell;
    let width = col(order) + order.to_string().len();

    let upper_h = arc_heights(arcs.upper());
    let lower_h = arc_heights(arcs.lower());
    let top = upper_h.iter().copied().max().unwrap_or(0);
    let bottom = lower_h.iter().copied().max().unwrap_or(0);
    let label_row = top + 1;
    let mut canvas = vec![vec![' '; width]; label_row + 1 + bottom];

    for (&(a, b), &h) in arcs.upper().iter().zip(&upper_h) {
        // roof one row above the bars, which drop to the line
        let roof = label_row - 1 - h;
        for c in (col(a) + 1)..col(b) {
            canvas[roof][c] = '_';
        }
        for row in (roof + 1)..label_row {
            canvas[row][col(a)] = '|';
            canvas[row][col(b)] = '|';
        }
    }
    for (&(a, b), &h) in arcs.lower().iter().zip(&lower_h) {
        let floor = label_row + h;
        canvas[floor][col(a)] = '|';
        canvas[floor][col(b)] = '|';
        for c in (col(a) + 1)..col(b) {
            canvas[floor][c] = '_';
        }
        for row in (label_row + 1)..floor {
            canvas[row][col(a)] = '|';
            canvas[row][col(b)] = '|';
        }
    }
    for p in 1..=order {
        for (k, ch) in p.to_string().chars().enumerate() {
            canvas[label_row][col(p) + k] = ch;
        }
    }

    let mut out = String::new();
    for row in canvas {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// DOT text for a graph, vertices and edges in sorted order.
pub fn emit_dot(g: &InterlacementGraph) -> String {
    let mut out = String::from("graph interlacement {\n");
    for &v in g.labels() {
        let _ = writeln!(out, "    {v};");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "    {a} -- {b};");
    }
    out.push_str("}\n");
    out
}
