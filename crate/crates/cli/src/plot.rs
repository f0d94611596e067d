//! Deterministic SVG rendering of the symbol image over the boundary grid.

use std::fmt::Write as _;

use num_complex::Complex64;
use srg_core::region::{sample_pieces, BoundaryPiece};
use srg_core::search::SearchDomain;
use srg_core::symbol::zeta;
use srg_core::DysParams;

use crate::error::CliError;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;
/// Cloud points are binned into this many cells per axis before drawing.
const CELLS: usize = 320;
const OUTLINE_SAMPLES: usize = 240;

pub struct Outline {
    pub label: String,
    pub color: &'static str,
    pub pieces: Vec<BoundaryPiece>,
}

pub struct Cloud {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<Complex64>,
}

pub struct Figure {
    pub title: String,
    pub clouds: Vec<Cloud>,
    pub outlines: Vec<Outline>,
    /// `|z − center| = radius`.
    pub circle: Option<(Complex64, f64, String)>,
}

/// `ζ` over every triple of boundary samples, in grid order.
pub fn symbol_cloud(domain: &SearchDomain, params: &DysParams, eps: f64) -> Result<Vec<Complex64>, CliError> {
    let s = domain.pieces.each_ref().map(|p| sample_pieces(p, eps));
    let [a, b, c] = s;
    let (a, b, c) = (a?.points, b?.points, c?.points);
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for za in &a {
        for zb in &b {
            for zc in &c {
                out.push(zeta(*za, *zb, *zc, params));
            }
        }
    }
    Ok(out)
}

fn outline_points(pieces: &[BoundaryPiece]) -> Vec<Vec<Complex64>> {
    pieces
        .iter()
        .map(|p| (0..=OUTLINE_SAMPLES).map(|k| p.point_at(k as f64 / OUTLINE_SAMPLES as f64)).collect())
        .collect()
}

/// A step of the form {1, 2, 5}·10^k giving roughly `target` ticks over `span`.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

struct View {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn fit(points: impl Iterator<Item = Complex64>) -> View {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        // Square aspect with 5% padding.
        let span = (x1 - x0).max(y1 - y0).max(1e-9) * 1.1;
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let x0 = cx - 0.5 * span;
        let y1 = cy + 0.5 * span;
        View { x0, y1, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn span(&self) -> f64 {
        (SIZE - 2.0 * MARGIN) / self.scale
    }

    fn px(&self, z: Complex64) -> (f64, f64) {
        (MARGIN + (z.re - self.x0) * self.scale, MARGIN + (self.y1 - z.im) * self.scale)
    }
}

pub fn render_svg(fig: &Figure) -> String {
    let circle_pts = fig
        .circle
        .iter()
        .flat_map(|(c, r, _)| [c + r, c - r, c + Complex64::new(0.0, *r), c - Complex64::new(0.0, *r)]);
    let outline_pts = fig.outlines.iter().flat_map(|o| outline_points(&o.pieces).into_iter().flatten());
    let cloud_pts = fig.clouds.iter().flat_map(|c| c.points.iter().copied());
    let view = View::fit(circle_pts.chain(outline_pts).chain(cloud_pts));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{MARGIN}" y="20" font-size="13">{}</text>"#, escape(&fig.title));

    draw_axes(&mut svg, &view);

    let cell = view.span() / CELLS as f64;
    for cloud in &fig.clouds {
        let mut occupied = vec![false; CELLS * CELLS];
        for z in &cloud.points {
            let i = ((z.re - view.x0) / cell).floor();
            let j = ((view.y1 - z.im) / cell).floor();
            if (0.0..CELLS as f64).contains(&i) && (0.0..CELLS as f64).contains(&j) {
                occupied[j as usize * CELLS + i as usize] = true;
            }
        }
        let w = cell * view.scale;
        let _ = writeln!(svg, r#"<g fill="{}" shape-rendering="crispEdges">"#, cloud.color);
        // One rect per horizontal run of occupied cells, rows top to bottom.
        for j in 0..CELLS {
            let row = &occupied[j * CELLS..(j + 1) * CELLS];
            let mut i = 0;
            while i < CELLS {
                if !row[i] {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < CELLS && row[i] {
                    i += 1;
                }
                let x = MARGIN + start as f64 * w;
                let y = MARGIN + j as f64 * w;
                let _ = writeln!(
                    svg,
                    r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}"/>"#,
                    (i - start) as f64 * w + 0.05,
                    w + 0.05
                );
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    for o in &fig.outlines {
        for poly in outline_points(&o.pieces) {
            let pts: Vec<String> = poly
                .iter()
                .map(|z| {
                    let (x, y) = view.px(*z);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                o.color,
                pts.join(" ")
            );
        }
    }

    if let Some((c, r, _)) = &fig.circle {
        let (x, y) = view.px(*c);
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            r * view.scale
        );
    }

    draw_legend(&mut svg, fig);
    svg.push_str("</svg>\n");
    svg
}

fn draw_axes(svg: &mut String, view: &View) {
    let span = view.span();
    let step = tick_step(span, 8.0);
    let (lo, hi) = (MARGIN, SIZE - MARGIN);
    let _ = writeln!(svg, r##"<g stroke="#999" stroke-width="0.5">"##);
    let _ = writeln!(svg, r#"<rect x="{lo}" y="{lo}" width="{}" height="{}" fill="none"/>"#, hi - lo, hi - lo);
    // Coordinate axes through the origin when visible.
    let (ox, oy) = view.px(Complex64::new(0.0, 0.0));
    if (lo..=hi).contains(&ox) {
        let _ = writeln!(svg, r#"<line x1="{ox:.2}" y1="{lo}" x2="{ox:.2}" y2="{hi}"/>"#);
    }
    if (lo..=hi).contains(&oy) {
        let _ = writeln!(svg, r#"<line x1="{lo}" y1="{oy:.2}" x2="{hi}" y2="{oy:.2}"/>"#);
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r##"<g fill="#333">"##);
    let first = (view.x0 / step).ceil() as i64;
    let last = ((view.x0 + span) / step).floor() as i64;
    for k in first..=last {
        let v = k as f64 * step;
        let (x, _) = view.px(Complex64::new(v, 0.0));
        let _ =
            writeln!(svg, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, hi + 14.0, fmt_tick(v, step));
    }
    let first = ((view.y1 - span) / step).ceil() as i64;
    let last = (view.y1 / step).floor() as i64;
    for k in first..=last {
        let v = k as f64 * step;
        let (_, y) = view.px(Complex64::new(0.0, v));
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            lo - 4.0,
            y + 4.0,
            fmt_tick(v, step)
        );
    }
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Re</text>"#, SIZE / 2.0, SIZE - 8.0);
    let _ = writeln!(svg, r#"<text x="12" y="{:.2}" text-anchor="middle">Im</text>"#, SIZE / 2.0);
    let _ = writeln!(svg, "</g>");
}

fn draw_legend(svg: &mut String, fig: &Figure) {
    let mut entries: Vec<(String, &str, bool)> = Vec::new();
    for c in &fig.clouds {
        entries.push((c.label.clone(), c.color, true));
    }
    for o in &fig.outlines {
        entries.push((o.label.clone(), o.color, false));
    }
    if let Some((_, _, label)) = &fig.circle {
        entries.push((label.clone(), "black", false));
    }
    let x = MARGIN + 8.0;
    let mut y = MARGIN + 8.0;
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="230" height="{}" fill="white" fill-opacity="0.85" stroke="#999" stroke-width="0.5"/>"##,
        x - 4.0,
        y - 4.0,
        16.0 * entries.len() as f64 + 6.0
    );
    for (label, color, filled) in entries {
        if filled {
            let _ = writeln!(svg, r#"<rect x="{x}" y="{y}" width="12" height="10" fill="{color}"/>"#);
        } else {
            let _ = writeln!(
                svg,
                r#"<line x1="{x}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
                y + 5.0,
                x + 12.0,
                y + 5.0
            );
        }
        let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, x + 18.0, y + 9.0, escape(&label));
        y += 16.0;
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
