//! Deterministic SVG figures: mirror, radiant, the two ray families, the
//! numeric caustic cloud and the ovals as implicit curves.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write;

use caustica::caustic::{numeric_envelope, RayFamily};
use caustica::geom::{Line2, Mirror, Point2, Radiant, Scene};
use caustica::oval::{from_circle_scene, from_line_scene, CartesianOval};
use caustica::Q;

use crate::config::RenderSpec;

/// `v` rounded to 6 significant digits, printed without exponent; magnitudes
/// below `1e-9` print as `0`.
pub fn fmt_num(v: f64) -> String {
    if v.abs() < 1e-9 || !v.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.5e}").parse().expect("float text");
    let s = format!("{rounded}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

struct Frame {
    view: [f64; 4],
    width: f64,
    height: f64,
}

impl Frame {
    fn px(&self, p: &Point2<f64>) -> (f64, f64) {
        let [x0, y0, x1, y1] = self.view;
        ((p.x - x0) / (x1 - x0) * self.width, (y1 - p.y) / (y1 - y0) * self.height)
    }

    fn contains(&self, p: &Point2<f64>) -> bool {
        let [x0, y0, x1, y1] = self.view;
        (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y)
    }

    /// The part of an infinite line inside the viewport.
    fn clip(&self, line: &Line2<f64>) -> Option<(Point2<f64>, Point2<f64>)> {
        let [x0, y0, x1, y1] = self.view;
        let (bx, by) = (line.base.x, line.base.y);
        let (dx, dy) = (*line.dir.x(), *line.dir.y());
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (b, d, min, max) in [(bx, dx, x0, x1), (by, dy, y0, y1)] {
            if d == 0.0 {
                if b < min || b > max {
                    return None;
                }
                continue;
            }
            let (a, c) = ((min - b) / d, (max - b) / d);
            lo = lo.max(a.min(c));
            hi = hi.min(a.max(c));
        }
        (lo < hi).then(|| (line.point_at(&lo), line.point_at(&hi)))
    }
}

type Node = (u8, usize, usize);

/// Zero set of `f` on a `grid x grid` lattice over `view`, as polylines.
/// Saddle cells are split by the sign of the cell average.
pub fn marching_squares(f: impl Fn(f64, f64) -> f64, view: [f64; 4], grid: usize) -> Vec<Vec<Point2<f64>>> {
    let [x0, y0, x1, y1] = view;
    let (hx, hy) = ((x1 - x0) / grid as f64, (y1 - y0) / grid as f64);
    let at = |i: usize, j: usize| (x0 + i as f64 * hx, y0 + j as f64 * hy);
    let mut vals = vec![0.0; (grid + 1) * (grid + 1)];
    for j in 0..=grid {
        for i in 0..=grid {
            let (x, y) = at(i, j);
            vals[j * (grid + 1) + i] = f(x, y);
        }
    }
    let v = |i: usize, j: usize| vals[j * (grid + 1) + i];
    // edge nodes: (0, i, j) is the horizontal edge from (i, j), (1, i, j) the vertical one
    let crossing = |(kind, i, j): Node| {
        let (a, b, (ax, ay), (bx, by)) = if kind == 0 {
            (v(i, j), v(i + 1, j), at(i, j), at(i + 1, j))
        } else {
            (v(i, j), v(i, j + 1), at(i, j), at(i, j + 1))
        };
        let s = if a == b { 0.5 } else { a / (a - b) };
        Point2::new(ax + s * (bx - ax), ay + s * (by - ay))
    };
    let mut segments: Vec<(Node, Node)> = Vec::new();
    for j in 0..grid {
        for i in 0..grid {
            let c = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            if c.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let inside = c.map(|x| x > 0.0);
            let case = inside.iter().enumerate().fold(0, |acc, (k, &b)| acc | ((b as u8) << k));
            let (bottom, right, top, left) = ((0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j));
            let centre = c.iter().sum::<f64>() / 4.0 > 0.0;
            let pairs: &[(Node, Node)] = match case {
                0 | 15 => &[],
                1 | 14 => &[(left, bottom)],
                2 | 13 => &[(bottom, right)],
                3 | 12 => &[(left, right)],
                4 | 11 => &[(right, top)],
                6 | 9 => &[(bottom, top)],
                7 | 8 => &[(left, top)],
                5 if centre => &[(left, top), (bottom, right)],
                5 => &[(left, bottom), (right, top)],
                10 if centre => &[(left, bottom), (right, top)],
                _ => &[(left, top), (bottom, right)],
            };
            segments.extend_from_slice(pairs);
        }
    }
    chain(&segments).into_iter().map(|nodes| nodes.into_iter().map(crossing).collect()).collect()
}

/// Joins segments sharing endpoints into polylines, in first-seen order.
fn chain(segments: &[(Node, Node)]) -> Vec<Vec<Node>> {
    let mut by_node: HashMap<Node, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        by_node.entry(*a).or_default().push(k);
        by_node.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let extend = |start: Node, used: &mut Vec<bool>, line: &mut Vec<Node>| {
        let mut cur = start;
        while let Some(&k) = by_node[&cur].iter().find(|&&k| !used[k]) {
            used[k] = true;
            let (a, b) = segments[k];
            cur = if a == cur { b } else { a };
            line.push(cur);
        }
    };
    for k in 0..segments.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let (a, b) = segments[k];
        let mut fwd = vec![a, b];
        extend(b, &mut used, &mut fwd);
        let mut back = Vec::new();
        extend(a, &mut used, &mut back);
        back.reverse();
        back.extend(fwd);
        out.push(back);
    }
    out
}

fn path_data(frame: &Frame, lines: &[Vec<Point2<f64>>]) -> String {
    let mut d = String::new();
    for line in lines.iter().filter(|l| l.len() > 1) {
        for (k, p) in line.iter().enumerate() {
            let (x, y) = frame.px(p);
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { "L" }, fmt_num(x), fmt_num(y));
        }
    }
    d
}

/// The ovals drawn for `scene`: both branches for a circle, the real one for
/// a line, none for a radiant at infinity.
fn scene_ovals(scene: &Scene<f64>) -> Vec<CartesianOval<f64>> {
    match (&scene.radiant, &scene.mirror) {
        (Radiant::AtInfinity(_), _) => Vec::new(),
        (_, Mirror::Circle(_)) => from_circle_scene(scene).map(Vec::from).unwrap_or_default(),
        (_, Mirror::Line(_)) => from_line_scene(scene).map(|o| vec![o]).unwrap_or_default(),
    }
}

/// Optional layers; the mirror and the radiant are always drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layers {
    pub rays: bool,
    pub caustic: bool,
    pub ovals: bool,
}

/// Renders `scene` with `spec`. `samples = 0` leaves only the mirror and the
/// radiant. Identical inputs give identical bytes.
pub fn render_svg(scene: &Scene<Q>, spec: &RenderSpec) -> String {
    let on = spec.samples > 0;
    render_layers(scene, spec, Layers { rays: on, caustic: on, ovals: on })
}

pub fn render_layers(scene: &Scene<Q>, spec: &RenderSpec, layers: Layers) -> String {
    let scene = scene.to_f64();
    let frame = Frame { view: spec.viewport, width: spec.width as f64, height: spec.height as f64 };
    let colors = &spec.colors;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if layers.rays || layers.caustic {
        let n = scene.n.abs();
        let families: Vec<(String, RayFamily)> = [(&colors.rays_plus, n), (&colors.rays_minus, -n)]
            .into_iter()
            .map(|(c, n)| (c.clone(), RayFamily::from_scene(&scene.with_n(n).expect("nonzero n"))))
            .collect();
        for (color, fam) in families.iter().filter(|_| layers.rays) {
            let mut d = String::new();
            for k in 0..spec.samples {
                let theta = TAU * (k as f64 + 0.5) / spec.samples as f64;
                let Some((a, b)) = fam.line(theta).and_then(|l| frame.clip(&l)) else { continue };
                let ((ax, ay), (bx, by)) = (frame.px(&a), frame.px(&b));
                let _ = write!(d, "M{} {}L{} {}", fmt_num(ax), fmt_num(ay), fmt_num(bx), fmt_num(by));
            }
            let _ = writeln!(svg, r#"<path fill="none" stroke="{color}" stroke-width="0.5" d="{d}"/>"#);
        }
        let mut d = String::new();
        for (_, fam) in families.iter().filter(|_| layers.caustic) {
            for p in numeric_envelope(fam, spec.caustic_samples).iter().filter(|p| frame.contains(p)) {
                let (x, y) = frame.px(p);
                let _ = write!(d, "M{} {}h0", fmt_num(x), fmt_num(y));
            }
        }
        if layers.caustic {
            let _ = writeln!(
                svg,
                r#"<path fill="none" stroke="{}" stroke-width="1.5" stroke-linecap="round" d="{d}"/>"#,
                colors.caustic
            );
        }
    }
    if layers.ovals {
        for oval in scene_ovals(&scene) {
            let curves = marching_squares(|x, y| oval.residual(&Point2::new(x, y)), spec.viewport, spec.grid);
            let _ = writeln!(
                svg,
                r#"<path fill="none" stroke="{}" stroke-width="1" d="{}"/>"#,
                colors.ovals,
                path_data(&frame, &curves)
            );
        }
    }

    match &scene.mirror {
        Mirror::Circle(c) => {
            let (cx, cy) = frame.px(&c.center);
            let r = c.radius_sq.sqrt();
            let [x0, y0, x1, y1] = spec.viewport;
            let _ = writeln!(
                svg,
                r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                fmt_num(cx),
                fmt_num(cy),
                fmt_num(r / (x1 - x0) * frame.width),
                fmt_num(r / (y1 - y0) * frame.height),
                colors.mirror
            );
        }
        Mirror::Line(l) => {
            if let Some((a, b)) = frame.clip(l) {
                let ((ax, ay), (bx, by)) = (frame.px(&a), frame.px(&b));
                let _ = writeln!(
                    svg,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
                    fmt_num(ax),
                    fmt_num(ay),
                    fmt_num(bx),
                    fmt_num(by),
                    colors.mirror
                );
            }
        }
    }
    if let Radiant::Finite(a) = &scene.radiant {
        let (x, y) = frame.px(a);
        let _ = writeln!(svg, r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#, fmt_num(x), fmt_num(y), colors.radiant);
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(123.456789), "123.457");
        assert_eq!(fmt_num(-0.000123456789), "-0.000123457");
        assert_eq!(fmt_num(-1e-30 * 0.0), "0");
        assert_eq!(fmt_num(400.0), "400");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_num(6.66e-14), "0");
    }

    #[test]
    fn unit_circle_contour() {
        let lines = marching_squares(|x, y| x * x + y * y - 1.0, [-2.0, -2.0, 2.0, 2.0], 64);
        assert_eq!(lines.len(), 1);
        let ring = &lines[0];
        assert_eq!(ring.first().map(|p| (p.x, p.y)), ring.last().map(|p| (p.x, p.y)));
        for p in ring {
            assert!(((p.x * p.x + p.y * p.y).sqrt() - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn clipping_lines() {
        let frame = Frame { view: [0.0, 0.0, 1.0, 1.0], width: 10.0, height: 10.0 };
        let diag = Line2::new(Point2::new(0.5, 0.5), caustica::geom::Dir2::from_xy(1.0, 1.0).unwrap());
        let (a, b) = frame.clip(&diag).unwrap();
        assert!((a.x - 0.0).abs() < 1e-12 && (b.y - 1.0).abs() < 1e-12);
        let away = Line2::new(Point2::new(3.0, 0.0), caustica::geom::Dir2::from_xy(0.0, 1.0).unwrap());
        assert!(frame.clip(&away).is_none());
        assert_eq!(frame.px(&Point2::new(0.0, 1.0)), (0.0, 0.0));
    }
}
