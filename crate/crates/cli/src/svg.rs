//! Static figures of fans and cones.
//!
//! Every coordinate is an integer, written in decimal, so the output is
//! byte-identical for identical input. Each panel is a nested `<svg>` whose
//! `viewBox` is the bounding box of its rays (and the origin) padded by one
//! lattice unit; the y axis is flipped so that `(0, 1)` points up.

use std::fmt::Write as _;

use num_bigint::BigInt;

use toric_hj::lattice::LatticeVector;

const PANEL: u32 = 320;
const TITLE: u32 = 28;
const GAP: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayKind {
    /// A ray of the fan or cone being resolved.
    Original,
    /// A ray added by the subdivision.
    Subdivision,
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub title: String,
    pub rays: Vec<(LatticeVector, RayKind)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn view_box(rays: &[(LatticeVector, RayKind)]) -> (BigInt, BigInt, BigInt, BigInt) {
    let zero = BigInt::from(0);
    let (mut x0, mut x1, mut y0, mut y1) = (zero.clone(), zero.clone(), zero.clone(), zero);
    for (r, _) in rays {
        x0 = x0.min(r.x.clone());
        x1 = x1.max(r.x.clone());
        y0 = y0.min(r.y.clone());
        y1 = y1.max(r.y.clone());
    }
    // In screen coordinates y is negated, so the top edge is -max_y.
    (x0.clone() - 1, -y1.clone() - 1, x1 - x0 + 2, y1 - y0 + 2)
}

fn panel(out: &mut String, index: u32, p: &Panel) {
    let x = index * (PANEL + GAP);
    let (vx, vy, vw, vh) = view_box(&p.rays);
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        x + PANEL / 2,
        escape(&p.title)
    );
    let _ = writeln!(
        out,
        r#"  <svg x="{x}" y="{TITLE}" width="{PANEL}" height="{PANEL}" viewBox="{vx} {vy} {vw} {vh}" preserveAspectRatio="xMidYMid meet">"#
    );
    let _ = writeln!(
        out,
        r##"    <rect x="{vx}" y="{vy}" width="{vw}" height="{vh}" fill="none" stroke="#cccccc" stroke-width="1" vector-effect="non-scaling-stroke"/>"##
    );
    for (r, kind) in &p.rays {
        let style = match kind {
            RayKind::Original => r##"stroke="#000000" stroke-width="2""##,
            RayKind::Subdivision => r##"stroke="#1f5fbf" stroke-width="1.5" stroke-dasharray="6 4""##,
        };
        let _ = writeln!(
            out,
            r#"    <line x1="0" y1="0" x2="{}" y2="{}" {style} vector-effect="non-scaling-stroke"/>"#,
            r.x, -&r.y
        );
    }
    out.push_str("  </svg>\n");
}

/// Renders the panels left to right into a standalone SVG document.
pub fn render(panels: &[Panel]) -> String {
    let count = panels.len().max(1) as u32;
    let width = count * PANEL + (count - 1) * GAP;
    let height = PANEL + TITLE;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (i, p) in panels.iter().enumerate() {
        panel(&mut out, i as u32, p);
    }
    out.push_str("</svg>\n");
    out
}
