//! Write-only SVG renderings: barcode strips per degree and a schematic of
//! a two-curve diagram.

use std::fmt::Write;

use floer_bars::comb_floer::TwoCurveDiagram;
use floer_bars::novikov::Rational;
use floer_bars::persistence::{Barcode, Extended};

const WIDTH: f64 = 640.0;
const ROW: f64 = 14.0;
const MARGIN: f64 = 40.0;

fn f(r: &Rational) -> f64 {
    r.to_f64()
}

/// One strip per degree; infinite bars run to the right edge with an arrow.
pub fn barcode_svg(b: &Barcode<Rational>) -> String {
    let copies = b.copies();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for bar in &copies {
        lo = lo.min(f(&bar.left));
        hi = hi.max(f(&bar.left));
        if let Extended::Finite(r) = &bar.right {
            hi = hi.max(f(r));
        }
    }
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    let span = (hi - lo).max(1e-9) * 1.15;
    let x = |v: f64| MARGIN + (v - lo) / span * (WIDTH - 2.0 * MARGIN);
    let degrees = b.degrees();
    let mut rows = 0usize;
    let mut body = String::new();
    for d in &degrees {
        let y0 = MARGIN + rows as f64 * ROW;
        let _ = writeln!(body, r#"<text x="4" y="{:.1}" font-size="11">deg {d}</text>"#, y0 + 9.0);
        for bar in copies.iter().filter(|c| c.degree == *d) {
            let y = MARGIN + rows as f64 * ROW + 6.0;
            let (x1, x2, tip) = match &bar.right {
                Extended::Finite(r) => (x(f(&bar.left)), x(f(r)), ""),
                Extended::Infinite => (x(f(&bar.left)), WIDTH - MARGIN / 2.0, r#" marker-end="url(#inf)""#),
            };
            let _ = writeln!(
                body,
                r#"<line x1="{x1:.1}" y1="{y:.1}" x2="{x2:.1}" y2="{y:.1}" stroke="black" stroke-width="3"{tip}><title>{bar}</title></line>"#
            );
            rows += 1;
        }
        rows += 1;
    }
    let height = MARGIN * 2.0 + rows as f64 * ROW;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}">"#);
    out.push_str(
        r#"<defs><marker id="inf" markerWidth="6" markerHeight="6" refX="3" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z"/></marker></defs>"#,
    );
    out.push('\n');
    out.push_str(&body);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.1}" font-size="11">[{lo}, {hi}]</text>"#,
        height - 12.0
    );
    out.push_str("</svg>\n");
    out
}

/// K drawn as a horizontal line through the points in its order, L as arcs
/// between consecutive points of its order, alternately above and below.
/// Face areas are listed underneath; the picture is a schematic, not an
/// embedding.
pub fn diagram_svg(d: &TwoCurveDiagram) -> String {
    let n = d.order_k.len().max(1);
    let step = (WIDTH - 2.0 * MARGIN) / n as f64;
    let axis = 160.0;
    let px = |label: u32| {
        let i = d.order_k.iter().position(|&p| p == label).unwrap_or(0);
        MARGIN + step * (i as f64 + 0.5)
    };
    let mut out = String::new();
    let height = axis * 2.0 + ROW * (d.areas.len() as f64 + 2.0);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}">"#);
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{axis}" x2="{:.1}" y2="{axis}" stroke="steelblue" stroke-width="2"/>"#,
        WIDTH - MARGIN
    );
    let m = d.order_l.len();
    for i in 0..m {
        let (a, b) = (px(d.order_l[i]), px(d.order_l[(i + 1) % m]));
        let r = (b - a).abs() / 2.0;
        let sweep = if (i % 2 == 0) == (a < b) { 1 } else { 0 };
        let _ = writeln!(
            out,
            r#"<path d="M{a:.1},{axis} A{r:.1},{r:.1} 0 0 {sweep} {b:.1},{axis}" fill="none" stroke="firebrick" stroke-width="2"/>"#
        );
    }
    for &p in &d.points {
        let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{axis}" r="3"/>"#, px(p));
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="11">{p}</text>"#, px(p) + 4.0, axis - 6.0);
    }
    for (i, (name, area)) in d.areas.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{MARGIN}" y="{:.1}" font-size="11">{name}: {area}</text>"#,
            axis * 2.0 + ROW * (i as f64 + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}
