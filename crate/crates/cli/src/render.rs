//! Minimal SVG output for planar curves.

use std::fmt::Write;

/// Light control polygon under the dark sampled curve, fitted with a 5% margin.
/// The y axis points up.
pub fn svg(control: &[[f64; 2]], curve: &[[f64; 2]]) -> String {
    let all = control.iter().chain(curve);
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in all {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    // a single location still gets a visible, finite box
    let magnitude = x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()).max(1.0);
    let span = (x1 - x0).max(y1 - y0).max(1e-6 * magnitude);
    let cx = 0.5 * (x0 + x1);
    let cy = 0.5 * (y0 + y1);
    let w = (x1 - x0).max(span * 0.05);
    let h = (y1 - y0).max(span * 0.05);
    let margin = 0.05 * span;
    let (vx, vy) = (cx - 0.5 * w - margin, -(cy + 0.5 * h) - margin);
    let (vw, vh) = (w + 2.0 * margin, h + 2.0 * margin);
    let px = 800.0;
    let (width, height) = if vw >= vh {
        (px, px * vh / vw)
    } else {
        (px * vw / vh, px)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="{vx} {vy} {vw} {vh}">"#
    );
    let _ = writeln!(
        s,
        r##"<polyline fill="none" stroke="#b0b0b0" stroke-width="1" vector-effect="non-scaling-stroke" points="{}"/>"##,
        points(control)
    );
    let r = 0.006 * vw.max(vh);
    for p in control {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{r}" fill="#b0b0b0"/>"##,
            p[0],
            flip(p[1])
        );
    }
    let _ = writeln!(
        s,
        r##"<polyline fill="none" stroke="#1a1a1a" stroke-width="2" vector-effect="non-scaling-stroke" points="{}"/>"##,
        points(curve)
    );
    s.push_str("</svg>\n");
    s
}

/// Screen y grows downwards; `0 - y` avoids printing `-0`.
fn flip(y: f64) -> f64 {
    0.0 - y
}

fn points(ps: &[[f64; 2]]) -> String {
    let mut out = String::new();
    for (j, p) in ps.iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", p[0], flip(p[1]));
    }
    out
}
