//! Polar diagrams of E1, G12 and nu12 as a standalone SVG.

use std::fmt::Write;

use auxetolam_core::auxeticity::moduli_profile;
use auxetolam_core::PolarStiffness;

use crate::error::Result;

const PANEL: f64 = 320.0;
const RADIUS: f64 = 130.0;
/// Inner radius fraction reserved on the nu plot so negative values stay visible.
const NU_HOLE: f64 = 0.2;

fn path(points: impl Iterator<Item = (f64, f64)>, cx: f64, cy: f64) -> String {
    let mut d = String::new();
    for (i, (theta, r)) in points.enumerate() {
        let (x, y) = (cx + RADIUS * r * theta.cos(), cy - RADIUS * r * theta.sin());
        let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

fn panel(out: &mut String, k: usize, title: &str, curve: &str, extra: &str) {
    let cx = PANEL * (k as f64 + 0.5);
    let cy = PANEL / 2.0 + 10.0;
    let _ = writeln!(
        out,
        r##"<g><circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="none" stroke="#ccc"/><line x1="{x0}" y1="{cy}" x2="{x1}" y2="{cy}" stroke="#ccc"/><line x1="{cx}" y1="{y0}" x2="{cx}" y2="{y1}" stroke="#ccc"/>{extra}<path d="{curve}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/><text x="{cx}" y="22" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text></g>"##,
        x0 = cx - RADIUS,
        x1 = cx + RADIUS,
        y0 = cy - RADIUS,
        y1 = cy + RADIUS,
    );
}

/// Renders the three diagrams from `samples` directions over `[0, 2 pi)`.
pub fn polar_diagrams(p: &PolarStiffness, samples: usize, label: &str) -> Result<String> {
    let prof = moduli_profile(p, samples)?;
    let e_max = prof.iter().map(|m| m.e1).fold(0.0, f64::max);
    let g_max = prof.iter().map(|m| m.g12).fold(0.0, f64::max);
    let nu_lo = prof.iter().map(|m| m.nu12).fold(0.0, f64::min);
    let nu_hi = prof.iter().map(|m| m.nu12).fold(0.0, f64::max);
    let span = nu_hi - nu_lo;
    let nu_r = |nu: f64| {
        if span > 0.0 {
            NU_HOLE + (1.0 - NU_HOLE) * (nu - nu_lo) / span
        } else {
            NU_HOLE
        }
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = 3.0 * PANEL,
        h = PANEL + 30.0,
    );
    let _ = writeln!(out, "<title>{}</title>", escape(label));
    let e = path(
        prof.iter().map(|m| (m.theta, m.e1 / e_max)),
        PANEL * 0.5,
        PANEL / 2.0 + 10.0,
    );
    panel(&mut out, 0, &format!("E1 (max {e_max:.4})"), &e, "");
    let g = path(
        prof.iter().map(|m| (m.theta, m.g12 / g_max)),
        PANEL * 1.5,
        PANEL / 2.0 + 10.0,
    );
    panel(&mut out, 1, &format!("G12 (max {g_max:.4})"), &g, "");
    let nu = path(
        prof.iter().map(|m| (m.theta, nu_r(m.nu12))),
        PANEL * 2.5,
        PANEL / 2.0 + 10.0,
    );
    // thin circle at nu12 = 0
    let zero = format!(
        r##"<circle class="zero" cx="{}" cy="{}" r="{:.2}" fill="none" stroke="#c0392b" stroke-width="0.7"/>"##,
        PANEL * 2.5,
        PANEL / 2.0 + 10.0,
        RADIUS * nu_r(0.0)
    );
    panel(&mut out, 2, &format!("nu12 [{nu_lo:.4}, {nu_hi:.4}]"), &nu, &zero);
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_curves_and_a_zero_circle() {
        let p = PolarStiffness::new(10.0, 3.0, 2.0, 0.0, 0.0, 0.0).unwrap();
        let s = polar_diagrams(&p, 720, "a < b").unwrap();
        assert_eq!(s.matches("<path").count(), 3);
        assert_eq!(s.matches("class=\"zero\"").count(), 1);
        assert!(s.contains("a &lt; b"));
        // one vertex per sample
        let nu_path = s.split("<path d=\"").nth(3).unwrap();
        assert_eq!(nu_path.split('"').next().unwrap().matches(['M', 'L']).count(), 720);
    }
}
