//! SVG rendering of Majorana points: two orthographic views of the sphere.
//!
//! The front view looks along +y with +x to the right and +z up, so the
//! north pole is at the top and φ = 0 points right. The back view looks
//! along −y. Points with y ≤ 0 show in front, y ≥ 0 at the back.

use std::fmt::Write as _;

use majorana::symstate::cartesian;
use majorana::ExtendedComplex;

const RADIUS: f64 = 120.0;
const MARGIN: f64 = 40.0;
const PANEL: f64 = 2.0 * (RADIUS + MARGIN);

/// SVG document for the given sites with their multiplicities.
pub fn render(sites: &[(ExtendedComplex, usize)], equator: bool) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
        w = 2.0 * PANEL,
        h = PANEL + 20.0
    );
    for (panel, title) in [(0usize, "front"), (1, "back")] {
        let cx = PANEL * panel as f64 + PANEL / 2.0;
        let cy = PANEL / 2.0 + 20.0;
        let _ = writeln!(svg, r#"<text x="{cx:.3}" y="20" text-anchor="middle" font-size="14">{title}</text>"#);
        let _ = writeln!(
            svg,
            r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS:.3}" fill="#f4f6fb" stroke="#333" stroke-width="1.5"/>"##
        );
        if equator {
            // Seen edge-on, the equator projects to a horizontal diameter.
            let _ = writeln!(
                svg,
                r##"<line x1="{:.3}" y1="{cy:.3}" x2="{:.3}" y2="{cy:.3}" stroke="#888" stroke-dasharray="4 3"/>"##,
                cx - RADIUS,
                cx + RADIUS
            );
        }
        for &(p, mult) in sites {
            let [x, y, z] = cartesian(p);
            let visible = if panel == 0 { y <= 1e-12 } else { y >= -1e-12 };
            if !visible {
                continue;
            }
            let sx = if panel == 0 { x } else { -x };
            let px = cx + RADIUS * sx;
            let py = cy - RADIUS * z;
            let _ = writeln!(svg, r##"<circle cx="{px:.3}" cy="{py:.3}" r="6" fill="#c0392b" stroke="#000"/>"##);
            if mult > 1 {
                let _ = writeln!(
                    svg,
                    r##"<circle cx="{:.3}" cy="{:.3}" r="8" fill="#fff" stroke="#000"/><text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="11">{mult}</text>"##,
                    px + 10.0,
                    py - 10.0,
                    px + 10.0,
                    py - 6.0
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
