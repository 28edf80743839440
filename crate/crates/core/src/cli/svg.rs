//! SVG pictures of stacky fans of rank 2, in the style of the usual fan
//! diagrams: shaded cones, ray arrows, and numbered dots at the `β(e_i)`.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedral::Cone;
use crate::stacky::StackyFan;
use crate::zlinalg::{primitive, IntMatrix, ZVec};

const UNIT: i64 = 40;
const FILLS: [&str; 6] = ["#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc", "#fc9272", "#d9d9d9"];

struct Picture {
    cones: Vec<Cone>,
    rays: Vec<ZVec>,
    dots: Vec<ZVec>,
}

fn is_identity(m: &IntMatrix) -> bool {
    m.is_square() && *m == IntMatrix::identity(m.nrows())
}

/// Draws `Σ` through `β` in `N_Q` when `N = Z^2`, with dots at the `β(e_i)`
/// unless `β` is the identity; otherwise draws `Σ` in `L_Q` if `L = Z^2`.
fn picture(sf: &StackyFan) -> Result<Picture> {
    let target = sf.target();
    if target.is_free() && target.free_rank() == 2 {
        let beta = sf.beta().matrix();
        let mut cones = Vec::new();
        let mut rays = Vec::new();
        for c in sf.fan().maximal_cones() {
            let image = c.image(beta);
            match image.to_cone() {
                Ok(cone) => {
                    rays.extend(cone.rays().iter().cloned());
                    cones.push(cone);
                }
                Err(_) => {
                    rays.extend(image.generators().iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().map(primitive))
                }
            }
        }
        rays.sort();
        rays.dedup();
        let dots = if is_identity(beta) { Vec::new() } else { sf.beta_images() };
        return Ok(Picture { cones, rays, dots });
    }
    if sf.lattice_rank() == 2 {
        let cones = sf.fan().maximal_cones().to_vec();
        return Ok(Picture { cones, rays: sf.fan().rays(), dots: Vec::new() });
    }
    Err(Error::UnsupportedRank)
}

fn px(v: &BigInt) -> BigInt {
    v * UNIT
}

fn point(v: &[BigInt]) -> String {
    format!("{},{}", px(&v[0]), -px(&v[1]))
}

fn norm2(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// The SVG document; deterministic for a fixed input.
pub fn render_fan_svg(sf: &StackyFan) -> Result<String> {
    let pic = picture(sf)?;
    let extent = pic
        .rays
        .iter()
        .chain(&pic.dots)
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let r = extent + 1;
    let half = px(&r);
    let size = &half * 2;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="-{half} -{half} {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r##"<defs><clipPath id="frame"><rect x="-{half}" y="-{half}" width="{size}" height="{size}"/></clipPath><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#333"/></marker></defs>"##
    );
    let _ = writeln!(out, r#"<rect x="-{half}" y="-{half}" width="{size}" height="{size}" fill="white"/>"#);

    let _ = writeln!(out, r#"<g clip-path="url(#frame)">"#);
    for (k, c) in pic.cones.iter().filter(|c| c.dim() == 2).enumerate() {
        let (u, v) = (&c.rays()[0], &c.rays()[1]);
        // far enough out that the polygon covers the cone inside the frame
        let t = &r * (norm2(u) + norm2(v));
        let far = |w: &[BigInt]| -> ZVec { w.iter().map(|x| x * &t).collect() };
        let sum: ZVec = u.iter().zip(v).map(|(a, b)| a + b).collect();
        let _ = writeln!(
            out,
            r#"<polygon points="0,0 {} {} {}" fill="{}" fill-opacity="0.6" stroke="none"/>"#,
            point(&far(u)),
            point(&far(&sum)),
            point(&far(v)),
            FILLS[k % FILLS.len()]
        );
    }
    if r <= BigInt::from(20) {
        let bound: i64 = (&r).try_into().expect("small extent");
        for y in -bound..=bound {
            for x in -bound..=bound {
                let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="1.5" fill="#999"/>"##, x * UNIT, -y * UNIT);
            }
        }
    }
    let _ = writeln!(out, "</g>");

    for ray in &pic.rays {
        let _ = writeln!(
            out,
            r##"<line x1="0" y1="0" x2="{}" y2="{}" stroke="#333" stroke-width="2" marker-end="url(#arrow)"/>"##,
            px(&ray[0]),
            -px(&ray[1])
        );
    }

    let mut labels: BTreeMap<&ZVec, Vec<usize>> = BTreeMap::new();
    for (i, d) in pic.dots.iter().enumerate() {
        labels.entry(d).or_default().push(i + 1);
    }
    for (d, idx) in &labels {
        let (x, y) = (px(&d[0]), -px(&d[1]));
        let text: Vec<String> = idx.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="5" fill="#c0392b"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
            x + 7,
            y - 7,
            text.join(",")
        );
    }
    let _ = writeln!(out, r#"<circle cx="0" cy="0" r="3" fill="black"/>"#);
    out.push_str("</svg>\n");
    Ok(out)
}
