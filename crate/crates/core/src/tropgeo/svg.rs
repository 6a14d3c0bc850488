//! Deterministic SVG drawings of subdivisions and curves. Coordinates are
//! exact rationals rounded to three decimals.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{EnrichedCurve, NewtonSubdivision};
use crate::hyperfield::{q, Q};

fn num(x: &Q) -> String {
    let scaled = x * q(1000);
    let (n, d) = (scaled.numer().clone(), scaled.denom().clone());
    let half = &d / BigInt::from(2);
    let r = if n.is_negative() {
        -((-&n + &half).div_floor(&d))
    } else {
        (&n + &half).div_floor(&d)
    };
    let neg = r.is_negative();
    let a = r.abs();
    let (ip, fp) = a.div_rem(&BigInt::from(1000));
    let mut s = format!("{}{}", if neg { "-" } else { "" }, ip);
    if fp != BigInt::from(0) {
        let f = format!("{:03}", fp);
        s.push('.');
        s.push_str(f.trim_end_matches('0'));
    }
    s
}

const UNIT: i64 = 60;
const PAD: i64 = 30;

/// The support points with their labels, and the cells of the subdivision.
pub fn subdivision_svg(sd: &NewtonSubdivision, labels: Option<&[i8]>) -> String {
    let maxx = sd.points.iter().map(|p| p.first().copied().unwrap_or(0)).max().unwrap_or(0) as i64;
    let maxy = sd.points.iter().map(|p| p.get(1).copied().unwrap_or(0)).max().unwrap_or(0) as i64;
    let w = maxx * UNIT + 2 * PAD;
    let h = maxy * UNIT + 2 * PAD;
    let px = |e: &[u32]| {
        let x = e.first().copied().unwrap_or(0) as i64 * UNIT + PAD;
        let y = h - (e.get(1).copied().unwrap_or(0) as i64 * UNIT + PAD);
        (x, y)
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    for c in &sd.cells {
        let pts: Vec<String> = c
            .vertices
            .iter()
            .map(|&v| {
                let (x, y) = px(&sd.points[v]);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
            pts.join(" ")
        );
    }
    for (i, p) in sd.points.iter().enumerate() {
        let (x, y) = px(p);
        let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"black\"/>");
        if let Some(ls) = labels {
            let t = match ls[i] {
                1 => "+",
                -1 => "-",
                _ => "0",
            };
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" font-size=\"14\" fill=\"blue\">{t}</text>",
                x + 5,
                y - 5
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Edges of the curve, rays cut off past the bounding box of the vertices.
pub fn curve_svg(v: &EnrichedCurve) -> String {
    let verts = &v.curve.vertices;
    let (mut lo, mut hi) = ([q(-1), q(-1)], [q(1), q(1)]);
    for p in verts {
        for i in 0..2 {
            if p[i] < lo[i] {
                lo[i] = p[i].clone();
            }
            if p[i] > hi[i] {
                hi[i] = p[i].clone();
            }
        }
    }
    let ext = (&hi[0] - &lo[0]).max(&hi[1] - &lo[1]) / q(2) + q(1);
    for i in 0..2 {
        lo[i] = &lo[i] - &ext;
        hi[i] = &hi[i] + &ext;
    }
    let scale = q(UNIT);
    let tx = |x: &Q| (x - &lo[0]) * &scale + q(PAD);
    let ty = |y: &Q| (&hi[1] - y) * &scale + q(PAD);
    let w = tx(&hi[0]) + q(PAD);
    let h = ty(&lo[1]) + q(PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(&w),
        num(&h),
        num(&w),
        num(&h)
    );
    for e in &v.curve.edges {
        let a = &verts[e.start];
        let b = match e.end {
            Some(t) => verts[t].clone(),
            None => {
                let len = &ext * q(2);
                [
                    &a[0] + q(e.direction[0]) * &len,
                    &a[1] + q(e.direction[1]) * &len,
                ]
            }
        };
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"purple\" stroke-width=\"{}\"/>",
            num(&tx(&a[0])),
            num(&ty(&a[1])),
            num(&tx(&b[0])),
            num(&ty(&b[1])),
            1 + e.weight
        );
    }
    for p in verts {
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>",
            num(&tx(&p[0])),
            num(&ty(&p[1]))
        );
    }
    s.push_str("</svg>\n");
    s
}
