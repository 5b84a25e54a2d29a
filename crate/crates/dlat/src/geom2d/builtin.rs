//! Built-in bodies. The heptagon ships with exact field coordinates,
//! evaluated to floats only here at the geometry boundary.

use std::str::FromStr;

use super::polygon::ConvexPolygon;
use super::vec2::{vec2, Vec2};
use crate::field::hept;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Regular heptagon, unit circumradius, vertex at (1, 0).
    Heptagon,
    /// Unit square centered at the origin.
    Square,
    /// Equilateral triangle with unit side.
    Triangle,
    /// Regular n-gon with unit circumradius.
    Ngon(u32),
    /// Disk approximated by a regular n-gon with unit circumradius.
    Disk(u32),
}

impl Builtin {
    pub fn polygon(self) -> ConvexPolygon {
        match self {
            Builtin::Heptagon => {
                let verts: Vec<Vec2> = hept::vertices_f64()
                    .into_iter()
                    .map(|[x, y]| vec2(x, y))
                    .collect();
                ConvexPolygon::new(verts).expect("exact heptagon is convex")
            }
            Builtin::Square => ConvexPolygon::from_coords(&[
                [-0.5, -0.5],
                [0.5, -0.5],
                [0.5, 0.5],
                [-0.5, 0.5],
            ])
            .expect("square is convex"),
            Builtin::Triangle => {
                let h = 3f64.sqrt() / 2.0;
                ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]])
                    .expect("triangle is convex")
            }
            Builtin::Ngon(n) | Builtin::Disk(n) => regular_ngon(n),
        }
    }
}

pub fn regular_ngon(n: u32) -> ConvexPolygon {
    assert!(n >= 3, "need at least a triangle");
    let verts: Vec<Vec2> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec2(t.cos(), t.sin())
        })
        .collect();
    ConvexPolygon::new(verts).expect("regular polygon is convex")
}

impl FromStr for Builtin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "heptagon" => Ok(Builtin::Heptagon),
            "square" => Ok(Builtin::Square),
            "triangle" => Ok(Builtin::Triangle),
            other => {
                if let Some(k) = other.strip_prefix("ngon:") {
                    let n: u32 = k.parse().map_err(|_| format!("bad ngon count {k:?}"))?;
                    if n < 3 {
                        return Err("ngon needs at least 3 vertices".into());
                    }
                    Ok(Builtin::Ngon(n))
                } else if let Some(k) = other.strip_prefix("disk:") {
                    let n: u32 = k.parse().map_err(|_| format!("bad disk count {k:?}"))?;
                    if n < 3 {
                        return Err("disk needs at least 3 vertices".into());
                    }
                    Ok(Builtin::Disk(n))
                } else {
                    Err(format!(
                        "unknown builtin {other:?} (expected heptagon, square, triangle, ngon:k, disk:k)"
                    ))
                }
            }
        }
    }
}
