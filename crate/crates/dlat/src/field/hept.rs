//! Exact constants of the regular heptagon with unit circumradius.
//!
//! Vertices are `m_i = R^i (1, 0)` where `R` rotates by `2*pi/7`; all
//! coordinates live in Q(u, v). The barycentric parameters `a`, `b`, the
//! minimal half-length parallelogram area `delta`, the heptagon area, and
//! the packing density are the closed forms used by the certificate layer.

use super::{rat, ExactPoint, FieldElement};

/// cos(2*pi/7) = 2u^2 - 1.
pub fn cos_step() -> FieldElement {
    FieldElement::from_poly(1, 1, [-1, 0, 2], false)
}

/// sin(2*pi/7) = 2uv.
pub fn sin_step() -> FieldElement {
    FieldElement::from_poly(2, 1, [0, 1, 0], true)
}

/// The seven vertices, exactly, counterclockwise starting at (1, 0).
pub fn vertices() -> [ExactPoint; 7] {
    let c1 = cos_step();
    let s1 = sin_step();
    let mut out: Vec<ExactPoint> = Vec::with_capacity(7);
    let mut c = FieldElement::one();
    let mut s = FieldElement::zero();
    for _ in 0..7 {
        out.push(ExactPoint::new(c.clone(), s.clone()));
        let c_next = &c.mul(&c1) - &s.mul(&s1);
        let s_next = &s.mul(&c1) + &c.mul(&s1);
        c = c_next;
        s = s_next;
    }
    out.try_into().expect("exactly seven vertices")
}

/// Side parameter a = 7/4 - 2u^2.
pub fn a() -> FieldElement {
    FieldElement::from_poly(1, 4, [7, 0, -8], false)
}

/// Side parameter b = -1/2 + u^2.
pub fn b() -> FieldElement {
    FieldElement::from_poly(1, 2, [-1, 0, 2], false)
}

/// Heptagon area A = 7uv.
pub fn area() -> FieldElement {
    FieldElement::from_poly(7, 1, [0, 1, 0], true)
}

/// Minimal half-length parallelogram area Delta = (-19 + 2u + 56u^2) v / 8.
pub fn delta() -> FieldElement {
    FieldElement::from_poly(1, 8, [-19, 2, 56], true)
}

/// Double-lattice packing density A / (2 Delta) = (2/97)(-111 + 492u - 356u^2).
pub fn density() -> FieldElement {
    FieldElement::from_poly(2, 97, [-111, 492, -356], false)
}

/// The corners of the least-area half-length rectangle, exactly:
/// `p1 = (1-a) m1 + a m2`, `p2 = (1-b) m2 + b m3`, `p3 = (1-b) m5 + b m4`,
/// `p4 = (1-a) m6 + a m5`.
pub fn rectangle() -> [ExactPoint; 4] {
    let m = vertices();
    let a = a();
    let b = b();
    [
        ExactPoint::lerp(&m[1], &m[2], &a),
        ExactPoint::lerp(&m[2], &m[3], &b),
        ExactPoint::lerp(&m[5], &m[4], &b),
        ExactPoint::lerp(&m[6], &m[5], &a),
    ]
}

/// Vertex coordinates rounded once to f64 for the floating-point geometry
/// layer.
pub fn vertices_f64() -> Vec<[f64; 2]> {
    vertices().iter().map(ExactPoint::to_f64).collect()
}

/// Altitude foot of the vertex m_0 on the opposite edge: k_0 = (-u, 0).
pub fn altitude_foot() -> ExactPoint {
    ExactPoint::new(
        FieldElement::from_poly(-1, 1, [0, 1, 0], false),
        FieldElement::zero(),
    )
}

/// Length of the heptagon in the m0 -> k0 direction: 1 + u.
pub fn axis_length() -> FieldElement {
    FieldElement::from_poly(1, 1, [1, 1, 0], false)
}

/// The density written as A * (2 Delta)^-1, evaluated exactly.
pub fn density_from_ratio() -> FieldElement {
    let two_delta = delta().scale(&rat(2, 1));
    area().mul(&two_delta.invert().expect("delta is nonzero"))
}
