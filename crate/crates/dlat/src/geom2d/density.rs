//! Double-lattice packing density of planar convex bodies.
//!
//! The density of the best double-lattice packing of a convex domain K is
//! `A / 2 Delta(K)`, where `Delta(K)` is the least area of an inscribed
//! half-length parallelogram: a parallelogram with one side pair parallel to
//! some direction and exactly half as long as the longest chord (affine
//! diameter) of K in that direction.

use serde::{Deserialize, Serialize};

use super::polygon::{intersection_area, ConvexPolygon};
use super::profile::ChordProfile;
use super::vec2::Vec2;
use super::GeomError;
use crate::consts;

/// An unoriented planar direction, canonically an angle in `[0, pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction(f64);

impl Direction {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(std::f64::consts::PI);
        if t >= std::f64::consts::PI {
            t = 0.0;
        }
        Direction(t)
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn as_vec(self) -> Vec2 {
        Vec2::from_angle(self.0)
    }

    pub fn from_vec(v: Vec2) -> Self {
        Direction::new(v.y.atan2(v.x))
    }
}

/// A segment with deterministic orientation: `head` has the larger
/// along-direction coordinate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Segment {
    pub head: Vec2,
    pub tail: Vec2,
}

impl Segment {
    pub fn midpoint(&self) -> Vec2 {
        (self.head + self.tail) * 0.5
    }

    pub fn length(&self) -> f64 {
        (self.head - self.tail).norm()
    }

    pub fn vector(&self) -> Vec2 {
        self.head - self.tail
    }
}

/// Inscribed parallelogram with one side pair of exactly half the length of
/// the body in `direction`, sitting at the extreme offsets where such chords
/// still exist.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfLengthParallelogram {
    pub direction: Direction,
    pub chord_plus: Segment,
    pub chord_minus: Segment,
    pub area: f64,
    /// Length of each half-length side (L(theta) / 2).
    pub side_length: f64,
}

impl HalfLengthParallelogram {
    /// Checks the defining invariants against the body: sides parallel to the
    /// direction, side length L/2, endpoints on the boundary.
    pub fn validate(&self, body: &ConvexPolygon) -> Result<(), GeomError> {
        let scale = body
            .vertices()
            .iter()
            .map(|v| v.norm())
            .fold(1.0f64, f64::max);
        let tol = consts::GEOM_TOL * scale;
        let d = self.direction.as_vec();
        let full = length_in_direction(body, self.direction);
        for chord in [&self.chord_plus, &self.chord_minus] {
            if chord.vector().cross(d).abs() > tol * chord.length().max(1.0) {
                return Err(GeomError::InvalidParallelogram(
                    "side not parallel to direction".into(),
                ));
            }
            if (chord.length() - 0.5 * full).abs() > tol {
                return Err(GeomError::InvalidParallelogram(
                    "side is not half the body length".into(),
                ));
            }
            for p in [chord.head, chord.tail] {
                if body.boundary_distance(p) > tol {
                    return Err(GeomError::InvalidParallelogram(
                        "side endpoint off the boundary".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Best double-lattice packing data for a body.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PackingDensityResult {
    pub density: f64,
    pub delta: f64,
    pub area: f64,
    pub minimizing_direction: Direction,
    pub parallelogram: HalfLengthParallelogram,
}

/// Generators of a double lattice: two independent translations plus a point
/// inversion; the isometry set is `{T} union {T . I_center}` over the
/// translation lattice T.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleLattice2D {
    pub t1: Vec2,
    pub t2: Vec2,
    pub inversion_center: Vec2,
}

impl DoubleLattice2D {
    /// Area per body: half the fundamental cell of the translation lattice.
    pub fn mean_area(&self) -> f64 {
        self.t1.cross(self.t2).abs() / 2.0
    }
}

/// L(theta): length of the longest chord parallel to `theta` (the radial
/// function of the difference body K - K).
pub fn length_in_direction(body: &ConvexPolygon, theta: Direction) -> f64 {
    ChordProfile::new(body.vertices(), theta.as_vec())
        .max_length()
        .0
}

/// Builds the half-length parallelogram of K in a fixed direction.
///
/// The sides sit at the outermost offsets where chords of length `L/2`
/// exist; on a flat boundary edge longer than `L/2` the side is the centered
/// subsegment of that edge.
pub fn half_length_parallelogram(
    body: &ConvexPolygon,
    theta: Direction,
) -> Result<HalfLengthParallelogram, GeomError> {
    let profile = ChordProfile::new(body.vertices(), theta.as_vec());
    parallelogram_from_profile(&profile, theta, None)
}

/// Same construction, but with the half-length fixed by the caller (used by
/// the certificate layer, where the affine diameter is prescribed as a
/// vertex-to-opposite-edge altitude).
pub fn parallelogram_from_profile(
    profile: &ChordProfile,
    theta: Direction,
    half_length: Option<f64>,
) -> Result<HalfLengthParallelogram, GeomError> {
    let (full, _) = profile.max_length();
    if full <= 0.0 {
        return Err(GeomError::DegenerateDirection);
    }
    let half = half_length.unwrap_or(full / 2.0);
    let (s_neg, s_pos) = profile
        .band_at_length(half)
        .ok_or(GeomError::DegenerateDirection)?;
    let side = |s: f64| -> Segment {
        let (lo, hi) = profile.extent_at(s);
        if hi - lo > half {
            // Flat edge longer than the side: take the centered subsegment.
            let mid = 0.5 * (lo + hi);
            Segment {
                head: profile.point(s, mid + half / 2.0),
                tail: profile.point(s, mid - half / 2.0),
            }
        } else {
            Segment {
                head: profile.point(s, hi),
                tail: profile.point(s, lo),
            }
        }
    };
    let chord_plus = side(s_pos);
    let chord_minus = side(s_neg);
    Ok(HalfLengthParallelogram {
        direction: theta,
        chord_plus,
        chord_minus,
        area: half * (s_pos - s_neg),
        side_length: half,
    })
}

/// Result of the global direction sweep.
pub struct DeltaMin {
    pub delta: f64,
    pub direction: Direction,
    pub parallelogram: HalfLengthParallelogram,
}

fn parallelogram_area(body: &ConvexPolygon, theta: f64) -> f64 {
    half_length_parallelogram(body, Direction::new(theta))
        .map(|p| p.area)
        .unwrap_or(f64::INFINITY)
}

/// Golden-section minimization on a bracketing interval.
fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Global minimum of the half-length parallelogram area over directions:
/// a uniform coarse sweep followed by golden-section refinement around every
/// local minimum candidate. Ties are broken toward the smallest angle.
pub fn delta_min_with_samples(body: &ConvexPolygon, samples: usize) -> DeltaMin {
    assert!(samples >= 8, "sweep needs a reasonable resolution");
    let step = std::f64::consts::PI / samples as f64;
    let areas: Vec<f64> = (0..samples)
        .map(|j| parallelogram_area(body, j as f64 * step))
        .collect();

    // Local minima of the cyclic sample sequence (Delta has period pi).
    let mut candidates: Vec<f64> = Vec::new();
    for j in 0..samples {
        let prev = areas[(j + samples - 1) % samples];
        let next = areas[(j + 1) % samples];
        if areas[j] <= prev && areas[j] <= next {
            let center = j as f64 * step;
            let refined = golden_min(
                |t| parallelogram_area(body, t),
                center - step,
                center + step,
                consts::THETA_REFINE_TOL,
            );
            let mut folded = refined.rem_euclid(std::f64::consts::PI);
            if std::f64::consts::PI - folded < 1e-9 {
                folded = 0.0;
            }
            candidates.push(folded);
        }
    }

    let mut best_area = f64::INFINITY;
    for &t in &candidates {
        best_area = best_area.min(parallelogram_area(body, t));
    }
    // Deterministic tie-break: smallest angle within relative tolerance.
    let mut chosen = f64::INFINITY;
    for &t in &candidates {
        if parallelogram_area(body, t) <= best_area * (1.0 + 1e-9) && t < chosen {
            chosen = t;
        }
    }
    let direction = Direction::new(chosen);
    let parallelogram =
        half_length_parallelogram(body, direction).expect("minimizing direction is valid");
    DeltaMin {
        delta: parallelogram.area,
        direction,
        parallelogram,
    }
}

pub fn delta_min(body: &ConvexPolygon) -> DeltaMin {
    delta_min_with_samples(body, consts::SWEEP_SAMPLES)
}

/// Density of the best double-lattice packing: `area / (2 Delta)`.
pub fn double_lattice_density(body: &ConvexPolygon) -> PackingDensityResult {
    density_with_samples(body, consts::SWEEP_SAMPLES)
}

pub fn density_with_samples(body: &ConvexPolygon, samples: usize) -> PackingDensityResult {
    let min = delta_min_with_samples(body, samples);
    PackingDensityResult {
        density: body.area() / (2.0 * min.delta),
        delta: min.delta,
        area: body.area(),
        minimizing_direction: min.direction,
        parallelogram: min.parallelogram,
    }
}

/// Builds the packing double lattice witnessed by a half-length
/// parallelogram: translations by the full length along the direction and by
/// the composition of the inversions about the side endpoints; the inversion
/// center is a parallelogram vertex (endpoint of `chord_plus`), which lies on
/// the boundary of K.
pub fn build_double_lattice(
    body: &ConvexPolygon,
    par: &HalfLengthParallelogram,
) -> Result<DoubleLattice2D, GeomError> {
    par.validate(body)?;
    let d = par.direction.as_vec();
    let t1 = d * (2.0 * par.side_length);
    let t2 = (par.chord_plus.head - par.chord_minus.head) * 2.0;
    let lattice = DoubleLattice2D {
        t1,
        t2,
        inversion_center: par.chord_plus.head,
    };
    if lattice.t1.cross(lattice.t2).abs() < consts::GEOM_TOL {
        return Err(GeomError::InvalidParallelogram(
            "degenerate translation lattice".into(),
        ));
    }
    Ok(lattice)
}

/// Admissibility evidence for a packing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub max_overlap: f64,
    pub pairs_checked: usize,
    /// Translation indices (m, n, inverted) of the worst pair.
    pub worst: Option<(i64, i64, bool)>,
}

/// Checks interior-disjointness of the packing produced by a double lattice,
/// for all isometries within `shells` translation shells of the identity.
/// Overlap is reported, never thrown.
pub fn verify_admissible(
    body: &ConvexPolygon,
    lattice: &DoubleLattice2D,
    shells: i64,
) -> AdmissibilityReport {
    assert!(shells >= 1);
    let inverted = body.invert_through(lattice.inversion_center);
    let mut report = AdmissibilityReport {
        max_overlap: 0.0,
        pairs_checked: 0,
        worst: None,
    };
    for m in -shells..=shells {
        for n in -shells..=shells {
            let shift = lattice.t1 * m as f64 + lattice.t2 * n as f64;
            if m != 0 || n != 0 {
                let overlap = intersection_area(body, &body.translate(shift));
                report.pairs_checked += 1;
                if overlap > report.max_overlap {
                    report.max_overlap = overlap;
                    report.worst = Some((m, n, false));
                }
            }
            let overlap = intersection_area(body, &inverted.translate(shift));
            report.pairs_checked += 1;
            if overlap > report.max_overlap {
                report.max_overlap = overlap;
                report.worst = Some((m, n, true));
            }
        }
    }
    report
}

/// All packing copies of the body within `shells` translation shells:
/// direct translates and inverted translates, in deterministic order.
pub fn packing_copies(
    body: &ConvexPolygon,
    lattice: &DoubleLattice2D,
    shells: i64,
) -> Vec<ConvexPolygon> {
    let inverted = body.invert_through(lattice.inversion_center);
    let mut out = Vec::new();
    for m in -shells..=shells {
        for n in -shells..=shells {
            let shift = lattice.t1 * m as f64 + lattice.t2 * n as f64;
            out.push(body.translate(shift));
        }
    }
    for m in -shells..=shells {
        for n in -shells..=shells {
            let shift = lattice.t1 * m as f64 + lattice.t2 * n as f64;
            out.push(inverted.translate(shift));
        }
    }
    out
}

/// Smallest eps >= 0 with `(1-eps) M <= M' <= (1+eps) M` (as sets, dilations
/// about the origin). Both bodies must contain the origin in their interior.
/// The radial ratio is monotone between vertex directions of either polygon,
/// so scanning those directions is exact.
pub fn containment_epsilon(m: &ConvexPolygon, mp: &ConvexPolygon) -> Result<f64, GeomError> {
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max = f64::NEG_INFINITY;
    for v in m.vertices().iter().chain(mp.vertices().iter()) {
        let w = v.normalized();
        let r = m.radial(w)?;
        let rp = mp.radial(w)?;
        let ratio = rp / r;
        ratio_min = ratio_min.min(ratio);
        ratio_max = ratio_max.max(ratio);
    }
    Ok((ratio_max - 1.0).max(1.0 - ratio_min).max(0.0))
}
