//! Chord-length profile of a convex polygon in a fixed direction.
//!
//! For a unit direction `d` with normal `n = perp(d)`, the chord of the
//! polygon on the line `<x, n> = s` has a length that is a concave,
//! piecewise-linear function of the offset `s`. The profile stores the two
//! boundary chains from the minimal-offset vertex to the maximal-offset
//! vertex; every query is linear interpolation along those chains, so chord
//! lengths, maximal chords (affine diameters), and exact half-length crossing
//! offsets all come out without root-finding noise.

use super::vec2::Vec2;

#[derive(Clone, Debug)]
pub struct ChordProfile {
    pub dir: Vec2,
    pub normal: Vec2,
    /// Sorted distinct offsets of the polygon vertices.
    breaks: Vec<f64>,
    /// (offset, coordinate along dir) for the counterclockwise chain.
    chain_a: Vec<(f64, f64)>,
    /// Same for the clockwise chain.
    chain_b: Vec<(f64, f64)>,
}

fn chain_extent(chain: &[(f64, f64)], s: f64) -> (f64, f64) {
    // Largest k with chain[k].0 <= s.
    let mut lo = 0usize;
    let mut hi = chain.len();
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if chain[mid].0 <= s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = lo;
    if chain[k].0 == s {
        // Collect the run of equal offsets (an edge parallel to dir shows up
        // as consecutive equal-offset vertices).
        let mut tmin = chain[k].1;
        let mut tmax = chain[k].1;
        let mut j = k;
        while j > 0 && chain[j - 1].0 == s {
            j -= 1;
            tmin = tmin.min(chain[j].1);
            tmax = tmax.max(chain[j].1);
        }
        let mut j = k;
        while j + 1 < chain.len() && chain[j + 1].0 == s {
            j += 1;
            tmin = tmin.min(chain[j].1);
            tmax = tmax.max(chain[j].1);
        }
        (tmin, tmax)
    } else {
        debug_assert!(k + 1 < chain.len(), "offset out of range");
        let (s0, t0) = chain[k];
        let (s1, t1) = chain[k + 1];
        let t = t0 + (t1 - t0) * ((s - s0) / (s1 - s0));
        (t, t)
    }
}

impl ChordProfile {
    pub fn new(vertices: &[Vec2], dir: Vec2) -> Self {
        let dir = dir.normalized();
        let normal = dir.perp();
        let n = vertices.len();
        let offsets: Vec<f64> = vertices.iter().map(|&v| v.dot(normal)).collect();
        let (imin, _) = offsets
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let (imax, _) = offsets
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();

        let mut chain_a = Vec::with_capacity(n);
        let mut i = imin;
        loop {
            chain_a.push((offsets[i], vertices[i].dot(dir)));
            if i == imax {
                break;
            }
            i = (i + 1) % n;
        }
        let mut chain_b = Vec::with_capacity(n);
        let mut i = imin;
        loop {
            chain_b.push((offsets[i], vertices[i].dot(dir)));
            if i == imax {
                break;
            }
            i = (i + n - 1) % n;
        }
        // Convexity makes both chains monotone in the offset, up to exact
        // ties from direction-parallel edges; enforce sortedness so that
        // roundoff at the chain ends cannot break the binary search.
        chain_a.sort_by(|a, b| a.0.total_cmp(&b.0));
        chain_b.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut breaks = offsets;
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        ChordProfile {
            dir,
            normal,
            breaks,
            chain_a,
            chain_b,
        }
    }

    pub fn s_min(&self) -> f64 {
        self.breaks[0]
    }

    pub fn s_max(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    /// Chord extent along `dir` at offset `s`: (t_low, t_high).
    pub fn extent_at(&self, s: f64) -> (f64, f64) {
        let (a_lo, a_hi) = chain_extent(&self.chain_a, s);
        let (b_lo, b_hi) = chain_extent(&self.chain_b, s);
        (a_lo.min(b_lo), a_hi.max(b_hi))
    }

    pub fn length_at(&self, s: f64) -> f64 {
        let (lo, hi) = self.extent_at(s);
        hi - lo
    }

    /// Maximal chord length and the smallest offset achieving it.
    pub fn max_length(&self) -> (f64, f64) {
        let mut best_len = f64::NEG_INFINITY;
        let mut best_s = self.s_min();
        for &s in &self.breaks {
            let len = self.length_at(s);
            if len > best_len {
                best_len = len;
                best_s = s;
            }
        }
        (best_len, best_s)
    }

    /// Outermost offsets where the chord length is still at least `target`:
    /// `s_neg <= s_pos` with `length >= target` on `[s_neg, s_pos]`. The
    /// profile is concave, so each side has at most one crossing; when the
    /// profile is at least `target` all the way to an extreme offset (a flat
    /// edge at the boundary), that extreme is returned.
    ///
    /// Returns `None` when no chord reaches `target`.
    pub fn band_at_length(&self, target: f64) -> Option<(f64, f64)> {
        let lens: Vec<f64> = self.breaks.iter().map(|&s| self.length_at(s)).collect();
        let kmax = (0..self.breaks.len()).max_by(|&a, &b| lens[a].total_cmp(&lens[b]))?;
        if lens[kmax] < target {
            return None;
        }
        // Walk down from the peak.
        let mut s_pos = self.s_max();
        for k in kmax..self.breaks.len() {
            if lens[k] >= target {
                s_pos = self.breaks[k];
                continue;
            }
            let prev = k - 1;
            let f0 = lens[prev] - target;
            let f1 = lens[k] - target;
            s_pos = self.breaks[prev]
                + (self.breaks[k] - self.breaks[prev]) * (f0 / (f0 - f1));
            break;
        }
        let mut s_neg = self.s_min();
        for k in (0..=kmax).rev() {
            if lens[k] >= target {
                s_neg = self.breaks[k];
                continue;
            }
            let next = k + 1;
            let f0 = lens[next] - target;
            let f1 = lens[k] - target;
            s_neg = self.breaks[next]
                - (self.breaks[next] - self.breaks[k]) * (f0 / (f0 - f1));
            break;
        }
        Some((s_neg, s_pos))
    }

    /// Reconstruct a plane point from (offset, along-direction) coordinates.
    pub fn point(&self, s: f64, t: f64) -> Vec2 {
        self.dir * t + self.normal * s
    }

    /// Chord endpoints at offset `s`, ordered (low t, high t).
    pub fn chord_at(&self, s: f64) -> (Vec2, Vec2) {
        let (lo, hi) = self.extent_at(s);
        (self.point(s, lo), self.point(s, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::super::polygon::ConvexPolygon;
    use super::super::vec2::vec2;
    use super::*;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::from_coords(&[[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]).unwrap()
    }

    #[test]
    fn square_axis_profile() {
        let sq = unit_square();
        let p = ChordProfile::new(sq.vertices(), vec2(1.0, 0.0));
        let (len, _) = p.max_length();
        assert!((len - 1.0).abs() < 1e-15);
        // Chord length is 1 across the whole band.
        assert!((p.length_at(0.3) - 1.0).abs() < 1e-15);
        let (s_neg, s_pos) = p.band_at_length(0.5).unwrap();
        assert!((s_neg + 0.5).abs() < 1e-15);
        assert!((s_pos - 0.5).abs() < 1e-15);
    }

    #[test]
    fn square_diagonal_profile() {
        let sq = unit_square();
        let d = vec2(1.0, 1.0).normalized();
        let p = ChordProfile::new(sq.vertices(), d);
        let (len, s) = p.max_length();
        assert!((len - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.abs() < 1e-12);
        let (s_neg, s_pos) = p.band_at_length(len / 2.0).unwrap();
        // Triangle profile: crossing at half the remaining height.
        assert!((s_pos - 2f64.sqrt() / 4.0).abs() < 1e-12);
        assert!((s_neg + 2f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_profile_flat_bottom() {
        let t = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]])
            .unwrap();
        let p = ChordProfile::new(t.vertices(), vec2(1.0, 0.0));
        let (len, _) = p.max_length();
        assert!((len - 1.0).abs() < 1e-15);
        let (s_neg, s_pos) = p.band_at_length(0.5).unwrap();
        assert!(s_neg.abs() < 1e-15, "flat bottom edge is the lower band end");
        assert!((s_pos - 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn chord_endpoints_lie_on_line() {
        let sq = unit_square();
        let d = vec2(0.3, 1.0).normalized();
        let p = ChordProfile::new(sq.vertices(), d);
        let (a, b) = p.chord_at(0.1);
        assert!((a.dot(p.normal) - 0.1).abs() < 1e-12);
        assert!((b.dot(p.normal) - 0.1).abs() < 1e-12);
        assert!(b.dot(p.dir) >= a.dot(p.dir));
    }
}
