//! Minimal 3D vector and rotation helpers.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn vec3(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3 { x, y, z }
}

impl Vec3 {
    pub const ZERO: Vec3 = vec3(0.0, 0.0, 0.0);

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        vec3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        self * (1.0 / n)
    }

    pub fn scale(self, k: f64) -> Vec3 {
        vec3(self.x * k, self.y * k, self.z * k)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        vec3(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        vec3(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        vec3(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        self.scale(k)
    }
}

/// Row-major 3x3 rotation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        vec3(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        Mat3(out)
    }

    /// Rodrigues rotation about a unit axis.
    pub fn about_axis(axis: Vec3, angle: f64) -> Mat3 {
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (axis.x, axis.y, axis.z);
        Mat3([
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ])
    }

    /// A rotation taking the unit vector `from` to the unit vector `to`.
    pub fn rotation_between(from: Vec3, to: Vec3) -> Mat3 {
        let c = from.dot(to).clamp(-1.0, 1.0);
        let axis = from.cross(to);
        let s = axis.norm();
        if s < 1e-14 {
            if c > 0.0 {
                return Mat3::IDENTITY;
            }
            // Antipodal: rotate by pi about any perpendicular axis.
            let helper = if from.x.abs() < 0.9 {
                vec3(1.0, 0.0, 0.0)
            } else {
                vec3(0.0, 1.0, 0.0)
            };
            let perp = from.cross(helper).normalized();
            return Mat3::about_axis(perp, std::f64::consts::PI);
        }
        Mat3::about_axis(axis * (1.0 / s), s.atan2(c))
    }
}

/// Solves the 3x3 system with rows `r0, r1, r2` and right-hand side `b`.
pub fn solve3(r0: Vec3, r1: Vec3, r2: Vec3, b: Vec3) -> Option<Vec3> {
    let det = r0.dot(r1.cross(r2));
    if det.abs() < 1e-14 {
        return None;
    }
    // x = R^{-1} b with R^{-1} = [r1 x r2 | r2 x r0 | r0 x r1] / det.
    let inv = 1.0 / det;
    let v = r1.cross(r2) * b.x + r2.cross(r0) * b.y + r0.cross(r1) * b.z;
    Some(v * inv)
}

pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    a.dot(b.cross(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_preserve_length_and_map_vectors() {
        let a = vec3(0.3, -0.5, 0.81).normalized();
        let b = vec3(-0.7, 0.1, 0.7).normalized();
        let r = Mat3::rotation_between(a, b);
        let ra = r.apply(a);
        assert!((ra - b).norm() < 1e-12);
        assert!((r.apply(vec3(1.0, 2.0, 3.0)).norm() - vec3(1.0, 2.0, 3.0).norm()).abs() < 1e-12);

        let spin = Mat3::about_axis(b, 1.3);
        assert!((spin.apply(b) - b).norm() < 1e-12);
    }

    #[test]
    fn antipodal_rotation() {
        let a = vec3(0.0, 0.0, 1.0);
        let r = Mat3::rotation_between(a, -a);
        assert!((r.apply(a) + a).norm() < 1e-12);
    }

    #[test]
    fn solve3_cramer() {
        let x = solve3(
            vec3(2.0, 0.0, 0.0),
            vec3(0.0, 3.0, 0.0),
            vec3(1.0, 0.0, 1.0),
            vec3(4.0, 6.0, 5.0),
        )
        .unwrap();
        assert!((x - vec3(2.0, 2.0, 3.0)).norm() < 1e-12);
    }
}
