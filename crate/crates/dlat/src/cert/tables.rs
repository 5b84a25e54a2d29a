//! Certificate data tables.
//!
//! The first-order vectors `f_0`, the solution-space basis `u_1`, `u_2`, the
//! Hessian `F_0`, and the boundary-perturbation vectors `f_0'` and the six
//! representative `g'` rows are shipped as a JSON file of exact field
//! elements (`data/tables.json`, embedded at compile time). The remaining
//! vectors are generated by the index permutations: vertex indices cycle by
//! `2i` in the 14 vertex coordinates and by `4i` in the 28 boundary-height
//! coordinates.
//!
//! A compact in-source transcription of the same data backs a consistency
//! test, so the shipped file cannot drift silently.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::field::FieldElement;

use super::CertError;

pub const DIM_X: usize = 14;
pub const DIM_XP: usize = 42;

/// Raw table file layout: arrays of field elements, each element six "p/q"
/// strings in the basis [1, u, u^2, v, uv, u^2v].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TablesFile {
    pub f0: Vec<FieldElement>,
    pub u1: Vec<FieldElement>,
    pub u2: Vec<FieldElement>,
    pub hessian0: Vec<Vec<FieldElement>>,
    pub fp0: Vec<FieldElement>,
    pub g1: Vec<FieldElement>,
    pub g8: Vec<FieldElement>,
    pub g15: Vec<FieldElement>,
    pub g22: Vec<FieldElement>,
    pub g29: Vec<FieldElement>,
    pub g36: Vec<FieldElement>,
}

/// Validated tables plus cached f64 mirrors for the numeric checks.
pub struct Tables {
    pub file: TablesFile,
    pub f0_num: Vec<f64>,
    pub u1_num: Vec<f64>,
    pub u2_num: Vec<f64>,
    pub hessian0_num: Vec<Vec<f64>>,
    pub fp0_num: Vec<f64>,
    pub g_reps_num: [Vec<f64>; 6],
}

static TABLES: OnceLock<Tables> = OnceLock::new();

pub const TABLES_JSON: &str = include_str!("../../data/tables.json");

impl Tables {
    pub fn get() -> &'static Tables {
        TABLES.get_or_init(|| {
            let file: TablesFile =
                serde_json::from_str(TABLES_JSON).expect("embedded tables.json parses");
            Tables::validate(&file).expect("embedded tables are well-formed");
            Tables::from_file(file)
        })
    }

    pub fn from_file(file: TablesFile) -> Tables {
        let num = |v: &[FieldElement]| -> Vec<f64> { v.iter().map(|e| e.to_f64()).collect() };
        let f0_num = num(&file.f0);
        let u1_num = num(&file.u1);
        let u2_num = num(&file.u2);
        let hessian0_num = file.hessian0.iter().map(|row| num(row)).collect();
        let fp0_num = num(&file.fp0);
        let g_reps_num = [
            num(&file.g1),
            num(&file.g8),
            num(&file.g15),
            num(&file.g22),
            num(&file.g29),
            num(&file.g36),
        ];
        Tables {
            file,
            f0_num,
            u1_num,
            u2_num,
            hessian0_num,
            fp0_num,
            g_reps_num,
        }
    }

    pub fn validate(file: &TablesFile) -> Result<(), CertError> {
        let want = |name: &str, got: usize, expect: usize| {
            if got == expect {
                Ok(())
            } else {
                Err(CertError::TableFormat(format!(
                    "{name}: expected {expect} entries, found {got}"
                )))
            }
        };
        want("f0", file.f0.len(), DIM_X)?;
        want("u1", file.u1.len(), DIM_X)?;
        want("u2", file.u2.len(), DIM_X)?;
        want("hessian0", file.hessian0.len(), DIM_X)?;
        for (r, row) in file.hessian0.iter().enumerate() {
            want(&format!("hessian0 row {r}"), row.len(), DIM_X)?;
        }
        want("fp0", file.fp0.len(), DIM_XP)?;
        for (name, g) in [
            ("g1", &file.g1),
            ("g8", &file.g8),
            ("g15", &file.g15),
            ("g22", &file.g22),
            ("g29", &file.g29),
            ("g36", &file.g36),
        ] {
            want(name, g.len(), DIM_XP)?;
        }
        // The Hessian must be exactly symmetric; the table transcribes both
        // triangles, so this catches transcription slips.
        for r in 0..DIM_X {
            for c in (r + 1)..DIM_X {
                if !(&file.hessian0[r][c] - &file.hessian0[c][r]).is_zero() {
                    return Err(CertError::TableFormat(format!(
                        "hessian0 not symmetric at ({r}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// f_i: the gradient vector for the i-th altitude functional, obtained by
    /// cycling vertex indices of f_0 by i.
    pub fn f(&self, i: usize) -> Vec<FieldElement> {
        cycle_x(&self.file.f0, i)
    }

    pub fn f_num(&self, i: usize) -> Vec<f64> {
        cycle_x_f64(&self.f0_num, i)
    }

    /// F_i: Hessian, both index sets cycled.
    pub fn hessian(&self, i: usize) -> Vec<Vec<FieldElement>> {
        let p = x_perm(i);
        let mut out = vec![vec![FieldElement::zero(); DIM_X]; DIM_X];
        for r in 0..DIM_X {
            for c in 0..DIM_X {
                out[p[r]][p[c]] = self.file.hessian0[r][c].clone();
            }
        }
        out
    }

    pub fn hessian_num(&self, i: usize) -> Vec<Vec<f64>> {
        let p = x_perm(i);
        let mut out = vec![vec![0.0; DIM_X]; DIM_X];
        for r in 0..DIM_X {
            for c in 0..DIM_X {
                out[p[r]][p[c]] = self.hessian0_num[r][c];
            }
        }
        out
    }

    /// f_i': boundary-perturbation gradient of the i-th replacement
    /// functional.
    pub fn fp(&self, i: usize) -> Vec<FieldElement> {
        cycle_xp(&self.file.fp0, i)
    }

    pub fn fp_num(&self, i: usize) -> Vec<f64> {
        cycle_xp_f64(&self.fp0_num, i)
    }

    /// g_j' for j in 1..=42: representative of the family cycled by the slot.
    pub fn g(&self, j: usize) -> Vec<FieldElement> {
        assert!((1..=DIM_XP).contains(&j));
        let family = (j - 1) / 7;
        let slot = (j - 1) % 7;
        let rep = match family {
            0 => &self.file.g1,
            1 => &self.file.g8,
            2 => &self.file.g15,
            3 => &self.file.g22,
            4 => &self.file.g29,
            _ => &self.file.g36,
        };
        cycle_xp(rep, slot)
    }

    pub fn g_num(&self, j: usize) -> Vec<f64> {
        assert!((1..=DIM_XP).contains(&j));
        let family = (j - 1) / 7;
        let slot = (j - 1) % 7;
        cycle_xp_f64(&self.g_reps_num[family], slot)
    }
}

/// Permutation of the 14 vertex coordinates that advances vertex labels by
/// `i`: coordinate `2j + c` moves to `2((j + i) mod 7) + c`.
pub fn x_perm(i: usize) -> [usize; DIM_X] {
    let mut p = [0usize; DIM_X];
    for j in 0..7 {
        for c in 0..2 {
            p[2 * j + c] = 2 * ((j + i) % 7) + c;
        }
    }
    p
}

/// Permutation of the 28 boundary-height coordinates (4 per edge).
fn h_perm(i: usize) -> [usize; 28] {
    let mut p = [0usize; 28];
    for j in 0..7 {
        for c in 0..4 {
            p[4 * j + c] = 4 * ((j + i) % 7) + c;
        }
    }
    p
}

fn cycle_x(v: &[FieldElement], i: usize) -> Vec<FieldElement> {
    let p = x_perm(i);
    let mut out = vec![FieldElement::zero(); DIM_X];
    for k in 0..DIM_X {
        out[p[k]] = v[k].clone();
    }
    out
}

fn cycle_x_f64(v: &[f64], i: usize) -> Vec<f64> {
    let p = x_perm(i);
    let mut out = vec![0.0; DIM_X];
    for k in 0..DIM_X {
        out[p[k]] = v[k];
    }
    out
}

fn cycle_xp(v: &[FieldElement], i: usize) -> Vec<FieldElement> {
    let px = x_perm(i);
    let ph = h_perm(i);
    let mut out = vec![FieldElement::zero(); DIM_XP];
    for k in 0..DIM_X {
        out[px[k]] = v[k].clone();
    }
    for k in 0..28 {
        out[DIM_X + ph[k]] = v[DIM_X + k].clone();
    }
    out
}

fn cycle_xp_f64(v: &[f64], i: usize) -> Vec<f64> {
    let px = x_perm(i);
    let ph = h_perm(i);
    let mut out = vec![0.0; DIM_XP];
    for k in 0..DIM_X {
        out[px[k]] = v[k];
    }
    for k in 0..28 {
        out[DIM_X + ph[k]] = v[DIM_X + k];
    }
    out
}

// ----------------------------------------------------------------------
// Compact in-source transcription. Each entry is
// (scale_num, scale_den, [c0, c1, c2], times_v) representing
// (scale_num/scale_den) * (c0 + c1 u + c2 u^2) * v^{0|1}.
// ----------------------------------------------------------------------

type P = (i64, i64, [i64; 3], bool);

const Z: P = (0, 1, [0, 0, 0], false);

fn build(p: P) -> FieldElement {
    FieldElement::from_poly(p.0, p.1, p.2, p.3)
}

fn build_vec(ps: &[P]) -> Vec<FieldElement> {
    ps.iter().map(|&p| build(p)).collect()
}

const F0: [P; 14] = [
    (-2, 679, [419, -452, 40], false),
    Z,
    (1, 1358, [587, -148, -732], false),
    (-4, 679, [-81, -8, 199], true),
    (3, 679, [-39, 68, 6], false),
    (6, 679, [76, -135, 48], true),
    (1, 14, [5, -12, 8], false),
    (2, 97, [-46, 23, 22], true),
    (1, 14, [5, -12, 8], false),
    (-2, 97, [-46, 23, 22], true),
    (3, 679, [-39, 68, 6], false),
    (-6, 679, [76, -135, 48], true),
    (1, 1358, [587, -148, -732], false),
    (4, 679, [-81, -8, 199], true),
];

const U1: [P; 14] = [
    Z,
    Z,
    (1, 1609, [-1171, 1296, 3652], true),
    (1, 3218, [2631, -194, -60], false),
    Z,
    Z,
    (1, 1609, [-1911, 2104, 4300], true),
    (1, 3218, [-295, 670, -1916], false),
    (-2, 1609, [-930, 885, 2032], true),
    (-2, 1609, [-140, -282, 427], false),
    Z,
    Z,
    Z,
    (1, 1, [1, 0, 0], false),
];

const U2: [P; 14] = [
    Z,
    Z,
    (1, 3218, [2631, -194, -60], false),
    (-1, 11263, [-13669, 13864, 19084], true),
    Z,
    Z,
    (1, 3218, [-1241, -454, 1452], false),
    (-1, 11263, [-10219, 6792, 19020], true),
    (1, 1609, [561, -456, 622], false),
    (2, 11263, [-5336, 6583, 7908], true),
    Z,
    Z,
    (1, 1, [1, 0, 0], false),
    Z,
];

/// F_0 by columns, as printed: `F0_COLS[c][r]` is the entry in column e_{c+1}
/// and row e_{r+1}.
const F0_COLS: [[P; 14]; 14] = [
    // column e1
    [
        (8, 461041, [194143, -526054, 360624], false),
        Z,
        (-2, 461041, [72529, -63570, 30298], false),
        (4, 461041, [-60408, -31391, 115516], true),
        (2, 461041, [19669, -35394, 47802], false),
        (-4, 461041, [88155, -230075, 174752], true),
        (1, 679, [-569, 2564, -2136], false),
        (4, 65863, [33298, -78729, 50406], true),
        (1, 679, [-569, 2564, -2136], false),
        (-4, 65863, [33298, -78729, 50406], true),
        (2, 461041, [19669, -35394, 47802], false),
        (4, 461041, [88155, -230075, 174752], true),
        (-2, 461041, [72529, -63570, 30298], false),
        (-4, 461041, [-60408, -31391, 115516], true),
    ],
    // column e2
    [
        Z,
        Z,
        (-4, 49, [-4, -1, 10], true),
        (1, 7, [1, 0, 0], false),
        Z,
        Z,
        (4, 679, [31, -258, 40], true),
        (-4, 679, [129, -113, 10], false),
        (-4, 679, [31, -258, 40], true),
        (-4, 679, [129, -113, 10], false),
        Z,
        Z,
        (4, 49, [-4, -1, 10], true),
        (1, 7, [1, 0, 0], false),
    ],
    // column e3
    [
        (-2, 461041, [72529, -63570, 30298], false),
        (-4, 49, [-4, -1, 10], true),
        (1, 461041, [-20089, -45197, -24338], false),
        (-1, 461041, [15943, 262998, 380160], true),
        (1, 461041, [759, 107533, 100614], false),
        (1, 461041, [-149167, -245274, 634392], true),
        (1, 9506, [-1347, 2080, 13444], false),
        (2, 65863, [-7673, 14458, 17178], true),
        (-3, 9506, [-587, 2088, 3060], false),
        (2, 65863, [7479, 13866, 26278], true),
        (1, 922082, [-166195, 68402, 95304], false),
        (-3, 461041, [41199, -45674, 5436], true),
        (1, 461041, [28120, 29493, -21622], false),
        (1, 461041, [-79117, -84650, 70536], true),
    ],
    // column e4
    [
        (4, 461041, [-60408, -31391, 115516], true),
        (1, 7, [1, 0, 0], false),
        (-1, 461041, [15943, 262998, 380160], true),
        (1, 65863, [-23109, -25645, 18926], false),
        (3, 461041, [8985, 89258, 119032], true),
        (1, 65863, [20449, 1367, -33410], false),
        (2, 4753, [-439, 1432, 3082], true),
        (1, 131726, [66455, 40832, -105836], false),
        (-2, 4753, [-583, 1116, 3134], true),
        (1, 131726, [65465, 43752, -88164], false),
        (1, 461041, [-96429, -46894, 182108], true),
        (3, 131726, [-14829, -8154, 26800], false),
        (-1, 461041, [-79117, -84650, 70536], true),
        (1, 65863, [-21996, -12961, 35782], false),
    ],
    // column e5
    [
        (2, 461041, [19669, -35394, 47802], false),
        Z,
        (1, 461041, [759, 107533, 100614], false),
        (3, 461041, [8985, 89258, 119032], true),
        (1, 922082, [213769, -567974, -163748], false),
        (-3, 461041, [68953, -192732, 128460], true),
        (1, 1358, [245, -656, -948], false),
        (-4, 461041, [61800, -34586, 543], true),
        (2, 679, [-102, 342, 53], false),
        (-2, 65863, [13272, -6927, 26312], true),
        (3, 922082, [47265, -111466, 50436], false),
        (3, 461041, [68953, -192732, 128460], true),
        (1, 922082, [-166195, 68402, 95304], false),
        (-1, 461041, [-96429, -46894, 182108], true),
    ],
    // column e6
    [
        (-4, 461041, [88155, -230075, 174752], true),
        Z,
        (1, 461041, [-149167, -245274, 634392], true),
        (1, 65863, [20449, 1367, -33410], false),
        (-3, 461041, [68953, -192732, 128460], true),
        (1, 18818, [12903, -44330, 35636], false),
        (4, 679, [109, -200, 125], true),
        (1, 131726, [-41951, 80776, -28660], false),
        (6, 4753, [320, -1033, 488], true),
        (30, 65863, [662, -622, 25], false),
        (-3, 461041, [68953, -192732, 128460], true),
        (-9, 131726, [11911, -36462, 25820], false),
        (3, 461041, [41199, -45674, 5436], true),
        (3, 131726, [-14829, -8154, 26800], false),
    ],
    // column e7
    [
        (1, 679, [-569, 2564, -2136], false),
        (4, 679, [31, -258, 40], true),
        (1, 9506, [-1347, 2080, 13444], false),
        (2, 4753, [-439, 1432, 3082], true),
        (1, 1358, [245, -656, -948], false),
        (4, 679, [109, -200, 125], true),
        (1, 9506, [4441, -13812, -8488], false),
        (-6, 679, [-27, -229, 422], true),
        (1, 9506, [857, -14736, 33848], false),
        (2, 4753, [1709, -5171, 722], true),
        (2, 679, [-102, 342, 53], false),
        (-6, 4753, [320, -1033, 488], true),
        (-3, 9506, [-587, 2088, 3060], false),
        (2, 4753, [-583, 1116, 3134], true),
    ],
    // column e8
    [
        (4, 65863, [33298, -78729, 50406], true),
        (-4, 679, [129, -113, 10], false),
        (2, 65863, [-7673, 14458, 17178], true),
        (1, 131726, [66455, 40832, -105836], false),
        (-4, 461041, [61800, -34586, 543], true),
        (1, 131726, [-41951, 80776, -28660], false),
        (-6, 679, [-27, -229, 422], true),
        (1, 131726, [120805, -361636, 219960], false),
        (-2, 4753, [1709, -5171, 722], true),
        (1, 131726, [-103345, 33000, 84232], false),
        (2, 65863, [13272, -6927, 26312], true),
        (30, 65863, [662, -622, 25], false),
        (-2, 65863, [7479, 13866, 26278], true),
        (1, 131726, [65465, 43752, -88164], false),
    ],
    // column e9
    [
        (1, 679, [-569, 2564, -2136], false),
        (-4, 679, [31, -258, 40], true),
        (-3, 9506, [-587, 2088, 3060], false),
        (-2, 4753, [-583, 1116, 3134], true),
        (2, 679, [-102, 342, 53], false),
        (6, 4753, [320, -1033, 488], true),
        (1, 9506, [857, -14736, 33848], false),
        (-2, 4753, [1709, -5171, 722], true),
        (1, 9506, [4441, -13812, -8488], false),
        (6, 679, [-27, -229, 422], true),
        (1, 1358, [245, -656, -948], false),
        (-4, 679, [109, -200, 125], true),
        (1, 9506, [-1347, 2080, 13444], false),
        (-2, 4753, [-439, 1432, 3082], true),
    ],
    // column e10
    [
        (-4, 65863, [33298, -78729, 50406], true),
        (-4, 679, [129, -113, 10], false),
        (2, 65863, [7479, 13866, 26278], true),
        (1, 131726, [65465, 43752, -88164], false),
        (-2, 65863, [13272, -6927, 26312], true),
        (30, 65863, [662, -622, 25], false),
        (2, 4753, [1709, -5171, 722], true),
        (1, 131726, [-103345, 33000, 84232], false),
        (6, 679, [-27, -229, 422], true),
        (1, 131726, [120805, -361636, 219960], false),
        (4, 461041, [61800, -34586, 543], true),
        (1, 131726, [-41951, 80776, -28660], false),
        (-2, 65863, [-7673, 14458, 17178], true),
        (1, 131726, [66455, 40832, -105836], false),
    ],
    // column e11
    [
        (2, 461041, [19669, -35394, 47802], false),
        Z,
        (1, 922082, [-166195, 68402, 95304], false),
        (1, 461041, [-96429, -46894, 182108], true),
        (3, 922082, [47265, -111466, 50436], false),
        (-3, 461041, [68953, -192732, 128460], true),
        (2, 679, [-102, 342, 53], false),
        (2, 65863, [13272, -6927, 26312], true),
        (1, 1358, [245, -656, -948], false),
        (4, 461041, [61800, -34586, 543], true),
        (1, 922082, [213769, -567974, -163748], false),
        (3, 461041, [68953, -192732, 128460], true),
        (1, 461041, [759, 107533, 100614], false),
        (-3, 461041, [8985, 89258, 119032], true),
    ],
    // column e12
    [
        (4, 461041, [88155, -230075, 174752], true),
        Z,
        (-3, 461041, [41199, -45674, 5436], true),
        (3, 131726, [-14829, -8154, 26800], false),
        (3, 461041, [68953, -192732, 128460], true),
        (-9, 131726, [11911, -36462, 25820], false),
        (-6, 4753, [320, -1033, 488], true),
        (30, 65863, [662, -622, 25], false),
        (-4, 679, [109, -200, 125], true),
        (1, 131726, [-41951, 80776, -28660], false),
        (3, 461041, [68953, -192732, 128460], true),
        (1, 18818, [12903, -44330, 35636], false),
        (-1, 461041, [-149167, -245274, 634392], true),
        (1, 65863, [20449, 1367, -33410], false),
    ],
    // column e13
    [
        (-2, 461041, [72529, -63570, 30298], false),
        (4, 49, [-4, -1, 10], true),
        (1, 461041, [28120, 29493, -21622], false),
        (-1, 461041, [-79117, -84650, 70536], true),
        (1, 922082, [-166195, 68402, 95304], false),
        (3, 461041, [41199, -45674, 5436], true),
        (-3, 9506, [-587, 2088, 3060], false),
        (-2, 65863, [7479, 13866, 26278], true),
        (1, 9506, [-1347, 2080, 13444], false),
        (-2, 65863, [-7673, 14458, 17178], true),
        (1, 461041, [759, 107533, 100614], false),
        (-1, 461041, [-149167, -245274, 634392], true),
        (1, 461041, [-20089, -45197, -24338], false),
        (1, 461041, [15943, 262998, 380160], true),
    ],
    // column e14
    [
        (-4, 461041, [-60408, -31391, 115516], true),
        (1, 7, [1, 0, 0], false),
        (1, 461041, [-79117, -84650, 70536], true),
        (1, 65863, [-21996, -12961, 35782], false),
        (-1, 461041, [-96429, -46894, 182108], true),
        (3, 131726, [-14829, -8154, 26800], false),
        (2, 4753, [-583, 1116, 3134], true),
        (1, 131726, [65465, 43752, -88164], false),
        (-2, 4753, [-439, 1432, 3082], true),
        (1, 131726, [66455, 40832, -105836], false),
        (-3, 461041, [8985, 89258, 119032], true),
        (1, 65863, [20449, 1367, -33410], false),
        (1, 461041, [15943, 262998, 380160], true),
        (1, 65863, [-23109, -25645, 18926], false),
    ],
];

/// f_0' sparse description: (coordinate index 1..=42, value).
const FP0_ENTRIES: &[(usize, P)] = &[
    (1, (2, 679, [128, -743, 816], false)),
    (3, (2, 7, [-4, -3, 8], false)),
    (5, (2, 7, [-4, -3, 8], false)),
    (7, (2, 7, [-4, -3, 8], false)),
    (9, (2, 7, [-4, -3, 8], false)),
    (11, (2, 7, [-4, -3, 8], false)),
    (13, (2, 7, [-4, -3, 8], false)),
    (15, (2, 7, [-2, -1, 4], true)),
    (18, (2, 7, [-2, -1, 4], true)),
    (22, (2, 7, [-2, -1, 4], true)),
    (23, (2, 7, [-2, -1, 4], true)),
    (26, (2, 7, [-2, -1, 4], true)),
    (27, (2, 7, [-2, -1, 4], true)),
    (30, (2, 7, [-2, -1, 4], true)),
    (31, (2, 7, [-2, -1, 4], true)),
    (34, (2, 7, [-2, -1, 4], true)),
    (35, (2, 7, [-2, -1, 4], true)),
    (39, (2, 7, [-2, -1, 4], true)),
    (42, (2, 7, [-2, -1, 4], true)),
    (16, (2, 7, [-5, -3, 10], true)),
    (17, (2, 7, [-5, -3, 10], true)),
    (20, (2, 7, [-5, -3, 10], true)),
    (21, (2, 7, [-5, -3, 10], true)),
    (25, (2, 7, [-5, -3, 10], true)),
    (28, (2, 7, [-5, -3, 10], true)),
    (29, (2, 7, [-5, -3, 10], true)),
    (32, (2, 7, [-5, -3, 10], true)),
    (36, (2, 7, [-5, -3, 10], true)),
    (37, (2, 7, [-5, -3, 10], true)),
    (40, (2, 7, [-5, -3, 10], true)),
    (41, (2, 7, [-5, -3, 10], true)),
    (19, (2, 679, [-618, -273, 692], true)),
    (38, (2, 679, [-618, -273, 692], true)),
    (24, (2, 679, [-649, -1179, 2010], true)),
    (33, (2, 679, [-649, -1179, 2010], true)),
];

const G1_ENTRIES: &[(usize, P)] = &[
    (1, (-1, 1, [1, 1, 0], false)),
    (2, (1, 8, [-15, -2, 20], false)),
    (28, (-2, 1, [1, 1, 0], true)),
];

const G8_ENTRIES: &[(usize, P)] = &[
    (1, (-1, 1, [1, 1, 0], false)),
    (2, (-1, 8, [-15, -2, 20], false)),
    (29, (-2, 1, [1, 1, 0], true)),
];

const G15_ENTRIES: &[(usize, P)] = &[
    (1, (3, 2, [-3, 0, 4], true)),
    (27, (1, 4, [-15, -2, 20], false)),
    (28, (1, 2, [-9, -2, 14], false)),
];

const G22_ENTRIES: &[(usize, P)] = &[
    (1, (3, 2, [-3, 0, 4], true)),
    (30, (1, 4, [-15, -2, 20], false)),
    (29, (1, 2, [-9, -2, 14], false)),
];

const G29_ENTRIES: &[(usize, P)] = &[
    (27, (1, 4, [-7, -2, 12], false)),
    (28, (1, 2, [-13, -2, 18], false)),
];

const G36_ENTRIES: &[(usize, P)] = &[
    (30, (1, 4, [-7, -2, 12], false)),
    (29, (1, 2, [-13, -2, 18], false)),
];

fn sparse_vec(entries: &[(usize, P)], dim: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); dim];
    for &(idx, p) in entries {
        assert!(out[idx - 1].is_zero(), "duplicate sparse entry {idx}");
        out[idx - 1] = build(p);
    }
    out
}

/// The transcription assembled into the file layout. This is the in-source
/// twin of data/tables.json.
pub fn compact_tables() -> TablesFile {
    let mut hessian0 = vec![vec![FieldElement::zero(); DIM_X]; DIM_X];
    for (c, col) in F0_COLS.iter().enumerate() {
        for (r, &p) in col.iter().enumerate() {
            hessian0[r][c] = build(p);
        }
    }
    TablesFile {
        f0: build_vec(&F0),
        u1: build_vec(&U1),
        u2: build_vec(&U2),
        hessian0,
        fp0: sparse_vec(FP0_ENTRIES, DIM_XP),
        g1: sparse_vec(G1_ENTRIES, DIM_XP),
        g8: sparse_vec(G8_ENTRIES, DIM_XP),
        g15: sparse_vec(G15_ENTRIES, DIM_XP),
        g22: sparse_vec(G22_ENTRIES, DIM_XP),
        g29: sparse_vec(G29_ENTRIES, DIM_XP),
        g36: sparse_vec(G36_ENTRIES, DIM_XP),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_json_matches_compact_transcription() {
        let parsed: TablesFile = serde_json::from_str(TABLES_JSON).unwrap();
        assert_eq!(parsed, compact_tables());
    }

    #[test]
    fn tables_validate() {
        Tables::validate(&compact_tables()).unwrap();
    }

    #[test]
    fn round_trip_through_serialization() {
        let t = compact_tables();
        let s = serde_json::to_string(&t).unwrap();
        let back: TablesFile = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn permutations_are_bijective_and_periodic() {
        for i in 0..7 {
            let p = x_perm(i);
            let mut seen = [false; DIM_X];
            for &k in &p {
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        let t = Tables::get();
        // Cycling by 7 is the identity.
        assert_eq!(t.f(0), cycle_x(&t.f(3), 4));
        for j in 1..=DIM_XP {
            let _ = t.g(j);
        }
    }

    /// Writes data/tables.json from the compact transcription. Run manually:
    /// `cargo test -p dlat regenerate_tables_json -- --ignored`
    #[test]
    #[ignore]
    fn regenerate_tables_json() {
        let t = compact_tables();
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/tables.json");
        let json = serde_json::to_string_pretty(&t).unwrap();
        std::fs::write(path, json + "\n").unwrap();
    }
}
