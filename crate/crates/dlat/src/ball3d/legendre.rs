//! Exact Legendre coefficients of the h.c.p. contact measure.
//!
//! The twelve contact directions see each other at inner products
//! `{1, 1/2 (x4), 0 (x2), -1/3, -1/2 (x2), -5/6 (x2)}`, so the zonal measure
//! has Legendre coefficients
//!
//! ```text
//! c_l = P_l(1) + 4 P_l(1/2) + 2 P_l(0) + P_l(-1/3) + 2 P_l(-1/2) + 2 P_l(-5/6).
//! ```
//!
//! With the rescaled polynomials `Q_l(t) = 6^l l! P_l(t)`, all values at
//! t = k/6 are integers and the recurrence
//! `Q_{l+1} = (2l+1)(6t) Q_l - 36 l^2 Q_{l-1}` stays in exact integer
//! arithmetic; `c_l` is recovered as a rational. The residue patterns of the
//! `Q_l` mod 8 and mod 16 force `c_l != 0` for every `l >= 3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// One exact coefficient with its residue data.
#[derive(Clone, Debug)]
pub struct LegendreCoefficient {
    pub l: u32,
    /// Exact value of c_l.
    pub value: BigRational,
    /// The integer `6^l l! c_l`.
    pub scaled: BigInt,
    /// `Q_l(1/2) mod 8` and `Q_l(5/6) mod 8`.
    pub q_half_mod8: u8,
    pub q_fivesixths_mod8: u8,
}

impl LegendreCoefficient {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.is_zero()
    }
}

/// Values of `Q_l(k/6)` for `l = 0..=l_max` at a fixed integer `k = 6t`.
fn q_sequence(k: i64, l_max: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(l_max as usize + 1);
    let mut q_prev = BigInt::one();
    let mut q_cur = BigInt::from(k);
    out.push(q_prev.clone());
    if l_max == 0 {
        return out;
    }
    out.push(q_cur.clone());
    for l in 1..l_max {
        let l = l as i64;
        let q_next = BigInt::from((2 * l + 1) * k) * &q_cur - BigInt::from(36 * l * l) * &q_prev;
        q_prev = q_cur;
        q_cur = q_next;
        out.push(q_cur.clone());
    }
    out
}

/// Exact `c_l` for all `l = 0..=l_max`.
pub fn coefficients(l_max: u32) -> Vec<LegendreCoefficient> {
    // Contact inner products as multiples of 1/6: 6, 3, 0, -2, -3, -5 with
    // multiplicities 1, 4, 2, 1, 2, 2.
    let seqs: Vec<(i64, i64)> = vec![(6, 1), (3, 4), (0, 2), (-2, 1), (-3, 2), (-5, 2)];
    let tables: Vec<(Vec<BigInt>, i64)> = seqs
        .iter()
        .map(|&(k, mult)| (q_sequence(k, l_max), mult))
        .collect();
    let q_half = q_sequence(3, l_max);
    let q_fivesixths = q_sequence(5, l_max);

    let mut out = Vec::with_capacity(l_max as usize + 1);
    let mut denom = BigInt::one(); // 6^l l!
    for l in 0..=l_max {
        if l > 0 {
            denom *= BigInt::from(6u8) * BigInt::from(l);
        }
        let mut scaled = BigInt::zero();
        for (table, mult) in &tables {
            scaled += BigInt::from(*mult) * &table[l as usize];
        }
        let value = BigRational::new(scaled.clone(), denom.clone());
        out.push(LegendreCoefficient {
            l,
            value,
            scaled,
            q_half_mod8: mod_u8(&q_half[l as usize], 8),
            q_fivesixths_mod8: mod_u8(&q_fivesixths[l as usize], 8),
        });
    }
    out
}

pub fn coefficient(l: u32) -> LegendreCoefficient {
    coefficients(l).pop().expect("nonempty")
}

fn mod_u8(x: &BigInt, m: u8) -> u8 {
    let m = BigInt::from(m);
    let r = ((x % &m) + &m) % &m;
    r.to_u8().expect("residue fits")
}

/// Residue-pattern verification of the nonvanishing argument, up to `l_max`:
///
/// - `Q_l(1/2) mod 8` cycles `1, 3, 7, 1` and `Q_l(5/6) mod 8` cycles
///   `1, 5, 7, 7` with `l mod 4`;
/// - `Q_l(k/6) = 0 mod 8` for `k in {0, 2, 6}` and `l >= 3`;
/// - `6^l l! c_l = 4 mod 8` for odd `l >= 3` and `= 8 mod 16` for even
///   `l >= 3`.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub l_max: u32,
    pub half_pattern_holds: bool,
    pub fivesixths_pattern_holds: bool,
    pub zero_mod8_holds: bool,
    pub scaled_residues_hold: bool,
}

impl ResidueReport {
    pub fn all_hold(&self) -> bool {
        self.half_pattern_holds
            && self.fivesixths_pattern_holds
            && self.zero_mod8_holds
            && self.scaled_residues_hold
    }
}

pub fn residue_pattern_check(l_max: u32) -> ResidueReport {
    assert!(l_max >= 4);
    let coeffs = coefficients(l_max);
    let half_expected = [1u8, 3, 7, 1];
    let fivesixths_expected = [1u8, 5, 7, 7];
    let mut half_ok = true;
    let mut five_ok = true;
    for c in &coeffs {
        half_ok &= c.q_half_mod8 == half_expected[(c.l % 4) as usize];
        five_ok &= c.q_fivesixths_mod8 == fivesixths_expected[(c.l % 4) as usize];
    }

    let mut zero_ok = true;
    for k in [0i64, 2, 6] {
        let seq = q_sequence(k, l_max);
        for (l, q) in seq.iter().enumerate().skip(3) {
            let _ = l;
            zero_ok &= mod_u8(q, 8) == 0;
        }
    }

    let mut scaled_ok = true;
    for c in coeffs.iter().skip(3) {
        if c.l % 2 == 1 {
            scaled_ok &= mod_u8(&c.scaled, 8) == 4;
        } else {
            scaled_ok &= mod_u8(&c.scaled, 16) == 8;
        }
    }

    ResidueReport {
        l_max,
        half_pattern_holds: half_ok,
        fivesixths_pattern_holds: five_ok,
        zero_mod8_holds: zero_ok,
        scaled_residues_hold: scaled_ok,
    }
}
