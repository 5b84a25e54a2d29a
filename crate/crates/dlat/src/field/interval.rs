//! Rational interval enclosures of u = cos(pi/7) and v = sin(pi/7).
//!
//! u is pinned down by bisection on its minimal polynomial
//! `p(t) = 8t^3 - 4t^2 - 4t + 1`, starting from the isolating interval
//! `[0.9, 0.91]` (p is increasing there and changes sign). v follows as the
//! positive square root of `1 - u^2`, again by rational bisection. All
//! endpoints stay rational, so every downstream bound is certified.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat, Rational};

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub(crate) struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Interval::new(lo, hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Certified simultaneous enclosure of (u, v) at a requested bit precision.
#[derive(Clone, Debug)]
pub(crate) struct Enclosure {
    u: Interval,
    v: Interval,
}

fn minpoly(t: &Rational) -> Rational {
    // 8t^3 - 4t^2 - 4t + 1
    ((&(t * rat(8, 1)) - rat(4, 1)) * t - rat(4, 1)) * t + rat(1, 1)
}

impl Enclosure {
    /// Refines until both interval widths are below `2^-bits`.
    pub fn with_precision(bits: usize) -> Self {
        let target = BigRational::new(1.into(), num_bigint::BigInt::one() << bits);

        let mut lo = rat(9, 10);
        let mut hi = rat(91, 100);
        debug_assert!(minpoly(&lo).is_negative() && minpoly(&hi).is_positive());
        while &hi - &lo > target {
            let mid = (&lo + &hi) / rat(2, 1);
            if minpoly(&mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let u = Interval::new(lo, hi);

        // v^2 = 1 - u^2, with v in [0.43, 0.44].
        let vsq_lo = &Rational::one() - &(&u.hi * &u.hi);
        let vsq_hi = &Rational::one() - &(&u.lo * &u.lo);
        let v = Interval::new(sqrt_lower(&vsq_lo, bits), sqrt_upper(&vsq_hi, bits));
        Enclosure { u, v }
    }

    pub fn u(&self) -> Interval {
        self.u.clone()
    }

    pub fn v(&self) -> Interval {
        self.v.clone()
    }

    #[allow(dead_code)]
    pub fn width(&self) -> Rational {
        let wu = self.u.width();
        let wv = self.v.width();
        if wu > wv {
            wu
        } else {
            wv
        }
    }
}

/// Largest rational of the bisection grid with `r^2 <= x`.
fn sqrt_lower(x: &Rational, bits: usize) -> Rational {
    debug_assert!(!x.is_negative());
    let target = BigRational::new(1.into(), num_bigint::BigInt::one() << bits);
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    debug_assert!(&hi * &hi >= *x);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / rat(2, 1);
        if &mid * &mid <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest rational of the bisection grid with `r^2 >= x`.
fn sqrt_upper(x: &Rational, bits: usize) -> Rational {
    debug_assert!(!x.is_negative());
    let target = BigRational::new(1.into(), num_bigint::BigInt::one() << bits);
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    debug_assert!(&hi * &hi >= *x);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / rat(2, 1);
        if &mid * &mid >= *x {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
