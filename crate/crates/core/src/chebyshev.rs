//! Chebyshev maps T_n(x) on [-1, 1]: a linear-recurrence oracle, the
//! halving-recurrence production evaluator, the trigonometric form
//! cos(n * arccos x), and the semi-group checker T_r(T_s(x)) = T_rs(x).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::realnum::{arccos_at, cos_at, PrecisionConfig, Real};

/// Arbitrary-size nonnegative map index (n, s, r, r', p, q, w).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(BigUint);

impl Index {
    pub fn from_u64(v: u64) -> Index {
        Index(BigUint::from(v))
    }

    pub fn from_biguint(v: BigUint) -> Index {
        Index(v)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn mul(&self, other: &Index) -> Index {
        Index(&self.0 * &other.0)
    }

    /// Exact integer power (used for the iterated map T_s^i = T_{s^i}).
    pub fn pow(&self, exp: u32) -> Index {
        Index(self.0.pow(exp))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Index({})", self.0)
    }
}

impl From<u64> for Index {
    fn from(v: u64) -> Self {
        Index::from_u64(v)
    }
}

impl From<u32> for Index {
    fn from(v: u32) -> Self {
        Index::from_u64(v as u64)
    }
}

/// Largest index the configured precision is trusted to support, scaled
/// linearly in the bit budget from the empirical 2048-bit -> 2^970 anchor.
pub fn default_max_index(cfg: &PrecisionConfig) -> Index {
    let bits = (cfg.digits() as f64) * (cfg.base() as f64).log2();
    let max_bits = ((970.0 * bits) / 2048.0).floor() as u64;
    if max_bits < 2 {
        Index::from_u64(2)
    } else {
        Index(BigUint::one() << max_bits)
    }
}

/// Two-term linear recurrence T_n = 2x T_{n-1} - T_{n-2}. O(n); test
/// oracle only, guarded against n > 10^6.
pub fn cheb_linear(n: &Index, x: &Real) -> Real {
    let nv = n
        .to_u64()
        .filter(|&v| v <= 1_000_000)
        .expect("cheb_linear is the O(n) oracle; capped at n <= 10^6");
    let w = x.config().working();
    let xw = x.rescale(&w);
    let mut prev = Real::one(&w);
    let mut cur = xw.clone();
    if nv == 0 {
        return prev.rescale(x.config());
    }
    for _ in 1..nv {
        let next = xw.mul(&cur).mul_int(2).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur.rescale(x.config())
}

/// Halving recurrence: T_2m = 2 T_m^2 - 1, T_2m+1 = 2 T_m T_m+1 - x,
/// descending the bits of n most-significant first while maintaining the
/// pair (T_m, T_m+1). O(log n); the production evaluator.
pub fn cheb_halving(n: &Index, x: &Real) -> Real {
    let w = x.config().working();
    halving_at(&w, n, &x.rescale(&w)).rescale(x.config())
}

/// Number of doubling levels the halving evaluator performs for n.
pub fn halving_levels(n: &Index) -> u64 {
    n.bits().saturating_sub(1)
}

pub(crate) fn halving_at(w: &PrecisionConfig, n: &Index, x: &Real) -> Real {
    if n.is_zero() {
        return Real::one(w);
    }
    let bits = n.bits();
    // start at the most significant bit: m = 1, pair (T_1, T_2)
    let mut t_m = x.clone();
    let mut t_m1 = x.mul(x).mul_int(2).sub(&Real::one(w));
    for i in (0..bits - 1).rev() {
        if n.as_biguint().bit(i) {
            // m -> 2m + 1: pair becomes (T_2m+1, T_2m+2)
            let a = t_m.mul(&t_m1).mul_int(2).sub(x);
            let b = t_m1.mul(&t_m1).mul_int(2).sub(&Real::one(w));
            t_m = a;
            t_m1 = b;
        } else {
            // m -> 2m: pair becomes (T_2m, T_2m+1)
            let a = t_m.mul(&t_m).mul_int(2).sub(&Real::one(w));
            let b = t_m.mul(&t_m1).mul_int(2).sub(x);
            t_m = a;
            t_m1 = b;
        }
    }
    t_m
}

/// Trigonometric form T_n(x) = cos(n * arccos x), with the working
/// precision widened by the digit count of n so the reduction mod 2pi
/// keeps L trustworthy digits.
pub fn cheb_trig(n: &Index, x: &Real) -> Result<Real> {
    let cfg = x.config();
    if x.abs().compare(&Real::one(cfg)) == std::cmp::Ordering::Greater {
        return Err(Error::DomainError(format!("cheb_trig at {x} (|x| > 1)")));
    }
    let extra = cfg.digits_of_biguint(n.as_biguint()) + 2;
    let w = cfg.working_plus(extra);
    let theta = arccos_at(&x.rescale(&w))?;
    let angle = theta.mul_biguint(n.as_biguint());
    Ok(cos_at(&angle).rescale(cfg))
}

/// Evaluates T_rs(x) and asserts that both composition orders agree with
/// it within epsilon; PrecisionBreakdown otherwise (the empirical s0/r0
/// boundary). Intermediates stay at guard precision, so this checks the
/// mathematical identity rather than protocol-level rounding.
pub fn semigroup_check(r: &Index, s: &Index, x: &Real, max_index: &Index) -> Result<Real> {
    let rs = r.mul(s);
    if rs > *max_index {
        return Err(Error::PrecisionBreakdown(format!(
            "index product {rs} exceeds the configured bound {max_index}"
        )));
    }
    let cfg = x.config();
    let w = cfg.working();
    let xw = x.rescale(&w);
    let direct = halving_at(&w, &rs, &xw);
    let via_s = halving_at(&w, r, &halving_at(&w, s, &xw));
    let via_r = halving_at(&w, s, &halving_at(&w, r, &xw));
    let eps = cfg.epsilon().rescale(&w);
    if !direct.close_to(&via_s, &eps) || !direct.close_to(&via_r, &eps) {
        return Err(Error::PrecisionBreakdown(format!(
            "semi-group identity failed at r={r}, s={s}: T_rs={}, T_r(T_s)={}, T_s(T_r)={}",
            direct.rescale(cfg),
            via_s.rescale(cfg),
            via_r.rescale(cfg)
        )));
    }
    Ok(direct.rescale(cfg))
}
