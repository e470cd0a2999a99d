//! Fixed-precision signed reals in a configurable base B with L fractional
//! digits, plus the transcendental functions (pi, cos, arccos, sqrt) the
//! rest of the crate consumes.
//!
//! A [`Real`] is an exact scaled integer: `value = mantissa * B^(-L)`.
//! Arithmetic is exact integer arithmetic on mantissas followed by a single
//! round-half-to-even back to L digits, so results are bit-identical across
//! platforms and the base-B digit strings other modules depend on are exact.
//! Transcendental evaluation carries `guard` extra digits internally and
//! rounds once at the end; arguments of size ~B^D lose ~D digits in
//! reduction mod 2*pi, which is why callers that multiply angles by huge
//! indices widen the working precision first (see `working_plus`).

mod trig;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use trig::{arccos, arcsin, cos, pi, sin, sqrt};
pub(crate) use trig::{arccos_at, arcsin_at, arctan_at, cos_at, pi_at, sin_at, sqrt_at};

/// Default number of guard digits carried by transcendental evaluation.
pub const DEFAULT_GUARD: u32 = 16;

struct CfgInner {
    base: u32,
    digits: u32,
    guard: u32,
    /// base^digits
    scale: BigUint,
    /// comparison tolerance, in units of base^(-digits)
    epsilon_scaled: BigUint,
    pi_mantissa: OnceLock<BigInt>,
    working: OnceLock<PrecisionConfig>,
}

/// Base, digit count and guard settings that govern every arithmetic
/// operation. Cheap to clone; two values interoperate only when their
/// configs compare equal.
#[derive(Clone)]
pub struct PrecisionConfig {
    inner: Arc<CfgInner>,
}

impl fmt::Debug for PrecisionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PrecisionConfig(base={}, digits={}, guard={})",
            self.base(),
            self.digits(),
            self.guard()
        )
    }
}

impl PartialEq for PrecisionConfig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.base() == other.base()
                && self.digits() == other.digits()
                && self.guard() == other.guard()
                && self.inner.epsilon_scaled == other.inner.epsilon_scaled)
    }
}
impl Eq for PrecisionConfig {}

impl PrecisionConfig {
    /// Config with the default guard (16) and default epsilon B^(-L+2)
    /// (exponent clamped to at least 1 so that epsilon < 1 holds for tiny L).
    pub fn new(base: u32, digits: u32) -> Result<Self> {
        Self::with_guard(base, digits, DEFAULT_GUARD)
    }

    pub fn with_guard(base: u32, digits: u32, guard: u32) -> Result<Self> {
        if !(2..=36).contains(&base) {
            return Err(Error::DomainError(format!(
                "base must be in 2..=36, got {base}"
            )));
        }
        if digits == 0 {
            return Err(Error::DomainError("digits must be >= 1".into()));
        }
        let eps_exp = digits.saturating_sub(2).max(1).min(digits);
        let scale = BigUint::from(base).pow(digits);
        let epsilon_scaled = BigUint::from(base).pow(digits - eps_exp);
        Ok(Self {
            inner: Arc::new(CfgInner {
                base,
                digits,
                guard,
                scale,
                epsilon_scaled,
                pi_mantissa: OnceLock::new(),
                working: OnceLock::new(),
            }),
        })
    }

    /// Replace the comparison tolerance with base^(-exp).
    pub fn with_epsilon_exp(&self, exp: u32) -> Result<Self> {
        if exp == 0 || exp > self.digits() {
            return Err(Error::DomainError(format!(
                "epsilon exponent must be in 1..=digits, got {exp}"
            )));
        }
        let inner = &self.inner;
        Ok(Self {
            inner: Arc::new(CfgInner {
                base: inner.base,
                digits: inner.digits,
                guard: inner.guard,
                scale: inner.scale.clone(),
                epsilon_scaled: BigUint::from(inner.base).pow(inner.digits - exp),
                pi_mantissa: OnceLock::new(),
                working: OnceLock::new(),
            }),
        })
    }

    pub fn base(&self) -> u32 {
        self.inner.base
    }

    pub fn digits(&self) -> u32 {
        self.inner.digits
    }

    pub fn guard(&self) -> u32 {
        self.inner.guard
    }

    pub(crate) fn scale(&self) -> &BigUint {
        &self.inner.scale
    }

    pub(crate) fn scale_int(&self) -> BigInt {
        BigInt::from(self.inner.scale.clone())
    }

    /// The comparison tolerance as a Real under this config.
    pub fn epsilon(&self) -> Real {
        Real {
            mantissa: BigInt::from(self.inner.epsilon_scaled.clone()),
            cfg: self.clone(),
        }
    }

    /// Internal working config: same base, `digits + guard` digits, no
    /// further guard. Cached so that pi etc. are computed once per config.
    pub(crate) fn working(&self) -> PrecisionConfig {
        self.inner
            .working
            .get_or_init(|| {
                if self.guard() == 0 {
                    self.clone()
                } else {
                    PrecisionConfig::with_guard(self.base(), self.digits() + self.guard(), 0)
                        .expect("valid derived config")
                }
            })
            .clone()
    }

    /// Working config widened by `extra` more digits (for arguments whose
    /// integer part will consume that many digits during reduction).
    pub(crate) fn working_plus(&self, extra: u32) -> PrecisionConfig {
        if extra == 0 {
            return self.working();
        }
        PrecisionConfig::with_guard(self.base(), self.digits() + self.guard() + extra, 0)
            .expect("valid derived config")
    }

    pub(crate) fn pi_cache(&self) -> &OnceLock<BigInt> {
        &self.inner.pi_mantissa
    }

    /// How many base-B digits `n` occupies (at least 1).
    pub(crate) fn digits_of_biguint(&self, n: &BigUint) -> u32 {
        if n.is_zero() {
            return 1;
        }
        // bits * log_B(2), rounded up with slack.
        let bits = n.bits() as f64;
        (bits / (self.base() as f64).log2()).ceil() as u32 + 1
    }
}

/// Immutable fixed-precision signed real. `value = mantissa * B^(-digits)`.
#[derive(Clone)]
pub struct Real {
    mantissa: BigInt,
    cfg: PrecisionConfig,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({self})")
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cfg == other.cfg && self.mantissa == other.mantissa
    }
}
impl Eq for Real {}

/// Round-half-to-even division `n / d` for `d > 0`.
pub(crate) fn div_round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = &r << 1;
    match twice.cmp(d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    }
}

impl Real {
    fn assert_same_cfg(&self, other: &Real) {
        assert!(
            self.cfg == other.cfg,
            "Reals from different PrecisionConfigs may not be combined: {:?} vs {:?}",
            self.cfg,
            other.cfg
        );
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub(crate) fn from_mantissa(mantissa: BigInt, cfg: &PrecisionConfig) -> Real {
        Real {
            mantissa,
            cfg: cfg.clone(),
        }
    }

    pub(crate) fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn zero(cfg: &PrecisionConfig) -> Real {
        Real::from_mantissa(BigInt::zero(), cfg)
    }

    pub fn one(cfg: &PrecisionConfig) -> Real {
        Real::from_mantissa(cfg.scale_int(), cfg)
    }

    pub fn from_int(v: i64, cfg: &PrecisionConfig) -> Real {
        Real::from_mantissa(BigInt::from(v) * cfg.scale_int(), cfg)
    }

    /// sign * base^(-exp), handy for tolerances.
    pub fn pow_of_base(exp: u32, cfg: &PrecisionConfig) -> Result<Real> {
        if exp > cfg.digits() {
            return Err(Error::DomainError(format!(
                "base^-{exp} is not representable at {} digits",
                cfg.digits()
            )));
        }
        Ok(Real::from_mantissa(
            BigInt::from(cfg.base()).pow(cfg.digits() - exp),
            cfg,
        ))
    }

    pub fn sign(&self) -> i8 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn add(&self, other: &Real) -> Real {
        self.assert_same_cfg(other);
        Real::from_mantissa(&self.mantissa + &other.mantissa, &self.cfg)
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.assert_same_cfg(other);
        Real::from_mantissa(&self.mantissa - &other.mantissa, &self.cfg)
    }

    pub fn neg(&self) -> Real {
        Real::from_mantissa(-&self.mantissa, &self.cfg)
    }

    pub fn abs(&self) -> Real {
        Real::from_mantissa(self.mantissa.abs(), &self.cfg)
    }

    /// Exact product rounded half-to-even back to L digits.
    pub fn mul(&self, other: &Real) -> Real {
        self.assert_same_cfg(other);
        let prod = &self.mantissa * &other.mantissa;
        Real::from_mantissa(div_round_half_even(&prod, &self.cfg.scale_int()), &self.cfg)
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        self.assert_same_cfg(other);
        if other.is_zero() {
            return Err(Error::DegenerateInput("division by zero".into()));
        }
        // Negate numerator and denominator together when the divisor is
        // negative so the round-half-even helper always sees d > 0.
        let num = &self.mantissa * self.cfg.scale_int();
        let m = if other.mantissa.is_negative() {
            div_round_half_even(&-num, &other.mantissa.abs())
        } else {
            div_round_half_even(&num, &other.mantissa)
        };
        Ok(Real::from_mantissa(m, &self.cfg))
    }

    /// Exact scale by a machine integer (no rounding).
    pub fn mul_int(&self, k: i64) -> Real {
        Real::from_mantissa(&self.mantissa * k, &self.cfg)
    }

    /// Exact scale by an arbitrary-size nonnegative integer (no rounding).
    pub fn mul_biguint(&self, k: &BigUint) -> Real {
        Real::from_mantissa(&self.mantissa * BigInt::from(k.clone()), &self.cfg)
    }

    /// Exact scale by an arbitrary-size signed integer (no rounding).
    pub fn mul_bigint(&self, k: &BigInt) -> Real {
        Real::from_mantissa(&self.mantissa * k, &self.cfg)
    }

    /// Build a Real close to the given f64 (seed quality only: ~15-16
    /// significant digits, any base).
    pub(crate) fn from_f64_approx(v: f64, cfg: &PrecisionConfig) -> Real {
        let scaled = (v * 2f64.powi(52)).round();
        let m = (BigInt::from(scaled as i128) * cfg.scale_int()) >> 52;
        Real::from_mantissa(m, cfg)
    }

    /// Rounded division by a machine integer.
    pub fn div_int(&self, k: i64) -> Result<Real> {
        if k == 0 {
            return Err(Error::DegenerateInput("division by zero".into()));
        }
        let (n, d) = if k < 0 {
            (-&self.mantissa, BigInt::from(-(k as i128)))
        } else {
            (self.mantissa.clone(), BigInt::from(k))
        };
        Ok(Real::from_mantissa(div_round_half_even(&n, &d), &self.cfg))
    }

    pub fn compare(&self, other: &Real) -> Ordering {
        self.assert_same_cfg(other);
        self.mantissa.cmp(&other.mantissa)
    }

    pub fn min(self, other: Real) -> Real {
        if self.compare(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn abs_diff(&self, other: &Real) -> Real {
        self.sub(other).abs()
    }

    /// |self - other| <= tol
    pub fn close_to(&self, other: &Real, tol: &Real) -> bool {
        self.abs_diff(other).compare(tol) != Ordering::Greater
    }

    /// round((self mod 1) * B^L) as an exact nonnegative integer in [0, B^L).
    /// The fractional part follows the mathematical convention (in [0, 1)),
    /// and for an L-digit value the scaling is already exact.
    pub fn frac_scaled(&self) -> BigUint {
        let m = self.mantissa.mod_floor(&self.cfg.scale_int());
        m.to_biguint().expect("mod_floor of positive modulus")
    }

    /// Nearest integer part as a signed big integer (ties to even).
    pub fn round_to_int(&self) -> BigInt {
        div_round_half_even(&self.mantissa, &self.cfg.scale_int())
    }

    /// Distance to the nearest integer, as a Real under the same config.
    pub fn dist_to_int(&self) -> Real {
        let n = self.round_to_int();
        Real::from_mantissa((&self.mantissa - n * self.cfg.scale_int()).abs(), &self.cfg)
    }

    /// Re-round into another config of the same base. Widening is exact;
    /// narrowing rounds half-to-even.
    pub fn rescale(&self, to: &PrecisionConfig) -> Real {
        assert_eq!(
            self.cfg.base(),
            to.base(),
            "rescale cannot change the base"
        );
        if to.digits() >= self.cfg.digits() {
            let f = BigInt::from(self.cfg.base()).pow(to.digits() - self.cfg.digits());
            Real::from_mantissa(&self.mantissa * f, to)
        } else {
            let f = BigInt::from(self.cfg.base()).pow(self.cfg.digits() - to.digits());
            Real::from_mantissa(div_round_half_even(&self.mantissa, &f), to)
        }
    }

    /// Approximate f64 value (used only to seed Newton iterations).
    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let num: BigInt = &self.mantissa << 64;
        let q: BigInt = num / self.cfg.scale_int();
        q.to_f64().unwrap_or(f64::MAX) / 2f64.powi(64)
    }

    /// Parse with up to L fractional digits (shorter inputs are padded with
    /// trailing zeros; longer inputs are rejected, never silently rounded).
    pub fn parse(s: &str, cfg: &PrecisionConfig) -> Result<Real> {
        Self::parse_inner(s, cfg, false)
    }

    /// Parse requiring exactly L fractional digits (the canonical wire form).
    pub fn parse_strict(s: &str, cfg: &PrecisionConfig) -> Result<Real> {
        Self::parse_inner(s, cfg, true)
    }

    fn parse_inner(s: &str, cfg: &PrecisionConfig, strict: bool) -> Result<Real> {
        let t = s.trim();
        let (neg, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty real-number string: {s:?}")));
        }
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("no digits in {s:?}")));
        }
        let l = cfg.digits() as usize;
        if frac_part.len() > l {
            return Err(Error::Parse(format!(
                "{s:?} has {} fractional digits, config allows {l}",
                frac_part.len()
            )));
        }
        if strict && frac_part.len() != l {
            return Err(Error::Parse(format!(
                "{s:?} must carry exactly {l} fractional digits"
            )));
        }
        let digit_val = |c: char| -> Result<u32> {
            let v = c
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("invalid digit {c:?} in {s:?}")))?;
            if v >= cfg.base() {
                return Err(Error::Parse(format!(
                    "digit {c:?} out of range for base {}",
                    cfg.base()
                )));
            }
            Ok(v)
        };
        let mut mag = BigUint::zero();
        for c in int_part.chars() {
            mag = mag * cfg.base() + digit_val(c)?;
        }
        for c in frac_part.chars() {
            mag = mag * cfg.base() + digit_val(c)?;
        }
        for _ in frac_part.len()..l {
            mag *= cfg.base();
        }
        let m = BigInt::from(mag);
        Ok(Real::from_mantissa(if neg { -m } else { m }, cfg))
    }
}

impl fmt::Display for Real {
    /// Canonical decimal-string form: optional sign, integer digits, '.',
    /// exactly L fractional digits (digits above 9 use a-z). This is the
    /// wire/file representation; parsing it back is exact.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = self.cfg.scale_int();
        let (int, frac) = self.mantissa.abs().div_mod_floor(&scale);
        let int_str = int.to_biguint().expect("abs").to_str_radix(self.cfg.base());
        let frac_str = frac.to_biguint().expect("abs").to_str_radix(self.cfg.base());
        let l = self.cfg.digits() as usize;
        if self.mantissa.is_negative() {
            write!(f, "-")?;
        }
        write!(f, "{int_str}.")?;
        for _ in frac_str.len()..l {
            write!(f, "0")?;
        }
        write!(f, "{frac_str}")
    }
}
