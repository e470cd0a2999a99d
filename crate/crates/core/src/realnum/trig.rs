//! pi, sqrt, cos/sin with argument reduction, and the inverse functions.
//!
//! Public entry points compute at the caller config's working precision
//! (digits + guard) and round once at the end. The `*_at` variants operate
//! directly at a supplied working config and are what the higher modules
//! compose before their own final rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{div_round_half_even, PrecisionConfig, Real};
use crate::error::{Error, Result};

/// pi correct to the config's digit count (computed with extra digits via
/// the Gauss-Legendre AGM scheme, then rounded once).
pub fn pi(cfg: &PrecisionConfig) -> Real {
    let m = cfg
        .pi_cache()
        .get_or_init(|| {
            let work = PrecisionConfig::with_guard(cfg.base(), cfg.digits() + 10, 0)
                .expect("valid derived config");
            let v = pi_agm(&work);
            v.rescale(cfg).mantissa().clone()
        })
        .clone();
    Real::from_mantissa(m, cfg)
}

/// pi at a working config, cached on that config.
pub(crate) fn pi_at(work: &PrecisionConfig) -> Real {
    pi(work)
}

/// Gauss-Legendre (AGM) iteration, quadratically convergent.
fn pi_agm(cfg: &PrecisionConfig) -> Real {
    let one = Real::one(cfg);
    let half = one.div_int(2).expect("nonzero");
    let mut a = one.clone();
    let mut b = sqrt_at(&half).expect("positive");
    let mut t = one.div_int(4).expect("nonzero");
    let mut p = 1i64;
    // Correct digits double per step; digits+10 working digits need
    // log2(bits) + slack iterations.
    let bits = (cfg.digits() as f64) * (cfg.base() as f64).log2();
    let iters = (bits.log2().ceil() as usize) + 3;
    for _ in 0..iters {
        let an = a.add(&b).div_int(2).expect("nonzero");
        let bn = sqrt_at(&a.mul(&b)).expect("positive");
        let d = a.sub(&an);
        t = t.sub(&d.mul(&d).mul_int(p));
        p *= 2;
        a = an;
        b = bn;
        if a.abs_diff(&b).is_zero() {
            break;
        }
    }
    let s = a.add(&b);
    s.mul(&s).div(&t.mul_int(4)).expect("t > 0")
}

/// Square root, rounded to nearest (DomainError for negative input).
pub fn sqrt(x: &Real) -> Result<Real> {
    let w = x.config().working();
    Ok(sqrt_at(&x.rescale(&w))?.rescale(x.config()))
}

/// Square root at the value's own config (single rounding).
pub(crate) fn sqrt_at(x: &Real) -> Result<Real> {
    if x.is_negative() {
        return Err(Error::DomainError("sqrt of a negative value".into()));
    }
    let v = (x.mantissa() * x.config().scale_int())
        .to_biguint()
        .expect("nonnegative");
    let s = v.sqrt(); // floor square root
    let r = &v - &s * &s;
    // nearest: round up iff v >= (s + 1/2)^2, i.e. r > s
    let m = if r > s { s + 1u32 } else { s };
    Ok(Real::from_mantissa(BigInt::from(m), x.config()))
}

pub fn cos(x: &Real) -> Real {
    let w = x.config().working();
    cos_at(&x.rescale(&w)).rescale(x.config())
}

pub fn sin(x: &Real) -> Real {
    let w = x.config().working();
    sin_at(&x.rescale(&w)).rescale(x.config())
}

/// Reduce to [-pi, pi] with pi carried at enough extra digits to absorb the
/// quotient, then evaluate by quadrant.
pub(crate) fn cos_at(x: &Real) -> Real {
    let t = reduce_mod_2pi(x);
    cos_reduced(&t)
}

pub(crate) fn sin_at(x: &Real) -> Real {
    let t = reduce_mod_2pi(x);
    sin_reduced(&t)
}

/// x - round(x / 2pi) * 2pi, computed at widened precision, result in
/// [-pi - ulp, pi + ulp] at x's config.
fn reduce_mod_2pi(x: &Real) -> Real {
    let cfg = x.config();
    let int_digits = cfg.digits_of_biguint(
        &(x.mantissa().abs() / cfg.scale_int())
            .to_biguint()
            .expect("abs"),
    );
    let wide = PrecisionConfig::with_guard(cfg.base(), cfg.digits() + int_digits + 4, 0)
        .expect("valid derived config");
    let two_pi = pi_at(&wide).mul_int(2);
    let xw = x.rescale(&wide);
    // Mantissas share the scale, so their ratio is the value ratio.
    let q = div_round_half_even(xw.mantissa(), two_pi.mantissa());
    xw.sub(&two_pi.mul_bigint(&q)).rescale(cfg)
}

/// cos on [-pi - ulp, pi + ulp].
fn cos_reduced(t: &Real) -> Real {
    let cfg = t.config();
    let pi_w = pi_at(cfg);
    let half_pi = pi_w.div_int(2).expect("nonzero");
    let quarter_pi = pi_w.div_int(4).expect("nonzero");
    let a = t.abs();
    if a.compare(&half_pi) == std::cmp::Ordering::Greater {
        // cos(a) = -cos(pi - a)
        return cos_reduced(&pi_w.sub(&a)).neg();
    }
    if a.compare(&quarter_pi) == std::cmp::Ordering::Greater {
        sin_taylor(&half_pi.sub(&a))
    } else {
        cos_taylor(&a)
    }
}

/// sin on [-pi - ulp, pi + ulp].
fn sin_reduced(t: &Real) -> Real {
    let cfg = t.config();
    let pi_w = pi_at(cfg);
    let half_pi = pi_w.div_int(2).expect("nonzero");
    let quarter_pi = pi_w.div_int(4).expect("nonzero");
    let a = t.abs();
    let v = if a.compare(&half_pi) == std::cmp::Ordering::Greater {
        sin_reduced(&pi_w.sub(&a))
    } else if a.compare(&quarter_pi) == std::cmp::Ordering::Greater {
        cos_taylor(&half_pi.sub(&a))
    } else {
        sin_taylor(&a)
    };
    if t.is_negative() {
        v.neg()
    } else {
        v
    }
}

/// Maclaurin series for |t| <= pi/4 + ulp. Terms are truncated toward zero;
/// the accumulated error stays within a few ulps of the working config.
fn cos_taylor(t: &Real) -> Real {
    let cfg = t.config();
    let scale = cfg.scale_int();
    let t2 = t.mul(t);
    let mut term = scale.clone(); // 1.0
    let mut acc = term.clone();
    let mut i: u64 = 0;
    while !term.is_zero() {
        i += 1;
        let k = BigInt::from((2 * i - 1) * (2 * i));
        term = (&term * t2.mantissa()) / &scale;
        term = &term / &k;
        if term.is_zero() {
            break;
        }
        if i.is_odd() {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Real::from_mantissa(acc, cfg)
}

fn sin_taylor(t: &Real) -> Real {
    let cfg = t.config();
    let scale = cfg.scale_int();
    let t2 = t.mul(t);
    let mut term = t.mantissa().clone();
    let mut acc = term.clone();
    let mut i: u64 = 0;
    while !term.is_zero() {
        i += 1;
        let k = BigInt::from((2 * i) * (2 * i + 1));
        term = (&term * t2.mantissa()) / &scale;
        term = &term / &k;
        if term.is_zero() {
            break;
        }
        if i.is_odd() {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Real::from_mantissa(acc, cfg)
}

/// Principal arccos in [0, pi]; DomainError for |v| > 1.
pub fn arccos(v: &Real) -> Result<Real> {
    let w = v.config().working();
    Ok(arccos_at(&v.rescale(&w))?.rescale(v.config()))
}

pub(crate) fn arccos_at(v: &Real) -> Result<Real> {
    let cfg = v.config();
    let one = Real::one(cfg);
    if v.abs().compare(&one) == std::cmp::Ordering::Greater {
        return Err(Error::DomainError(format!("arccos of {v} (|v| > 1)")));
    }
    let half_pi = pi_at(cfg).div_int(2).expect("nonzero");
    Ok(half_pi.sub(&arcsin_at(v)?))
}

/// Principal arcsin in [-pi/2, pi/2]; DomainError for |v| > 1.
pub fn arcsin(v: &Real) -> Result<Real> {
    let w = v.config().working();
    Ok(arcsin_at(&v.rescale(&w))?.rescale(v.config()))
}

pub(crate) fn arcsin_at(v: &Real) -> Result<Real> {
    let cfg = v.config();
    let one = Real::one(cfg);
    if v.abs().compare(&one) == std::cmp::Ordering::Greater {
        return Err(Error::DomainError(format!("arcsin of {v} (|v| > 1)")));
    }
    // complement sqrt(1 - v^2); exactly zero at v = +-1
    let c = sqrt_at(&one.sub(&v.mul(v)))?;
    if v.abs().compare(&c) != std::cmp::Ordering::Greater {
        // |v| <= sqrt(2)/2: Newton directly, cos(t) bounded away from 0
        arcsin_newton(v)
    } else {
        // |v| close to 1: arcsin(v) = sign(v) * (pi/2 - arcsin(c))
        let half_pi = pi_at(cfg).div_int(2).expect("nonzero");
        let inner = arcsin_newton(&c)?;
        let r = half_pi.sub(&inner);
        Ok(if v.is_negative() { r.neg() } else { r })
    }
}

/// Newton iteration on sin(t) = u for |u| <= sqrt(2)/2 + ulp, seeded from
/// f64 and run at full working precision (convergence is quadratic, so the
/// iteration count is logarithmic in the digit budget).
fn arcsin_newton(u: &Real) -> Result<Real> {
    let cfg = u.config();
    if u.is_zero() {
        return Ok(Real::zero(cfg));
    }
    let seed = u.to_f64().clamp(-0.7072, 0.7072).asin();
    let mut t = Real::from_f64_approx(seed, cfg);
    let bits = (cfg.digits() as f64) * (cfg.base() as f64).log2();
    let iters = ((bits / 45.0).log2().ceil().max(0.0) as usize) + 2;
    for _ in 0..iters {
        // |t| stays within [-0.82, 0.82] here, so the plain Taylor sums
        // need no reduction.
        let s = sin_taylor(&t);
        let c = cos_taylor(&t);
        let delta = s.sub(u).div(&c)?;
        t = t.sub(&delta);
    }
    Ok(t)
}

/// Principal arctan in (-pi/2, pi/2).
pub(crate) fn arctan_at(u: &Real) -> Result<Real> {
    let cfg = u.config();
    let one = Real::one(cfg);
    if u.abs().compare(&one) == std::cmp::Ordering::Greater {
        // arctan(u) = sign(u) * pi/2 - arctan(1/u)
        let half_pi = pi_at(cfg).div_int(2).expect("nonzero");
        let inv = one.div(u)?;
        let inner = arctan_at(&inv)?;
        return Ok(if u.is_negative() {
            half_pi.neg().sub(&inner)
        } else {
            half_pi.sub(&inner)
        });
    }
    // arctan(u) = arcsin(u / sqrt(1 + u^2)), argument magnitude <= sqrt(2)/2
    let denom = sqrt_at(&one.add(&u.mul(u)))?;
    arcsin_at(&u.div(&denom)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    fn cfg(base: u32, digits: u32) -> PrecisionConfig {
        PrecisionConfig::new(base, digits).unwrap()
    }

    /// Independent pi oracle: Machin's formula with exact scaled-integer
    /// arctan series (no AGM, no Real arithmetic).
    fn machin_pi_mantissa(base: u32, digits: u32) -> BigInt {
        let extra = 10u32;
        let scale = BigInt::from(base).pow(digits + extra);
        fn atan_inv(x: u64, scale: &BigInt) -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut term = scale / BigInt::from(x);
            let mut acc = term.clone();
            let mut n = 1u64;
            while !term.is_zero() {
                term = &term / &x2;
                if term.is_zero() {
                    break;
                }
                let k = 2 * n + 1;
                let t = &term / BigInt::from(k);
                if n.is_odd() {
                    acc -= &t;
                } else {
                    acc += &t;
                }
                n += 1;
            }
            acc
        }
        let v = atan_inv(5, &scale) * 16 - atan_inv(239, &scale) * 4;
        div_round_half_even(&v, &BigInt::from(base).pow(extra))
    }

    #[test]
    fn pi_paper_and_small() {
        assert_eq!(pi(&cfg(10, 9)).to_string(), "3.141592654");
        assert_eq!(pi(&cfg(10, 2)).to_string(), "3.14");
    }

    #[test]
    fn pi_matches_series_oracle_at_30_digits() {
        let c = cfg(10, 30);
        let got = pi(&c);
        let want = Real::from_mantissa(machin_pi_mantissa(10, 30), &c);
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "3.141592653589793238462643383280");
    }

    #[test]
    fn pi_self_consistent_across_precisions() {
        // pi(L) equals pi at higher precision rounded back, for a spread of L
        let big = cfg(10, 300);
        let reference = pi(&big);
        for l in [1u32, 2, 7, 16, 33, 64, 128, 256] {
            let c = cfg(10, l);
            assert_eq!(pi(&c), reference.rescale(&c), "L={l}");
        }
        // and in base 2
        let big2 = cfg(2, 400);
        let ref2 = pi(&big2);
        for l in [4u32, 16, 100, 256] {
            let c = cfg(2, l);
            assert_eq!(pi(&c), ref2.rescale(&c), "base 2, L={l}");
        }
    }

    #[test]
    fn sqrt_basics() {
        let c = cfg(10, 32);
        let two = Real::from_int(2, &c);
        assert_eq!(
            sqrt(&two).unwrap().to_string(),
            "1.41421356237309504880168872420970"
        );
        assert!(sqrt(&Real::from_int(-1, &c)).is_err());
        assert_eq!(sqrt(&Real::zero(&c)).unwrap(), Real::zero(&c));
        let nine = Real::from_int(9, &c);
        assert_eq!(sqrt(&nine).unwrap(), Real::from_int(3, &c));
    }

    #[test]
    fn cos_known_values() {
        let c = cfg(10, 32);
        assert_eq!(cos(&Real::zero(&c)), Real::one(&c));
        assert_eq!(
            cos(&Real::one(&c)).to_string(),
            "0.54030230586813971740093660744298"
        );
        assert_eq!(
            cos(&Real::parse("0.5", &c).unwrap()).to_string(),
            "0.87758256189037271611628158260383"
        );
        // cos(pi) = -1 to working accuracy
        let p = pi(&c);
        assert!(cos(&p).close_to(&Real::from_int(-1, &c), &c.epsilon()));
    }

    #[test]
    fn cos_taylor_oracle_at_2l_digits() {
        // Production cos at L agrees with a plain Taylor sum (no quadrant
        // logic) evaluated at 2L digits and rounded back.
        let c = cfg(10, 24);
        let c2 = cfg(10, 48);
        for s in ["0.1", "0.5", "1.0", "-0.73", "0.785398163"] {
            let x = Real::parse(s, &c).unwrap();
            let x2 = x.rescale(&c2);
            // oracle: direct alternating series sum at 2L digits
            let scale = c2.scale_int();
            let t2 = x2.mul(&x2);
            let mut term = scale.clone();
            let mut acc = term.clone();
            let mut i = 0u64;
            while !term.is_zero() {
                i += 1;
                term = (&term * t2.mantissa()) / &scale;
                term = &term / BigInt::from((2 * i - 1) * (2 * i));
                if term.is_zero() {
                    break;
                }
                if i.is_odd() {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            let oracle = Real::from_mantissa(acc, &c2).rescale(&c);
            assert!(
                cos(&x).close_to(&oracle, &Real::pow_of_base(23, &c).unwrap()),
                "cos({s})"
            );
        }
    }

    #[test]
    fn cos_huge_argument_reduction() {
        // cos(106000 * 5pi/18) must come back as cos(4pi/9) despite the
        // 5-digit quotient in the reduction.
        let c = cfg(10, 9);
        let w = c.working_plus(6);
        let angle = pi(&w).mul_int(5).div_int(18).unwrap().mul_int(106000);
        let got = cos_at(&angle).rescale(&c);
        assert_eq!(got.to_string(), "0.173648178");
    }

    #[test]
    fn arccos_paper_values() {
        let c = cfg(10, 9);
        let x = Real::parse("0.64278761", &c).unwrap();
        let a = arccos(&x).unwrap();
        assert_eq!(a.to_string(), "0.872664626");
        // |arccos(x) - 5pi/18| <= 1e-9 at guard precision
        let w = c.working();
        let target = pi(&w).mul_int(5).div_int(18).unwrap();
        let diff = arccos_at(&x.rescale(&w)).unwrap().abs_diff(&target);
        assert!(diff.compare(&Real::pow_of_base(9, &w).unwrap()) != std::cmp::Ordering::Greater);

        let u = Real::parse("-0.939692621", &c).unwrap();
        let target = pi(&w).mul_int(8).div_int(9).unwrap();
        let diff = arccos_at(&u.rescale(&w)).unwrap().abs_diff(&target);
        assert!(diff.compare(&Real::pow_of_base(9, &w).unwrap()) != std::cmp::Ordering::Greater);

        let y = Real::parse("0.173648178", &c).unwrap();
        let target = pi(&w).mul_int(4).div_int(9).unwrap();
        let diff = arccos_at(&y.rescale(&w)).unwrap().abs_diff(&target);
        assert!(diff.compare(&Real::pow_of_base(9, &w).unwrap()) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn arccos_endpoints_and_domain() {
        let c = cfg(10, 12);
        assert_eq!(arccos(&Real::one(&c)).unwrap(), Real::zero(&c));
        assert_eq!(arccos(&Real::from_int(-1, &c)).unwrap(), pi(&c));
        assert_eq!(
            arccos(&Real::parse("0.3", &cfg(10, 32)).unwrap())
                .unwrap()
                .to_string(),
            "1.26610367277949911125931873041222"
        );
        let over = Real::parse("1.000000000001", &c).unwrap();
        assert!(matches!(arccos(&over), Err(Error::DomainError(_))));
        assert!(matches!(arccos(&over.neg()), Err(Error::DomainError(_))));
    }

    #[test]
    fn cos_arccos_round_trip_and_monotonicity() {
        use rand::{Rng, SeedableRng};
        let c = cfg(10, 16);
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        let mut prev: Option<(Real, Real)> = None;
        for _ in 0..1000 {
            let m: i64 = rng.gen_range(-(10i64.pow(16))..=10i64.pow(16));
            let v = Real::from_mantissa(BigInt::from(m), &c);
            let a = arccos(&v).unwrap();
            assert!(
                cos(&a).close_to(&v, &c.epsilon()),
                "round trip at v={v}"
            );
            // monotone decreasing, exactly at working comparison
            if let Some((pv, pa)) = prev.take() {
                match pv.compare(&v) {
                    std::cmp::Ordering::Less => {
                        assert!(pa.compare(&a) != std::cmp::Ordering::Less)
                    }
                    std::cmp::Ordering::Greater => {
                        assert!(pa.compare(&a) != std::cmp::Ordering::Greater)
                    }
                    std::cmp::Ordering::Equal => assert_eq!(pa, a),
                }
            }
            prev = Some((v, a));
        }
    }

    #[test]
    fn add_mul_div_match_rational_oracle() {
        use num_rational::BigRational;
        use rand::{Rng, SeedableRng};
        let c = cfg(10, 12);
        let scale = BigInt::from(10u32).pow(12);
        let to_rat = |r: &Real| BigRational::new(r.mantissa().clone(), scale.clone());
        let ulp = BigRational::new(BigInt::one(), scale.clone());
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(11);
        for _ in 0..500 {
            let am: i64 = rng.gen_range(-(10i64.pow(13))..=10i64.pow(13));
            let bm: i64 = rng.gen_range(-(10i64.pow(13))..=10i64.pow(13));
            let a = Real::from_mantissa(BigInt::from(am), &c);
            let b = Real::from_mantissa(BigInt::from(bm), &c);
            let exact_add = to_rat(&a) + to_rat(&b);
            assert!((to_rat(&a.add(&b)) - exact_add).abs() <= ulp);
            let exact_mul = to_rat(&a) * to_rat(&b);
            assert!((to_rat(&a.mul(&b)) - exact_mul).abs() <= ulp);
            if !b.is_zero() {
                let exact_div = to_rat(&a) / to_rat(&b);
                assert!((to_rat(&a.div(&b).unwrap()) - exact_div).abs() <= ulp);
            }
        }
    }

    #[test]
    fn base_two_works() {
        let c = cfg(2, 30);
        let p = pi(&c);
        // pi in binary: 11.0010010000111111011010101000(10...)
        assert_eq!(p.to_string(), "11.001001000011111101101010100010");
        let x = Real::parse("0.1", &c).unwrap(); // 0.5
        assert!(cos(&arccos(&x).unwrap()).close_to(&x, &c.epsilon()));
    }

    #[test]
    fn frac_scaled_of_biguint_digits() {
        let c = cfg(10, 3);
        let v = Real::parse("12.345", &c).unwrap();
        assert_eq!(v.frac_scaled(), BigUint::from(345u32));
    }
}
