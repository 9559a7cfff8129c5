//! Exact rational helpers: parsing, rational intervals, dyadic enclosures and
//! certified bounds for `exp` and `ln`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.618"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(bad());
        }
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = BigRational::new(w * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text form: `"p/q"` or `"n"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large or small magnitudes: go through logs of the parts.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Converts an `f64` to the exact rational it represents.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `floor(r * 2^prec)`.
pub fn floor_scaled(r: &BigRational, prec: u32) -> BigInt {
    let n = r.numer() << prec as usize;
    n.div_floor(r.denom())
}

/// `ceil(r * 2^prec)`.
pub fn ceil_scaled(r: &BigRational, prec: u32) -> BigInt {
    let n = r.numer() << prec as usize;
    -((-n).div_floor(r.denom()))
}

pub fn pow2(prec: u32) -> BigInt {
    BigInt::one() << prec as usize
}

/// A closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn scale(&self, c: &BigRational) -> RatInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> RatInterval {
        assert!(!self.contains_zero(), "reciprocal of an interval containing 0");
        RatInterval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &RatInterval) -> RatInterval {
        self.mul(&other.recip())
    }

    pub fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = std::cmp::max(-&self.lo, self.hi.clone());
            RatInterval::new(BigRational::zero(), m)
        }
    }

    /// Upper bound on `|x|` over the interval.
    pub fn abs_max(&self) -> BigRational {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    pub fn powi(&self, n: u32) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rounds outward onto the dyadic grid `2^-prec`.
    pub fn round_outward(&self, prec: u32) -> RatInterval {
        let s = pow2(prec);
        RatInterval::new(
            BigRational::new(floor_scaled(&self.lo, prec), s.clone()),
            BigRational::new(ceil_scaled(&self.hi, prec), s),
        )
    }

    /// Compares the whole interval against `x`; `None` when `x` lies inside a
    /// nondegenerate interval.
    pub fn cmp_point(&self, x: &BigRational) -> Option<Ordering> {
        if &self.hi < x {
            Some(Ordering::Less)
        } else if &self.lo > x {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Compares two intervals; `None` when they overlap (and are not the same point).
    pub fn cmp_interval(&self, other: &RatInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// A dyadic enclosure `[lo, hi] / 2^prec` used on hot enumeration paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

impl Fixed {
    pub fn to_interval(&self) -> RatInterval {
        let s = pow2(self.prec);
        RatInterval::new(
            BigRational::new(self.lo.clone(), s.clone()),
            BigRational::new(self.hi.clone(), s),
        )
    }

    /// Certified comparison with a rational; `None` when undecided at this precision.
    pub fn cmp_rational(&self, q: &BigRational) -> Option<Ordering> {
        // lo/2^p vs n/d  <=>  lo*d vs n*2^p  (d > 0)
        let rhs = q.numer() << self.prec as usize;
        let d = q.denom();
        let lo = &self.lo * d;
        let hi = &self.hi * d;
        if hi < rhs {
            Some(Ordering::Less)
        } else if lo > rhs {
            Some(Ordering::Greater)
        } else if lo == hi && lo == rhs {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Certified enclosure of `e^y` with absolute width at most `2^-bits * max(1, e^y)`.
pub fn exp_bounds(y: &BigRational, bits: u32) -> RatInterval {
    if y.is_zero() {
        return RatInterval::point(BigRational::one());
    }
    if y.is_negative() {
        let pos = exp_bounds(&-y, bits + 2);
        return pos.recip().round_outward(bits + 8);
    }
    let eps = BigRational::new(BigInt::one(), pow2(bits));
    let two = int(2);
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut n: u64 = 0;
    loop {
        sum += &term;
        n += 1;
        term = &term * y / BigRational::from_integer(BigInt::from(n));
        // Tail sum_{m>=n} y^m/m! <= term / (1 - y/(n+1)) once n+1 > 2y.
        let ratio = y / BigRational::from_integer(BigInt::from(n + 1));
        if ratio * &two < BigRational::one() {
            let tail = &term / (BigRational::one() - y / BigRational::from_integer(BigInt::from(n + 1)));
            let tol = if sum > BigRational::one() { &eps * &sum } else { eps.clone() };
            if tail < tol {
                return RatInterval::new(sum.clone(), sum + tail).round_outward(bits + 8);
            }
        }
    }
}

/// Certified enclosure of `atanh(z)` for `0 <= z <= 1/2`.
fn atanh_bounds(z: &BigRational, bits: u32) -> RatInterval {
    debug_assert!(!z.is_negative() && *z <= rat(1, 2));
    if z.is_zero() {
        return RatInterval::point(BigRational::zero());
    }
    let eps = BigRational::new(BigInt::one(), pow2(bits));
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        sum += &power / int(2 * k + 1);
        k += 1;
        power = &power * &z2;
        let tail = &power / (int(2 * k + 1) * (BigRational::one() - &z2));
        if tail < eps {
            return RatInterval::new(sum.clone(), sum + tail).round_outward(bits + 8);
        }
    }
}

/// Certified enclosure of `ln 2`.
pub fn ln2_bounds(bits: u32) -> RatInterval {
    atanh_bounds(&rat(1, 3), bits + 1).scale(&int(2))
}

/// Certified enclosure of `ln x` for rational `x > 0`.
pub fn ln_bounds(x: &BigRational, bits: u32) -> RatInterval {
    assert!(x.is_positive(), "ln of a nonpositive number");
    // x = 2^m * x' with x' in [1, 2)
    let mut m: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut reduced = shift(x, -m);
    while reduced >= int(2) {
        m += 1;
        reduced = shift(x, -m);
    }
    while reduced < BigRational::one() {
        m -= 1;
        reduced = shift(x, -m);
    }
    let z = (&reduced - BigRational::one()) / (&reduced + BigRational::one());
    let extra = 64 - (m.unsigned_abs() | 1).leading_zeros();
    let core = atanh_bounds(&z, bits + 2).scale(&int(2));
    let ln2 = ln2_bounds(bits + extra + 2);
    core.add(&ln2.scale(&int(m))).round_outward(bits + 8)
}

/// Certified enclosure of `ln` over a positive interval.
pub fn ln_interval(x: &RatInterval, bits: u32) -> RatInterval {
    RatInterval::new(ln_bounds(&x.lo, bits).lo, ln_bounds(&x.hi, bits).hi)
}

fn shift(x: &BigRational, by: i64) -> BigRational {
    if by >= 0 {
        x * BigRational::from_integer(pow2(by as u32))
    } else {
        x / BigRational::from_integer(pow2((-by) as u32))
    }
}

/// Exact decision of `c * e^y` versus the rational `q`, for rational `c` and `y`.
///
/// When `y != 0` the value `c e^y` is transcendental (or zero), so equality
/// with a nonzero rational is impossible and the refinement loop terminates.
pub fn cmp_scaled_exp(c: &BigRational, y: &BigRational, q: &BigRational) -> Ordering {
    if y.is_zero() || c.is_zero() {
        return c.cmp(q);
    }
    let mut bits = 64;
    loop {
        let v = exp_bounds(y, bits).scale(c);
        if let Some(ord) = v.cmp_point(q) {
            return ord;
        }
        bits *= 2;
    }
}

/// Rounds to `sig` significant decimal digits (used for report output).
pub fn round_sig(x: f64, sig: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", sig.saturating_sub(1), x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.618").unwrap(), rat(618, 1000));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn exp_bounds_contain_e() {
        for bits in [16, 64, 200] {
            let e = exp_bounds(&int(1), bits);
            assert!(to_f64(&e.lo) <= std::f64::consts::E + 1e-15);
            assert!(to_f64(&e.hi) >= std::f64::consts::E - 1e-15);
        }
        let e = exp_bounds(&int(1), 100);
        assert!(e.width() < rat(1, 1 << 30));
        let inv = exp_bounds(&int(-2), 80);
        assert!((inv.mid_f64() - (-2f64).exp()).abs() < 1e-15);
        assert!(inv.lo.is_positive());
    }

    #[test]
    fn exp_bounds_nest_under_refinement_of_width() {
        let y = rat(7, 3);
        let coarse = exp_bounds(&y, 20);
        let fine = exp_bounds(&y, 120);
        assert!(fine.width() < coarse.width());
        assert!(fine.cmp_interval(&coarse).is_none());
    }

    #[test]
    fn ln_bounds_match_f64() {
        for (n, d) in [(1, 1), (2, 1), (1, 3), (1000, 7), (5, 4), (1, 1024)] {
            let x = rat(n, d);
            let iv = ln_bounds(&x, 80);
            let f = (n as f64 / d as f64).ln();
            assert!(to_f64(&iv.lo) <= f + 1e-14 && to_f64(&iv.hi) >= f - 1e-14, "ln {n}/{d}");
            assert!(iv.width() < rat(1, 1 << 40));
        }
    }

    #[test]
    fn scaled_exp_comparison() {
        assert_eq!(cmp_scaled_exp(&int(40), &int(1), &rat(1087, 10)), Ordering::Greater);
        assert_eq!(cmp_scaled_exp(&int(40), &int(1), &rat(1088, 10)), Ordering::Less);
        assert_eq!(cmp_scaled_exp(&int(3), &int(0), &int(3)), Ordering::Equal);
    }

    #[test]
    fn fixed_comparison_is_exact() {
        let f = Fixed { lo: BigInt::from(3), hi: BigInt::from(5), prec: 1 };
        assert_eq!(f.cmp_rational(&int(3)), Some(Ordering::Less));
        assert_eq!(f.cmp_rational(&int(1)), Some(Ordering::Greater));
        assert_eq!(f.cmp_rational(&int(2)), None);
    }

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(round_sig(1.23456789012345, 12), 1.23456789012);
        assert_eq!(round_sig(0.0, 12), 0.0);
    }
}
