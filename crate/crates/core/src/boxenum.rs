//! Additive boxes `B⁺(X)`, unit boxes `B×(Y)`, the counting bounds they obey,
//! unit separation from `±1`, and central slab volumes of the cube.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{AlgInt, FieldContext};
use crate::poly::QPoly;
use crate::rational::{ceil_scaled, exp_bounds, floor_scaled, format_rational, int, to_f64, RatInterval};
use crate::setcalc::ElementSet;

const FAST_PREC: u32 = 64;

/// All `α ∈ Z[θ]` with `|σ_i(α - center)| <= radius` for every `i`.
pub fn enum_additive_box(ctx: &FieldContext, center: &AlgInt, radius: &BigRational) -> ElementSet<FieldContext> {
    assert_eq!(center.len(), ctx.degree(), "center must belong to the field");
    let mut out = ElementSet::new(ctx.clone());
    if radius.is_negative() {
        return out;
    }
    let d = ctx.degree();
    let limits: Vec<i64> = ctx
        .coefficient_bounds()
        .iter()
        .map(|b| floor_scaled(&(b * radius), 0).to_i64().expect("search bound fits in i64"))
        .collect();
    let table = ctx.table(FAST_PREC);
    let x_lo = floor_scaled(radius, FAST_PREC);
    let x_hi = ceil_scaled(radius, FAST_PREC);

    let accept = |beta: &[i64]| -> bool {
        for i in 0..d {
            let e = table.enclose_i64(beta, i);
            if e.lo > x_hi || e.hi < -&x_hi {
                return false;
            }
            if e.lo >= -&x_lo && e.hi <= x_lo {
                continue;
            }
            let b = AlgInt::from_i64s(beta);
            if ctx.cmp_abs(&b, i, radius).expect("valid index") == Ordering::Greater {
                return false;
            }
        }
        true
    };

    let found: Vec<Vec<i64>> = (-limits[0]..=limits[0])
        .into_par_iter()
        .flat_map_iter(|b0| {
            let mut hits = Vec::new();
            let mut beta = vec![0i64; d];
            beta[0] = b0;
            for (j, l) in limits.iter().enumerate().skip(1) {
                beta[j] = -l;
            }
            loop {
                if accept(&beta) {
                    hits.push(beta.clone());
                }
                // odometer over coordinates 1..d
                let mut j = 1;
                loop {
                    if j >= d {
                        return hits;
                    }
                    if beta[j] < limits[j] {
                        beta[j] += 1;
                        break;
                    }
                    beta[j] = -limits[j];
                    j += 1;
                }
            }
        })
        .collect();

    for beta in found {
        let coeffs = beta.iter().zip(center.coeffs()).map(|(b, c)| c + BigInt::from(*b)).collect();
        out.insert(AlgInt::new(coeffs));
    }
    out
}

/// True when `e^{-y} <= |σ_i(u)| <= e^y` for every embedding.
pub fn in_log_box(ctx: &FieldContext, u: &AlgInt, y: &BigRational) -> Result<bool> {
    let one = BigRational::one();
    for i in 0..ctx.degree() {
        if ctx.cmp_abs_scaled_exp(u, i, &one, y)? == Ordering::Greater {
            return Ok(false);
        }
        if ctx.cmp_abs_scaled_exp(u, i, &one, &-y)? == Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The radius `c · e^y` with a cached rational enclosure.
#[derive(Clone, Debug)]
pub struct ExpRadius {
    pub c: BigRational,
    pub y: BigRational,
    pub bounds: RatInterval,
}

impl ExpRadius {
    pub fn new(c: BigRational, y: BigRational) -> Self {
        let bounds = exp_bounds(&y, FAST_PREC).scale(&c);
        ExpRadius { c, y, bounds }
    }

    /// Exact test of `|σ_i(a)| <= c · e^y` for every `i`.
    pub fn contains(&self, ctx: &FieldContext, a: &AlgInt) -> Result<bool> {
        let table = ctx.table(FAST_PREC);
        for i in 0..ctx.degree() {
            let e = table.enclose(a.coeffs(), i).to_interval().abs();
            if e.hi <= self.bounds.lo {
                continue;
            }
            if e.lo > self.bounds.hi {
                return Ok(false);
            }
            if ctx.cmp_abs_scaled_exp(a, i, &self.c, &self.y)? == Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `B⁺(c · e^y)` around 0.
    pub fn enumerate(&self, ctx: &FieldContext) -> ElementSet<FieldContext> {
        let outer = enum_additive_box(ctx, &ctx.zero(), &self.bounds.hi);
        let inside: Vec<AlgInt> = outer
            .to_vec()
            .into_par_iter()
            .filter(|a| self.contains(ctx, a).expect("same field"))
            .collect();
        ElementSet::from_elems(ctx.clone(), inside)
    }
}

/// All units `u` with `|log|σ_i(u)|| <= y` for every `i`.
pub fn enum_unit_box(ctx: &FieldContext, y: &BigRational) -> ElementSet<FieldContext> {
    let radius = BigRational::from_integer(ceil_scaled(&exp_bounds(&y.abs(), 64).hi, 0));
    let candidates = enum_additive_box(ctx, &ctx.zero(), &radius);
    let units: Vec<AlgInt> = candidates
        .to_vec()
        .into_par_iter()
        .filter(|u| {
            ctx.is_unit(u).expect("same field") && in_log_box(ctx, u, y).expect("same field")
        })
        .collect();
    ElementSet::from_elems(ctx.clone(), units)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `|σ_i(u)| >= φ`
    Above,
    /// `|σ_i(u)| <= φ⁻¹`
    Below,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub unit: AlgInt,
    pub index: usize,
    pub side: Side,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub checked: usize,
    pub trivial: usize,
    pub witnesses: Vec<Witness>,
}

/// For each unit other than `±1`, an embedding with `|σ_i(u)|` outside `(φ⁻¹, φ)`.
///
/// With `v = ±σ_i(u) > 0`, `v >= φ` iff `v² - v - 1 >= 0` and `v <= φ⁻¹` iff
/// `v² + v - 1 <= 0`, so both tests are exact sign decisions in `Z[θ]`.
pub fn separation_check(ctx: &FieldContext, units: &ElementSet<FieldContext>) -> Result<SeparationReport> {
    let one = ctx.one();
    let minus_one = one.neg();
    let mut report = SeparationReport { checked: 0, trivial: 0, witnesses: Vec::new() };
    for u in units.iter() {
        if !ctx.is_unit(u)? {
            return Err(Error::NotAUnit(u.to_string()));
        }
        report.checked += 1;
        if *u == one || *u == minus_one {
            report.trivial += 1;
            continue;
        }
        let mut witness = None;
        for i in 0..ctx.degree() {
            let v = if ctx.sign(u, i)? == Ordering::Less { u.neg() } else { u.clone() };
            let v2 = ctx.mul(&v, &v)?;
            let above = ctx.sub(&ctx.sub(&v2, &v)?, &one)?;
            if ctx.sign(&above, i)? != Ordering::Less {
                witness = Some((i, Side::Above));
                break;
            }
            let below = ctx.sub(&ctx.add(&v2, &v)?, &one)?;
            if ctx.sign(&below, i)? != Ordering::Greater {
                witness = Some((i, Side::Below));
                break;
            }
        }
        match witness {
            Some((index, side)) => report.witnesses.push(Witness {
                unit: u.clone(),
                index,
                side,
                value: ctx.embed_f64(u, index).abs(),
            }),
            None => return Err(Error::SeparationViolation(u.to_string())),
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxKind {
    Additive,
    Unit,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub kind: BoxKind,
    pub radius: String,
    pub count: usize,
    /// `None` when the lower bound needs a regulator that is not computed (rank >= 2).
    pub lower: Option<f64>,
    pub upper: f64,
    pub lower_ok: Option<bool>,
    pub upper_ok: bool,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.upper_ok && self.lower_ok.unwrap_or(true)
    }
}

/// Counts a box and checks it against the counting bounds.
///
/// Additive: `X^d disc^{-1/2} <= |B⁺(X)| <= (2X+1)^d`.
/// Unit: `Y^{d-1} d^{-1/2} R^{-1} <= |B×(Y)| <= 10 (5Y+1)^{d-1}`.
pub fn check_ball_bounds(ctx: &FieldContext, kind: BoxKind, radius: &BigRational) -> Result<BoundReport> {
    let d = ctx.degree();
    match kind {
        BoxKind::Additive => {
            let count = enum_additive_box(ctx, &ctx.zero(), radius).len();
            let c = BigRational::from_integer(BigInt::from(count));
            let disc = BigRational::from_integer(ctx.disc().clone());
            let xd = num_traits::pow(radius.clone(), d);
            let upper = num_traits::pow(radius * int(2) + int(1), d);
            // count >= X^d / sqrt(disc)  <=>  count^2 disc >= X^{2d}
            let lower_ok = &c * &c * &disc >= &xd * &xd;
            Ok(BoundReport {
                kind,
                radius: format_rational(radius),
                count,
                lower: Some(to_f64(&xd) / to_f64(&disc).sqrt()),
                upper: to_f64(&upper),
                lower_ok: Some(lower_ok),
                upper_ok: c <= upper,
            })
        }
        BoxKind::Unit => {
            let count = enum_unit_box(ctx, radius).len();
            let c = BigRational::from_integer(BigInt::from(count));
            let upper = num_traits::pow(radius * int(5) + int(1), d - 1) * int(10);
            let (lower, lower_ok) = match d {
                1 => (Some(1.0), Some(count >= 1)),
                2 => {
                    // count >= Y / (sqrt(2) R): certified with the lower end of R
                    let reg = ctx.regulator_rank1()?;
                    let y = to_f64(radius);
                    let bound = y / (2f64.sqrt() * to_f64(&reg.log.lo));
                    (Some(y / (2f64.sqrt() * reg.value())), Some(count as f64 >= bound))
                }
                _ => (None, None),
            };
            Ok(BoundReport {
                kind,
                radius: format_rational(radius),
                count,
                lower,
                upper: to_f64(&upper),
                lower_ok,
                upper_ok: c <= upper,
            })
        }
    }
}

/// Exact `(d-1)`-volume of `{Σ x_i = 0} ∩ [-r, r]^d`, stored as `coefficient · √d`.
#[derive(Clone, Debug, Serialize)]
pub struct SlabVolume {
    pub d: usize,
    pub r: String,
    /// `(2r)^{d-1} g_d(0)`; the volume is this times `√d`.
    #[serde(serialize_with = "crate::serialize_display")]
    pub coefficient: BigRational,
    pub volume: f64,
    /// Volume divided by `(2r)^{d-1}`.
    pub ratio: f64,
}

/// Density of a sum of `d` independent uniforms on `[-1/2, 1/2]` at 0.
pub fn uniform_sum_density_at_zero(d: usize) -> BigRational {
    assert!(d >= 1);
    // pieces[k] is the density of a sum of n uniforms on [0,1], restricted to [k, k+1]
    let mut pieces: Vec<QPoly> = vec![vec![BigRational::one()]];
    for n in 1..d {
        // antiderivative pieces with H(0) = 0
        let mut anti: Vec<QPoly> = Vec::with_capacity(n);
        let mut acc = BigRational::zero();
        for (k, p) in pieces.iter().enumerate() {
            let mut q: QPoly = vec![BigRational::zero()];
            q.extend(p.iter().enumerate().map(|(j, c)| c / int(j as i64 + 1)));
            let at_k = crate::poly::eval_q(&q, &int(k as i64));
            q[0] = &acc - at_k;
            acc = crate::poly::eval_q(&q, &int(k as i64 + 1));
            anti.push(q);
        }
        let total = acc;
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let upper: QPoly = if k < n { anti[k].clone() } else { vec![total.clone()] };
            let lower: QPoly = if k == 0 { Vec::new() } else { shift(&anti[k - 1], -1) };
            let len = upper.len().max(lower.len());
            let mut p: QPoly = (0..len)
                .map(|j| {
                    upper.get(j).cloned().unwrap_or_else(BigRational::zero)
                        - lower.get(j).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect();
            crate::poly::trim(&mut p);
            next.push(p);
        }
        pieces = next;
    }
    let mid = BigRational::new(BigInt::from(d), BigInt::from(2));
    let k = (d / 2).min(d - 1);
    crate::poly::eval_q(&pieces[k], &mid)
}

/// `p(x + a)`.
fn shift(p: &[BigRational], a: i64) -> QPoly {
    let a = int(a);
    let mut out: QPoly = Vec::new();
    for c in p.iter().rev() {
        // out = out * (x + a) + c
        let mut next = vec![BigRational::zero(); out.len() + 1];
        for (j, v) in out.iter().enumerate() {
            next[j + 1] += v;
            next[j] += v * &a;
        }
        next[0] += c;
        out = next;
    }
    out
}

pub fn slab_volume(d: usize, r: &BigRational) -> SlabVolume {
    assert!(d >= 2, "slab volume needs d >= 2");
    let g = uniform_sum_density_at_zero(d);
    let side = num_traits::pow(r * int(2), d - 1);
    let coefficient = &side * &g;
    let sqrt_d = (d as f64).sqrt();
    SlabVolume {
        d,
        r: format_rational(r),
        volume: to_f64(&coefficient) * sqrt_d,
        ratio: to_f64(&g) * sqrt_d,
        coefficient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::FieldSpec;
    use crate::rational::rat;
    use crate::setcalc::{productset, sumset};

    fn field(name: &str) -> FieldContext {
        FieldContext::builtin(name).unwrap()
    }

    /// Exhaustive scan over a fixed coefficient cube, decided with `cmp_abs`.
    fn brute_box(ctx: &FieldContext, radius: &BigRational, span: i64) -> usize {
        let d = ctx.degree();
        let mut count = 0;
        let mut v = vec![-span; d];
        loop {
            let a = AlgInt::from_i64s(&v);
            if (0..d).all(|i| ctx.cmp_abs(&a, i, radius).unwrap() != Ordering::Greater) {
                count += 1;
            }
            let mut j = 0;
            while j < d && v[j] == span {
                v[j] = -span;
                j += 1;
            }
            if j == d {
                return count;
            }
            v[j] += 1;
        }
    }

    #[test]
    fn additive_box_examples() {
        let z = FieldContext::integers();
        let b = enum_additive_box(&z, &z.zero(), &rat(5, 2));
        assert_eq!(b.to_vec(), (-2..=2).map(|n| z.integer(n)).collect::<Vec<_>>());
        let s = field("sqrt2");
        let b = enum_additive_box(&s, &s.zero(), &int(2));
        assert_eq!(b.len(), 7);
        for e in [[0, 0], [1, 0], [-1, 0], [2, 0], [-2, 0], [0, 1], [0, -1]] {
            assert!(b.contains(&s.element(&e).unwrap()));
        }
        assert_eq!(enum_additive_box(&s, &s.zero(), &rat(1, 2)).len(), 1);
        assert_eq!(enum_additive_box(&s, &s.zero(), &int(3)).len(), 15);
    }

    #[test]
    fn additive_box_matches_brute_force() {
        for (name, span) in [("sqrt2", 8), ("golden", 8), ("zeta7plus", 6)] {
            let f = field(name);
            for x in [rat(1, 1), rat(3, 2), rat(5, 2)] {
                assert_eq!(enum_additive_box(&f, &f.zero(), &x).len(), brute_box(&f, &x, span), "{name} {x}");
            }
        }
    }

    #[test]
    fn translated_box_is_a_translate() {
        let f = field("golden");
        let c = f.element(&[7, -2]).unwrap();
        let base = enum_additive_box(&f, &f.zero(), &int(3));
        let moved = enum_additive_box(&f, &c, &int(3));
        let shifted: Vec<AlgInt> = base.iter().map(|a| f.add(a, &c).unwrap()).collect();
        assert_eq!(moved.to_vec(), ElementSet::from_elems(f.clone(), shifted).to_vec());
    }

    #[test]
    fn unit_box_examples() {
        let s = field("sqrt2");
        let b = enum_unit_box(&s, &int(1));
        let expected: Vec<AlgInt> =
            [[1, 0], [-1, 0], [1, 1], [-1, -1], [-1, 1], [1, -1]].iter().map(|e| s.element(e).unwrap()).collect();
        assert_eq!(b.len(), 6);
        assert!(expected.iter().all(|e| b.contains(e)));

        let g = field("golden");
        let b = enum_unit_box(&g, &int(1));
        assert_eq!(b.len(), 10);
        for e in [[1, 0], [0, 1], [-1, 1], [1, 1], [2, -1]] {
            assert!(b.contains(&g.element(&e).unwrap()));
            assert!(b.contains(&g.element(&e).unwrap().neg()));
        }
        for f in [s, g, field("zeta7plus")] {
            assert_eq!(enum_unit_box(&f, &rat(1, 100)).len(), 2);
        }
    }

    #[test]
    fn unit_boxes_are_monotone_and_closed() {
        for name in ["sqrt2", "golden", "zeta7plus"] {
            let f = field(name);
            let b1 = enum_unit_box(&f, &rat(1, 2));
            let b2 = enum_unit_box(&f, &int(1));
            let b4 = enum_unit_box(&f, &int(2));
            assert!(b1.is_subset_of(&b2) && b2.is_subset_of(&b4));
            assert!(productset(&b2, &b2).unwrap().is_subset_of(&b4));
            let a1 = enum_additive_box(&f, &f.zero(), &int(2));
            let a2 = enum_additive_box(&f, &f.zero(), &int(4));
            assert!(a1.is_subset_of(&a2));
            assert!(sumset(&a1, &a1).unwrap().is_subset_of(&a2));
        }
    }

    #[test]
    fn separation_examples() {
        let s = field("sqrt2");
        let units = ElementSet::from_elems(s.clone(), [s.element(&[1, 1]).unwrap(), s.element(&[-1, 1]).unwrap(), s.integer(-1)]);
        let r = separation_check(&s, &units).unwrap();
        assert_eq!((r.checked, r.trivial), (3, 1));
        let plus = r.witnesses.iter().find(|w| w.unit == s.element(&[1, 1]).unwrap()).unwrap();
        assert!(plus.side == Side::Above || plus.side == Side::Below);
        assert!(plus.value > 1.618 || plus.value < 0.619);
        let minus = r.witnesses.iter().find(|w| w.unit == s.element(&[-1, 1]).unwrap()).unwrap();
        assert!(minus.value > 1.618 || minus.value < 0.619);
        let bad = ElementSet::from_elems(s.clone(), [s.integer(2)]);
        assert!(matches!(separation_check(&s, &bad), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn ball_bound_examples() {
        let s = field("sqrt2");
        let r = check_ball_bounds(&s, BoxKind::Additive, &int(2)).unwrap();
        assert_eq!(r.count, 7);
        assert!((r.lower.unwrap() - 4.0 / 8f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.upper, 25.0);
        assert!(r.passed());
        let r = check_ball_bounds(&s, BoxKind::Unit, &int(1)).unwrap();
        assert_eq!(r.count, 6);
        assert!((r.lower.unwrap() - 0.802).abs() < 1e-3);
        assert_eq!(r.upper, 60.0);
        let g = field("golden");
        let r = check_ball_bounds(&g, BoxKind::Unit, &int(1)).unwrap();
        assert!((r.lower.unwrap() - 1.4694).abs() < 1e-3);
        assert!(r.passed());
        let z = field("zeta7plus");
        let r = check_ball_bounds(&z, BoxKind::Unit, &int(1)).unwrap();
        assert_eq!(r.lower_ok, None);
        assert!(r.passed());
    }

    fn irwin_hall_at_half(n: usize) -> BigRational {
        // (1/(n-1)!) Σ_{k <= n/2} (-1)^k C(n,k) (n/2 - k)^{n-1}
        let x = BigRational::new(BigInt::from(n), BigInt::from(2));
        let mut sum = BigRational::zero();
        let mut binom = BigInt::one();
        for k in 0..=n {
            if int(k as i64) > x {
                break;
            }
            let term = num_traits::pow(&x - int(k as i64), n - 1) * BigRational::from_integer(binom.clone());
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
        let fact: BigInt = (1..n).map(BigInt::from).product();
        sum / BigRational::from_integer(fact)
    }

    #[test]
    fn slab_density_matches_closed_form() {
        for d in 1..=20 {
            assert_eq!(uniform_sum_density_at_zero(d), irwin_hall_at_half(d), "d = {d}");
        }
    }

    #[test]
    fn slab_volume_examples() {
        let v = slab_volume(2, &int(1));
        assert_eq!(v.coefficient, int(2));
        assert!((v.volume - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let v = slab_volume(3, &int(1));
        assert_eq!(v.coefficient, int(3));
        assert!((v.ratio - 1.299038).abs() < 1e-6);
        for d in 2..=12 {
            let r = slab_volume(d, &int(1)).ratio;
            assert!((1.0..=5.0).contains(&r));
        }
        let target = (6.0 / std::f64::consts::PI).sqrt();
        assert!((slab_volume(20, &rat(1, 2)).ratio / target - 1.0).abs() < 0.03);
    }

    #[test]
    fn degree_one_field_is_integers() {
        let z = make_z();
        assert_eq!(enum_unit_box(&z, &int(1)).len(), 2);
        assert_eq!(check_ball_bounds(&z, BoxKind::Additive, &int(10)).unwrap().count, 21);
    }

    fn make_z() -> FieldContext {
        crate::numberfield::make_field(&FieldSpec::new(vec![0, 1])).unwrap()
    }
}
