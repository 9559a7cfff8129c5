//! The counterexample sets: `A = G·P` with `G` a unit box and `P` a translated
//! additive box, and `A = B×(Y)` alone for the multiplicative-only variant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::boxenum::{enum_additive_box, enum_unit_box, in_log_box, ExpRadius};
use crate::error::{Error, Result};
use crate::numberfield::FieldContext;
use crate::rational::{format_rational, int};
use crate::setcalc::{k_fold_product, k_fold_sum, productset, sumset, ElementSet};

/// A bound `|σ_i(a)| <= scale · e^log` holding for every element and embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub scale: BigRational,
    pub log: BigRational,
}

#[derive(Clone, Debug)]
pub struct GpConstruction {
    pub ctx: FieldContext,
    pub x: i64,
    pub r: BigRational,
    pub y: BigRational,
    pub g: ElementSet<FieldContext>,
    pub p: ElementSet<FieldContext>,
    pub a: ElementSet<FieldContext>,
    pub direct_product: bool,
    /// `(X + r)/(X - r) < φ`, which forces the product map `G × P → A` to be injective.
    pub predicted_direct: bool,
}

impl GpConstruction {
    /// Every element of `A` has all embeddings bounded by `(X + r) e^Y <= 2X e^Y`.
    pub fn envelope(&self) -> Envelope {
        Envelope { scale: int(2 * self.x), log: self.y.clone() }
    }
}

/// `P = X + B⁺(r)`, a cluster of totally positive elements around `X`.
pub fn build_p(ctx: &FieldContext, x: i64, r: &BigRational) -> Result<ElementSet<FieldContext>> {
    if x < 1 {
        return Err(Error::DomainError(format!("X must be at least 1, got {x}")));
    }
    if r.is_negative() {
        return Err(Error::DomainError("radius must be nonnegative".into()));
    }
    if *r >= int(x) {
        return Err(Error::RadiusTooLarge { radius: format_rational(r), x: x.to_string() });
    }
    Ok(enum_additive_box(ctx, &ctx.integer(x), r))
}

/// True when `ρ < φ`, i.e. `ρ² - ρ - 1 < 0` for `ρ > 0`.
fn below_golden_ratio(rho: &BigRational) -> bool {
    rho.is_positive() && rho * rho - rho - BigRational::one() < BigRational::zero()
}

pub fn build_gp(ctx: &FieldContext, x: i64, r: &BigRational, y: &BigRational) -> Result<GpConstruction> {
    if !y.is_positive() {
        return Err(Error::DomainError("Y must be positive".into()));
    }
    let p = build_p(ctx, x, r)?;
    let g = enum_unit_box(ctx, y);
    let a = productset(&g, &p)?;
    let direct_product = a.len() == g.len() * p.len();
    let ratio = (int(x) + r) / (int(x) - r);
    let predicted_direct = below_golden_ratio(&ratio);
    if predicted_direct && !direct_product {
        return Err(Error::PredictionViolation(format!(
            "|A| = {} but |G||P| = {} with (X+r)/(X-r) = {} below the golden ratio",
            a.len(),
            g.len() * p.len(),
            format_rational(&ratio)
        )));
    }
    Ok(GpConstruction { ctx: ctx.clone(), x, r: r.clone(), y: y.clone(), g, p, a, direct_product, predicted_direct })
}

/// `A = B×(Y)`, measured through its k-fold sums and products.
#[derive(Clone, Debug)]
pub struct MultOnly {
    pub ctx: FieldContext,
    pub y: BigRational,
    pub a: ElementSet<FieldContext>,
}

impl MultOnly {
    pub fn envelope(&self) -> Envelope {
        Envelope { scale: BigRational::one(), log: self.y.clone() }
    }
}

pub fn build_mult_only(ctx: &FieldContext, y: &BigRational) -> Result<MultOnly> {
    if !y.is_positive() {
        return Err(Error::DomainError("Y must be positive".into()));
    }
    Ok(MultOnly { ctx: ctx.clone(), y: y.clone(), a: enum_unit_box(ctx, y) })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GpEnvelopeReport {
    pub sum_size: usize,
    pub prod_size: usize,
    pub gg_size: usize,
    pub pp_size: usize,
    /// `|B⁺(4Xe^Y)|`
    pub sum_box_size: usize,
    pub sum_in_box: bool,
    pub prod_in_gg_pp: bool,
    pub gg_times_pp: usize,
    pub gg_times_p_squared: usize,
}

/// Checks `A+A ⊆ B⁺(4Xe^Y)` and `AA ⊆ (GG)(PP)` element by element.
pub fn verify_gp_envelopes(c: &GpConstruction) -> Result<GpEnvelopeReport> {
    let ctx = &c.ctx;
    let sums = sumset(&c.a, &c.a)?;
    let prods = productset(&c.a, &c.a)?;
    let gg = productset(&c.g, &c.g)?;
    let pp = productset(&c.p, &c.p)?;
    let radius = ExpRadius::new(int(4 * c.x), c.y.clone());
    for s in sums.iter() {
        if !radius.contains(ctx, s)? {
            return Err(Error::EnvelopeViolation(format!("{s} in A+A lies outside B+(4Xe^Y)")));
        }
    }
    let ggpp = productset(&gg, &pp)?;
    if !prods.is_subset_of(&ggpp) {
        return Err(Error::EnvelopeViolation("AA is not contained in (GG)(PP)".into()));
    }
    let sum_box_size = radius.enumerate(ctx).len();
    let report = GpEnvelopeReport {
        sum_size: sums.len(),
        prod_size: prods.len(),
        gg_size: gg.len(),
        pp_size: pp.len(),
        sum_box_size,
        sum_in_box: true,
        prod_in_gg_pp: true,
        gg_times_pp: gg.len() * pp.len(),
        gg_times_p_squared: gg.len() * c.p.len() * c.p.len(),
    };
    if report.prod_size > report.gg_times_pp || report.sum_size > report.sum_box_size {
        return Err(Error::EnvelopeViolation("size chain violated".into()));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MultEnvelopeReport {
    pub k: usize,
    pub k_fold_product_size: usize,
    pub k_fold_sum_size: usize,
    /// `|B×(kY)|`
    pub unit_box_size: usize,
    /// `|B⁺(k e^Y)|`
    pub additive_box_size: usize,
    pub product_in_unit_box: bool,
    pub sum_in_additive_box: bool,
}

/// Checks `A^(k) ⊆ B×(kY)` and `kA ⊆ B⁺(k e^Y)` element by element.
pub fn verify_mult_envelopes(c: &MultOnly, k: usize) -> Result<MultEnvelopeReport> {
    if k < 1 {
        return Err(Error::DomainError("k must be at least 1".into()));
    }
    let ctx = &c.ctx;
    let ky = &c.y * int(k as i64);
    let prods = k_fold_product(&c.a, k)?;
    for u in prods.iter() {
        if !ctx.is_unit(u)? || !in_log_box(ctx, u, &ky)? {
            return Err(Error::EnvelopeViolation(format!("{u} in A^(k) lies outside B×(kY)")));
        }
    }
    let sums = k_fold_sum(&c.a, k)?;
    let radius = ExpRadius::new(int(k as i64), c.y.clone());
    for s in sums.iter() {
        if !radius.contains(ctx, s)? {
            return Err(Error::EnvelopeViolation(format!("{s} in kA lies outside B+(k e^Y)")));
        }
    }
    Ok(MultEnvelopeReport {
        k,
        k_fold_product_size: prods.len(),
        k_fold_sum_size: sums.len(),
        unit_box_size: enum_unit_box(ctx, &ky).len(),
        additive_box_size: radius.enumerate(ctx).len(),
        product_in_unit_box: true,
        sum_in_additive_box: true,
    })
}

/// Sizes of a GP construction for reports.
pub fn gp_summary(c: &GpConstruction) -> serde_json::Value {
    serde_json::json!({
        "G": c.g.len(),
        "P": c.p.len(),
        "A": c.a.len(),
        "directProduct": c.direct_product,
        "predictedDirect": c.predicted_direct,
        "X": c.x,
        "r": format_rational(&c.r),
        "Y": format_rational(&c.y),
        "eps": format_rational(&(&c.r / BigRational::from_integer(BigInt::from(c.x)))),
    })
}
