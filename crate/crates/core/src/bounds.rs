//! Explicit savings for the number-field construction and exponent conditions
//! for the function-field variant.
//!
//! The savings are ratios of logarithms of quantities like `e^{10^6}`; every
//! expression is kept in the log domain.

use serde::Serialize;

use crate::error::{Error, Result};

/// The four analytic constants feeding the explicit bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExplicitConstants {
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    pub c3: f64,
    #[serde(rename = "C4")]
    pub c4: f64,
}

impl Default for ExplicitConstants {
    fn default() -> Self {
        ExplicitConstants { c1: 3.819, c2: 857.57, c3: 0.618, c4: 4.16 }
    }
}

impl ExplicitConstants {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.c1, self.c2, self.c3, self.c4].iter().all(|v| v.is_finite() && *v > 0.0);
        if !all_positive || self.c3 >= 2.0 || self.c2 <= 1.0 {
            return Err(Error::DomainError(format!("invalid constants {self:?}")));
        }
        Ok(())
    }
}

/// `ε = c3 / (2 + c3)`.
pub fn derived_eps(k: &ExplicitConstants) -> f64 {
    k.c3 / (2.0 + k.c3)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoefficientBundle {
    #[serde(rename = "K1a")]
    pub k1a: f64,
    #[serde(rename = "K1b")]
    pub k1b: f64,
    #[serde(rename = "K2a")]
    pub k2a: f64,
    #[serde(rename = "K2b")]
    pub k2b: f64,
    pub s: f64,
}

/// Coefficients of the product bound `K1a/Y + K1b/Y²`, the sum bound
/// `(K2a e^Y / X + K2b / X²) / Y²`, and the size base `s` in `|A| >= (sXY)^d`.
pub fn coefficient_bundle(k: &ExplicitConstants) -> CoefficientBundle {
    let eps = derived_eps(k);
    let c1sq = k.c1 * k.c1;
    CoefficientBundle {
        k1a: 2.0 * k.c4 * k.c2 * k.c2 / c1sq,
        k1b: k.c2 * k.c2 / c1sq,
        k2a: 4.0 * (1.0 + eps) * k.c2.powi(3) / (c1sq * eps * eps),
        k2b: k.c2.powi(3) / (c1sq * eps * eps),
        s: k.c1 * eps * k.c2.powf(-1.5),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Savings {
    pub product_saving: f64,
    pub sum_saving: f64,
}

impl Savings {
    pub fn min(&self) -> f64 {
        self.product_saving.min(self.sum_saving)
    }
}

fn logsumexp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Numerators `(N_p, N_s)` of the two savings and their common denominator `D`.
fn saving_parts(b: &CoefficientBundle, y: f64, ln_x: f64) -> (f64, f64, f64) {
    let ln_y = y.ln();
    let np = -logsumexp(b.k1a.ln() - ln_y, b.k1b.ln() - 2.0 * ln_y);
    let ns = -logsumexp(b.k2a.ln() + y - ln_x - 2.0 * ln_y, b.k2b.ln() - 2.0 * ln_x - 2.0 * ln_y);
    let d = b.s.ln() + ln_x + ln_y;
    (np, ns, d)
}

/// Savings `δ` in `|AA| <= |A|^{2-δ}` and `|A+A| <= |A|^{2-δ}` at `(Y, ln X)`.
pub fn saving_at(k: &ExplicitConstants, y: f64, ln_x: f64) -> Result<Savings> {
    if !(y > 0.0 && ln_x > 0.0) {
        return Err(Error::DomainError("Y and ln X must be positive".into()));
    }
    let (np, ns, d) = saving_parts(&coefficient_bundle(k), y, ln_x);
    if d <= 0.0 {
        return Err(Error::DomainError("sXY <= 1, so the size bound is trivial".into()));
    }
    Ok(Savings { product_saving: np / d, sum_saving: ns / d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    Product,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OptimizationResult {
    pub y_star: f64,
    pub ln_x_star: f64,
    pub c_star: f64,
    pub active: Constraint,
}

pub const LN_Y_RANGE: (f64, f64) = (1.0, 40.0);

/// Best `ln X` for fixed `Y`: the sum numerator grows with `ln X` while the
/// product numerator does not, so the savings balance where `N_s = N_p`.
fn inner(b: &CoefficientBundle, y: f64) -> Option<(f64, f64)> {
    let (np, _, _) = saving_parts(b, y, 1.0);
    if np <= 0.0 {
        return None;
    }
    let ns_at = |l: f64| saving_parts(b, y, l).1;
    let floor = (-(b.s.ln()) - y.ln()).max(0.0) + 1e-9;
    let (mut lo, mut hi) = (floor, floor.max(1.0) * 2.0);
    if ns_at(lo) >= np {
        hi = lo;
    } else {
        while ns_at(hi) < np {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ns_at(mid) < np {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let (_, _, d) = saving_parts(b, y, hi);
    (d > 0.0).then(|| (hi, saving_parts(b, y, hi).0.min(saving_parts(b, y, hi).1) / d))
}

/// Maximizes `min(productSaving, sumSaving)` over `(Y, ln X)`.
pub fn optimize_c(k: &ExplicitConstants) -> Result<OptimizationResult> {
    k.validate()?;
    let b = coefficient_bundle(k);
    let objective = |u: f64| inner(&b, u.exp()).map_or(f64::NEG_INFINITY, |(_, c)| c);
    let (a0, a1) = LN_Y_RANGE;
    let steps = 400;
    let grid: Vec<f64> = (0..=steps).map(|i| a0 + (a1 - a0) * i as f64 / steps as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&u| objective(u)).collect();
    let best = (0..=steps).max_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    if values[best].is_nan() || values[best] <= 0.0 {
        return Err(Error::NoFeasiblePoint);
    }
    let (mut lo, mut hi) = (grid[best.saturating_sub(1)], grid[(best + 1).min(steps)]);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    let u = if f1.max(f2) >= values[best] { if f1 >= f2 { x1 } else { x2 } } else { grid[best] };
    let y = u.exp();
    let (ln_x, _) = inner(&b, y).ok_or(Error::NoFeasiblePoint)?;
    let s = saving_at(k, y, ln_x)?;
    let active = if s.product_saving <= s.sum_saving { Constraint::Product } else { Constraint::Sum };
    Ok(OptimizationResult { y_star: y, ln_x_star: ln_x, c_star: s.min(), active })
}

/// `F_q(x, y) = (x+y) log_q(x+y) - x log_q x - y log_q y`.
pub fn fq_entropy(q: f64, x: f64, y: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 {
        return Err(Error::DomainError("entropy arguments must be nonnegative".into()));
    }
    let xlx = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    Ok((xlx(x + y) - xlx(x) - xlx(y)) / q.ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentConditions {
    pub q: u64,
    pub alpha: f64,
    pub beta: f64,
    pub a_rhs: f64,
    pub b_rhs: f64,
    pub b_rhs_char2: f64,
    /// Which of `bRhs` and `bRhsChar2` applies to this `q`.
    pub char2: bool,
}

impl ExponentConditions {
    /// The `b` bound that applies to this `q`.
    pub fn b_applicable(&self) -> f64 {
        if self.char2 {
            self.b_rhs_char2
        } else {
            self.b_rhs
        }
    }
}

/// Lower bounds on the exponents `a` (sumset) and `b` (product set) reached by
/// the function-field construction with parameters `α`, `β` over `F_q`.
pub fn ff_exponent_conditions(q: u64, alpha: f64, beta: f64) -> Result<ExponentConditions> {
    let (p, k) = crate::gf::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if k % 2 != 0 {
        return Err(Error::DomainError(format!("q = {q} is not a perfect square")));
    }
    let r = (p as f64).powi(k as i32 / 2);
    if alpha <= r + 1.0 {
        return Err(Error::AlphaTooSmall { alpha, min: r + 1.0 });
    }
    if beta <= 0.0 {
        return Err(Error::DomainError("beta must be positive".into()));
    }
    let qf = q as f64;
    let log_q = |t: f64| t.ln() / qf.ln();
    let l = log_q(1.0 - 1.0 / qf);
    let f1 = fq_entropy(qf, beta, r - 1.0)?;
    let f2 = fq_entropy(qf, 2.0 * beta, r - 1.0)?;
    let den = f1 + alpha + 2.0 * (r - 1.0) * l - 2.0;
    if den <= 0.0 {
        return Err(Error::DomainError("denominator is not positive".into()));
    }
    let a_rhs = (alpha + beta - 1.0) / den;
    let b_rhs = 1.0 + (2.0 * log_q(2.0) + f2 - f1 + alpha - 1.0 + (r - 1.0) * l) / den;
    let b_rhs_char2 = 1.0 + (log_q(2.0) / (r + 1.0) + f2 - f1 + alpha + (r - 1.0) * l - 1.0) / den;
    Ok(ExponentConditions { q, alpha, beta, a_rhs, b_rhs, b_rhs_char2, char2: p == 2 })
}

/// The four published parameter rows `(q, α, β, a, b)`.
pub const PUBLISHED_ROWS: [(u64, f64, f64, f64, f64); 4] = [
    (1024, 33.01, 40.53, 1.906, 1.906),
    (4, 10.75, 11.25, 1.939, 1.941),
    (9, 11.5, 13.0, 1.964, 1.972),
    (1681, 42.01, 51.5, 1.910, 1.912),
];

/// `|log_q C(⌊xg⌋+⌊yg⌋, ⌊xg⌋) - F_q(x, y) g| / g`.
pub fn binom_asymptotic_gap(q: f64, x: f64, y: f64, g: u64) -> Result<f64> {
    if g == 0 {
        return Err(Error::DomainError("g must be at least 1".into()));
    }
    let n1 = (x * g as f64).floor() as u64;
    let n2 = (y * g as f64).floor() as u64;
    let ln_binom: f64 = (1..=n1).map(|i| ((n2 + i) as f64 / i as f64).ln()).sum();
    let f = fq_entropy(q, x, y)?;
    Ok((ln_binom / q.ln() - f * g as f64).abs() / g as f64)
}
