//! The projective-line analogue of the `G·P` construction.
//!
//! A section of `O(D)` on `P¹` over `F_q` is a polynomial of degree at most `D`;
//! it vanishes at `∞` to order `D - deg`. `P` collects sections of degree exactly
//! `dP` with no zero on `F_q` (so no zero at any rational point), `G` collects
//! sections of `O(dG)` whose zeros are all rational, and `A = P·G`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{trimmed, FiniteField};
use crate::setcalc::{productset, sumset, Ambient, ElementSet, GrowthReport};

/// Global sections of `O(cap)`: polynomials of degree `<= cap`, stored with `cap + 1` coefficients.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub field: Arc<FiniteField>,
    pub cap: usize,
}

impl SectionSpace {
    pub fn new(field: Arc<FiniteField>, cap: usize) -> Self {
        SectionSpace { field, cap }
    }

    /// Pads (or checks) a coefficient vector to this cap.
    pub fn section(&self, coeffs: &[u8]) -> Result<Vec<u8>> {
        let t = trimmed(coeffs);
        if t.len() > self.cap + 1 {
            return Err(Error::CapExceeded { degree: t.len() - 1, cap: self.cap });
        }
        let mut out = t;
        out.resize(self.cap + 1, 0);
        Ok(out)
    }
}

impl Ambient for SectionSpace {
    type Elem = Vec<u8>;

    fn same_as(&self, other: &Self) -> bool {
        self.cap == other.cap && self.field == other.field
    }

    fn add(&self, a: &Vec<u8>, b: &Vec<u8>) -> Result<Vec<u8>> {
        Ok(a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Result<Vec<u8>> {
        let (a, b) = (trimmed(a), trimmed(b));
        if a.is_empty() || b.is_empty() {
            return Ok(vec![0; self.cap + 1]);
        }
        let degree = a.len() + b.len() - 2;
        if degree > self.cap {
            return Err(Error::CapExceeded { degree, cap: self.cap });
        }
        let mut out = vec![0u8; self.cap + 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        Ok(out)
    }

    fn neg(&self, a: &Vec<u8>) -> Vec<u8> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    fn zero(&self) -> Vec<u8> {
        vec![0; self.cap + 1]
    }

    fn one(&self) -> Vec<u8> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn is_unit(&self, a: &Vec<u8>) -> Result<bool> {
        let t = trimmed(a);
        Ok(t.len() == 1)
    }

    fn ambient_json(&self) -> serde_json::Value {
        serde_json::json!({"kind": "sections", "q": self.field.q(), "cap": self.cap})
    }

    fn elem_json(&self, a: &Vec<u8>) -> serde_json::Value {
        serde_json::json!(a)
    }
}

/// Re-embeds a set of sections into a larger cap.
pub fn lift(set: &ElementSet<SectionSpace>, cap: usize) -> Result<ElementSet<SectionSpace>> {
    let space = SectionSpace::new(set.ambient().field.clone(), cap);
    let elems = set.iter().map(|e| space.section(e)).collect::<Result<Vec<_>>>()?;
    Ok(ElementSet::from_elems(space, elems))
}

/// Every coefficient vector of length `n`, in lexicographic code order.
fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = (code % q as u64) as u8;
                code /= q as u64;
                c
            })
            .collect()
    })
}

fn has_root(field: &FiniteField, a: &[u8]) -> bool {
    field.elements().any(|x| field.eval(a, x) == 0)
}

/// True when `a` is a nonzero product of linear factors over `F_q`.
pub fn splits(field: &FiniteField, a: &[u8]) -> bool {
    let mut rest = trimmed(a);
    if rest.is_empty() {
        return false;
    }
    'peel: while rest.len() > 1 {
        for r in field.elements() {
            if field.eval(&rest, r) == 0 {
                rest = field.poly_div(&rest, &[field.neg(r), 1]);
                continue 'peel;
            }
        }
        return false;
    }
    true
}

/// `|P| = q^{dP+1} (1 - 1/q)^{q+1} = q^{dP-q} (q-1)^{q+1}`.
pub fn expected_p_size(q: u64, dp: usize) -> u128 {
    (q as u128).pow((dp as u64 - q) as u32) * ((q - 1) as u128).pow(q as u32 + 1)
}

/// `|G| = (q-1) · C(dG + q, dG)`.
pub fn expected_g_size(q: u64, dg: usize) -> u128 {
    let mut binom: u128 = 1;
    for i in 0..dg as u128 {
        binom = binom * (q as u128 + 1 + i) / (i + 1);
    }
    (q - 1) as u128 * binom
}

pub fn build_p_ff(field: &Arc<FiniteField>, dp: usize) -> Result<ElementSet<SectionSpace>> {
    let q = field.q() as usize;
    if dp < q {
        return Err(Error::DegreeTooSmall { degree: dp, min: q });
    }
    let space = SectionSpace::new(field.clone(), dp);
    let elems: Vec<Vec<u8>> = all_vectors(field.q(), dp + 1)
        .filter(|v| v[dp] != 0 && !has_root(field, v))
        .collect();
    Ok(ElementSet::from_elems(space, elems))
}

pub fn build_g_ff(field: &Arc<FiniteField>, dg: usize) -> ElementSet<SectionSpace> {
    let space = SectionSpace::new(field.clone(), dg);
    let elems: Vec<Vec<u8>> = all_vectors(field.q(), dg + 1).filter(|v| splits(field, v)).collect();
    ElementSet::from_elems(space, elems)
}

#[derive(Clone, Debug)]
pub struct FfConstruction {
    pub field: Arc<FiniteField>,
    pub dp: usize,
    pub dg: usize,
    pub p: ElementSet<SectionSpace>,
    pub g: ElementSet<SectionSpace>,
    pub a: ElementSet<SectionSpace>,
}

/// `A = P·G` in `O(dP + dG)`, checked against `|A| (q - 1) = |P| |G|`.
pub fn build_a_ff(field: &Arc<FiniteField>, dp: usize, dg: usize) -> Result<FfConstruction> {
    let p = build_p_ff(field, dp)?;
    let g = build_g_ff(field, dg);
    let cap = dp + dg;
    let a = productset(&lift(&p, cap)?, &lift(&g, cap)?)?;
    let q1 = field.q() as usize - 1;
    if a.len() * q1 != p.len() * g.len() {
        return Err(Error::IdentityViolation(format!(
            "|PG| = {} but |P||G|/(q-1) = {}/{}",
            a.len(),
            p.len() * g.len(),
            q1
        )));
    }
    Ok(FfConstruction { field: field.clone(), dp, dg, p, g, a })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FfGrowth {
    pub report: GrowthReport,
    /// `q^{dP+dG+1}`
    pub sum_bound: u128,
    pub sum_ok: bool,
    /// Every product of two elements of `G` splits.
    pub gg_splits: bool,
}

/// Growth of `A`: `A+A` in `O(dP+dG)`, `AA` in `O(2(dP+dG))`.
pub fn ff_growth_report(c: &FfConstruction) -> Result<FfGrowth> {
    let cap = c.dp + c.dg;
    let sums = sumset(&c.a, &c.a)?;
    let wide = lift(&c.a, 2 * cap)?;
    let prods = productset(&wide, &wide)?;
    let report = GrowthReport::from_sizes(c.a.len(), sums.len(), prods.len())?;
    let sum_bound = (c.field.q() as u128).pow(cap as u32 + 1);
    let gg = productset(&lift(&c.g, 2 * c.dg)?, &lift(&c.g, 2 * c.dg)?)?;
    let gg_splits = gg.iter().all(|e| splits(&c.field, e));
    Ok(FfGrowth { report, sum_bound, sum_ok: sums.len() as u128 <= sum_bound, gg_splits })
}

/// Growth of an arbitrary section set, for sets loaded from files.
pub fn section_growth(a: &ElementSet<SectionSpace>) -> Result<GrowthReport> {
    let wide = lift(a, 2 * a.ambient().cap)?;
    let sums = sumset(a, a)?;
    let prods = productset(&wide, &wide)?;
    GrowthReport::from_sizes(a.len(), sums.len(), prods.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalEntry {
    /// `a / pivot` as written, or `1` for the pivot itself.
    pub display: String,
    /// The same function in lowest terms.
    pub reduced: String,
}

/// The identification of `A` with rational functions `a / pivot`.
///
/// Division by a fixed nonzero section is a bijection compatible with `+` and
/// `×` (up to the fixed factor), so growth sizes carry over unchanged.
#[derive(Clone, Debug, Serialize)]
pub struct RationalIdentification {
    pub pivot: String,
    pub entries: Vec<RationalEntry>,
}

pub fn ff_to_rational(c: &FfConstruction, pivot: &[u8]) -> Result<RationalIdentification> {
    let pivot_p = c.p.ambient().section(pivot).map_err(|_| Error::PivotNotInP)?;
    if !c.p.contains(&pivot_p) {
        return Err(Error::PivotNotInP);
    }
    let f = &c.field;
    let piv = trimmed(pivot);
    let ratio = |num: &[u8], den: &[u8]| -> String {
        let (num, den) = (trimmed(num), trimmed(den));
        if den.len() == 1 {
            let inv = f.inv(den[0]);
            let scaled: Vec<u8> = num.iter().map(|&x| f.mul(x, inv)).collect();
            return f.format_poly(&scaled);
        }
        format!("({})/({})", f.format_poly(&num), f.format_poly(&den))
    };
    let entries = c
        .a
        .iter()
        .map(|a| {
            let a = trimmed(a);
            if a == piv {
                return RationalEntry { display: "1".into(), reduced: "1".into() };
            }
            let g = f.poly_gcd(&a, &piv);
            let (num, den) = (f.poly_div(&a, &g), f.poly_div(&piv, &g));
            RationalEntry { display: format!("({})/({})", f.format_poly(&a), f.format_poly(&piv)), reduced: ratio(&num, &den) }
        })
        .collect();
    Ok(RationalIdentification { pivot: f.format_poly(&piv), entries })
}
