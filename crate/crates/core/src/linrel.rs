//! Solutions of `x_1 + ... + x_k = t` with every `x_i` in a finite set `S`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{AlgInt, FieldContext};
use crate::setcalc::{sum_fibers, Ambient, ElementSet};

pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Debug)]
pub struct SolutionQuery<'a, A: Ambient> {
    pub set: &'a ElementSet<A>,
    pub k: usize,
    pub target: A::Elem,
    /// Keep only tuples whose entries are positive in this real embedding.
    pub positive_embedding: Option<usize>,
    /// Keep only tuples with no vanishing nonempty subsum.
    pub nondegenerate_only: bool,
    pub budget: u128,
}

impl<'a, A: Ambient> SolutionQuery<'a, A> {
    /// Ordered solutions of `x_1 + ... + x_k = 1`, unfiltered.
    pub fn new(set: &'a ElementSet<A>, k: usize) -> Self {
        SolutionQuery {
            target: set.ambient().one(),
            set,
            k,
            positive_embedding: None,
            nondegenerate_only: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn check_budget(n: usize, exponent: usize, budget: u128) -> Result<()> {
    let work = (n as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    Ok(())
}

/// Sums of all ordered `m`-tuples, keyed by value, with the tuples themselves.
fn half_tuples<A: Ambient>(amb: &A, elems: &[A::Elem], m: usize) -> Result<HashMap<A::Elem, Vec<Vec<usize>>>> {
    let mut out: HashMap<A::Elem, Vec<Vec<usize>>> = HashMap::new();
    out.insert(amb.zero(), vec![Vec::new()]);
    for _ in 0..m {
        let mut next: HashMap<A::Elem, Vec<Vec<usize>>> = HashMap::new();
        for (s, tuples) in &out {
            for (i, x) in elems.iter().enumerate() {
                let entry = next.entry(amb.add(s, x)?).or_default();
                for t in tuples {
                    let mut t = t.clone();
                    t.push(i);
                    entry.push(t);
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// Sums of all ordered `m`-tuples with multiplicities.
fn half_counts<A: Ambient>(amb: &A, elems: &[A::Elem], m: usize) -> Result<HashMap<A::Elem, u128>> {
    let mut out: HashMap<A::Elem, u128> = HashMap::new();
    out.insert(amb.zero(), 1);
    for _ in 0..m {
        let mut next: HashMap<A::Elem, u128> = HashMap::new();
        for (s, c) in &out {
            for x in elems {
                *next.entry(amb.add(s, x)?).or_insert(0) += c;
            }
        }
        out = next;
    }
    Ok(out)
}

/// True iff every nonempty subset of `tuple` has nonzero sum.
pub fn is_nondegenerate<A: Ambient>(amb: &A, tuple: &[A::Elem]) -> Result<bool> {
    let zero = amb.zero();
    for mask in 1u64..(1u64 << tuple.len()) {
        let mut s = amb.zero();
        for (i, x) in tuple.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s = amb.add(&s, x)?;
            }
        }
        if s == zero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact number of ordered `k`-tuples from `S` summing to the target, by meet in the middle.
pub fn count_solutions<A: Ambient>(q: &SolutionQuery<A>) -> Result<u128> {
    if q.k < 1 {
        return Err(Error::DomainError("k must be at least 1".into()));
    }
    let amb = q.set.ambient();
    for x in q.set.iter() {
        if !amb.is_unit(x)? {
            return Err(Error::NotAUnit(format!("{x:?}")));
        }
    }
    let elems: Vec<A::Elem> = match q.positive_embedding {
        Some(i) => {
            let mut kept = Vec::new();
            for x in q.set.iter() {
                if amb.embedding_sign(x, i)? == Ordering::Greater {
                    kept.push(x.clone());
                }
            }
            kept
        }
        None => q.set.to_vec(),
    };
    let (m1, m2) = (q.k / 2, q.k - q.k / 2);
    check_budget(elems.len(), m2, q.budget)?;

    if !q.nondegenerate_only {
        let left = half_counts(amb, &elems, m1)?;
        let right = half_counts(amb, &elems, m2)?;
        let mut total = 0u128;
        for (s, c) in &left {
            let need = amb.add(&q.target, &amb.neg(s))?;
            if let Some(d) = right.get(&need) {
                total += c * d;
            }
        }
        return Ok(total);
    }

    let left = half_tuples(amb, &elems, m1)?;
    let right = half_tuples(amb, &elems, m2)?;
    let mut total = 0u128;
    for (s, ls) in &left {
        let need = amb.add(&q.target, &amb.neg(s))?;
        let Some(rs) = right.get(&need) else { continue };
        for l in ls {
            for r in rs {
                let tuple: Vec<A::Elem> = l.iter().chain(r).map(|&i| elems[i].clone()).collect();
                if is_nondegenerate(amb, &tuple)? {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// All ordered solutions, for display; same filters as `count_solutions`.
pub fn list_solutions<A: Ambient>(q: &SolutionQuery<A>) -> Result<Vec<Vec<A::Elem>>> {
    let amb = q.set.ambient();
    let elems: Vec<A::Elem> = q
        .set
        .iter()
        .filter(|x| q.positive_embedding.is_none_or(|i| amb.embedding_sign(x, i).ok() == Some(Ordering::Greater)))
        .cloned()
        .collect();
    check_budget(elems.len(), q.k, q.budget)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; q.k];
    if elems.is_empty() {
        return Ok(out);
    }
    loop {
        let tuple: Vec<A::Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        let mut s = amb.zero();
        for x in &tuple {
            s = amb.add(&s, x)?;
        }
        if s == q.target && (!q.nondegenerate_only || is_nondegenerate(amb, &tuple)?) {
            out.push(tuple);
        }
        let mut j = 0;
        while j < q.k && idx[j] + 1 == elems.len() {
            idx[j] = 0;
            j += 1;
        }
        if j == q.k {
            return Ok(out);
        }
        idx[j] += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PigeonholeReport {
    #[serde(serialize_with = "crate::serialize_display")]
    pub max_fiber: BigInt,
    /// `|S|^k / |kS|`
    pub bound: f64,
    pub fiber_argmax: serde_json::Value,
    pub sumset_size: usize,
}

/// The most popular `k`-fold sum and its multiplicity, with `maxFiber >= |S|^k / |kS|` checked exactly.
pub fn pigeonhole_report<A: Ambient>(s: &ElementSet<A>, k: usize, budget: u128) -> Result<(PigeonholeReport, A::Elem)> {
    if s.is_empty() {
        return Err(Error::TooSmall(0));
    }
    check_budget(s.len(), k.div_ceil(2), budget)?;
    let fibers = sum_fibers(s, k)?;
    let (arg, max) = fibers
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("nonempty");
    let total = num_traits::pow(BigInt::from(s.len()), k);
    if &max * BigInt::from(fibers.len()) < total {
        return Err(Error::IdentityViolation("largest fiber below the average".into()));
    }
    let report = PigeonholeReport {
        max_fiber: max,
        bound: (s.len() as f64).powi(k as i32) / fibers.len() as f64,
        fiber_argmax: s.ambient().elem_json(&arg),
        sumset_size: fibers.len(),
    };
    Ok((report, arg))
}

/// `z_i = a_i / x` in `Q(θ)`, the normalization that turns a fiber into solutions of `Σ z_i = 1`.
pub fn normalize_by(ctx: &FieldContext, tuple: &[AlgInt], x: &AlgInt) -> Result<Vec<Vec<BigRational>>> {
    if x.is_zero() {
        return Err(Error::DomainError("cannot normalize by zero".into()));
    }
    tuple.iter().map(|a| ctx.divide(a, x)).collect()
}
