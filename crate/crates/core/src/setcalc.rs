//! Exact sumsets, product sets and growth statistics over any ambient ring.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A commutative ring in which finite sets live.
pub trait Ambient: Clone + Send + Sync {
    type Elem: Clone + Ord + Hash + Send + Sync + fmt::Debug;

    fn same_as(&self, other: &Self) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> Result<bool>;

    /// Sign of the image of `a` under real embedding `i`, where one exists.
    fn embedding_sign(&self, _a: &Self::Elem, _i: usize) -> Result<Ordering> {
        Err(Error::Unsupported("ambient has no real embeddings".into()))
    }

    /// Description used in set files.
    fn ambient_json(&self) -> serde_json::Value;
    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value;
}

/// The prime field `F_p`, elements in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        u64::try_from(r).expect("residue fits")
    }
}

impl Ambient for PrimeField {
    type Elem = u64;

    fn same_as(&self, other: &Self) -> bool {
        self.p == other.p
    }

    fn add(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(((*a as u128 + *b as u128) % self.p as u128) as u64)
    }

    fn mul(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(((*a as u128 * *b as u128) % self.p as u128) as u64)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_unit(&self, a: &u64) -> Result<bool> {
        Ok(!a.is_multiple_of(self.p))
    }

    fn ambient_json(&self) -> serde_json::Value {
        serde_json::json!({"kind": "prime_field", "p": self.p})
    }

    fn elem_json(&self, a: &u64) -> serde_json::Value {
        serde_json::json!([a])
    }
}

/// A deduplicated finite set of ambient elements, iterated in canonical order.
#[derive(Clone, Debug)]
pub struct ElementSet<A: Ambient> {
    ambient: A,
    elems: BTreeSet<A::Elem>,
}

impl<A: Ambient> PartialEq for ElementSet<A> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_as(&other.ambient) && self.elems == other.elems
    }
}

impl<A: Ambient> ElementSet<A> {
    pub fn new(ambient: A) -> Self {
        ElementSet { ambient, elems: BTreeSet::new() }
    }

    pub fn from_elems<I: IntoIterator<Item = A::Elem>>(ambient: A, elems: I) -> Self {
        ElementSet { ambient, elems: elems.into_iter().collect() }
    }

    pub fn ambient(&self) -> &A {
        &self.ambient
    }

    pub fn insert(&mut self, e: A::Elem) -> bool {
        self.elems.insert(e)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &A::Elem) -> bool {
        self.elems.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &A::Elem> + '_ {
        self.elems.iter()
    }

    pub fn to_vec(&self) -> Vec<A::Elem> {
        self.elems.iter().cloned().collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elems.is_subset(&other.elems)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient": self.ambient.ambient_json(),
            "elements": self.elems.iter().map(|e| self.ambient.elem_json(e)).collect::<Vec<_>>(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient.same_as(&other.ambient) {
            Ok(())
        } else {
            Err(Error::MixedAmbient)
        }
    }
}

fn pairwise<A, F>(a: &ElementSet<A>, b: &ElementSet<A>, op: F) -> Result<ElementSet<A>>
where
    A: Ambient,
    F: Fn(&A, &A::Elem, &A::Elem) -> Result<A::Elem> + Sync,
{
    a.check_same(b)?;
    let left: Vec<&A::Elem> = a.elems.iter().collect();
    let rows: Vec<Vec<A::Elem>> = left
        .par_iter()
        .map(|x| b.elems.iter().map(|y| op(&a.ambient, x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(ElementSet::from_elems(a.ambient.clone(), rows.into_iter().flatten()))
}

/// `A + B`.
pub fn sumset<A: Ambient>(a: &ElementSet<A>, b: &ElementSet<A>) -> Result<ElementSet<A>> {
    pairwise(a, b, |amb, x, y| amb.add(x, y))
}

/// `A · B`.
pub fn productset<A: Ambient>(a: &ElementSet<A>, b: &ElementSet<A>) -> Result<ElementSet<A>> {
    pairwise(a, b, |amb, x, y| amb.mul(x, y))
}

/// `kA = A + ... + A` (`k` summands).
pub fn k_fold_sum<A: Ambient>(a: &ElementSet<A>, k: usize) -> Result<ElementSet<A>> {
    assert!(k >= 1, "k must be at least 1");
    let mut acc = a.clone();
    for _ in 1..k {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// `A^(k) = A · ... · A` (`k` factors).
pub fn k_fold_product<A: Ambient>(a: &ElementSet<A>, k: usize) -> Result<ElementSet<A>> {
    assert!(k >= 1, "k must be at least 1");
    let mut acc = a.clone();
    for _ in 1..k {
        acc = productset(&acc, a)?;
    }
    Ok(acc)
}

/// Sizes of `A+A` and `AA` with their growth exponents.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthReport {
    pub n: usize,
    pub sum_size: usize,
    pub prod_size: usize,
    pub delta_plus: f64,
    pub delta_times: f64,
    pub solymosi: f64,
}

impl GrowthReport {
    pub fn from_sizes(n: usize, sum_size: usize, prod_size: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let ln_n = (n as f64).ln();
        Ok(GrowthReport {
            n,
            sum_size,
            prod_size,
            delta_plus: (sum_size as f64).ln() / ln_n,
            delta_times: (prod_size as f64).ln() / ln_n,
            solymosi: (sum_size as f64).powi(2) * prod_size as f64 / (n as f64).powi(4),
        })
    }
}

pub fn growth_report<A: Ambient>(a: &ElementSet<A>) -> Result<GrowthReport> {
    if a.len() < 2 {
        return Err(Error::TooSmall(a.len()));
    }
    let s = sumset(a, a)?;
    let p = productset(a, a)?;
    GrowthReport::from_sizes(a.len(), s.len(), p.len())
}

/// Number of ordered `k`-tuples from `A` with each `k`-fold sum.
pub fn sum_fibers<A: Ambient>(a: &ElementSet<A>, k: usize) -> Result<HashMap<A::Elem, BigInt>> {
    assert!(k >= 1, "k must be at least 1");
    let mut counts: HashMap<A::Elem, BigInt> = a.iter().map(|x| (x.clone(), BigInt::one())).collect();
    for _ in 1..k {
        let mut next: HashMap<A::Elem, BigInt> = HashMap::new();
        for (s, c) in &counts {
            for x in a.iter() {
                *next.entry(a.ambient.add(s, x)?).or_insert_with(BigInt::zero) += c;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Ordered quadruples with `a + b = c + d`.
pub fn additive_energy<A: Ambient>(a: &ElementSet<A>) -> Result<BigInt> {
    Ok(representation_energy_k(a, 2)?.count)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentationEnergy {
    #[serde(serialize_with = "crate::serialize_display")]
    pub count: BigInt,
    pub lower_bound: f64,
    /// Exact check of `count · |kA| >= |A|^(2k)`.
    pub holds: bool,
}

/// Number of `2k`-tuples with equal `k`-sums, against `|A|^(2k) / |kA|`.
pub fn representation_energy_k<A: Ambient>(a: &ElementSet<A>, k: usize) -> Result<RepresentationEnergy> {
    let fibers = sum_fibers(a, k)?;
    let count: BigInt = fibers.values().map(|c| c * c).sum();
    let ka = fibers.len();
    let total = num_traits::pow(BigInt::from(a.len()), 2 * k);
    let lower_bound = (a.len() as f64).powi(2 * k as i32) / ka.max(1) as f64;
    let holds = &count * BigInt::from(ka) >= total;
    Ok(RepresentationEnergy { count, lower_bound, holds })
}
