//! Reduction of `Z[θ]` modulo a completely split prime.
//!
//! A root `r` of `f mod p` gives the ring map `Z[θ] → F_p`, `θ ↦ r`, whose
//! kernel is a prime of norm `p`. An element in that kernel has norm divisible
//! by `p`, so elements with small conjugates reduce injectively.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{Envelope, GpConstruction};
use crate::error::{Error, Result};
use crate::numberfield::{AlgInt, FieldContext};
use crate::rational::{ceil_scaled, cmp_scaled_exp, exp_bounds, int};
use crate::setcalc::{ElementSet, PrimeField};

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Polynomials over `F_p`, ascending coefficients, trimmed.
mod fp {
    use super::{mul_mod, pow_mod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = pow_mod(b[db], p - 2, p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = mul_mod(r[dr], inv, p);
            for (i, &bc) in b.iter().enumerate() {
                let k = dr - db + i;
                r[k] = (r[k] + p - mul_mod(c, bc, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        let inv = pow_mod(*a.last().unwrap(), p - 2, p);
        a.iter().map(|&c| mul_mod(c, inv, p)).collect()
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            monic(&x, p)
        }
    }

    pub fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }
}

/// A prime `p` at which `f` splits into distinct linear factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPrimeWitness {
    pub p: u64,
    pub roots: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitPrimeScan {
    pub witnesses: Vec<SplitPrimeWitness>,
    /// Last integer examined.
    pub scanned_to: u64,
    /// True when the scan stopped at its cap before finding enough primes.
    pub capped: bool,
}

const SCAN_CAP: u64 = 1 << 22;
const BRUTE_FORCE_LIMIT: u64 = 512;
const BLOCK: u64 = 4096;

fn reduce_poly(f: &[BigInt], p: u64) -> Vec<u64> {
    let pm = PrimeField::new(p);
    let mut out: Vec<u64> = f.iter().map(|c| pm.reduce(c)).collect();
    fp::trim(&mut out);
    out
}

/// Roots of a squarefree split polynomial over `F_p` by equal-degree splitting.
fn split_roots(g: &[u64], p: u64) -> Vec<u64> {
    let deg = g.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let g = fp::monic(g, p);
        return vec![(p - g[0]) % p];
    }
    if p <= BRUTE_FORCE_LIMIT {
        return (0..p).filter(|&x| fp::eval(g, x, p) == 0).collect();
    }
    for shift in 0..p {
        // gcd((x + shift)^((p-1)/2) - 1, g) picks out roots r with r + shift a nonzero square
        let h = fp::pow_mod_poly(&[shift, 1], (p - 1) / 2, g, p);
        let d = fp::gcd(&fp::sub(&h, &[1], p), g, p);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let (q, _) = div(g, &d, p);
            let mut out = split_roots(&d, p);
            out.extend(split_roots(&q, p));
            return out;
        }
    }
    unreachable!("a split polynomial of degree >= 2 has a separating shift")
}

fn div(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], inv, p);
        q[dr - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            let k = dr - db + i;
            r[k] = (r[k] + p - mul_mod(c, bc, p)) % p;
        }
        fp::trim(&mut r);
    }
    fp::trim(&mut q);
    (q, r)
}

/// Split test at one prime: `p ∤ disc` and `x^p ≡ x (mod f, p)`.
pub fn split_witness(ctx: &FieldContext, p: u64) -> Option<SplitPrimeWitness> {
    if !is_prime(p) {
        return None;
    }
    let disc_mod = ctx.disc() % BigInt::from(p);
    if disc_mod.is_zero() {
        return None;
    }
    let f = reduce_poly(ctx.poly(), p);
    let d = ctx.degree();
    let frob = fp::pow_mod_poly(&[0, 1], p, &f, p);
    let x = fp::rem(&[0, 1], &f, p);
    if fp::sub(&frob, &x, p).is_empty() {
        let mut roots = split_roots(&f, p);
        roots.sort_unstable();
        debug_assert_eq!(roots.len(), d);
        Some(SplitPrimeWitness { p, roots })
    } else {
        None
    }
}

/// The first `how_many` split primes `>= p_min`.
pub fn find_split_primes(ctx: &FieldContext, p_min: u64, how_many: usize) -> SplitPrimeScan {
    let mut witnesses = Vec::new();
    let mut start = p_min.max(2);
    let end = p_min.saturating_add(SCAN_CAP);
    while witnesses.len() < how_many && start < end {
        let stop = (start + BLOCK).min(end);
        let block: Vec<SplitPrimeWitness> =
            (start..stop).into_par_iter().filter_map(|p| split_witness(ctx, p)).collect();
        for w in block {
            if witnesses.len() == how_many {
                return SplitPrimeScan { scanned_to: w.p - 1, witnesses, capped: false };
            }
            witnesses.push(w);
        }
        start = stop;
    }
    let capped = witnesses.len() < how_many;
    let scanned_to = if capped { end - 1 } else { witnesses.last().map_or(start, |w| w.p) };
    SplitPrimeScan { witnesses, scanned_to, capped }
}

/// Image of `a` under `θ ↦ root` in `F_p`.
pub fn reduce(a: &AlgInt, p: u64, root: u64) -> u64 {
    let pm = PrimeField::new(p);
    let coeffs: Vec<u64> = a.coeffs().iter().map(|c| pm.reduce(c)).collect();
    fp::eval(&coeffs, root, p)
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub p: u64,
    pub root: u64,
    pub image: ElementSet<PrimeField>,
    pub injective: bool,
    /// `Some(true)` when the envelope certifies injectivity.
    pub predicted_injective: Option<bool>,
}

/// True when `(2 M e^y)^d < p`, which makes reduction injective on the envelope.
pub fn injectivity_predicted(env: &Envelope, d: usize, p: u64) -> bool {
    let c = num_traits::pow(&env.scale * int(2), d);
    let y = &env.log * int(d as i64);
    cmp_scaled_exp(&c, &y, &BigRational::from_integer(BigInt::from(p))) == Ordering::Less
}

pub fn reduce_set(
    a: &ElementSet<FieldContext>,
    w: &SplitPrimeWitness,
    root_index: usize,
    envelope: Option<&Envelope>,
) -> Result<Reduction> {
    let ctx = a.ambient();
    if w.roots.len() != ctx.degree() {
        return Err(Error::MixedFields);
    }
    let root = *w.roots.get(root_index).ok_or(Error::IndexOutOfRange { index: root_index, degree: w.roots.len() })?;
    let image = ElementSet::from_elems(PrimeField::new(w.p), a.iter().map(|e| reduce(e, w.p, root)));
    let injective = image.len() == a.len();
    let predicted_injective = envelope.map(|env| injectivity_predicted(env, ctx.degree(), w.p));
    if predicted_injective == Some(true) && !injective {
        return Err(Error::PredictionViolation(format!(
            "reduction mod {} identified {} elements",
            w.p,
            a.len() - image.len()
        )));
    }
    Ok(Reduction { p: w.p, root, image, injective, predicted_injective })
}

/// `⌈c^d e^{d y}⌉` for rational `c > 0`, `y >= 0`.
fn ceil_power_exp(c: &BigRational, y: &BigRational, d: usize) -> BigInt {
    let cd = num_traits::pow(c.clone(), d);
    let yd = y * int(d as i64);
    if yd.is_zero() {
        return ceil_scaled(&cd, 0);
    }
    let mut bits = 64;
    loop {
        let iv = exp_bounds(&yd, bits).scale(&cd);
        let (lo, hi) = (ceil_scaled(&iv.lo, 0), ceil_scaled(&iv.hi, 0));
        if lo == hi {
            return hi;
        }
        bits *= 2;
    }
}

/// A size beyond which reduction preserves `|A+A|` and `|AA|`.
///
/// Differences of sums have conjugates at most `4 M e^y` and differences of
/// products at most `2 M² e^{2y}`; a nonzero difference with `|N| < p` survives.
pub fn stability_threshold_for(env: &Envelope, d: usize) -> BigInt {
    let m = &env.scale;
    let sums = ceil_power_exp(&(m * int(4)), &env.log, d);
    let prods = ceil_power_exp(&(m * m * int(2)), &(&env.log * int(2)), d);
    sums.max(prods)
}

/// `⌈(8 X² e^{2Y})^d⌉` for a GP construction.
pub fn stability_threshold(c: &GpConstruction) -> BigInt {
    stability_threshold_for(&c.envelope(), c.ctx.degree())
}

/// `ln |A| / ln p`.
pub fn realized_ratio(size: usize, p: u64) -> f64 {
    (size as f64).ln() / (p as f64).ln()
}

/// Smallest split prime strictly above `t`, if it fits in `u64`.
pub fn split_prime_above(ctx: &FieldContext, t: &BigInt) -> Option<SplitPrimeWitness> {
    let start = (t + BigInt::one()).to_u64()?;
    find_split_primes(ctx, start, 1).witnesses.into_iter().next()
}
