//! Exact arithmetic in the order `Z[θ]` of a totally real field.
//!
//! A field is presented by a monic irreducible integer polynomial `f` with
//! `d` real roots `θ_1 < ... < θ_d`. Each root is held as a rational
//! isolating interval refined by bisection on demand, so every embedding
//! `σ_i(α)` can be enclosed to any width and every sign decision is exact.
//!
//! Embedding indices are 0-based in this API (`0..d`, ascending roots).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{self, ZPoly};
use crate::rational::{
    ceil_scaled, exp_bounds, floor_scaled, int, ln_interval, pow2, Fixed, RatInterval,
};

/// A monic minimal polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub coeffs: Vec<i64>,
}

impl FieldSpec {
    pub fn new(coeffs: Vec<i64>) -> Self {
        FieldSpec { name: None, coeffs }
    }

    pub fn named(name: &str, coeffs: Vec<i64>) -> Self {
        FieldSpec { name: Some(name.to_string()), coeffs }
    }

    /// Built-in fields: `sqrt2`, `sqrt3`, `golden`, `zeta7plus`, and `integers` (`x`).
    pub fn builtin(name: &str) -> Option<Self> {
        let coeffs = match name {
            "sqrt2" => vec![-2, 0, 1],
            "sqrt3" => vec![-3, 0, 1],
            "golden" => vec![-1, -1, 1],
            "zeta7plus" => vec![-1, -2, 1, 1],
            "integers" => vec![0, 1],
            _ => return None,
        };
        Some(FieldSpec::named(name, coeffs))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{:?}", self.coeffs))
    }
}

/// An element `Σ a_j θ^j` of `Z[θ]`, stored as its coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgInt {
    coeffs: Vec<BigInt>,
}

impl AlgInt {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        AlgInt { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        AlgInt { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn constant(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs[0] = c;
        AlgInt { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the element lies in `Z`.
    pub fn is_rational_integer(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn neg(&self) -> AlgInt {
        AlgInt { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "θ".to_string(),
                (1, false) => format!("{mag}θ"),
                (_, true) => format!("θ^{j}"),
                (_, false) => format!("{mag}θ^{j}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for AlgInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(bigint_json))
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn bigint_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

/// Position of a root inside its isolating interval: the interval at bisection
/// depth `depth` is `[lo + index * w, lo + (index + 1) * w]` with `w = width / 2^depth`.
#[derive(Clone, Debug)]
struct RootChain {
    base: RatInterval,
    left_sign: i8,
    depth: u32,
    index: BigInt,
}

impl RootChain {
    fn exact(&self) -> bool {
        self.base.lo == self.base.hi
    }

    fn interval_at(&self, depth: u32) -> RatInterval {
        if self.exact() {
            return self.base.clone();
        }
        let (d, idx) = if depth <= self.depth {
            (depth, &self.index >> (self.depth - depth) as usize)
        } else {
            (self.depth, self.index.clone())
        };
        let w = self.base.width() / BigRational::from_integer(pow2(d));
        let lo = &self.base.lo + &w * BigRational::from_integer(idx);
        RatInterval::new(lo.clone(), lo + w)
    }

    fn refine_to(&mut self, f: &[BigInt], depth: u32) {
        if self.exact() {
            return;
        }
        while self.depth < depth {
            let w = self.base.width() / BigRational::from_integer(pow2(self.depth + 1));
            let mid_index: BigInt = &self.index * 2u32 + 1u32;
            let mid = &self.base.lo + &w * BigRational::from_integer(mid_index.clone());
            let v = poly::eval_z(f, &mid);
            assert!(!v.is_zero(), "rational root inside an irreducible field");
            let s: i8 = if v.is_positive() { 1 } else { -1 };
            self.index = if s == self.left_sign { mid_index } else { &self.index * 2u32 };
            self.depth += 1;
        }
    }
}

/// Enclosures `[lo, hi] / 2^prec` of `θ_i^j` for every root and power.
#[derive(Debug)]
pub(crate) struct PowerTable {
    pub prec: u32,
    pub bounds: Vec<Vec<(BigInt, BigInt)>>,
}

impl PowerTable {
    pub fn enclose_i64(&self, coeffs: &[i64], i: usize) -> Fixed {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (c, (l, h)) in coeffs.iter().zip(&self.bounds[i]) {
            if *c >= 0 {
                lo += l * *c;
                hi += h * *c;
            } else {
                lo += h * *c;
                hi += l * *c;
            }
        }
        Fixed { lo, hi, prec: self.prec }
    }

    pub fn enclose(&self, coeffs: &[BigInt], i: usize) -> Fixed {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (c, (l, h)) in coeffs.iter().zip(&self.bounds[i]) {
            if !c.is_negative() {
                lo += l * c;
                hi += h * c;
            } else {
                lo += h * c;
                hi += l * c;
            }
        }
        Fixed { lo, hi, prec: self.prec }
    }
}

struct FieldInner {
    spec: FieldSpec,
    poly: ZPoly,
    degree: usize,
    disc: BigInt,
    isolating: Vec<RatInterval>,
    /// log2 upper bound on max(1, |θ_i|), used to size refinements.
    root_bits: u32,
    chains: Mutex<Vec<RootChain>>,
    tables: Mutex<BTreeMap<u32, Arc<PowerTable>>>,
    coefficient_bounds: OnceLock<Vec<BigRational>>,
}

/// A totally real field `Q(θ)` with certified real embeddings.
///
/// Cloning is cheap; clones share the refinement cache.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("spec", &self.inner.spec)
            .field("disc", &self.inner.disc)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec.coeffs == other.inner.spec.coeffs
    }
}

/// Builds a field context, rejecting non-monic, reducible and non-totally-real inputs.
pub fn make_field(spec: &FieldSpec) -> Result<FieldContext> {
    FieldContext::new(spec)
}

impl FieldContext {
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        if spec.coeffs.len() < 2 || *spec.coeffs.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let f: ZPoly = spec.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let d = spec.coeffs.len() - 1;
        let bound = 1 + spec.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        let root_bits = 64 - bound.leading_zeros();

        let isolating = if d == 1 {
            vec![RatInterval::point(BigRational::from_integer(-f[0].clone()))]
        } else {
            let g = poly::gcd_q(&poly::to_q(&f), &poly::to_q(&poly::derivative_z(&f)));
            if poly::degree(&g).is_some_and(|k| k > 0) {
                return Err(Error::Reducible);
            }
            isolate_roots(&f, bound, d)?
        };

        let chains = isolating
            .iter()
            .map(|iv| {
                let v = poly::eval_z(&f, &iv.lo);
                RootChain {
                    base: iv.clone(),
                    left_sign: if v.is_negative() { -1 } else { 1 },
                    depth: 0,
                    index: BigInt::zero(),
                }
            })
            .collect();

        let ctx = FieldContext {
            inner: Arc::new(FieldInner {
                spec: spec.clone(),
                disc: poly::discriminant_monic(&f),
                poly: f,
                degree: d,
                isolating,
                root_bits,
                chains: Mutex::new(chains),
                tables: Mutex::new(BTreeMap::new()),
                coefficient_bounds: OnceLock::new(),
            }),
        };
        if d > 1 && ctx.has_integer_factor() {
            return Err(Error::Reducible);
        }
        Ok(ctx)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let spec = FieldSpec::builtin(name).ok_or_else(|| Error::Parse(format!("unknown field {name:?}")))?;
        FieldContext::new(&spec)
    }

    /// The degree-1 field presenting `Z` itself.
    pub fn integers() -> Self {
        FieldContext::new(&FieldSpec::builtin("integers").unwrap()).expect("x is irreducible")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.inner.poly
    }

    /// `disc(f)`, the squared covolume of `Z[θ]` under the Minkowski embedding.
    pub fn disc(&self) -> &BigInt {
        &self.inner.disc
    }

    /// The isolating intervals computed at construction (ascending).
    pub fn isolating_intervals(&self) -> &[RatInterval] {
        &self.inner.isolating
    }

    /// Current (finest cached) root intervals.
    pub fn root_intervals(&self) -> Vec<RatInterval> {
        let chains = self.inner.chains.lock().unwrap();
        chains.iter().map(|c| c.interval_at(c.depth)).collect()
    }

    /// Smallest bisection depth reached over all roots.
    pub fn precision_bits(&self) -> u32 {
        let chains = self.inner.chains.lock().unwrap();
        chains.iter().map(|c| c.depth).min().unwrap_or(0)
    }

    /// Interval around `θ_i` at bisection depth `depth` (deterministic, nested in `depth`).
    pub fn root_interval(&self, i: usize, depth: u32) -> RatInterval {
        let mut chains = self.inner.chains.lock().unwrap();
        let chain = &mut chains[i];
        chain.refine_to(&self.inner.poly, depth);
        chain.interval_at(depth)
    }

    fn depth_for_width_bits(&self, i: usize, bits: u32) -> u32 {
        // base width <= 2^wb
        let w = self.inner.isolating[i].width();
        if w.is_zero() {
            return 0;
        }
        let wb = (ceil_scaled(&w, 0).bits() as u32).max(1);
        wb + bits
    }

    pub(crate) fn table(&self, prec: u32) -> Arc<PowerTable> {
        if let Some(t) = self.inner.tables.lock().unwrap().get(&prec) {
            return t.clone();
        }
        let d = self.degree();
        let extra = (d as u32) * (self.inner.root_bits + 1) + 8;
        let mut bounds = Vec::with_capacity(d);
        for i in 0..d {
            let depth = self.depth_for_width_bits(i, prec + extra);
            let iv = self.root_interval(i, depth);
            let mut row = Vec::with_capacity(d);
            let mut pw = RatInterval::point(BigRational::one());
            for _ in 0..d {
                row.push((floor_scaled(&pw.lo, prec), ceil_scaled(&pw.hi, prec)));
                pw = pw.mul(&iv);
            }
            bounds.push(row);
        }
        let table = Arc::new(PowerTable { prec, bounds });
        self.inner.tables.lock().unwrap().entry(prec).or_insert(table).clone()
    }

    fn check(&self, a: &AlgInt) -> Result<()> {
        if a.len() == self.degree() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.degree() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, degree: self.degree() })
        }
    }

    pub fn element(&self, coeffs: &[i64]) -> Result<AlgInt> {
        let a = AlgInt::from_i64s(coeffs);
        self.check(&a)?;
        Ok(a)
    }

    pub fn integer(&self, n: i64) -> AlgInt {
        AlgInt::constant(BigInt::from(n), self.degree())
    }

    pub fn zero(&self) -> AlgInt {
        self.integer(0)
    }

    pub fn one(&self) -> AlgInt {
        self.integer(1)
    }

    /// The generator `θ` (equal to the integer root for degree 1).
    pub fn theta(&self) -> AlgInt {
        if self.degree() == 1 {
            return AlgInt::constant(-self.inner.poly[0].clone(), 1);
        }
        let mut c = vec![BigInt::zero(); self.degree()];
        c[1] = BigInt::one();
        AlgInt::new(c)
    }

    pub fn add(&self, a: &AlgInt, b: &AlgInt) -> Result<AlgInt> {
        self.check(a)?;
        self.check(b)?;
        Ok(AlgInt::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &AlgInt, b: &AlgInt) -> Result<AlgInt> {
        self.check(a)?;
        self.check(b)?;
        Ok(AlgInt::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect()))
    }

    pub fn neg(&self, a: &AlgInt) -> Result<AlgInt> {
        self.check(a)?;
        Ok(a.neg())
    }

    /// Product reduced modulo `f`.
    pub fn mul(&self, a: &AlgInt, b: &AlgInt) -> Result<AlgInt> {
        self.check(a)?;
        self.check(b)?;
        let d = self.degree();
        let mut r = poly::mul_z(&a.coeffs, &b.coeffs);
        let f = &self.inner.poly;
        for k in (d..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[k]);
            for j in 0..d {
                r[k - d + j] -= &c * &f[j];
            }
        }
        r.resize(d, BigInt::zero());
        Ok(AlgInt::new(r))
    }

    pub fn pow(&self, a: &AlgInt, e: u32) -> Result<AlgInt> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `N(a) = Res(f, a(x)) = Π σ_i(a)`.
    pub fn norm(&self, a: &AlgInt) -> Result<BigInt> {
        self.check(a)?;
        if a.is_zero() {
            return Ok(BigInt::zero());
        }
        let mut g = a.coeffs.clone();
        poly::trim(&mut g);
        Ok(poly::resultant(&self.inner.poly, &g))
    }

    pub fn is_unit(&self, a: &AlgInt) -> Result<bool> {
        Ok(self.norm(a)?.abs().is_one())
    }

    fn enclosure(&self, a: &AlgInt, i: usize, prec: u32) -> Fixed {
        self.table(prec).enclose(&a.coeffs, i)
    }

    /// Interval of width at most `width` certifiably containing `σ_i(a)`.
    /// Calls with smaller widths return nested intervals.
    pub fn embed(&self, a: &AlgInt, i: usize, width: &BigRational) -> Result<RatInterval> {
        self.check(a)?;
        self.check_index(i)?;
        if a.is_rational_integer() || self.degree() == 1 {
            return Ok(RatInterval::point(self.rational_value(a)));
        }
        let mut prec = 64;
        loop {
            let iv = self.enclosure(a, i, prec).to_interval();
            if &iv.width() <= width {
                return Ok(iv);
            }
            prec *= 2;
        }
    }

    /// Exact value of an element of `Z` (every element in degree 1).
    fn rational_value(&self, a: &AlgInt) -> BigRational {
        BigRational::from_integer(a.coeffs[0].clone())
    }

    pub fn embed_f64(&self, a: &AlgInt, i: usize) -> f64 {
        self.embed(a, i, &BigRational::new(BigInt::one(), pow2(60)))
            .map(|iv| iv.mid_f64())
            .unwrap_or(f64::NAN)
    }

    /// Exact comparison of `σ_i(a)` with the rational `q`.
    pub fn decide_cmp(&self, a: &AlgInt, i: usize, q: &BigRational) -> Result<Ordering> {
        self.check(a)?;
        self.check_index(i)?;
        if a.is_rational_integer() || self.degree() == 1 {
            return Ok(self.rational_value(a).cmp(q));
        }
        // a - q is a nonzero element of an irreducible field, so σ_i(a) != q.
        let mut prec = 64;
        loop {
            if let Some(ord) = self.enclosure(a, i, prec).cmp_rational(q) {
                return Ok(ord);
            }
            prec *= 2;
        }
    }

    /// Sign of `σ_i(a)`.
    pub fn sign(&self, a: &AlgInt, i: usize) -> Result<Ordering> {
        self.decide_cmp(a, i, &BigRational::zero())
    }

    /// Exact comparison of `|σ_i(a)|` with the rational `q >= 0`.
    pub fn cmp_abs(&self, a: &AlgInt, i: usize, q: &BigRational) -> Result<Ordering> {
        match self.sign(a, i)? {
            Ordering::Less => self.decide_cmp(&a.neg(), i, q),
            Ordering::Equal => Ok(BigRational::zero().cmp(q)),
            Ordering::Greater => self.decide_cmp(a, i, q),
        }
    }

    /// Exact comparison of `|σ_i(a)|` with `c · e^y` for rationals `c > 0`, `y`.
    pub fn cmp_abs_scaled_exp(
        &self,
        a: &AlgInt,
        i: usize,
        c: &BigRational,
        y: &BigRational,
    ) -> Result<Ordering> {
        self.check(a)?;
        self.check_index(i)?;
        if y.is_zero() {
            return self.cmp_abs(a, i, c);
        }
        if a.is_zero() {
            return Ok(Ordering::Less);
        }
        let mut bits = 64;
        loop {
            let target = exp_bounds(y, bits).scale(c);
            let v = if a.is_rational_integer() || self.degree() == 1 {
                RatInterval::point(self.rational_value(a))
            } else {
                self.enclosure(a, i, bits).to_interval()
            };
            if let Some(ord) = v.abs().cmp_interval(&target) {
                return Ok(ord);
            }
            bits *= 2;
        }
    }

    /// Upper bounds `B_j` with `|a_j| <= X · B_j` whenever every `|σ_i(a)| <= X`.
    ///
    /// `B_j` is the L¹ norm of row `j` of the inverse root Vandermonde matrix,
    /// computed from the Lagrange basis polynomials with interval arithmetic.
    pub fn coefficient_bounds(&self) -> &[BigRational] {
        self.inner.coefficient_bounds.get_or_init(|| {
            let d = self.degree();
            if d == 1 {
                return vec![BigRational::one()];
            }
            let roots: Vec<RatInterval> = (0..d)
                .map(|i| self.root_interval(i, self.depth_for_width_bits(i, 48)))
                .collect();
            let mut bounds = vec![BigRational::zero(); d];
            for i in 0..d {
                // numerator Π_{k != i} (x - θ_k), denominator Π (θ_i - θ_k)
                let mut num = vec![RatInterval::point(BigRational::one())];
                let mut den = RatInterval::point(BigRational::one());
                for (k, rk) in roots.iter().enumerate() {
                    if k == i {
                        continue;
                    }
                    let mut next = vec![RatInterval::point(BigRational::zero()); num.len() + 1];
                    for (j, c) in num.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(c);
                        next[j] = next[j].sub(&c.mul(rk));
                    }
                    num = next;
                    den = den.mul(&roots[i].sub(rk));
                }
                for (j, c) in num.iter().enumerate() {
                    bounds[j] += c.div(&den).abs_max();
                }
            }
            bounds
        })
    }

    /// Exact quotient `a / b` in `Q(θ)` as rational power-basis coefficients.
    pub fn divide(&self, a: &AlgInt, b: &AlgInt) -> Result<Vec<BigRational>> {
        self.check(a)?;
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DomainError("division by zero".into()));
        }
        let d = self.degree();
        // column j of the matrix is b·θ^j
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        let theta = if d == 1 { self.one() } else { self.theta() };
        for _ in 0..d {
            cols.push(self.mul(b, &basis)?);
            basis = self.mul(&basis, &theta)?;
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..d).map(|c| BigRational::from_integer(cols[c].coeffs[r].clone())).collect();
                row.push(BigRational::from_integer(a.coeffs[r].clone()));
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero()).expect("b is invertible in Q(θ)");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (x, v) in row.iter_mut().zip(&pivot_row) {
                        *x -= &factor * v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[d].clone()).collect())
    }

    /// True when some monic integer factor of `f` has degree in `1..d`.
    ///
    /// Any such factor is `Π_{i∈S} (x - θ_i)` for a subset `S` of roots, and its
    /// coefficients are integers; interval products locate the only candidate
    /// integer vector per subset, which is then tested by exact division.
    fn has_integer_factor(&self) -> bool {
        let d = self.degree();
        for mask in 1u32..(1u32 << d) - 1 {
            let size = mask.count_ones() as usize;
            if size > d / 2 || (2 * size == d && mask & 1 == 0) {
                continue;
            }
            let mut bits = 16;
            let candidate = loop {
                let mut prod = vec![RatInterval::point(BigRational::one())];
                for i in (0..d).filter(|i| mask >> i & 1 == 1) {
                    let r = self.root_interval(i, self.depth_for_width_bits(i, bits));
                    let mut next = vec![RatInterval::point(BigRational::zero()); prod.len() + 1];
                    for (j, c) in prod.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(c);
                        next[j] = next[j].sub(&c.mul(&r));
                    }
                    prod = next;
                }
                if prod.iter().all(|c| c.width() < int(1) / int(2)) {
                    let ints: Option<ZPoly> = prod
                        .iter()
                        .map(|c| {
                            let n = ceil_scaled(&c.lo, 0);
                            (BigRational::from_integer(n.clone()) <= c.hi).then_some(n)
                        })
                        .collect();
                    break ints;
                }
                bits += 16;
            };
            if let Some(g) = candidate {
                if poly::div_exact_monic(&self.inner.poly, &g).is_some() {
                    return true;
                }
            }
        }
        false
    }
}

fn isolate_roots(f: &[BigInt], bound: u64, d: usize) -> Result<Vec<RatInterval>> {
    let seq = poly::sturm_sequence(f);
    let b = BigRational::from_integer(BigInt::from(bound));
    let count = |x: &BigRational| poly::sign_changes(&seq, x);
    let total = count(&-b.clone()) - count(&b);
    if total < d {
        return Err(Error::NotTotallyReal { real: total, degree: d });
    }
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(RatInterval::new(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                if poly::eval_z(f, &mid).is_zero() {
                    return Err(Error::Reducible);
                }
                let cm = count(&mid);
                let left = count(&lo) - cm;
                stack.push((mid.clone(), hi, n - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// The fundamental unit `ε > 1` (in the larger embedding) of a rank-one unit
/// group and the certified interval around `ln ε`.
#[derive(Clone, Debug)]
pub struct Regulator {
    pub unit: AlgInt,
    pub log: RatInterval,
}

impl Regulator {
    pub fn value(&self) -> f64 {
        self.log.mid_f64()
    }
}

impl FieldContext {
    /// Regulator of a quadratic order, found by scanning additive boxes of
    /// doubling radius for the smallest unit exceeding 1.
    pub fn regulator_rank1(&self) -> Result<Regulator> {
        if self.degree() != 2 {
            return Err(Error::UnsupportedDegree(self.degree()));
        }
        let upper = 1;
        let mut radius = 2i64;
        loop {
            let boxed = crate::boxenum::enum_additive_box(self, &self.zero(), &int(radius));
            let mut best: Option<AlgInt> = None;
            for u in boxed.iter() {
                if !self.is_unit(u)? || self.decide_cmp(u, upper, &BigRational::one())? != Ordering::Greater {
                    continue;
                }
                best = match best {
                    None => Some(u.clone()),
                    Some(b) => {
                        let diff = self.sub(u, &b)?;
                        if self.sign(&diff, upper)? == Ordering::Less {
                            Some(u.clone())
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            if let Some(unit) = best {
                let iv = self.embed(&unit, upper, &BigRational::new(BigInt::one(), pow2(80)))?;
                let log = ln_interval(&iv, 80);
                return Ok(Regulator { unit, log });
            }
            radius *= 2;
        }
    }
}

impl crate::setcalc::Ambient for FieldContext {
    type Elem = AlgInt;

    fn same_as(&self, other: &Self) -> bool {
        self == other
    }

    fn add(&self, a: &AlgInt, b: &AlgInt) -> Result<AlgInt> {
        FieldContext::add(self, a, b)
    }

    fn mul(&self, a: &AlgInt, b: &AlgInt) -> Result<AlgInt> {
        FieldContext::mul(self, a, b)
    }

    fn neg(&self, a: &AlgInt) -> AlgInt {
        a.neg()
    }

    fn zero(&self) -> AlgInt {
        FieldContext::zero(self)
    }

    fn one(&self) -> AlgInt {
        FieldContext::one(self)
    }

    fn is_unit(&self, a: &AlgInt) -> Result<bool> {
        FieldContext::is_unit(self, a)
    }

    fn embedding_sign(&self, a: &AlgInt, i: usize) -> Result<Ordering> {
        self.sign(a, i)
    }

    fn ambient_json(&self) -> serde_json::Value {
        serde_json::json!({"kind": "number_ring", "field": self.spec()})
    }

    fn elem_json(&self, a: &AlgInt) -> serde_json::Value {
        serde_json::to_value(a).expect("serializable")
    }
}
