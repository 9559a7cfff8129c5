//! Small finite fields `F_q`, `q = p^k <= 256`, with table arithmetic.
//!
//! An element is a code in `0..q` whose base-`p` digits are its coordinates in
//! the basis `1, α, ..., α^{k-1}`, where `α` is a root of a fixed modulus. For
//! prime `q` the code is the residue itself.

use serde::Serialize;

use crate::error::{Error, Result};

/// Conway polynomials, ascending coefficients.
const CONWAY: &[(u32, &[u8])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (256, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (9, &[2, 2, 1]),
    (27, &[1, 2, 0, 1]),
    (81, &[2, 0, 0, 2, 1]),
    (243, &[1, 2, 0, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (125, &[3, 3, 0, 1]),
    (49, &[3, 6, 1]),
    (121, &[7, 7, 1]),
    (169, &[2, 12, 1]),
];

#[derive(Clone, Debug, Serialize)]
pub struct FiniteField {
    q: u32,
    p: u32,
    k: u32,
    modulus: Vec<u8>,
    #[serde(skip)]
    add: Vec<u8>,
    #[serde(skip)]
    mul: Vec<u8>,
    #[serde(skip)]
    inv: Vec<u8>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut k) = (q, 0);
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn poly_mod_p(a: &[u32], modulus: &[u8], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut r = a.to_vec();
    for top in (k..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = top - k + i;
            r[idx] = (r[idx] + (p - c) * m as u32) % p;
        }
    }
    r.truncate(k);
    r.iter().map(|c| c % p).collect()
}

/// Monic irreducible test over `F_p` by trial division by every monic polynomial of degree `<= k/2`.
pub fn is_irreducible_mod_p(f: &[u8], p: u32) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut g: Vec<u8> = (0..deg).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u8).collect();
            g.push(1);
            let r = poly_mod_p(&f.iter().map(|&c| c as u32).collect::<Vec<_>>(), &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, k: u32) -> Vec<u8> {
    let q = p.pow(k);
    if let Some((_, m)) = CONWAY.iter().find(|(qq, _)| *qq == q) {
        return m.to_vec();
    }
    // lexicographically first monic irreducible
    for code in 0..q as u64 {
        let mut f: Vec<u8> = (0..k).map(|i| ((code / (p as u64).pow(i)) % p as u64) as u8).collect();
        f.push(1);
        if is_irreducible_mod_p(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > 256 {
            return Err(Error::Unsupported(format!("field size {q} exceeds 256")));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 { vec![0, 1] } else { default_modulus(p, k) };
        let n = q as usize;
        let digits = |c: u32| -> Vec<u32> { (0..k).map(|i| (c / p.pow(i)) % p).collect() };
        let code = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &x)| x * p.pow(i as u32)).sum() };
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = code(&s) as u8;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { vec![prod[0] % p] } else { poly_mod_p(&prod, &modulus, p) };
                mul[(a * q + b) as usize] = code(&r) as u8;
            }
        }
        let mut inv = vec![0u8; n];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("modulus is irreducible") as u8;
        }
        Ok(FiniteField { q, p, k, modulus, add, mul, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Modulus defining `α` (ascending); `x` for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add(a, b) == 0).unwrap_or(0)
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Value of the polynomial `a` (ascending codes) at `x`.
    pub fn eval(&self, a: &[u8], x: u8) -> u8 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Remainder of `a` by a nonzero `b`.
    pub fn poly_rem(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut r = trimmed(a);
        let b = trimmed(b);
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul(r[dr], lead_inv);
            for (i, &bc) in b.iter().enumerate() {
                let k = dr - db + i;
                r[k] = self.sub(r[k], self.mul(c, bc));
            }
            r = trimmed(&r);
        }
        r
    }

    /// Quotient `a / b` for a nonzero `b`, discarding the remainder.
    pub fn poly_div(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut r = trimmed(a);
        let b = trimmed(b);
        let db = b.len() - 1;
        if r.len() <= db {
            return Vec::new();
        }
        let lead_inv = self.inv(b[db]);
        let mut q = vec![0u8; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul(r[dr], lead_inv);
            q[dr - db] = c;
            for (i, &bc) in b.iter().enumerate() {
                let k = dr - db + i;
                r[k] = self.sub(r[k], self.mul(c, bc));
            }
            r = trimmed(&r);
        }
        trimmed(&q)
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (mut x, mut y) = (trimmed(a), trimmed(b));
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = self.inv(lead);
            x = x.iter().map(|&c| self.mul(c, inv)).collect();
        }
        x
    }

    /// Human-readable element: the residue for prime fields, `{code}` otherwise.
    pub fn format_elem(&self, c: u8) -> String {
        if self.is_prime_field() {
            c.to_string()
        } else {
            format!("{{{c}}}")
        }
    }

    /// Human-readable polynomial in `x`, highest degree first.
    pub fn format_poly(&self, a: &[u8]) -> String {
        let a = trimmed(a);
        if a.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let coeff = if c == 1 && j > 0 { String::new() } else { self.format_elem(c) };
                match j {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{j}"),
                }
            })
            .collect();
        terms.join("+")
    }
}

/// Copy of `a` without trailing zero coefficients.
pub fn trimmed(a: &[u8]) -> Vec<u8> {
    let end = a.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    a[..end].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(1681), Some((41, 2)));
        assert_eq!(prime_power(12), None);
        assert!(matches!(FiniteField::new(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn conway_moduli_are_irreducible() {
        for (q, m) in CONWAY {
            let (p, k) = prime_power(*q as u64).unwrap();
            assert_eq!(m.len() as u32, k + 1);
            assert!(is_irreducible_mod_p(m, p as u32), "q = {q}");
        }
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 2));
    }

    #[test]
    fn field_axioms() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49] {
            let f = FiniteField::new(q).unwrap();
            let els: Vec<u8> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0);
                    }
                }
            }
            for &a in els.iter().take(9) {
                for &b in els.iter().take(9) {
                    for &c in els.iter().take(9) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
            // Frobenius generates: x^q = x
            for &a in &els {
                let mut acc = 1u8;
                for _ in 0..q {
                    acc = f.mul(acc, a);
                }
                assert_eq!(acc, a);
            }
        }
    }

    #[test]
    fn polynomial_gcd() {
        let f = FiniteField::new(2).unwrap();
        // x^3 + 1 = (x + 1)(x^2 + x + 1)
        assert_eq!(f.poly_gcd(&[1, 0, 0, 1], &[1, 1, 1]), vec![1, 1, 1]);
        assert_eq!(f.poly_div(&[1, 0, 0, 1], &[1, 1, 1]), vec![1, 1]);
        assert_eq!(f.format_poly(&[1, 0, 0, 1]), "x^3+1");
    }
}
