//! Dense univariate polynomials over Z and Q (ascending coefficients).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub fn eval_z(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

pub fn eval_q(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative_z(p: &[BigInt]) -> ZPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Remainder of `a` modulo `b` over Q; `b` must be nonzero.
pub fn rem_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &factor * c;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd over Q.
pub fn gcd_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem_q(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let lead = x[d].clone();
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

/// Sturm sequence `f, f', -rem(f, f'), ...` over Q.
pub fn sturm_sequence(f: &[BigInt]) -> Vec<QPoly> {
    let mut seq = vec![to_q(f), to_q(&derivative_z(f))];
    trim(&mut seq[1]);
    while degree(seq.last().unwrap()).is_some_and(|d| d > 0) {
        let n = seq.len();
        let r: QPoly = rem_q(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        let mut r = r;
        trim(&mut r);
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq
}

/// Number of sign changes of the Sturm sequence at `x` (zeros skipped).
pub fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = eval_q(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant `Res(a, b)` from the Sylvester matrix. Both polynomials must be nonzero.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let da = degree(a).expect("zero polynomial");
    let db = degree(b).expect("zero polynomial");
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    if da == 0 {
        return num_traits::pow(a[0].clone(), db);
    }
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    // rows 0..db: shifts of a (descending coefficients); rows db..n: shifts of b
    for r in 0..db {
        for (k, c) in a[..=da].iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in b[..=db].iter().rev().enumerate() {
            m[db + r][r + k] = c.clone();
        }
    }
    det_bareiss(m)
}

/// Discriminant of a monic polynomial: `(-1)^(d(d-1)/2) Res(f, f')`.
pub fn discriminant_monic(f: &[BigInt]) -> BigInt {
    let d = degree(f).expect("zero polynomial");
    if d <= 1 {
        return BigInt::one();
    }
    let r = resultant(f, &derivative_z(f));
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Exact quotient `a / b` over Z for monic `b`; `None` if `b` does not divide `a`.
pub fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Product of two integer polynomials.
pub fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
