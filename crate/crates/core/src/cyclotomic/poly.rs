//! Dense univariate polynomials over ℚ and ℤ, lowest degree first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero after trimming.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quo = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        quo[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (quo, r)
}

/// Remainder modulo a monic integer polynomial, padded to `deg(m)` terms.
pub(crate) fn rem_monic(a: &[BigRational], m: &[BigInt]) -> QPoly {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let c = r.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for (i, mc) in m[..d].iter().enumerate() {
            if !mc.is_zero() {
                r[shift + i] -= &c * mc;
            }
        }
    }
    r.resize(d, BigRational::zero());
    r
}

/// `s` with `s·a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n` as integer coefficients, lowest degree first, computed by dividing
/// `xⁿ − 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial needs n ≥ 1");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num: QPoly = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d: QPoly = cyclotomic_polynomial(d)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (q, r) = divrem(&num, &phi_d);
        debug_assert!(r.is_empty(), "Φ_d divides xⁿ − 1");
        num = q;
    }
    let p: Arc<Vec<BigInt>> = Arc::new(num.into_iter().map(|c| c.to_integer()).collect());
    cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(5)), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_is_phi() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        for n in [6u64, 12, 15, 30] {
            let mut prod: QPoly = vec![BigRational::one()];
            for d in (1..=n).filter(|d| n % d == 0) {
                let p: QPoly = cyclotomic_polynomial(d).iter().map(|c| BigRational::from_integer(c.clone())).collect();
                prod = mul(&prod, &p);
            }
            let mut expect = vec![BigRational::zero(); n as usize + 1];
            expect[0] = -BigRational::one();
            expect[n as usize] = BigRational::one();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn modular_inverse() {
        let q = |v: i64| BigRational::from_integer(v.into());
        // (x + 1)⁻¹ mod x² + 1 = (1 − x)/2
        let inv = inverse_mod(&[q(1), q(1)], &[q(1), q(0), q(1)]).unwrap();
        assert_eq!(inv, vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]);
        assert!(inverse_mod(&[q(-1), q(1)], &[q(-1), q(0), q(1)]).is_none());
    }
}
