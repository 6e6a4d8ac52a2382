//! Exact arithmetic in ℚ(ζ_n) with certified modulus comparisons.
//!
//! Elements are residues modulo `Φ_n` in the power basis
//! `1, ζ, …, ζ^{φ(n)−1}`, so equality is coefficient equality. Numeric
//! work always goes through an enclosure; a comparison that the enclosure
//! cannot decide is reported as such instead of being guessed.

mod bound;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bound::ComplexBound;
pub use poly::{cyclotomic_polynomial, euler_phi};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("conductor {from} does not divide {to}")]
    BadLift { from: u64, to: u64 },
    #[error("embedding index {k} is not a unit modulo {n}")]
    BadEmbedding { n: u64, k: u64 },
}

/// How far numeric comparisons may escalate past double precision.
///
/// Level `L` allows fixed-point evaluation up to `64·2^L` bits; level 0
/// stops at doubles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub level: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { level: 4 }
    }
}

impl Precision {
    pub const ENV: &'static str = "UNITFORGE_PRECISION";

    pub fn double_only() -> Self {
        Precision { level: 0 }
    }

    /// Reads `UNITFORGE_PRECISION`; unset or unparsable means the default.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|level: u32| Precision { level: level.min(12) })
            .unwrap_or_default()
    }

    fn bit_schedule(&self) -> impl Iterator<Item = u32> {
        (1..=self.level).map(|l| 64u32 << l)
    }
}

/// Outcome of a single-precision-level comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AbsOrdering {
    Greater,
    Less,
    Inconclusive,
}

/// Outcome of a comparison resolved with exact zero tests and escalation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certified {
    Greater,
    Equal,
    Less,
    /// precision budget exhausted
    Undecided,
}

impl Certified {
    pub fn is_ge(self) -> bool {
        matches!(self, Certified::Greater | Certified::Equal)
    }

    pub fn is_le(self) -> bool {
        matches!(self, Certified::Less | Certified::Equal)
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Certified::Greater,
            Ordering::Equal => Certified::Equal,
            Ordering::Less => Certified::Less,
        }
    }
}

/// An element of ℚ(ζ_n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    fn reduce(conductor: u64, raw: &[BigRational]) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        CyclotomicNumber { conductor, coeffs: poly::rem_monic(raw, &phi) }
    }

    pub fn zero(n: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CyclotomicNumber { conductor: n, coeffs: vec![BigRational::zero(); euler_phi(n) as usize] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: u64, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(v.into()))
    }

    /// Reduces an arbitrary polynomial in ζ.
    pub fn from_poly(n: u64, coeffs: &[BigRational]) -> Self {
        Self::reduce(n, coeffs)
    }

    /// Reduces `Σ c_j ζ^j` with integer coefficients.
    pub fn from_int_poly(n: u64, coeffs: &[i64]) -> Self {
        let q: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::reduce(n, &q)
    }

    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `ζ_n^e` for any integer exponent.
    pub fn zeta_pow(n: u64, e: i64) -> Self {
        let e = e.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::reduce(n, &raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check(&self, o: &Self) -> Result<(), CycError> {
        if self.conductor == o.conductor {
            Ok(())
        } else {
            Err(CycError::ConductorMismatch(self.conductor, o.conductor))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, CycError> {
        self.check(o)?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, CycError> {
        self.check(o)?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, CycError> {
        self.check(o)?;
        Ok(Self::reduce(self.conductor, &poly::mul(&self.coeffs, &o.coeffs)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.conductor));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let s = poly::inverse_mod(&self.coeffs, &phi).expect("Φ_n is irreducible");
        Ok(Self::reduce(self.conductor, &s))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, CycError> {
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The Galois automorphism `ζ ↦ ζ^j`, `gcd(j, n) = 1`.
    pub fn galois(&self, j: i64) -> Result<Self, CycError> {
        let n = self.conductor;
        let jj = j.rem_euclid(n as i64) as u64;
        if n > 1 && jj.gcd(&n) != 1 {
            return Err(CycError::BadEmbedding { n, k: jj });
        }
        let mut raw = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i as u64 * jj % n) as usize] += c;
        }
        Ok(Self::reduce(n, &raw))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`; commutes with every embedding.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("−1 is a unit")
    }

    /// `a·conj(a)`, whose every embedding is `|a|²`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Rewrites the element in ℚ(ζ_m) for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Result<Self, CycError> {
        let n = self.conductor;
        if !m.is_multiple_of(n) {
            return Err(CycError::BadLift { from: n, to: m });
        }
        let step = (m / n) as usize;
        let mut raw = vec![BigRational::zero(); self.coeffs.len() * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(m, &raw))
    }

    fn check_embedding(&self, k: u64) -> Result<u64, CycError> {
        let n = self.conductor;
        let kk = k % n;
        if n > 1 && kk.gcd(&n) != 1 {
            return Err(CycError::BadEmbedding { n, k });
        }
        Ok(kk)
    }

    /// Double-precision enclosure of the value at `ζ = e^{2πik/n}`.
    pub fn embed(&self, k: u64) -> Result<ComplexBound, CycError> {
        let kk = self.check_embedding(k)?;
        Ok(bound::eval_double(&self.coeffs, self.conductor, kk))
    }

    /// Sign of a real-valued element at the given embedding.
    ///
    /// Zero is detected exactly; otherwise doubles are tried first and then
    /// fixed-point evaluation at growing precision. Elements whose
    /// embedding is not real give `Undecided`.
    pub fn real_sign(&self, k: u64, precision: Precision) -> Result<Certified, CycError> {
        let kk = self.check_embedding(k)?;
        if self.is_zero() {
            return Ok(Certified::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Certified::from_ordering(q.cmp(&BigRational::zero())));
        }
        if let Some(s) = bound::eval_double(&self.coeffs, self.conductor, kk).real_sign() {
            return Ok(Certified::from_ordering(s));
        }
        for bits in precision.bit_schedule() {
            let (re, _) = bound::eval_fixed(&self.coeffs, self.conductor, kk, bits);
            if let Some(s) = re.sign() {
                return Ok(Certified::from_ordering(s));
            }
        }
        Ok(Certified::Undecided)
    }

    /// Compares `|a|` with a non-negative rational `c` using only the
    /// double-precision enclosure of `a·conj(a)`; equality always comes
    /// back `Inconclusive`.
    pub fn abs_compare(&self, k: u64, c: &BigRational) -> Result<AbsOrdering, CycError> {
        let kk = self.check_embedding(k)?;
        let n2 = self.norm_sq();
        let diff = &n2 - &Self::from_rational(self.conductor, c * c);
        let b = bound::eval_double(&diff.coeffs, self.conductor, kk);
        Ok(match b.real_sign() {
            Some(Ordering::Greater) => AbsOrdering::Greater,
            Some(Ordering::Less) => AbsOrdering::Less,
            _ => AbsOrdering::Inconclusive,
        })
    }

    /// `|a|` against a non-negative rational, with exact equality detection
    /// and precision escalation.
    pub fn abs_cmp_certified(&self, k: u64, c: &BigRational, precision: Precision) -> Result<Certified, CycError> {
        let diff = &self.norm_sq() - &Self::from_rational(self.conductor, c * c);
        diff.real_sign(k, precision)
    }

    /// `|a|` against `|b|` (same conductor, same embedding).
    pub fn abs_cmp_abs(&self, other: &Self, k: u64, precision: Precision) -> Result<Certified, CycError> {
        let diff = self.norm_sq().checked_sub(&other.norm_sq())?;
        diff.real_sign(k, precision)
    }
}

/// `z_k = Σ_{i<k} ζ_n^i`.
pub fn geometric_sum(n: u64, k: u64) -> CyclotomicNumber {
    let raw: Vec<BigRational> = (0..k).map(|_| BigRational::one()).collect();
    CyclotomicNumber::from_poly(n, &raw)
}

/// Where `|z_k|` sits relative to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeometricBound {
    GeOneStrict,
    EqOne,
    Zero,
}

/// Classifies `|Σ_{i<k} ζ_n^i|` by congruence: zero iff `k ≡ 0`, exactly
/// one iff `k ≡ ±1 (mod n)`, strictly above one otherwise. For `n = 1`
/// the sum is `k` itself.
pub fn geometric_sum_bound(n: u64, k: u64) -> GeometricBound {
    assert!(n >= 1 && k >= 1, "need n, k ≥ 1");
    if n == 1 {
        return if k == 1 { GeometricBound::EqOne } else { GeometricBound::GeOneStrict };
    }
    let r = k % n;
    if r == 0 {
        GeometricBound::Zero
    } else if r == 1 || r == n - 1 {
        GeometricBound::EqOne
    } else {
        GeometricBound::GeOneStrict
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.conductor, self)
    }
}

/// Polynomial in `z` with exact fractions, lowest degree first.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            match (abs.is_one(), i == 0) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on a conductor mismatch; the `checked_*` form returns an error.
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic operands must share a conductor")
            }
        }
        impl $trait<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// JSON form: conductor plus `[numerator, denominator]` string pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u64,
    pub coeffs: Vec<[String; 2]>,
}

impl From<&CyclotomicNumber> for CyclotomicJson {
    fn from(c: &CyclotomicNumber) -> Self {
        CyclotomicJson {
            conductor: c.conductor,
            coeffs: c.coeffs.iter().map(|q| [q.numer().to_string(), q.denom().to_string()]).collect(),
        }
    }
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        rational(n, 1)
    }

    #[test]
    fn zeta_relations() {
        for n in [1u64, 2, 3, 4, 5, 8, 9, 12] {
            let z = CyclotomicNumber::zeta(n);
            assert!(z.pow(n as i64).unwrap().is_one(), "ζ_{n}^{n} = 1");
            assert_eq!(z.inv().unwrap(), z.pow(n as i64 - 1).unwrap());
        }
        assert_eq!(CyclotomicNumber::zeta(2), CyclotomicNumber::from_int(2, -1));
    }

    #[test]
    fn exact_division() {
        let z = CyclotomicNumber::zeta(5);
        let one = CyclotomicNumber::one(5);
        let lhs = (&z.pow(2).unwrap() - &one).checked_div(&(&z - &one)).unwrap();
        assert_eq!(lhs, &one + &z);
        assert_eq!(CyclotomicNumber::zero(5).inv(), Err(CycError::DivisionByZero(5)));
    }

    #[test]
    fn embeddings() {
        let i = CyclotomicNumber::zeta(4).embed(1).unwrap();
        assert!(i.contains(0.0, 1.0));
        assert!(i.radius < 1e-12);
        let golden = (&CyclotomicNumber::one(5) + &CyclotomicNumber::zeta(5)).embed(1).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((golden.modulus() - phi).abs() < 1e-12);
        let zero = CyclotomicNumber::zero(7).embed(3).unwrap();
        assert_eq!((zero.re, zero.im, zero.radius), (0.0, 0.0, 0.0));
        assert!(CyclotomicNumber::zeta(6).embed(2).is_err());
    }

    #[test]
    fn abs_compare_examples() {
        let one_plus = &CyclotomicNumber::one(5) + &CyclotomicNumber::zeta(5);
        assert_eq!(one_plus.abs_compare(1, &q(1)).unwrap(), AbsOrdering::Greater);
        for n in [3u64, 5, 7, 12] {
            assert_eq!(CyclotomicNumber::zeta(n).abs_compare(1, &q(1)).unwrap(), AbsOrdering::Inconclusive);
            assert_eq!(
                CyclotomicNumber::zeta(n).abs_cmp_certified(1, &q(1), Precision::default()).unwrap(),
                Certified::Equal
            );
        }
        // |3(1 − ζ₃⁻¹)| = 3√3
        let x = (&CyclotomicNumber::one(3) - &CyclotomicNumber::zeta_pow(3, -1)).scale(&q(3));
        assert_eq!(x.abs_compare(1, &q(4)).unwrap(), AbsOrdering::Greater);
        assert_eq!(x.norm_sq(), CyclotomicNumber::from_int(3, 27));
    }

    #[test]
    fn escalation_decides_near_ties() {
        // |1 + ζ_5|² − c² with c a rational within 1e-20 of the golden ratio
        let x = &CyclotomicNumber::one(5) + &CyclotomicNumber::zeta(5);
        let below = BigRational::new(BigInt::from(161803398874989484820i128), BigInt::from(100000000000000000000i128));
        assert_eq!(x.abs_compare(1, &below).unwrap(), AbsOrdering::Inconclusive);
        assert_eq!(x.abs_cmp_certified(1, &below, Precision::default()).unwrap(), Certified::Greater);
        assert_eq!(
            x.abs_cmp_certified(1, &below, Precision::double_only()).unwrap(),
            Certified::Undecided
        );
    }

    #[test]
    fn geometric_sums() {
        assert!(geometric_sum(5, 1).is_one());
        assert_eq!(geometric_sum_bound(5, 1), GeometricBound::EqOne);
        assert_eq!(geometric_sum_bound(5, 2), GeometricBound::GeOneStrict);
        let z2 = geometric_sum(5, 2).embed(1).unwrap();
        assert!((z2.modulus() - 1.618033988749895).abs() < 1e-12);
        assert_eq!(geometric_sum_bound(4, 4), GeometricBound::Zero);
        assert!(geometric_sum(4, 4).is_zero());
    }

    #[test]
    fn lift_and_galois() {
        let z3 = CyclotomicNumber::zeta(3);
        let lifted = z3.lift(12).unwrap();
        assert_eq!(lifted, CyclotomicNumber::zeta_pow(12, 4));
        assert!(z3.lift(10).is_err());
        let a = CyclotomicNumber::from_int_poly(7, &[1, 2, 0, -3]);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.galois(3).unwrap().galois(5).unwrap(), a);
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicNumber::from_int_poly(5, &[1, -1, 0, 2]).to_string(), "1 - z + 2*z^3");
        assert_eq!(CyclotomicNumber::zero(5).to_string(), "0");
    }
}
