//! Exact arithmetic in ℚG, with ℤG as the integral-coefficient case.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{solve, SolveOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands live in different group rings")]
    GroupMismatch,
    #[error("element is not invertible in QG")]
    NotInvertible,
    #[error("coefficient vector has length {got}, group order is {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// An element of ℚG as a dense vector of reduced fractions indexed by the
/// group's elements.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<BigRational>,
}

pub type Digest256 = [u8; 32];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![BigRational::zero(); group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::from_element(group, 0)
    }

    pub fn from_element(group: &Arc<FiniteGroup>, x: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[x] = BigRational::one();
        e
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<BigRational>) -> Result<Self, RingError> {
        if coeffs.len() != group.order() {
            return Err(RingError::BadLength { got: coeffs.len(), expected: group.order() });
        }
        Ok(GroupRingElement { group: group.clone(), coeffs })
    }

    pub fn from_int_coeffs(group: &Arc<FiniteGroup>, coeffs: &[i64]) -> Result<Self, RingError> {
        Self::from_coeffs(group, coeffs.iter().map(|&c| q(c)).collect())
    }

    /// `Σ c·x` over `(c, x)` terms; repeated elements accumulate.
    pub fn from_terms(group: &Arc<FiniteGroup>, terms: &[(i64, usize)]) -> Self {
        let mut e = Self::zero(group);
        for &(c, x) in terms {
            e.coeffs[x] += q(c);
        }
        e
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize) -> &BigRational {
        &self.coeffs[x]
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(RingError::GroupMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `Some(±1, x)` when the element is a trivial unit `±x`.
    pub fn as_trivial_unit(&self) -> Option<(i64, usize)> {
        let supp = self.support();
        if supp.len() != 1 {
            return None;
        }
        let x = *supp.iter().next().unwrap();
        let c = &self.coeffs[x];
        if c.is_one() {
            Some((1, x))
        } else if (-c).is_one() {
            Some((-1, x))
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Convolution `(ab)_z = Σ_{xy=z} a_x b_y`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let (a, da) = self.scaled_integers();
        let (b, db) = other.scaled_integers();
        let prod = convolve(&self.group, &a, &b);
        let den = da * db;
        let coeffs = if den.is_one() {
            prod.into_iter().map(BigRational::from_integer).collect()
        } else {
            prod.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
        };
        Ok(GroupRingElement { group: self.group.clone(), coeffs })
    }

    pub fn scalar_mul(&self, s: &BigRational) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `a^t` by repeated squaring; `a^0 = 1`.
    pub fn power(&self, mut t: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.group);
        while t > 0 {
            if t & 1 == 1 {
                acc = &acc * &base;
            }
            t >>= 1;
            if t > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// Classical involution, the linear extension of `x ↦ x⁻¹`.
    pub fn involution(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        for (x, c) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inv(x)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs }
    }

    /// `x ↦ y⁻¹·x·y` extended linearly.
    pub fn conjugate_by_element(&self, y: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        for (x, c) in self.coeffs.iter().enumerate() {
            coeffs[self.group.conjugate(x, y)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, _)| x)
            .collect()
    }

    /// Inverse in ℚG by solving `x·a = 1`, confirmed on both sides.
    pub fn try_invert(&self) -> Result<Self, RingError> {
        let g = &self.group;
        let n = g.order();
        // (x·a)_z = Σ_y x_y a_{y⁻¹z}
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for y in 0..n {
            let yi = g.inv(y);
            for (z, row) in m.iter_mut().enumerate() {
                row[y] = self.coeffs[g.mul(yi, z)].clone();
            }
        }
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let SolveOutcome::Unique(x) = solve(&m, &rhs) else {
            return Err(RingError::NotInvertible);
        };
        let inv = GroupRingElement { group: g.clone(), coeffs: x };
        if !(&inv * self).is_one() || !(self * &inv).is_one() {
            return Err(RingError::NotInvertible);
        }
        Ok(inv)
    }

    /// Image under `G → G/Z`, summing coefficients along fibres.
    pub fn project(&self, quotient: &Arc<FiniteGroup>, projection: &[usize]) -> Self {
        assert_eq!(projection.len(), self.coeffs.len(), "projection must cover the group");
        let mut coeffs = vec![BigRational::zero(); quotient.order()];
        for (x, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[projection[x]] += c;
            }
        }
        GroupRingElement { group: quotient.clone(), coeffs }
    }

    /// Image under an injective group homomorphism given as an index map.
    pub fn embed(&self, target: &Arc<FiniteGroup>, embedding: &[usize]) -> Self {
        let mut coeffs = vec![BigRational::zero(); target.order()];
        for (x, c) in self.coeffs.iter().enumerate() {
            coeffs[embedding[x]] += c;
        }
        GroupRingElement { group: target.clone(), coeffs }
    }

    /// SHA-256 over the normalised coefficient vector.
    pub fn canonical_hash(&self) -> Digest256 {
        let mut h = Sha256::new();
        h.update((self.coeffs.len() as u64).to_le_bytes());
        for c in &self.coeffs {
            // BigRational keeps fractions reduced with positive denominator
            let (sn, bn) = c.numer().to_bytes_le();
            let (_, bd) = c.denom().to_bytes_le();
            h.update([sn as u8]);
            h.update((bn.len() as u64).to_le_bytes());
            h.update(&bn);
            h.update((bd.len() as u64).to_le_bytes());
            h.update(&bd);
        }
        h.finalize().into()
    }

    /// Integer numerators over the common denominator.
    pub(crate) fn scaled_integers(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) })
            .collect();
        (nums, den)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
    }

    pub fn from_json(group: &Arc<FiniteGroup>, json: &ElementJson) -> Result<Self, RingError> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(|_| RingError::Parse(format!("bad numerator '{n}'")))?;
                let d: BigInt = d.parse().map_err(|_| RingError::Parse(format!("bad denominator '{d}'")))?;
                if d.is_zero() {
                    return Err(RingError::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coeffs(group, coeffs)
    }

    /// Parses `c0*name0 + c1*name1 - name2 + 3/2`; a bare coefficient
    /// multiplies the identity.
    pub fn parse(group: &Arc<FiniteGroup>, text: &str) -> Result<Self, RingError> {
        let mut out = Self::zero(group);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(out);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        terms.push((negative, current));
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(RingError::Parse(format!("empty term in '{text}'")));
            }
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (parse_rational(c)?, n.to_string()),
                None => match parse_rational(&term) {
                    Ok(c) => (c, "1".to_string()),
                    Err(_) => (BigRational::one(), term.clone()),
                },
            };
            let x = group
                .find(&name)
                .map_err(|_| RingError::Parse(format!("unknown element '{name}'")))?;
            if neg {
                out.coeffs[x] -= coef;
            } else {
                out.coeffs[x] += coef;
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let err = || RingError::Parse(format!("bad coefficient '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// JSON form with decimal strings for arbitrary-size integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coeffs: Vec<[String; 2]>,
}

/// Integer convolution with a machine-word fast path.
fn convolve(g: &FiniteGroup, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = g.order();
    let sa: Vec<usize> = (0..n).filter(|&x| !a[x].is_zero()).collect();
    let sb: Vec<usize> = (0..n).filter(|&y| !b[y].is_zero()).collect();
    let small = |v: &[BigInt], s: &[usize]| -> Option<Vec<(usize, i64)>> {
        s.iter()
            .map(|&x| v[x].to_i64().filter(|c| c.unsigned_abs() < 1 << 62).map(|c| (x, c)))
            .collect()
    };
    if let (Some(ta), Some(tb)) = (small(a, &sa), small(b, &sb)) {
        let mut acc = vec![0i128; n];
        let mut ok = true;
        'outer: for &(x, ca) in &ta {
            for &(y, cb) in &tb {
                let z = g.mul(x, y);
                match acc[z].checked_add(ca as i128 * cb as i128) {
                    Some(v) => acc[z] = v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return acc.into_iter().map(BigInt::from).collect();
        }
    }
    let mut acc = vec![BigInt::zero(); n];
    for &x in &sa {
        for &y in &sb {
            acc[g.mul(x, y)] += &a[x] * &b[y];
        }
    }
    acc
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

/// `c0*name0 + c1*name1 + …`, omitting zero terms and unit coefficients.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, c) in self.coeffs.iter().enumerate() {
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
            let name = self.group.name(x);
            match (abs.is_one(), x == 0) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{name}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{name}")?,
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
        /// Panics when the operands belong to different group rings; use the
        /// `checked_*` form to get a `RingError` instead.
        impl $trait<&GroupRingElement> for &GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: &GroupRingElement) -> GroupRingElement {
                self.$checked(rhs).expect("group ring operands must share a group")
            }
        }
        impl $trait<GroupRingElement> for GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: GroupRingElement) -> GroupRingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        -&self
    }
}

/// `Σ_{s∈S} s`.
pub fn tilde(group: &Arc<FiniteGroup>, s: &[usize]) -> GroupRingElement {
    let mut e = GroupRingElement::zero(group);
    for &x in s {
        e.coeffs[x] += BigRational::one();
    }
    e
}

/// `(1/|S|)·Σ_{s∈S} s`; idempotent when `S` is a subgroup.
pub fn hat(group: &Arc<FiniteGroup>, s: &[usize]) -> GroupRingElement {
    let t = tilde(group, s);
    t.scalar_mul(&BigRational::new(BigInt::one(), BigInt::from(s.len())))
}

pub fn tilde_subgroup(group: &Arc<FiniteGroup>, s: &Subgroup) -> GroupRingElement {
    tilde(group, s.elements())
}

pub fn hat_subgroup(group: &Arc<FiniteGroup>, s: &Subgroup) -> GroupRingElement {
    let e = hat(group, s.elements());
    debug_assert!(&e * &e == e, "hat of a subgroup is idempotent");
    e
}
