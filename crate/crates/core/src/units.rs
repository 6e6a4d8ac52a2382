//! Unit families in ℤG: bicyclic, Bass, Bovdi, generalized Bovdi and the
//! nilpotent-perturbation units `1 + (1−h)αH̃`, with order prediction and
//! exact order verification.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, Subgroup};
use crate::ring::{tilde_subgroup, ElementJson, GroupRingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("Bass parameters k = {k}, m = {m} invalid for o(g) = {order}: need 1 ≤ k < o(g), m ≥ 1 and k^m ≡ 1")]
    BadBassParams { k: u64, m: u64, order: u64 },
    #[error("not a unit of the integral cyclic group ring: {0}")]
    NotAUnitOfCyclicRing(String),
    #[error("g normalises <h>: the Bovdi unit is trivial")]
    TrivialCase,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("stored inverse failed the exact check for {0:?}")]
    InverseCheck(UnitKind),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UnitKind {
    BicyclicLeft,
    BicyclicRight,
    Bass,
    BovdiLeft,
    BovdiRight,
    GeneralizedBovdi,
    SUnit,
}

/// Which side of `h̃` the element `g` sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `(1−h)·g·h̃`
    Left,
    /// `h̃·g·(1−h)`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "kind", content = "value")]
pub enum PredictedOrder {
    Finite(u64),
    Infinite,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "status", content = "order")]
pub enum OrderVerdict {
    ConfirmedFinite(u64),
    ConfirmedInfinite,
    ExceededBound,
}

/// The defining data of a unit; absent fields do not apply to its kind.
#[derive(Debug, Clone, Default)]
pub struct UnitParams {
    pub g: Option<usize>,
    pub h: Option<usize>,
    pub k: Option<u64>,
    pub m: Option<u64>,
    pub side: Option<Side>,
    pub uh: Option<GroupRingElement>,
    pub subgroup: Option<Subgroup>,
    pub alpha: Option<GroupRingElement>,
}

#[derive(Debug, Clone)]
pub struct UnitDescriptor {
    pub kind: UnitKind,
    pub params: UnitParams,
    pub element: GroupRingElement,
    pub inverse: GroupRingElement,
    pub predicted_order: PredictedOrder,
    /// in `G`, or equal to 1 for the unipotent kinds
    pub trivial: bool,
}

fn ring_elem(g: &Arc<FiniteGroup>, x: usize) -> GroupRingElement {
    GroupRingElement::from_element(g, x)
}

/// `(1−h)·g·h̃` or `h̃·g·(1−h)`.
fn nilpotent_part(group: &Arc<FiniteGroup>, g: usize, h: usize, side: Side) -> GroupRingElement {
    let one_minus_h = &GroupRingElement::one(group) - &ring_elem(group, h);
    let ht = tilde_subgroup(group, &group.cyclic_subgroup(h));
    let ge = ring_elem(group, g);
    match side {
        Side::Left => &(&one_minus_h * &ge) * &ht,
        Side::Right => &(&ht * &ge) * &one_minus_h,
    }
}

fn check_inverse(kind: UnitKind, u: &GroupRingElement, inv: &GroupRingElement) -> Result<(), UnitError> {
    if (u * inv).is_one() && (inv * u).is_one() && u.is_integral() && inv.is_integral() {
        Ok(())
    } else {
        Err(UnitError::InverseCheck(kind))
    }
}

fn check_element(group: &FiniteGroup, x: usize, what: &str) -> Result<(), UnitError> {
    if x < group.order() {
        Ok(())
    } else {
        Err(UnitError::Hypothesis(format!("{what} = #{x} is not an element of a group of order {}", group.order())))
    }
}

fn bicyclic(group: &Arc<FiniteGroup>, g: usize, h: usize, side: Side) -> Result<UnitDescriptor, UnitError> {
    check_element(group, g, "g")?;
    check_element(group, h, "h")?;
    let a = nilpotent_part(group, g, h, side);
    let one = GroupRingElement::one(group);
    let element = &one + &a;
    let inverse = &one - &a;
    let kind = match side {
        Side::Left => UnitKind::BicyclicLeft,
        Side::Right => UnitKind::BicyclicRight,
    };
    check_inverse(kind, &element, &inverse)?;
    let trivial = group.is_in_normalizer(g, h);
    debug_assert_eq!(trivial, element.is_one());
    Ok(UnitDescriptor {
        kind,
        params: UnitParams { g: Some(g), h: Some(h), side: Some(side), ..Default::default() },
        element,
        inverse,
        predicted_order: if trivial { PredictedOrder::Finite(1) } else { PredictedOrder::Infinite },
        trivial,
    })
}

/// `b(g, h̃) = 1 + (1−h)·g·h̃`.
pub fn bicyclic_left(group: &Arc<FiniteGroup>, g: usize, h: usize) -> Result<UnitDescriptor, UnitError> {
    bicyclic(group, g, h, Side::Left)
}

/// `b(h̃, g) = 1 + h̃·g·(1−h)`.
pub fn bicyclic_right(group: &Arc<FiniteGroup>, h: usize, g: usize) -> Result<UnitDescriptor, UnitError> {
    bicyclic(group, g, h, Side::Right)
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Inverse inside ℤ⟨h⟩, or an explanation of why there is none.
fn invert_in_cyclic(x: &GroupRingElement, h: usize) -> Result<GroupRingElement, UnitError> {
    let group = x.group();
    let sub = group.cyclic_subgroup(h);
    if let Some(&out) = x.support().iter().find(|&&y| !sub.contains(y)) {
        return Err(UnitError::NotAUnitOfCyclicRing(format!("support contains {} outside <{}>", group.name(out), group.name(h))));
    }
    if !x.is_integral() {
        return Err(UnitError::NotAUnitOfCyclicRing("coefficients are not integers".into()));
    }
    let (cyc, emb) = group.subgroup_as_group(&sub);
    let cyc = Arc::new(cyc);
    let local = GroupRingElement::from_coeffs(&cyc, emb.iter().map(|&y| x.coeff(y).clone()).collect())?;
    let inv = local
        .try_invert()
        .map_err(|_| UnitError::NotAUnitOfCyclicRing("not invertible in Q<h>".into()))?;
    if !inv.is_integral() {
        return Err(UnitError::NotAUnitOfCyclicRing("inverse has non-integral coefficients".into()));
    }
    Ok(inv.embed(group, &emb))
}

/// `u_{k,m}(g) = (1 + g + ⋯ + g^{k−1})^m + ((1 − k^m)/o(g))·g̃`.
pub fn bass(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u64) -> Result<UnitDescriptor, UnitError> {
    check_element(group, g, "g")?;
    let order = group.element_order(g) as u64;
    let bad = UnitError::BadBassParams { k, m, order };
    if k < 1 || k >= order || m < 1 || pow_mod(k, m, order) != 1 {
        return Err(bad);
    }
    let one = GroupRingElement::one(group);
    let mut partial = GroupRingElement::zero(group);
    let mut gi = group.identity();
    for _ in 0..k {
        partial = &partial + &ring_elem(group, gi);
        gi = group.mul(gi, g);
    }
    let km: BigInt = Pow::pow(BigInt::from(k), m);
    let (c, r) = (BigInt::one() - km).div_rem(&BigInt::from(order));
    debug_assert!(r.is_zero());
    let gt = tilde_subgroup(group, &group.cyclic_subgroup(g));
    let element = &partial.power(m) + &gt.scalar_mul(&BigRational::from_integer(c));
    let inverse = invert_in_cyclic(&element, g)?;
    check_inverse(UnitKind::Bass, &element, &inverse)?;
    let trivial = k == 1 || k == order - 1;
    debug_assert!(k != 1 || element == one);
    Ok(UnitDescriptor {
        kind: UnitKind::Bass,
        params: UnitParams { g: Some(g), k: Some(k), m: Some(m), ..Default::default() },
        predicted_order: if k == 1 {
            PredictedOrder::Finite(1)
        } else if trivial {
            PredictedOrder::Unknown
        } else {
            PredictedOrder::Infinite
        },
        element,
        inverse,
        trivial,
    })
}

fn bovdi(group: &Arc<FiniteGroup>, k: u64, g: usize, h: usize, side: Side) -> Result<UnitDescriptor, UnitError> {
    check_element(group, g, "g")?;
    check_element(group, h, "h")?;
    if k < 1 {
        return Err(UnitError::Hypothesis("Bovdi units need k ≥ 1".into()));
    }
    let oh = group.element_order(h) as u64;
    let hk = group.pow(h, k as i64);
    let hk_e = ring_elem(group, hk);
    let hk_inv = ring_elem(group, group.inv(hk));
    let element = &hk_e + &nilpotent_part(group, g, h, side);
    let one = GroupRingElement::one(group);
    let (kind, factored, inverse) = match side {
        Side::Left => {
            // b_k(g,h̃) = h^k·b(h^{−k}g, h̃)
            let a = nilpotent_part(group, group.mul(group.inv(hk), g), h, Side::Left);
            (UnitKind::BovdiLeft, &hk_e * &(&one + &a), &(&one - &a) * &hk_inv)
        }
        Side::Right => {
            // b_k(h̃,g) = h^k·b(h̃, g)
            let a = nilpotent_part(group, g, h, Side::Right);
            (UnitKind::BovdiRight, &hk_e * &(&one + &a), &(&one - &a) * &hk_inv)
        }
    };
    assert!(factored == element, "Bovdi factorisation identity failed");
    if k.is_multiple_of(oh) {
        let b = bicyclic(group, g, h, side)?;
        assert!(b.element == element, "b_(o(h)) must equal the bicyclic unit");
    }
    check_inverse(kind, &element, &inverse)?;
    let trivial = group.is_in_normalizer(g, h);
    let predicted_order = if trivial {
        PredictedOrder::Finite(group.element_order(hk) as u64)
    } else if k < oh {
        predicted_bovdi_order(group, k, g, h)?
    } else {
        PredictedOrder::Infinite
    };
    Ok(UnitDescriptor {
        kind,
        params: UnitParams { g: Some(g), h: Some(h), k: Some(k), side: Some(side), ..Default::default() },
        element,
        inverse,
        predicted_order,
        trivial,
    })
}

/// `b_k(g, h̃) = h^k + (1−h)·g·h̃`.
pub fn bovdi_left(group: &Arc<FiniteGroup>, k: u64, g: usize, h: usize) -> Result<UnitDescriptor, UnitError> {
    bovdi(group, k, g, h, Side::Left)
}

/// `b_k(h̃, g) = h^k + h̃·g·(1−h)`.
pub fn bovdi_right(group: &Arc<FiniteGroup>, k: u64, h: usize, g: usize) -> Result<UnitDescriptor, UnitError> {
    bovdi(group, k, g, h, Side::Right)
}

/// `u(h) + (1−h)·g·h̃` (left) or `u(h) + h̃·g·(1−h)` (right) for a unit
/// `u(h)` of ℤ⟨h⟩.
pub fn generalized_bovdi(
    group: &Arc<FiniteGroup>,
    uh: &GroupRingElement,
    g: usize,
    h: usize,
    side: Side,
) -> Result<UnitDescriptor, UnitError> {
    check_element(group, g, "g")?;
    check_element(group, h, "h")?;
    if !Arc::ptr_eq(uh.group(), group) {
        return Err(RingError::GroupMismatch.into());
    }
    let uh_inv = invert_in_cyclic(uh, h)?;
    let a = nilpotent_part(group, g, h, side);
    let element = uh + &a;
    let one = GroupRingElement::one(group);
    let inverse = match side {
        Side::Left => {
            // u(1 + u⁻¹a)  ⇒  (1 − u⁻¹a)u⁻¹
            let t = &uh_inv * &a;
            &(&one - &t) * &uh_inv
        }
        Side::Right => {
            // (1 + a·u⁻¹)u  ⇒  u⁻¹(1 − a·u⁻¹)
            let t = &a * &uh_inv;
            &uh_inv * &(&one - &t)
        }
    };
    check_inverse(UnitKind::GeneralizedBovdi, &element, &inverse)?;
    let trivial = element.as_trivial_unit().is_some();
    Ok(UnitDescriptor {
        kind: UnitKind::GeneralizedBovdi,
        params: UnitParams { g: Some(g), h: Some(h), side: Some(side), uh: Some(uh.clone()), ..Default::default() },
        predicted_order: match element.as_trivial_unit() {
            Some((c, x)) => PredictedOrder::Finite(trivial_unit_order(group, c, x)),
            None => PredictedOrder::Unknown,
        },
        element,
        inverse,
        trivial,
    })
}

fn trivial_unit_order(group: &FiniteGroup, c: i64, x: usize) -> u64 {
    let o = group.element_order(x) as u64;
    if c == 1 || o.is_multiple_of(2) {
        o
    } else {
        2 * o
    }
}

/// `s = 1 + (1−h)·α·H̃` for `h ∈ H`; its square-zero part gives the
/// inverse `1 − (1−h)·α·H̃`.
pub fn s_unit(
    group: &Arc<FiniteGroup>,
    h: usize,
    alpha: &GroupRingElement,
    subgroup: &Subgroup,
) -> Result<UnitDescriptor, UnitError> {
    check_element(group, h, "h")?;
    if !Arc::ptr_eq(alpha.group(), group) {
        return Err(RingError::GroupMismatch.into());
    }
    if !subgroup.contains(h) {
        return Err(UnitError::Hypothesis(format!("{} is not in the given subgroup", group.name(h))));
    }
    if !alpha.is_integral() {
        return Err(UnitError::Hypothesis("alpha must have integer coefficients".into()));
    }
    let one = GroupRingElement::one(group);
    let one_minus_h = &one - &ring_elem(group, h);
    let a = &(&one_minus_h * alpha) * &tilde_subgroup(group, subgroup);
    debug_assert!((&a * &a).is_zero());
    let element = &one + &a;
    let inverse = &one - &a;
    check_inverse(UnitKind::SUnit, &element, &inverse)?;
    let trivial = a.is_zero();
    Ok(UnitDescriptor {
        kind: UnitKind::SUnit,
        params: UnitParams {
            h: Some(h),
            alpha: Some(alpha.clone()),
            subgroup: Some(subgroup.clone()),
            ..Default::default()
        },
        predicted_order: if trivial { PredictedOrder::Finite(1) } else { PredictedOrder::Infinite },
        element,
        inverse,
        trivial,
    })
}

/// Order of `b_k(g,h̃)` and `b_k(h̃,g)` from the smallest `m` with
/// `g ∈ N_G(⟨h^m⟩)`: `o(h^k)` when `gcd(k, m) = 1`, infinite otherwise.
pub fn predicted_bovdi_order(group: &FiniteGroup, k: u64, g: usize, h: usize) -> Result<PredictedOrder, UnitError> {
    let oh = group.element_order(h) as u64;
    if k < 1 || k >= oh {
        return Err(UnitError::Hypothesis(format!("need 1 ≤ k < o(h) = {oh}, got k = {k}")));
    }
    if group.is_in_normalizer(g, h) {
        return Err(UnitError::TrivialCase);
    }
    let m = group.min_normalized_power(g, h) as u64;
    Ok(if k.gcd(&m) == 1 {
        PredictedOrder::Finite(oh / k.gcd(&oh))
    } else {
        PredictedOrder::Infinite
    })
}

/// Decides the order of a unit by exact powering.
///
/// A finite answer is the least `t ≤ bound` with `u^t = 1`. Infinite order
/// is certified two ways. For Bovdi and bicyclic units `o(h^k)` divides any
/// finite order and `1 ∈ Supp(u^{o(h^k)})`, so `u^{o(h^k)} ≠ 1` rules out
/// torsion. For every kind, a power `u^t ≠ ±1` with nonzero coefficient at
/// the identity cannot be torsion in ℤG, so neither can `u`.
pub fn verify_order(u: &UnitDescriptor, bound: u64) -> OrderVerdict {
    let group = u.element.group();
    let bovdi_exponent = match (u.kind, u.params.h, u.params.k) {
        (UnitKind::BovdiLeft | UnitKind::BovdiRight, Some(h), Some(k)) => {
            Some(group.element_order(group.pow(h, k as i64)) as u64)
        }
        (UnitKind::BicyclicLeft | UnitKind::BicyclicRight, Some(_), _) => Some(1),
        _ => None,
    };
    if let Some(t) = bovdi_exponent.filter(|&t| t <= bound) {
        let ut = u.element.power(t);
        if !ut.is_one() {
            return OrderVerdict::ConfirmedInfinite;
        }
        let d = (1..=t)
            .filter(|d| t % d == 0)
            .find(|&d| u.element.power(d).is_one())
            .expect("t itself works");
        return OrderVerdict::ConfirmedFinite(d);
    }
    let mut acc = GroupRingElement::one(group);
    for t in 1..=bound {
        acc = &acc * &u.element;
        if acc.is_one() {
            return OrderVerdict::ConfirmedFinite(t);
        }
        let minus_one = acc.as_trivial_unit() == Some((-1, group.identity()));
        if !minus_one && !acc.coeff(group.identity()).is_zero() {
            return OrderVerdict::ConfirmedInfinite;
        }
    }
    OrderVerdict::ExceededBound
}

impl UnitDescriptor {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.element.group()
    }

    pub fn to_json(&self, verification: Option<OrderVerdict>) -> UnitJson {
        let g = self.group();
        let p = &self.params;
        UnitJson {
            kind: self.kind,
            params: ParamsJson {
                g: p.g.map(|x| g.name(x)),
                h: p.h.map(|x| g.name(x)),
                k: p.k,
                m: p.m,
                side: p.side,
                uh: p.uh.as_ref().map(|e| e.to_string()),
                subgroup: p.subgroup.as_ref().map(|s| s.elements().iter().map(|&x| g.name(x)).collect()),
                alpha: p.alpha.as_ref().map(|e| e.to_string()),
            },
            element: self.element.to_string(),
            coefficients: self.element.to_json(),
            trivial: self.trivial,
            predicted_order: self.predicted_order,
            verification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uh: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitJson {
    pub kind: UnitKind,
    pub params: ParamsJson,
    pub element: String,
    pub coefficients: ElementJson,
    pub trivial: bool,
    pub predicted_order: PredictedOrder,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<OrderVerdict>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn grp(key: &str) -> Arc<FiniteGroup> {
        catalog(key).unwrap().group
    }

    fn el(g: &FiniteGroup, n: &str) -> usize {
        g.find(n).unwrap()
    }

    #[test]
    fn bicyclic_examples() {
        let g = grp("d8");
        let (r, s) = (el(&g, "r"), el(&g, "s"));
        let u = bicyclic_left(&g, r, s).unwrap();
        let names: Vec<String> = u.element.support().iter().map(|&x| g.name(x)).collect();
        assert_eq!(names.len(), 5);
        for n in ["1", "r", "rs", "r^3s", "r^3"] {
            assert!(names.contains(&n.to_string()), "{n} in support");
        }
        assert!(u.element.augmentation().is_one());
        assert!(!u.trivial);
        let r2 = el(&g, "r^2");
        assert!(bicyclic_left(&g, r2, r).unwrap().element.is_one());
        assert!(bicyclic_left(&g, r, r).unwrap().trivial);
    }

    #[test]
    fn bass_examples() {
        let c5 = grp("c11xc5");
        let h = el(&c5, "h");
        let u = bass(&c5, h, 2, 4).unwrap();
        let coeffs: Vec<i64> = (0..5)
            .map(|i| u.element.coeff(c5.pow(h, i)).to_integer().try_into().unwrap())
            .collect();
        assert_eq!(coeffs, vec![-2, 1, 3, 1, -2]);
        let u8 = bass(&c5, h, 2, 8).unwrap();
        assert!(&u.element * &u.element == u8.element);
        assert!(bass(&c5, h, 1, 3).unwrap().element.is_one());
        assert_eq!(bass(&c5, h, 2, 3).unwrap_err(), UnitError::BadBassParams { k: 2, m: 3, order: 5 });
        assert!(bass(&c5, h, 5, 1).is_err());
        assert_eq!(verify_order(&u, 10), OrderVerdict::ConfirmedInfinite);
    }

    #[test]
    fn bovdi_examples() {
        let g = grp("d8");
        let (r, s) = (el(&g, "r"), el(&g, "s"));
        let b1 = bovdi_left(&g, 1, r, s).unwrap();
        let expect = GroupRingElement::parse(&g, "s + r + rs - r^3s - r^3").unwrap();
        assert!(b1.element == expect);
        assert_eq!(b1.predicted_order, PredictedOrder::Finite(2));
        assert_eq!(verify_order(&b1, 16), OrderVerdict::ConfirmedFinite(2));
        let b2 = bovdi_left(&g, 2, r, s).unwrap();
        assert!(b2.element == bicyclic_left(&g, r, s).unwrap().element);
        let b = bicyclic_left(&g, r, s).unwrap();
        assert_eq!(verify_order(&b, 16), OrderVerdict::ConfirmedInfinite);
        let t = bovdi_left(&g, 1, r, r).unwrap();
        assert!(t.trivial);
        assert_eq!(t.element.as_trivial_unit(), Some((1, r)));
    }

    #[test]
    fn predicted_orders() {
        let g = grp("d8");
        let (r, s) = (el(&g, "r"), el(&g, "s"));
        assert_eq!(predicted_bovdi_order(&g, 1, r, s), Ok(PredictedOrder::Finite(2)));
        assert_eq!(predicted_bovdi_order(&g, 1, r, r), Err(UnitError::TrivialCase));
        let h27 = grp("heis27");
        let (gg, hh) = (el(&h27, "g"), el(&h27, "h"));
        assert_eq!(h27.min_normalized_power(gg, hh), 3);
        assert_eq!(predicted_bovdi_order(&h27, 1, gg, hh), Ok(PredictedOrder::Finite(3)));
    }

    #[test]
    fn infinite_prediction_with_m_four() {
        use crate::group::{from_permutation_generators, Permutation, DEFAULT_CLOSURE_CAP};
        // S4: no catalog group has a pair with minimal normalised power 4
        let gens = [Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(), Permutation::from_cycles(4, &[vec![0, 1]]).unwrap()];
        let (s4, _) = from_permutation_generators(4, &gens, DEFAULT_CLOSURE_CAP).unwrap();
        let s4 = Arc::new(s4);
        let (h, x) = (s4.find("a").unwrap(), s4.find("b").unwrap());
        assert_eq!(s4.min_normalized_power(x, h), 4);
        let u = bovdi_left(&s4, 2, x, h).unwrap();
        assert_eq!(u.predicted_order, PredictedOrder::Infinite);
        assert_eq!(verify_order(&u, 64), OrderVerdict::ConfirmedInfinite);
        let w = bovdi_right(&s4, 1, h, x).unwrap();
        assert_eq!(w.predicted_order, PredictedOrder::Finite(4));
        assert_eq!(verify_order(&w, 64), OrderVerdict::ConfirmedFinite(4));
    }

    #[test]
    fn generalized_and_s_units() {
        let g = grp("c11xc5");
        let (x, h) = (el(&g, "g"), el(&g, "h"));
        let uh = bass(&g, h, 2, 4).unwrap().element;
        let b = generalized_bovdi(&g, &uh, x, h, Side::Left).unwrap();
        assert!(b.element.is_integral());
        let hk = GroupRingElement::from_element(&g, g.pow(h, 2));
        let via_power = generalized_bovdi(&g, &hk, x, h, Side::Left).unwrap();
        assert!(via_power.element == bovdi_left(&g, 2, x, h).unwrap().element);
        let one = GroupRingElement::one(&g);
        assert!(generalized_bovdi(&g, &one, x, h, Side::Right).unwrap().element == bicyclic_right(&g, h, x).unwrap().element);
        let two = one.scalar_mul(&BigRational::from_integer(2.into()));
        assert!(matches!(generalized_bovdi(&g, &two, x, h, Side::Left), Err(UnitError::NotAUnitOfCyclicRing(_))));
        let outside = GroupRingElement::from_element(&g, x);
        assert!(matches!(generalized_bovdi(&g, &outside, x, h, Side::Left), Err(UnitError::NotAUnitOfCyclicRing(_))));

        let hsub = g.cyclic_subgroup(h);
        let s = s_unit(&g, h, &GroupRingElement::from_element(&g, x), &hsub).unwrap();
        assert!(!s.trivial);
        let s0 = s_unit(&g, h, &GroupRingElement::zero(&g), &hsub).unwrap();
        assert!(s0.trivial);

        let d10 = grp("d10");
        let (r, s) = (el(&d10, "r"), el(&d10, "s"));
        let normal = d10.cyclic_subgroup(r);
        assert!(s_unit(&d10, r, &GroupRingElement::from_element(&d10, s), &normal).unwrap().trivial);
    }

    #[test]
    fn json_shape() {
        let g = grp("d8");
        let u = bovdi_left(&g, 1, el(&g, "r"), el(&g, "s")).unwrap();
        let j = serde_json::to_string(&u.to_json(Some(OrderVerdict::ConfirmedFinite(2)))).unwrap();
        assert!(j.contains("\"kind\":\"BOVDI_LEFT\""));
        assert!(j.contains("\"status\":\"CONFIRMED_FINITE\",\"order\":2"));
    }
}
