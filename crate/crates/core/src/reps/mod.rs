//! Explicit representations: the triangular image of `ℚ⟨h⟩ ⊕ ℚ⟨h⟩a`, Pierce
//! blocks with respect to an idempotent, and matrix units for class-2
//! groups.

mod class2;
mod matrix;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CyclotomicNumber};
use crate::group::{FiniteGroup, Subgroup};
use crate::ring::{tilde_subgroup, Digest256, GroupRingElement, RingError};

pub use class2::{class2_rep, generated_subgroup, MatrixUnitSystem, MatrixUnitJson};
pub use matrix::{root_of_unity_index, CycMatrix, CycMatrixJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("morphism check failed on x = {x}, y = {y}")]
    MorphismFailure { x: String, y: String },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("no valid subgroup K of the centre: {0}")]
    CenterDecompositionFailure(String),
    #[error("cannot resolve matrix entry ({i}, {j}) in the centre field")]
    EntryResolutionFailure { i: usize, j: usize },
    #[error("element does not commute with the central idempotent")]
    NotInComponent,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// `[[a11, a12], [0, a22]]` with `a11, a12 ∈ ℚ(ζ_n)` and `a22 ∈ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularImage {
    pub conductor: u64,
    pub a11: CyclotomicNumber,
    pub a12: CyclotomicNumber,
    pub a22: BigRational,
}

impl TriangularImage {
    pub fn identity(n: u64) -> Self {
        TriangularImage {
            conductor: n,
            a11: CyclotomicNumber::one(n),
            a12: CyclotomicNumber::zero(n),
            a22: BigRational::from_integer(1.into()),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a22 = CyclotomicNumber::from_rational(self.conductor, o.a22.clone());
        TriangularImage {
            conductor: self.conductor,
            a11: &self.a11 * &o.a11,
            a12: &(&self.a11 * &o.a12) + &(&self.a12 * &a22),
            a22: &self.a22 * &o.a22,
        }
    }

    /// The scaling factor and translation of the affine map `z ↦ a11·z + a12`
    /// after normalising `a22` to 1.
    pub fn affine_parts(&self) -> Result<(CyclotomicNumber, CyclotomicNumber), RepError> {
        if self.a22.is_zero() {
            return Err(CycError::DivisionByZero(self.conductor).into());
        }
        let s = CyclotomicNumber::from_rational(self.conductor, self.a22.clone()).inv()?;
        Ok((&self.a11 * &s, &self.a12 * &s))
    }
}

/// Evaluates an element of ℚ⟨h⟩ at `h ↦ ζ_{o(h)}`.
pub fn evaluate_at_root(x: &GroupRingElement, h: usize) -> Result<CyclotomicNumber, RepError> {
    let g = x.group();
    let n = g.element_order(h);
    let mut coeffs = vec![BigRational::zero(); n];
    let mut pos: HashMap<usize, usize> = HashMap::new();
    let mut y = g.identity();
    for i in 0..n {
        pos.insert(y, i);
        y = g.mul(y, h);
    }
    for s in x.support() {
        let Some(&i) = pos.get(&s) else {
            return Err(RepError::SupportViolation(format!("{} is not a power of {}", g.name(s), g.name(h))));
        };
        coeffs[i] = x.coeff(s).clone();
    }
    Ok(CyclotomicNumber::from_poly(n as u64, &coeffs))
}

/// `u1 + u2·a ↦ [[u1·f, u2·f], [0, ω(u1)]]` where `f` is the idempotent of
/// ℚ⟨h⟩ cutting out ℚ(ζ_{o(h)}).
pub fn phi_triangular(u1: &GroupRingElement, u2: &GroupRingElement, h: usize) -> Result<TriangularImage, RepError> {
    if !u1.same_ring(u2) {
        return Err(RingError::GroupMismatch.into());
    }
    let a11 = evaluate_at_root(u1, h)?;
    let a12 = evaluate_at_root(u2, h)?;
    Ok(TriangularImage { conductor: a11.conductor(), a11, a12, a22: u1.augmentation() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub samples: usize,
    pub passed: bool,
}

/// `a = (1−h)·α·H̃`.
pub fn nilpotent_generator(
    group: &Arc<FiniteGroup>,
    h: usize,
    alpha: &GroupRingElement,
    subgroup: &Subgroup,
) -> Result<GroupRingElement, RepError> {
    if !subgroup.contains(h) {
        return Err(RepError::HypothesisViolation(format!("{} is not in H", group.name(h))));
    }
    let one_minus_h = &GroupRingElement::one(group) - &GroupRingElement::from_element(group, h);
    Ok(&(&one_minus_h * alpha) * &tilde_subgroup(group, subgroup))
}

/// Samples `x = u1 + u2·a`, `y = v1 + v2·a` with small integer coefficients
/// over ⟨h⟩ and checks, exactly in ℚG, that `x·y = u1v1 + (u1v2 + ω(v1)u2)·a`
/// and that the images multiply accordingly.
pub fn morphism_check(
    h: usize,
    alpha: &GroupRingElement,
    subgroup: &Subgroup,
    samples: usize,
    seed: u64,
) -> Result<MorphismReport, RepError> {
    let a = nilpotent_generator(alpha.group(), h, alpha, subgroup)?;
    assert!((&a * &a).is_zero(), "(1−h)αH̃ squares to zero");
    morphism_check_with(h, &a, samples, seed)
}

/// As [`morphism_check`] with an arbitrary candidate for `a`.
pub fn morphism_check_with(h: usize, a: &GroupRingElement, samples: usize, seed: u64) -> Result<MorphismReport, RepError> {
    let group = a.group().clone();
    let n = group.element_order(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| {
        let terms: Vec<(i64, usize)> = (0..n).map(|i| (rng.gen_range(-3..=3), group.pow(h, i as i64))).collect();
        GroupRingElement::from_terms(&group, &terms)
    };
    let show = |p: &GroupRingElement, q: &GroupRingElement| format!("({p}) + ({q})·a");
    // the pair (1, 0), (1, 0) first, then random ones
    let mut pairs = vec![(
        GroupRingElement::one(&group),
        GroupRingElement::zero(&group),
        GroupRingElement::one(&group),
        GroupRingElement::zero(&group),
    )];
    while pairs.len() < samples.max(1) {
        pairs.push((sample(&mut rng), sample(&mut rng), sample(&mut rng), sample(&mut rng)));
    }
    for (u1, u2, v1, v2) in &pairs {
        let x = u1 + &(u2 * a);
        let y = v1 + &(v2 * a);
        let w1 = u1 * v1;
        let w2 = &(u1 * v2) + &u2.scalar_mul(&v1.augmentation());
        let fail = || RepError::MorphismFailure { x: show(u1, u2), y: show(v1, v2) };
        if &x * &y != &w1 + &(&w2 * a) {
            return Err(fail());
        }
        let lhs = phi_triangular(&w1, &w2, h)?;
        let rhs = phi_triangular(u1, u2, h)?.mul(&phi_triangular(v1, v2, h)?);
        if lhs != rhs {
            return Err(fail());
        }
    }
    Ok(MorphismReport { samples: pairs.len(), passed: true })
}

/// Blocks of `x` with respect to an idempotent `e`, laid out as
/// `[[(1−e)x(1−e), (1−e)xe], [ex(1−e), exe]]`.
#[derive(Debug, Clone)]
pub struct PierceBlocks {
    pub top_left: GroupRingElement,
    pub top_right: GroupRingElement,
    pub bottom_left: GroupRingElement,
    pub bottom_right: GroupRingElement,
}

pub fn pierce_blocks(x: &GroupRingElement, e: &GroupRingElement) -> Result<PierceBlocks, RepError> {
    if !x.same_ring(e) {
        return Err(RingError::GroupMismatch.into());
    }
    if &(e * e) != e {
        return Err(RepError::NotIdempotent);
    }
    let f = &GroupRingElement::one(e.group()) - e;
    let xe = x * e;
    let xf = x * &f;
    let b = PierceBlocks {
        top_left: &f * &xf,
        top_right: &f * &xe,
        bottom_left: e * &xf,
        bottom_right: e * &xe,
    };
    let sum = &(&b.top_left + &b.top_right) + &(&b.bottom_left + &b.bottom_right);
    assert!(&sum == x, "Pierce blocks must sum to x");
    Ok(b)
}

/// Commutator pairs tested exhaustively before switching to sampling.
pub const DEFAULT_PAIR_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabelianReport {
    pub passed: bool,
    pub max_length: usize,
    /// distinct group elements among the enumerated words
    pub distinct_words: usize,
    /// distinct commutators `[x1, x2]`
    pub distinct_commutators: usize,
    /// commutator pairs tested for commuting
    pub pairs_checked: u64,
    /// every pair was tested, not a sample
    pub exhaustive: bool,
    /// words `x1..x4` with `[[x1,x2],[x3,x4]] ≠ 1`; letters are
    /// `u, U = u⁻¹, v = u^w, V = (u^w)⁻¹`
    pub witness: Option<[String; 4]>,
}

struct Word {
    text: String,
    value: GroupRingElement,
    inverse: GroupRingElement,
}

/// Checks that `⟨u, u^w⟩` looks metabelian: every double commutator of
/// words of length ≤ `max_length` is 1.
///
/// Words are deduplicated by value, so the check covers every quadruple by
/// testing whether every two distinct commutators commute. Above
/// `pair_cap` pairs a seeded sample is used instead.
pub fn metabelian_sample_check(
    u: &GroupRingElement,
    w: &GroupRingElement,
    max_length: usize,
    pair_cap: u64,
    seed: u64,
) -> Result<MetabelianReport, RepError> {
    if !u.same_ring(w) {
        return Err(RingError::GroupMismatch.into());
    }
    let u_inv = u.try_invert()?;
    let w_inv = w.try_invert()?;
    let uw = &(&w_inv * u) * w;
    let uw_inv = &(&w_inv * &u_inv) * w;
    let letters = [('u', u, &u_inv, 'U'), ('U', &u_inv, u, 'u'), ('v', &uw, &uw_inv, 'V'), ('V', &uw_inv, &uw, 'v')];

    let mut seen: HashMap<Digest256, usize> = HashMap::new();
    let mut words: Vec<Word> = Vec::new();
    let mut frontier: Vec<(String, GroupRingElement, GroupRingElement)> =
        vec![(String::new(), GroupRingElement::one(u.group()), GroupRingElement::one(u.group()))];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for (text, val, inv) in &frontier {
            for &(c, x, xi, undo) in &letters {
                if text.ends_with(undo) {
                    continue;
                }
                let nv = val * x;
                let ni = xi * inv;
                let t = format!("{text}{c}");
                let hsh = nv.canonical_hash();
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(hsh) {
                    e.insert(words.len());
                    words.push(Word { text: t.clone(), value: nv.clone(), inverse: ni.clone() });
                }
                next.push((t, nv, ni));
            }
        }
        frontier = next;
    }

    let mut comm_seen: HashMap<Digest256, usize> = HashMap::new();
    let mut comms: Vec<(GroupRingElement, usize, usize)> = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            let c = &(&(&a.inverse * &b.inverse) * &a.value) * &b.value;
            let hsh = c.canonical_hash();
            if let std::collections::hash_map::Entry::Vacant(e) = comm_seen.entry(hsh) {
                e.insert(comms.len());
                comms.push((c, i, j));
            }
        }
    }
    let n = comms.len() as u64;
    let total = n * n.saturating_sub(1) / 2;
    let exhaustive = total <= pair_cap;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..comms.len()).flat_map(|i| (i + 1..comms.len()).map(move |j| (i, j))).collect()
    } else {
        (0..pair_cap)
            .map(|_| (rng.gen_range(0..comms.len()), rng.gen_range(0..comms.len())))
            .collect()
    };
    let mut witness = None;
    for &(i, j) in &pairs {
        let (a, b) = (&comms[i].0, &comms[j].0);
        if a * b != b * a {
            witness = Some([
                words[comms[i].1].text.clone(),
                words[comms[i].2].text.clone(),
                words[comms[j].1].text.clone(),
                words[comms[j].2].text.clone(),
            ]);
            break;
        }
    }
    Ok(MetabelianReport {
        passed: witness.is_none(),
        max_length,
        distinct_words: words.len(),
        distinct_commutators: comms.len(),
        pairs_checked: pairs.len() as u64,
        exhaustive,
        witness,
    })
}
