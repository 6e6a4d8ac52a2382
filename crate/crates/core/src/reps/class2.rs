//! Matrix units for `ℚGε ≅ M_{o(c)}(ℚ(ζ))` when `G = ⟨g, h⟩` has class 2.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::CycMatrix;
use super::RepError;
use crate::cyclotomic::{euler_phi, CyclotomicNumber};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{solve, SolveOutcome};
use crate::ring::{hat_subgroup, ElementJson, GroupRingElement};

/// `ε`, the matrix units `E_ij` (0-based) and the data identifying the
/// centre of `ℚGε` with `ℚ(ζ_{p^α})`.
#[derive(Debug, Clone)]
pub struct MatrixUnitSystem {
    pub group: Arc<FiniteGroup>,
    pub epsilon: GroupRingElement,
    pub units: Vec<Vec<GroupRingElement>>,
    /// `p^α`
    pub conductor: u64,
    /// `z0·ε ↦ ζ_{p^α}`; chosen so that `c ↦ ζ_{o(c)}⁻¹`
    pub central_generator: usize,
    /// `[g, h⁻¹]`
    pub c: usize,
    pub degree: usize,
    pub k_subgroup: Subgroup,
    pub h_subgroup: Subgroup,
    pub g: usize,
    pub h: usize,
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Order of `z·K` in `Z/K`.
fn order_mod(group: &FiniteGroup, z: usize, k: &Subgroup) -> usize {
    let mut y = z;
    let mut t = 1;
    while !k.contains(y) {
        y = group.mul(y, z);
        t += 1;
    }
    t
}

/// The subgroup generated by `gens` as a group of its own, with its
/// embedding; names carry over.
pub fn generated_subgroup(group: &FiniteGroup, gens: &[usize]) -> (Arc<FiniteGroup>, Vec<usize>) {
    let s = group.generate(gens);
    let (sub, emb) = group.subgroup_as_group(&s);
    (Arc::new(sub), emb)
}

/// Builds `ε = K̂ − Ĥ` and `E_ii = (h^{g^{i−1}})^ ε`, `E_ij = E_ii g^{j−i} E_jj`
/// and verifies every matrix-unit identity exactly.
///
/// `G` must be generated by `g` and `h`; use [`generated_subgroup`] first
/// otherwise.
pub fn class2_rep(group: &Arc<FiniteGroup>, g: usize, h: usize) -> Result<MatrixUnitSystem, RepError> {
    let viol = |s: String| Err(RepError::HypothesisViolation(s));
    if group.generate(&[g, h]).order() != group.order() {
        return viol(format!("G is not generated by {} and {}", group.name(g), group.name(h)));
    }
    match group.nilpotency_class() {
        Ok(2) => {}
        Ok(c) => return viol(format!("nilpotency class is {c}, not 2")),
        Err(_) => return viol("G is not nilpotent".into()),
    }
    let oh = group.element_order(h);
    let Some((p, n)) = prime_power(oh) else {
        return viol(format!("o({}) = {oh} is not a prime power", group.name(h)));
    };
    let mut hp = h;
    for i in 0..n {
        if group.is_in_normalizer(g, hp) {
            return viol(format!("{} normalises <{}^{}>", group.name(g), group.name(h), p.pow(i)));
        }
        hp = group.pow(hp, p as i64);
    }

    let c = group.commutator(g, group.inv(h));
    let degree = group.element_order(c);
    let hsub = group.cyclic_subgroup(h);
    let csub = group.cyclic_subgroup(c);
    if degree != oh || csub.elements().iter().any(|&x| x != 0 && hsub.contains(x)) {
        return Err(RepError::CenterDecompositionFailure(format!(
            "expected o(c) = o(h) and <h> ∩ <c> = 1, got o(c) = {degree}"
        )));
    }

    let z = group.center();
    let subs = group
        .subgroups_of_abelian(&z)
        .map_err(|e| RepError::CenterDecompositionFailure(e.to_string()))?;
    let cyclic_quotient = |k: &Subgroup| -> Option<usize> {
        let q = z.order() / k.order();
        prime_power(q).filter(|&(qp, _)| qp == p)?;
        z.elements().iter().any(|&x| order_mod(group, x, k) == q).then_some(q)
    };
    // smallest K first, i.e. the largest quotient
    let (k_sub, q) = subs
        .iter()
        .filter(|k| !csub.elements().iter().any(|&x| x != 0 && k.contains(x)))
        .find_map(|k| cyclic_quotient(k).map(|q| (k.clone(), q)))
        .ok_or_else(|| RepError::CenterDecompositionFailure("no K with Z/K cyclic of p-power order".into()))?;
    let h_sub = subs
        .iter()
        .find(|s| s.order() == k_sub.order() * p && k_sub.is_subset_of(s))
        .cloned()
        .ok_or_else(|| RepError::CenterDecompositionFailure("no minimal subgroup over K".into()))?;

    // generator of Z/K with z0^{p^{α−n}} ≡ c⁻¹ mod K, so c ↦ ζ_{o(c)}⁻¹
    let step = (q / degree) as i64;
    let z0 = z
        .elements()
        .iter()
        .copied()
        .find(|&x| order_mod(group, x, &k_sub) == q && k_sub.contains(group.mul(group.pow(x, step), c)))
        .ok_or_else(|| RepError::CenterDecompositionFailure("no generator of Z/K over c".into()))?;

    let epsilon = &hat_subgroup(group, &k_sub) - &hat_subgroup(group, &h_sub);
    let gx = GroupRingElement::from_element(group, g);
    let hx = GroupRingElement::from_element(group, h);
    if &epsilon * &epsilon != epsilon || &epsilon * &gx != &gx * &epsilon || &epsilon * &hx != &hx * &epsilon {
        return Err(RepError::CenterDecompositionFailure("ε is not a central idempotent".into()));
    }

    let diag: Vec<GroupRingElement> = (0..degree)
        .map(|i| {
            let hi = group.conjugate(h, group.pow(g, i as i64));
            &hat_subgroup(group, &group.cyclic_subgroup(hi)) * &epsilon
        })
        .collect();
    let units: Vec<Vec<GroupRingElement>> = (0..degree)
        .map(|i| {
            (0..degree)
                .map(|j| {
                    let gp = GroupRingElement::from_element(group, group.pow(g, j as i64 - i as i64));
                    &(&diag[i] * &gp) * &diag[j]
                })
                .collect()
        })
        .collect();

    let sys = MatrixUnitSystem {
        group: group.clone(),
        epsilon,
        units,
        conductor: q as u64,
        central_generator: z0,
        c,
        degree,
        k_subgroup: k_sub,
        h_subgroup: h_sub,
        g,
        h,
    };
    sys.verify()?;
    Ok(sys)
}

impl MatrixUnitSystem {
    /// `E_ij·E_kl = δ_jk·E_il`, `Σ E_ii = ε`, `ε² = ε`.
    pub fn verify(&self) -> Result<(), RepError> {
        let d = self.degree;
        let zero = GroupRingElement::zero(&self.group);
        let broken = |what: String| Err(RepError::CenterDecompositionFailure(what));
        for i in 0..d {
            for j in 0..d {
                if self.units[i][j].is_zero() {
                    return broken(format!("E[{i}][{j}] = 0"));
                }
                for k in 0..d {
                    for l in 0..d {
                        let prod = &self.units[i][j] * &self.units[k][l];
                        let expect = if j == k { &self.units[i][l] } else { &zero };
                        if &prod != expect {
                            return broken(format!("E[{i}][{j}]·E[{k}][{l}] is wrong"));
                        }
                    }
                }
            }
        }
        let sum = (0..d).fold(zero.clone(), |acc, i| &acc + &self.units[i][i]);
        if sum != self.epsilon || &self.epsilon * &self.epsilon != self.epsilon {
            return broken("diagonal does not sum to ε".into());
        }
        Ok(())
    }

    /// The image of `c`: `ζ_{p^α}^{−p^α / o(c)}`.
    pub fn image_of_c(&self) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.conductor, -((self.conductor / self.degree as u64) as i64))
    }

    /// Matrix of `ε·x` with respect to the `E_ij`; entry `(i, j)` is the
    /// `λ ∈ ℚ(ζ)` with `E_ii·x·E_jj = λ·E_ij`.
    pub fn to_matrix(&self, x: &GroupRingElement) -> Result<CycMatrix, RepError> {
        if !x.same_ring(&self.epsilon) {
            return Err(crate::ring::RingError::GroupMismatch.into());
        }
        if x * &self.epsilon != &self.epsilon * x {
            return Err(RepError::NotInComponent);
        }
        let g = &self.group;
        let phi = euler_phi(self.conductor) as usize;
        let d = self.degree;
        let zpow: Vec<GroupRingElement> = (0..phi)
            .map(|t| GroupRingElement::from_element(g, g.pow(self.central_generator, t as i64)))
            .collect();
        let mut entries = vec![Vec::with_capacity(d); d];
        let mut reconstructed = GroupRingElement::zero(g);
        for (i, row) in entries.iter_mut().enumerate() {
            let basis: Vec<GroupRingElement> = zpow.iter().map(|zt| zt * &self.units[i][i]).collect();
            let rows: Vec<Vec<BigRational>> = (0..g.order())
                .map(|y| basis.iter().map(|b| b.coeff(y).clone()).collect())
                .collect();
            let left = &self.units[i][i] * x;
            for j in 0..d {
                let y = &(&left * &self.units[j][j]) * &self.units[j][i];
                let a = if y.is_zero() {
                    vec![BigRational::zero(); phi]
                } else {
                    match solve(&rows, y.coeffs()) {
                        SolveOutcome::Unique(a) => a,
                        _ => return Err(RepError::EntryResolutionFailure { i, j }),
                    }
                };
                for (t, at) in a.iter().enumerate() {
                    if !at.is_zero() {
                        reconstructed = &reconstructed + &(&zpow[t] * &self.units[i][j]).scalar_mul(at);
                    }
                }
                row.push(CyclotomicNumber::from_poly(self.conductor, &a));
            }
        }
        if reconstructed != &(&self.epsilon * x) * &self.epsilon {
            return Err(RepError::EntryResolutionFailure { i: d, j: d });
        }
        Ok(CycMatrix::from_rows(self.conductor, entries)?)
    }

    pub fn to_json(&self) -> MatrixUnitJson {
        let g = &self.group;
        MatrixUnitJson {
            degree: self.degree,
            conductor: self.conductor,
            g: g.name(self.g),
            h: g.name(self.h),
            c: g.name(self.c),
            central_generator: g.name(self.central_generator),
            k_subgroup: self.k_subgroup.elements().iter().map(|&x| g.name(x)).collect(),
            h_subgroup: self.h_subgroup.elements().iter().map(|&x| g.name(x)).collect(),
            epsilon: self.epsilon.to_json(),
            units: self.units.iter().map(|r| r.iter().map(|e| e.to_json()).collect()).collect(),
        }
    }
}

/// Everything needed to re-verify the system externally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixUnitJson {
    pub degree: usize,
    pub conductor: u64,
    pub g: String,
    pub h: String,
    pub c: String,
    pub central_generator: String,
    pub k_subgroup: Vec<String>,
    pub h_subgroup: Vec<String>,
    pub epsilon: ElementJson,
    pub units: Vec<Vec<ElementJson>>,
}
