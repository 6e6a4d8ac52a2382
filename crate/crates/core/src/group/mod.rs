//! Finite groups stored as dense Cayley tables.
//!
//! Elements are indices `0..order` with `0` the identity and
//! `mul(i, j) = i·j`. Conventions used throughout the crate:
//! `[a, b] = a⁻¹b⁻¹ab` and `x^y = y⁻¹xy`, so that `h^g = [g, h⁻¹]·h`.

mod catalog;
mod json;
mod perm;

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

pub use catalog::{catalog, catalog_keys, CatalogGroup};
pub use json::{load_group_json, GroupSpec};
pub use perm::{from_permutation_generators, Permutation, DEFAULT_CLOSURE_CAP};

/// Cap on the order of an abelian group whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {reason}")]
    NotAGroup {
        reason: String,
        witness: Option<[usize; 3]>,
    },
    #[error("closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("group is not nilpotent (lower central series stabilises at order {stable_order})")]
    NotNilpotent { stable_order: usize },
    #[error("subgroup is not central: element {witness} is not in the center")]
    NotCentral { witness: usize },
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("group of order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group '{0}'")]
    UnknownGroup(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
}

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    fn from_set(set: impl IntoIterator<Item = usize>) -> Self {
        let mut elements: Vec<usize> = set.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }
}

impl FiniteGroup {
    /// Builds a group from a square table, relabelling the identity to index 0.
    ///
    /// Latin-square, identity and inverse checks always run; the O(n³)
    /// associativity check only runs when `validate` is set.
    pub fn from_cayley_table(table: &[Vec<usize>], validate: bool) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(not_a_group("empty table", None));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group(format!("row {i} has length {}, expected {n}", row.len()), None));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(not_a_group(format!("entry {bad} in row {i} is out of range"), None));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[table[i][j]], true) {
                    return Err(not_a_group(format!("row {i} repeats an entry"), None));
                }
                if std::mem::replace(&mut col_seen[table[j][i]], true) {
                    return Err(not_a_group(format!("column {i} repeats an entry"), None));
                }
            }
        }
        if validate {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(not_a_group("multiplication is not associative", Some([a, b, c])));
                        }
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| not_a_group("no two-sided identity", None))?;

        // swap labels e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if mul[b * n + a] != 0 {
                        return Err(not_a_group(format!("element {a} has only a one-sided inverse"), Some([a, b, 0])));
                    }
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, names: None })
    }

    /// Assembles a group from a flat table already known to be a group with
    /// identity 0.
    pub(crate) fn from_flat_unchecked(order: usize, mul: Vec<u32>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        FiniteGroup { order, mul, inv, names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order, "name table length must match the order");
        self.names = Some(names);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major copy of the Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None if x == 0 => "1".to_string(),
            None => format!("e{x}"),
        }
    }

    /// Looks an element up by display name or by `#index`.
    pub fn find(&self, name: &str) -> Result<usize, GroupError> {
        let name = name.trim();
        if let Some(idx) = name.strip_prefix('#') {
            return idx
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.order)
                .ok_or_else(|| GroupError::UnknownElement(name.to_string()));
        }
        if name == "1" {
            return Ok(0);
        }
        (0..self.order)
            .find(|&x| self.name(x) == name)
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    /// `x^e` for any integer exponent.
    pub fn pow(&self, x: usize, e: i64) -> usize {
        let o = self.element_order(x) as i64;
        let e = e.rem_euclid(o);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Smallest `t ≥ 1` with `x^t = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut t = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            t += 1;
        }
        t
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `x^y = y⁻¹xy`.
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_set(out)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Checks closure under multiplication and inverses.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let s = Subgroup::from_set(elements.iter().copied());
        if let Some(&bad) = s.elements.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::UnknownElement(format!("#{bad}")));
        }
        if !s.contains(0) {
            return Err(not_a_group("subset does not contain the identity", None));
        }
        for &a in &s.elements {
            if !s.contains(self.inv(a)) {
                return Err(not_a_group(format!("subset not closed under inverse at {a}"), None));
            }
            for &b in &s.elements {
                if !s.contains(self.mul(a, b)) {
                    return Err(not_a_group("subset not closed under multiplication", Some([a, b, self.mul(a, b)])));
                }
            }
        }
        Ok(s)
    }

    pub fn cyclic_subgroup(&self, h: usize) -> Subgroup {
        let mut out = vec![0usize];
        let mut y = h;
        while y != 0 {
            out.push(y);
            y = self.mul(y, h);
        }
        Subgroup::from_set(out)
    }

    /// `{ x : S^x = S }`.
    pub fn normalizer_of(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_set(
            self.elements()
                .filter(|&x| s.elements.iter().all(|&y| s.contains(self.conjugate(y, x)))),
        )
    }

    /// Whether `g ∈ N_G(⟨h⟩)`.
    pub fn is_in_normalizer(&self, g: usize, h: usize) -> bool {
        let hg = self.conjugate(h, g);
        let mut y = h;
        loop {
            if y == hg {
                return true;
            }
            if y == 0 {
                return false;
            }
            y = self.mul(y, h);
        }
    }

    /// Smallest `m ≥ 1` with `g ∈ N_G(⟨h^m⟩)`. Always divides `o(h)`.
    pub fn min_normalized_power(&self, g: usize, h: usize) -> usize {
        let oh = self.element_order(h);
        let mut hm = h;
        for m in 1..=oh {
            if self.is_in_normalizer(g, hm) {
                debug_assert_eq!(oh % m, 0, "minimal normalised power must divide o(h)");
                return m;
            }
            hm = self.mul(hm, h);
        }
        unreachable!("h^o(h) = 1 is normalised by every element")
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_set(
            self.elements()
                .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z))),
        )
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.elements().all(|y| self.mul(x, y) == self.mul(y, x))
    }

    /// `[A, B]`, the subgroup generated by commutators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = HashSet::new();
        for &x in a.elements() {
            for &y in b.elements() {
                gens.insert(self.commutator(x, y));
            }
        }
        let mut gens: Vec<usize> = gens.into_iter().collect();
        gens.sort_unstable();
        self.generate(&gens)
    }

    /// `G = γ₁ ⊇ γ₂ ⊇ …`, stopping at the trivial subgroup or at the first
    /// repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &whole);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Length of the lower central series; the trivial group has class 0.
    pub fn nilpotency_class(&self) -> Result<usize, GroupError> {
        let series = self.lower_central_series();
        let last = series.last().unwrap();
        if !last.is_trivial() {
            return Err(GroupError::NotNilpotent { stable_order: last.order() });
        }
        Ok(series.len() - 1)
    }

    /// Factor group by a central subgroup together with the projection
    /// `G → G/Z` as an index map. Cosets are numbered by their smallest
    /// element, so the identity coset is 0.
    pub fn quotient_by_central(&self, z: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if let Some(&w) = z.elements().iter().find(|&&x| !self.is_central(x)) {
            return Err(GroupError::NotCentral { witness: w });
        }
        let n = self.order;
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &c in z.elements() {
                coset_of[self.mul(x, c)] = idx;
            }
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * q + j] = coset_of[self.mul(a, b)] as u32;
            }
        }
        let mut quotient = FiniteGroup::from_flat_unchecked(q, mul);
        if self.names.is_some() {
            quotient = quotient.with_names(reps.iter().map(|&r| self.name(r)).collect());
        }
        Ok((quotient, coset_of))
    }

    /// The subgroup `S` as a group in its own right, with the embedding of
    /// its indices into this group.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems = s.elements().to_vec();
        let q = elems.len();
        let pos = |x: usize| elems.binary_search(&x).expect("subgroup closed under multiplication");
        let mut mul = vec![0u32; q * q];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                mul[i * q + j] = pos(self.mul(a, b)) as u32;
            }
        }
        let mut sub = FiniteGroup::from_flat_unchecked(q, mul);
        if self.names.is_some() {
            sub = sub.with_names(elems.iter().map(|&x| self.name(x)).collect());
        }
        (sub, elems)
    }

    /// Every subgroup of an abelian subgroup `A`, sorted by order then by
    /// element set.
    pub fn subgroups_of_abelian(&self, a: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        self.subgroups_of_abelian_capped(a, DEFAULT_SUBGROUP_CAP)
    }

    pub fn subgroups_of_abelian_capped(&self, a: &Subgroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        if a.order() > cap {
            return Err(GroupError::TooLarge { order: a.order(), cap });
        }
        for &x in a.elements() {
            for &y in a.elements() {
                if self.mul(x, y) != self.mul(y, x) {
                    return Err(GroupError::NotAbelian);
                }
            }
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        let trivial = self.trivial_subgroup();
        found.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(s) = frontier.pop() {
            for &x in a.elements() {
                if s.contains(x) {
                    continue;
                }
                let mut gens = s.elements().to_vec();
                gens.push(x);
                let t = self.generate(&gens);
                if found.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements.cmp(&y.elements)));
        Ok(out)
    }

    /// Exhaustive associativity check, returning a failing triple.
    pub fn check_associative(&self) -> Result<(), GroupError> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(not_a_group("multiplication is not associative", Some([a, b, c])));
                    }
                }
            }
        }
        Ok(())
    }
}

fn not_a_group(reason: impl Into<String>, witness: Option<[usize; 3]>) -> GroupError {
    GroupError::NotAGroup { reason: reason.into(), witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> std::sync::Arc<FiniteGroup> {
        catalog("d8").unwrap().group
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]], true).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn c2_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], true).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!((0..2).map(|x| g.inv(x)).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C3 with identity at label 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(&t, true).unwrap();
        for x in 0..3 {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
        }
    }

    #[test]
    fn latin_square_without_identity_is_rejected_with_witness() {
        // x*y = -x-y mod 3: a Latin square, not associative
        let t: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (6 - x - y) % 3).collect())
            .collect();
        match FiniteGroup::from_cayley_table(&t, true) {
            Err(GroupError::NotAGroup { witness: Some([a, b, c]), .. }) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected associativity witness, got {other:?}"),
        }
        assert!(matches!(
            FiniteGroup::from_cayley_table(&t, false),
            Err(GroupError::NotAGroup { .. })
        ));
    }

    #[test]
    fn non_square_table_rejected() {
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 1]], false).is_err());
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 2], vec![1, 0]], false).is_err());
    }

    #[test]
    fn d8_element_orders() {
        let g = d8();
        let r = g.find("r").unwrap();
        let s = g.find("s").unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
    }

    #[test]
    fn commutator_convention() {
        let g = d8();
        let r = g.find("r").unwrap();
        let s = g.find("s").unwrap();
        assert_eq!(g.commutator(r, r), 0);
        assert_eq!(g.commutator(r, s), g.find("r^2").unwrap());
        // h^g = [g, h⁻¹]·h for all pairs
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.conjugate(b, a), g.mul(g.commutator(a, g.inv(b)), b));
            }
        }
    }

    #[test]
    fn heisenberg_commutator_is_c() {
        let g = catalog("heis27").unwrap().group;
        let (gg, h, c) = (g.find("g").unwrap(), g.find("h").unwrap(), g.find("c").unwrap());
        assert_eq!(g.commutator(gg, g.inv(h)), c);
        assert!(g.is_central(c));
    }

    #[test]
    fn d8_normalizer() {
        let g = d8();
        let r = g.find("r").unwrap();
        let s = g.find("s").unwrap();
        let n = g.normalizer_of(&g.cyclic_subgroup(s));
        let mut expect: Vec<usize> = ["1", "s", "r^2", "r^2s"].iter().map(|x| g.find(x).unwrap()).collect();
        expect.sort();
        assert_eq!(n.elements(), expect.as_slice());
        assert!(!g.is_in_normalizer(r, s));
        let r2 = g.find("r^2").unwrap();
        assert_eq!(g.normalizer_of(&g.cyclic_subgroup(r2)), g.whole());
    }

    #[test]
    fn q8_all_cyclic_subgroups_normal() {
        let g = catalog("q8").unwrap().group;
        for x in g.elements() {
            for h in g.elements() {
                assert!(g.is_in_normalizer(x, h));
            }
        }
    }

    #[test]
    fn min_normalized_power_examples() {
        let g = d8();
        let r = g.find("r").unwrap();
        let s = g.find("s").unwrap();
        assert_eq!(g.min_normalized_power(r, s), 2);
        assert_eq!(g.min_normalized_power(s, s), 1);
        let h27 = catalog("heis27").unwrap().group;
        assert_eq!(h27.min_normalized_power(h27.find("g").unwrap(), h27.find("h").unwrap()), 3);
    }

    #[test]
    fn center_and_class() {
        let g = d8();
        let z: Vec<usize> = {
            let mut v = vec![0, g.find("r^2").unwrap()];
            v.sort();
            v
        };
        assert_eq!(g.center().elements(), z.as_slice());
        assert_eq!(g.nilpotency_class(), Ok(2));
        assert_eq!(catalog("heis27").unwrap().group.nilpotency_class(), Ok(2));
        assert!(matches!(
            catalog("c11xc5").unwrap().group.nilpotency_class(),
            Err(GroupError::NotNilpotent { stable_order: 11 })
        ));
    }

    #[test]
    fn abelian_quotient_by_center_is_trivial() {
        let (g, _) = from_permutation_generators(5, &[Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.nilpotency_class(), Ok(1));
        let (q, proj) = g.quotient_by_central(&g.center()).unwrap();
        assert_eq!(q.order(), 1);
        assert!(proj.iter().all(|&p| p == 0));
    }

    #[test]
    fn quotient_requires_central() {
        let g = d8();
        let s = g.find("s").unwrap();
        assert!(matches!(
            g.quotient_by_central(&g.cyclic_subgroup(s)),
            Err(GroupError::NotCentral { .. })
        ));
    }

    #[test]
    fn abelian_subgroup_counts() {
        let c2 = catalog("d8").unwrap().group;
        let s = c2.cyclic_subgroup(c2.find("s").unwrap());
        assert_eq!(c2.subgroups_of_abelian(&s).unwrap().len(), 2);
        // C2 × C2 = {1, s, r², r²s}
        let v4 = c2.normalizer_of(&s);
        assert_eq!(c2.subgroups_of_abelian(&v4).unwrap().len(), 5);
        let c9 = from_permutation_generators(9, &[Permutation::from_cycles(9, &[(0..9).collect()]).unwrap()], DEFAULT_CLOSURE_CAP).unwrap().0;
        assert_eq!(c9.subgroups_of_abelian(&c9.whole()).unwrap().len(), 3);
        assert_eq!(c2.subgroups_of_abelian(&c2.whole()), Err(GroupError::NotAbelian));
        assert!(matches!(
            c9.subgroups_of_abelian_capped(&c9.whole(), 4),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn subgroup_from_elements_checks_closure() {
        let g = d8();
        let r = g.find("r").unwrap();
        assert!(g.subgroup_from_elements(&[0, r]).is_err());
        assert!(g.subgroup_from_elements(g.cyclic_subgroup(r).elements()).is_ok());
    }
}
