use std::collections::HashMap;

use super::{FiniteGroup, GroupError};

pub const DEFAULT_CLOSURE_CAP: usize = 20000;

/// A permutation of `{0, …, degree−1}` stored as its image list.
///
/// Products read left to right: `(p·q)(x) = q(p(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation(images.into_iter().map(|x| x as u32).collect()))
    }

    /// Product of the given 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            let mut seen = std::collections::HashSet::new();
            for &x in cycle {
                if x >= degree {
                    return Err(GroupError::InvalidPermutation(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if !seen.insert(x) {
                    return Err(GroupError::InvalidPermutation(format!("point {} repeated in a cycle", x + 1)));
                }
            }
            let mut c = Permutation::identity(degree);
            for (i, &x) in cycle.iter().enumerate() {
                c.0[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
            p = p.then(&c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }
}

/// Breadth-first closure of the generators.
///
/// Element `i` of the returned group corresponds to `perms[i]`; index 0 is the
/// identity permutation. Elements are named by their first breadth-first word
/// in the generator letters `a, b, c, …`.
pub fn from_permutation_generators(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(FiniteGroup, Vec<Permutation>), GroupError> {
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::InvalidPermutation(format!(
                "generator has degree {}, expected {degree}",
                g.degree()
            )));
        }
    }
    let mut perms = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(perms[0].clone(), 0)]);
    // parent[j] · generators[via[j]] = j
    let mut parent = vec![usize::MAX];
    let mut via = vec![usize::MAX];
    // right[x * k + s] = x · generators[s]
    let k = generators.len();
    let mut right: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < perms.len() {
        for (s, gen) in generators.iter().enumerate() {
            let y = perms[head].then(gen);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = perms.len();
                    if i >= cap {
                        return Err(GroupError::ClosureTooLarge { cap });
                    }
                    index.insert(y.clone(), i);
                    perms.push(y);
                    parent.push(head);
                    via.push(s);
                    i
                }
            };
            right.push(idx);
        }
        head += 1;
    }
    let n = perms.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        mul[i * n] = i as u32;
    }
    // BFS order guarantees parent[j] < j
    for j in 1..n {
        let (p, s) = (parent[j], via[j]);
        for i in 0..n {
            let ip = mul[i * n + p] as usize;
            mul[i * n + j] = right[ip * k + s] as u32;
        }
    }
    let names = (0..n).map(|x| word_name(x, &parent, &via)).collect();
    Ok((FiniteGroup::from_flat_unchecked(n, mul).with_names(names), perms))
}

fn word_name(mut x: usize, parent: &[usize], via: &[usize]) -> String {
    if x == 0 {
        return "1".to_string();
    }
    let mut letters = Vec::new();
    while x != 0 {
        letters.push(via[x]);
        x = parent[x];
    }
    letters.reverse();
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        out.push_str(&letter(letters[i]));
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

fn letter(s: usize) -> String {
    if s < 26 {
        ((b'a' + s as u8) as char).to_string()
    } else {
        format!("x{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(deg: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|x| x - 1).collect()).collect();
        Permutation::from_cycles(deg, &cycles).unwrap()
    }

    #[test]
    fn d8_from_square_symmetries() {
        let (g, perms) = from_permutation_generators(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(perms.len(), 8);
        g.check_associative().unwrap();
        // table agrees with permutation products
        for i in g.elements() {
            for j in g.elements() {
                assert_eq!(perms[g.mul(i, j)], perms[i].then(&perms[j]));
            }
        }
    }

    #[test]
    fn c3_and_trivial() {
        let (g, _) = from_permutation_generators(3, &[cyc(3, &[&[1, 2, 3]])], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 3);
        let (t, _) = from_permutation_generators(1, &[], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn closure_cap_enforced() {
        let gens = [cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])];
        assert_eq!(
            from_permutation_generators(5, &gens, 50),
            Err(GroupError::ClosureTooLarge { cap: 50 })
        );
        assert_eq!(from_permutation_generators(5, &gens, 120).unwrap().0.order(), 120);
    }

    #[test]
    fn bad_permutations() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1, 0]]).is_err());
    }
}
