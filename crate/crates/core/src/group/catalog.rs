use std::sync::Arc;

use super::perm::{from_permutation_generators, Permutation, DEFAULT_CLOSURE_CAP};
use super::{FiniteGroup, GroupError};

/// A built-in group together with its permutation model.
#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub key: &'static str,
    pub description: &'static str,
    pub group: Arc<FiniteGroup>,
    pub degree: usize,
    pub perms: Vec<Permutation>,
}

struct Entry {
    key: &'static str,
    description: &'static str,
    degree: usize,
    /// generator images on 0-based points
    generators: fn(usize) -> Vec<Vec<usize>>,
    /// display generators: name and word in the permutation generators
    /// (generator index, exponent); negative exponents allowed
    named: &'static [(&'static str, &'static [(usize, i64)])],
}

const ENTRIES: &[Entry] = &[
    Entry {
        key: "d8",
        description: "dihedral group of order 8",
        degree: 4,
        generators: |_| vec![rot(4, 1), vec![2, 1, 0, 3]],
        named: &[("r", &[(0, 1)]), ("s", &[(1, 1)])],
    },
    Entry {
        key: "q8",
        description: "quaternion group of order 8",
        degree: 8,
        generators: |_| {
            vec![
                images_from_cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]),
                images_from_cycles(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]),
            ]
        },
        named: &[("i", &[(0, 1)]), ("j", &[(1, 1)])],
    },
    Entry {
        key: "d10",
        description: "dihedral group of order 10",
        degree: 5,
        generators: |_| vec![rot(5, 1), (0..5).map(|x| (5 - x) % 5).collect()],
        named: &[("r", &[(0, 1)]), ("s", &[(1, 1)])],
    },
    Entry {
        key: "heis27",
        description: "Heisenberg group of order 27 (exponent 3)",
        degree: 9,
        generators: |_| heisenberg(3),
        named: &[("g", &[(0, 1)]), ("h", &[(1, 1)]), ("c", &[(0, -1), (1, 1), (0, 1), (1, -1)])],
    },
    Entry {
        key: "heis125",
        description: "Heisenberg group of order 125 (exponent 5)",
        degree: 25,
        generators: |_| heisenberg(5),
        named: &[("g", &[(0, 1)]), ("h", &[(1, 1)]), ("c", &[(0, -1), (1, 1), (0, 1), (1, -1)])],
    },
    Entry {
        key: "c11xc5",
        description: "nonabelian group of order 55, C11 ⋊ C5",
        degree: 11,
        generators: |_| vec![rot(11, 1), (0..11).map(|x| (3 * x) % 11).collect()],
        named: &[("g", &[(0, 1)]), ("h", &[(1, 1)])],
    },
    Entry {
        key: "d16",
        description: "dihedral group of order 16",
        degree: 8,
        generators: |_| vec![rot(8, 1), (0..8).map(|x| (8 - x) % 8).collect()],
        named: &[("r", &[(0, 1)]), ("s", &[(1, 1)])],
    },
    Entry {
        key: "mod16",
        description: "modular group of order 16, ⟨a, b | a⁸, b², bab = a⁵⟩",
        degree: 8,
        generators: |_| vec![rot(8, 1), (0..8).map(|x| (5 * x) % 8).collect()],
        named: &[("a", &[(0, 1)]), ("b", &[(1, 1)])],
    },
];

fn rot(n: usize, by: usize) -> Vec<usize> {
    (0..n).map(|x| (x + by) % n).collect()
}

fn images_from_cycles(degree: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|x| x - 1).collect()).collect();
    Permutation::from_cycles(degree, &cycles)
        .expect("catalog cycles are valid")
        .images()
}

/// Unitriangular 3×3 matrices over F_p acting on F_p² by
/// `x: (a, b) ↦ (a+1, b)` and `y: (a, b) ↦ (a, b+a)`.
fn heisenberg(p: usize) -> Vec<Vec<usize>> {
    let idx = |a: usize, b: usize| (a % p) * p + (b % p);
    let x = (0..p * p).map(|i| idx(i / p + 1, i % p)).collect();
    let y = (0..p * p).map(|i| idx(i / p, i % p + i / p)).collect();
    vec![x, y]
}

pub fn catalog_keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

pub fn catalog(key: &str) -> Result<CatalogGroup, GroupError> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| GroupError::UnknownGroup(key.to_string()))?;
    let gens: Vec<Permutation> = (entry.generators)(entry.degree)
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<_, _>>()?;
    let (group, perms) = from_permutation_generators(entry.degree, &gens, DEFAULT_CLOSURE_CAP)?;
    let names = normal_form_names(&group, &perms, &gens, entry.named);
    Ok(CatalogGroup {
        key: entry.key,
        description: entry.description,
        group: Arc::new(group.with_names(names)),
        degree: entry.degree,
        perms,
    })
}

/// Names every element `x₁^e₁ x₂^e₂ …` over the display generators, taking
/// the first exponent tuple in lexicographic order that reaches it.
fn normal_form_names(
    group: &FiniteGroup,
    perms: &[Permutation],
    gens: &[Permutation],
    named: &[(&str, &[(usize, i64)])],
) -> Vec<String> {
    let gen_index: Vec<usize> = gens
        .iter()
        .map(|p| perms.iter().position(|q| q == p).expect("generator in closure"))
        .collect();
    let display: Vec<usize> = named
        .iter()
        .map(|(_, word)| {
            word.iter()
                .fold(0, |acc, &(s, e)| group.mul(acc, group.pow(gen_index[s], e)))
        })
        .collect();
    let orders: Vec<usize> = display.iter().map(|&x| group.element_order(x)).collect();
    let mut names: Vec<Option<String>> = vec![None; group.order()];
    let mut exps = vec![0usize; display.len()];
    loop {
        let mut elem = 0;
        let mut name = String::new();
        for (i, &e) in exps.iter().enumerate() {
            elem = group.mul(elem, group.pow(display[i], e as i64));
            match e {
                0 => {}
                1 => name.push_str(named[i].0),
                _ => name.push_str(&format!("{}^{}", named[i].0, e)),
            }
        }
        if names[elem].is_none() {
            names[elem] = Some(if name.is_empty() { "1".to_string() } else { name });
        }
        // odometer, last position fastest
        let mut pos = exps.len();
        loop {
            if pos == 0 {
                return names
                    .into_iter()
                    .map(|n| n.expect("display generators generate the group"))
                    .collect();
            }
            pos -= 1;
            exps[pos] += 1;
            if exps[pos] < orders[pos] {
                break;
            }
            exps[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders_and_classes() {
        let expected = [
            ("d8", 8, Some(2)),
            ("q8", 8, Some(2)),
            ("d10", 10, None),
            ("heis27", 27, Some(2)),
            ("heis125", 125, Some(2)),
            ("c11xc5", 55, None),
            ("d16", 16, Some(3)),
            ("mod16", 16, Some(2)),
        ];
        for (key, order, class) in expected {
            let g = catalog(key).unwrap().group;
            assert_eq!(g.order(), order, "{key}");
            assert_eq!(g.nilpotency_class().ok(), class, "{key}");
            let mut names: Vec<&String> = g.names().unwrap().iter().collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), order, "{key} names are distinct");
        }
    }

    #[test]
    fn heisenberg_exponent() {
        assert_eq!(catalog("heis27").unwrap().group.exponent(), 3);
        assert_eq!(catalog("heis125").unwrap().group.exponent(), 5);
    }

    #[test]
    fn q8_has_unique_involution() {
        let g = catalog("q8").unwrap().group;
        assert_eq!(g.elements().filter(|&x| g.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn mod16_relation() {
        let g = catalog("mod16").unwrap().group;
        let (a, b) = (g.find("a").unwrap(), g.find("b").unwrap());
        assert_eq!(g.element_order(a), 8);
        assert_eq!(g.conjugate(a, b), g.pow(a, 5));
    }

    #[test]
    fn unknown_key() {
        assert!(matches!(catalog("s3"), Err(GroupError::UnknownGroup(_))));
    }
}
