use serde::{Deserialize, Serialize};

use super::perm::{from_permutation_generators, Permutation, DEFAULT_CLOSURE_CAP};
use super::{FiniteGroup, GroupError};

/// On-disk group description: either a Cayley table or permutation
/// generators on `1..=degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table {
        order: usize,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<GeneratorSpec>,
    },
}

/// A generator written as one cycle `[1, 2, 3]` or as a product of cycles
/// `[[1, 2], [3, 4]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Cycle(Vec<usize>),
    Cycles(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupSpec::Table {
            order: g.order(),
            mul: g.table(),
            names: g.names().map(|n| n.to_vec()),
        }
    }

    pub fn build(&self, validate: bool) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Table { order, mul, names } => {
                if mul.len() != *order {
                    return Err(GroupError::Parse(format!(
                        "table has {} rows but order is {order}",
                        mul.len()
                    )));
                }
                let g = FiniteGroup::from_cayley_table(mul, validate)?;
                match names {
                    None => Ok(g),
                    Some(names) => {
                        if names.len() != *order {
                            return Err(GroupError::Parse("names length differs from order".into()));
                        }
                        // undo the identity relabelling for the name table
                        let e = (0..*order)
                            .find(|&e| (0..*order).all(|x| mul[e][x] == x))
                            .unwrap_or(0);
                        let mut names = names.clone();
                        names.swap(0, e);
                        Ok(g.with_names(names))
                    }
                }
            }
            GroupSpec::Permutations { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| {
                        let cycles: Vec<Vec<usize>> = match g {
                            GeneratorSpec::Cycle(c) => vec![c.clone()],
                            GeneratorSpec::Cycles(cs) => cs.clone(),
                        };
                        let zero_based = cycles
                            .into_iter()
                            .map(|c| {
                                c.into_iter()
                                    .map(|x| {
                                        x.checked_sub(1).ok_or_else(|| {
                                            GroupError::InvalidPermutation("points are 1-based".into())
                                        })
                                    })
                                    .collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Permutation::from_cycles(*degree, &zero_based)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(from_permutation_generators(*degree, &gens, DEFAULT_CLOSURE_CAP)?.0)
            }
        }
    }
}

pub fn load_group_json(text: &str, validate: bool) -> Result<FiniteGroup, GroupError> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
    spec.build(validate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_form() {
        let g = load_group_json(r#"{"order": 2, "mul": [[0,1],[1,0]], "names": ["1","t"]}"#, true).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.find("t").unwrap(), 1);
    }

    #[test]
    fn table_form_with_identity_elsewhere_keeps_names() {
        let g = load_group_json(r#"{"order": 2, "mul": [[1,0],[0,1]], "names": ["t","e"]}"#, true).unwrap();
        assert_eq!(g.name(0), "e");
        assert_eq!(g.name(1), "t");
    }

    #[test]
    fn permutation_forms() {
        let a = load_group_json(r#"{"degree": 4, "generators": [[1,2,3,4],[1,3]]}"#, false).unwrap();
        assert_eq!(a.order(), 8);
        let b = load_group_json(r#"{"degree": 4, "generators": [[[1,2],[3,4]],[[1,3],[2,4]]]}"#, false).unwrap();
        assert_eq!(b.order(), 4);
    }

    #[test]
    fn round_trip_through_table() {
        let g = super::super::catalog("d10").unwrap().group;
        let text = serde_json::to_string(&GroupSpec::from_group(&g)).unwrap();
        assert_eq!(load_group_json(&text, true).unwrap(), *g);
    }

    #[test]
    fn malformed() {
        assert!(matches!(load_group_json("{}", false), Err(GroupError::Parse(_))));
        assert!(load_group_json(r#"{"degree": 2, "generators": [[0,1]]}"#, false).is_err());
    }
}
