use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycError, CyclotomicNumber};

/// Square matrix over ℚ(ζ_n), 0-based indices.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    conductor: u64,
    entries: Vec<Vec<CyclotomicNumber>>,
}

impl CycMatrix {
    pub fn from_rows(conductor: u64, entries: Vec<Vec<CyclotomicNumber>>) -> Result<Self, CycError> {
        let d = entries.len();
        for row in &entries {
            assert_eq!(row.len(), d, "matrix must be square");
            for x in row {
                if x.conductor() != conductor {
                    return Err(CycError::ConductorMismatch(conductor, x.conductor()));
                }
            }
        }
        Ok(CycMatrix { conductor, entries })
    }

    pub fn identity(conductor: u64, degree: usize) -> Self {
        let entries = (0..degree)
            .map(|i| {
                (0..degree)
                    .map(|j| if i == j { CyclotomicNumber::one(conductor) } else { CyclotomicNumber::zero(conductor) })
                    .collect()
            })
            .collect();
        CycMatrix { conductor, entries }
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<CyclotomicNumber>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, CycError> {
        if self.conductor != o.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, o.conductor));
        }
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
        let d = self.degree();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = CyclotomicNumber::zero(self.conductor);
                        for k in 0..d {
                            if !self.entries[i][k].is_zero() && !o.entries[k][j].is_zero() {
                                acc = &acc + &(&self.entries[i][k] * &o.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(CycMatrix { conductor: self.conductor, entries })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(self.conductor, self.degree());
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same conductor");
        }
        acc
    }

    /// Reorders the basis: new row/column `a` is old index `order[a]`.
    pub fn permute_basis(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.degree(), "order must list every index once");
        let entries = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        CycMatrix { conductor: self.conductor, entries }
    }

    /// Entries as polynomials in `z`, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix[{}]{:?}", self.conductor, self.to_strings())
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrixJson {
    pub conductor: u64,
    pub entries: Vec<Vec<String>>,
}

impl From<&CycMatrix> for CycMatrixJson {
    fn from(m: &CycMatrix) -> Self {
        CycMatrixJson { conductor: m.conductor, entries: m.to_strings() }
    }
}

/// For a root of unity `x ∈ ℚ(ζ_N)` returns `(n, k)` with `x = e^{2πik/n}`
/// under `ζ_N ↦ e^{2πi/N}`, `n` the exact order and `1 ≤ k ≤ n`.
pub fn root_of_unity_index(x: &CyclotomicNumber) -> Option<(u64, u64)> {
    let big_n = x.conductor();
    // the roots of unity in ℚ(ζ_N) are ±ζ_N^j
    let two_n = if big_n.is_multiple_of(2) { big_n } else { 2 * big_n };
    let lifted_conductor = two_n;
    let xl = x.lift(lifted_conductor).ok()?;
    for j in 0..two_n {
        if CyclotomicNumber::zeta_pow(lifted_conductor, j as i64) == xl {
            let g = num_integer::gcd(j, two_n);
            let n = two_n / g;
            let k = if j == 0 { 1 } else { j / g };
            return Some((n, k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity_index(&CyclotomicNumber::zeta_pow(3, -1)), Some((3, 2)));
        assert_eq!(root_of_unity_index(&CyclotomicNumber::one(3)), Some((1, 1)));
        assert_eq!(root_of_unity_index(&CyclotomicNumber::from_int(3, -1)), Some((2, 1)));
        assert_eq!(root_of_unity_index(&-CyclotomicNumber::zeta(5)), Some((10, 7)));
        assert_eq!(root_of_unity_index(&CyclotomicNumber::from_int(5, 2)), None);
    }

    #[test]
    fn products_and_permutation() {
        let z = CyclotomicNumber::zeta(3);
        let o = CyclotomicNumber::one(3);
        let zero = CyclotomicNumber::zero(3);
        let m = CycMatrix::from_rows(3, vec![vec![o.clone(), zero.clone()], vec![z.clone(), z.clone()]]).unwrap();
        assert!(m.pow(3).get(1, 1).is_one());
        let p = m.permute_basis(&[1, 0]);
        assert_eq!(p.get(0, 1), &z);
        assert_eq!(p.get(1, 0), &zero);
        assert!(CycMatrix::identity(3, 2).is_identity());
    }
}
