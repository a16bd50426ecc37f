use crate::error::{FinslerError, Result};

/// Structure constants `c^k_ij` of a Lie algebra over a fixed basis,
/// `[e_i, e_j] = sum_k c^k_ij e_k`. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    // (i * dim + j) * dim + k
    entries: Vec<f64>,
}

impl StructureConstants {
    /// The abelian algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim * dim],
        }
    }

    /// Builds constants from sparse `(i, j, k, value)` triples, filling in
    /// `c^k_ji = -c^k_ij` for every supplied entry.
    ///
    /// An entry that contradicts an earlier one (directly or through its
    /// implied antisymmetric partner) is rejected, as is a nonzero `c^k_ii`.
    pub fn from_triples(dim: usize, triples: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut out = Self::zero(dim);
        let mut set = vec![false; dim * dim * dim];
        for &(i, j, k, value) in triples {
            out.check_index(i, j, k)?;
            if !value.is_finite() {
                return Err(FinslerError::Structural(format!(
                    "non-finite structure constant c^{k}_{i}{j}"
                )));
            }
            if i == j {
                if value != 0.0 {
                    return Err(FinslerError::Structural(format!(
                        "c^{k}_{i}{i} = {value} violates [x, x] = 0"
                    )));
                }
                continue;
            }
            for (a, b, val) in [(i, j, value), (j, i, -value)] {
                let idx = out.index(a, b, k);
                if set[idx] && (out.entries[idx] - val).abs() > 1e-15 * (1.0 + val.abs()) {
                    return Err(FinslerError::Structural(format!(
                        "conflicting entries for c^{k}_{a}{b}: {} vs {val}",
                        out.entries[idx]
                    )));
                }
                out.entries[idx] = val;
                set[idx] = true;
            }
        }
        Ok(out)
    }

    /// Stores the triples verbatim, without antisymmetric completion.
    /// Useful for checking externally produced tables.
    pub fn from_explicit(dim: usize, triples: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut out = Self::zero(dim);
        for &(i, j, k, value) in triples {
            out.check_index(i, j, k)?;
            let idx = out.index(i, j, k);
            out.entries[idx] = value;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn check_index(&self, i: usize, j: usize, k: usize) -> Result<()> {
        if i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(FinslerError::Structural(format!(
                "index ({i}, {j}, {k}) out of range for dim_g = {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// `c^k_ij`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries[self.index(i, j, k)]
    }

    /// Nonzero entries `(i, j, k, c^k_ij)` in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        let d = self.dim;
        (0..d).flat_map(move |i| {
            (0..d).flat_map(move |j| {
                (0..d).filter_map(move |k| {
                    let c = self.get(i, j, k);
                    (c != 0.0).then_some((i, j, k, c))
                })
            })
        })
    }

    /// Lie bracket of two vectors given in the basis of g.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for (i, &xi) in x.iter().enumerate().take(d) {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate().take(d) {
                let xy = xi * yj;
                if xy == 0.0 {
                    continue;
                }
                let base = self.index(i, j, 0);
                for (o, c) in out.iter_mut().zip(&self.entries[base..base + d]) {
                    *o += c * xy;
                }
            }
        }
        out
    }

    /// `max |c^k_ij + c^k_ji|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    worst = worst.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Largest Jacobi-identity violation over `i < j < k` and every output index.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    for l in 0..d {
                        let mut sum = 0.0;
                        for m in 0..d {
                            sum += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        worst = worst.max(sum.abs());
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_fills_partner() {
        let c = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0)]).unwrap();
        assert_eq!(c.get(0, 1, 2), 1.0);
        assert_eq!(c.get(1, 0, 2), -1.0);
        assert_eq!(c.antisymmetry_residual(), 0.0);
    }

    #[test]
    fn consistent_duplicates_are_accepted() {
        let c = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0), (1, 0, 2, -1.0)]);
        assert!(c.is_ok());
    }

    #[test]
    fn conflicting_entries_are_rejected() {
        let err = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0), (1, 0, 2, 0.0)]);
        assert!(matches!(err, Err(FinslerError::Structural(_))));
    }

    #[test]
    fn diagonal_entry_is_rejected() {
        assert!(StructureConstants::from_triples(2, &[(1, 1, 0, 2.0)]).is_err());
    }

    #[test]
    fn out_of_range_index() {
        assert!(StructureConstants::from_triples(2, &[(0, 2, 1, 1.0)]).is_err());
        assert!(StructureConstants::from_explicit(2, &[(0, 1, 5, 1.0)]).is_err());
    }

    #[test]
    fn explicit_entries_keep_asymmetry() {
        let c = StructureConstants::from_explicit(3, &[(0, 1, 2, 1.0), (1, 0, 2, 0.0)]).unwrap();
        assert_eq!(c.antisymmetry_residual(), 1.0);
    }

    #[test]
    fn jacobi_of_so3_vanishes() {
        let c = StructureConstants::from_triples(
            3,
            &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)],
        )
        .unwrap();
        assert!(c.jacobi_residual() <= 1e-15);
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e0,e1]=e2, [e1,e2]=e1, [e0,e2]=0 is not a Lie algebra
        let c = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0), (1, 2, 1, 1.0)]).unwrap();
        assert!(c.jacobi_residual() > 0.5);
    }

    #[test]
    fn bracket_matches_definition() {
        let c = StructureConstants::from_triples(2, &[(0, 1, 1, 1.0)]).unwrap();
        assert_eq!(c.bracket(&[0.0, 1.0], &[1.0, 0.0]), vec![0.0, -1.0]);
        assert_eq!(c.nonzero().count(), 2);
    }
}
