use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};

/// Comultiplication and counit making a commutative algebra Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusData {
    /// `coproduct[k] = Δ(e_k)` as terms `(i, j, c)` meaning `c e_i ⊗ e_j`.
    coproduct: Vec<Vec<(usize, usize, i64)>>,
    counit: Vec<i64>,
    /// Degree shift of `Δ` when the algebra is graded.
    coproduct_degree: Option<i64>,
}

impl FrobeniusData {
    pub fn new(coproduct: Vec<Vec<(usize, usize, i64)>>, counit: Vec<i64>, coproduct_degree: Option<i64>) -> Self {
        FrobeniusData { coproduct, counit, coproduct_degree }
    }

    pub fn coproduct(&self, k: usize) -> &[(usize, usize, i64)] {
        &self.coproduct[k]
    }

    pub fn counit(&self) -> &[i64] {
        &self.counit
    }

    pub fn coproduct_degree(&self) -> Option<i64> {
        self.coproduct_degree
    }

    /// `μ(Δ(1))`.
    pub fn distinguished_element(&self, a: &Algebra) -> Vec<i64> {
        let mut out = vec![0; a.rank()];
        for (k, u) in a.unit().iter().enumerate().filter(|(_, u)| **u != 0) {
            for (i, j, c) in &self.coproduct[k] {
                for (l, d) in a.basis_product(*i, *j) {
                    out[*l] += u * c * d;
                }
            }
        }
        out
    }

    /// `Δ` applied to a coordinate vector, as a dense `rank × rank` tensor.
    fn apply(&self, v: &[i64]) -> Vec<i64> {
        let r = v.len();
        let mut out = vec![0; r * r];
        for (k, x) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (i, j, c) in &self.coproduct[k] {
                out[i * r + j] += x * c;
            }
        }
        out
    }

    /// Checks counit laws, that `Δ` is a bimodule map and that it is
    /// homogeneous of the recorded degree.
    pub fn validate(&self, a: &Algebra) -> Result<()> {
        let r = a.rank();
        if self.coproduct.len() != r || self.counit.len() != r {
            return Err(Error::NotFrobenius);
        }
        if self.coproduct.iter().flatten().any(|(i, j, _)| *i >= r || *j >= r) {
            return Err(Error::NotFrobenius);
        }
        for k in 0..r {
            let d = self.apply(&a.basis(k));
            let mut left = vec![0; r];
            let mut right = vec![0; r];
            for i in 0..r {
                for j in 0..r {
                    let c = d[i * r + j];
                    left[j] += self.counit[i] * c;
                    right[i] += self.counit[j] * c;
                }
            }
            if left != a.basis(k) || right != a.basis(k) {
                return Err(Error::NotFrobenius);
            }
            if let (Some(g), Some(s)) = (a.grading(), self.coproduct_degree) {
                if self.coproduct[k].iter().any(|(i, j, _)| g[*i] + g[*j] != g[k] + s) {
                    return Err(Error::NotFrobenius);
                }
            }
        }
        // Δ(e_k e_l) = (e_k ⊗ 1) Δ(e_l) = Δ(e_k) (1 ⊗ e_l).
        for k in 0..r {
            for l in 0..r {
                let prod = a.mul(&a.basis(k), &a.basis(l));
                let target = self.apply(&prod);
                let mut left = vec![0; r * r];
                let mut right = vec![0; r * r];
                for (i, j, c) in &self.coproduct[l] {
                    for (m, d) in a.basis_product(k, *i) {
                        left[m * r + j] += c * d;
                    }
                }
                for (i, j, c) in &self.coproduct[k] {
                    for (m, d) in a.basis_product(*j, l) {
                        right[i * r + m] += c * d;
                    }
                }
                if left != target || right != target {
                    return Err(Error::NotFrobenius);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_counit_is_rejected() {
        let a = Algebra::truncated(2).unwrap();
        let f = a.frobenius().unwrap().clone();
        let bad = FrobeniusData::new(f.coproduct.clone(), vec![1, 0], f.coproduct_degree);
        assert_eq!(bad.validate(&a), Err(Error::NotFrobenius));
        let scaled = FrobeniusData::new(
            f.coproduct.iter().map(|t| t.iter().map(|(i, j, c)| (*i, *j, 2 * c)).collect()).collect(),
            f.counit.clone(),
            None,
        );
        assert_eq!(scaled.validate(&a), Err(Error::NotFrobenius));
    }

    #[test]
    fn a2_coproduct() {
        let a = Algebra::truncated(2).unwrap();
        let f = a.frobenius().unwrap();
        let mut d1 = f.coproduct(0).to_vec();
        d1.sort();
        assert_eq!(d1, vec![(0, 1, 1), (1, 0, 1)]);
        assert_eq!(f.counit(), &[0, 1]);
        assert_eq!(f.coproduct_degree(), Some(1));
    }
}
