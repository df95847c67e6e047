//! Finite-rank algebras over the integers given by structure constants,
//! together with bimodules over them and Frobenius coproducts.
//!
//! Elements are coordinate vectors over the stored basis. Infinite-rank graded
//! algebras (polynomial and tensor algebras) are stored modulo everything of
//! degree above a truncation bound; since every complex built from them
//! preserves degree, results in degrees up to the bound are exact.

mod bimodule;
mod families;
mod frobenius;
mod lattice;
mod spec;

pub use bimodule::{Bimodule, ModuleKind};
pub use frobenius::FrobeniusData;
pub use lattice::{lattice_basis, lattice_coordinates};
pub use spec::{AlgebraSpec, ModuleSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse linear combination of basis vectors: `(index, coefficient)`.
pub type Combination<I = usize> = Vec<(I, i64)>;

/// Which constructor produced an algebra; used for family-specific behaviour
/// such as the bigrading of Khovanov homology, which is defined for `A_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Truncated { m: usize },
    PolyQuotient { coeffs: Vec<i64> },
    PolynomialRing { vars: usize, q_max: i64 },
    TensorAlgebra { dim: usize, q_max: i64 },
    UpperTriangular { n: usize },
    StructureConstants,
    Opposite(Box<Family>),
    Tensor(Box<Family>, Box<Family>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    family: Family,
    rank: usize,
    /// `products[i * rank + j] = e_i · e_j`.
    products: Vec<Combination>,
    unit: Vec<i64>,
    grading: Option<Vec<i64>>,
    commutative: bool,
    truncation_bound: Option<i64>,
    frobenius: Option<FrobeniusData>,
    basis_labels: Vec<String>,
}

impl Algebra {
    /// Builds and validates an algebra from dense structure constants
    /// `c[i][j][k]` (`e_i e_j = Σ_k c[i][j][k] e_k`).
    pub fn from_structure_constants(c: &[Vec<Vec<i64>>], unit: Vec<i64>, grading: Option<Vec<i64>>) -> Result<Algebra> {
        let rank = c.len();
        let mut products = Vec::with_capacity(rank * rank);
        for (i, row) in c.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidAlgebra(format!("row {i} has {} entries, expected {rank}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != rank {
                    return Err(Error::InvalidAlgebra(format!("product ({i},{j}) has wrong length")));
                }
                products.push(v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k, *x)).collect());
            }
        }
        let labels = (0..rank).map(|i| format!("e{i}")).collect();
        Algebra::assemble("structure_constants".into(), Family::StructureConstants, rank, products, unit, grading, None, labels)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        name: String,
        family: Family,
        rank: usize,
        products: Vec<Combination>,
        unit: Vec<i64>,
        grading: Option<Vec<i64>>,
        truncation_bound: Option<i64>,
        basis_labels: Vec<String>,
    ) -> Result<Algebra> {
        if rank == 0 {
            return Err(Error::InvalidAlgebra("rank zero".into()));
        }
        if unit.len() != rank {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        let mut a =
            Algebra { name, family, rank, products, unit, grading, commutative: false, truncation_bound, frobenius: None, basis_labels };
        a.commutative = a.compute_commutative();
        a.validate()?;
        Ok(a)
    }

    fn compute_commutative(&self) -> bool {
        (0..self.rank).all(|i| (i + 1..self.rank).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Checks associativity, the unit law, grading and Frobenius compatibility.
    pub fn validate(&self) -> Result<()> {
        let r = self.rank;
        for i in 0..r {
            if self.mul(&self.unit, &self.basis(i)) != self.basis(i) || self.mul(&self.basis(i), &self.unit) != self.basis(i) {
                return Err(Error::InvalidAlgebra(format!("unit law fails on basis element {i}")));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let ij = &self.products[i * r + j];
                if let Some(g) = &self.grading {
                    if ij.iter().any(|(k, _)| g[*k] != g[i] + g[j]) {
                        return Err(Error::InvalidAlgebra(format!("product ({i},{j}) is not homogeneous")));
                    }
                }
                for k in 0..r {
                    if ij.is_empty() && self.products[j * r + k].is_empty() {
                        continue;
                    }
                    let left = self.mul_comb_basis(ij, k);
                    let jk = &self.products[j * r + k];
                    let right = self.mul_basis_comb(i, jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("associativity fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        if let Some(f) = &self.frobenius {
            f.validate(self)?;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn truncation_bound(&self) -> Option<i64> {
        self.truncation_bound
    }

    pub fn frobenius(&self) -> Option<&FrobeniusData> {
        self.frobenius.as_ref()
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    /// True when this is `Z[x]/(x^2)`, the algebra of classical Khovanov homology.
    pub fn is_khovanov_algebra(&self) -> bool {
        self.family == Family::Truncated { m: 2 }
    }

    pub(crate) fn set_frobenius(&mut self, f: FrobeniusData) -> Result<()> {
        f.validate(self)?;
        self.frobenius = Some(f);
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Combination {
        &self.products[i * self.rank + j]
    }

    fn mul_comb_basis(&self, a: &Combination, k: usize) -> Combination {
        let mut out = Vec::new();
        for (i, c) in a {
            for (l, d) in self.basis_product(*i, k) {
                out.push((*l, c * d));
            }
        }
        normalize(out)
    }

    fn mul_basis_comb(&self, i: usize, b: &Combination) -> Combination {
        let mut out = Vec::new();
        for (k, c) in b {
            for (l, d) in self.basis_product(i, *k) {
                out.push((*l, c * d));
            }
        }
        normalize(out)
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += x * y * c;
                }
            }
        }
        out
    }

    /// The algebra with reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let r = self.rank;
        let products = (0..r * r).map(|ij| self.products[(ij % r) * r + ij / r].clone()).collect();
        let family = match &self.family {
            Family::Opposite(inner) => (**inner).clone(),
            f => Family::Opposite(Box::new(f.clone())),
        };
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let mut a = Algebra { name, family, products, frobenius: None, ..self.clone() };
        if self.commutative {
            a.family = self.family.clone();
            a.name = self.name.clone();
            a.frobenius = self.frobenius.clone();
        }
        a
    }

    /// `A ⊗ B` with basis `(i, j) ↦ i * rank(B) + j` and componentwise products.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (ra, rb) = (self.rank, other.rank);
        let rank = ra * rb;
        let mut products = Vec::with_capacity(rank * rank);
        for x in 0..rank {
            let (i, j) = (x / rb, x % rb);
            for y in 0..rank {
                let (k, l) = (y / rb, y % rb);
                let mut out = Vec::new();
                for (p, c) in self.basis_product(i, k) {
                    for (q, d) in other.basis_product(j, l) {
                        out.push((p * rb + q, c * d));
                    }
                }
                products.push(normalize(out));
            }
        }
        let unit = (0..rank).map(|x| self.unit[x / rb] * other.unit[x % rb]).collect();
        let grading = match (&self.grading, &other.grading) {
            (Some(g), Some(h)) => Some((0..rank).map(|x| g[x / rb] + h[x % rb]).collect()),
            _ => None,
        };
        let labels = (0..rank).map(|x| format!("{}⊗{}", self.basis_labels[x / rb], other.basis_labels[x % rb])).collect();
        let truncation_bound = match (self.truncation_bound, other.truncation_bound) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
        let mut a = Algebra {
            name: format!("{}⊗{}", self.name, other.name),
            family: Family::Tensor(Box::new(self.family.clone()), Box::new(other.family.clone())),
            rank,
            products,
            unit,
            grading,
            commutative: false,
            truncation_bound,
            frobenius: None,
            basis_labels: labels,
        };
        a.commutative = self.commutative && other.commutative;
        a
    }

    /// `A^e = A ⊗ A^op`.
    pub fn enveloping(&self) -> Algebra {
        self.tensor(&self.opposite())
    }
}

/// Sorts by index, merges repeated indices and drops zeros.
pub(crate) fn normalize<I: Ord + Copy>(mut v: Combination<I>) -> Combination<I> {
    v.sort_unstable_by_key(|(i, _)| *i);
    let mut out: Combination<I> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}
