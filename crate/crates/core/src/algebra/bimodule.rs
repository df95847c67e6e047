use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{lattice_basis, lattice_coordinates, normalize, Algebra, Combination};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    Regular,
    /// Two-sided ideal generated by the given elements.
    Ideal {
        generators: Vec<Vec<i64>>,
    },
    Custom,
}

/// A bimodule over an [`Algebra`], free of finite rank over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    name: String,
    kind: ModuleKind,
    algebra_name: String,
    algebra_rank: usize,
    rank: usize,
    /// `left[i * rank + j] = e_i · m_j`.
    left: Vec<Combination>,
    /// `right[j * algebra_rank + i] = m_j · e_i`.
    right: Vec<Combination>,
    grading: Option<Vec<i64>>,
    /// For ideals, the basis of `M` in coordinates of `A`.
    embedding: Option<Vec<Vec<i64>>>,
}

impl Bimodule {
    /// `A` acting on itself by multiplication on both sides.
    pub fn regular(a: &Algebra) -> Bimodule {
        let r = a.rank();
        let left = (0..r * r).map(|x| a.basis_product(x / r, x % r).clone()).collect();
        let right = (0..r * r).map(|x| a.basis_product(x / r, x % r).clone()).collect();
        Bimodule {
            name: a.name().to_string(),
            kind: ModuleKind::Regular,
            algebra_name: a.name().to_string(),
            algebra_rank: r,
            rank: r,
            left,
            right,
            grading: a.grading().map(<[i64]>::to_vec),
            embedding: None,
        }
    }

    /// The two-sided ideal generated by `generators`, with the grading
    /// induced from `A` when the generators are homogeneous.
    pub fn ideal(a: &Algebra, generators: &[Vec<i64>]) -> Result<Bimodule> {
        let r = a.rank();
        if generators.iter().any(|g| g.len() != r) {
            return Err(Error::InvalidBimodule(format!("ideal generators must have {r} coordinates")));
        }
        let mut spanning: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            for i in 0..r {
                let eg = a.mul(&a.basis(i), g);
                for j in 0..r {
                    spanning.push(a.mul(&eg, &a.basis(j)));
                }
            }
        }
        let homogeneous_degree = |v: &Vec<i64>| -> Option<i64> {
            let mut degs = v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, _)| a.degree(k));
            let d = degs.next()?;
            degs.all(|e| e == d).then_some(d)
        };
        let graded = a.is_graded() && spanning.iter().filter(|v| v.iter().any(|c| *c != 0)).all(|v| homogeneous_degree(v).is_some());
        let (basis, grading) = if graded {
            let mut by_degree: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
            for v in spanning.into_iter().filter(|v| v.iter().any(|c| *c != 0)) {
                by_degree.entry(homogeneous_degree(&v).unwrap()).or_default().push(v);
            }
            let mut basis = Vec::new();
            let mut grading = Vec::new();
            for (d, vs) in by_degree {
                for b in lattice_basis(&vs)? {
                    basis.push(b);
                    grading.push(d);
                }
            }
            (basis, Some(grading))
        } else {
            (lattice_basis(&spanning)?, None)
        };
        let name = format!("ideal({})", generators.iter().map(|g| element_label(a, g)).join(","));
        let mut m = Bimodule::from_embedding(a, name, basis, grading)?;
        m.kind = ModuleKind::Ideal { generators: generators.to_vec() };
        Ok(m)
    }

    fn from_embedding(a: &Algebra, name: String, basis: Vec<Vec<i64>>, grading: Option<Vec<i64>>) -> Result<Bimodule> {
        let r = a.rank();
        let n = basis.len();
        let coords = |v: &[i64]| -> Result<Combination> {
            let c = lattice_coordinates(&basis, v).ok_or_else(|| Error::InvalidBimodule("span is not closed under the action".into()))?;
            Ok(c.into_iter().enumerate().filter(|(_, x)| *x != 0).collect())
        };
        let mut left = Vec::with_capacity(r * n);
        for i in 0..r {
            for b in &basis {
                left.push(coords(&a.mul(&a.basis(i), b))?);
            }
        }
        let mut right = Vec::with_capacity(n * r);
        for b in &basis {
            for i in 0..r {
                right.push(coords(&a.mul(b, &a.basis(i)))?);
            }
        }
        let m = Bimodule {
            name,
            kind: ModuleKind::Custom,
            algebra_name: a.name().to_string(),
            algebra_rank: r,
            rank: n,
            left,
            right,
            grading,
            embedding: Some(basis),
        };
        m.validate(a)?;
        Ok(m)
    }

    /// Builds a bimodule from dense action constants
    /// `left[i][j][k]` (`e_i m_j = Σ_k left[i][j][k] m_k`) and
    /// `right[j][i][k]` (`m_j e_i = Σ_k right[j][i][k] m_k`).
    pub fn from_actions(a: &Algebra, left: &[Vec<Vec<i64>>], right: &[Vec<Vec<i64>>], grading: Option<Vec<i64>>) -> Result<Bimodule> {
        let r = a.rank();
        let n = right.len();
        if left.len() != r || left.iter().any(|row| row.len() != n) || right.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidBimodule("action constants have the wrong shape".into()));
        }
        let sparse = |v: &Vec<i64>| -> Result<Combination> {
            if v.len() != n {
                return Err(Error::InvalidBimodule("action constants have the wrong shape".into()));
            }
            Ok(v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k, *x)).collect())
        };
        let m = Bimodule {
            name: "custom".into(),
            kind: ModuleKind::Custom,
            algebra_name: a.name().to_string(),
            algebra_rank: r,
            rank: n,
            left: left.iter().flatten().map(sparse).collect::<Result<_>>()?,
            right: right.iter().flatten().map(sparse).collect::<Result<_>>()?,
            grading,
            embedding: None,
        };
        m.validate(a)?;
        Ok(m)
    }

    /// Checks the unit law, both associativities, the bimodule condition
    /// `(am)a' = a(ma')` and homogeneity.
    pub fn validate(&self, a: &Algebra) -> Result<()> {
        self.check_over(a)?;
        let (r, n) = (self.algebra_rank, self.rank);
        if let Some(g) = &self.grading {
            if g.len() != n {
                return Err(Error::InvalidBimodule("grading has wrong length".into()));
            }
            if a.grading().is_none() {
                return Err(Error::InvalidBimodule("graded bimodule over an ungraded algebra".into()));
            }
            for i in 0..r {
                for j in 0..n {
                    let expect = a.degree(i) + g[j];
                    if self.act_left(i, j).iter().chain(self.act_right(j, i)).any(|(k, _)| g[*k] != expect) {
                        return Err(Error::InvalidBimodule(format!("action of e{i} on m{j} is not homogeneous")));
                    }
                }
            }
        }
        for j in 0..n {
            let unit_left = normalize(
                a.unit()
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| **u != 0)
                    .flat_map(|(i, u)| self.act_left(i, j).iter().map(move |(k, c)| (*k, u * c)))
                    .collect(),
            );
            let unit_right = normalize(
                a.unit()
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| **u != 0)
                    .flat_map(|(i, u)| self.act_right(j, i).iter().map(move |(k, c)| (*k, u * c)))
                    .collect(),
            );
            if unit_left != vec![(j, 1)] || unit_right != vec![(j, 1)] {
                return Err(Error::InvalidBimodule(format!("unit does not act as the identity on m{j}")));
            }
        }
        for i in 0..r {
            for j in 0..n {
                for k in 0..r {
                    // (e_i m_j) e_k = e_i (m_j e_k)
                    let lhs = self.right_comb(&self.act_left(i, j).clone(), k);
                    let rhs = self.left_comb(i, &self.act_right(j, k).clone());
                    if lhs != rhs {
                        return Err(Error::InvalidBimodule(format!("(e{i} m{j}) e{k} != e{i} (m{j} e{k})")));
                    }
                    // (e_i e_k) m_j = e_i (e_k m_j)
                    let lhs = normalize(
                        a.basis_product(i, k)
                            .iter()
                            .flat_map(|(l, c)| self.act_left(*l, j).iter().map(move |(p, d)| (*p, c * d)))
                            .collect(),
                    );
                    let rhs = self.left_comb(i, &self.act_left(k, j).clone());
                    if lhs != rhs {
                        return Err(Error::InvalidBimodule(format!("left action is not associative at ({i},{k},{j})")));
                    }
                    // m_j (e_i e_k) = (m_j e_i) e_k
                    let lhs = normalize(
                        a.basis_product(i, k)
                            .iter()
                            .flat_map(|(l, c)| self.act_right(j, *l).iter().map(move |(p, d)| (*p, c * d)))
                            .collect(),
                    );
                    let rhs = self.right_comb(&self.act_right(j, i).clone(), k);
                    if lhs != rhs {
                        return Err(Error::InvalidBimodule(format!("right action is not associative at ({j},{i},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Errors unless this bimodule was built over an algebra of the same
    /// name and rank as `a`.
    pub fn check_over(&self, a: &Algebra) -> Result<()> {
        if self.algebra_rank != a.rank() || self.algebra_name != a.name() {
            return Err(Error::InvalidBimodule(format!("bimodule {} is over {}, not {}", self.name, self.algebra_name, a.name())));
        }
        Ok(())
    }

    fn left_comb(&self, i: usize, m: &Combination) -> Combination {
        normalize(m.iter().flat_map(|(j, c)| self.act_left(i, *j).iter().map(move |(k, d)| (*k, c * d))).collect())
    }

    fn right_comb(&self, m: &Combination, i: usize) -> Combination {
        normalize(m.iter().flat_map(|(j, c)| self.act_right(*j, i).iter().map(move |(k, d)| (*k, c * d))).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn algebra_rank(&self) -> usize {
        self.algebra_rank
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn degree(&self, j: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[j])
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    /// Basis of an ideal in coordinates of the ambient algebra.
    pub fn embedding(&self) -> Option<&[Vec<i64>]> {
        self.embedding.as_deref()
    }

    /// `e_i · m_j`.
    pub fn act_left(&self, i: usize, j: usize) -> &Combination {
        &self.left[i * self.rank + j]
    }

    /// `m_j · e_i`.
    pub fn act_right(&self, j: usize, i: usize) -> &Combination {
        &self.right[j * self.algebra_rank + i]
    }

    /// True when `a · m = m · a` for all basis elements.
    pub fn is_symmetric(&self) -> bool {
        (0..self.algebra_rank).all(|i| (0..self.rank).all(|j| self.act_left(i, j) == self.act_right(j, i)))
    }
}

fn element_label(a: &Algebra, v: &[i64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| match *c {
            1 => a.basis_label(i).to_string(),
            -1 => format!("-{}", a.basis_label(i)),
            c => format!("{c}{}", a.basis_label(i)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
