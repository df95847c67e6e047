use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::linalg::{smith_normal_form, IntegerMatrix};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`
/// with `t_i > 1` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologySummary {
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

impl HomologySummary {
    pub fn new(free_rank: usize, torsion: Vec<Integer>) -> Self {
        debug_assert!(torsion.iter().all(|t| t > &Integer::ONE));
        debug_assert!(torsion.windows(2).all(|w| w[0].divides(&w[1])));
        HomologySummary { free_rank, torsion }
    }

    pub fn free(rank: usize) -> Self {
        HomologySummary { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The same group with its torsion dropped.
    pub fn free_part(&self) -> HomologySummary {
        HomologySummary::free(self.free_rank)
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology at the middle of `C_in --d_in--> C --d_out--> C_out`.
///
/// The kernel of `d_out` is read off its Smith form; `d_in` is rewritten in
/// that kernel basis and reduced again to get the torsion.
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<HomologySummary> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::ShapeMismatch { left: d_out.shape(), right: d_in.shape() });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNonzero { degree: None, q: None });
    }
    let n = d_in.rows();
    let out = smith_normal_form(d_out);
    let r = out.rank();
    let nullity = n - r;
    // Columns r.. of V span ker d_out, so rows r.. of V^{-1} d_in are the
    // coordinates of im d_in in that basis.
    let coords = out.v_inverse.mul(d_in)?;
    let kernel_rows: Vec<Vec<Integer>> = coords.to_dense().into_iter().skip(r).collect();
    let reduced = IntegerMatrix::from_dense_shape(nullity, d_in.cols(), &kernel_rows);
    let inner = smith_normal_form(&reduced);
    let factors = inner.invariant_factors();
    let torsion = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    Ok(HomologySummary::new(nullity - factors.len(), torsion))
}
