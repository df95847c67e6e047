use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::Integer;

/// A sparse integer matrix stored column-wise.
///
/// Every column holds `(row, value)` pairs sorted by row with nonzero values;
/// absent entries are zero. Zero rows or columns are allowed.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Integer)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Integer::ONE)]).collect();
        IntegerMatrix { rows: n, cols: n, columns }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Integer)>,
    {
        let mut acc: Vec<BTreeMap<usize, Integer>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[c].entry(r).or_default();
            *slot += &v;
        }
        let columns = acc.into_iter().map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        IntegerMatrix { rows, cols, columns }
    }

    /// Builds a matrix from sorted sparse columns. Zero values are dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Integer)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.retain(|(_, v)| !v.is_zero());
                col.sort_by_key(|(r, _)| *r);
                debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
                debug_assert!(col.iter().all(|(r, _)| *r < rows));
                col
            })
            .collect();
        IntegerMatrix { rows, cols, columns }
    }

    pub fn from_dense<T: Clone + Into<Integer>>(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); m];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), m, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                let v: Integer = v.clone().into();
                if !v.is_zero() {
                    columns[j].push((i, v));
                }
            }
        }
        IntegerMatrix { rows: n, cols: m, columns }
    }

    /// Dense with explicit shape, for when there may be zero rows.
    pub fn from_dense_shape(rows: usize, cols: usize, data: &[Vec<Integer>]) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        IntegerMatrix { rows, cols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        let mut out = vec![vec![Integer::ZERO; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, Integer)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, Integer)>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<(usize, Integer)>> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => Integer::ZERO,
        }
    }

    /// Iterates over `(row, col, value)` of the stored (nonzero) entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Integer)> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        IntegerMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let mut acc = vec![Integer::ZERO; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k] {
                        if acc[*i].is_zero() {
                            touched.push(*i);
                        }
                        acc[*i] = acc[*i].add_mul(a, b);
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col = touched
                    .drain(..)
                    .filter_map(|i| {
                        let v = std::mem::take(&mut acc[i]);
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect();
                col
            })
            .collect();
        Ok(IntegerMatrix { rows: self.rows, cols: rhs.cols, columns })
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Integer::ZERO; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                y[*i] = y[*i].add_mul(v, &x[j]);
            }
        }
        y
    }

    /// Returns `P * self * Q` where `row_perm[i]` is the new index of row `i`
    /// and `col_perm[j]` the new index of column `j`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntegerMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut columns = vec![Vec::new(); self.cols];
        for (j, col) in self.columns.iter().enumerate() {
            let mut c: Vec<(usize, Integer)> = col.iter().map(|(i, v)| (row_perm[*i], v.clone())).collect();
            c.sort_by_key(|(r, _)| *r);
            columns[col_perm[j]] = c;
        }
        IntegerMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}
