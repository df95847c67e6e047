//! Rank and invariant factors of large sparse matrices.
//!
//! Unit entries are eliminated first (each removal of a `±1` pivot drops one
//! invariant factor equal to 1 and leaves the rest of the Smith form intact);
//! whatever survives is handed to the dense Smith reduction.

use crate::integer::Integer;
use crate::linalg::smith::dense_invariant_factors;
use crate::linalg::IntegerMatrix;

/// Matrices with both dimensions at or below this go straight to the dense path.
pub const DENSE_CUTOFF: usize = 64;

/// Rank and the invariant factors exceeding 1 of an integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementaryDivisors {
    pub rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion: Vec<Integer>,
}

impl ElementaryDivisors {
    fn from_factors(rank_offset: usize, factors: Vec<Integer>) -> Self {
        let rank = rank_offset + factors.len();
        let torsion = factors.into_iter().filter(|f| !f.is_one()).collect();
        ElementaryDivisors { rank, torsion }
    }
}

pub fn elementary_divisors(a: &IntegerMatrix) -> ElementaryDivisors {
    let (rows, cols) = a.shape();
    if a.is_zero() {
        return ElementaryDivisors::default();
    }
    if rows <= DENSE_CUTOFF && cols <= DENSE_CUTOFF {
        return ElementaryDivisors::from_factors(0, dense_invariant_factors(a.to_dense(), rows, cols));
    }
    let mut elim = UnitEliminator::new(a);
    let pivots = elim.run();
    let (r, c, dense) = elim.residual();
    ElementaryDivisors::from_factors(pivots, dense_invariant_factors(dense, r, c))
}

struct UnitEliminator {
    columns: Vec<Vec<(usize, Integer)>>,
    alive: Vec<bool>,
    // Columns that may hold an entry in each row; entries can be stale.
    row_index: Vec<Vec<usize>>,
    rows: usize,
}

impl UnitEliminator {
    fn new(a: &IntegerMatrix) -> Self {
        let columns: Vec<Vec<(usize, Integer)>> = a.columns().to_vec();
        let mut row_index = vec![Vec::new(); a.rows()];
        for (j, col) in columns.iter().enumerate() {
            for (i, _) in col {
                row_index[*i].push(j);
            }
        }
        let alive = columns.iter().map(|c| !c.is_empty()).collect();
        UnitEliminator { columns, alive, row_index, rows: a.rows() }
    }

    fn row_weight(&self, r: usize) -> usize {
        self.row_index[r].len()
    }

    /// Eliminates unit pivots until none remain; returns how many were used.
    fn run(&mut self) -> usize {
        let mut pivots = 0;
        loop {
            let mut order: Vec<usize> = (0..self.columns.len()).filter(|&j| self.alive[j]).collect();
            order.sort_by_key(|&j| self.columns[j].len());
            let mut progressed = false;
            for j in order {
                if !self.alive[j] {
                    continue;
                }
                let pivot_row =
                    self.columns[j].iter().filter(|(_, v)| v.is_unit()).min_by_key(|(r, _)| self.row_weight(*r)).map(|(r, _)| *r);
                if let Some(r) = pivot_row {
                    self.eliminate(r, j);
                    pivots += 1;
                    progressed = true;
                }
            }
            if !progressed {
                return pivots;
            }
        }
    }

    fn eliminate(&mut self, r: usize, j: usize) {
        let pivot_col = std::mem::take(&mut self.columns[j]);
        self.alive[j] = false;
        let unit = pivot_col.iter().find(|(i, _)| *i == r).map(|(_, v)| v.clone()).unwrap();
        let others = std::mem::take(&mut self.row_index[r]);
        let mut seen = others.clone();
        seen.sort_unstable();
        seen.dedup();
        for k in seen {
            if k == j || !self.alive[k] {
                continue;
            }
            let col = &self.columns[k];
            let Ok(pos) = col.binary_search_by_key(&r, |(i, _)| *i) else {
                continue;
            };
            // col_k -= (w / unit) * col_j, and 1/unit = unit for a unit.
            let factor = -(&col[pos].1 * &unit);
            let merged = axpy(&self.columns[k], &factor, &pivot_col);
            for (i, _) in &merged {
                if self.columns[k].binary_search_by_key(i, |(x, _)| *x).is_err() {
                    self.row_index[*i].push(k);
                }
            }
            debug_assert!(merged.iter().all(|(i, _)| *i != r));
            if merged.is_empty() {
                self.alive[k] = false;
            }
            self.columns[k] = merged;
        }
        for (i, _) in &pivot_col {
            if *i != r {
                self.row_index[*i].retain(|&c| c != j);
            }
        }
    }

    /// Dense copy of what is left after elimination.
    fn residual(&self) -> (usize, usize, Vec<Vec<Integer>>) {
        let live_cols: Vec<usize> = (0..self.columns.len()).filter(|&j| self.alive[j] && !self.columns[j].is_empty()).collect();
        let mut row_map = vec![usize::MAX; self.rows];
        let mut nrows = 0;
        for &j in &live_cols {
            for (i, _) in &self.columns[j] {
                if row_map[*i] == usize::MAX {
                    row_map[*i] = nrows;
                    nrows += 1;
                }
            }
        }
        let mut dense = vec![vec![Integer::ZERO; live_cols.len()]; nrows];
        for (c, &j) in live_cols.iter().enumerate() {
            for (i, v) in &self.columns[j] {
                dense[row_map[*i]][c] = v.clone();
            }
        }
        (nrows, live_cols.len(), dense)
    }
}

/// `x + a * y` for sorted sparse vectors.
fn axpy(x: &[(usize, Integer)], a: &Integer, y: &[(usize, Integer)]) -> Vec<(usize, Integer)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut p, mut q) = (0, 0);
    while p < x.len() || q < y.len() {
        let take_x = q >= y.len() || (p < x.len() && x[p].0 < y[q].0);
        let take_y = p >= x.len() || (q < y.len() && y[q].0 < x[p].0);
        if take_x {
            out.push(x[p].clone());
            p += 1;
        } else if take_y {
            out.push((y[q].0, a * &y[q].1));
            q += 1;
        } else {
            let v = x[p].1.add_mul(a, &y[q].1);
            if !v.is_zero() {
                out.push((x[p].0, v));
            }
            p += 1;
            q += 1;
        }
    }
    out
}
