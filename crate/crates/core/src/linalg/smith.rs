use std::cmp::Ordering;

use crate::integer::Integer;
use crate::linalg::IntegerMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next and zeros last.
///
/// `v_inverse` is `V^{-1}`; it is tracked alongside `V` because kernel
/// coordinates are read off through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inverse: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Dense working state of the reduction. Row operations are mirrored into
/// `u`; column operations into `v` and (inverted) into `v_inv`.
struct Reducer {
    a: Vec<Vec<Integer>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<Integer>>>,
    v: Option<Vec<Vec<Integer>>>,
    v_inv: Option<Vec<Vec<Integer>>>,
}

fn identity(n: usize) -> Vec<Vec<Integer>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Integer::ONE } else { Integer::ZERO }).collect()).collect()
}

impl Reducer {
    fn new(a: Vec<Vec<Integer>>, rows: usize, cols: usize, track: bool) -> Self {
        Reducer { a, rows, cols, u: track.then(|| identity(rows)), v: track.then(|| identity(cols)), v_inv: track.then(|| identity(cols)) }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(j, k);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(j, k);
        }
    }

    /// row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: &Integer) {
        if c.is_zero() {
            return;
        }
        let (src, dst) = pick_two(&mut self.a, k, i);
        for (x, y) in dst.iter_mut().zip(src.iter()) {
            if !y.is_zero() {
                *x = x.add_mul(c, y);
            }
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = pick_two(u, k, i);
            for (x, y) in dst.iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x = x.add_mul(c, y);
                }
            }
        }
    }

    /// col_j += c * col_k
    fn add_col(&mut self, j: usize, k: usize, c: &Integer) {
        if c.is_zero() {
            return;
        }
        for row in &mut self.a {
            if !row[k].is_zero() {
                row[j] = row[j].add_mul(c, &row[k]);
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[k].is_zero() {
                    row[j] = row[j].add_mul(c, &row[k]);
                }
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // inverse op applied on the left: row_k -= c * row_j
            let neg = -c;
            let (src, dst) = pick_two(vi, j, k);
            for (x, y) in dst.iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x = x.add_mul(&neg, y);
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the trailing
    /// block starting at `(t, t)`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.cmp_abs(&self.a[bi][bj]) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if x.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_round(&p);
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_round(&p);
                        self.add_col(j, t, &-q);
                    }
                }
                // Smaller remainders left in the pivot row or column become the new pivot.
                let mut next: Option<(usize, usize)> = None;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() && next.is_none_or(|(a, b)| self.a[i][t].cmp_abs(&self.a[a][b]) == Ordering::Less) {
                        next = Some((i, t));
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() && next.is_none_or(|(a, b)| self.a[t][j].cmp_abs(&self.a[a][b]) == Ordering::Less) {
                        next = Some((t, j));
                    }
                }
                if let Some((i, j)) = next {
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Pivot row and column are clear; enforce divisibility of the rest.
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !p.divides(&self.a[i][j])));
                match offender {
                    Some(i) => self.add_row(t, i, &Integer::ONE),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn pick_two<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = a.shape();
    let mut r = Reducer::new(a.to_dense(), rows, cols, true);
    r.reduce();
    SmithDecomposition {
        u: IntegerMatrix::from_dense_shape(rows, rows, &r.u.unwrap()),
        d: IntegerMatrix::from_dense_shape(rows, cols, &r.a),
        v: IntegerMatrix::from_dense_shape(cols, cols, &r.v.unwrap()),
        v_inverse: IntegerMatrix::from_dense_shape(cols, cols, &r.v_inv.unwrap()),
    }
}

/// Nonzero diagonal of the Smith form of a dense matrix, without transforms.
pub(crate) fn dense_invariant_factors(a: Vec<Vec<Integer>>, rows: usize, cols: usize) -> Vec<Integer> {
    let mut r = Reducer::new(a, rows, cols, false);
    r.reduce();
    (0..rows.min(cols)).map(|i| r.a[i][i].clone()).filter(|x| !x.is_zero()).collect()
}
