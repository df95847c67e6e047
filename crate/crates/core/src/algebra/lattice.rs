//! Integer row-echelon bases for sublattices of `Z^n`.

use crate::error::{Error, Result};

/// Hermite normal form basis of the lattice spanned by `vectors`: rows with
/// strictly increasing pivot columns, positive pivots, and entries above each
/// pivot reduced into `[0, pivot)`.
pub fn lattice_basis(vectors: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = match vectors.first() {
        Some(v) => v.len(),
        None => return Ok(Vec::new()),
    };
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::ShapeMismatch { left: (vectors.len(), n), right: (0, 0) });
    }
    let mut rows: Vec<Vec<i128>> =
        vectors.iter().filter(|v| v.iter().any(|x| *x != 0)).map(|v| v.iter().map(|x| *x as i128).collect()).collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for col in 0..n {
        // Euclid on column `col` across the remaining rows.
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&r| rows[r][col].abs());
            let p = nonzero[0];
            let pivot_row = rows[p].clone();
            for &r in &nonzero[1..] {
                let q = rows[r][col].div_euclid(pivot_row[col]);
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
            rows.retain(|v| v.iter().any(|x| *x != 0));
        }
        if let Some(p) = rows.iter().position(|v| v[col] != 0) {
            let mut row = rows.swap_remove(p);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(row);
        }
    }
    for k in 0..basis.len() {
        let col = pivot(&basis[k]);
        let (head, tail) = basis.split_at_mut(k);
        let row = &tail[0];
        for above in head.iter_mut() {
            let q = above[col].div_euclid(row[col]);
            for (x, y) in above.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
    }
    basis.into_iter().map(|row| row.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice_basis"))).collect()).collect()
}

fn pivot<T: Default + PartialEq>(row: &[T]) -> usize {
    row.iter().position(|x| *x != T::default()).expect("basis rows are nonzero")
}

/// Coordinates of `v` in an echelon `basis` produced by [`lattice_basis`], or
/// `None` when `v` is not in the lattice.
pub fn lattice_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut rest: Vec<i128> = v.iter().map(|x| *x as i128).collect();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let col = pivot(row);
        let p = row[col] as i128;
        if rest[col] % p != 0 {
            return None;
        }
        let c = rest[col] / p;
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= c * *y as i128;
        }
        coords.push(i64::try_from(c).ok()?);
    }
    rest.iter().all(|x| *x == 0).then_some(coords)
}
