//! Hochschild chain complexes `C_n(A, M) = M ⊗ A^{⊗n}` with
//! `b = Σ (-1)^i d_i`, the small complexes for tensor algebras and for
//! `Z[x]/(p)`, and Poincaré polynomials of the result.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{normalize, Algebra, Bimodule, Combination};
use crate::complex::{complex_homology_with, BigradedHomology, ChainComplex, Direction};
use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::linalg::{elementary_divisors, HomologySummary, IntegerMatrix};
use crate::par::{self, Execution};
use crate::poly::{BiPoly, Poly};

/// Generators of one bidegree, encoded as `m * r^n + Σ a_i r^{n-i}` and sorted.
type Block = Vec<u64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HochschildOptions {
    /// Quotient by the degenerate chains (some `a_i` equal to the unit). The
    /// degenerate subcomplex is acyclic, so homology is unchanged; the complex
    /// is much smaller. Requires the unit to be a basis vector.
    pub normalized: bool,
    pub execution: Execution,
}

/// The Hochschild complex in degrees `0..=n_max`, certified on `0..=n_max-1`.
/// Split by total q-degree when both `A` and `M` are graded.
pub fn hochschild_complex(a: &Algebra, m: &Bimodule, n_max: usize) -> Result<ChainComplex> {
    hochschild_complex_with(a, m, n_max, HochschildOptions::default())
}

pub fn hochschild_complex_with(a: &Algebra, m: &Bimodule, n_max: usize, opts: HochschildOptions) -> Result<ChainComplex> {
    m.check_over(a)?;
    let r = a.rank();
    let graded = a.is_graded() && m.is_graded();
    let bound = a.truncation_bound();
    if bound.is_some() && !graded {
        return Err(Error::Unsupported("a truncated algebra needs a graded bimodule".into()));
    }
    let unit = if opts.normalized {
        match a.unit().iter().enumerate().filter(|(_, c)| **c != 0).collect::<Vec<_>>()[..] {
            [(u, 1)] => Some(u),
            _ => return Err(Error::Unsupported("normalized complex needs the unit to be a basis vector".into())),
        }
    } else {
        None
    };
    let letters: Vec<usize> = (0..r).filter(|i| Some(*i) != unit).collect();
    let a_deg = |i: usize| if graded { a.degree(i) } else { 0 };
    let m_deg = |j: usize| if graded { m.degree(j) } else { 0 };
    let prune = bound.filter(|_| (0..r).all(|i| a_deg(i) >= 0));
    (r as u64)
        .checked_pow(n_max as u32)
        .and_then(|x| x.checked_mul(m.rank().max(1) as u64))
        .ok_or(Error::Overflow("hochschild_complex"))?;

    let mut groups: BTreeMap<(i64, i64), Block> = BTreeMap::new();
    for n in 0..=n_max {
        let mut by_q: BTreeMap<i64, Block> = BTreeMap::new();
        for mi in 0..m.rank() {
            enumerate(n, &letters, &a_deg, r as u64, mi as u64, m_deg(mi), prune, &mut by_q);
        }
        for (q, codes) in by_q {
            if bound.is_none_or(|b| q <= b) {
                groups.insert((n as i64, q), codes);
            }
        }
    }

    let keys: Vec<(i64, i64)> = groups.keys().copied().filter(|(n, _)| *n >= 1).collect();
    let face_ctx = Faces { a, m, r: r as u64, unit };
    let blocks = par::try_map(opts.execution, &keys, |&(n, q)| -> Result<((i64, i64), IntegerMatrix)> {
        let source = &groups[&(n, q)];
        let empty = Vec::new();
        let target = groups.get(&(n - 1, q)).unwrap_or(&empty);
        let mut columns = Vec::with_capacity(source.len());
        for &code in source {
            let terms = face_ctx.boundary(code, n as usize);
            let mut col = Vec::with_capacity(terms.len());
            for (t, c) in terms {
                let row = target.binary_search(&t).map_err(|_| Error::GradingBroken { degree: n })?;
                col.push((row, Integer::from(c)));
            }
            col.sort_unstable_by_key(|(i, _)| *i);
            columns.push(col);
        }
        Ok(((n, q), IntegerMatrix::from_columns(target.len(), columns)))
    })?;
    let ranks = groups.iter().map(|(k, v)| (*k, v.len())).collect();
    let certified = 0..=(n_max as i64 - 1);
    ChainComplex::from_blocks(Direction::Homological, ranks, blocks.into_iter().collect(), certified)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    remaining: usize,
    letters: &[usize],
    deg: &dyn Fn(usize) -> i64,
    r: u64,
    code: u64,
    q: i64,
    bound: Option<i64>,
    out: &mut BTreeMap<i64, Block>,
) {
    if bound.is_some_and(|b| q > b) {
        return;
    }
    if remaining == 0 {
        out.entry(q).or_default().push(code);
        return;
    }
    for &l in letters {
        enumerate(remaining - 1, letters, deg, r, code * r + l as u64, q + deg(l), bound, out);
    }
}

struct Faces<'a> {
    a: &'a Algebra,
    m: &'a Bimodule,
    r: u64,
    unit: Option<usize>,
}

impl Faces<'_> {
    fn decode(&self, mut code: u64, n: usize) -> (usize, Vec<usize>) {
        let mut word = vec![0; n];
        for i in (0..n).rev() {
            word[i] = (code % self.r) as usize;
            code /= self.r;
        }
        (code as usize, word)
    }

    fn encode(&self, m: usize, word: &[usize]) -> u64 {
        word.iter().fold(m as u64, |acc, &l| acc * self.r + l as u64)
    }

    /// `b(m ⊗ a_1 ⊗ ... ⊗ a_n)` as encoded generators of degree `n - 1`.
    fn boundary(&self, code: u64, n: usize) -> Combination<u64> {
        let (mi, word) = self.decode(code, n);
        let mut out: Vec<(u64, i64)> = Vec::new();
        // d_0 = m a_1 ⊗ a_2 ⊗ ... ⊗ a_n
        for (k, c) in self.m.act_right(mi, word[0]) {
            out.push((self.encode(*k, &word[1..]), *c));
        }
        let mut merged = word[1..].to_vec();
        for i in 1..n {
            // d_i merges a_i a_{i+1}; merged = a_1 .. a_{i-1} _ a_{i+2} .. a_n
            merged.clear();
            merged.extend_from_slice(&word[..i - 1]);
            merged.push(0);
            merged.extend_from_slice(&word[i + 1..]);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (k, c) in self.a.basis_product(word[i - 1], word[i]) {
                if Some(*k) == self.unit {
                    continue;
                }
                merged[i - 1] = *k;
                out.push((self.encode(mi, &merged), sign * c));
            }
        }
        // d_n = a_n m ⊗ a_1 ⊗ ... ⊗ a_{n-1}
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        for (k, c) in self.m.act_left(word[n - 1], mi) {
            out.push((self.encode(*k, &word[..n - 1]), sign * c));
        }
        normalize(out)
    }
}

/// Hochschild homology on the certified range `0..n_max`.
pub fn hochschild_homology(a: &Algebra, m: &Bimodule, n_max: usize) -> Result<BigradedHomology> {
    hochschild_homology_with(a, m, n_max, HochschildOptions::default())
}

pub fn hochschild_homology_with(a: &Algebra, m: &Bimodule, n_max: usize, opts: HochschildOptions) -> Result<BigradedHomology> {
    let c = hochschild_complex_with(a, m, n_max, opts)?;
    complex_homology_with(&c, opts.execution)
}

/// The matrix of multiplication by `x` on `A`, acting on coordinate columns.
pub fn multiplication_matrix(a: &Algebra, x: &[i64]) -> IntegerMatrix {
    let r = a.rank();
    let columns = (0..r)
        .map(|j| {
            let v = a.mul(x, &a.basis(j));
            v.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (i, Integer::from(c))).collect()
        })
        .collect();
    IntegerMatrix::from_columns(r, columns)
}

/// `p'(x)` reduced into `Z[x]/(p)`, in the basis `1, ..., x^{d-1}`.
fn derivative_coordinates(coeffs: &[i64]) -> Result<Vec<i64>> {
    let p = Poly::from_i64(coeffs);
    let d = p.degree().ok_or_else(|| Error::NotMonic(p.display_in("x")))?;
    (0..d).map(|i| p.derivative().coeff(i).as_i64().ok_or(Error::Overflow("derivative"))).collect()
}

/// The collapsed periodic complex computing `HH_*(Z[x]/(p))`: every group is
/// `A = Z[x]/(p)`, odd differentials vanish and even ones multiply by `p'`.
/// For `p = x^d` the groups are graded, `C_{2i}` shifted by `i d` and
/// `C_{2i+1}` by `i d + 1`.
pub fn small_complex_poly_quotient(coeffs: &[i64], n_max: usize) -> Result<ChainComplex> {
    let a = Algebra::poly_quotient(coeffs)?;
    let d = a.rank();
    let graded = a.is_graded();
    let shift = |n: i64| if n % 2 == 0 { (n / 2) * d as i64 } else { (n / 2) * d as i64 + 1 };
    let p_prime = multiplication_matrix(&a, &derivative_coordinates(coeffs)?);
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in 0..=n_max as i64 {
        if !graded {
            ranks.insert((n, 0), d);
            if n >= 2 && n % 2 == 0 {
                diffs.insert((n, 0), p_prime.clone());
            }
            continue;
        }
        for k in 0..d {
            ranks.insert((n, shift(n) + k as i64), 1);
        }
        if n >= 2 && n % 2 == 0 {
            // Multiplication by d x^{d-1} sends x^k in C_n to d x^{k+d-1} in C_{n-1}.
            for k in 0..d {
                let target = k + d - 1;
                let q = shift(n) + k as i64;
                let entry = if target < d { vec![vec![(0, Integer::from(d as i64))]] } else { vec![Vec::new()] };
                if target < d {
                    debug_assert_eq!(shift(n - 1) + target as i64, q);
                }
                let rows = ranks.get(&(n - 1, q)).copied().unwrap_or(0);
                diffs.insert((n, q), IntegerMatrix::from_columns(rows, if rows == 0 { vec![Vec::new()] } else { entry }));
            }
        }
    }
    let certified = 0..=(n_max as i64 - 1);
    ChainComplex::from_blocks(Direction::Homological, ranks, diffs, certified)
}

/// `HH_*(T(V))` for `V` of rank `dim` through the small complex
/// `0 → (V ⊗ T(V))_j → T(V)_j`, whose differential in tensor degree `j ≥ 1`
/// is `1 - τ_j` with `τ_j` the cyclic rotation of words. Only degrees 0 and 1
/// can be nonzero.
pub fn tensor_algebra_hh(dim: usize, degree_max: usize) -> Result<BigradedHomology> {
    if dim == 0 {
        return Err(Error::InvalidAlgebra("tensor algebra needs dim >= 1".into()));
    }
    let mut out = BTreeMap::new();
    out.insert((0, 0), HomologySummary::free(1));
    out.insert((1, 0), HomologySummary::default());
    for j in 1..=degree_max {
        let size = dim.checked_pow(j as u32).ok_or(Error::Overflow("tensor_algebra_hh"))?;
        let e = elementary_divisors(&one_minus_rotation(dim, j));
        out.insert((0, j as i64), HomologySummary::new(size - e.rank, e.torsion));
        out.insert((1, j as i64), HomologySummary::free(size - e.rank));
    }
    Ok(out)
}

/// `1 - τ_j` on `V^{⊗j}`, words indexed in base `dim` with the first letter
/// most significant; `τ(v_1 ... v_j) = v_j v_1 ... v_{j-1}`.
pub fn one_minus_rotation(dim: usize, j: usize) -> IntegerMatrix {
    let size = dim.pow(j as u32);
    let top = dim.pow(j as u32 - 1);
    let columns = (0..size)
        .map(|w| {
            let rotated = (w % dim) * top + w / dim;
            if rotated == w {
                Vec::new()
            } else {
                let mut col = vec![(w, Integer::ONE), (rotated, Integer::from(-1))];
                col.sort_unstable_by_key(|(i, _)| *i);
                col
            }
        })
        .collect();
    IntegerMatrix::from_columns(size, columns)
}

/// `Σ free_rank(H_n,j) t^n q^j`.
pub fn poincare_polynomial(h: &BigradedHomology) -> BiPoly {
    let mut p = BiPoly::default();
    for (&(n, q), s) in h {
        if s.free_rank > 0 {
            p.add_term(n, q, &Integer::from(s.free_rank as i64));
        }
    }
    p
}

/// One row of the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub n: i64,
    pub q: i64,
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

pub fn homology_rows(h: &BigradedHomology) -> Vec<HomologyRow> {
    h.iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(&(n, q), s)| HomologyRow { n, q, free_rank: s.free_rank, torsion: s.torsion.clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex_homology;

    fn a(m: usize) -> Algebra {
        Algebra::truncated(m).unwrap()
    }

    #[test]
    fn first_differential_of_a2_vanishes() {
        let a2 = a(2);
        let c = hochschild_complex(&a2, &Bimodule::regular(&a2), 2).unwrap();
        for q in c.q_degrees() {
            assert!(c.differential(1, q).is_zero());
        }
        assert_eq!(c.total_rank(1), 4);
        assert_eq!(c.total_rank(2), 8);
    }

    #[test]
    fn hh_of_a2_low_degrees() {
        let a2 = a(2);
        let h = hochschild_homology(&a2, &Bimodule::regular(&a2), 4).unwrap();
        assert_eq!(h[&(0, 0)], HomologySummary::free(1));
        assert_eq!(h[&(0, 1)], HomologySummary::free(1));
        assert_eq!(h[&(1, 1)], HomologySummary::free(1));
        assert_eq!(h[&(1, 2)], HomologySummary::new(0, vec![Integer::from(2)]));
        assert_eq!(h[&(2, 3)], HomologySummary::free(1));
        assert!(h[&(2, 2)].is_zero());
    }

    #[test]
    fn normalized_agrees_with_full() {
        for m in 2..=3 {
            let am = a(m);
            let bm = Bimodule::regular(&am);
            let full = hochschild_homology(&am, &bm, 4).unwrap();
            let opts = HochschildOptions { normalized: true, ..Default::default() };
            let norm = hochschild_homology_with(&am, &bm, 4, opts).unwrap();
            assert_eq!(crate::complex::nonzero(&full), crate::complex::nonzero(&norm), "m = {m}");
        }
        let ut = Algebra::upper_triangular(2).unwrap();
        let opts = HochschildOptions { normalized: true, ..Default::default() };
        assert!(hochschild_complex_with(&ut, &Bimodule::regular(&ut), 3, opts).is_err());
    }

    #[test]
    fn upper_triangular_hh0_is_rank_two() {
        let ut = Algebra::upper_triangular(2).unwrap();
        let h = hochschild_homology(&ut, &Bimodule::regular(&ut), 3).unwrap();
        assert_eq!(h[&(0, 0)], HomologySummary::free(2));
        // Oracle: cokernel of the commutator map A ⊗ A → A, a ⊗ b ↦ ab - ba.
        let r = ut.rank();
        let mut cols = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let ab = ut.mul(&ut.basis(i), &ut.basis(j));
                let ba = ut.mul(&ut.basis(j), &ut.basis(i));
                cols.push((0..r).filter(|k| ab[*k] != ba[*k]).map(|k| (k, Integer::from(ab[k] - ba[k]))).collect());
            }
        }
        let e = elementary_divisors(&IntegerMatrix::from_columns(r, cols));
        assert_eq!(r - e.rank, 2);
        assert!(e.torsion.is_empty());
    }

    #[test]
    fn small_complex_of_x_squared() {
        let c = small_complex_poly_quotient(&[0, 0, 1], 4).unwrap();
        c.check_square_zero().unwrap();
        let h = complex_homology(&c).unwrap();
        assert_eq!(h[&(1, 1)], HomologySummary::free(1));
        assert_eq!(h[&(1, 2)], HomologySummary::new(0, vec![Integer::from(2)]));
        assert_eq!(h[&(3, 3)], HomologySummary::free(1));
        assert_eq!(h[&(3, 4)], HomologySummary::new(0, vec![Integer::from(2)]));
    }

    #[test]
    fn small_complex_of_x_is_the_integers() {
        let h = complex_homology(&small_complex_poly_quotient(&[0, 1], 4).unwrap()).unwrap();
        assert_eq!(h[&(0, 0)], HomologySummary::free(1));
        for n in 1..4 {
            assert!(crate::complex::nonzero(&h).keys().all(|(k, _)| *k == 0), "n = {n}");
        }
    }

    #[test]
    fn small_complex_matches_full_for_cubic() {
        let coeffs = [0, -1, 0, 1];
        let a = Algebra::poly_quotient(&coeffs).unwrap();
        let full = hochschild_homology(&a, &Bimodule::regular(&a), 5).unwrap();
        let small = complex_homology(&small_complex_poly_quotient(&coeffs, 5).unwrap()).unwrap();
        assert_eq!(crate::complex::nonzero(&full), crate::complex::nonzero(&small));
        // gcd(p, p') = 1, so every HH_i with i >= 1 is torsion.
        for n in 1..5 {
            assert_eq!(full[&(n, 0)].free_rank, 0);
        }
    }

    #[test]
    fn rotation_of_two_letters_in_degree_two() {
        let e = elementary_divisors(&one_minus_rotation(2, 2));
        assert_eq!(4 - e.rank, 3);
        assert!(e.torsion.is_empty());
        let h = tensor_algebra_hh(1, 4).unwrap();
        for j in 1..=4 {
            assert_eq!(h[&(0, j)], HomologySummary::free(1));
            assert_eq!(h[&(1, j)], HomologySummary::free(1));
        }
        assert!(!tensor_algebra_hh(2, 3).unwrap().keys().any(|(n, _)| *n >= 2));
    }

    #[test]
    fn poincare_of_a2() {
        let a2 = a(2);
        let h = hochschild_homology(&a2, &Bimodule::regular(&a2), 6).unwrap();
        assert_eq!(poincare_polynomial(&h).to_string(), "1 + q + tq + t^2q^3 + t^3q^3 + t^4q^5 + t^5q^5");
        assert!(poincare_polynomial(&BTreeMap::new()).is_zero());
    }

    #[test]
    fn truncated_polynomial_ring_is_filtered() {
        let p = Algebra::polynomial_ring(1, 3).unwrap();
        let c = hochschild_complex(&p, &Bimodule::regular(&p), 3).unwrap();
        assert!(c.q_degrees().into_iter().all(|q| q <= 3));
        c.check_square_zero().unwrap();
    }

    #[test]
    fn mismatched_bimodule_is_rejected() {
        let m = Bimodule::regular(&a(3));
        assert!(hochschild_complex(&a(2), &m, 2).is_err());
    }
}
