use std::collections::HashMap;

use itertools::Itertools;

use super::{Algebra, Combination, Family, FrobeniusData};
use crate::error::{Error, Result};
use crate::poly::Poly;

impl Algebra {
    /// `A_m = Z[x]/(x^m)` with basis `1, x, ..., x^{m-1}`, `deg x^i = i`, and
    /// the coproduct `Δ(x^k) = Σ_{i+j=m-1+k} x^i ⊗ x^j`.
    pub fn truncated(m: usize) -> Result<Algebra> {
        if m == 0 {
            return Err(Error::InvalidAlgebra("A_m needs m >= 1".into()));
        }
        let mut products = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                products.push(if i + j < m { vec![(i + j, 1)] } else { Vec::new() });
            }
        }
        let mut unit = vec![0; m];
        unit[0] = 1;
        let grading = (0..m as i64).collect();
        let mut a = Algebra::assemble(format!("A_{m}"), Family::Truncated { m }, m, products, unit, Some(grading), None, power_labels(m))?;
        let coproduct = (0..m).map(|k| (k..m).map(|i| (i, m - 1 + k - i, 1)).collect()).collect();
        let mut counit = vec![0; m];
        counit[m - 1] = 1;
        a.set_frobenius(FrobeniusData::new(coproduct, counit, Some(m as i64 - 1)))?;
        Ok(a)
    }

    /// `Z[x]/(p)` for a monic `p` of degree `d >= 1`, basis `1, ..., x^{d-1}`.
    ///
    /// The Frobenius structure has `Δ(1) = Σ_i p_{i+1} Σ_{a+b=i} x^a ⊗ x^b`
    /// (the divided difference of `p`) and counit the coefficient of
    /// `x^{d-1}`. For `p = x^d` this returns exactly [`Algebra::truncated`].
    pub fn poly_quotient(coeffs: &[i64]) -> Result<Algebra> {
        let p = Poly::from_i64(coeffs);
        let d = match p.degree() {
            Some(d) if d >= 1 && p.is_monic() => d,
            _ => return Err(Error::NotMonic(p.display_in("x"))),
        };
        let trimmed: Vec<i64> = (0..=d).map(|i| p.coeff(i).as_i64().unwrap()).collect();
        if trimmed[..d].iter().all(|c| *c == 0) {
            return Algebra::truncated(d);
        }
        // x^k reduced mod p for k < 2d - 1.
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(2 * d);
        for k in 0..(2 * d).saturating_sub(1) {
            if k < d {
                let mut v = vec![0; d];
                v[k] = 1;
                powers.push(v);
            } else {
                let prev = &powers[k - 1];
                let top = prev[d - 1];
                let mut v = vec![0i64; d];
                v[1..d].copy_from_slice(&prev[..d - 1]);
                for i in 0..d {
                    v[i] = v[i]
                        .checked_sub(top.checked_mul(trimmed[i]).ok_or(Error::Overflow("poly_quotient"))?)
                        .ok_or(Error::Overflow("poly_quotient"))?;
                }
                powers.push(v);
            }
        }
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                products.push(sparse(&powers[i + j]));
            }
        }
        let mut unit = vec![0; d];
        unit[0] = 1;
        let mut a = Algebra::assemble(
            format!("Z[x]/({})", p.display_in("x")),
            Family::PolyQuotient { coeffs: trimmed.clone() },
            d,
            products,
            unit,
            None,
            None,
            power_labels(d),
        )?;
        // Δ(1) = Σ_{i=0}^{d-1} p_{i+1} Σ_{a+b=i} x^a ⊗ x^b, Δ(x^k) = (x^k ⊗ 1) Δ(1).
        let mut delta_one: Vec<(usize, usize, i64)> = Vec::new();
        for i in 0..d {
            let c = trimmed[i + 1];
            if c != 0 {
                delta_one.extend((0..=i).map(|a| (a, i - a, c)));
            }
        }
        let coproduct = (0..d)
            .map(|k| {
                let mut terms = Vec::new();
                for (x, y, c) in &delta_one {
                    for (z, e) in a.basis_product(k, *x) {
                        terms.push((*z, *y, c * e));
                    }
                }
                normalize_pairs(terms)
            })
            .collect();
        let mut counit = vec![0; d];
        counit[d - 1] = 1;
        a.set_frobenius(FrobeniusData::new(coproduct, counit, None))?;
        Ok(a)
    }

    /// `Z[x_1, ..., x_n]` modulo all monomials of degree above `q_max`.
    /// Basis ordered by degree, then lexicographically by exponent vector
    /// (larger exponent of `x_1` first).
    pub fn polynomial_ring(vars: usize, q_max: i64) -> Result<Algebra> {
        if vars == 0 || q_max < 0 {
            return Err(Error::InvalidAlgebra("polynomial ring needs vars >= 1 and q_max >= 0".into()));
        }
        let mut basis: Vec<Vec<u32>> = Vec::new();
        for deg in 0..=q_max as u32 {
            let mut level = Vec::new();
            compositions(deg, vars, &mut Vec::new(), &mut level);
            level.sort_by(|a, b| b.cmp(a));
            basis.extend(level);
        }
        let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let rank = basis.len();
        let mut products = Vec::with_capacity(rank * rank);
        for a in &basis {
            for b in &basis {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                products.push(index.get(&s).map_or(Vec::new(), |&k| vec![(k, 1)]));
            }
        }
        let grading = basis.iter().map(|e| e.iter().sum::<u32>() as i64).collect();
        let labels = basis.iter().map(|e| monomial_label(e)).collect();
        let mut unit = vec![0; rank];
        unit[0] = 1;
        let name = if vars == 1 { "Z[x]".to_string() } else { format!("Z[x1..x{vars}]") };
        Algebra::assemble(
            format!("{name}_(q<={q_max})"),
            Family::PolynomialRing { vars, q_max },
            rank,
            products,
            unit,
            Some(grading),
            Some(q_max),
            labels,
        )
    }

    /// Tensor algebra `T(V)` on a free module of rank `dim`, modulo words of
    /// length above `q_max`. Basis: words ordered by length, then
    /// lexicographically.
    pub fn tensor_algebra(dim: usize, q_max: i64) -> Result<Algebra> {
        if dim == 0 || q_max < 0 {
            return Err(Error::InvalidAlgebra("tensor algebra needs dim >= 1 and q_max >= 0".into()));
        }
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut start = 0;
        for _ in 0..q_max {
            let end = words.len();
            for w in start..end {
                for v in 0..dim as u8 {
                    let mut nw = words[w].clone();
                    nw.push(v);
                    words.push(nw);
                }
            }
            start = end;
        }
        let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let rank = words.len();
        let mut products = Vec::with_capacity(rank * rank);
        for a in &words {
            for b in &words {
                if a.len() + b.len() > q_max as usize {
                    products.push(Vec::new());
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                products.push(vec![(index[&w], 1)]);
            }
        }
        let grading = words.iter().map(|w| w.len() as i64).collect();
        let labels =
            words.iter().map(|w| if w.is_empty() { "1".to_string() } else { w.iter().map(|v| format!("v{}", v + 1)).join("") }).collect();
        let mut unit = vec![0; rank];
        unit[0] = 1;
        Algebra::assemble(
            format!("T(Z^{dim})_(q<={q_max})"),
            Family::TensorAlgebra { dim, q_max },
            rank,
            products,
            unit,
            Some(grading),
            Some(q_max),
            labels,
        )
    }

    /// Upper triangular `n × n` integer matrices, basis the matrix units
    /// `e_ij` (`i <= j`) in lexicographic order.
    pub fn upper_triangular(n: usize) -> Result<Algebra> {
        if n < 2 {
            return Err(Error::InvalidAlgebra("upper triangular algebra needs n >= 2".into()));
        }
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let index: HashMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let rank = units.len();
        let mut products = Vec::with_capacity(rank * rank);
        for &(i, j) in &units {
            for &(k, l) in &units {
                products.push(if j == k { vec![(index[&(i, l)], 1)] } else { Vec::new() });
            }
        }
        let mut unit = vec![0; rank];
        for i in 0..n {
            unit[index[&(i, i)]] = 1;
        }
        let labels = units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        Algebra::assemble(format!("UT_{n}"), Family::UpperTriangular { n }, rank, products, unit, None, None, labels)
    }
}

fn sparse(v: &[i64]) -> Combination {
    v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect()
}

fn normalize_pairs(terms: Vec<(usize, usize, i64)>) -> Vec<(usize, usize, i64)> {
    let mut acc: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
    for (a, b, c) in terms {
        *acc.entry((a, b)).or_default() += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).map(|((a, b), c)| (a, b, c)).collect()
}

fn power_labels(m: usize) -> Vec<String> {
    (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            i => format!("x^{i}"),
        })
        .collect()
}

fn monomial_label(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(i, k)| {
            let v = if e.len() == 1 { "x".to_string() } else { format!("x{}", i + 1) };
            if *k == 1 {
                v
            } else {
                format!("{v}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}
