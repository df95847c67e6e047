//! Named verification suites: each claim compares an expected table with a
//! computed one and yields a pass/fail report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Bimodule};
use crate::complex::{complex_homology_with, nonzero, BigradedHomology};
use crate::error::{Error, Result};
use crate::graph::{euler_characteristic_check, graph_cohomology_with, verify_polygon_isomorphism_with, Graph, Variant};
use crate::hochschild::{hochschild_homology_with, small_complex_poly_quotient, tensor_algebra_hh, HochschildOptions};
use crate::integer::Integer;
use crate::khovanov::{khovanov_homology_with, verify_tait_dictionary_with, SignedPlaneGraph};
use crate::linalg::HomologySummary;
use crate::par::{self, Execution};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one claim. Both sides are always filled in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    /// Left out of JSON so that reports are byte-stable.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Suite names with one-line descriptions.
pub const SUITES: &[(&str, &str)] = &[
    ("polygon-iso", "hat cohomology of directed polygons against Hochschild homology"),
    ("dictionary", "A_2 graph cohomology of plane graphs regraded against Khovanov homology"),
    ("polynomial-polygon", "polygons over Z[x] for n = 3..6 and q <= 8"),
    ("truncated-hh", "Hochschild homology of A_m, m = 2..5, degrees up to 7"),
    ("truncated-polygon", "torsion of polygon cohomology over A_2 and A_3"),
    ("torus-torsion", "torsion of Khovanov homology of T(2,-n), n = 3..7"),
    ("line-acyclic", "hat cohomology of lines vanishes above degree 0"),
    ("tensor-algebra", "rotation complex against the full complex of truncated tensor algebras"),
    ("symmetric-algebra", "Hochschild homology of polynomial rings on one and two variables"),
    ("poly-quotient", "periodic complex of Z[x]/(p) against the full complex"),
    ("euler", "graded Euler characteristic against the chromatic polynomial on ten graphs"),
];

type Check = Box<dyn Fn(Execution) -> Result<(Value, Value, bool)> + Send + Sync>;

struct Claim {
    id: String,
    check: Check,
}

fn claim(id: impl Into<String>, check: impl Fn(Execution) -> Result<(Value, Value, bool)> + Send + Sync + 'static) -> Claim {
    Claim { id: id.into(), check: Box::new(check) }
}

/// Runs every claim of `suite`, concurrently when `exec` is parallel.
/// Reports come back sorted by claim identifier.
pub fn run_suite(suite: &str, exec: Execution) -> Result<Vec<VerificationReport>> {
    let claims = match suite {
        "polygon-iso" => polygon_iso(),
        "dictionary" => dictionary(),
        "polynomial-polygon" => polynomial_polygon(),
        "truncated-hh" => truncated_hh(),
        "truncated-polygon" => truncated_polygon(),
        "torus-torsion" => torus_torsion(),
        "line-acyclic" => line_acyclic(),
        "tensor-algebra" => tensor_algebra(),
        "symmetric-algebra" => symmetric_algebra(),
        "poly-quotient" => poly_quotient(),
        "euler" => euler(),
        _ => {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            return Err(Error::Parse(format!("unknown suite `{suite}`; available: {}", names.join(", "))));
        }
    };
    let mut reports = par::map(exec, &claims, |c| {
        let start = Instant::now();
        let (expected, computed, ok) = match (c.check)(exec) {
            Ok(out) => out,
            Err(e) => (Value::Null, json!({ "error": e.to_string() }), false),
        };
        VerificationReport {
            claim: c.id.clone(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected,
            computed,
            wall_time: start.elapsed(),
        }
    });
    reports.sort_by(|a, b| a.claim.cmp(&b.claim));
    Ok(reports)
}

/// `[[degree, q, free_rank, [torsion...]], ...]` over the nonzero groups.
pub fn table(h: &BigradedHomology) -> Value {
    Value::Array(nonzero(h).iter().map(|(&(n, q), s)| json!([n, q, s.free_rank, s.torsion])).collect())
}

fn within(h: &BigradedHomology, keep: impl Fn(i64, i64) -> bool) -> BigradedHomology {
    nonzero(h).into_iter().filter(|((n, q), _)| keep(*n, *q)).collect()
}

fn torsion_only(h: &BigradedHomology) -> BigradedHomology {
    h.iter().filter(|(_, s)| !s.torsion.is_empty()).map(|(k, s)| (*k, HomologySummary::new(0, s.torsion.clone()))).collect()
}

fn compare(expected: BigradedHomology, computed: BigradedHomology) -> (Value, Value, bool) {
    let ok = expected == computed;
    (table(&expected), table(&computed), ok)
}

fn ideal_generator(a: &Algebra) -> Vec<i64> {
    let mut g = vec![0; a.rank()];
    // (x) over A_2, (x^2) over A_3 and the strictly upper corner of UT_2.
    g[if a.name() == "A_3" { 2 } else { 1 }] = 1;
    g
}

fn small_algebras() -> Vec<Algebra> {
    vec![Algebra::truncated(2).expect("A_2"), Algebra::truncated(3).expect("A_3"), Algebra::upper_triangular(2).expect("UT_2")]
}

fn polygon_iso() -> Vec<Claim> {
    let mut out = Vec::new();
    for a in small_algebras() {
        for ideal in [false, true] {
            for n in 2..=5usize {
                let a = a.clone();
                let m_name = if ideal { "M=ideal" } else { "M=A" };
                out.push(claim(format!("polygon-iso/{}/{m_name}/n={n}", a.name()), move |exec| {
                    let m = if ideal { Bimodule::ideal(&a, &[ideal_generator(&a)])? } else { Bimodule::regular(&a) };
                    let c = verify_polygon_isomorphism_with(&a, &m, n, exec)?;
                    let hh: Vec<Value> = c.rows.iter().map(|r| json!([r.i, r.q, r.hochschild])).collect();
                    let gh: Vec<Value> = c.rows.iter().map(|r| json!([r.i, r.q, r.graph])).collect();
                    Ok((Value::Array(hh), Value::Array(gh), c.all_equal))
                }));
            }
        }
    }
    out
}

/// Small plane graphs used by the dictionary and Euler suites.
pub fn sample_graphs() -> Vec<(&'static str, Graph)> {
    let g = |v: usize, e: &[(usize, usize)]| Graph::new(v, e.to_vec()).expect("fixed graph");
    vec![
        ("P_3", Graph::polygon(3)),
        ("P_4", Graph::polygon(4)),
        ("P_5", Graph::polygon(5)),
        ("L_3", Graph::line(3)),
        ("theta_3", Graph::theta(3)),
        ("K_4", g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
        ("star_3", g(4, &[(0, 1), (0, 2), (0, 3)])),
        ("paw", g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)])),
        ("diamond", g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])),
        ("two_edges", g(4, &[(0, 1), (2, 3)])),
    ]
}

fn dictionary() -> Vec<Claim> {
    let mut graphs: Vec<(String, Graph)> = (3..=6).map(|n| (format!("P_{n}"), Graph::polygon(n))).collect();
    for (name, g) in sample_graphs() {
        if !name.starts_with("P_") {
            graphs.push((name.to_string(), g));
        }
    }
    graphs
        .into_iter()
        .map(|(name, g)| {
            claim(format!("dictionary/{name}"), move |exec| {
                let r = verify_tait_dictionary_with(&SignedPlaneGraph::all_negative(g.clone())?, exec)?;
                let expected: Vec<Value> = r.rows.iter().map(|x| json!([x.i, x.j, x.graph])).collect();
                let computed: Vec<Value> = r.rows.iter().map(|x| json!([x.a, x.b, x.khovanov])).collect();
                Ok((Value::Array(expected), Value::Array(computed), r.all_equal))
            })
        })
        .collect()
}

fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

const POLYGON_Q_MAX: i64 = 8;

/// Free ranks of `(q/(1-q))^3 + t^{n-2} q/(1-q)` for `q <= 8`.
pub fn polynomial_polygon_expected(n: usize) -> BigradedHomology {
    let mut out = BTreeMap::new();
    for j in 1..=POLYGON_Q_MAX {
        let h0 = binomial(j - 1, 2);
        if h0 > 0 {
            out.insert((0, j), HomologySummary::free(h0));
        }
        let top = out.entry((n as i64 - 2, j)).or_insert_with(HomologySummary::default);
        top.free_rank += 1;
    }
    out
}

fn polynomial_polygon() -> Vec<Claim> {
    (3..=6usize)
        .map(|n| {
            claim(format!("polynomial-polygon/n={n}"), move |exec| {
                let zx = Algebra::polynomial_ring(1, POLYGON_Q_MAX)?;
                let h = graph_cohomology_with(&Graph::polygon(n), &zx, &Bimodule::regular(&zx), Variant::Phi, exec)?;
                Ok(compare(polynomial_polygon_expected(n), nonzero(&h)))
            })
        })
        .collect()
}

const TRUNCATED_DEGREE_MAX: i64 = 7;

/// Free ranks `(1 + ... + q^{m-1}) + t(q + ... + q^{m-1}) +
/// Σ_i (t^{2i} + t^{2i+1})(q + ... + q^{m-1}) q^{im}` and one `Z_m` at each
/// `(2i - 1, im)`, for degrees up to `degree_max`.
pub fn truncated_hh_expected(m: usize, degree_max: i64) -> BigradedHomology {
    let m = m as i64;
    let mut out: BigradedHomology = BTreeMap::new();
    for q in 0..m {
        out.insert((0, q), HomologySummary::free(1));
    }
    for n in 1..=degree_max {
        let shift = (n / 2) * m;
        for q in 1..m {
            out.insert((n, shift + q), HomologySummary::free(1));
        }
        if n % 2 == 1 {
            let i = (n + 1) / 2;
            out.entry((n, i * m)).or_default().torsion = vec![Integer::from(m)];
        }
    }
    out
}

fn truncated_hh() -> Vec<Claim> {
    (2..=5usize)
        .map(|m| {
            claim(format!("truncated-hh/A_{m}"), move |exec| {
                let a = Algebra::truncated(m)?;
                let opts = HochschildOptions { execution: exec, ..Default::default() };
                let h = hochschild_homology_with(&a, &Bimodule::regular(&a), TRUNCATED_DEGREE_MAX as usize + 1, opts)?;
                Ok(compare(truncated_hh_expected(m, TRUNCATED_DEGREE_MAX), within(&h, |n, _| n <= TRUNCATED_DEGREE_MAX)))
            })
        })
        .collect()
}

/// One `Z_m` at each `(n - 2k, km)` with `n - 2k >= 1`.
pub fn truncated_polygon_torsion(m: usize, n: usize) -> BigradedHomology {
    let (m, n) = (m as i64, n as i64);
    (1..)
        .map(|k| (n - 2 * k, k * m))
        .take_while(|(i, _)| *i >= 1)
        .map(|key| (key, HomologySummary::new(0, vec![Integer::from(m)])))
        .collect()
}

fn truncated_polygon() -> Vec<Claim> {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        for n in 3..=7usize {
            out.push(claim(format!("truncated-polygon/A_{m}/n={n}"), move |exec| {
                let a = Algebra::truncated(m)?;
                let h = graph_cohomology_with(&Graph::polygon(n), &a, &Bimodule::regular(&a), Variant::Phi, exec)?;
                Ok(compare(truncated_polygon_torsion(m, n), torsion_only(&h)))
            }));
        }
    }
    out
}

/// The printed torsion table of `T(2, -n)`: one `Z_2` at each point of
/// `(n-2, 3n-4), (n-4, 3n-8), ..., (-n+4, -n+8)` for odd `n` and
/// `(n-4, 3n-8), (n-6, 3n-12), ..., (-n+4, -n+8)` for even `n`.
pub fn torus_torsion_table(n: usize) -> BigradedHomology {
    let n = n as i64;
    let (mut a, mut b) = if n % 2 == 1 { (n - 2, 3 * n - 4) } else { (n - 4, 3 * n - 8) };
    let mut out = BTreeMap::new();
    while a >= -n + 4 {
        out.insert((a, b), HomologySummary::new(0, vec![Integer::from(2)]));
        a -= 2;
        b -= 4;
    }
    out
}

fn torus_torsion() -> Vec<Claim> {
    (3..=7usize)
        .map(|n| {
            claim(format!("torus-torsion/n={n}"), move |exec| {
                let a2 = Algebra::truncated(2)?;
                let h = khovanov_homology_with(&SignedPlaneGraph::torus(2, -(n as i64))?, &a2, exec)?;
                Ok(compare(torus_torsion_table(n), torsion_only(&h)))
            })
        })
        .collect()
}

fn line_acyclic() -> Vec<Claim> {
    let mut out = Vec::new();
    for a in small_algebras() {
        for n in 1..=6usize {
            let a = a.clone();
            out.push(claim(format!("line-acyclic/{}/n={n}", a.name()), move |exec| {
                let g = Graph::line(n).with_base(0).into_directed();
                let h = nonzero(&graph_cohomology_with(&g, &a, &Bimodule::regular(&a), Variant::PhiHat, exec)?);
                let r = a.rank();
                let rank0: usize = h.iter().filter(|((i, _), _)| *i == 0).map(|(_, s)| s.free_rank).sum();
                let above: BigradedHomology = h.iter().filter(|((i, _), _)| *i > 0).map(|(k, s)| (*k, s.clone())).collect();
                let expected_rank = r * (r - 1).pow(n as u32);
                let expected = json!({ "rank_h0": expected_rank, "above_zero": [] });
                let computed = json!({ "rank_h0": rank0, "above_zero": table(&above) });
                Ok((expected, computed, rank0 == expected_rank && above.is_empty()))
            }));
        }
    }
    out
}

const TENSOR_DEGREE_MAX: usize = 5;
const TENSOR_HOMOLOGICAL_MAX: i64 = 4;

fn tensor_algebra() -> Vec<Claim> {
    (1..=3usize)
        .map(|dim| {
            claim(format!("tensor-algebra/dim={dim}"), move |exec| {
                let small = tensor_algebra_hh(dim, TENSOR_DEGREE_MAX)?;
                let expected = nonzero(&small);
                let t = Algebra::tensor_algebra(dim, TENSOR_DEGREE_MAX as i64)?;
                let opts = HochschildOptions { execution: exec, ..Default::default() };
                let full = hochschild_homology_with(&t, &Bimodule::regular(&t), TENSOR_HOMOLOGICAL_MAX as usize + 1, opts)?;
                Ok(compare(expected, within(&full, |n, q| n <= TENSOR_HOMOLOGICAL_MAX && q <= TENSOR_DEGREE_MAX as i64)))
            })
        })
        .collect()
}

const SYMMETRIC_Q_MAX: usize = 4;

/// `rank HH_{k,q} = C(v, k) C(q - k + v - 1, v - 1)`, the degree-`q` part of
/// `S(V) ⊗ Λ^k V`.
pub fn symmetric_rank(vars: usize, k: i64, q: i64) -> usize {
    let v = vars as i64;
    if q < k {
        return 0;
    }
    binomial(v, k) * binomial(q - k + v - 1, v - 1)
}

fn symmetric_algebra() -> Vec<Claim> {
    (1..=2usize)
        .map(|vars| {
            claim(format!("symmetric-algebra/vars={vars}"), move |exec| {
                let degree_max = vars as i64 + 1;
                let mut expected = BTreeMap::new();
                for k in 0..=degree_max {
                    for q in 0..=SYMMETRIC_Q_MAX as i64 {
                        let r = symmetric_rank(vars, k, q);
                        if r > 0 {
                            expected.insert((k, q), HomologySummary::free(r));
                        }
                    }
                }
                let s = Algebra::polynomial_ring(vars, SYMMETRIC_Q_MAX as i64)?;
                let opts = HochschildOptions { execution: exec, ..Default::default() };
                let h = hochschild_homology_with(&s, &Bimodule::regular(&s), degree_max as usize + 1, opts)?;
                Ok(compare(expected, within(&h, |n, _| n <= degree_max)))
            })
        })
        .collect()
}

/// Monic polynomials of degree at most 4, low coefficient first.
pub const MONIC_SAMPLES: &[&[i64]] = &[
    &[0, 1],
    &[0, 0, 1],
    &[0, 0, 0, 1],
    &[0, 0, 0, 0, 1],
    &[-1, 0, 1],
    &[1, 0, 1],
    &[0, -1, 0, 1],
    &[1, -1, -1, 1],
    &[0, 0, -1, 1],
    &[-2, 0, 0, 1],
    &[-1, 0, 0, 0, 1],
    &[1, 0, -2, 0, 1],
];

const QUOTIENT_HOMOLOGICAL_MAX: usize = 4;

fn poly_quotient() -> Vec<Claim> {
    MONIC_SAMPLES
        .iter()
        .map(|&coeffs| {
            claim(format!("poly-quotient/p={}", Poly::from_i64(coeffs).display_in("x").replace(' ', "")), move |exec| {
                let n_max = QUOTIENT_HOMOLOGICAL_MAX + 1;
                let small = complex_homology_with(&small_complex_poly_quotient(coeffs, n_max)?, exec)?;
                let a = Algebra::poly_quotient(coeffs)?;
                let opts = HochschildOptions { execution: exec, ..Default::default() };
                let full = hochschild_homology_with(&a, &Bimodule::regular(&a), n_max, opts)?;
                let p = Poly::from_i64(coeffs);
                let gcd_degree = p.gcd(&p.derivative()).degree().unwrap_or(0);
                let ranks: Vec<usize> = (1..=QUOTIENT_HOMOLOGICAL_MAX as i64)
                    .map(|i| full.iter().filter(|((n, _), _)| *n == i).map(|(_, s)| s.free_rank).sum())
                    .collect();
                let expected = json!({ "homology": table(&small), "rank_above_zero": gcd_degree });
                let computed = json!({ "homology": table(&full), "ranks_above_zero": ranks });
                let ok = nonzero(&small) == nonzero(&full) && ranks.iter().all(|r| *r == gcd_degree);
                Ok((expected, computed, ok))
            })
        })
        .collect()
}

fn euler() -> Vec<Claim> {
    sample_graphs()
        .into_iter()
        .map(|(name, g)| {
            claim(format!("euler/{name}"), move |_| {
                let mut expected = Vec::new();
                let mut computed = Vec::new();
                let mut ok = true;
                for m in [2usize, 3] {
                    let c = euler_characteristic_check(&g, &Algebra::truncated(m)?)?;
                    ok &= c.equal;
                    expected.push(json!({ "algebra": format!("A_{m}"), "chromatic": c.chromatic_side }));
                    computed.push(json!({ "algebra": format!("A_{m}"), "homology": c.homology_side }));
                }
                Ok((Value::Array(expected), Value::Array(computed), ok))
            })
        })
        .collect()
}
