//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero on any failure other than the two recorded misprints in the
//! source tables (criteria 3 and 4), whose exact shape is asserted instead.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use khovhoch::complex::{complex_homology, nonzero};
use khovhoch::graph::{graph_cochain_complex, graph_cohomology, Graph, Variant};
use khovhoch::hochschild::{hochschild_complex, hochschild_homology, small_complex_poly_quotient, tensor_algebra_hh};
use khovhoch::khovanov::{circle_count, khovanov_complex, khovanov_homology, SupersetState};
use khovhoch::{Algebra, BigradedHomology, Bimodule, ChainComplex, HomologySummary, Integer, Sign, SignedPlaneGraph};

struct Outcome {
    passed: bool,
    detail: String,
    /// Set when the failure is exactly the recorded misprint.
    misprint: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { passed: true, detail: detail.into(), misprint: false }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { passed: false, detail: detail.into(), misprint: false }
    }
}

fn z(n: i64) -> Integer {
    Integer::from(n)
}

fn free(r: usize) -> HomologySummary {
    HomologySummary::free(r)
}

fn torsion(t: i64) -> HomologySummary {
    HomologySummary::new(0, vec![z(t)])
}

fn torsion_part(h: &BigradedHomology) -> BTreeSet<((i64, i64), Vec<Integer>)> {
    h.iter().filter(|(_, s)| !s.torsion.is_empty()).map(|(k, s)| (*k, s.torsion.clone())).collect()
}

fn choose(n: i64, k: i64) -> usize {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

fn truncated(m: usize) -> Algebra {
    Algebra::truncated(m).unwrap()
}

fn ut2() -> Algebra {
    Algebra::upper_triangular(2).unwrap()
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=5i64 {
        let a = truncated(m as usize);
        let computed: BigradedHomology =
            nonzero(&hochschild_homology(&a, &Bimodule::regular(&a), 8).unwrap()).into_iter().filter(|((n, _), _)| *n <= 7).collect();
        // (1 + ... + q^{m-1}) + t(q + ... + q^{m-1}) + Σ_i (t^{2i} + t^{2i+1})(q + ... + q^{m-1}) q^{im},
        // torsion Z_m at (2i - 1, im).
        let mut expected: BigradedHomology = BTreeMap::new();
        let mut add = |n: i64, q: i64, s: HomologySummary| {
            let e = expected.entry((n, q)).or_default();
            e.free_rank += s.free_rank;
            e.torsion.extend(s.torsion);
        };
        for q in 0..m {
            add(0, q, free(1));
        }
        for q in 1..m {
            add(1, q, free(1));
        }
        for i in 1..=3 {
            for q in 1..m {
                add(2 * i, i * m + q, free(1));
                add(2 * i + 1, i * m + q, free(1));
            }
        }
        for i in 1..=4 {
            add(2 * i - 1, i * m, torsion(m));
        }
        if computed != expected {
            bad.push(format!("m={m}: computed {computed:?}"));
        }
    }
    if bad.is_empty() {
        Outcome::pass("free ranks and Z_m torsion of HH(A_m), m = 2..5, n <= 7")
    } else {
        Outcome::fail(bad.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let a2 = truncated(2);
    let a3 = truncated(3);
    let u = ut2();
    let cases = vec![
        ("A_2", "A_2", a2.clone(), Bimodule::regular(&a2)),
        ("A_2", "(x)", a2.clone(), Bimodule::ideal(&a2, &[vec![0, 1]]).unwrap()),
        ("A_3", "A_3", a3.clone(), Bimodule::regular(&a3)),
        ("A_3", "(x^2)", a3.clone(), Bimodule::ideal(&a3, &[vec![0, 0, 1]]).unwrap()),
        ("UT_2", "UT_2", u.clone(), Bimodule::regular(&u)),
    ];
    let mut bad = Vec::new();
    let mut compared = 0;
    for (an, mn, a, m) in &cases {
        for n in 2..=5i64 {
            let g = Graph::polygon(n as usize + 1).with_base(0).into_directed();
            let gh = nonzero(&graph_cohomology(&g, a, m, Variant::PhiHat).unwrap());
            let hh = nonzero(&hochschild_homology(a, m, n as usize).unwrap());
            let lhs: BigradedHomology = gh.into_iter().filter(|((i, _), _)| *i > 0 && *i <= n).collect();
            let rhs: BigradedHomology = hh.into_iter().filter(|((k, _), _)| *k < n).map(|((k, q), s)| ((n - k, q), s)).collect();
            compared += lhs.len();
            if lhs != rhs {
                bad.push(format!("{an}, M={mn}, n={n}: graph {lhs:?} vs Hochschild {rhs:?}"));
            }
        }
    }
    if bad.is_empty() {
        Outcome::pass(format!("hat cohomology of P_(n+1) = H_(n-i) for 5 pairs, n = 2..5 ({compared} nonzero groups)"))
    } else {
        Outcome::fail(bad.join("; "))
    }
}

fn torus_table(n: i64) -> BTreeSet<(i64, i64)> {
    let (mut a, mut b) = if n % 2 == 1 { (n - 2, 3 * n - 4) } else { (n - 4, 3 * n - 8) };
    let mut out = BTreeSet::new();
    while a >= -n + 4 {
        out.insert((a, b));
        a -= 2;
        b -= 4;
    }
    out
}

fn criterion_3() -> Outcome {
    let a2 = truncated(2);
    let mut mismatches = Vec::new();
    let mut consistent = true;
    let mut notes = Vec::new();
    for n in 3..=7i64 {
        let (e, v) = (n, n);
        let gh = graph_cohomology(&Graph::polygon(n as usize), &a2, &Bimodule::regular(&a2), Variant::Phi).unwrap();
        let regraded: BTreeSet<((i64, i64), Vec<Integer>)> =
            torsion_part(&gh).into_iter().map(|((i, j), t)| ((e - 2 * i, e - 2 * v + 4 * j), t)).collect();
        let printed: BTreeSet<((i64, i64), Vec<Integer>)> = torus_table(n).into_iter().map(|k| (k, vec![z(2)])).collect();
        let kh = khovanov_homology(&SignedPlaneGraph::torus(2, -n).unwrap(), &a2).unwrap();
        consistent &= torsion_part(&kh) == regraded;
        if regraded != printed {
            let missing: Vec<(i64, i64)> = printed.difference(&regraded).map(|(k, _)| *k).collect();
            let extra: Vec<(i64, i64)> = regraded.difference(&printed).map(|(k, _)| *k).collect();
            // The recorded misprint: the printed list has every second point of the computed
            // progression doubled up; the computed points are the printed ones with even index.
            let every_other: BTreeSet<(i64, i64)> = torus_table(n).into_iter().step_by(2).collect();
            let computed_keys: BTreeSet<(i64, i64)> = regraded.iter().map(|(k, _)| *k).collect();
            consistent &= extra.is_empty() && computed_keys == every_other;
            mismatches.push(n);
            notes.push(format!("n={n}: printed points {missing:?} carry no torsion"));
        }
    }
    if mismatches.is_empty() && consistent {
        return Outcome::pass("regraded polygon torsion equals the T(2,-n) table, n = 3..7");
    }
    let detail = format!(
        "regraded polygon torsion (= direct Khovanov torsion: {consistent}) differs from the printed table for n in {mismatches:?}; {}",
        notes.join("; ")
    );
    Outcome { passed: false, misprint: consistent && mismatches == vec![5, 6, 7], detail }
}

fn criterion_4() -> Outcome {
    let zx = Algebra::polynomial_ring(1, 8).unwrap();
    let mut bad = Vec::new();
    let mut only_degree_zero = true;
    for n in 3..=6i64 {
        let h = nonzero(&graph_cohomology(&Graph::polygon(n as usize), &zx, &Bimodule::regular(&zx), Variant::Phi).unwrap());
        // (q/(1-q))^3 + t^{n-2} q/(1-q) up to q^8.
        let mut expected: BigradedHomology = BTreeMap::new();
        for j in 1..=8 {
            if choose(j - 1, 2) > 0 {
                expected.insert((0, j), free(choose(j - 1, 2)));
            }
            expected.entry((n - 2, j)).or_default().free_rank += 1;
        }
        if h != expected {
            bad.push(n);
            let above: BigradedHomology = h.iter().filter(|((i, _), _)| *i > 0).map(|(k, s)| (*k, s.clone())).collect();
            let above_expected: BigradedHomology = expected.iter().filter(|((i, _), _)| *i > 0).map(|(k, s)| (*k, s.clone())).collect();
            let degree_zero: Vec<usize> = (1..=8).map(|j| h.get(&(0, j)).map_or(0, |s| s.free_rank)).collect();
            let n_th_power: Vec<usize> = (1..=8).map(|j| choose(j - 1, n - 1)).collect();
            only_degree_zero &= above == above_expected && degree_zero == n_th_power && h.values().all(|s| s.torsion.is_empty());
        }
    }
    if bad.is_empty() {
        return Outcome::pass("polygons over Z[x], n = 3..6, q <= 8");
    }
    Outcome {
        passed: false,
        misprint: only_degree_zero && bad == vec![4, 5, 6],
        detail: format!(
            "degree-0 ranks follow (q/(1-q))^n, not (q/(1-q))^3, for n in {bad:?}; the t^(n-2) part matches: {only_degree_zero}"
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for a in [truncated(2), truncated(3), ut2()] {
        let r = a.rank();
        for n in 1..=6usize {
            let g = Graph::line(n).with_base(0).into_directed();
            let h = nonzero(&graph_cohomology(&g, &a, &Bimodule::regular(&a), Variant::PhiHat).unwrap());
            let rank0: usize = h.iter().filter(|((i, _), _)| *i == 0).map(|(_, s)| s.free_rank).sum();
            if h.keys().any(|(i, _)| *i > 0) || rank0 != r * (r - 1).pow(n as u32) {
                bad.push(format!("{} L_{n}: {h:?}", a.name()));
            }
        }
    }
    if bad.is_empty() {
        Outcome::pass("hat cohomology of L_n vanishes above 0 and rank H^0 = r(r-1)^n")
    } else {
        Outcome::fail(bad.join("; "))
    }
}

/// Number of rotation orbits on words of length `j` over `dim` letters.
fn necklaces(dim: usize, j: usize) -> usize {
    let size = dim.pow(j as u32);
    let mut seen = vec![false; size];
    let mut orbits = 0;
    for w in 0..size {
        if seen[w] {
            continue;
        }
        orbits += 1;
        let mut x = w;
        loop {
            seen[x] = true;
            x = (x % dim) * dim.pow(j as u32 - 1) + x / dim;
            if x == w {
                break;
            }
        }
    }
    orbits
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for dim in 1..=3usize {
        let small = nonzero(&tensor_algebra_hh(dim, 5).unwrap());
        let t = Algebra::tensor_algebra(dim, 5).unwrap();
        let full: BigradedHomology =
            nonzero(&hochschild_homology(&t, &Bimodule::regular(&t), 5).unwrap()).into_iter().filter(|((n, _), _)| *n <= 4).collect();
        let mut oracle: BigradedHomology = BTreeMap::new();
        oracle.insert((0, 0), free(1));
        for j in 1..=5 {
            oracle.insert((0, j), free(necklaces(dim, j as usize)));
            oracle.insert((1, j), free(necklaces(dim, j as usize)));
        }
        if small != full || full != oracle {
            bad.push(format!("dim {dim}: small {small:?}, full {full:?}"));
        }
    }
    if bad.is_empty() {
        Outcome::pass("1 - tau complex = full complex of T(V), dim V = 1..3, degree <= 5; HH_2..HH_4 vanish")
    } else {
        Outcome::fail(bad.join("; "))
    }
}

/// Primitive Euclid over the rationals on integer coefficient vectors.
fn gcd_degree(p: &[i64]) -> usize {
    fn trim(mut v: Vec<i128>) -> Vec<i128> {
        while v.last() == Some(&0) {
            v.pop();
        }
        let g = v.iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
        if g > 1 {
            v.iter_mut().for_each(|x| *x /= g);
        }
        v
    }
    fn num_gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            num_gcd(b, a % b)
        }
    }
    let mut a = trim(p.iter().map(|&c| c as i128).collect());
    let mut b = trim(p.iter().enumerate().skip(1).map(|(i, &c)| i as i128 * c as i128).collect());
    while !b.is_empty() {
        while a.len() >= b.len() {
            let (la, lb) = (*a.last().unwrap(), *b.last().unwrap());
            let shift = a.len() - b.len();
            let mut next: Vec<i128> = a.iter().map(|x| x * lb).collect();
            for (k, y) in b.iter().enumerate() {
                next[k + shift] -= la * y;
            }
            a = trim(next);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for vars in 1..=2i64 {
        let s = Algebra::polynomial_ring(vars as usize, 4).unwrap();
        let top = vars + 1;
        let h: BigradedHomology = nonzero(&hochschild_homology(&s, &Bimodule::regular(&s), top as usize + 1).unwrap())
            .into_iter()
            .filter(|((n, _), _)| *n <= top)
            .collect();
        let mut expected: BigradedHomology = BTreeMap::new();
        for k in 0..=top {
            for q in 0..=4 {
                // dim S(V)_{q-k} by counting exponent vectors, times C(v, k).
                let monomials = if q < k {
                    0
                } else if vars == 1 {
                    1
                } else {
                    (q - k + 1) as usize
                };
                let r = monomials * choose(vars, k);
                if r > 0 {
                    expected.insert((k, q), free(r));
                }
            }
        }
        if h != expected {
            bad.push(format!("{vars} variables: {h:?}"));
        }
    }
    let monic: [&[i64]; 10] = [
        &[0, 1],
        &[0, 0, 1],
        &[-1, 0, 1],
        &[0, 0, 0, 1],
        &[0, -1, 0, 1],
        &[1, -1, -1, 1],
        &[-2, 0, 0, 1],
        &[0, 0, 0, 0, 1],
        &[1, 0, -2, 0, 1],
        &[-1, 1, 0, 0, 1],
    ];
    for p in monic {
        let small = nonzero(&complex_homology(&small_complex_poly_quotient(p, 5).unwrap()).unwrap());
        let a = Algebra::poly_quotient(p).unwrap();
        let full = nonzero(&hochschild_homology(&a, &Bimodule::regular(&a), 5).unwrap());
        let g = gcd_degree(p);
        let ranks: Vec<usize> = (1..=4).map(|i| full.iter().filter(|((n, _), _)| *n == i).map(|(_, s)| s.free_rank).sum()).collect();
        if small != full || ranks.iter().any(|r| *r != g) {
            bad.push(format!("p = {p:?}: small {small:?}, full {full:?}, gcd degree {g}"));
        }
    }
    if bad.is_empty() {
        Outcome::pass("S(V) ranks for 1, 2 variables, q <= 4; periodic = full complex for 10 monic p, ranks = deg gcd(p, p')")
    } else {
        Outcome::fail(bad.join("; "))
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let vertices = rng.gen_range(1..=5);
    let edges = rng.gen_range(0..=6);
    let e = (0..edges).map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices))).collect();
    Graph::new(vertices, e).unwrap()
}

fn fixed_graphs() -> Vec<Graph> {
    let g = |v: usize, e: &[(usize, usize)]| Graph::new(v, e.to_vec()).unwrap();
    vec![
        Graph::polygon(3),
        Graph::polygon(4),
        Graph::polygon(6),
        Graph::line(4),
        Graph::theta(3),
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
        g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]),
        g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        g(5, &[(0, 1), (2, 3), (3, 4), (4, 2)]),
    ]
}

/// `Σ_S (-1)^{|S|} λ^{k(S)}` evaluated at `λ = 1 + q` as coefficients in `q`.
fn whitney_at_one_plus_q(g: &Graph) -> Vec<i64> {
    let e = g.edge_count();
    let mut out = vec![0i64; g.vertices + 1];
    for mask in 0u32..1 << e {
        let mut parent: Vec<usize> = (0..g.vertices).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for k in (0..e).filter(|k| mask >> k & 1 == 1) {
            let (a, b) = g.edges[k];
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
        let comps = (0..g.vertices).filter(|&v| root(&mut parent, v) == v).count();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        for (j, slot) in out.iter_mut().enumerate().take(comps + 1) {
            *slot += sign * choose(comps as i64, j as i64) as i64;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn criterion_8() -> Outcome {
    let a2 = truncated(2);
    let a3 = truncated(3);
    let mut complexes: Vec<(String, ChainComplex)> = Vec::new();
    let mut problems = Vec::new();

    for (name, a) in [("A_2", &a2), ("A_3", &a3), ("UT_2", &ut2())] {
        complexes.push((format!("Hochschild {name}"), hochschild_complex(a, &Bimodule::regular(a), 5).unwrap()));
    }
    complexes.push(("Hochschild A_3 (x)".into(), hochschild_complex(&a3, &Bimodule::ideal(&a3, &[vec![0, 1, 0]]).unwrap(), 4).unwrap()));
    let t2 = Algebra::tensor_algebra(2, 4).unwrap();
    complexes.push(("Hochschild T(V)".into(), hochschild_complex(&t2, &Bimodule::regular(&t2), 4).unwrap()));
    let cubic = Algebra::poly_quotient(&[0, -1, 0, 1]).unwrap();
    complexes.push(("Hochschild x^3 - x".into(), hochschild_complex(&cubic, &Bimodule::regular(&cubic), 5).unwrap()));
    complexes.push(("periodic x^3 - x".into(), small_complex_poly_quotient(&[0, -1, 0, 1], 6).unwrap()));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut planar = Vec::new();
    for k in 0..20 {
        let g = random_graph(&mut rng);
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        let h = g.reorder_edges(&order);
        for variant in [Variant::Phi, Variant::PhiHat] {
            let c = graph_cochain_complex(&g, &a2, &Bimodule::regular(&a2), variant).unwrap();
            let before = nonzero(&complex_homology(&c).unwrap());
            let after = nonzero(&graph_cohomology(&h, &a2, &Bimodule::regular(&a2), variant).unwrap());
            if before != after {
                problems.push(format!("graph {k} changes under edge order {order:?}"));
            }
            complexes.push((format!("graph {k} {variant:?}"), c));
        }
        let signs: Vec<Sign> = (0..g.edge_count()).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect();
        match SignedPlaneGraph::new(g.clone(), signs) {
            Ok(s) => {
                let before = nonzero(&khovanov_homology(&s, &a2).unwrap());
                let after = nonzero(&khovanov_homology(&s.reorder_edges(&order).unwrap(), &a2).unwrap());
                if before != after {
                    problems.push(format!("Khovanov homology of graph {k} changes under edge order"));
                }
                planar.push(s);
            }
            Err(e) => problems.push(format!("graph {k} with at most 6 edges rejected: {e}")),
        }
    }

    let fixed = fixed_graphs();
    for (k, g) in fixed.iter().enumerate() {
        let h = graph_cohomology(g, &a2, &Bimodule::regular(&a2), Variant::Phi).unwrap();
        let mut chi: Vec<i64> = vec![0; g.vertices + 1];
        for (&(i, j), s) in &h {
            chi[j as usize] += if i % 2 == 0 { 1 } else { -1 } * s.free_rank as i64;
        }
        while chi.last() == Some(&0) {
            chi.pop();
        }
        if chi != whitney_at_one_plus_q(g) {
            problems.push(format!("Euler characteristic of fixed graph {k}: {chi:?}"));
        }
        planar.push(SignedPlaneGraph::all_negative(g.clone()).unwrap());
    }
    for n in 1..=7 {
        planar.push(SignedPlaneGraph::torus(2, -n).unwrap());
        planar.push(SignedPlaneGraph::torus(2, n).unwrap());
    }

    let mut cubes = 0;
    for s in &planar {
        let e = s.edge_count();
        let mut by_sigma: BTreeMap<i64, usize> = BTreeMap::new();
        for b in 0u64..1 << e {
            let members: Vec<usize> = (0..e).filter(|k| b >> k & 1 == 1).collect();
            let state = SupersetState::from_bset(s, &members);
            let c = circle_count(s, &state);
            *by_sigma.entry(state.sigma()).or_default() += 1 << c;
            for f in (0..e).filter(|f| b >> f & 1 == 0) {
                let mut next = members.clone();
                next.push(f);
                let d = circle_count(s, &SupersetState::from_bset(s, &next)) as i64 - c as i64;
                if d.abs() != 1 {
                    problems.push(format!("circle count steps by {d} on {:?}", s.graph()));
                }
            }
        }
        for (name, a) in [("A_2", &a2), ("A_3", &a3)] {
            let c = khovanov_complex(s, a).unwrap();
            if name == "A_2" {
                for (&sigma, &rank) in &by_sigma {
                    if c.total_rank(sigma) != rank {
                        problems.push(format!("traced circles disagree with the circle formula on {:?}", s.graph()));
                    }
                }
            }
            complexes.push((format!("Khovanov {name} {:?}", s.graph().edges), c));
        }
        cubes += 1;
    }

    for (name, c) in &complexes {
        if let Err(e) = c.check_square_zero() {
            problems.push(format!("d^2 != 0 on {name}: {e}"));
        }
    }
    if problems.is_empty() {
        Outcome::pass(format!(
            "d^2 = 0 on {} complexes; 20 random graphs edge-order invariant; Euler = chromatic on 10 graphs; +-1 circle steps on {cubes} cubes",
            complexes.len()
        ))
    } else {
        Outcome::fail(problems.join("; "))
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "Hochschild homology of A_m", criterion_1, 120),
        (2, "polygons against Hochschild homology", criterion_2, 300),
        (3, "regraded polygon torsion against the T(2,-n) table", criterion_3, 120),
        (4, "polygons over Z[x]", criterion_4, 120),
        (5, "lines are acyclic above degree 0", criterion_5, 60),
        (6, "tensor algebras", criterion_6, 120),
        (7, "polynomial rings and Z[x]/(p)", criterion_7, 180),
        (8, "property suite", criterion_8, 120),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (k, title, run, budget) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if out.passed && took > Duration::from_secs(budget) {
            out = Outcome::fail(format!("{} but took {took:.1?}, budget {budget}s", out.detail));
        }
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k} ({title}) [{took:.2?}]: {}", out.detail);
        if !out.passed {
            failed += 1;
            if out.misprint {
                println!("     criterion {k}: computed values are consistent; the mismatch is the recorded misprint");
            } else {
                unexpected += 1;
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed, {unexpected} unexpected", 8 - failed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
