//! Chromatic-type graph cohomology: the cube of spanning subgraphs `[G:s]`
//! with `Φ(s) = M ⊗ A^{⊗(k(s)-1)}`, merge maps on component-joining edges and
//! the identity (or zero, for `Φ̂`) on cycle-closing edges.

use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{normalize, Algebra, Bimodule, ModuleKind};
use crate::complex::{complex_homology_with, BigradedHomology, ChainComplex, Direction};
use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::linalg::{HomologySummary, IntegerMatrix};
use crate::par::{self, Execution};
use crate::poly::Poly;

/// Largest edge count accepted by the cube builders.
pub const MAX_EDGES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub base_vertex: Option<usize>,
    #[serde(default)]
    pub directed: bool,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let g = Graph { vertices, edges, base_vertex: None, directed: false };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        if let Some((k, e)) = self.edges.iter().enumerate().find(|(_, (u, w))| *u >= self.vertices || *w >= self.vertices) {
            return Err(Error::InvalidGraph(format!("edge {k} = {e:?} has an endpoint out of range")));
        }
        if self.base_vertex.is_some_and(|b| b >= self.vertices) {
            return Err(Error::InvalidGraph("base vertex out of range".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let g: Graph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    /// The `n`-gon `P_n`: vertices `0..n`, edges `(i, i+1 mod n)`.
    pub fn polygon(n: usize) -> Graph {
        assert!(n >= 1, "a polygon needs at least one vertex");
        Graph { vertices: n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect(), base_vertex: None, directed: false }
    }

    /// The path `L_n` with `n` edges on vertices `0..=n`.
    pub fn line(n: usize) -> Graph {
        Graph { vertices: n + 1, edges: (0..n).map(|i| (i, i + 1)).collect(), base_vertex: None, directed: false }
    }

    pub fn edgeless(vertices: usize) -> Graph {
        Graph { vertices, edges: Vec::new(), base_vertex: None, directed: false }
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn theta(k: usize) -> Graph {
        Graph { vertices: 2, edges: vec![(0, 1); k], base_vertex: None, directed: false }
    }

    pub fn with_base(mut self, v: usize) -> Graph {
        self.base_vertex = Some(v);
        self
    }

    pub fn into_directed(mut self) -> Graph {
        self.directed = true;
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The same graph with edge `k` of the result equal to edge `order[k]` of `self`.
    pub fn reorder_edges(&self, order: &[usize]) -> Graph {
        Graph { edges: order.iter().map(|&k| self.edges[k]).collect(), ..self.clone() }
    }

    /// The vertex sequence of a directed path or directed cycle through all
    /// vertices, starting at the source (path) or at `start` (cycle).
    pub fn directed_walk(&self, start: usize) -> Option<Vec<usize>> {
        if !self.directed {
            return None;
        }
        let n = self.vertices;
        let mut out_edge = vec![None; n];
        let mut indeg = vec![0usize; n];
        for &(u, w) in &self.edges {
            if u == w || out_edge[u].is_some() {
                return None;
            }
            out_edge[u] = Some(w);
            indeg[w] += 1;
        }
        if indeg.iter().any(|d| *d > 1) {
            return None;
        }
        let cycle = self.edges.len() == n;
        if !cycle && self.edges.len() + 1 != n {
            return None;
        }
        let first = if cycle { start } else { (0..n).find(|&v| indeg[v] == 0)? };
        let mut walk = vec![first];
        let mut v = first;
        while let Some(w) = out_edge[v] {
            if w == first {
                break;
            }
            walk.push(w);
            v = w;
        }
        (walk.len() == n).then_some(walk)
    }

    pub fn is_directed_polygon(&self) -> bool {
        self.edges.len() == self.vertices && self.directed_walk(0).is_some()
    }

    pub fn is_directed_line(&self) -> bool {
        self.edges.len() + 1 == self.vertices && self.directed_walk(0).is_some()
    }

    /// Length of a shortest cycle (loops count 1, parallel edges 2), or
    /// `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, &(u, w)) in self.edges.iter().enumerate() {
            if u == w {
                return Some(1);
            }
            let mut dist = vec![usize::MAX; self.vertices];
            dist[u] = 0;
            let mut queue = VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for (l, &(a, b)) in self.edges.iter().enumerate() {
                    if l == k {
                        continue;
                    }
                    let y = if a == x {
                        b
                    } else if b == x {
                        a
                    } else {
                        continue;
                    };
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if dist[w] != usize::MAX {
                let len = dist[w] + 1;
                best = Some(best.map_or(len, |b: usize| b.min(len)));
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The spanning subgraph `[G:s]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningState {
    pub edges: Vec<usize>,
    /// Vertex sets of the components, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl SpanningState {
    pub fn k(&self) -> usize {
        self.components.len()
    }
}

pub fn spanning_state(g: &Graph, s: &[usize]) -> SpanningState {
    let mut uf = UnionFind::new(g.vertices);
    for &e in s {
        let (u, w) = g.edges[e];
        uf.union(u, w);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..g.vertices {
        by_root.entry(uf.find(v)).or_default().push(v);
    }
    let mut edges = s.to_vec();
    edges.sort_unstable();
    SpanningState { edges, components: by_root.into_values().collect() }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Cycle-closing edges act by the identity.
    #[default]
    Phi,
    /// Cycle-closing edges act by zero.
    PhiHat,
}

/// Component layout of one cube vertex: `pos[v]` is the tensor position of
/// the component containing `v`; position 0 holds `M`.
struct Layout {
    pos: Vec<usize>,
    k: usize,
}

struct Cube<'a> {
    g: &'a Graph,
    a: &'a Algebra,
    m: &'a Bimodule,
    variant: Variant,
    base: usize,
    walk: Option<Vec<usize>>,
    r: u64,
}

impl Cube<'_> {
    fn layout(&self, mask: u64) -> Layout {
        let n = self.g.vertices;
        let mut uf = UnionFind::new(n);
        for (e, &(u, w)) in self.g.edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                uf.union(u, w);
            }
        }
        let sweep: Vec<usize> = match &self.walk {
            Some(w) => w.clone(),
            None => (0..n).collect(),
        };
        let mut pos_of_root = vec![usize::MAX; n];
        let base_root = uf.find(self.base);
        pos_of_root[base_root] = 0;
        let mut k = 1;
        for v in sweep {
            let r = uf.find(v);
            if pos_of_root[r] == usize::MAX {
                pos_of_root[r] = k;
                k += 1;
            }
        }
        let pos = (0..n).map(|v| pos_of_root[uf.find(v)]).collect();
        Layout { pos, k }
    }

    fn encode(&self, factors: &[usize]) -> u64 {
        factors[1..].iter().fold(factors[0] as u64, |acc, &l| acc * self.r + l as u64)
    }

    fn decode(&self, mut code: u64, k: usize) -> Vec<usize> {
        let mut f = vec![0; k];
        for i in (1..k).rev() {
            f[i] = (code % self.r) as usize;
            code /= self.r;
        }
        f[0] = code as usize;
        f
    }

    /// `d_e` applied to the generator `factors` of state `mask`, as
    /// `(code in mask ∪ e, coefficient)` before the sign.
    fn face(&self, layouts: &[Layout], mask: u64, e: usize, factors: &[usize]) -> Vec<(u64, i64)> {
        let (u, w) = self.g.edges[e];
        let old = &layouts[mask as usize];
        let new = &layouts[(mask | 1 << e) as usize];
        let (pu, pw) = (old.pos[u], old.pos[w]);
        if pu == pw {
            return match self.variant {
                Variant::Phi => vec![(self.encode(factors), 1)],
                Variant::PhiHat => Vec::new(),
            };
        }
        // Tensor position in the new layout of each old position.
        let mut old_to_new = vec![usize::MAX; old.k];
        for v in 0..self.g.vertices {
            old_to_new[old.pos[v]] = new.pos[v];
        }
        let target = new.pos[u];
        let (x, y) = (factors[pu], factors[pw]);
        let merged: &Vec<(usize, i64)> = if pu == 0 {
            self.m.act_right(x, y)
        } else if pw == 0 {
            self.m.act_left(x, y)
        } else {
            self.a.basis_product(x, y)
        };
        let mut out = Vec::with_capacity(merged.len());
        let mut next = vec![0; new.k];
        for (i, &f) in factors.iter().enumerate() {
            if i != pu && i != pw {
                next[old_to_new[i]] = f;
            }
        }
        for &(z, c) in merged {
            next[target] = z;
            out.push((self.encode(&next), c));
        }
        out
    }
}

/// The cochain complex `C^i = ⊕_{|s|=i} Φ(s)`, split by total q-degree when
/// `A` and `M` are graded, certified in all degrees `0..=|E|`.
pub fn graph_cochain_complex(g: &Graph, a: &Algebra, m: &Bimodule, variant: Variant) -> Result<ChainComplex> {
    graph_cochain_complex_with(g, a, m, variant, Execution::default())
}

pub fn graph_cochain_complex_with(g: &Graph, a: &Algebra, m: &Bimodule, variant: Variant, exec: Execution) -> Result<ChainComplex> {
    g.validate()?;
    m.check_over(a)?;
    let e_count = g.edge_count();
    if e_count > MAX_EDGES {
        return Err(Error::Unsupported(format!("graphs with more than {MAX_EDGES} edges")));
    }
    if !matches!(m.kind(), ModuleKind::Regular) && g.base_vertex.is_none() {
        return Err(Error::InvalidGraph("a bimodule other than A needs a base vertex".into()));
    }
    let base = g.base_vertex.unwrap_or(0);
    let noncommutative = !a.is_commutative() || !m.is_symmetric();
    let walk = if g.directed { g.directed_walk(base) } else { None };
    if noncommutative {
        if walk.is_none() {
            return Err(Error::Unsupported("a noncommutative algebra or bimodule needs a directed line or polygon".into()));
        }
        if g.is_directed_polygon() && variant == Variant::Phi {
            return Err(Error::Unsupported("directed polygons over noncommutative data need the hat variant".into()));
        }
    }
    let graded = a.is_graded() && m.is_graded();
    let bound = a.truncation_bound();
    if bound.is_some() && !graded {
        return Err(Error::Unsupported("a truncated algebra needs a graded bimodule".into()));
    }
    let r = a.rank();
    let cube = Cube { g, a, m, variant, base, walk, r: r as u64 };
    let states = 1u64 << e_count;
    let layouts: Vec<Layout> = (0..states).map(|mask| cube.layout(mask)).collect();

    let a_deg = |i: usize| if graded { a.degree(i) } else { 0 };
    let m_deg = |j: usize| if graded { m.degree(j) } else { 0 };
    let prune = bound.filter(|_| (0..r).all(|i| a_deg(i) >= 0));
    let mut groups: BTreeMap<(i64, i64), Vec<(u64, u64)>> = BTreeMap::new();
    for mask in 0..states {
        let i = mask.count_ones() as i64;
        let k = layouts[mask as usize].k;
        (r as u64)
            .checked_pow(k as u32 - 1)
            .and_then(|x| x.checked_mul(m.rank().max(1) as u64))
            .ok_or(Error::Overflow("graph_cochain_complex"))?;
        let mut stack: Vec<(usize, u64, i64)> = (0..m.rank()).rev().map(|j| (1, j as u64, m_deg(j))).collect();
        while let Some((len, code, q)) = stack.pop() {
            if prune.is_some_and(|b| q > b) {
                continue;
            }
            if len == k {
                if bound.is_none_or(|b| q <= b) {
                    groups.entry((i, q)).or_default().push((mask, code));
                }
                continue;
            }
            for l in (0..r).rev() {
                stack.push((len + 1, code * r as u64 + l as u64, q + a_deg(l)));
            }
        }
    }
    for v in groups.values_mut() {
        v.sort_unstable();
    }

    let keys: Vec<(i64, i64)> = groups.keys().copied().filter(|(i, _)| (*i as usize) < e_count).collect();
    let blocks = par::try_map(exec, &keys, |&(i, q)| -> Result<((i64, i64), IntegerMatrix)> {
        let source = &groups[&(i, q)];
        let empty = Vec::new();
        let target = groups.get(&(i + 1, q)).unwrap_or(&empty);
        let mut columns = Vec::with_capacity(source.len());
        for &(mask, code) in source {
            let factors = cube.decode(code, layouts[mask as usize].k);
            let mut terms = Vec::new();
            for e in (0..e_count).filter(|e| mask >> e & 1 == 0) {
                let sign = if (mask & ((1u64 << e) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
                let to = mask | 1 << e;
                for (c, x) in cube.face(&layouts, mask, e, &factors) {
                    terms.push(((to, c), sign * x));
                }
            }
            let mut col = Vec::with_capacity(terms.len());
            for (key, c) in normalize(terms) {
                let row = target.binary_search(&key).map_err(|_| Error::GradingBroken { degree: i })?;
                col.push((row, Integer::from(c)));
            }
            col.sort_unstable_by_key(|(row, _)| *row);
            columns.push(col);
        }
        Ok(((i, q), IntegerMatrix::from_columns(target.len(), columns)))
    })?;
    let ranks = groups.iter().map(|(k, v)| (*k, v.len())).collect();
    ChainComplex::from_blocks(Direction::Cohomological, ranks, blocks.into_iter().collect(), 0..=e_count as i64)
}

pub fn graph_cohomology(g: &Graph, a: &Algebra, m: &Bimodule, variant: Variant) -> Result<BigradedHomology> {
    graph_cohomology_with(g, a, m, variant, Execution::default())
}

pub fn graph_cohomology_with(g: &Graph, a: &Algebra, m: &Bimodule, variant: Variant, exec: Execution) -> Result<BigradedHomology> {
    let c = graph_cochain_complex_with(g, a, m, variant, exec)?;
    complex_homology_with(&c, exec)
}

/// Chromatic polynomial by deletion and contraction; a loop gives zero.
pub fn chromatic_polynomial(g: &Graph) -> Poly {
    fn go(vertices: usize, edges: &[(usize, usize)]) -> Poly {
        let Some((&(u, w), rest)) = edges.split_last() else {
            return Poly::monomial(vertices, 1);
        };
        if u == w {
            return Poly::zero();
        }
        let deleted = go(vertices, rest);
        // Contract: merge w into u and relabel the last vertex as w.
        let last = vertices - 1;
        let relabel = |x: usize| {
            let x = if x == w { u } else { x };
            if x == last {
                w
            } else {
                x
            }
        };
        let contracted: Vec<(usize, usize)> = rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
        &deleted - &go(vertices - 1, &contracted)
    }
    go(g.vertices, &g.edges)
}

/// Both sides of the graded Euler characteristic identity, as polynomials in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    /// `Σ (-1)^i rank H^{i,j} q^j`.
    pub homology_side: Vec<Integer>,
    /// `P_G(Σ rank A_j q^j)`, truncated when `A` is.
    pub chromatic_side: Vec<Integer>,
    pub equal: bool,
}

pub fn euler_characteristic_check(g: &Graph, a: &Algebra) -> Result<EulerCheck> {
    let grading = a.grading().ok_or_else(|| Error::Unsupported("Euler characteristic check needs a graded algebra".into()))?;
    if grading.iter().any(|d| *d < 0) {
        return Err(Error::Unsupported("negative q-degrees".into()));
    }
    let h = graph_cohomology(&g.clone().with_base(g.base_vertex.unwrap_or(0)), a, &Bimodule::regular(a), Variant::Phi)?;
    let top = h.keys().map(|(_, q)| *q).max().unwrap_or(0).max(0) as usize;
    let mut lhs = vec![Integer::ZERO; top + 1];
    for (&(i, q), s) in &h {
        let term = Integer::from(s.free_rank as i64);
        if i % 2 == 0 {
            lhs[q as usize] += &term;
        } else {
            lhs[q as usize] -= &term;
        }
    }
    let mut lambda = vec![Integer::ZERO; *grading.iter().max().unwrap() as usize + 1];
    for &d in grading {
        lambda[d as usize] += &Integer::ONE;
    }
    let mut rhs = chromatic_polynomial(g).compose(&Poly::new(lambda));
    if let Some(b) = a.truncation_bound() {
        rhs = rhs.truncate(b as usize);
    }
    let lhs = Poly::new(lhs);
    Ok(EulerCheck { equal: lhs == rhs, homology_side: lhs.coeffs().to_vec(), chromatic_side: rhs.coeffs().to_vec() })
}

/// One bidegree of the comparison `Ĥ^{i,j}(P_{n+1}) = H_{n-i,j}(A, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonRow {
    pub i: i64,
    pub q: i64,
    pub graph: HomologySummary,
    pub hochschild: HomologySummary,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonComparison {
    pub algebra: String,
    pub module: String,
    pub n: usize,
    pub rows: Vec<PolygonRow>,
    pub all_equal: bool,
}

/// Compares the hat cohomology of the directed polygon `P_{n+1}` (base vertex
/// 0) with Hochschild homology for `0 < i <= n`.
pub fn verify_polygon_isomorphism(a: &Algebra, m: &Bimodule, n: usize) -> Result<PolygonComparison> {
    verify_polygon_isomorphism_with(a, m, n, Execution::default())
}

pub fn verify_polygon_isomorphism_with(a: &Algebra, m: &Bimodule, n: usize, exec: Execution) -> Result<PolygonComparison> {
    if n < 2 {
        return Err(Error::Unsupported("the polygon comparison needs n >= 2".into()));
    }
    let g = Graph::polygon(n + 1).with_base(0).into_directed();
    let gh = graph_cohomology_with(&g, a, m, Variant::PhiHat, exec)?;
    let hh = crate::hochschild::hochschild_homology_with(
        a,
        m,
        n,
        crate::hochschild::HochschildOptions { execution: exec, ..Default::default() },
    )?;
    let qs: Vec<i64> = gh.keys().chain(hh.keys()).map(|(_, q)| *q).sorted_unstable().dedup().collect();
    let mut rows = Vec::new();
    for i in 1..=n as i64 {
        for &q in &qs {
            let graph = gh.get(&(i, q)).cloned().unwrap_or_default();
            let hochschild = hh.get(&(n as i64 - i, q)).cloned().unwrap_or_default();
            if graph.is_zero() && hochschild.is_zero() {
                continue;
            }
            rows.push(PolygonRow { i, q, equal: graph == hochschild, graph, hochschild });
        }
    }
    Ok(PolygonComparison { algebra: a.name().to_string(), module: m.name().to_string(), n, all_equal: rows.iter().all(|r| r.equal), rows })
}
