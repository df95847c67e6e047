//! Khovanov-type cube complexes of signed plane graphs.
//!
//! A cube vertex is a set `B` of edges. Edge `e` is *banded* in `B` when it
//! is negative and in `B`, or positive and not in `B`; the banded edges `F`
//! are the state `s = (s_-, s_+) = (B ∩ E_-, E_+ \ B)` and the circles of the
//! smoothed diagram are the boundary components of the ribbon subgraph on
//! `F`. The differential adds one edge to `B`, which raises
//! `σ = |s_-| - |s_+|` by one and merges or splits circles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{normalize, Algebra, Bimodule};
use crate::complex::{complex_homology_with, BigradedHomology, ChainComplex, Direction};
use crate::error::{Error, Result};
use crate::graph::{graph_cohomology_with, spanning_state, Graph, UnionFind, Variant, MAX_EDGES};
use crate::integer::Integer;
use crate::linalg::{HomologySummary, IntegerMatrix};
use crate::par::{self, Execution};
use crate::poly::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "positive" => Ok(Sign::Plus),
            "-" | "minus" | "negative" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("unknown edge sign `{s}`"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A graph with signed edges and a planar rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPlaneGraph {
    graph: Graph,
    signs: Vec<Sign>,
    /// Counter-clockwise half-edges at each vertex; half-edge `2e` is the
    /// first endpoint of edge `e`, `2e + 1` the second.
    rotation: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignedGraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    signs: Option<Vec<Sign>>,
    /// Edge indices around each vertex, counter-clockwise; loops appear twice.
    #[serde(default)]
    rotation: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    base_vertex: Option<usize>,
    #[serde(default)]
    directed: bool,
}

/// Beyond this many candidate rotation systems the planar search gives up.
const ROTATION_SEARCH_LIMIT: u64 = 200_000;

impl SignedPlaneGraph {
    /// Uses the edge-index order around each vertex when that is planar and
    /// otherwise searches for a planar rotation.
    pub fn new(graph: Graph, signs: Vec<Sign>) -> Result<Self> {
        graph.validate()?;
        if signs.len() != graph.edge_count() {
            return Err(Error::InvalidGraph(format!("{} signs for {} edges", signs.len(), graph.edge_count())));
        }
        let default = default_rotation(&graph);
        let mut g = SignedPlaneGraph { graph, signs, rotation: default };
        if !g.is_planar() {
            g.rotation = g.search_planar_rotation()?;
        }
        Ok(g)
    }

    /// With an explicit rotation given as edge indices around each vertex.
    pub fn with_rotation(graph: Graph, signs: Vec<Sign>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let g0 = SignedPlaneGraph::new_unchecked(graph, signs)?;
        let rotation = half_edges_from_edges(&g0.graph, &rotation)?;
        let g = SignedPlaneGraph { rotation, ..g0 };
        if !g.is_planar() {
            return Err(Error::InvalidGraph("the rotation system is not planar".into()));
        }
        Ok(g)
    }

    fn new_unchecked(graph: Graph, signs: Vec<Sign>) -> Result<Self> {
        graph.validate()?;
        if signs.len() != graph.edge_count() {
            return Err(Error::InvalidGraph("one sign per edge is needed".into()));
        }
        let rotation = default_rotation(&graph);
        Ok(SignedPlaneGraph { graph, signs, rotation })
    }

    pub fn all_negative(graph: Graph) -> Result<Self> {
        let signs = vec![Sign::Minus; graph.edge_count()];
        SignedPlaneGraph::new(graph, signs)
    }

    /// Tait graph of the standard diagram of the torus link `T(2, n)`: the
    /// `|n|`-gon, all edges negative for `n < 0` and positive for `n > 0`.
    pub fn torus(p: i64, n: i64) -> Result<Self> {
        if p != 2 {
            return Err(Error::Unsupported("only T(2, n) torus links".into()));
        }
        if n == 0 {
            return SignedPlaneGraph::new(Graph::edgeless(1), Vec::new());
        }
        let sign = if n < 0 { Sign::Minus } else { Sign::Plus };
        let g = Graph::polygon(n.unsigned_abs() as usize);
        SignedPlaneGraph::new(g.clone(), vec![sign; g.edge_count()])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: SignedGraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = Graph { vertices: j.vertices, edges: j.edges, base_vertex: j.base_vertex, directed: j.directed };
        let signs = j.signs.unwrap_or_else(|| vec![Sign::Minus; graph.edge_count()]);
        match j.rotation {
            Some(r) => SignedPlaneGraph::with_rotation(graph, signs, r),
            None => SignedPlaneGraph::new(graph, signs),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn positive_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Plus).count()
    }

    pub fn is_all_negative(&self) -> bool {
        self.signs.iter().all(|s| *s == Sign::Minus)
    }

    /// The same signed graph with edge `k` equal to edge `order[k]` of `self`.
    pub fn reorder_edges(&self, order: &[usize]) -> Result<Self> {
        let mut new_index = vec![0; order.len()];
        for (k, &old) in order.iter().enumerate() {
            new_index[old] = k;
        }
        let rotation = self.rotation.iter().map(|hs| hs.iter().map(|h| 2 * new_index[h / 2] + h % 2).collect()).collect();
        Ok(SignedPlaneGraph { graph: self.graph.reorder_edges(order), signs: order.iter().map(|&k| self.signs[k]).collect(), rotation })
    }

    fn banded(&self, b_mask: u64, e: usize) -> bool {
        let in_b = b_mask >> e & 1 == 1;
        match self.signs[e] {
            Sign::Minus => in_b,
            Sign::Plus => !in_b,
        }
    }

    fn banded_mask(&self, b_mask: u64) -> u64 {
        (0..self.edge_count()).filter(|&e| self.banded(b_mask, e)).fold(0, |m, e| m | 1 << e)
    }

    fn corner_offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.graph.vertices);
        let mut total = 0;
        for hs in &self.rotation {
            offsets.push(total);
            total += hs.len().max(1);
        }
        (offsets, total)
    }

    /// Circle index of every corner when the edges in `banded` carry bands;
    /// circles are numbered by their smallest corner.
    fn trace(&self, banded: u64) -> (Vec<usize>, usize) {
        let (offsets, total) = self.corner_offsets();
        let mut uf = UnionFind::new(total);
        // Corner `offsets[v] + i` lies between half-edges i and i + 1 at v.
        let mut around = vec![(0usize, 0usize); 2 * self.edge_count()];
        for (v, hs) in self.rotation.iter().enumerate() {
            let d = hs.len();
            for (i, &h) in hs.iter().enumerate() {
                let before = offsets[v] + (i + d - 1) % d;
                let after = offsets[v] + i;
                around[h] = (before, after);
            }
        }
        for e in 0..self.edge_count() {
            let (bu, au) = around[2 * e];
            let (bw, aw) = around[2 * e + 1];
            if banded >> e & 1 == 1 {
                uf.union(au, bw);
                uf.union(bu, aw);
            } else {
                uf.union(bu, au);
                uf.union(bw, aw);
            }
        }
        let mut label = vec![usize::MAX; total];
        let mut count = 0;
        let of = (0..total)
            .map(|c| {
                let r = uf.find(c);
                if label[r] == usize::MAX {
                    label[r] = count;
                    count += 1;
                }
                label[r]
            })
            .collect();
        (of, count)
    }

    /// Faces of the embedding match Euler's formula.
    fn is_planar(&self) -> bool {
        let all = (1u64 << self.edge_count()) - 1;
        self.trace(all).1 == circles_by_formula(&self.graph, all)
    }

    fn search_planar_rotation(&self) -> Result<Vec<Vec<usize>>> {
        let base = default_rotation(&self.graph);
        let mut candidates: u64 = 1;
        for hs in &base {
            for k in 2..hs.len() as u64 {
                candidates = candidates.saturating_mul(k);
            }
        }
        if candidates > ROTATION_SEARCH_LIMIT {
            return Err(Error::InvalidGraph("no planar rotation given and the search space is too large".into()));
        }
        let mut rotation = base.clone();
        if self.try_rotations(0, &base, &mut rotation) {
            Ok(rotation)
        } else {
            Err(Error::InvalidGraph("graph is not planar".into()))
        }
    }

    fn try_rotations(&self, v: usize, base: &[Vec<usize>], current: &mut Vec<Vec<usize>>) -> bool {
        if v == base.len() {
            let g = SignedPlaneGraph { rotation: current.clone(), ..self.clone() };
            return g.is_planar();
        }
        let hs = &base[v];
        if hs.len() <= 2 {
            current[v] = hs.clone();
            return self.try_rotations(v + 1, base, current);
        }
        // Fix the first half-edge; permute the rest.
        let mut rest: Vec<usize> = hs[1..].to_vec();
        rest.sort_unstable();
        loop {
            let mut order = vec![hs[0]];
            order.extend_from_slice(&rest);
            current[v] = order;
            if self.try_rotations(v + 1, base, current) {
                return true;
            }
            if !next_permutation(&mut rest) {
                return false;
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn default_rotation(g: &Graph) -> Vec<Vec<usize>> {
    let mut rot = vec![Vec::new(); g.vertices];
    for (e, &(u, w)) in g.edges.iter().enumerate() {
        rot[u].push(2 * e);
        rot[w].push(2 * e + 1);
    }
    rot
}

fn half_edges_from_edges(g: &Graph, rotation: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    if rotation.len() != g.vertices {
        return Err(Error::InvalidGraph("rotation needs one list per vertex".into()));
    }
    let mut used = vec![false; 2 * g.edge_count()];
    let mut out = Vec::with_capacity(g.vertices);
    for (v, es) in rotation.iter().enumerate() {
        let mut hs = Vec::with_capacity(es.len());
        for &e in es {
            let &(a, b) = g.edges.get(e).ok_or_else(|| Error::InvalidGraph(format!("rotation names edge {e}")))?;
            let h = if a == v && !used[2 * e] {
                2 * e
            } else if b == v && !used[2 * e + 1] {
                2 * e + 1
            } else {
                return Err(Error::InvalidGraph(format!("edge {e} is not incident to vertex {v} here")));
            };
            used[h] = true;
            hs.push(h);
        }
        out.push(hs);
    }
    if used.iter().any(|u| !u) {
        return Err(Error::InvalidGraph("rotation misses some edge ends".into()));
    }
    Ok(out)
}

fn circles_by_formula(g: &Graph, banded: u64) -> usize {
    let f: Vec<usize> = (0..g.edge_count()).filter(|e| banded >> e & 1 == 1).collect();
    let k = spanning_state(g, &f).k();
    2 * k + f.len() - g.vertices
}

/// A cube vertex in superset form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersetState {
    pub s_plus: Vec<usize>,
    pub s_minus: Vec<usize>,
}

impl SupersetState {
    pub fn sigma(&self) -> i64 {
        self.s_minus.len() as i64 - self.s_plus.len() as i64
    }

    /// The state reached from the edge set `b`: `s_- = B ∩ E_-`, `s_+ = E_+ \ B`.
    pub fn from_bset(g: &SignedPlaneGraph, b: &[usize]) -> SupersetState {
        let mask = b.iter().fold(0u64, |m, e| m | 1 << e);
        let s_minus = (0..g.edge_count()).filter(|&e| g.signs[e] == Sign::Minus && mask >> e & 1 == 1).collect();
        let s_plus = (0..g.edge_count()).filter(|&e| g.signs[e] == Sign::Plus && mask >> e & 1 == 0).collect();
        SupersetState { s_plus, s_minus }
    }
}

/// Number of circles of the smoothing `s`: `2 k([G:F]) + |F| - |V|` with
/// `F = s_- ∪ s_+`.
pub fn circle_count(g: &SignedPlaneGraph, s: &SupersetState) -> usize {
    let banded = s.s_minus.iter().chain(&s.s_plus).fold(0u64, |m, e| m | 1 << e);
    circles_by_formula(&g.graph, banded)
}

enum Move {
    /// Old circles `x` and `y` merge into new circle `into`.
    Merge { x: usize, y: usize, into: usize },
    /// Old circle `from` splits into new circles `first < second`.
    Split { from: usize, first: usize, second: usize },
}

struct Edge {
    to: u64,
    sign: i64,
    /// New index of each old circle not involved in the move.
    relabel: Vec<usize>,
    kind: Move,
}

fn cube_edge(old: &(Vec<usize>, usize), new: &(Vec<usize>, usize), to: u64, sign: i64) -> Result<Edge> {
    let (old_of, old_n) = old;
    let (new_of, new_n) = new;
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); *old_n];
    for (c, &o) in old_of.iter().enumerate() {
        let n = new_of[c];
        if !images[o].contains(&n) {
            images[o].push(n);
        }
    }
    let mut relabel = vec![usize::MAX; *old_n];
    let kind = if new_n + 1 == *old_n {
        let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); *new_n];
        for (o, im) in images.iter().enumerate() {
            if im.len() != 1 {
                return Err(Error::InvalidGraph("circle correspondence is not a merge".into()));
            }
            preimages[im[0]].push(o);
            relabel[o] = im[0];
        }
        let into = preimages.iter().position(|p| p.len() == 2).ok_or_else(|| Error::InvalidGraph("no merged circle".into()))?;
        Move::Merge { x: preimages[into][0], y: preimages[into][1], into }
    } else if *new_n == old_n + 1 {
        let from = images.iter().position(|im| im.len() == 2).ok_or_else(|| Error::InvalidGraph("no split circle".into()))?;
        for (o, im) in images.iter().enumerate() {
            if o != from {
                relabel[o] = im[0];
            }
        }
        let (first, second) = (images[from][0].min(images[from][1]), images[from][0].max(images[from][1]));
        Move::Split { from, first, second }
    } else {
        return Err(Error::InvalidGraph("adjacent smoothings must differ by one circle".into()));
    };
    Ok(Edge { to, sign, relabel, kind })
}

struct Cube<'a> {
    a: &'a Algebra,
    r: u64,
    circles: Vec<(Vec<usize>, usize)>,
}

impl Cube<'_> {
    fn decode(&self, mut code: u64, c: usize) -> Vec<usize> {
        let mut f = vec![0; c];
        for i in (0..c).rev() {
            f[i] = (code % self.r) as usize;
            code /= self.r;
        }
        f
    }

    fn encode(&self, labels: &[usize]) -> u64 {
        labels.iter().fold(0, |acc, &l| acc * self.r + l as u64)
    }

    fn apply(&self, edge: &Edge, labels: &[usize]) -> Vec<(u64, i64)> {
        let n = self.circles[edge.to as usize].1;
        let mut next = vec![0; n];
        for (o, &l) in labels.iter().enumerate() {
            if edge.relabel[o] != usize::MAX {
                next[edge.relabel[o]] = l;
            }
        }
        let mut out = Vec::new();
        match edge.kind {
            Move::Merge { x, y, into } => {
                for &(z, c) in self.a.basis_product(labels[x], labels[y]) {
                    next[into] = z;
                    out.push((self.encode(&next), c));
                }
            }
            Move::Split { from, first, second } => {
                let f = self.a.frobenius().expect("checked by the caller");
                for &(i, j, c) in f.coproduct(labels[from]) {
                    next[first] = i;
                    next[second] = j;
                    out.push((self.encode(&next), c));
                }
            }
        }
        out
    }
}

/// The q-grading of a generator: `2 Σ deg(labels) - T (c + |B|)` with `T`
/// the degree of the coproduct; zero for ungraded algebras.
fn internal_q(a: &Algebra, labels_degree: i64, circles: usize, b_size: usize) -> i64 {
    match (a.is_graded(), a.frobenius().and_then(|f| f.coproduct_degree())) {
        (true, Some(t)) => 2 * labels_degree - t * (circles + b_size) as i64,
        _ => 0,
    }
}

/// The cube complex with `C^σ = ⊕_{σ(s) = σ} A^{⊗ circles(s)}`, keyed by
/// `(σ, q)` with `q` the internal grading (zero when `A` is ungraded).
pub fn khovanov_complex(g: &SignedPlaneGraph, a: &Algebra) -> Result<ChainComplex> {
    khovanov_complex_with(g, a, Execution::default())
}

pub fn khovanov_complex_with(g: &SignedPlaneGraph, a: &Algebra, exec: Execution) -> Result<ChainComplex> {
    let f = a.frobenius().ok_or(Error::NotFrobenius)?;
    if !a.is_commutative() {
        return Err(Error::Unsupported("the cube needs a commutative Frobenius algebra".into()));
    }
    let cocommutative = (0..a.rank()).all(|k| {
        let mut d = f.coproduct(k).to_vec();
        let mut swapped: Vec<_> = d.iter().map(|&(i, j, c)| (j, i, c)).collect();
        d.sort_unstable();
        swapped.sort_unstable();
        d == swapped
    });
    if !cocommutative {
        return Err(Error::Unsupported("the cube needs a cocommutative coproduct".into()));
    }
    let e_count = g.edge_count();
    if e_count > MAX_EDGES {
        return Err(Error::Unsupported(format!("graphs with more than {MAX_EDGES} edges")));
    }
    let states = 1u64 << e_count;
    let circles: Vec<(Vec<usize>, usize)> = (0..states).map(|b| g.trace(g.banded_mask(b))).collect();
    let r = a.rank();
    let positive = g.positive_count() as i64;
    let sigma = |b: u64| b.count_ones() as i64 - positive;

    let mut groups: BTreeMap<(i64, i64), Vec<(u64, u64)>> = BTreeMap::new();
    for b in 0..states {
        let c = circles[b as usize].1;
        (r as u64).checked_pow(c as u32).ok_or(Error::Overflow("khovanov_complex"))?;
        let mut stack: Vec<(usize, u64, i64)> = vec![(0, 0, 0)];
        while let Some((len, code, deg)) = stack.pop() {
            if len == c {
                let q = internal_q(a, deg, c, b.count_ones() as usize);
                groups.entry((sigma(b), q)).or_default().push((b, code));
                continue;
            }
            for l in 0..r {
                stack.push((len + 1, code * r as u64 + l as u64, deg + a.degree(l)));
            }
        }
    }
    for v in groups.values_mut() {
        v.sort_unstable();
    }
    let mut edges: Vec<Vec<(usize, Edge)>> = Vec::with_capacity(states as usize);
    for b in 0..states {
        let mut out = Vec::new();
        for e in (0..e_count).filter(|e| b >> e & 1 == 0) {
            let to = b | 1 << e;
            let sign = if (b & ((1u64 << e) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            out.push((e, cube_edge(&circles[b as usize], &circles[to as usize], to, sign)?));
        }
        edges.push(out);
    }
    let cube = Cube { a, r: r as u64, circles };

    let top = e_count as i64 - positive;
    let keys: Vec<(i64, i64)> = groups.keys().copied().filter(|(s, _)| *s < top).collect();
    let blocks = par::try_map(exec, &keys, |&(s, q)| -> Result<((i64, i64), IntegerMatrix)> {
        let source = &groups[&(s, q)];
        let empty = Vec::new();
        let target = groups.get(&(s + 1, q)).unwrap_or(&empty);
        let mut columns = Vec::with_capacity(source.len());
        for &(b, code) in source {
            let labels = cube.decode(code, cube.circles[b as usize].1);
            let mut terms = Vec::new();
            for (_, edge) in &edges[b as usize] {
                for (c, x) in cube.apply(edge, &labels) {
                    terms.push(((edge.to, c), edge.sign * x));
                }
            }
            let mut col = Vec::with_capacity(terms.len());
            for (key, c) in normalize(terms) {
                let row = target.binary_search(&key).map_err(|_| Error::GradingBroken { degree: s })?;
                col.push((row, Integer::from(c)));
            }
            col.sort_unstable_by_key(|(row, _)| *row);
            columns.push(col);
        }
        Ok(((s, q), IntegerMatrix::from_columns(target.len(), columns)))
    })?;
    let ranks = groups.iter().map(|(k, v)| (*k, v.len())).collect();
    ChainComplex::from_blocks(Direction::Cohomological, ranks, blocks.into_iter().collect(), -positive..=top)
}

/// Homology of the cube keyed by `(σ, q)`, for any admissible Frobenius algebra.
pub fn khovanov_homology_sigma(g: &SignedPlaneGraph, a: &Algebra, exec: Execution) -> Result<BigradedHomology> {
    complex_homology_with(&khovanov_complex_with(g, a, exec)?, exec)
}

/// Khovanov homology over `A_2` in the `(a, b)` bigrading with
/// `a = E - 2|B|` and `b = E + 2q`; in particular `b = a + 2(#x - #1)` on
/// enhanced states.
pub fn khovanov_homology(g: &SignedPlaneGraph, a: &Algebra) -> Result<BigradedHomology> {
    khovanov_homology_with(g, a, Execution::default())
}

pub fn khovanov_homology_with(g: &SignedPlaneGraph, a: &Algebra, exec: Execution) -> Result<BigradedHomology> {
    if !a.is_khovanov_algebra() {
        return Err(Error::Unsupported(format!("the (a, b) bigrading is defined over A_2 only, not {}", a.name())));
    }
    let h = khovanov_homology_sigma(g, a, exec)?;
    let e = g.edge_count() as i64;
    let positive = g.positive_count() as i64;
    Ok(h.into_iter().map(|((sigma, q), s)| ((e - 2 * (sigma + positive), e + 2 * q), s)).collect())
}

/// Graph-cohomology bidegree `(i, j)` to Khovanov bidegree `(a, b)`.
pub fn regrade_tait(i: i64, j: i64, e: i64, v: i64) -> (i64, i64) {
    (e - 2 * i, e - 2 * v + 4 * j)
}

/// Homology of the mirror image: free part at `(-a, -b)` from `(a, b)` and
/// torsion at `(-a, -b)` from `(a - 2, b)`.
pub fn mirror_dual(h: &BigradedHomology) -> BigradedHomology {
    let mut out: BigradedHomology = BTreeMap::new();
    for (&(a, b), s) in h {
        if s.free_rank > 0 {
            out.entry((-a, -b)).or_default().free_rank += s.free_rank;
        }
        if !s.torsion.is_empty() {
            out.entry((-(a + 2), -b)).or_default().torsion = s.torsion.clone();
        }
    }
    out
}

/// One compared bidegree of the graph-to-link dictionary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryRow {
    pub i: i64,
    pub j: i64,
    pub a: i64,
    pub b: i64,
    pub graph: HomologySummary,
    pub khovanov: HomologySummary,
    /// Whether only torsion is compared here.
    pub torsion_only: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryReport {
    pub girth: Option<usize>,
    pub rows: Vec<DictionaryRow>,
    pub all_equal: bool,
}

/// Compares `H^{i,j}_{A_2}(G)` with `H_{a,b}(D(G))` through [`regrade_tait`]:
/// full isomorphism for `i < ℓ - 1` and equal torsion at `i = ℓ - 1`, where
/// `ℓ` is the girth.
pub fn verify_tait_dictionary(g: &SignedPlaneGraph) -> Result<DictionaryReport> {
    verify_tait_dictionary_with(g, Execution::default())
}

pub fn verify_tait_dictionary_with(g: &SignedPlaneGraph, exec: Execution) -> Result<DictionaryReport> {
    if !g.is_all_negative() {
        return Err(Error::Unsupported("the dictionary is stated for all-negative graphs".into()));
    }
    let a2 = Algebra::truncated(2)?;
    let graph = g.graph().clone();
    let gh = graph_cohomology_with(&graph, &a2, &Bimodule::regular(&a2), Variant::Phi, exec)?;
    let kh = khovanov_homology_with(g, &a2, exec)?;
    let e = graph.edge_count() as i64;
    let v = graph.vertices as i64;
    let girth = graph.girth();
    let limit = girth.map_or(i64::MAX, |l| l as i64 - 1);
    let mut keys: Vec<(i64, i64)> = gh.keys().copied().collect();
    for &(a, b) in kh.keys() {
        if (e - a) % 2 == 0 && (b - e + 2 * v) % 4 == 0 {
            keys.push(((e - a) / 2, (b - e + 2 * v) / 4));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let mut rows = Vec::new();
    for (i, j) in keys {
        if i > limit {
            continue;
        }
        let (a, b) = regrade_tait(i, j, e, v);
        let gs = gh.get(&(i, j)).cloned().unwrap_or_default();
        let ks = kh.get(&(a, b)).cloned().unwrap_or_default();
        if gs.is_zero() && ks.is_zero() {
            continue;
        }
        let torsion_only = i == limit;
        let equal = if torsion_only { gs.torsion == ks.torsion } else { gs == ks };
        rows.push(DictionaryRow { i, j, a, b, graph: gs, khovanov: ks, torsion_only, equal });
    }
    // Khovanov groups that cannot come from any graph bidegree must vanish below the limit.
    let stray = kh.iter().any(|(&(a, b), s)| !s.is_zero() && ((e - a) % 2 != 0 || (b - e + 2 * v) % 4 != 0) && (e - a) / 2 < limit);
    Ok(DictionaryReport { girth, all_equal: !stray && rows.iter().all(|r| r.equal), rows })
}

/// Both sides of the graded Euler characteristic identity over `A_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KauffmanCheck {
    pub homology_side: String,
    pub state_sum: String,
    pub equal: bool,
}

/// `Σ (-1)^σ rank H^{σ,q} t^q` against the state sum
/// `Σ_B (-1)^{σ(B)} q^{-|B|} (q + q^{-1})^{circles(B)}`, circles counted by
/// the components-and-nullity formula.
pub fn kauffman_check(g: &SignedPlaneGraph) -> Result<KauffmanCheck> {
    let a2 = Algebra::truncated(2)?;
    let h = khovanov_homology_sigma(g, &a2, Execution::default())?;
    let mut lhs = LaurentPoly::default();
    for (&(sigma, q), s) in &h {
        let sign: i64 = if sigma.rem_euclid(2) == 0 { 1 } else { -1 };
        lhs.add_term(q, &Integer::from(sign * s.free_rank as i64));
    }
    let mut rhs = LaurentPoly::default();
    let loop_value = LaurentPoly::monomial(1, Integer::ONE).add(&LaurentPoly::monomial(-1, Integer::ONE));
    let e = g.edge_count();
    let positive = g.positive_count() as i64;
    for b in 0..1u64 << e {
        let edges: Vec<usize> = (0..e).filter(|k| b >> k & 1 == 1).collect();
        let c = circle_count(g, &SupersetState::from_bset(g, &edges));
        let sigma = b.count_ones() as i64 - positive;
        let sign = if sigma.rem_euclid(2) == 0 { Integer::ONE } else { Integer::from(-1) };
        let term = LaurentPoly::monomial(-(b.count_ones() as i64), sign).mul(&loop_value.pow(c));
        rhs = rhs.add(&term);
    }
    Ok(KauffmanCheck { equal: lhs == rhs, homology_side: lhs.display_in("q"), state_sum: rhs.display_in("q") })
}

/// Checks that adding any single edge to any cube vertex changes the circle
/// count by exactly one.
pub fn circle_steps_are_unit(g: &SignedPlaneGraph) -> bool {
    let e = g.edge_count();
    (0..1u64 << e).all(|b| {
        let count = |mask: u64| {
            let edges: Vec<usize> = (0..e).filter(|k| mask >> k & 1 == 1).collect();
            circle_count(g, &SupersetState::from_bset(g, &edges)) as i64
        };
        let c = count(b);
        (0..e).filter(|k| b >> k & 1 == 0).all(|k| (count(b | 1 << k) - c).abs() == 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::nonzero;

    fn torsion_points(h: &BigradedHomology) -> Vec<((i64, i64), Vec<Integer>)> {
        h.iter().filter(|(_, s)| !s.torsion.is_empty()).map(|(k, s)| (*k, s.torsion.clone())).collect()
    }

    #[test]
    fn circles_of_polygons() {
        let t = SignedPlaneGraph::torus(2, -3).unwrap();
        assert_eq!(circle_count(&t, &SupersetState::from_bset(&t, &[])), 3);
        assert_eq!(circle_count(&t, &SupersetState::from_bset(&t, &[0, 1, 2])), 2);
        for n in 1..=5usize {
            let g = SignedPlaneGraph::torus(2, -(n as i64)).unwrap();
            for b in 0u64..1 << n {
                let s: Vec<usize> = (0..n).filter(|k| b >> k & 1 == 1).collect();
                let traced = g.trace(g.banded_mask(b)).1;
                let expect = if s.len() < n { n - s.len() } else { 2 };
                assert_eq!(circle_count(&g, &SupersetState::from_bset(&g, &s)), expect);
                assert_eq!(traced, expect);
            }
            assert!(circle_steps_are_unit(&g));
        }
        let point = SignedPlaneGraph::new(Graph::edgeless(1), Vec::new()).unwrap();
        assert_eq!(circle_count(&point, &SupersetState::from_bset(&point, &[])), 1);
    }

    #[test]
    fn trefoil_cube_ranks_and_torsion() {
        let a2 = Algebra::truncated(2).unwrap();
        let g = SignedPlaneGraph::torus(2, -3).unwrap();
        let c = khovanov_complex(&g, &a2).unwrap();
        let ranks: Vec<usize> = (0..=3).map(|s| c.total_rank(s)).collect();
        assert_eq!(ranks, vec![8, 12, 6, 4]);
        c.check_square_zero().unwrap();
        let h = khovanov_homology(&g, &a2).unwrap();
        assert_eq!(torsion_points(&h), vec![((1, 5), vec![Integer::from(2)])]);
    }

    #[test]
    fn hopf_free_four_crossing_torsion() {
        let a2 = Algebra::truncated(2).unwrap();
        let h = khovanov_homology(&SignedPlaneGraph::torus(2, -4).unwrap(), &a2).unwrap();
        assert_eq!(torsion_points(&h), vec![((0, 4), vec![Integer::from(2)])]);
    }

    #[test]
    fn unknot_diagrams() {
        let a2 = Algebra::truncated(2).unwrap();
        let point = SignedPlaneGraph::new(Graph::edgeless(1), Vec::new()).unwrap();
        let h = nonzero(&khovanov_homology(&point, &a2).unwrap());
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![(0, -2), (0, 2)]);
        // One crossing, one negative edge: A⊗A --μ--> A.
        let one = SignedPlaneGraph::all_negative(Graph::line(1)).unwrap();
        let c = khovanov_complex(&one, &a2).unwrap();
        assert_eq!((c.total_rank(0), c.total_rank(1)), (4, 2));
        let h = nonzero(&khovanov_homology(&one, &a2).unwrap());
        assert_eq!(h.values().map(|s| s.free_rank).sum::<usize>(), 2);
        assert!(h.values().all(|s| s.torsion.is_empty()));
    }

    #[test]
    fn a3_cube_squares_to_zero() {
        let a3 = Algebra::truncated(3).unwrap();
        khovanov_complex(&SignedPlaneGraph::torus(2, -5).unwrap(), &a3).unwrap().check_square_zero().unwrap();
        let mixed = SignedPlaneGraph::new(Graph::polygon(4), vec![Sign::Minus, Sign::Plus, Sign::Minus, Sign::Plus]).unwrap();
        khovanov_complex(&mixed, &a3).unwrap().check_square_zero().unwrap();
    }

    #[test]
    fn regrading_examples() {
        assert_eq!(regrade_tait(1, 2, 3, 3), (1, 5));
        assert_eq!(regrade_tait(0, 0, 4, 4), (4, -4));
        assert_eq!(regrade_tait(2, 4, 5, 5), (1, 11));
    }

    #[test]
    fn mirror_of_left_trefoil() {
        let a2 = Algebra::truncated(2).unwrap();
        let h = khovanov_homology(&SignedPlaneGraph::torus(2, -3).unwrap(), &a2).unwrap();
        let m = mirror_dual(&nonzero(&h));
        assert_eq!(torsion_points(&m), vec![((-3, -5), vec![Integer::from(2)])]);
        let right = nonzero(&khovanov_homology(&SignedPlaneGraph::torus(2, 3).unwrap(), &a2).unwrap());
        assert_eq!(m, right);
    }

    #[test]
    fn dictionary_on_small_graphs() {
        for n in 3..=5 {
            let r = verify_tait_dictionary(&SignedPlaneGraph::torus(2, -n).unwrap()).unwrap();
            assert!(r.all_equal, "n = {n}: {r:?}");
        }
        let line = verify_tait_dictionary(&SignedPlaneGraph::all_negative(Graph::line(2)).unwrap()).unwrap();
        assert!(line.all_equal && line.girth.is_none());
        let theta = verify_tait_dictionary(&SignedPlaneGraph::all_negative(Graph::theta(3)).unwrap()).unwrap();
        assert_eq!(theta.girth, Some(2));
        assert!(theta.all_equal, "{theta:?}");
    }

    #[test]
    fn kauffman_state_sum() {
        for n in 1..=5 {
            assert!(kauffman_check(&SignedPlaneGraph::torus(2, -n).unwrap()).unwrap().equal);
        }
    }

    #[test]
    fn theta_needs_a_planar_rotation() {
        let g = SignedPlaneGraph::all_negative(Graph::theta(3)).unwrap();
        assert!(g.is_planar());
        assert!(circle_steps_are_unit(&g));
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let g = SignedPlaneGraph::all_negative(k4).unwrap();
        assert!(g.is_planar());
        let a2 = Algebra::truncated(2).unwrap();
        khovanov_complex(&g, &a2).unwrap().check_square_zero().unwrap();
    }

    #[test]
    fn reordering_edges_keeps_homology() {
        let a2 = Algebra::truncated(2).unwrap();
        let g = SignedPlaneGraph::torus(2, -4).unwrap();
        let h = nonzero(&khovanov_homology(&g, &a2).unwrap());
        let r = g.reorder_edges(&[2, 0, 3, 1]).unwrap();
        assert_eq!(nonzero(&khovanov_homology(&r, &a2).unwrap()), h);
    }

    #[test]
    fn non_khovanov_algebra_is_refused_for_ab() {
        let a3 = Algebra::truncated(3).unwrap();
        let g = SignedPlaneGraph::torus(2, -3).unwrap();
        assert!(khovanov_homology(&g, &a3).is_err());
        assert!(khovanov_homology_sigma(&g, &a3, Execution::Sequential).is_ok());
        let ut = Algebra::upper_triangular(2).unwrap();
        assert!(matches!(khovanov_complex(&g, &ut), Err(Error::NotFrobenius)));
    }

    #[test]
    fn json_input() {
        let g = SignedPlaneGraph::from_json(r#"{"vertices": 3, "edges": [[0,1],[1,2],[2,0]], "signs": ["-","-","-"]}"#).unwrap();
        assert_eq!(g, SignedPlaneGraph::torus(2, -3).unwrap());
        assert!(SignedPlaneGraph::from_json(r#"{"vertices": 2, "edges": [[0,1]], "signs": ["?"]}"#).is_err());
    }
}
