//! Vertex-colored graphs and their clique complexes.

use crate::combinatorics::binom;
use crate::error::{invalid, Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Fixed-width bitset over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    /// Keep only indices strictly above `v`.
    fn above(&self, v: usize) -> Bits {
        let mut out = self.clone();
        let w = v / 64;
        for x in out.0.iter_mut().take(w) {
            *x = 0;
        }
        let shift = v % 64 + 1;
        out.0[w] &= if shift == 64 { 0 } else { !0u64 << shift };
        out
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    fn grow(&mut self, n: usize) {
        self.0.resize(n.div_ceil(64), 0);
    }
}

/// Simple graph with a color on every vertex. Colors are `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoredGraph {
    adj: Vec<Bits>,
    colors: Vec<u32>,
    palette: u32,
}

impl VertexColoredGraph {
    pub fn new(palette: u32) -> Self {
        VertexColoredGraph { adj: Vec::new(), colors: Vec::new(), palette }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    /// Allow colors up to `palette - 1` even if unused.
    pub fn widen_palette(&mut self, palette: u32) {
        self.palette = self.palette.max(palette);
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn add_vertex(&mut self, color: u32) -> usize {
        let n = self.colors.len() + 1;
        for row in &mut self.adj {
            row.grow(n);
        }
        self.adj.push(Bits::new(n));
        self.colors.push(color);
        self.palette = self.palette.max(color + 1);
        n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.adj[u].set(v);
        self.adj[v].set(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.adj[u].above(u).ones().map(move |v| (u, v)).collect::<Vec<_>>())
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|b| b.count() as usize).sum::<usize>() / 2
    }

    /// No edge joins two vertices of the same color.
    pub fn is_properly_colored(&self) -> bool {
        self.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn from_edges(colors: Vec<u32>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = VertexColoredGraph::new(0);
        for &c in &colors {
            g.add_vertex(c);
        }
        let n = g.vertex_count();
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return invalid(format!("bad edge ({u}, {v}) for {n} vertices"));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            colors: self.colors.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_file(f: &GraphFile) -> Result<Self> {
        let edges: Vec<_> = f.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(f.colors.clone(), &edges)
    }

    /// Plain-text form: `#colors c0 c1 ...` then one `u v` line per edge.
    pub fn to_edgelist(&self) -> String {
        let mut s = String::from("#colors");
        for c in &self.colors {
            s.push_str(&format!(" {c}"));
        }
        s.push('\n');
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edgelist(text: &str) -> Result<Self> {
        let mut colors = None;
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("#colors") {
                let cs: std::result::Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
                colors = Some(cs.map_err(|e| Error::Parse(format!("colors line: {e}")))?);
            } else if line.starts_with('#') {
                continue;
            } else {
                let mut it = line.split_whitespace().map(str::parse::<usize>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u.min(v), u.max(v))),
                    _ => return Err(Error::Parse(format!("bad edge line: {line}"))),
                }
            }
        }
        let colors = colors.ok_or_else(|| Error::Parse("missing #colors header".into()))?;
        Self::from_edges(colors, &edges)
    }

    /// Induced subgraph on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = VertexColoredGraph::new(self.palette);
        for &v in keep {
            g.add_vertex(self.colors[v]);
        }
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// On-disk graph format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub colors: Vec<u32>,
    pub edges: Vec<[usize; 2]>,
}

/// Complete multipartite graph; vertices of part `i` get color `i`, listed
/// part by part.
pub fn build_multipartite(parts: &[u64]) -> VertexColoredGraph {
    let mut g = VertexColoredGraph::new(parts.len() as u32);
    let mut start = Vec::new();
    for (c, &size) in parts.iter().enumerate() {
        start.push(g.vertex_count());
        for _ in 0..size {
            g.add_vertex(c as u32);
        }
    }
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if g.colors[u] != g.colors[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `(f_{-1}, f_0, ..., f_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceVector(#[serde(with = "crate::bigjson::vec")] pub Vec<BigUint>);

impl FaceVector {
    pub fn from_u64(v: &[u64]) -> Self {
        FaceVector(v.iter().map(|&x| BigUint::from(x)).collect())
    }

    /// Drop trailing zero entries so the last entry is the top dimension.
    pub fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|x| x.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Number of vertices of the largest face.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(#[serde(with = "crate::bigjson::signed_vec")] pub Vec<BigInt>);

fn count_from(adj: &[Bits], cand: Bits, depth: usize, max_card: usize, acc: &mut [u128]) {
    // depth = size of the current clique
    let c = cand.count() as u128;
    if c == 0 {
        return;
    }
    acc[depth + 1] += c;
    if depth + 1 == max_card {
        return;
    }
    for v in cand.ones() {
        let next = cand.and(&adj[v]).above(v);
        count_from(adj, next, depth + 1, max_card, acc);
    }
}

/// Face vector of the clique complex, cliques of up to `max_card` vertices.
/// Work is split by lowest clique vertex and summed, so the result does not
/// depend on scheduling.
pub fn clique_f_vector(g: &VertexColoredGraph, max_card: usize) -> FaceVector {
    assert!(max_card >= 1);
    let n = g.vertex_count();
    let per_vertex: Vec<Vec<u128>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut acc = vec![0u128; max_card + 1];
            acc[1] = 1;
            if max_card > 1 {
                count_from(&g.adj, g.adj[v].above(v), 1, max_card, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0u128; max_card + 1];
    total[0] = 1;
    for acc in per_vertex {
        for (t, a) in total.iter_mut().zip(acc).skip(1) {
            *t += a;
        }
    }
    FaceVector(total.into_iter().map(BigUint::from).collect()).trimmed()
}

/// Full face vector up to the clique number.
pub fn full_f_vector(g: &VertexColoredGraph) -> FaceVector {
    let mut card = 2;
    loop {
        let f = clique_f_vector(g, card);
        if f.0.len() <= card {
            return f;
        }
        card *= 2;
    }
}

/// `h_k = sum_i (-1)^(k-i) binom(d-i, k-i) f_{i-1}` with `d = len(f) - 1`.
pub fn f_to_h(f: &FaceVector) -> HVector {
    let d = f.0.len() as i64 - 1;
    let h = (0..=d)
        .map(|k| {
            (0..=k).fold(BigInt::zero(), |acc, i| {
                let term = BigInt::from(binom(d - i, k - i)) * BigInt::from(f.0[i as usize].clone());
                if (k - i) % 2 == 0 { acc + term } else { acc - term }
            })
        })
        .collect();
    HVector(h)
}

/// `f_{k-1} = sum_i binom(d-i, k-i) h_i`. Fails if an entry comes out negative.
pub fn h_to_f(h: &HVector) -> Result<FaceVector> {
    let d = h.0.len() as i64 - 1;
    let mut f = Vec::new();
    for k in 0..=d {
        let v = (0..=k).fold(BigInt::zero(), |acc, i| acc + BigInt::from(binom(d - i, k - i)) * &h.0[i as usize]);
        if v.is_negative() {
            return invalid(format!("h-vector gives negative f_{}", k - 1));
        }
        f.push(v.to_biguint().expect("nonnegative"));
    }
    Ok(FaceVector(f))
}

/// Evaluate both sides of `sum f_{i-1} t^(d-i) = sum h_i (t+1)^(d-i)`.
pub fn polynomial_sides(f: &FaceVector, h: &HVector, t: i64) -> (BigInt, BigInt) {
    let d = f.0.len() as u32 - 1;
    let lhs = f.0.iter().enumerate().fold(BigInt::zero(), |acc, (i, x)| {
        acc + BigInt::from(x.clone()) * BigInt::from(t).pow(d - i as u32)
    });
    let rhs = h.0.iter().enumerate().fold(BigInt::zero(), |acc, (i, x)| acc + x * BigInt::from(t + 1).pow(d - i as u32));
    (lhs, rhs)
}

/// Add one vertex per color, adjacent to every vertex of a different color.
pub fn plus_construction(g: &VertexColoredGraph) -> Result<VertexColoredGraph> {
    if !g.is_properly_colored() {
        return invalid("plus construction needs a proper coloring");
    }
    let mut out = g.clone();
    let n = g.vertex_count();
    let fresh: Vec<usize> = (0..g.palette()).map(|c| out.add_vertex(c)).collect();
    for (c, &x) in fresh.iter().enumerate() {
        for v in 0..n {
            if g.color(v) != c as u32 {
                out.add_edge(x, v);
            }
        }
        for &y in fresh.iter().skip(c + 1) {
            out.add_edge(x, y);
        }
    }
    Ok(out)
}

/// Proper coloring whose number of colors equals the clique number.
pub fn is_balanced(g: &VertexColoredGraph) -> bool {
    if !g.is_properly_colored() {
        return false;
    }
    let used: BTreeSet<u32> = g.colors().iter().copied().collect();
    let omega = full_f_vector(g).d();
    used.len() == omega
}

/// Facet list of a complex on at most 32 vertices; vertex sets are bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexExplicit {
    pub vertices: u32,
    pub facets: Vec<u32>,
}

pub const DECOMPOSABLE_LIMIT: usize = 25;

impl SimplicialComplexExplicit {
    /// Build from any generating family; keeps the inclusion-maximal sets.
    pub fn from_faces(faces: &[u32]) -> Self {
        let facets = maximal(faces.to_vec());
        let vertices = facets.iter().fold(0, |a, f| a | f);
        SimplicialComplexExplicit { vertices, facets }
    }

    /// Clique complex of a graph with at most 32 vertices.
    pub fn from_graph(g: &VertexColoredGraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > 32 {
            return Err(Error::TooLarge { vertices: n, limit: 32 });
        }
        let mut cliques = Vec::new();
        maximal_cliques(g, 0, (1u64 << n) - 1, 0, &mut cliques);
        let mut c = Self::from_faces(&cliques);
        c.vertices = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };
        Ok(c)
    }
}

fn nbr_mask(g: &VertexColoredGraph, v: usize) -> u64 {
    g.neighbors(v).fold(0u64, |a, u| a | 1 << u)
}

fn maximal_cliques(g: &VertexColoredGraph, r: u64, p: u64, x: u64, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r as u32);
        return;
    }
    let mut p = p;
    let mut x = x;
    while p != 0 {
        let v = p.trailing_zeros() as usize;
        let nv = nbr_mask(g, v);
        maximal_cliques(g, r | 1 << v, p & nv, x & nv, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn maximal(mut faces: Vec<u32>) -> Vec<u32> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.count_ones()));
    let mut out: Vec<u32> = Vec::new();
    for f in faces {
        if !out.iter().any(|&g| g & f == f) {
            out.push(f);
        }
    }
    out.sort_unstable();
    out
}

/// Vertex decomposability: a simplex (including the empty and void
/// complexes), or some shedding vertex `v` with decomposable link and
/// deletion. `v` is shedding when no facet of the link is a facet of the
/// deletion.
pub fn is_vertex_decomposable(c: &SimplicialComplexExplicit) -> Result<bool> {
    let n = c.vertices.count_ones() as usize;
    if n > DECOMPOSABLE_LIMIT {
        return Err(Error::TooLarge { vertices: n, limit: DECOMPOSABLE_LIMIT });
    }
    let mut memo = HashMap::new();
    Ok(vd(maximal(c.facets.clone()), &mut memo))
}

fn vd(facets: Vec<u32>, memo: &mut HashMap<Vec<u32>, bool>) -> bool {
    if facets.len() <= 1 {
        return true;
    }
    if let Some(&b) = memo.get(&facets) {
        return b;
    }
    let support = facets.iter().fold(0u32, |a, f| a | f);
    let mut ans = false;
    let mut rest = support;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let bit = 1u32 << v;
        let link = maximal(facets.iter().filter(|&&f| f & bit != 0).map(|&f| f & !bit).collect());
        let deletion = maximal(facets.iter().map(|&f| f & !bit).collect());
        if link.iter().any(|l| deletion.contains(l)) {
            continue;
        }
        if vd(link, memo) && vd(deletion, memo) {
            ans = true;
            break;
        }
    }
    memo.insert(facets, ans);
    ans
}

/// `true` when every sign of `h` is nonnegative.
pub fn is_nonnegative(h: &HVector) -> bool {
    h.0.iter().all(|x| !x.is_negative())
}

impl HVector {
    pub fn from_i64(v: &[i64]) -> Self {
        HVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_unit_leading(&self) -> bool {
        self.0.first().is_some_and(|x| x.is_one())
    }
}
