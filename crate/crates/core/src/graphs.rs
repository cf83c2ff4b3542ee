//! Small-graph machinery: canonical forms by exhaustive search, structural
//! statistics, supergraph enumeration, K_{u,u} detection in bipartite
//! graphs, and extraction of unit-distance/diameter graphs from point sets.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{squared_distance, GeomError, PointSet, Scalar};

pub const MAX_K: usize = 10;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum {MAX_K}")]
    TooLarge(usize),
    #[error("edge ({0},{1}) out of range or a self-loop")]
    BadEdge(usize, usize),
    #[error("profile entry {got} exceeds ambient dimension {d}")]
    BadProfile { got: u32, d: u32 },
    #[error("profile length {0} does not match graph on {1} vertices")]
    ProfileLength(usize, usize),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
    #[error("diameter violation: points {i} and {j} at squared distance {d2} (expected <= 1)")]
    DiameterViolation { i: usize, j: usize, d2: String },
    #[error("diameter violation: maximum squared distance {d2} differs from 1")]
    DiameterNotAttained { d2: String },
    #[error("point set with {0} points does not fit a small graph (max {MAX_K})")]
    TooManyPoints(usize),
    #[error("cannot parse graph JSON: {0}")]
    BadJson(String),
}

/// Undirected graph on vertex set {0, .., k-1}, k <= 10, edges stored as a
/// bitmask over the C(k,2) vertex pairs in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    k: usize,
    edges: u64,
}

#[inline]
fn pair_bit(k: usize, i: usize, j: usize) -> u64 {
    debug_assert!(i < j && j < k);
    // index of (i,j) among pairs in lexicographic order
    let before: usize = (0..i).map(|a| k - 1 - a).sum();
    1u64 << (before + (j - i - 1))
}

impl SmallGraph {
    pub fn empty(k: usize) -> Result<Self, GraphError> {
        if k == 0 || k > MAX_K {
            return Err(GraphError::TooLarge(k));
        }
        Ok(SmallGraph { k, edges: 0 })
    }

    pub fn complete(k: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(k)?;
        for i in 0..k {
            for j in i + 1..k {
                g.edges |= pair_bit(k, i, j);
            }
        }
        Ok(g)
    }

    /// Build from 0-indexed edges.
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(k)?;
        for &(a, b) in edges {
            if a == b || a >= k || b >= k {
                return Err(GraphError::BadEdge(a, b));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            g.edges |= pair_bit(k, i, j);
        }
        Ok(g)
    }

    pub fn from_mask(k: usize, edges: u64) -> Result<Self, GraphError> {
        if k == 0 || k > MAX_K {
            return Err(GraphError::TooLarge(k));
        }
        let npairs = k * (k - 1) / 2;
        let mask = if npairs == 0 { 0 } else { (1u64 << npairs) - 1 };
        Ok(SmallGraph {
            k,
            edges: edges & mask,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_mask(&self) -> u64 {
        self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges & pair_bit(self.k, i, j) != 0
    }

    pub fn add_edge(&self, a: usize, b: usize) -> Result<Self, GraphError> {
        if a == b || a >= self.k || b >= self.k {
            return Err(GraphError::BadEdge(a, b));
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Ok(SmallGraph {
            k: self.k,
            edges: self.edges | pair_bit(self.k, i, j),
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.k * (self.k - 1) / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.k).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.k).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Bitmask of neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> u16 {
        let mut m = 0u16;
        for u in 0..self.k {
            if self.has_edge(u, v) {
                m |= 1 << u;
            }
        }
        m
    }

    pub fn complement(&self) -> SmallGraph {
        let full = SmallGraph::complete(self.k).unwrap();
        SmallGraph {
            k: self.k,
            edges: full.edges & !self.edges,
        }
    }

    /// Is the vertex subset (bitmask) a clique?
    pub fn is_clique(&self, mask: u16) -> bool {
        let vs: Vec<usize> = (0..self.k).filter(|&v| mask >> v & 1 == 1).collect();
        for (ai, &a) in vs.iter().enumerate() {
            for &b in &vs[ai + 1..] {
                if !self.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Is the vertex subset independent?
    pub fn is_independent(&self, mask: u16) -> bool {
        self.complement().is_clique(mask)
    }

    /// Apply a vertex relabeling: vertex v of the result is perm[v] of self.
    pub(crate) fn relabel(&self, perm: &[usize]) -> u64 {
        let mut edges = 0u64;
        for i in 0..self.k {
            for j in i + 1..self.k {
                let (a, b) = (perm[i], perm[j]);
                if self.has_edge(a, b) {
                    edges |= pair_bit(self.k, i, j);
                }
            }
        }
        edges
    }

    /// Serialize to the edge-list JSON convention (1-indexed vertices).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "edges": self.edges().iter().map(|&(a, b)| vec![a + 1, b + 1]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GraphError> {
        let k = v["k"]
            .as_u64()
            .ok_or_else(|| GraphError::BadJson("missing k".into()))? as usize;
        let raw = v["edges"]
            .as_array()
            .ok_or_else(|| GraphError::BadJson("missing edges".into()))?;
        let mut edges = Vec::new();
        for e in raw {
            let pair = e
                .as_array()
                .ok_or_else(|| GraphError::BadJson(e.to_string()))?;
            if pair.len() != 2 {
                return Err(GraphError::BadJson(e.to_string()));
            }
            let a = pair[0].as_u64().ok_or_else(|| GraphError::BadJson(e.to_string()))? as usize;
            let b = pair[1].as_u64().ok_or_else(|| GraphError::BadJson(e.to_string()))? as usize;
            if a == 0 || b == 0 {
                return Err(GraphError::BadJson("vertices are 1-indexed".into()));
            }
            edges.push((a - 1, b - 1));
        }
        SmallGraph::new(k, &edges)
    }
}

/// Canonical key: equal iff the graphs are isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub k: usize,
    pub edges: u64,
}

/// Canonical form by exhaustive relabeling with degree-sequence pruning:
/// the minimum edge bitmask over all permutations that map vertices to
/// vertices of matching degree.
pub fn canonical_form(g: &SmallGraph) -> Result<CanonicalKey, GraphError> {
    let k = g.k;
    if k > MAX_K {
        return Err(GraphError::TooLarge(k));
    }
    let degs: Vec<usize> = (0..k).map(|v| g.degree(v)).collect();
    let mut sorted = degs.clone();
    sorted.sort_unstable();
    let mut best: Option<u64> = None;
    let mut perm = vec![usize::MAX; k];
    let mut used = vec![false; k];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        k: usize,
        g: &SmallGraph,
        degs: &[usize],
        sorted: &[usize],
        perm: &mut [usize],
        used: &mut [bool],
        best: &mut Option<u64>,
    ) {
        if pos == k {
            let e = g.relabel(perm);
            if best.is_none() || e < best.unwrap() {
                *best = Some(e);
            }
            return;
        }
        for v in 0..k {
            if !used[v] && degs[v] == sorted[pos] {
                perm[pos] = v;
                used[v] = true;
                rec(pos + 1, k, g, degs, sorted, perm, used, best);
                used[v] = false;
            }
        }
    }
    rec(0, k, g, &degs, &sorted, &mut perm, &mut used, &mut best);
    Ok(CanonicalKey {
        k,
        edges: best.expect("at least one permutation"),
    })
}

/// All graphs on `k` vertices up to isomorphism, as canonical
/// representatives, in increasing edge-count order.
pub fn all_graphs_up_to_iso(k: usize) -> Result<Vec<SmallGraph>, GraphError> {
    if k > 6 {
        return Err(GraphError::TooLarge(k));
    }
    let npairs = k * (k - 1) / 2;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u64 << npairs) {
        let g = SmallGraph::from_mask(k, mask)?;
        let key = canonical_form(&g)?;
        if seen.insert(key) {
            out.push(SmallGraph::from_mask(k, key.edges)?);
        }
    }
    out.sort_by_key(|g| (g.edge_count(), g.edge_mask()));
    Ok(out)
}

/// Structural statistics, all exact by exhaustive search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphStats {
    /// Maximal cliques as vertex bitmasks.
    pub maximal_cliques: Vec<u16>,
    pub clique_number: usize,
    pub independence_number: usize,
    pub girth: Option<usize>,
    pub odd_girth: Option<usize>,
    pub degree_sequence: Vec<usize>,
    pub triangle_free: bool,
    pub bipartite: bool,
}

/// Vertex bitmasks of all subsets inducing a cycle, with their lengths.
/// The shortest cycle and the shortest odd cycle are always chordless, so
/// induced cycles suffice to read off both girths.
pub fn induced_cycles(g: &SmallGraph) -> Vec<(u16, usize)> {
    let k = g.k;
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size < 3 {
            continue;
        }
        let vs: Vec<usize> = (0..k).filter(|&v| mask >> v & 1 == 1).collect();
        // every vertex of the induced subgraph must have induced degree 2
        let mut ok = true;
        for &v in &vs {
            let deg = vs.iter().filter(|&&u| u != v && g.has_edge(u, v)).count();
            if deg != 2 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        // connectivity
        let mut reach = 1u16 << vs[0];
        loop {
            let mut next = reach;
            for &v in &vs {
                if reach >> v & 1 == 1 {
                    for &u in &vs {
                        if g.has_edge(u, v) {
                            next |= 1 << u;
                        }
                    }
                }
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach == mask as u16 {
            out.push((mask as u16, size));
        }
    }
    out
}

pub fn graph_stats(g: &SmallGraph) -> GraphStats {
    let k = g.k;
    let mut cliques: Vec<u16> = Vec::new();
    let mut clique_number = 1;
    let mut independence_number = 1;
    for mask in 1u32..(1 << k) {
        let m = mask as u16;
        let size = mask.count_ones() as usize;
        if g.is_clique(m) {
            clique_number = clique_number.max(size);
        }
        if g.is_independent(m) {
            independence_number = independence_number.max(size);
        }
    }
    for mask in 1u32..(1 << k) {
        let m = mask as u16;
        if !g.is_clique(m) {
            continue;
        }
        let mut maximal = true;
        for v in 0..k {
            if m >> v & 1 == 0 && g.is_clique(m | (1 << v)) {
                maximal = false;
                break;
            }
        }
        if maximal {
            cliques.push(m);
        }
    }
    cliques.sort_unstable();
    let cycles = induced_cycles(g);
    let girth = cycles.iter().map(|&(_, l)| l).min();
    let odd_girth = cycles
        .iter()
        .filter(|&&(_, l)| l % 2 == 1)
        .map(|&(_, l)| l)
        .min();
    let degree_sequence = {
        let mut d: Vec<usize> = (0..k).map(|v| g.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    };
    let triangle_free = clique_number < 3;
    let bipartite = is_bipartite(g).is_some();
    GraphStats {
        maximal_cliques: cliques,
        clique_number,
        independence_number,
        girth,
        odd_girth,
        degree_sequence,
        triangle_free,
        bipartite,
    }
}

/// Proper 2-coloring if one exists; each component is rooted at its
/// smallest vertex, which receives color 0.
pub fn is_bipartite(g: &SmallGraph) -> Option<Vec<u8>> {
    let k = g.k;
    let mut color = vec![u8::MAX; k];
    for start in 0..k {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in 0..k {
                if g.has_edge(u, v) {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
    }
    Some(color)
}

/// One graph per non-edge, each with exactly that edge added.
pub fn supergraphs(g: &SmallGraph) -> Vec<SmallGraph> {
    g.non_edges()
        .iter()
        .map(|&(i, j)| g.add_edge(i, j).unwrap())
        .collect()
}

/// Profile: per-class minimal sphere dimensions, each in [0, d].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub lambda: Vec<u32>,
    pub d: u32,
}

impl Profile {
    pub fn new(lambda: Vec<u32>, d: u32) -> Result<Self, GraphError> {
        if let Some(&bad) = lambda.iter().find(|&&l| l > d) {
            return Err(GraphError::BadProfile { got: bad, d });
        }
        Ok(Profile { lambda, d })
    }

    pub fn k(&self) -> usize {
        self.lambda.len()
    }
}

/// Bipartite graph with classes of size m and n; adjacency as bitset rows
/// over the second class.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub m: usize,
    pub n: usize,
    rows: Vec<Vec<u64>>,
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize) -> Self {
        let words = n.div_ceil(64);
        BipartiteGraph {
            m,
            n,
            rows: vec![vec![0u64; words.max(1)]; m],
        }
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum::<usize>())
            .sum()
    }

    pub fn degree_left(&self, i: usize) -> usize {
        self.rows[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    fn transpose(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph::new(self.n, self.m);
        for i in 0..self.m {
            for j in 0..self.n {
                if self.has(i, j) {
                    t.set(j, i);
                }
            }
        }
        t
    }
}

/// Exact K_{u,u} detection by branch-and-bound over common neighborhoods
/// of row subsets, rooted at the smaller class.
pub fn contains_kuu(b: &BipartiteGraph, u: usize) -> bool {
    assert!(u >= 1, "u must be at least 1");
    if b.m > b.n {
        return contains_kuu(&b.transpose(), u);
    }
    if b.m < u || b.n < u {
        return false;
    }
    fn popcount(words: &[u64]) -> usize {
        words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn rec(b: &BipartiteGraph, u: usize, start: usize, chosen: usize, common: &[u64]) -> bool {
        if chosen == u {
            return popcount(common) >= u;
        }
        if popcount(common) < u {
            return false;
        }
        for i in start..b.m {
            if b.m - i < u - chosen {
                return false;
            }
            let inter: Vec<u64> = common
                .iter()
                .zip(&b.rows[i])
                .map(|(a, c)| a & c)
                .collect();
            if popcount(&inter) >= u && rec(b, u, i + 1, chosen + 1, &inter) {
                return true;
            }
        }
        false
    }
    let mut full = vec![u64::MAX; b.n.div_ceil(64).max(1)];
    let extra = b.n % 64;
    if extra != 0 {
        *full.last_mut().unwrap() = (1u64 << extra) - 1;
    }
    rec(b, u, 0, 0, &full)
}

/// Edge mode for geometric graph extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphMode {
    Unit,
    Diameter,
}

fn check_diameter(points: &[crate::geom::Point], tol: f64) -> Result<(), GraphError> {
    let one = Scalar::from_int(1);
    let mut max_d2: Option<Scalar> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d2 = squared_distance(&points[i], &points[j])?;
            if d2.to_f64() > 1.0 + tol {
                return Err(GraphError::DiameterViolation {
                    i,
                    j,
                    d2: d2.encode(),
                });
            }
            let replace = match &max_d2 {
                None => true,
                Some(m) => d2.to_f64() > m.to_f64(),
            };
            if replace {
                max_d2 = Some(d2);
            }
        }
    }
    match max_d2 {
        Some(m) if m.within(&one, tol) => Ok(()),
        Some(m) => Err(GraphError::DiameterNotAttained { d2: m.encode() }),
        None => Ok(()),
    }
}

/// Unit-distance (or diameter) graph on a single small point set.
pub fn geometric_graph_small(
    p: &PointSet,
    mode: GraphMode,
    tol: f64,
) -> Result<SmallGraph, GraphError> {
    if p.len() > MAX_K {
        return Err(GraphError::TooManyPoints(p.len()));
    }
    if mode == GraphMode::Diameter {
        check_diameter(&p.points, tol)?;
    }
    let one = Scalar::from_int(1);
    let mut edges = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if squared_distance(&p.points[i], &p.points[j])?.within(&one, tol) {
                edges.push((i, j));
            }
        }
    }
    SmallGraph::new(p.len(), &edges)
}

/// Bipartite unit-distance (or diameter) graph between two point sets.
pub fn geometric_graph_bipartite(
    p: &PointSet,
    q: &PointSet,
    mode: GraphMode,
    tol: f64,
) -> Result<BipartiteGraph, GraphError> {
    if mode == GraphMode::Diameter {
        let mut all = p.points.clone();
        all.extend(q.points.iter().cloned());
        check_diameter(&all, tol)?;
    }
    let one = Scalar::from_int(1);
    let mut g = BipartiteGraph::new(p.len(), q.len());
    for i in 0..p.len() {
        for j in 0..q.len() {
            if squared_distance(&p.points[i], &q.points[j])?.within(&one, tol) {
                g.set(i, j);
            }
        }
    }
    Ok(g)
}
