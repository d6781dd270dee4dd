//! Finite simplicial complexes and graphs: flag complexes, links, full subcomplexes,
//! surface recognition, integral cohomology, separation properties and planarity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

pub mod cohomology;
pub mod flag;
pub mod minor;
pub mod planarity;
pub mod racg;
pub mod separation;
pub mod surface;

pub use cohomology::{pcd, pcd_with_witness, reduced_cohomology, top_nonvanishing_degree, CohomologyGroup, PcdWitness};
pub use flag::{
    find_induced_square, flag_complex_from_graph, flag_complex_with_overflow, is_flag, is_flag_no_square, FlagCheck,
    FlagNoSquareCheck, MAX_STORED_DIM,
};
pub use minor::{find_k5_or_k33_minor, verify_minor, MinorKind, MinorWitness};
pub use planarity::{biconnected_blocks, is_planar, planar_embedding, verify_embedding, BlockFaces, PlanarEmbedding};
pub use racg::{boundary_dim, hyperbolicity, racg_from_nerve, RacgPresentation};
pub use separation::{
    components_after_removal, forbidden_vertex_sets, is_inseparable, is_join, join_factors, Inseparability, SeparatingSet,
    SeparatorKind,
};
pub use surface::{classify_closed_surface, surface_canonical_code, SurfaceClassification};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(usize),
    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Vec<usize>),
    #[error("clique {0:?} exceeds the stored dimension bound")]
    CliqueTooLarge(Vec<usize>),
    #[error("the complex is empty")]
    Empty,
    #[error("complex is not flag-no-square: {0}")]
    NotFlagNoSquare(String),
    #[error("malformed complex data: {0}")]
    Malformed(String),
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    mat: Vec<bool>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { n, adj: vec![Vec::new(); n], mat: vec![false; n * n] }
    }

    /// Builds a graph from an edge list; duplicate edges collapse, loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let mut g = Self::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for a in 0..n {
            g.add_edge(a, (a + 1) % n).unwrap();
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new(a + b);
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y).unwrap();
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), ComplexError> {
        if a == b {
            return Err(ComplexError::Loop(a));
        }
        for v in [a, b] {
            if v >= self.n {
                return Err(ComplexError::VertexOutOfRange(v, self.n));
            }
        }
        if !self.mat[a * self.n + b] {
            self.mat[a * self.n + b] = true;
            self.mat[b * self.n + a] = true;
            let pa = self.adj[a].binary_search(&b).unwrap_err();
            self.adj[a].insert(pa, b);
            let pb = self.adj[b].binary_search(&a).unwrap_err();
            self.adj[b].insert(pb, a);
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if self.has_edge(a, b) {
            self.mat[a * self.n + b] = false;
            self.mat[b * self.n + a] = false;
            self.adj[a].retain(|&x| x != b);
            self.adj[b].retain(|&x| x != a);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.mat[a * self.n + b]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::new(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep` (in the given order); vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    /// Connected components restricted to vertices where `alive` holds.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Edge-list JSON: `{"n": .., "edges": [[a, b], ...]}`.
    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<&GraphJson> for Graph {
    type Error = ComplexError;
    fn try_from(j: &GraphJson) -> Result<Self, ComplexError> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

/// Finite abstract simplicial complex. Vertices carry arbitrary `usize` labels; every
/// simplex is a strictly increasing label tuple, and the simplex tables are closed under
/// taking faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SComplex {
    /// `tables[k]` holds the `k`-simplices.
    tables: Vec<BTreeSet<Vec<usize>>>,
}

impl SComplex {
    pub fn empty() -> Self {
        Self { tables: Vec::new() }
    }

    /// The complex generated by the given simplices (all faces are added).
    pub fn from_simplices<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut k = Self::empty();
        for s in simplices {
            let mut v = s.as_ref().to_vec();
            v.sort_unstable();
            v.dedup();
            k.insert_closed(v);
        }
        k
    }

    fn insert_closed(&mut self, s: Vec<usize>) {
        if s.is_empty() {
            return;
        }
        let dim = s.len() - 1;
        while self.tables.len() <= dim {
            self.tables.push(BTreeSet::new());
        }
        if self.tables[dim].contains(&s) {
            return;
        }
        if s.len() > 1 {
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                self.insert_closed(face);
            }
        }
        self.tables[dim].insert(s);
    }

    /// Builds directly from per-dimension tables that are already closed under faces.
    pub(crate) fn from_tables(mut tables: Vec<BTreeSet<Vec<usize>>>) -> Self {
        while tables.last().is_some_and(|t| t.is_empty()) {
            tables.pop();
        }
        Self { tables }
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Dimension, with `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.tables.len() as i32 - 1
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).map(|s| s[0]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn count(&self, k: usize) -> usize {
        self.tables.get(k).map_or(0, BTreeSet::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.tables.iter().map(BTreeSet::len).collect()
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.tables.get(k).into_iter().flat_map(|t| t.iter())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.tables.iter().flat_map(|t| t.iter())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices(1).map(|e| (e[0], e[1])).collect()
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.simplices(2)
    }

    /// Membership of a (not necessarily sorted) vertex tuple.
    pub fn contains(&self, s: &[usize]) -> bool {
        if s.is_empty() {
            return true;
        }
        let mut v = s.to_vec();
        v.sort_unstable();
        self.tables.get(v.len() - 1).is_some_and(|t| t.contains(&v))
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.contains(&[v])
    }

    /// 1-skeleton as a [`Graph`] on positions `0..n` of [`Self::vertices`].
    pub fn graph(&self) -> (Graph, Vec<usize>) {
        let labels = self.vertices();
        let pos = self.positions(&labels);
        let mut g = Graph::new(labels.len());
        for e in self.simplices(1) {
            g.add_edge(pos[&e[0]], pos[&e[1]]).unwrap();
        }
        (g, labels)
    }

    fn positions(&self, labels: &[usize]) -> BTreeMap<usize, usize> {
        labels.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    /// Neighbors of a vertex in the 1-skeleton, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.simplices(1)
            .filter_map(|e| if e[0] == v { Some(e[1]) } else if e[1] == v { Some(e[0]) } else { None })
            .collect()
    }

    /// Adjacency lists keyed by vertex label.
    pub fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.vertices().into_iter().map(|v| (v, Vec::new())).collect();
        for e in self.simplices(1) {
            adj.get_mut(&e[0]).unwrap().push(e[1]);
            adj.get_mut(&e[1]).unwrap().push(e[0]);
        }
        for l in adj.values_mut() {
            l.sort_unstable();
        }
        adj
    }

    /// Same complex with vertex `labels[i]` renamed to `i`.
    pub fn relabeled(&self, map: &BTreeMap<usize, usize>) -> Self {
        let tables = self
            .tables
            .iter()
            .map(|t| {
                t.iter()
                    .map(|s| {
                        let mut v: Vec<usize> = s.iter().map(|x| map[x]).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect()
            })
            .collect();
        Self { tables }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.tables.iter().enumerate().map(|(k, t)| if k % 2 == 0 { t.len() as i64 } else { -(t.len() as i64) }).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.graph().0.is_connected()
    }

    pub fn to_json(&self) -> SComplexJson {
        let labels = self.vertices();
        let contiguous = labels.iter().enumerate().all(|(i, &v)| i == v);
        SComplexJson {
            vertices: labels.len(),
            labels: if contiguous { None } else { Some(labels) },
            simplices: self.all_simplices().cloned().collect(),
        }
    }
}

impl Serialize for SComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `{"vertices": n, "simplices": [[...], ...]}`; `labels` lists vertex names when they are
/// not `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SComplexJson {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
    pub simplices: Vec<Vec<usize>>,
}

impl TryFrom<&SComplexJson> for SComplex {
    type Error = ComplexError;
    fn try_from(j: &SComplexJson) -> Result<Self, ComplexError> {
        let labels: Vec<usize> = j.labels.clone().unwrap_or_else(|| (0..j.vertices).collect());
        if labels.len() != j.vertices {
            return Err(ComplexError::Malformed(format!("{} labels for {} vertices", labels.len(), j.vertices)));
        }
        let known: BTreeSet<usize> = labels.iter().copied().collect();
        for s in &j.simplices {
            if let Some(&v) = s.iter().find(|v| !known.contains(v)) {
                return Err(ComplexError::UnknownVertex(v));
            }
        }
        let singletons = labels.iter().map(|&v| vec![v]);
        Ok(SComplex::from_simplices(singletons.chain(j.simplices.iter().cloned())))
    }
}

/// The subcomplex of all simplices of `k` with every vertex in `keep`.
pub fn full_subcomplex(k: &SComplex, keep: &[usize]) -> Result<SComplex, ComplexError> {
    let set: BTreeSet<usize> = keep.iter().copied().collect();
    if let Some(&v) = set.iter().find(|&&v| !k.has_vertex(v)) {
        return Err(ComplexError::UnknownVertex(v));
    }
    Ok(full_subcomplex_unchecked(k, &set))
}

pub(crate) fn full_subcomplex_unchecked(k: &SComplex, keep: &BTreeSet<usize>) -> SComplex {
    let tables = k.tables.iter().map(|t| t.iter().filter(|s| s.iter().all(|v| keep.contains(v))).cloned().collect()).collect();
    SComplex::from_tables(tables)
}

/// Full subcomplex on the vertices not in `removed`.
pub fn complement_subcomplex(k: &SComplex, removed: &[usize]) -> SComplex {
    let keep: BTreeSet<usize> = k.vertices().into_iter().filter(|v| !removed.contains(v)).collect();
    full_subcomplex_unchecked(k, &keep)
}

/// `lk(sigma, K)`: simplices disjoint from `sigma` whose join with `sigma` lies in `K`.
pub fn link(k: &SComplex, sigma: &[usize]) -> Result<SComplex, ComplexError> {
    let mut s = sigma.to_vec();
    s.sort_unstable();
    if s.is_empty() || !k.contains(&s) {
        return Err(ComplexError::NotASimplex(s));
    }
    let mut tables: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for tau in k.all_simplices() {
        if tau.len() <= s.len() || !s.iter().all(|v| tau.binary_search(v).is_ok()) {
            continue;
        }
        let rest: Vec<usize> = tau.iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
        let d = rest.len() - 1;
        while tables.len() <= d {
            tables.push(BTreeSet::new());
        }
        tables[d].insert(rest);
    }
    Ok(SComplex::from_tables(tables))
}

/// Whether a 1-dimensional complex (or the 1-skeleton) is a single cycle through all its vertices.
pub fn is_single_cycle(k: &SComplex) -> bool {
    let (g, _) = k.graph();
    k.dim() == 1 && g.n() >= 3 && (0..g.n()).all(|v| g.degree(v) == 2) && g.is_connected()
}

/// Vertex degree multiset of the 1-skeleton, as `degree -> count`.
pub fn degree_histogram(k: &SComplex) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for l in k.adjacency().values() {
        *h.entry(l.len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetra_boundary() -> SComplex {
        SComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    }

    #[test]
    fn closure_and_f_vector() {
        let k = tetra_boundary();
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
        assert!(k.contains(&[2, 0]));
        assert!(!k.contains(&[0, 1, 2, 3]));
    }

    #[test]
    fn full_subcomplex_edges() {
        let k = tetra_boundary();
        assert_eq!(full_subcomplex(&k, &[0, 1, 2, 3]).unwrap(), k);
        assert!(full_subcomplex(&k, &[]).unwrap().is_empty());
        assert_eq!(full_subcomplex(&k, &[0, 1, 2]).unwrap().f_vector(), vec![3, 3, 1]);
        assert_eq!(full_subcomplex(&k, &[9]), Err(ComplexError::UnknownVertex(9)));
    }

    #[test]
    fn vertex_link_of_tetrahedron_boundary() {
        let l = link(&tetra_boundary(), &[0]).unwrap();
        assert_eq!(l.f_vector(), vec![3, 3]);
        assert!(is_single_cycle(&l));
        assert!(link(&tetra_boundary(), &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn json_round_trip_with_labels() {
        let k = SComplex::from_simplices([[3, 7, 9], [7, 9, 12]]);
        let j = k.to_json();
        assert_eq!(j.labels, Some(vec![3, 7, 9, 12]));
        let s = serde_json::to_string(&j).unwrap();
        let back: SComplexJson = serde_json::from_str(&s).unwrap();
        assert_eq!(SComplex::try_from(&back).unwrap(), k);
        let g = Graph::cycle(5);
        assert_eq!(Graph::try_from(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn graph_rejects_loops() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(ComplexError::Loop(1)));
        assert_eq!(Graph::from_edges(3, &[(1, 5)]), Err(ComplexError::VertexOutOfRange(5, 3)));
    }
}
