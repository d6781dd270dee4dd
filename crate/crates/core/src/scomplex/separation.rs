use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Graph, SComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatorKind {
    Simplex,
    NonAdjacentPair,
    TwoEdges,
    TwoTriangles,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingSet {
    pub kind: SeparatorKind,
    pub vertices: Vec<usize>,
    /// Components of the full subcomplex on the remaining vertices.
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inseparability {
    pub inseparable: bool,
    pub connected: bool,
    pub candidates_checked: usize,
    pub witness: Option<SeparatingSet>,
}

/// Components of the full subcomplex of `k` on the vertices outside `removed`.
pub fn components_after_removal(k: &SComplex, removed: &[usize]) -> Vec<Vec<usize>> {
    let (g, labels) = k.graph();
    let alive: Vec<bool> = labels.iter().map(|v| !removed.contains(v)).collect();
    g.components_within(&alive).into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect()
}

/// Vertex sets of the forbidden subcomplexes: simplices, non-adjacent pairs, pairs of
/// edges sharing a vertex and pairs of triangles sharing an edge. Sorted by vertex set,
/// each set listed once under the first kind that produces it.
pub fn forbidden_vertex_sets(k: &SComplex) -> Vec<(Vec<usize>, SeparatorKind)> {
    let mut out: BTreeMap<Vec<usize>, SeparatorKind> = BTreeMap::new();
    let mut put = |mut s: Vec<usize>, kind: SeparatorKind| {
        s.sort_unstable();
        out.entry(s).and_modify(|k| *k = (*k).min(kind)).or_insert(kind);
    };
    for s in k.all_simplices() {
        put(s.clone(), SeparatorKind::Simplex);
    }
    let adj = k.adjacency();
    let verts = k.vertices();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if adj[&a].binary_search(&b).is_err() {
                put(vec![a, b], SeparatorKind::NonAdjacentPair);
            }
        }
    }
    for (&v, nb) in &adj {
        for (i, &p) in nb.iter().enumerate() {
            for &q in &nb[i + 1..] {
                put(vec![p, v, q], SeparatorKind::TwoEdges);
            }
        }
    }
    let mut apex: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for t in k.triangles() {
        for (x, y, z) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])] {
            apex.entry((x, y)).or_default().push(z);
        }
    }
    for (&(x, y), zs) in &apex {
        for (i, &z) in zs.iter().enumerate() {
            for &w in &zs[i + 1..] {
                put(vec![x, y, z, w], SeparatorKind::TwoTriangles);
            }
        }
    }
    out.into_iter().collect()
}

/// Connected, and not disconnected by removing the vertices of any forbidden
/// subcomplex. The witness, if any, is the lexicographically least separating set.
pub fn is_inseparable(k: &SComplex) -> Inseparability {
    let (g, labels) = k.graph();
    let connected = !k.is_empty() && g.is_connected();
    if !connected {
        return Inseparability { inseparable: false, connected, candidates_checked: 0, witness: None };
    }
    let pos: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cands = forbidden_vertex_sets(k);
    let mut alive = vec![true; g.n()];
    for (checked, (set, kind)) in cands.iter().enumerate() {
        set.iter().for_each(|v| alive[pos[v]] = false);
        let comps = g.components_within(&alive);
        set.iter().for_each(|v| alive[pos[v]] = true);
        if comps.len() > 1 {
            let components = comps.into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect();
            return Inseparability {
                inseparable: false,
                connected,
                candidates_checked: checked + 1,
                witness: Some(SeparatingSet { kind: *kind, vertices: set.clone(), components }),
            };
        }
    }
    Inseparability { inseparable: true, connected, candidates_checked: cands.len(), witness: None }
}

/// A flag complex splits as a join exactly when the complement of its 1-skeleton is
/// disconnected.
pub fn is_join(k: &SComplex) -> bool {
    let (g, _) = k.graph();
    g.n() >= 2 && !g.complement().is_connected()
}

/// Join factors as vertex sets (components of the complement graph).
pub fn join_factors(k: &SComplex) -> Vec<Vec<usize>> {
    let (g, labels) = k.graph();
    let comps: Vec<BTreeSet<usize>> =
        Graph::components(&g.complement()).into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect();
    comps.into_iter().map(|c| c.into_iter().collect()).collect()
}
