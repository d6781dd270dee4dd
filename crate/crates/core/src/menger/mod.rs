//! Removing independent vertex sets from surface nerves to get 1-dimensional special
//! subgroups, and certificates of the conditions under which their boundary is the
//! Menger curve: non-planar, inseparable, `pcd = 1` and not a join.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::report::Report;
use crate::scomplex::{
    classify_closed_surface, complement_subcomplex, degree_histogram, find_k5_or_k33_minor, is_flag_no_square,
    is_inseparable, is_join, is_planar, is_single_cycle, join_factors, link, pcd_with_witness, verify_minor,
    ComplexError, Graph, MinorWitness, SComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MengerError {
    #[error("no independent set of size {size}; the largest found has size {best}")]
    NoIndependentSet { size: usize, best: usize },
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Lexicographically least independent set of `size` vertices of `g`, by depth-first
/// search in increasing vertex order, pruned by a greedy clique cover of the remaining
/// candidates. A `hint` is checked and returned instead.
pub fn independent_set(g: &Graph, size: usize, hint: Option<&[usize]>) -> Result<Vec<usize>, MengerError> {
    if let Some(h) = hint {
        let mut h = h.to_vec();
        h.sort_unstable();
        h.dedup();
        if let Some(&v) = h.iter().find(|&&v| v >= g.n()) {
            return Err(ComplexError::VertexOutOfRange(v, g.n()).into());
        }
        for (i, &a) in h.iter().enumerate() {
            if let Some(&b) = h[i + 1..].iter().find(|&&b| g.has_edge(a, b)) {
                return Err(MengerError::Adjacent(a, b));
            }
        }
        if h.len() != size {
            return Err(MengerError::Hypothesis(format!("hint has {} vertices, expected {size}", h.len())));
        }
        return Ok(h);
    }
    let mut chosen = Vec::with_capacity(size);
    let mut greedy: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        if greedy.iter().all(|&w| !g.has_edge(v, w)) {
            greedy.push(v);
        }
    }
    if greedy.len() >= size {
        // the greedy set is the lexicographically least one when it is large enough
        greedy.truncate(size);
        return Ok(greedy);
    }
    let mut best = greedy.len();
    let cands: Vec<usize> = (0..g.n()).collect();
    if search(g, &cands, size, &mut chosen, &mut best) {
        Ok(chosen)
    } else {
        Err(MengerError::NoIndependentSet { size, best })
    }
}

fn clique_cover_size(g: &Graph, cands: &[usize]) -> usize {
    let mut left = cands.to_vec();
    let mut count = 0;
    while let Some(&first) = left.first() {
        let mut clique = vec![first];
        for &w in &left[1..] {
            if clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        left.retain(|v| !clique.contains(v));
        count += 1;
    }
    count
}

fn search(g: &Graph, cands: &[usize], size: usize, chosen: &mut Vec<usize>, best: &mut usize) -> bool {
    *best = (*best).max(chosen.len());
    if chosen.len() == size {
        return true;
    }
    for (i, &v) in cands.iter().enumerate() {
        if chosen.len() + clique_cover_size(g, &cands[i..]) < size {
            return false;
        }
        chosen.push(v);
        let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&w| !g.has_edge(v, w)).collect();
        if search(g, &rest, size, chosen, best) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Same search on the 1-skeleton of `k`, in vertex labels.
pub fn independent_vertices(k: &SComplex, size: usize, hint: Option<&[usize]>) -> Result<Vec<usize>, MengerError> {
    let (g, labels) = k.graph();
    let index: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let hint_idx = match hint {
        Some(h) => Some(h.iter().map(|v| index.get(v).copied().ok_or(ComplexError::UnknownVertex(*v))).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let found = independent_set(&g, size, hint_idx.as_deref()).map_err(|e| match e {
        MengerError::Adjacent(a, b) => MengerError::Adjacent(labels[a], labels[b]),
        e => e,
    })?;
    Ok(found.into_iter().map(|i| labels[i]).collect())
}

/// Edges and triangles lost by removing the independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalCounts {
    pub removed: usize,
    pub edges_removed: usize,
    pub triangles_removed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MengerCertificate {
    pub ambient: String,
    pub ambient_f_vector: Vec<usize>,
    pub removed_vertices: Vec<usize>,
    pub l_f_vector: Vec<usize>,
    /// The full subcomplex on the remaining vertices.
    pub l: SComplex,
    /// Branch sets in vertex labels.
    pub minor: Option<MinorWitness>,
    pub removal: RemovalCounts,
    pub checks: Report,
    pub verdict: bool,
}

impl MengerCertificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn surface_hypotheses(k: &SComplex) -> Result<(), MengerError> {
    let fns = is_flag_no_square(k);
    if !fns.holds() {
        return Err(MengerError::Hypothesis(format!("not flag-no-square: {fns:?}")));
    }
    let s = classify_closed_surface(k);
    if !(s.is_closed_surface && s.orientable && s.genus.is_some_and(|g| g >= 1)) {
        return Err(MengerError::Hypothesis(format!("not a closed orientable surface of positive genus: {s:?}")));
    }
    Ok(())
}

/// Minor of the 1-skeleton of `l`, verified, with branch sets relabelled.
fn labelled_minor(l: &SComplex) -> (bool, Option<MinorWitness>, String) {
    let (g, labels) = l.graph();
    let planar = is_planar(&g);
    match find_k5_or_k33_minor(&g) {
        Some(w) => {
            let verified = verify_minor(&g, &w);
            let relabelled = MinorWitness {
                kind: w.kind,
                branch_sets: w.branch_sets.iter().map(|b| b.iter().map(|&i| labels[i]).collect()).collect(),
            };
            let note = verified.err().unwrap_or_default();
            (!planar && note.is_empty(), Some(relabelled), note)
        }
        None => (false, None, "planar".into()),
    }
}

/// Checks of the full subcomplex `l = K - V` for an independent set `V` of a flag-no-square
/// closed orientable surface `K` of positive genus. The hypotheses on `K` and `V` are
/// verified first.
pub fn menger_certificate(ambient: &str, k: &SComplex, v: &[usize]) -> Result<MengerCertificate, MengerError> {
    surface_hypotheses(k)?;
    if v.is_empty() {
        return Err(MengerError::Hypothesis("empty vertex set".into()));
    }
    let mut removed = v.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if let Some(&x) = removed.iter().find(|&&x| !k.has_vertex(x)) {
        return Err(ComplexError::UnknownVertex(x).into());
    }
    for (i, &a) in removed.iter().enumerate() {
        if let Some(&b) = removed[i + 1..].iter().find(|&&b| k.contains(&[a, b])) {
            return Err(MengerError::Adjacent(a, b));
        }
    }

    let l = complement_subcomplex(k, &removed);
    let mut r = Report::new(format!("menger_{ambient}"));
    r.check("independent", true, json!({"vertices": removed, "size": removed.len()}));

    let full = k.all_simplices().all(|s| !s.iter().all(|x| l.has_vertex(*x)) || l.contains(s));
    let fns = is_flag_no_square(&l);
    r.check("full_flag_no_square", full && fns.holds(), json!({"full": full, "flag_no_square": fns}));

    let (nonplanar, minor, note) = labelled_minor(&l);
    r.check("nonplanar", nonplanar, json!({"minor": minor, "verification": note}));

    let ins = is_inseparable(&l);
    r.check("inseparable", ins.inseparable, json!(ins));

    match pcd_with_witness(&l) {
        Ok(p) => r.check("pcd_equals_1", p.value == 1, json!(p)),
        Err(e) => {
            r.fail("pcd_equals_1", e);
            false
        }
    };
    let join = is_join(&l);
    r.check("not_a_join", !join, json!({"join_factors": join_factors(&l)}));

    let removal = RemovalCounts {
        removed: removed.len(),
        edges_removed: k.count(1) - l.count(1),
        triangles_removed: k.count(2) - l.count(2),
    };
    let verdict = r.pass;
    Ok(MengerCertificate {
        ambient: ambient.into(),
        ambient_f_vector: k.f_vector(),
        removed_vertices: removed,
        l_f_vector: l.f_vector(),
        l,
        minor,
        removal,
        checks: r,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InductionStep {
    pub vertex: usize,
    pub l: SComplex,
    pub checks: Report,
}

/// One step of the induction: `m` is a non-planar inseparable full subcomplex of
/// `ambient` in which the link of `v` is a cycle; removing `v` keeps it non-planar and
/// inseparable, with `pcd = 1`.
pub fn induction_step(ambient: &SComplex, m: &SComplex, v: usize) -> Result<InductionStep, MengerError> {
    if !m.has_vertex(v) {
        return Err(ComplexError::UnknownVertex(v).into());
    }
    let lk = link(m, &[v])?;
    if !is_single_cycle(&lk) {
        return Err(MengerError::Hypothesis(format!("link of {v} is not a cycle (f-vector {:?})", lk.f_vector())));
    }
    let full = ambient.all_simplices().all(|s| !s.iter().all(|x| m.has_vertex(*x)) || m.contains(s));
    if !full {
        return Err(MengerError::Hypothesis("not a full subcomplex of the ambient complex".into()));
    }
    if is_planar(&m.graph().0) {
        return Err(MengerError::Hypothesis("1-skeleton is planar".into()));
    }
    let ins = is_inseparable(m);
    if !ins.inseparable {
        return Err(MengerError::Hypothesis(format!("separable: {:?}", ins.witness)));
    }

    let l = complement_subcomplex(m, &[v]);
    let mut r = Report::new(format!("remove_{v}"));
    let (nonplanar, minor, note) = labelled_minor(&l);
    r.check("nonplanar", nonplanar, json!({"minor": minor, "verification": note}));
    let ins = is_inseparable(&l);
    r.check("inseparable", ins.inseparable, json!(ins));
    match pcd_with_witness(&l) {
        Ok(p) => r.check("pcd_equals_1", p.value == 1, json!(p)),
        Err(e) => {
            r.fail("pcd_equals_1", e);
            false
        }
    };
    Ok(InductionStep { vertex: v, l, checks: r })
}

/// Removes the vertices of `v` one at a time with [`induction_step`].
pub fn replay_induction(k: &SComplex, v: &[usize]) -> Result<Vec<InductionStep>, MengerError> {
    let mut m = k.clone();
    let mut steps = Vec::with_capacity(v.len());
    for &x in v {
        let step = induction_step(k, &m, x)?;
        m = step.l.clone();
        steps.push(step);
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSixFacts {
    pub degree_histogram: BTreeMap<usize, usize>,
    pub all_degree_six: bool,
    pub triangles: usize,
    pub triangles_mod_6: usize,
}

/// Vertex degrees and the number of triangles mod 6.
pub fn degree6_obstruction_facts(k: &SComplex) -> DegreeSixFacts {
    let h = degree_histogram(k);
    let t = k.count(2);
    DegreeSixFacts { all_degree_six: h.keys().eq([6].iter()), degree_histogram: h, triangles: t, triangles_mod_6: t % 6 }
}

/// Centers of the hexagonal tiling of the 21-vertex torus, `{3, 6, ..., 21}`.
pub fn t21_hexagon_centers() -> Vec<usize> {
    (1..=7).map(|i| 3 * i).collect()
}

/// Certificate for the 21-vertex torus minus the hexagon centers.
pub fn menger_gamma6() -> Result<MengerCertificate, MengerError> {
    let t = crate::gamma6::build_t21().map_err(|e| MengerError::Hypothesis(e.to_string()))?;
    let v = independent_vertices(&t.complex, 7, Some(&t21_hexagon_centers()))?;
    menger_certificate("t21", &t.complex, &v)
}

/// Certificate for the 50-vertex boundary torus minus the least independent set of 15
/// vertices.
pub fn menger_gamma4() -> Result<MengerCertificate, MengerError> {
    let hyp = |e: crate::polytope600::PolytopeError| MengerError::Hypothesis(e.to_string());
    let c = crate::polytope600::build_600_cell().map_err(hyp)?;
    let d = crate::polytope600::decompose(&c).map_err(hyp)?;
    let v = independent_vertices(&d.boundary0, 15, None)?;
    menger_certificate("boundary_torus", &d.boundary0, &v)
}

pub fn menger_by_group(group: &str) -> Result<MengerCertificate, MengerError> {
    match group {
        "gamma4" => menger_gamma4(),
        "gamma6" => menger_gamma6(),
        _ => Err(MengerError::Hypothesis(format!("unknown group {group:?}"))),
    }
}
