use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{is_planar, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinorKind {
    K5,
    K33,
}

/// Branch sets of a `K5` or `K3,3` minor. For `K3,3` the first three sets form one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub kind: MinorKind,
    pub branch_sets: Vec<Vec<usize>>,
}

/// A `K5` or `K3,3` minor of `g`, or `None` when `g` is planar.
///
/// Vertices and then edges are deleted greedily while the graph stays non-planar, which
/// leaves a subdivision of one of the two Kuratowski graphs. Each subdivided path is
/// contracted into the branch vertex at its start.
pub fn find_k5_or_k33_minor(g: &Graph) -> Option<MinorWitness> {
    if is_planar(g) {
        return None;
    }
    let mut h = g.clone();
    for v in 0..h.n() {
        let nb = h.neighbors(v).to_vec();
        if nb.is_empty() {
            continue;
        }
        let mut trial = h.clone();
        nb.iter().for_each(|&w| trial.remove_edge(v, w));
        if !is_planar(&trial) {
            h = trial;
        }
    }
    for (a, b) in h.edges() {
        h.remove_edge(a, b);
        if is_planar(&h) {
            h.add_edge(a, b).unwrap();
        }
    }
    let w = contract_subdivision(&h)?;
    debug_assert!(verify_minor(g, &w).is_ok());
    Some(w)
}

fn contract_subdivision(h: &Graph) -> Option<MinorWitness> {
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let is_branch: BTreeSet<usize> = branch.iter().copied().collect();
    let mut owner: BTreeMap<usize, usize> = branch.iter().map(|&b| (b, b)).collect();
    let mut links: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &b in &branch {
        for &first in h.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            let mut interior = Vec::new();
            while !is_branch.contains(&cur) {
                interior.push(cur);
                let nb = h.neighbors(cur);
                if nb.len() != 2 {
                    return None;
                }
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            if b < cur {
                interior.iter().for_each(|&x| {
                    owner.insert(x, b);
                });
                links.insert((b, cur));
            }
        }
    }
    let sets = |ids: &[usize]| -> Vec<Vec<usize>> {
        ids.iter().map(|&b| owner.iter().filter(|&(_, &o)| o == b).map(|(&x, _)| x).collect()).collect()
    };
    match (branch.len(), links.len()) {
        (5, 10) => Some(MinorWitness { kind: MinorKind::K5, branch_sets: sets(&branch) }),
        (6, 9) => {
            let linked = |x: usize, y: usize| links.contains(&(x.min(y), x.max(y)));
            let side: Vec<usize> = branch.iter().copied().filter(|&x| x == branch[0] || !linked(branch[0], x)).collect();
            let other: Vec<usize> = branch.iter().copied().filter(|x| !side.contains(x)).collect();
            let ids: Vec<usize> = side.into_iter().chain(other).collect();
            Some(MinorWitness { kind: MinorKind::K33, branch_sets: sets(&ids) })
        }
        _ => None,
    }
}

/// Checks that the branch sets are non-empty, pairwise disjoint, induce connected
/// subgraphs of `g`, and are joined by edges as the minor requires.
pub fn verify_minor(g: &Graph, w: &MinorWitness) -> Result<(), String> {
    let expect = match w.kind {
        MinorKind::K5 => 5,
        MinorKind::K33 => 6,
    };
    if w.branch_sets.len() != expect {
        return Err(format!("{} branch sets, expected {expect}", w.branch_sets.len()));
    }
    let mut seen = BTreeSet::new();
    for s in &w.branch_sets {
        if s.is_empty() {
            return Err("empty branch set".into());
        }
        for &v in s {
            if v >= g.n() {
                return Err(format!("vertex {v} out of range"));
            }
            if !seen.insert(v) {
                return Err(format!("vertex {v} in two branch sets"));
            }
        }
        if !induced_connected(g, s) {
            return Err(format!("branch set {s:?} is not connected"));
        }
    }
    let touches = |x: &[usize], y: &[usize]| x.iter().any(|&a| y.iter().any(|&b| g.has_edge(a, b)));
    for i in 0..expect {
        for j in i + 1..expect {
            let needed = match w.kind {
                MinorKind::K5 => true,
                MinorKind::K33 => (i < 3) != (j < 3),
            };
            if needed && !touches(&w.branch_sets[i], &w.branch_sets[j]) {
                return Err(format!("branch sets {i} and {j} are not adjacent"));
            }
        }
    }
    Ok(())
}

fn induced_connected(g: &Graph, s: &[usize]) -> bool {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let mut seen = BTreeSet::from([s[0]]);
    let mut queue = VecDeque::from([s[0]]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == set.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::planar_embedding;
    use crate::scomplex::planarity::verify_embedding;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kuratowski_graphs() {
        assert_eq!(find_k5_or_k33_minor(&Graph::complete(4)), None);
        let w = find_k5_or_k33_minor(&Graph::complete(5)).unwrap();
        assert_eq!(w.kind, MinorKind::K5);
        assert_eq!(w.branch_sets, (0..5).map(|v| vec![v]).collect::<Vec<_>>());
        let w = find_k5_or_k33_minor(&Graph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(w.kind, MinorKind::K33);
        assert_eq!(w.branch_sets, (0..6).map(|v| vec![v]).collect::<Vec<_>>());
    }

    #[test]
    fn petersen_has_k33_minor() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::from_edges(10, &e).unwrap();
        let w = find_k5_or_k33_minor(&g).unwrap();
        verify_minor(&g, &w).unwrap();
    }

    #[test]
    fn bad_witness_rejected() {
        let g = Graph::complete_bipartite(3, 3);
        let w = MinorWitness { kind: MinorKind::K33, branch_sets: vec![vec![0], vec![3], vec![1], vec![2], vec![4], vec![5]] };
        assert!(verify_minor(&g, &w).is_err());
        let w = MinorWitness { kind: MinorKind::K5, branch_sets: (0..5).map(|v| vec![v]).collect() };
        assert!(verify_minor(&g, &w).is_err());
    }

    #[test]
    fn random_graphs_agree_with_wagner() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let p: f64 = rng.gen_range(0.1..0.7);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            match (planar_embedding(&g), find_k5_or_k33_minor(&g)) {
                (Some(emb), None) => verify_embedding(&g, &emb).unwrap(),
                (None, Some(w)) => verify_minor(&g, &w).unwrap(),
                _ => panic!("planarity and minor search disagree"),
            }
        }
    }
}
