use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::SComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceClassification {
    pub is_closed_surface: bool,
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub genus: Option<u32>,
    /// Why the complex is not a closed surface, when it is not.
    pub failure: Option<String>,
}

impl SurfaceClassification {
    fn reject(k: &SComplex, why: String) -> Self {
        Self {
            is_closed_surface: false,
            orientable: false,
            euler_characteristic: k.euler_characteristic(),
            genus: None,
            failure: Some(why),
        }
    }
}

/// For every vertex, the link as a map from each link vertex to its (up to two) link
/// neighbors.
fn link_maps(k: &SComplex) -> BTreeMap<usize, BTreeMap<usize, Vec<usize>>> {
    let mut out: BTreeMap<usize, BTreeMap<usize, Vec<usize>>> = BTreeMap::new();
    for t in k.triangles() {
        for (x, y, z) in [(t[0], t[1], t[2]), (t[1], t[0], t[2]), (t[2], t[0], t[1])] {
            let l = out.entry(x).or_default();
            l.entry(y).or_default().push(z);
            l.entry(z).or_default().push(y);
        }
    }
    out
}

fn is_cycle(l: &BTreeMap<usize, Vec<usize>>) -> bool {
    if l.len() < 3 || l.values().any(|nb| nb.len() != 2) {
        return false;
    }
    let start = *l.keys().next().unwrap();
    let (mut prev, mut cur, mut steps) = (start, l[&start][0], 1);
    while cur != start {
        let nb = &l[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == l.len()
}

/// Recognizes triangulated closed connected surfaces and determines orientability and
/// genus (genus is reported only for orientable surfaces).
pub fn classify_closed_surface(k: &SComplex) -> SurfaceClassification {
    if k.dim() != 2 {
        return SurfaceClassification::reject(k, format!("dimension {} is not 2", k.dim()));
    }
    let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = k.edges().into_iter().map(|e| (e, Vec::new())).collect();
    let tris: Vec<&Vec<usize>> = k.triangles().collect();
    for (ti, t) in tris.iter().enumerate() {
        for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            edge_tris.get_mut(&e).unwrap().push(ti);
        }
    }
    if let Some((e, ts)) = edge_tris.iter().find(|(_, ts)| ts.len() != 2) {
        return SurfaceClassification::reject(k, format!("edge {e:?} lies in {} triangles", ts.len()));
    }
    let links = link_maps(k);
    for v in k.vertices() {
        if !links.get(&v).is_some_and(is_cycle) {
            return SurfaceClassification::reject(k, format!("link of vertex {v} is not a single cycle"));
        }
    }
    if !k.is_connected() {
        return SurfaceClassification::reject(k, "not connected".into());
    }
    // orientation[t] = +1 keeps the sorted order (a, b, c), -1 reverses it
    let mut orient = vec![0i8; tris.len()];
    let dir = |t: &[usize], o: i8, x: usize, y: usize| -> bool {
        // whether triangle t with orientation o traverses x -> y
        let i = t.iter().position(|&v| v == x).unwrap();
        let j = t.iter().position(|&v| v == y).unwrap();
        ((j + 3 - i) % 3 == 1) == (o > 0)
    };
    let mut orientable = true;
    orient[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(ti) = queue.pop_front() {
        let t = tris[ti];
        for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let other = *edge_tris[&(x, y)].iter().find(|&&s| s != ti).unwrap();
            let forward = dir(t, orient[ti], x, y);
            let want: i8 = if dir(tris[other], 1, x, y) == forward { -1 } else { 1 };
            if orient[other] == 0 {
                orient[other] = want;
                queue.push_back(other);
            } else if orient[other] != want {
                orientable = false;
            }
        }
    }
    let chi = k.euler_characteristic();
    SurfaceClassification {
        is_closed_surface: true,
        orientable,
        euler_characteristic: chi,
        genus: if orientable { Some(((2 - chi) / 2) as u32) } else { None },
        failure: None,
    }
}

/// Isomorphism invariant of a connected closed-surface triangulation: the minimum, over
/// all starting flags, of the sorted triangle list after relabeling vertices in
/// breadth-first order around links. Two such complexes are isomorphic exactly when
/// their codes agree. Returns `None` when some vertex link is not a cycle or the complex
/// is disconnected.
pub fn surface_canonical_code(k: &SComplex) -> Option<Vec<[usize; 3]>> {
    let links = link_maps(k);
    let verts = k.vertices();
    if verts.is_empty() || verts.iter().any(|v| !links.get(v).is_some_and(is_cycle)) {
        return None;
    }
    let mut best: Option<Vec<[usize; 3]>> = None;
    for t in k.triangles() {
        for (x, y, z) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[0], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1]), (t[2], t[1], t[0])] {
            let code = relabel_from(k, &links, verts.len(), (x, y, z))?;
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best
}

fn relabel_from(
    k: &SComplex,
    links: &BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
    n: usize,
    start: (usize, usize, usize),
) -> Option<Vec<[usize; 3]>> {
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    // reference flag per vertex: walk its link starting at r.0 towards r.1
    let mut reference: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    label.insert(start.0, 0);
    reference.insert(start.0, (start.1, start.2));
    let mut order = vec![start.0];
    let mut idx = 0;
    while idx < order.len() {
        let x = order[idx];
        idx += 1;
        let l = &links[&x];
        let (first, second) = reference[&x];
        let mut walk = vec![first];
        let (mut prev, mut cur) = (first, second);
        while cur != first {
            walk.push(cur);
            let nb = &l[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        let len = walk.len();
        for (i, &a) in walk.iter().enumerate() {
            if !label.contains_key(&a) {
                label.insert(a, label.len());
                // seen from a, the triangle (x, a, walk[i-1]) continues the orientation
                reference.insert(a, (x, walk[(i + len - 1) % len]));
                order.push(a);
            }
        }
    }
    if label.len() != n {
        return None;
    }
    let mut code: Vec<[usize; 3]> = k
        .triangles()
        .map(|t| {
            let mut r = [label[&t[0]], label[&t[1]], label[&t[2]]];
            r.sort_unstable();
            r
        })
        .collect();
    code.sort_unstable();
    Some(code)
}
