//! Planarity by the Demoucron–Malgrange–Pertuiset path-addition algorithm, run on each
//! biconnected block. A planar answer carries the face boundaries of every block, which
//! [`verify_embedding`] checks independently.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockFaces {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Oriented face boundaries; every directed edge of the block occurs in exactly one.
    /// Empty for a bridge.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarEmbedding {
    pub blocks: Vec<BlockFaces>,
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Face data for each block of `g`, or `None` when `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<PlanarEmbedding> {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut blocks = Vec::new();
    for edges in biconnected_blocks(g) {
        let verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
        let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ledges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (local[&a], local[&b])).collect();
        let faces = embed_block(verts.len(), &ledges)?;
        let faces = faces.into_iter().map(|f| f.into_iter().map(|i| verts[i]).collect()).collect();
        let mut edges = edges;
        edges.sort_unstable();
        blocks.push(BlockFaces { vertices: verts, edges, faces });
    }
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));
    Some(PlanarEmbedding { blocks })
}

/// Edge sets of the biconnected components, each edge as `(min, max)`.
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, v: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &w in s.g.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push((v.min(w), v.max(w)));
                dfs(s, w, Some(v));
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let key = (v.min(w), v.max(w));
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == key {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push((v.min(w), v.max(w)));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut s = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

struct Fragment {
    attach: Vec<usize>,
    edge: Option<(usize, usize)>,
    inner: Vec<usize>,
}

/// Faces of a planar embedding of a biconnected graph on `0..n`, or `None`.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let m = edges.len();
    if m == 1 {
        return Some(Vec::new());
    }
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj.iter_mut().for_each(|l| l.sort_unstable());

    let cycle = find_cycle(n, &adj);
    let mut on = vec![false; n];
    let mut used = vec![false; n * n];
    let mut used_count = 0;
    let mark = |used: &mut Vec<bool>, a: usize, b: usize| {
        used[a * n + b] = true;
        used[b * n + a] = true;
    };
    for (i, &v) in cycle.iter().enumerate() {
        on[v] = true;
        mark(&mut used, v, cycle[(i + 1) % cycle.len()]);
        used_count += 1;
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while used_count < m {
        let frags = fragments(n, &adj, &on, &used);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; n];
                f.iter().for_each(|&v| s[v] = true);
                s
            })
            .collect();
        let admissible: Vec<Vec<usize>> = frags
            .iter()
            .map(|fr| (0..faces.len()).filter(|&fi| fr.attach.iter().all(|&a| face_sets[fi][a])).collect())
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let fi = admissible[pick][0];
        let path = fragment_path(&frags[pick], &adj, &on);
        for w in path.windows(2) {
            mark(&mut used, w[0], w[1]);
            used_count += 1;
        }
        path.iter().for_each(|&v| on[v] = true);
        let face = faces.swap_remove(fi);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    faces.sort();
    Some(faces)
}

fn find_cycle(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            } else if parent[v] != w {
                let (mut a, mut b) = (v, w);
                let (mut left, mut right) = (vec![a], vec![b]);
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                right.reverse();
                left.extend(right);
                return left;
            }
        }
    }
    unreachable!("biconnected block with at least two edges has a cycle")
}

fn fragments(n: usize, adj: &[Vec<usize>], on: &[bool], used: &[bool]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for a in 0..n {
        if !on[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && on[b] && !used[a * n + b] {
                out.push(Fragment { attach: vec![a, b], edge: Some((a, b)), inner: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if on[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if on[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attach: attach.into_iter().collect(), edge: None, inner });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(fr: &Fragment, adj: &[Vec<usize>], on: &[bool]) -> Vec<usize> {
    if let Some((a, b)) = fr.edge {
        return vec![a, b];
    }
    let a = fr.attach[0];
    let inner: BTreeSet<usize> = fr.inner.iter().copied().collect();
    let x = *adj[a].iter().find(|w| inner.contains(w)).expect("attachment touches fragment");
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    prev.insert(x, x);
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        if let Some(&b) = adj[v].iter().find(|&&w| on[w] && w != a) {
            let mut path = vec![b, v];
            let mut cur = v;
            while prev[&cur] != cur {
                cur = prev[&cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[v] {
            if inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected graph has two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let interior = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut t = i;
    loop {
        f1.push(face[t]);
        if t == j {
            break;
        }
        t = (t + 1) % k;
    }
    f1.extend(interior.iter().rev());
    let mut f2 = Vec::new();
    let mut t = j;
    loop {
        f2.push(face[t]);
        if t == i {
            break;
        }
        t = (t + 1) % k;
    }
    f2.extend(interior.iter());
    (f1, f2)
}

/// Checks that `emb` is a genus-0 embedding of `g`: the blocks partition the edges and
/// are glued along a forest of cut vertices, and in every non-bridge block the faces use
/// each directed edge once, rotate around every vertex as a single cycle, and satisfy
/// `V - E + F = 2`.
pub fn verify_embedding(g: &Graph, emb: &PlanarEmbedding) -> Result<(), String> {
    let mut all: Vec<(usize, usize)> = emb.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
    all.sort_unstable();
    if all != g.edges() {
        return Err("block edge sets do not partition the edges".into());
    }
    // block/vertex incidence graph must be a forest
    let touched: BTreeSet<usize> = emb.blocks.iter().flat_map(|b| b.vertices.iter().copied()).collect();
    let nodes = emb.blocks.len() + touched.len();
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let vidx: BTreeMap<usize, usize> = touched.iter().enumerate().map(|(i, &v)| (v, emb.blocks.len() + i)).collect();
    for (bi, b) in emb.blocks.iter().enumerate() {
        for v in &b.vertices {
            let (x, y) = (find(&mut parent, bi), find(&mut parent, vidx[v]));
            if x == y {
                return Err(format!("blocks form a cycle through vertex {v}"));
            }
            parent[x] = y;
        }
    }
    for b in &emb.blocks {
        let vs: BTreeSet<usize> = b.edges.iter().flat_map(|&(x, y)| [x, y]).collect();
        if vs.into_iter().collect::<Vec<_>>() != b.vertices {
            return Err("block vertex list does not match its edges".into());
        }
        if b.edges.len() == 1 {
            if !b.faces.is_empty() {
                return Err("bridge block with faces".into());
            }
            continue;
        }
        verify_block(b)?;
    }
    Ok(())
}

fn verify_block(b: &BlockFaces) -> Result<(), String> {
    let edges: BTreeSet<(usize, usize)> = b.edges.iter().copied().collect();
    // next[(u, v)] = w when some face walks u -> v -> w
    let mut next: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut darts = BTreeSet::new();
    for f in &b.faces {
        let k = f.len();
        if k < 3 {
            return Err(format!("degenerate face {f:?}"));
        }
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            if !edges.contains(&(u.min(v), u.max(v))) {
                return Err(format!("face {f:?} uses non-edge ({u}, {v})"));
            }
            if !darts.insert((u, v)) {
                return Err(format!("directed edge ({u}, {v}) used twice"));
            }
            next.insert((u, v), w);
        }
    }
    if darts.len() != 2 * edges.len() {
        return Err("some directed edge is on no face".into());
    }
    for &v in &b.vertices {
        let nb: Vec<usize> = edges.iter().filter_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None }).collect();
        // corner map u -> w for faces passing u -> v -> w
        let start = nb[0];
        let mut cur = start;
        let mut steps = 0;
        loop {
            cur = next[&(cur, v)];
            steps += 1;
            if cur == start || steps > nb.len() {
                break;
            }
        }
        if steps != nb.len() {
            return Err(format!("rotation at vertex {v} is not a single cycle"));
        }
    }
    let chi = b.vertices.len() as i64 - edges.len() as i64 + b.faces.len() as i64;
    if chi != 2 {
        return Err(format!("Euler characteristic {chi} instead of 2"));
    }
    Ok(())
}
