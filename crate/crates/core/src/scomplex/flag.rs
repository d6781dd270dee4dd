use std::collections::BTreeSet;

use serde::Serialize;

use super::{Graph, SComplex};

/// Highest simplex dimension materialized by [`flag_complex_from_graph`].
pub const MAX_STORED_DIM: usize = 3;

/// Flag complex of `g` on vertices `0..n`, with cliques stored up to dimension
/// [`MAX_STORED_DIM`]. Use [`flag_complex_with_overflow`] to learn about larger cliques.
pub fn flag_complex_from_graph(g: &Graph) -> SComplex {
    flag_complex_with_overflow(g).0
}

/// Like [`flag_complex_from_graph`], also returning the lexicographically least clique
/// on `MAX_STORED_DIM + 2` vertices if one exists (such cliques are not stored).
pub fn flag_complex_with_overflow(g: &Graph) -> (SComplex, Option<Vec<usize>>) {
    let n = g.n();
    let mut tables: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); MAX_STORED_DIM + 1];
    let mut overflow = None;
    for a in 0..n {
        tables[0].insert(vec![a]);
    }
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..n)
        .rev()
        .map(|a| (vec![a], g.neighbors(a).iter().copied().filter(|&b| b > a).collect()))
        .collect();
    while let Some((clique, cands)) = stack.pop() {
        if clique.len() == MAX_STORED_DIM + 1 {
            if overflow.is_none() {
                if let Some(&e) = cands.first() {
                    let mut big = clique.clone();
                    big.push(e);
                    overflow = Some(big);
                }
            }
            continue;
        }
        for (i, &b) in cands.iter().enumerate().rev() {
            let mut next = clique.clone();
            next.push(b);
            let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&c| g.has_edge(b, c)).collect();
            tables[next.len() - 1].insert(next.clone());
            stack.push((next, rest));
        }
    }
    (SComplex::from_tables(tables), overflow)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagCheck {
    pub flag: bool,
    /// A clique of the 1-skeleton that is not a simplex, minimal under inclusion.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagNoSquareCheck {
    pub flag: bool,
    pub no_square: bool,
    pub witness_clique: Option<Vec<usize>>,
    /// An induced 4-cycle, listed in cyclic order.
    pub witness_square: Option<[usize; 4]>,
}

impl FlagNoSquareCheck {
    pub fn holds(&self) -> bool {
        self.flag && self.no_square
    }
}

/// Every clique of the 1-skeleton spans a simplex. Checked by trying to extend each
/// simplex by a common neighbor of its vertices.
pub fn is_flag(k: &SComplex) -> FlagCheck {
    let adj = k.adjacency();
    for sigma in k.all_simplices() {
        let first = &adj[&sigma[0]];
        for &v in first {
            if sigma.binary_search(&v).is_ok() || !sigma[1..].iter().all(|x| adj[x].binary_search(&v).is_ok()) {
                continue;
            }
            let mut tau = sigma.clone();
            tau.push(v);
            tau.sort_unstable();
            if !k.contains(&tau) {
                return FlagCheck { flag: false, witness: Some(tau) };
            }
        }
    }
    FlagCheck { flag: true, witness: None }
}

/// Lexicographically least induced 4-cycle `a-b-c-d` of `g` with `a < c`, `b < d`.
pub fn find_induced_square(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for c in a + 1..n {
            if g.has_edge(a, c) {
                continue;
            }
            let common: Vec<usize> = g.neighbors(a).iter().copied().filter(|&x| g.has_edge(x, c)).collect();
            for (i, &b) in common.iter().enumerate() {
                if let Some(&d) = common[i + 1..].iter().find(|&&d| !g.has_edge(b, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

pub fn is_flag_no_square(k: &SComplex) -> FlagNoSquareCheck {
    let f = is_flag(k);
    let (g, labels) = k.graph();
    let sq = find_induced_square(&g).map(|s| s.map(|i| labels[i]));
    FlagNoSquareCheck { flag: f.flag, no_square: sq.is_none(), witness_clique: f.witness, witness_square: sq }
}
