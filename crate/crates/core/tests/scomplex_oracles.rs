//! Complex-level facts checked against independent brute-force computations.

mod common;

use std::collections::{BTreeSet, VecDeque};

use reflekt::gamma6::build_t21;
use reflekt::menger::t21_hexagon_centers;
use reflekt::polytope600::{build_600_cell, decompose};
use reflekt::scomplex::{
    complement_subcomplex, is_inseparable, is_join, pcd, reduced_cohomology, SComplex,
};

/// Reduced Betti numbers over `GF(p)` from ranks of boundary matrices.
fn reduced_betti_mod_p(k: &SComplex, p: i64) -> Vec<usize> {
    let dim = k.dim() as usize;
    let simplices: Vec<Vec<Vec<usize>>> = (0..=dim).map(|d| k.simplices(d).cloned().collect()).collect();
    // rank of the boundary from degree d to d-1, with the augmentation in degree 0
    let rank = |d: usize| -> usize {
        if d == 0 {
            return usize::from(!simplices[0].is_empty());
        }
        if d > dim {
            return 0;
        }
        let lower = &simplices[d - 1];
        let m: Vec<Vec<i64>> = simplices[d]
            .iter()
            .map(|s| {
                let mut row = vec![0i64; lower.len()];
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let idx = lower.binary_search(&face).unwrap();
                    row[idx] = if skip % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        common::rank_mod_p(&m, p)
    };
    (0..=dim).map(|d| simplices[d].len() - rank(d) - rank(d + 1)).collect()
}

#[test]
fn t21_cohomology_by_rank_counting() {
    let k = build_t21().unwrap().complex;
    for p in [2, 3, 5, 1_000_003] {
        assert_eq!(reduced_betti_mod_p(&k, p), vec![0, 2, 1], "p = {p}");
    }
    let h = reduced_cohomology(&k);
    let ranks: Vec<usize> = h.iter().map(|g| g.rank).collect();
    assert_eq!(ranks, vec![0, 0, 2, 1]);
    assert!(h.iter().all(|g| g.torsion.is_empty()));
    assert_eq!(pcd(&k).unwrap(), 2);
}

#[test]
fn boundary_torus_cohomology_by_rank_counting() {
    let c = build_600_cell().unwrap();
    let b = decompose(&c).unwrap().boundary0;
    for p in [2, 3, 1_000_003] {
        assert_eq!(reduced_betti_mod_p(&b, p), vec![0, 2, 1]);
    }
    assert!(reduced_cohomology(&b)[3].is_free_of_rank(1));
}

fn components(vertices: &BTreeSet<usize>, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &s in vertices {
        if !seen.insert(s) {
            continue;
        }
        count += 1;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in vertices {
                if !seen.contains(&w) && adjacent(v, w) {
                    seen.insert(w);
                    q.push_back(w);
                }
            }
        }
    }
    count
}

/// A complex on at least two vertices is a join exactly when the complement of its
/// 1-skeleton is disconnected.
#[test]
fn punctured_t21_is_not_a_join() {
    let k = build_t21().unwrap().complex;
    let l = complement_subcomplex(&k, &t21_hexagon_centers());
    let vs: BTreeSet<usize> = l.vertices().into_iter().collect();
    let comp = components(&vs, |a, b| a != b && !l.contains(&[a.min(b), a.max(b)]));
    assert_eq!(comp, 1);
    assert!(!is_join(&l));
}

/// Removing any simplex, non-adjacent pair, two edges at a vertex or two triangles on an
/// edge leaves the boundary torus connected; counted by a separate search.
#[test]
fn boundary_torus_inseparable_exhaustively() {
    let c = build_600_cell().unwrap();
    let b = decompose(&c).unwrap().boundary0;
    let vs = b.vertices();
    let connected_without = |removed: &BTreeSet<usize>| {
        let rest: BTreeSet<usize> = vs.iter().copied().filter(|v| !removed.contains(v)).collect();
        components(&rest, |x, y| b.contains(&[x.min(y), x.max(y)])) == 1
    };
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for s in b.all_simplices() {
        sets.insert(s.iter().copied().collect());
    }
    for &x in &vs {
        for &y in &vs {
            if x < y && !b.contains(&[x, y]) {
                sets.insert([x, y].into());
            }
        }
        let nb = b.neighbors(x);
        for &y in &nb {
            for &z in &nb {
                if y < z && !b.contains(&[y.min(z), y.max(z)]) {
                    sets.insert([x, y, z].into());
                }
            }
        }
    }
    for (x, y) in b.edges() {
        let apexes: Vec<usize> =
            b.triangles().filter(|t| t.contains(&x) && t.contains(&y)).flat_map(|t| t.iter().copied().filter(|&v| v != x && v != y)).collect();
        if let [p, q] = apexes[..] {
            sets.insert([x, y, p, q].into());
        }
    }
    assert!(sets.iter().all(connected_without));
    assert!(is_inseparable(&b).inseparable);
}
