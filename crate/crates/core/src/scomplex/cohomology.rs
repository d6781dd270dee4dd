use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{complement_subcomplex, ComplexError, SComplex};
use crate::exactalg::smith_normal_form;

/// `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` in a given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub rank: usize,
    #[serde(serialize_with = "ser_torsion")]
    pub torsion: Vec<BigInt>,
}

fn ser_torsion<S: serde::Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|x| x.to_string()))
}

impl CohomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Whether the group is isomorphic to `Z^r` for the given `r`.
    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.rank == r && self.torsion.is_empty()
    }
}

/// Coboundary `C^k -> C^{k+1}` of the augmented cochain complex, rows indexed by
/// `(k+1)`-simplices and columns by `k`-simplices. Degree `-1` has the empty simplex as
/// its single generator.
fn coboundary(k: &SComplex, deg: i32) -> Vec<Vec<i64>> {
    if deg < 0 {
        return vec![vec![1]; k.count(0)];
    }
    let d = deg as usize;
    let cols: BTreeMap<&Vec<usize>, usize> = k.simplices(d).enumerate().map(|(i, s)| (s, i)).collect();
    k.simplices(d + 1)
        .map(|tau| {
            let mut row = vec![0i64; cols.len()];
            for skip in 0..tau.len() {
                let face: Vec<usize> = tau.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                row[cols[&face]] = if skip % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Integral reduced simplicial cohomology in degrees `-1..=max(dim K, 0)`.
///
/// Degree `-1` is nonzero only for the empty complex, where it is `Z`.
pub fn reduced_cohomology(k: &SComplex) -> Vec<CohomologyGroup> {
    let top = k.dim().max(0);
    let size = |deg: i32| if deg < 0 { 1 } else { k.count(deg as usize) };
    // divisors[deg + 1] = nonzero elementary divisors of the coboundary leaving degree `deg`.
    let divisors: Vec<Vec<BigInt>> = (-1..=top)
        .map(|deg| {
            let m = coboundary(k, deg);
            if m.is_empty() || m[0].is_empty() {
                Vec::new()
            } else {
                smith_normal_form(&m)
            }
        })
        .collect();
    (-1..=top)
        .map(|deg| {
            let out = divisors[(deg + 1) as usize].len();
            let incoming: &[BigInt] = if deg < 0 { &[] } else { &divisors[deg as usize] };
            let rank = size(deg) - out - incoming.len();
            let torsion = incoming.iter().filter(|t| !t.is_one()).cloned().collect();
            CohomologyGroup { degree: deg, rank, torsion }
        })
        .collect()
}

/// Highest degree with a nonzero group, if any.
pub fn top_nonvanishing_degree(groups: &[CohomologyGroup]) -> Option<i32> {
    groups.iter().rev().find(|g| !g.is_zero()).map(|g| g.degree)
}

/// A puncture realizing the value of [`pcd`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcdWitness {
    pub value: i32,
    /// The removed simplex (empty for `K` itself).
    pub sigma: Vec<usize>,
    pub cohomology: Vec<CohomologyGroup>,
}

/// Maximum over all simplices `σ` of `K`, including the empty one, of the top degree of
/// nonvanishing reduced cohomology of the full subcomplex on the vertices outside `σ`.
pub fn pcd(k: &SComplex) -> Result<i32, ComplexError> {
    pcd_with_witness(k).map(|w| w.value)
}

/// [`pcd`] together with the first puncture (in simplex order, `∅` first) attaining it.
pub fn pcd_with_witness(k: &SComplex) -> Result<PcdWitness, ComplexError> {
    if k.is_empty() {
        return Err(ComplexError::Empty);
    }
    let mut best: Option<PcdWitness> = None;
    let empty = Vec::new();
    for sigma in std::iter::once(&empty).chain(k.all_simplices()) {
        let punctured = complement_subcomplex(k, sigma);
        let groups = reduced_cohomology(&punctured);
        let value = top_nonvanishing_degree(&groups).unwrap_or(-1);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(PcdWitness { value, sigma: sigma.clone(), cohomology: groups });
        }
    }
    Ok(best.expect("at least the empty puncture"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::{flag_complex_from_graph, Graph};

    fn groups(k: &SComplex) -> Vec<(usize, usize)> {
        reduced_cohomology(k).iter().map(|g| (g.rank, g.torsion.len())).collect()
    }

    /// Minimal 7-vertex torus, triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
    pub(crate) fn moebius_torus() -> SComplex {
        let mut tris = Vec::new();
        for i in 0..7 {
            tris.push([i, (i + 1) % 7, (i + 3) % 7]);
            tris.push([i, (i + 2) % 7, (i + 3) % 7]);
        }
        SComplex::from_simplices(tris)
    }

    #[test]
    fn point_circle_and_empty() {
        assert_eq!(groups(&SComplex::from_simplices([[0]])), vec![(0, 0), (0, 0)]);
        let c5 = flag_complex_from_graph(&Graph::cycle(5));
        assert_eq!(groups(&c5), vec![(0, 0), (0, 0), (1, 0)]);
        assert_eq!(groups(&SComplex::empty()), vec![(1, 0), (0, 0)]);
        assert_eq!(pcd(&c5), Ok(1));
        assert_eq!(pcd(&SComplex::empty()), Err(ComplexError::Empty));
    }

    #[test]
    fn seven_vertex_torus() {
        let t = moebius_torus();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(groups(&t), vec![(0, 0), (0, 0), (2, 0), (1, 0)]);
        // the top coboundary alone: 14 x 21 matrix of rank 13 with trivial divisors
        let divs = smith_normal_form(&coboundary(&t, 1));
        assert_eq!(divs.len(), 13);
        assert!(divs.iter().all(One::is_one));
        assert_eq!(pcd(&t), Ok(2));
    }

    #[test]
    fn projective_plane_has_torsion() {
        // six-vertex real projective plane
        let rp2 = SComplex::from_simplices([
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ]);
        let h = reduced_cohomology(&rp2);
        assert!(h[2].is_zero());
        assert_eq!(h[3].rank, 0);
        assert_eq!(h[3].torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn full_simplex_punctures_to_empty() {
        let tri = SComplex::from_simplices([[0, 1, 2]]);
        let w = pcd_with_witness(&tri).unwrap();
        assert_eq!(w.value, -1);
        assert!(w.sigma.is_empty());
    }
}
