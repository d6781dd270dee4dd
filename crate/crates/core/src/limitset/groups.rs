//! Float generators for the two groups, rounded from interval enclosures.

use super::{GroupElem, LimitSetError, ReflectionGroup};
use crate::exactalg::IntervalMatrix;
use crate::gamma6::{build_sigma_y, circulant_graph, h6_reflections, DIFFERENCE_SET, N};
use crate::polytope600::{build_600_cell, decompose, gamma4_generators};

const GENERATOR_PRECISION: u32 = 128;

fn to_elems(ms: &[IntervalMatrix]) -> Vec<GroupElem> {
    ms.iter().enumerate().map(|(i, m)| GroupElem::from_rows(&m.midpoints(), vec![i])).collect()
}

fn construction(e: impl std::fmt::Display) -> LimitSetError {
    LimitSetError::Construction(e.to_string())
}

/// Reflections in the 50 facets of the right-angled 120-cell dual to the vertices of the
/// first boundary torus, in increasing 600-cell vertex order.
pub fn gamma4_group() -> Result<ReflectionGroup, LimitSetError> {
    let c = build_600_cell().map_err(construction)?;
    let d = decompose(&c).map_err(construction)?;
    let verts = d.boundary0.vertices();
    let gens = gamma4_generators(&c, &verts, GENERATOR_PRECISION);
    ReflectionGroup::new("gamma4", to_elems(&gens), verts.clone(), &c.graph().induced(&verts))
}

/// The reflections `s_1, ..., s_21` in `O(6, 1)`.
pub fn gamma6_group() -> Result<ReflectionGroup, LimitSetError> {
    let sy = build_sigma_y(GENERATOR_PRECISION).map_err(construction)?;
    let h = h6_reflections(&sy).map_err(construction)?;
    ReflectionGroup::new("gamma6", to_elems(&h.reflections), (1..=N).collect(), &circulant_graph(N, &DIFFERENCE_SET))
}

pub fn group_by_name(name: &str) -> Result<ReflectionGroup, LimitSetError> {
    match name {
        "gamma4" => gamma4_group(),
        "gamma6" => gamma6_group(),
        _ => Err(LimitSetError::Argument(format!("unknown group {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commuting_generators_commute(g: &ReflectionGroup) {
        for i in 0..g.rank() {
            for j in i + 1..g.rank() {
                let a = g.generators[i].mat_mul(&g.generators[j]);
                let b = g.generators[j].mat_mul(&g.generators[i]);
                let close = a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9);
                assert_eq!(close, g.commutes(i, j), "generators {i} and {j}");
            }
        }
    }

    #[test]
    fn gamma6_generators() {
        let g = gamma6_group().unwrap();
        assert_eq!((g.rank(), g.matrix_size()), (21, 7));
        assert!(g.max_generator_drift() < 1e-14);
        commuting_generators_commute(&g);
    }

    #[test]
    fn gamma4_generators_commute_on_edges() {
        let g = gamma4_group().unwrap();
        assert_eq!((g.rank(), g.matrix_size()), (50, 5));
        commuting_generators_commute(&g);
        let c2 = g.shortlex_counts(2);
        assert_eq!(c2, vec![1, 50, 50 * 49 - 150]);
    }
}
