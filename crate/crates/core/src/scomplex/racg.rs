use serde::Serialize;

use super::{is_flag_no_square, pcd, ComplexError, FlagNoSquareCheck, Graph, SComplex};

/// `< s_v (v in generators) | s_v^2 = 1, [s_a, s_b] = 1 for (a, b) in commuting_pairs >`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RacgPresentation {
    pub generators: Vec<usize>,
    pub commuting_pairs: Vec<(usize, usize)>,
}

impl RacgPresentation {
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.commuting_pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Relators as words in generator indices.
    pub fn relators(&self) -> Vec<Vec<usize>> {
        let squares = self.generators.iter().map(|&s| vec![s, s]);
        let commutators = self.commuting_pairs.iter().map(|&(a, b)| vec![a, b, a, b]);
        squares.chain(commutators).collect()
    }
}

pub fn racg_from_nerve(g: &Graph) -> RacgPresentation {
    RacgPresentation { generators: (0..g.n()).collect(), commuting_pairs: g.edges() }
}

/// The right-angled Coxeter group with nerve `k` is Gromov hyperbolic exactly when `k`
/// is flag with no induced square.
pub fn hyperbolicity(k: &SComplex) -> FlagNoSquareCheck {
    is_flag_no_square(k)
}

/// Dimension of the Gromov boundary, `pcd(k)`, for a flag-no-square nerve.
pub fn boundary_dim(k: &SComplex) -> Result<i32, ComplexError> {
    let h = hyperbolicity(k);
    if !h.holds() {
        let why = match (h.witness_clique, h.witness_square) {
            (Some(c), _) => format!("clique {c:?} spans no simplex"),
            (_, Some(s)) => format!("induced square {s:?}"),
            _ => unreachable!(),
        };
        return Err(ComplexError::NotFlagNoSquare(why));
    }
    pcd(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::flag_complex_from_graph;

    #[test]
    fn square_nerve() {
        let c4 = flag_complex_from_graph(&Graph::cycle(4));
        assert!(!hyperbolicity(&c4).holds());
        assert!(matches!(boundary_dim(&c4), Err(ComplexError::NotFlagNoSquare(_))));
        let p = racg_from_nerve(&Graph::cycle(4));
        assert_eq!(p.generators.len(), 4);
        assert!(p.commute(3, 0) && !p.commute(0, 2));
        assert_eq!(p.relators().len(), 8);
    }

    #[test]
    fn pentagon_group_has_circle_boundary() {
        let c5 = flag_complex_from_graph(&Graph::cycle(5));
        assert_eq!(boundary_dim(&c5), Ok(1));
    }
}
