//! Menger certificates against direct recomputation.

use proptest::prelude::*;

use reflekt::gamma6::build_t21;
use reflekt::menger::{
    degree6_obstruction_facts, independent_vertices, menger_gamma4, menger_gamma6, replay_induction,
    t21_hexagon_centers,
};
use reflekt::polytope600::{build_600_cell, decompose};

#[test]
fn hexagon_centers_are_an_accepted_hint() {
    let t = build_t21().unwrap();
    let c = t21_hexagon_centers();
    assert_eq!(independent_vertices(&t.complex, 7, Some(&c)).unwrap(), c);
    for (a, b) in t.complex.edges() {
        assert!(!(c.contains(&a) && c.contains(&b)));
    }
}

#[test]
fn removal_costs_six_edges_and_six_triangles_per_vertex() {
    let m = menger_gamma6().unwrap();
    assert!(m.verdict);
    assert_eq!(m.removal.edges_removed, 6 * 7);
    assert_eq!(m.removal.triangles_removed, 6 * 7);
    assert_eq!(m.l_f_vector, vec![14, 63 - 42]);

    let m = menger_gamma4().unwrap();
    assert!(m.verdict);
    assert_eq!(m.removal.edges_removed, 6 * 15);
    assert_eq!(m.removal.triangles_removed, 6 * 15);
    assert_eq!(m.l_f_vector, vec![35, 150 - 90, 100 - 90]);
}

#[test]
fn gamma4_removed_set_is_independent_in_the_torus() {
    let c = build_600_cell().unwrap();
    let d = decompose(&c).unwrap();
    let m = menger_gamma4().unwrap();
    assert_eq!(m.removed_vertices.len(), 15);
    for (a, b) in d.boundary0.edges() {
        assert!(!(m.removed_vertices.contains(&a) && m.removed_vertices.contains(&b)));
    }
}

#[test]
fn t21_degree_and_triangle_facts() {
    let t = build_t21().unwrap();
    let f = degree6_obstruction_facts(&t.complex);
    assert!(f.all_degree_six);
    assert_eq!(f.triangles, 42);
    assert_eq!(f.triangles_mod_6, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Any order of removal reaches the same subcomplex, and every step keeps the
    /// hypotheses of the next.
    #[test]
    fn induction_order_does_not_matter(perm in Just(t21_hexagon_centers()).prop_shuffle()) {
        let t = build_t21().unwrap();
        let direct = menger_gamma6().unwrap();
        let steps = replay_induction(&t.complex, &perm).unwrap();
        prop_assert_eq!(steps.len(), 7);
        prop_assert!(steps.iter().all(|s| s.checks.pass));
        prop_assert_eq!(&steps.last().unwrap().l, &direct.l);
    }
}
