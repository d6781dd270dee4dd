//! End-to-end acceptance suite. Runs every criterion in sequence, timing each one, and
//! writes a single `PASS`/`FAIL` line per criterion to stdout (uncaptured).

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reflekt::exactalg::{exact_rank, quad_sign, signature};
use reflekt::gamma6::{
    build_gram_a, build_sigma_y, build_t21, certify_nonintegrality, field21, h6_reflections, verify_gamma6_identities,
};
use reflekt::limitset::{
    brute_force_counts, csv_bytes, default_basepoint, gamma4_group, gamma6_group, orbit_bfs, ply_bytes, ExportOptions,
    DRIFT_BOUND,
};
use reflekt::menger::{menger_gamma4, menger_gamma6};
use reflekt::polytope600::{build_600_cell, census, decompose, field5, gram_p120, neighbor_census};
use reflekt::scomplex::{
    classify_closed_surface, find_k5_or_k33_minor, is_flag_no_square, is_planar, is_single_cycle, link,
    pcd_with_witness, reduced_cohomology, verify_minor, Graph, MinorKind, SComplex,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
    out.flush().unwrap();
}

fn full_in(sub: &SComplex, k: &SComplex) -> bool {
    k.all_simplices().all(|s| !s.iter().all(|v| sub.has_vertex(*v)) || sub.contains(s))
}

fn c1_census() -> Outcome {
    let c = build_600_cell().map_err(|e| e.to_string())?;
    let cs = census(&c.complex);
    ensure(cs.f_vector == [120, 720, 1200, 600], format!("f-vector {:?}", cs.f_vector))?;
    ensure(cs.vertex_edge_degrees.keys().eq([12].iter()), "vertex edge degrees")?;
    ensure(cs.vertex_tetra_degrees.keys().eq([20].iter()), "vertex tetrahedron degrees")?;
    ensure(cs.tetra_per_edge.keys().eq([5].iter()), "tetrahedra per edge")?;
    ensure(is_flag_no_square(&c.complex).holds(), "flag-no-square")?;
    Ok(format!("f-vector {:?}, degrees 12/20, 5 tetrahedra per edge, flag-no-square", cs.f_vector))
}

fn c2_boundary_torus() -> Outcome {
    let c = build_600_cell().map_err(|e| e.to_string())?;
    let d = decompose(&c).map_err(|e| e.to_string())?;
    let b = &d.boundary0;
    ensure(b.f_vector() == [50, 150, 100], format!("f-vector {:?}", b.f_vector()))?;
    ensure(b.adjacency().values().all(|n| n.len() == 6), "degree 6")?;
    let s = classify_closed_surface(b);
    ensure(s.is_closed_surface && s.orientable && s.euler_characteristic == 0 && s.genus == Some(1), format!("{s:?}"))?;
    ensure(is_flag_no_square(b).holds(), "flag-no-square")?;
    ensure(full_in(b, &c.complex), "full subcomplex")?;
    let nc = neighbor_census(&c, &d);
    ensure(nc.per_vertex.len() == 50 && nc.is_uniform([2, 6, 4]), "neighbor census 2+6+4")?;
    Ok("f-vector [50, 150, 100], 6-regular, orientable torus, flag-no-square, full, census 2+6+4 at all 50 vertices".into())
}

fn c3_gram_p120() -> Outcome {
    let c = build_600_cell().map_err(|e| e.to_string())?;
    let g = gram_p120(&c);
    let one = field5().one();
    let minus_one = field5().int(-1);
    let mut zeros = 0;
    for i in 0..120 {
        ensure(*g.get(i, i) == one, format!("diagonal {i}"))?;
        for j in i + 1..120 {
            let e = g.get(i, j);
            let adj = c.graph().has_edge(i, j);
            if e.is_zero() {
                zeros += 1;
            }
            ensure(adj == e.is_zero(), format!("zero pattern at ({i}, {j})"))?;
            ensure(adj || quad_sign(&(e - &minus_one)) < 0, format!("entry ({i}, {j}) not < -1"))?;
        }
    }
    ensure(zeros == 720, format!("{zeros} zero entries"))?;
    let sig = signature(&g);
    ensure(sig.triple() == (4, 1, 115), format!("signature {:?}", sig.triple()))?;
    Ok(format!("720 zeros on adjacencies, other entries < -1, signature {:?}", sig.triple()))
}

fn c4_t21() -> Outcome {
    let t = build_t21().map_err(|e| e.to_string())?;
    let k = &t.complex;
    ensure(k.f_vector() == [21, 63, 42], format!("f-vector {:?}", k.f_vector()))?;
    ensure(is_flag_no_square(k).holds(), "flag-no-square")?;
    let s = classify_closed_surface(k);
    ensure(s.is_closed_surface && s.orientable && s.genus == Some(1), "orientable torus")?;
    for v in k.vertices() {
        let l = link(k, &[v]).map_err(|e| e.to_string())?;
        ensure(is_single_cycle(&l) && l.vertex_count() == 6, format!("link of {v}"))?;
    }
    Ok("f-vector [21, 63, 42], flag-no-square, orientable torus, all links 6-cycles".into())
}

fn c5_gram_a() -> Outcome {
    let a = build_gram_a().map_err(|e| e.to_string())?;
    let sig = signature(&a.matrix);
    ensure(sig.triple() == (6, 1, 14), format!("signature {:?}", sig.triple()))?;
    let rank = exact_rank(&a.matrix.rows());
    ensure(rank == 7, format!("rank {rank}"))?;
    let one = field21().one();
    for (name, x) in [("u", &a.u), ("v", &a.v), ("w", &a.w)] {
        ensure(quad_sign(&(x - &one)) == 1, format!("{name} <= 1"))?;
    }
    Ok(format!("rank 7, signature {:?}, u, v, w > 1", sig.triple()))
}

fn c6_identities() -> Outcome {
    let a = build_gram_a().map_err(|e| e.to_string())?;
    let sy = build_sigma_y(256).map_err(|e| e.to_string())?;
    let r = verify_gamma6_identities(&sy, &a, 1e-30);
    ensure(r.pass, format!("failed: {:?}", r.failures()))?;
    for k in ["gram_identity", "conjugation_relations", "sigma_order_21"] {
        ensure(r.checks.get(k).is_some_and(|c| c.pass), format!("missing {k}"))?;
    }
    Ok(format!(
        "256 bits, Gram width {}, conjugation width {}, sigma^21 = I, sigma^3, sigma^7 != I",
        r.checks["gram_identity"].detail["max_width"].as_str().unwrap_or("?"),
        r.checks["conjugation_relations"].detail["max_width"].as_str().unwrap_or("?")
    ))
}

fn c7_nonintegrality(h: &reflekt::gamma6::H6Realization) -> Outcome {
    let a = build_gram_a().map_err(|e| e.to_string())?;
    let r = certify_nonintegrality(&a, h);
    for k in ["four_u_squared_plus_three", "minimal_polynomial", "not_algebraic_integer", "signature_A1", "signature_A2", "signature_A3"] {
        ensure(r.checks.get(k).is_some_and(|c| c.pass), format!("{k} failed"))?;
    }
    ensure(r.pass, format!("failed: {:?}", r.failures()))?;
    Ok(format!("4u^2+3 = (21/625)(173+18 sqrt 21), minimal polynomial {}, A_j signature (6, 1, 0)", r.checks["minimal_polynomial"].detail))
}

fn c8_menger() -> Outcome {
    let m6 = menger_gamma6().map_err(|e| e.to_string())?;
    ensure(m6.verdict, format!("T21 checks failed: {:?}", m6.checks.failures()))?;
    ensure(m6.l_f_vector == [14, 21], format!("T21 L f-vector {:?}", m6.l_f_vector))?;
    ensure(m6.minor.as_ref().is_some_and(|w| w.kind == MinorKind::K33), "K33 minor")?;
    let m4 = menger_gamma4().map_err(|e| e.to_string())?;
    ensure(m4.verdict, format!("boundary torus checks failed: {:?}", m4.checks.failures()))?;
    ensure(m4.l_f_vector[0] == 35, format!("boundary torus L f-vector {:?}", m4.l_f_vector))?;
    for c in [&m6, &m4] {
        for k in ["nonplanar", "inseparable", "pcd_equals_1", "not_a_join"] {
            ensure(c.checks.checks[k].pass, format!("{} {k}", c.ambient))?;
        }
    }
    Ok(format!("T21 - 7 centers: L {:?} with K33; boundary torus - {:?}: L {:?}", m6.l_f_vector, m4.removed_vertices, m4.l_f_vector))
}

fn c9_pcd() -> Outcome {
    let t = build_t21().map_err(|e| e.to_string())?;
    let c = build_600_cell().map_err(|e| e.to_string())?;
    let d = decompose(&c).map_err(|e| e.to_string())?;
    for (name, k) in [("T21", &t.complex), ("boundary torus", &d.boundary0)] {
        let p = pcd_with_witness(k).map_err(|e| e.to_string())?;
        ensure(p.value == 2, format!("pcd({name}) = {}", p.value))?;
        let h = reduced_cohomology(k);
        ensure(h[3].degree == 2 && h[3].is_free_of_rank(1), format!("H^2({name}) = {:?}", h[3]))?;
    }
    Ok("pcd = 2 for both, reduced H^2 = Z at the empty simplex".into())
}

fn c10_limit_set() -> Outcome {
    const DEPTH: usize = 8;
    const EPS: f64 = 2e-2;
    let g4 = gamma4_group().map_err(|e| e.to_string())?;
    let base = default_basepoint(g4.matrix_size());
    let run = || orbit_bfs(&g4, &base, DEPTH, EPS).map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.len() >= 100_000, format!("{} points", a.len()))?;
    ensure(a.max_norm_error() <= 1e-12, format!("norm error {:e}", a.max_norm_error()))?;
    ensure(a.metadata.max_point_drift <= DRIFT_BOUND, format!("drift {:e}", a.metadata.max_point_drift))?;
    let opts = ExportOptions::default();
    let (pa, pb) = (ply_bytes(&a, &opts).map_err(|e| e.to_string())?.0, ply_bytes(&b, &opts).map_err(|e| e.to_string())?.0);
    ensure(pa == pb && csv_bytes(&a) == csv_bytes(&b), "runs differ")?;
    let g6 = gamma6_group().map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for g in [&g4, &g6] {
        let sl = g.shortlex_counts(4);
        let bf = brute_force_counts(g, 4);
        ensure(sl == bf, format!("{}: ShortLex {sl:?} vs brute force {bf:?}", g.name))?;
        counts.push(format!("{} {sl:?}", g.name));
    }
    Ok(format!(
        "gamma4 depth {DEPTH}, eps {EPS}: {} points, norm error {:e}, drift {:e}, identical runs; counts to length 4 match: {}",
        a.len(),
        a.max_norm_error(),
        a.metadata.max_point_drift,
        counts.join(", ")
    ))
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(5..=20);
    let p = rng.gen_range(0.08..0.45);
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

fn c11_wagner() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut planar, mut nonplanar) = (0, 0);
    for i in 0..600 {
        let g = random_graph(&mut rng);
        let minor = find_k5_or_k33_minor(&g);
        ensure(is_planar(&g) == minor.is_none(), format!("graph {i} disagrees"))?;
        match minor {
            Some(w) => {
                verify_minor(&g, &w).map_err(|e| format!("graph {i}: {e}"))?;
                nonplanar += 1;
            }
            None => planar += 1,
        }
    }
    ensure(planar >= 50 && nonplanar >= 50, format!("unbalanced suite: {planar} planar, {nonplanar} non-planar"))?;
    Ok(format!("600 graphs on 5..=20 vertices: {planar} planar, {nonplanar} non-planar with verified minors"))
}

#[test]
fn acceptance_criteria() {
    let h6 = build_sigma_y(256).and_then(|sy| h6_reflections(&sy)).expect("reflections at 256 bits");
    let criteria: Vec<(u32, &str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "600-cell census", 10, Box::new(c1_census)),
        (2, "boundary torus", 10, Box::new(c2_boundary_torus)),
        (3, "120-cell Gram matrix", 60, Box::new(c3_gram_p120)),
        (4, "21-vertex torus", 1, Box::new(c4_t21)),
        (5, "Gram matrix A", 5, Box::new(c5_gram_a)),
        (6, "interval identities", 10, Box::new(c6_identities)),
        (7, "non-integrality", 1, Box::new(move || c7_nonintegrality(&h6))),
        (8, "Menger certificates", 120, Box::new(c8_menger)),
        (9, "pcd of the nerves", 60, Box::new(c9_pcd)),
        (10, "limit set properties", 600, Box::new(c10_limit_set)),
        (11, "Wagner coherence", 60, Box::new(c11_wagner)),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f())).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("took {:.2}s, limit {limit}s; {d}", took.as_secs_f64())),
            o => o,
        };
        match outcome {
            Ok(d) => emit(&format!("ACCEPTANCE {n:>2} PASS {name} ({:.2}s, limit {limit}s): {d}", took.as_secs_f64())),
            Err(e) => {
                emit(&format!("ACCEPTANCE {n:>2} FAIL {name} ({:.2}s, limit {limit}s): {e}", took.as_secs_f64()));
                failed.push(*n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
