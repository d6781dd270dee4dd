use serde_json::json;

use super::{class_indices, field21, invariant, Gamma6Error, GramA, N};
use crate::exactalg::interval::{lorentz_reflection, minkowski_dot, preserves_minkowski};
use crate::exactalg::{minimal_polynomial, rat, signature, BigFloatInterval, IntervalMatrix, QuadExtElem, SymMatrix};
use crate::report::Report;

/// Rotation angles of the three blocks of `sigma`, as multiples of `2 pi / 21`.
pub const ROTATIONS: [i64; 3] = [1, 4, 5];

#[derive(Clone, Debug)]
pub struct SigmaY {
    /// Block diagonal `(R_1, R_4, R_5, 1)` with `R_m` the rotation by `2 m pi / 21`.
    pub sigma: IntervalMatrix,
    /// `(alpha, 0, alpha, 0, alpha, 0, beta)`
    pub y: Vec<BigFloatInterval>,
    pub precision: u32,
}

/// Interval enclosures of `sigma` and `y`, with `alpha = sqrt(11 + sqrt 21) / 5` and
/// `beta = sqrt(8 + 3 sqrt 21) / 5`. Checks `<y, y> = 1` and that `sigma` preserves the
/// Minkowski form.
pub fn build_sigma_y(precision: u32) -> Result<SigmaY, Gamma6Error> {
    if precision < 128 {
        return Err(Gamma6Error::PrecisionTooLow(precision));
    }
    let pi = BigFloatInterval::pi(precision);
    let mut sigma = IntervalMatrix::identity(7, precision);
    for (b, &m) in ROTATIONS.iter().enumerate() {
        let theta = pi.scale_rational(&rat(2 * m, N as i64));
        let (c, s) = (theta.cos(), theta.sin());
        sigma.set(2 * b, 2 * b, c.clone());
        sigma.set(2 * b, 2 * b + 1, s.neg());
        sigma.set(2 * b + 1, 2 * b, s);
        sigma.set(2 * b + 1, 2 * b + 1, c);
    }
    let f = field21();
    let fifth = rat(1, 5);
    let alpha = BigFloatInterval::from_quad(&f.frac(11, 1, 1), precision).sqrt().expect("positive").scale_rational(&fifth);
    let beta = BigFloatInterval::from_quad(&f.frac(8, 3, 1), precision).sqrt().expect("positive").scale_rational(&fifth);
    let zero = BigFloatInterval::zero(precision);
    let y = vec![alpha.clone(), zero.clone(), alpha.clone(), zero.clone(), alpha, zero, beta];
    if !minkowski_dot(&y, &y).contains_rational(&rat(1, 1)) {
        return Err(invariant("y_unit", minkowski_dot(&y, &y)));
    }
    if !preserves_minkowski(&sigma) {
        return Err(invariant("sigma_preserves_form", "sigma^T J sigma misses J"));
    }
    Ok(SigmaY { sigma, y, precision })
}

#[derive(Clone, Debug)]
pub struct H6Realization {
    pub sigma: IntervalMatrix,
    /// `sigma^{k-1} y` for `k = 1..=21`.
    pub roots: Vec<Vec<BigFloatInterval>>,
    /// `s_k`, the reflection in `sigma^{k-1} y`.
    pub reflections: Vec<IntervalMatrix>,
}

/// The 21 reflections `s_k`, each checked to be an involution preserving the form.
pub fn h6_reflections(sy: &SigmaY) -> Result<H6Realization, Gamma6Error> {
    let mut roots = vec![sy.y.clone()];
    for _ in 1..N {
        let next = sy.sigma.apply(roots.last().unwrap());
        roots.push(next);
    }
    let reflections: Vec<IntervalMatrix> = roots.iter().map(|r| lorentz_reflection(r)).collect();
    for (k, s) in reflections.iter().enumerate() {
        if !s.mul(s).encloses_identity() {
            return Err(invariant("reflection_involution", format!("s_{}", k + 1)));
        }
        if !preserves_minkowski(s) {
            return Err(invariant("reflection_preserves_form", format!("s_{}", k + 1)));
        }
    }
    Ok(H6Realization { sigma: sy.sigma.clone(), roots, reflections })
}

fn trace(m: &IntervalMatrix) -> BigFloatInterval {
    (1..m.dim()).fold(m.get(0, 0).clone(), |acc, i| acc.add(m.get(i, i)))
}

/// Interval checks of the `sigma`/`y` construction against the exact Gram matrix:
/// `<sigma^{i-1} y, sigma^{j-1} y>` meets `A_ij` with width below `tol`, the conjugation
/// relations `s_k = sigma^{k-1} s_1 sigma^{1-k}`, the order of `sigma`, and the traces of
/// commuting pairs.
pub fn verify_gamma6_identities(sy: &SigmaY, a: &GramA, tol: f64) -> Report {
    let mut r = Report::new("gamma6_identities");
    r.check("precision_bits", true, json!(sy.precision));
    let h = match h6_reflections(sy) {
        Ok(h) => h,
        Err(e) => {
            r.fail("reflections", e);
            return r;
        }
    };
    r.check("reflections", true, json!({"count": h.reflections.len(), "involutions": true, "preserve_form": true}));

    let mut max_width = 0f64;
    let mut misses = Vec::new();
    for i in 0..N {
        for j in i..N {
            let ip = minkowski_dot(&h.roots[i], &h.roots[j]);
            max_width = max_width.max(ip.width_f64());
            let exact = BigFloatInterval::from_quad(a.matrix.get(i, j), sy.precision);
            if !ip.intersects(&exact) {
                misses.push((i + 1, j + 1, ip.gap(&exact).to_f64()));
            }
        }
    }
    r.check("gram_identity", misses.is_empty() && max_width < tol, json!({
        "pairs": N * (N + 1) / 2, "max_width": format!("{max_width:e}"), "tolerance": format!("{tol:e}"),
        "misses": misses,
    }));

    let mut power = IntervalMatrix::identity(7, sy.precision);
    let mut conj_width = 0f64;
    let mut conj_bad = Vec::new();
    for k in 0..N {
        let c = power.mul(&h.reflections[0]).mul(&power.transpose());
        conj_width = conj_width.max(c.max_width()).max(h.reflections[k].max_width());
        if !c.overlaps(&h.reflections[k]) {
            conj_bad.push(k + 1);
        }
        power = power.mul(&sy.sigma);
    }
    r.check("conjugation_relations", conj_bad.is_empty() && conj_width < tol, json!({
        "max_width": format!("{conj_width:e}"), "failures": conj_bad,
    }));

    let powers: Vec<(u32, bool)> = [1, 3, 7, 21].iter().map(|&k| (k, sy.sigma.pow(k).encloses_identity())).collect();
    let order_ok = powers.iter().all(|&(k, encl)| encl == (k == 21));
    r.check("sigma_order_21", order_ok, json!(powers.iter().map(|&(k, e)| json!({"power": k, "encloses_identity": e})).collect::<Vec<_>>()));

    let g = super::circulant_graph(N, &super::DIFFERENCE_SET);
    let three = rat(3, 1);
    let bad_traces: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(i, j)| !trace(&h.reflections[i].mul(&h.reflections[j])).contains_rational(&three))
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    r.check("commuting_traces", bad_traces.is_empty(), json!({"pairs": g.edge_count(), "failures": bad_traces}));
    r
}

/// Trace of `s_i s_j` in the representation of a reflection group with Gram matrix `b`
/// on `R^n`, where `s_k(x) = x - 2 b(e_k, x) e_k`. Equals `n - 4 + 4 b_ij^2`.
pub fn tits_trace(b: &SymMatrix, i: usize, j: usize) -> QuadExtElem {
    let n = b.dim();
    let f = b.field();
    let refl = |k: usize| -> Vec<Vec<QuadExtElem>> {
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let id = if r == c { f.one() } else { f.zero() };
                        if r == k { &id - &(b.get(k, c) * &f.int(2)) } else { id }
                    })
                    .collect()
            })
            .collect()
    };
    let (si, sj) = (refl(i), refl(j));
    (0..n).fold(f.zero(), |acc, d| {
        (0..n).fold(acc, |acc, k| &acc + &(&si[d][k] * &sj[k][d]))
    })
}

/// `4u^2 + 3` and its minimal polynomial; the exact trace of a product of two generators
/// of the reflection group of `A_1`; the interval trace of `s_1 s_4`; and the signature of
/// each class submatrix `A_j`.
pub fn certify_nonintegrality(a: &GramA, h: &H6Realization) -> Report {
    let mut r = Report::new("nonintegrality");
    let f = field21();
    let x = &(&a.u.square() * &f.int(4)) + &f.int(3);
    let stated = f.elem(rat(21 * 173, 625), rat(21 * 18, 625));
    r.check("four_u_squared_plus_three", x == stated, json!({"value": x, "stated": stated}));
    let mp = minimal_polynomial(&x);
    let expect = [rat(16317, 625), rat(-7266, 625), rat(1, 1)];
    r.check("minimal_polynomial", mp.coeffs == expect && mp.eval(&x).is_zero(), json!(mp));
    r.check("not_algebraic_integer", !mp.is_algebraic_integer, json!({"is_algebraic_integer": mp.is_algebraic_integer}));

    // independent numeric oracle: enclose 4u^2 + 3 from sqrt(21) and compare with a root
    let p = h.sigma.get(0, 0).precision();
    let s21 = BigFloatInterval::from_int(21, p).sqrt().expect("positive");
    let u = BigFloatInterval::from_int(27, p).add(&s21.scale_rational(&rat(7, 1))).scale_rational(&rat(1, 50));
    let x_iv = u.square().scale_rational(&rat(4, 1)).add(&BigFloatInterval::from_int(3, p));
    let root_hit = mp.roots_f64().iter().any(|rt| (rt - x_iv.mid_f64()).abs() < 1e-12);
    r.check("numeric_root", x_iv.contains_quad(&x) && root_hit, json!({"enclosure": x_iv.to_string(), "roots": mp.roots_f64()}));

    let a1 = a.class_submatrix(1);
    let tt = tits_trace(&a1, 0, 1);
    r.check("tits_trace", tt == x, json!({"trace_s1_s2": tt}));
    let tr = trace(&h.reflections[0].mul(&h.reflections[3]));
    r.check("interval_trace_s1_s4", tr.contains_quad(&x) && a.matrix.get(0, 3) == &-&a.u, json!(tr.to_string()));

    for j in 1..=3 {
        let s = signature(&a.class_submatrix(j));
        r.check(format!("signature_A{j}"), s.triple() == (6, 1, 0), json!({"indices": class_indices(j), "signature": s}));
    }
    r
}
