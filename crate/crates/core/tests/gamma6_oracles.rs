//! The 7-dimensional construction against float computations.

mod common;

use std::f64::consts::PI;

use reflekt::gamma6::{build_gram_a, build_t21, cyclic_distance};

fn uvw_f64() -> (f64, f64, f64) {
    let s = 21f64.sqrt();
    ((27.0 + 7.0 * s) / 50.0, (21.0 + 11.0 * s) / 50.0, (49.0 + 9.0 * s) / 50.0)
}

#[test]
fn links_from_the_difference_set() {
    let t = build_t21().unwrap();
    for v in 1..=21usize {
        let mut expect: Vec<usize> = [1, 4, 5].iter().flat_map(|&s| [(v - 1 + s) % 21 + 1, (v - 1 + 21 - s) % 21 + 1]).collect();
        expect.sort_unstable();
        let mut nb = t.neighbors(v);
        nb.sort_unstable();
        assert_eq!(nb, expect);
        // the six neighbours form a cycle: each has exactly two neighbours among them
        for &w in &nb {
            assert_eq!(nb.iter().filter(|&&x| t.complex.contains(&[w.min(x), w.max(x)])).count(), 2);
        }
    }
}

#[test]
fn gram_inertia_by_jacobi() {
    let a = build_gram_a().unwrap();
    let rows: Vec<Vec<f64>> = (0..21).map(|i| (0..21).map(|j| a.matrix.get(i, j).to_f64()).collect()).collect();
    assert_eq!(common::inertia(rows, 1e-9), (6, 1, 14));
    let (u, v, w) = uvw_f64();
    assert!(u > 1.0 && v > 1.0 && w > 1.0);
    assert!((a.entry(1, 4).to_f64() + u).abs() < 1e-14);
    assert_eq!(cyclic_distance(0, 7), 7);
}

/// `sigma`, `y` and the `s_k` in floating point, compared with `A` directly.
#[test]
fn float_realization_reproduces_a() {
    let a = build_gram_a().unwrap();
    let alpha = (11.0 + 21f64.sqrt()).sqrt() / 5.0;
    let beta = (8.0 + 3.0 * 21f64.sqrt()).sqrt() / 5.0;
    let rot = |x: &[f64; 7]| -> [f64; 7] {
        let mut out = *x;
        for (b, m) in [1.0, 4.0, 5.0].iter().enumerate() {
            let th = 2.0 * PI * m / 21.0;
            out[2 * b] = th.cos() * x[2 * b] - th.sin() * x[2 * b + 1];
            out[2 * b + 1] = th.sin() * x[2 * b] + th.cos() * x[2 * b + 1];
        }
        out
    };
    let mut ys = vec![[alpha, 0.0, alpha, 0.0, alpha, 0.0, beta]];
    for _ in 1..21 {
        let last = *ys.last().unwrap();
        ys.push(rot(&last));
    }
    let mink = |x: &[f64; 7], y: &[f64; 7]| (0..6).map(|i| x[i] * y[i]).sum::<f64>() - x[6] * y[6];
    for i in 0..21 {
        for j in 0..21 {
            assert!((mink(&ys[i], &ys[j]) - a.matrix.get(i, j).to_f64()).abs() < 1e-12, "({i}, {j})");
        }
    }
    // sigma^21 y = y
    assert!((0..7).all(|k| (rot(&ys[20])[k] - ys[0][k]).abs() < 1e-12));
}

/// Both roots of `X^2 - (7266/625) X + 16317/625`, one of which is `4u^2 + 3`, and the
/// non-integral coefficients.
#[test]
fn minimal_polynomial_numerically() {
    let (u, _, _) = uvw_f64();
    let x = 4.0 * u * u + 3.0;
    let (b, c) = (7266.0 / 625.0, 16317.0 / 625.0);
    assert!((x * x - b * x + c).abs() < 1e-10);
    let conj = b - x;
    assert!((conj * x - c).abs() < 1e-10);
    assert!((x - 21.0 / 625.0 * (173.0 + 18.0 * 21f64.sqrt())).abs() < 1e-12);
    assert!(b.fract() != 0.0 && c.fract() != 0.0);
}
