//! Library results against independent reference computations: plain
//! `powf` arithmetic with dense scanning, and constants computed offline in
//! 40-digit arithmetic.

#![allow(clippy::excessive_precision)]

use lpvoronoi::bisector::special_line_points;
use lpvoronoi::canonical::{inverse_vertical_slope, vertical_difference};
use lpvoronoi::{
    l0_norm_nd, lp_norm, power_difference, render_owners, sample_bisector_y, BoundaryLine, Cell, Error, Exponent, Grid,
    Owner, Vec2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn naive_bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First sign change of `f` along `points`, refined by bisection.
fn naive_root(f: impl Fn(f64) -> f64 + Copy, points: &[f64]) -> Option<f64> {
    points
        .windows(2)
        .find(|w| (f(w[0]) < 0.0) != (f(w[1]) < 0.0))
        .map(|w| naive_bisect(f, w[0], w[1]))
}

/// Dense scan of the Y-interval of a grey cell, starting at its finite end.
fn scan_points(cell: Cell) -> Vec<f64> {
    let (lo, hi) = cell.y_interval().unwrap();
    let steps = |k: usize| 0..=k;
    if hi.is_infinite() {
        steps(1600).map(|i| lo + 10f64.powf(-8.0 + i as f64 * 0.01)).collect()
    } else if lo.is_infinite() {
        steps(1600).map(|i| hi - 10f64.powf(-8.0 + i as f64 * 0.01)).collect()
    } else {
        steps(4000)
            .map(|i| lo + 1e-9 + (hi - lo - 2e-9) * i as f64 / 4000.0)
            .collect()
    }
}

fn oracle_y(x: f64, p: f64, u: f64, cell: Cell) -> Option<f64> {
    let v = (x + u).abs().powf(p) - (x - u).abs().powf(p);
    let f = move |y: f64| (y - 1.0).abs().powf(p) - (y + 1.0).abs().powf(p) - v;
    naive_root(f, &scan_points(cell))
}

#[test]
fn samples_match_naive_bisection() {
    let mut compared = 0;
    for u in [1.0, 1.5, 2.0, 3.0] {
        for p in [2.0, 0.7, 0.5, 0.3, 0.15, -0.15, -0.3, -0.7, -2.0] {
            for cell in Cell::GREY {
                let (lo, hi) = cell.x_interval(u).unwrap();
                let (lo, hi) = (lo.max(-5.0 * u), hi.min(5.0 * u));
                for t in [0.13, 0.37, 0.5, 0.81] {
                    let x = lo + (hi - lo) * t;
                    let lib = sample_bisector_y(x, p, cell, u, 1e-9);
                    match (lib, oracle_y(x, p, u, cell)) {
                        (Ok(s), Some(y)) => {
                            assert!(
                                (s.y - y).abs() <= 1e-8 * y.abs().max(1.0),
                                "{cell} x={x} p={p} u={u}: {} vs {y}",
                                s.y
                            );
                            compared += 1;
                        }
                        (Err(Error::NoRootInCell { .. }), None) => {}
                        (lib, oracle) => panic!("{cell} x={x} p={p} u={u}: {lib:?} vs {oracle:?}"),
                    }
                }
            }
        }
    }
    assert!(compared > 500, "{compared}");
}

#[test]
fn s3_samples_near_zero_exponent() {
    // 40-digit roots of (1-y)^p - (1+y)^p = 3^p - 1
    for (p, y) in [
        (0.1, -0.529_837_333_068_095_818_69),
        (0.01, -0.502_867_977_382_539_198_33),
        (-0.05, -0.486_023_505_623_352_550_65),
    ] {
        let s = sample_bisector_y(1.0, p, Cell::S3, 2.0, 1e-12).unwrap();
        assert!((s.y - y).abs() < 1e-12, "p={p}: {} vs {y}", s.y);
    }
}

#[test]
fn power_difference_constants() {
    let got = power_difference(3.0, 1.0, 0.1);
    let want = 0.116_123_174_033_904_434_44;
    assert!(((got - want) / want).abs() < 1e-15);
    // at p = 1e-12 a plain powf difference keeps only a few digits
    let tiny = power_difference(3.0, 1.0, 1e-12);
    assert!((tiny / 1e-12 - 3f64.ln()).abs() < 1e-9);
}

#[test]
fn inverse_slope_constant_and_finite_difference() {
    let (y, p) = (2.5, 0.1);
    let z = inverse_vertical_slope(y, p).unwrap();
    let want = 2.699_733_022_135_417_925_9;
    assert!(((z - want) / want).abs() < 1e-13);
    let h = 1e-5;
    let w = |t: f64| vertical_difference(t, p).unwrap();
    let slope = (w(y + h) - w(y - h)) / (2.0 * h) / p;
    assert!((1.0 / slope.abs() - z).abs() < 1e-6 * z);
}

#[test]
fn special_roots_match_naive_bisection() {
    let u = 2.0;
    for p in [0.9, 0.5, 0.3] {
        let two_p = 2f64.powf(p);
        let f = |x: f64| (x + u).powf(p) - (x - u).abs().powf(p) - two_p;
        let inner = naive_bisect(f, 0.0, u);
        let outer = naive_bisect(f, u, 1e6);
        let xs: Vec<f64> = special_line_points(p, u)
            .unwrap()
            .into_iter()
            .filter(|s| s.line == BoundaryLine::YNegOne)
            .map(|s| s.at.x)
            .collect();
        assert_eq!(xs.len(), 2, "p={p}");
        assert!(
            (xs[0] - inner).abs() < 1e-12 && (xs[1] - outer).abs() < 1e-9,
            "p={p}: {xs:?} vs {inner}, {outer}"
        );
    }
}

#[test]
fn lp_norm_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let v = Vec2::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let p: f64 = rng.gen_range(0.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let direct = (v.x.abs().powf(p) + v.y.abs().powf(p)).powf(1.0 / p);
        let got = lp_norm(v, Exponent::finite(p).unwrap());
        assert!(((got - direct) / direct).abs() < 1e-12, "{v} p={p}");
    }
}

#[test]
fn l0_nd_log_space() {
    assert_eq!(l0_norm_nd(&[2.0, -3.0, 0.5]).unwrap(), 3.0);
    let v = l0_norm_nd(&[1e200, 1e-200, -2.0]).unwrap();
    assert!((v - 2.0).abs() < 1e-12);
    let big = l0_norm_nd(&[1e160, 1e160, 1e-300]).unwrap();
    assert!((big / 1e20 - 1.0).abs() < 1e-10);
    assert!(matches!(l0_norm_nd(&[]), Err(Error::EmptyVector)));
}

#[test]
fn euclidean_owner_map_matches_half_plane_test() {
    let grid = Grid::new(200, 160, -5.0, -4.0, 5.0, 4.0).unwrap();
    let (a, b) = (Vec2::new(-1.7, 0.6), Vec2::new(2.1, -1.3));
    let map = render_owners(&[a, b], Exponent::finite(2.0).unwrap(), &grid).unwrap();
    let mid = (a + b) * 0.5;
    let n = b - a;
    let len = n.x.hypot(n.y);
    let mut checked = 0;
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            let q = grid.center(col, row);
            let side = ((q.x - mid.x) * n.x + (q.y - mid.y) * n.y) / len;
            if side.abs() < grid.pixel_diagonal() {
                continue;
            }
            let want = if side < 0.0 { Owner::Site(0) } else { Owner::Site(1) };
            assert_eq!(map.owner(col, row), want, "{q}");
            checked += 1;
        }
    }
    assert!(checked > 30_000);
}
