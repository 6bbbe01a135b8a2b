//! Sign-change bracketing and bisection.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Root {
    pub x: f64,
    pub fx: f64,
}

const MAX_BISECTIONS: usize = 4096;

fn same_sign(a: f64, b: f64) -> bool {
    (a < 0.0) == (b < 0.0)
}

/// Bisects `[a, b]` (either order) until `f` vanishes at the midpoint or the
/// bracket can no longer be split in floating point. `fa` and `fb` must have
/// opposite signs.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Root {
    for _ in 0..MAX_BISECTIONS {
        let m = 0.5 * a + 0.5 * b;
        if !(m > a.min(b) && m < a.max(b)) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Root { x: m, fx: fm };
        }
        if same_sign(fm, fa) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    if fa.abs() <= fb.abs() {
        Root { x: a, fx: fa }
    } else {
        Root { x: b, fx: fb }
    }
}

/// Walks the points in order and bisects the first consecutive pair across
/// which `f` changes sign. Non-finite evaluations end the walk.
pub(crate) fn first_root<F, I>(f: &F, points: I) -> Option<Root>
where
    F: Fn(f64) -> f64,
    I: IntoIterator<Item = f64>,
{
    let mut prev: Option<(f64, f64)> = None;
    for x in points {
        let fx = f(x);
        if fx.is_nan() {
            return None;
        }
        if fx == 0.0 {
            return Some(Root { x, fx });
        }
        if let Some((px, pfx)) = prev {
            if !same_sign(pfx, fx) {
                return Some(bisect(f, px, pfx, x, fx));
            }
        }
        prev = Some((x, fx));
    }
    None
}

/// The point `near_gap` away from `start` in `direction`, then the points at
/// distance 1, 2, 4, ... up to `limit`.
pub(crate) fn expanding_points(start: f64, direction: f64, near_gap: f64, limit: f64) -> Vec<f64> {
    let mut pts = vec![start + direction * near_gap];
    let mut d = 1.0;
    while d <= limit {
        pts.push(start + direction * d);
        d *= 2.0;
    }
    pts
}

/// `n + 1` evenly spaced points spanning `[lo, hi]`.
pub(crate) fn uniform_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            if k == n {
                hi
            } else {
                lo + (hi - lo) * (k as f64 / n as f64)
            }
        })
        .collect()
}
