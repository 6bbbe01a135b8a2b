//! Real roots of small real polynomials, by recursion on the derivative.

use crate::roots::bisect;

/// Coefficients lowest degree first.
fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

/// All real roots, ascending. Roots of even multiplicity are found only when
/// the polynomial evaluates to exactly zero at a critical point.
pub(crate) fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => return vec![-c[0] / c[1]],
        _ => {}
    }
    let lead = *c.last().unwrap();
    let bound = 1.0 + c[..c.len() - 1].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let mut breaks = vec![-bound];
    breaks.extend(real_roots(&derivative(&c)).into_iter().filter(|x| x.abs() < bound));
    breaks.push(bound);

    let f = |x: f64| eval(&c, x);
    let mut roots: Vec<f64> = Vec::new();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (flo, fhi) = (f(lo), f(hi));
        let r = if flo == 0.0 {
            Some(lo)
        } else if fhi == 0.0 {
            Some(hi)
        } else if (flo < 0.0) != (fhi < 0.0) {
            Some(bisect(&f, lo, flo, hi, fhi).x)
        } else {
            None
        };
        if let Some(r) = r {
            if roots.last() != Some(&r) {
                roots.push(r);
            }
        }
    }
    roots
}
