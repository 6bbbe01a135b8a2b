//! The L_p distance family and the geometric L_0 distance `|x·y|`.
//!
//! For `p < 0` the distance is continued to zero whenever a coordinate is
//! zero, which makes every member of the family a continuous function of the
//! coordinate differences.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A point or coordinate difference in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        let v = Vec2 { x, y };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn swap(self) -> Self {
        Vec2::new(self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, c: f64) -> Vec2 {
        Vec2::new(self.x * c, self.y * c)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite, nonzero exponent.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Power(f64);

impl Power {
    pub fn new(p: f64) -> Result<Self> {
        if p == 0.0 || !p.is_finite() {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Power(p))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Selects a member of the distance family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    /// `(|x|^p + |y|^p)^(1/p)` for finite `p != 0`.
    Finite(Power),
    /// The geometric L_0 distance `|x·y|`.
    GeometricZero,
    /// `max(|x|, |y|)`.
    PosInfinity,
    /// `min(|x|, |y|)`.
    NegInfinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        Power::new(p).map(Exponent::Finite)
    }

    /// The finite exponent, if any.
    pub fn p(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p.get()),
            _ => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "p={}", p.get()),
            Exponent::GeometricZero => f.write_str("p=0"),
            Exponent::PosInfinity => f.write_str("p=inf"),
            Exponent::NegInfinity => f.write_str("p=-inf"),
        }
    }
}

/// Outcome of comparing the distances from a query point to two sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceOrder {
    CloserToA,
    CloserToB,
    Equidistant,
}

impl DistanceOrder {
    pub fn reverse(self) -> Self {
        match self {
            DistanceOrder::CloserToA => DistanceOrder::CloserToB,
            DistanceOrder::CloserToB => DistanceOrder::CloserToA,
            DistanceOrder::Equidistant => DistanceOrder::Equidistant,
        }
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => DistanceOrder::CloserToA,
            Ordering::Greater => DistanceOrder::CloserToB,
            Ordering::Equal => DistanceOrder::Equidistant,
        }
    }
}

/// `a^p - b^p` for `a, b >= 0`, accurate when `p` is close to zero.
///
/// Antisymmetric bit for bit: `power_difference(a, b, p) == -power_difference(b, a, p)`,
/// so terms that cancel mathematically also cancel exactly.
pub fn power_difference(a: f64, b: f64, p: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a < b {
        return -power_difference(b, a, p);
    }
    if b == 0.0 {
        return a.powf(p) - b.powf(p);
    }
    // a > b > 0: b^p * (exp(p ln(a/b)) - 1)
    let ratio_minus_one = (a - b) / b;
    b.powf(p) * (p * ratio_minus_one.ln_1p()).exp_m1()
}

/// Evaluates the distance family member `e` on the difference vector `v`.
pub fn lp_norm(v: Vec2, e: Exponent) -> f64 {
    let (ax, ay) = (v.x.abs(), v.y.abs());
    let (lo, hi) = if ax <= ay { (ax, ay) } else { (ay, ax) };
    match e {
        Exponent::Finite(p) => {
            let p = p.get();
            if p > 0.0 {
                if hi == 0.0 {
                    return 0.0;
                }
                hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p)
            } else {
                if lo == 0.0 {
                    return 0.0;
                }
                lo * (1.0 + (hi / lo).powf(p)).powf(1.0 / p)
            }
        }
        Exponent::GeometricZero => (v.x * v.y).abs(),
        Exponent::PosInfinity => hi,
        Exponent::NegInfinity => lo,
    }
}

const LOG_SPACE_HI: f64 = 1e150;
const LOG_SPACE_LO: f64 = 1e-150;

/// `|x_1 · x_2 · ... · x_d|`, the d-dimensional geometric L_0 distance.
pub fn l0_norm_nd(v: &[f64]) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    if v.contains(&0.0) {
        return Ok(0.0);
    }
    let extreme = v.iter().any(|c| c.abs() > LOG_SPACE_HI || c.abs() < LOG_SPACE_LO);
    if extreme {
        Ok(v.iter().map(|c| c.abs().ln()).sum::<f64>().exp())
    } else {
        Ok(v.iter().product::<f64>().abs())
    }
}

fn power_of_two_scale(m: f64) -> f64 {
    let k = (m.log2().floor() as i32).clamp(-1000, 1000);
    2f64.powi(-k)
}

/// Orders `L(q - a)` against `L(q - b)` under the exponent `e`.
///
/// Finite exponents compare the inner sums `|dx|^p + |dy|^p` coordinate by
/// coordinate, never the outer `1/p` power; for `p < 0` the order of the sums
/// is reversed.
pub fn compare_distance(q: Vec2, a: Vec2, b: Vec2, e: Exponent) -> DistanceOrder {
    let da = q - a;
    let db = q - b;
    let order = match e {
        Exponent::Finite(p) => return compare_finite(da, db, p.get()),
        Exponent::GeometricZero => (da.x * da.y).abs().partial_cmp(&(db.x * db.y).abs()),
        Exponent::PosInfinity => lp_norm(da, e).partial_cmp(&lp_norm(db, e)),
        Exponent::NegInfinity => lp_norm(da, e).partial_cmp(&lp_norm(db, e)),
    };
    DistanceOrder::from_ordering(order.unwrap_or(Ordering::Equal))
}

fn compare_finite(da: Vec2, db: Vec2, p: f64) -> DistanceOrder {
    let mags = [da.x.abs(), da.y.abs(), db.x.abs(), db.y.abs()];
    let scale = if p > 0.0 {
        let m = mags.iter().cloned().fold(0.0, f64::max);
        if m == 0.0 {
            return DistanceOrder::Equidistant;
        }
        power_of_two_scale(m)
    } else {
        let a_zero = mags[0] == 0.0 || mags[1] == 0.0;
        let b_zero = mags[2] == 0.0 || mags[3] == 0.0;
        match (a_zero, b_zero) {
            (true, true) => return DistanceOrder::Equidistant,
            (true, false) => return DistanceOrder::CloserToA,
            (false, true) => return DistanceOrder::CloserToB,
            (false, false) => {}
        }
        power_of_two_scale(mags.iter().cloned().fold(f64::INFINITY, f64::min))
    };
    let [ax, ay, bx, by] = mags.map(|m| m * scale);
    // sum_a - sum_b, paired by coordinate
    let diff = power_difference(ax, bx, p) + power_difference(ay, by, p);
    let order = diff.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
    let order = if p > 0.0 { order } else { order.reverse() };
    DistanceOrder::from_ordering(order)
}
