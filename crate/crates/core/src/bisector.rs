//! Analytic bisectors under the geometric L_0 distance and numeric samples
//! of L_p bisectors in the canonical frame.

use std::io::Write;

use crate::canonical::{canonicalize, horizontal_difference, BoundaryLine, Cell};
use crate::error::{Error, Result};
use crate::norms::{compare_distance, power_difference, DistanceOrder, Exponent, Vec2};
use crate::poly::real_roots;
use crate::roots::{bisect, expanding_points, first_root, uniform_points, Root};
use crate::sig17;

/// Default residual tolerance for bisector sampling.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Gap between a pole and the first bracket point.
const POLE_GAP: f64 = 1e-9;
/// Largest distance the bracket grows to on unbounded intervals.
const EXPANSION_LIMIT: f64 = 1e12;
/// Subdivisions of the bounded Y-interval (-1, 1) scanned for a sign change.
const BOUNDED_SCAN_STEPS: usize = 64;

/// `a·x + b·y = c`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line {
    pub fn residual(&self, q: Vec2) -> f64 {
        self.a * q.x + self.b * q.y - self.c
    }

    pub fn distance(&self, q: Vec2) -> f64 {
        self.residual(q).abs() / self.a.hypot(self.b)
    }
}

/// `(x - cx)(y - cy) = k`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyperbola {
    pub center: Vec2,
    pub k: f64,
}

impl Hyperbola {
    pub fn residual(&self, q: Vec2) -> f64 {
        (q.x - self.center.x) * (q.y - self.center.y) - self.k
    }

    /// Euclidean distance from `q` to the nearer branch.
    pub fn distance(&self, q: Vec2) -> f64 {
        let (x0, y0) = (q.x - self.center.x, q.y - self.center.y);
        let k = self.k;
        // stationary points of |(t, k/t) - (x0, y0)|^2
        real_roots(&[-k * k, y0 * k, 0.0, -x0, 1.0])
            .into_iter()
            .filter(|&t| t != 0.0)
            .map(|t| (t - x0).hypot(k / t - y0))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Which coordinate the two sites share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharedAxis {
    SharedX,
    SharedY,
}

/// The bisector of two sites under `|Δx·Δy|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum L0Bisector {
    /// A line through the bounding-box corners `lambda` and `rho`, plus a
    /// hyperbola centred in the bounding box.
    General {
        line: Line,
        hyperbola: Hyperbola,
        lambda: Vec2,
        rho: Vec2,
    },
    /// Both axis-parallel lines through the midpoint.
    Degenerate { shared: SharedAxis, midpoint: Vec2 },
}

impl L0Bisector {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, L0Bisector::Degenerate { .. })
    }

    /// Euclidean distance from `q` to the nearest bisector curve.
    pub fn distance(&self, q: Vec2) -> f64 {
        match self {
            L0Bisector::General { line, hyperbola, .. } => line.distance(q).min(hyperbola.distance(q)),
            L0Bisector::Degenerate { midpoint, .. } => (q.x - midpoint.x).abs().min((q.y - midpoint.y).abs()),
        }
    }
}

/// Computes the L_0 bisector of `a` and `b`.
pub fn l0_bisector(a: Vec2, b: Vec2) -> Result<L0Bisector> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite);
    }
    if a == b {
        return Err(Error::IdenticalSites);
    }
    let midpoint = (a + b) * 0.5;
    if a.x == b.x {
        return Ok(L0Bisector::Degenerate {
            shared: SharedAxis::SharedX,
            midpoint,
        });
    }
    if a.y == b.y {
        return Ok(L0Bisector::Degenerate {
            shared: SharedAxis::SharedY,
            midpoint,
        });
    }
    Ok(L0Bisector::General {
        line: Line {
            a: a.y - b.y,
            b: a.x - b.x,
            c: a.x * a.y - b.x * b.y,
        },
        hyperbola: Hyperbola {
            center: midpoint,
            k: -0.25 * (a.x - b.x) * (a.y - b.y),
        },
        lambda: Vec2::new(a.x, b.y),
        rho: Vec2::new(b.x, a.y),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SiteLabel {
    A,
    B,
}

/// One of the six faces of a general-position L_0 bisector.
///
/// Index 0 is the face containing the owner site; 1 and 2 are the other two
/// faces of the owner, in counterclockwise order after face 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceLabel {
    pub owner: SiteLabel,
    pub index: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceClass {
    Face(FaceLabel),
    OnBisector,
}

/// Locates `q` among the six faces of the L_0 bisector of `a` and `b`.
pub fn l0_face(q: Vec2, a: Vec2, b: Vec2) -> Result<FaceClass> {
    let frame = canonicalize(a, b)?;
    let owner = match compare_distance(q, a, b, Exponent::GeometricZero) {
        DistanceOrder::CloserToA => SiteLabel::A,
        DistanceOrder::CloserToB => SiteLabel::B,
        DistanceOrder::Equidistant => return Ok(FaceClass::OnBisector),
    };
    let c = frame.apply(q);
    let u = frame.u();
    // outside both hyperbola branches: the face of the owner site
    let index = if c.x * c.y + u >= 0.0 {
        0
    } else {
        let owner_is_left = (owner == SiteLabel::A) == frame.a_is_left();
        // counterclockwise in the canonical frame, left owner: lower-right
        // branch region first; right owner: upper-left first
        let first = if owner_is_left { c.x > 0.0 } else { c.x < 0.0 };
        let idx = if first { 1 } else { 2 };
        if frame.reverses_orientation() {
            3 - idx
        } else {
            idx
        }
    };
    Ok(FaceClass::Face(FaceLabel { owner, index }))
}

/// A numerically located point of the L_p bisector in the canonical frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectorSample {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub cell: Cell,
    /// `|vertical_difference(y) - horizontal_difference(x)|` at the point.
    pub residual: f64,
}

fn check_common(p: f64, u: f64) -> Result<()> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    if !(u >= 1.0) || !u.is_finite() {
        return Err(Error::InvalidScale(u));
    }
    Ok(())
}

/// Finds `y` in the open Y-interval of `cell` with `(x, y)` on the L_p
/// bisector of `(-u, -1)` and `(u, 1)`.
///
/// The bracket starts next to the finite end of the interval and grows by
/// doubling; the first sign change is bisected to floating-point resolution.
pub fn sample_bisector_y(x: f64, p: f64, cell: Cell, u: f64, tol: f64) -> Result<BisectorSample> {
    check_common(p, u)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !cell.is_grey() {
        return Err(Error::InvalidCell(cell));
    }
    let (x0, x1) = cell.x_interval(u).expect("grey cells have intervals");
    if !(x > x0 && x < x1) {
        return Err(Error::OutsideCell { cell, x });
    }
    let v = horizontal_difference(x, u, p)?;
    let f = |y: f64| power_difference((y - 1.0).abs(), (y + 1.0).abs(), p) - v;
    let points = match cell.y_interval().expect("grey cells have intervals") {
        (lo, hi) if hi.is_infinite() => expanding_points(lo, 1.0, POLE_GAP, EXPANSION_LIMIT),
        (lo, hi) if lo.is_infinite() => expanding_points(hi, -1.0, POLE_GAP, EXPANSION_LIMIT),
        (lo, hi) => uniform_points(lo + POLE_GAP, hi - POLE_GAP, BOUNDED_SCAN_STEPS),
    };
    let Root { x: y, fx } = first_root(&f, points).ok_or(Error::NoRootInCell { cell, x, p })?;
    let residual = fx.abs();
    if residual > tol {
        return Err(Error::ResidualAboveTolerance { x, y, residual });
    }
    Ok(BisectorSample {
        x,
        y,
        p,
        cell,
        residual,
    })
}

/// A bisector point on one of the six cell-separating lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialPoint {
    pub at: Vec2,
    pub line: BoundaryLine,
    /// Signed offset along the line from the point the intersection tends
    /// to as `p -> 0`: `rho = (u, -1)` for `y=-1` and `x=u`, `lambda = (-u, 1)`
    /// for `y=1` and `x=-u`, the origin for the axes. Kept separately because
    /// it can be far below the resolution of `at`.
    pub offset: f64,
}

impl SpecialPoint {
    fn new(line: BoundaryLine, u: f64, offset: f64) -> Self {
        let at = match line {
            BoundaryLine::YNegOne => Vec2::new(u + offset, -1.0),
            BoundaryLine::YPosOne => Vec2::new(-u + offset, 1.0),
            BoundaryLine::XPosU => Vec2::new(u, -1.0 + offset),
            BoundaryLine::XNegU => Vec2::new(-u, 1.0 + offset),
            BoundaryLine::XZero => Vec2::new(0.0, offset),
            BoundaryLine::YZero => Vec2::new(offset, 0.0),
        };
        SpecialPoint { at, line, offset }
    }
}

/// Roots of `f` at every sign change across consecutive `points`.
fn all_roots<F: Fn(f64) -> f64>(f: &F, points: &[f64]) -> Vec<f64> {
    let mut roots = Vec::new();
    for w in points.windows(2) {
        let (fa, fb) = (f(w[0]), f(w[1]));
        if fa == 0.0 {
            roots.push(w[0]);
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(f, w[0], fa, w[1], fb).x);
        }
    }
    if let Some(&last) = points.last() {
        if f(last) == 0.0 {
            roots.push(last);
        }
    }
    roots.dedup();
    roots
}

/// Bisector points of the canonical sites on the lines `x ∈ {-u, 0, u}`
/// and `y ∈ {-1, 0, 1}`. A point on two lines is listed once per line.
pub fn special_line_points(p: f64, u: f64) -> Result<Vec<SpecialPoint>> {
    check_common(p, u)?;
    use BoundaryLine::*;
    let mut out = vec![SpecialPoint::new(XZero, u, 0.0), SpecialPoint::new(YZero, u, 0.0)];

    if p < 0.0 || u == 1.0 {
        // with p < 0, points on y = -1 are at distance 0 from a; only the one
        // also at distance 0 from b is equidistant
        for line in [XNegU, XPosU, YNegOne, YPosOne] {
            out.push(SpecialPoint::new(line, u, 0.0));
        }
        return Ok(out);
    }

    // y = -1: |x+u|^p - |x-u|^p = 2^p, solved for the offset from x = u
    let two_p = 2f64.powf(p);
    let inner = |d: f64| power_difference(2.0 * u - d, 2.0, p) - d.powf(p);
    let outer = |e: f64| power_difference(2.0 * u + e, 2.0, p) - e.powf(p);
    let delta = bisect(&inner, 0.0, inner(0.0), 2.0 * u, -two_p - (2.0 * u).powf(p)).x;
    let mut offsets = vec![-delta];
    let mut scan = vec![0.0];
    scan.extend(expanding_points(0.0, 1.0, POLE_GAP, EXPANSION_LIMIT));
    if let Some(r) = first_root(&outer, scan) {
        if r.x > 0.0 {
            offsets.push(r.x);
        }
    }
    for &o in &offsets {
        out.push(SpecialPoint::new(YNegOne, u, o));
    }
    for &o in &offsets {
        out.push(SpecialPoint::new(YPosOne, u, -o));
    }

    // x = u: (2u)^p + |y+1|^p = |y-1|^p, scanned in the offset from y = -1
    let vertical = |t: f64| power_difference((t - 2.0).abs(), t.abs(), p) - (2.0 * u).powf(p);
    let mut pts: Vec<f64> = expanding_points(0.0, -1.0, POLE_GAP, EXPANSION_LIMIT);
    pts.reverse();
    pts.extend(uniform_points(0.0, 4.0, 256));
    pts.extend(expanding_points(4.0, 1.0, POLE_GAP, EXPANSION_LIMIT));
    for t in all_roots(&vertical, &pts) {
        out.push(SpecialPoint::new(XPosU, u, t));
        out.push(SpecialPoint::new(XNegU, u, -t));
    }
    Ok(out)
}

/// Writes samples as `p,x,y,cell,residual`.
pub fn write_samples_csv<W: Write>(mut w: W, samples: &[BisectorSample]) -> Result<()> {
    writeln!(w, "p,x,y,cell,residual")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{},{}",
            sig17(s.p),
            sig17(s.x),
            sig17(s.y),
            s.cell,
            sig17(s.residual)
        )?;
    }
    Ok(())
}
