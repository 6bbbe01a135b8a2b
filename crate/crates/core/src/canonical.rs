//! The canonical frame `a = (-u, -1)`, `b = (u, 1)` with `u >= 1`, the
//! one-dimensional pieces of the bisector equation in that frame, and the
//! grid of cells cut out by the lines `x ∈ {-u, 0, u}` and `y ∈ {-1, 0, 1}`.
//!
//! In the canonical frame the L_p bisector equation
//! `|x+u|^p + |y+1|^p = |x-u|^p + |y-1|^p` separates into
//! `vertical_difference(y) = horizontal_difference(x)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::norms::{power_difference, Vec2};

/// A similarity primitive. All of them preserve the order of distances for
/// every member of the distance family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Transform {
    Translate(Vec2),
    /// `(x, y) -> (-x, y)`
    ReflectX,
    /// `(x, y) -> (x, -y)`
    ReflectY,
    /// `(x, y) -> (y, x)`
    SwapXY,
    /// Uniform scaling by a positive factor.
    Scale(f64),
}

impl Transform {
    pub fn apply(self, q: Vec2) -> Vec2 {
        match self {
            Transform::Translate(d) => q + d,
            Transform::ReflectX => Vec2::new(-q.x, q.y),
            Transform::ReflectY => Vec2::new(q.x, -q.y),
            Transform::SwapXY => q.swap(),
            Transform::Scale(c) => q * c,
        }
    }

    pub fn invert(self, q: Vec2) -> Vec2 {
        match self {
            Transform::Translate(d) => q - d,
            Transform::Scale(c) => q * (1.0 / c),
            other => other.apply(q),
        }
    }

    fn reverses_orientation(self) -> bool {
        matches!(self, Transform::ReflectX | Transform::ReflectY | Transform::SwapXY)
    }
}

/// Maps a general-position site pair onto `(-u, -1)` and `(u, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFrame {
    u: f64,
    ops: Vec<Transform>,
    a_is_left: bool,
}

impl CanonicalFrame {
    /// The frame of sites that are already canonical.
    pub fn identity(u: f64) -> Result<Self> {
        if !(u >= 1.0) || !u.is_finite() {
            return Err(Error::InvalidScale(u));
        }
        Ok(CanonicalFrame {
            u,
            ops: Vec::new(),
            a_is_left: true,
        })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn ops(&self) -> &[Transform] {
        &self.ops
    }

    /// True when the first input site is sent to `(-u, -1)`.
    pub fn a_is_left(&self) -> bool {
        self.a_is_left
    }

    pub fn reverses_orientation(&self) -> bool {
        self.ops.iter().filter(|t| t.reverses_orientation()).count() % 2 == 1
    }

    pub fn apply(&self, q: Vec2) -> Vec2 {
        self.ops.iter().fold(q, |q, t| t.apply(q))
    }

    pub fn invert(&self, q: Vec2) -> Vec2 {
        self.ops.iter().rev().fold(q, |q, t| t.invert(q))
    }

    /// Canonical site `(-u, -1)`.
    pub fn left_site(&self) -> Vec2 {
        Vec2::new(-self.u, -1.0)
    }

    /// Canonical site `(u, 1)`.
    pub fn right_site(&self) -> Vec2 {
        Vec2::new(self.u, 1.0)
    }

    /// Bounding-box corner `(-u, 1)`.
    pub fn lambda(&self) -> Vec2 {
        Vec2::new(-self.u, 1.0)
    }

    /// Bounding-box corner `(u, -1)`.
    pub fn rho(&self) -> Vec2 {
        Vec2::new(self.u, -1.0)
    }
}

/// Builds the canonical frame for the sites `a` and `b`.
///
/// The sites are centred, axes are swapped when the vertical spread is the
/// larger one, the pair is scaled so the vertical spread becomes 2, and
/// reflections send the lexicographically smaller site to `(-u, -1)`.
pub fn canonicalize(a: Vec2, b: Vec2) -> Result<CanonicalFrame> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite);
    }
    if a == b {
        return Err(Error::IdenticalSites);
    }
    if a.x == b.x || a.y == b.y {
        return Err(Error::DegeneratePair);
    }
    let mut ops = Vec::new();
    let mid = (a + b) * 0.5;
    if mid != Vec2::ZERO {
        ops.push(Transform::Translate(-mid));
    }
    let (dx, dy) = ((b.x - a.x).abs(), (b.y - a.y).abs());
    let (big, small) = if dy > dx {
        ops.push(Transform::SwapXY);
        (dy, dx)
    } else {
        (dx, dy)
    };
    let u = big / small;
    let c = 2.0 / small;
    if c != 1.0 {
        ops.push(Transform::Scale(c));
    }
    let a_is_left = (a.x, a.y) < (b.x, b.y);
    let smaller = if a_is_left { a } else { b };
    let mut frame = CanonicalFrame { u, ops, a_is_left };
    let img = frame.apply(smaller);
    if img.x > 0.0 {
        frame.ops.push(Transform::ReflectX);
    }
    if img.y > 0.0 {
        frame.ops.push(Transform::ReflectY);
    }
    Ok(frame)
}

fn check_p(p: f64) -> Result<()> {
    if p == 0.0 || !p.is_finite() {
        Err(Error::InvalidExponent(p))
    } else {
        Ok(())
    }
}

/// `|x+u|^p - |x-u|^p`, the horizontal part of the bisector equation.
pub fn horizontal_difference(x: f64, u: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p < 0.0 && (x == u || x == -u) {
        return Err(Error::PoleAtSite(x));
    }
    Ok(power_difference((x + u).abs(), (x - u).abs(), p))
}

/// `|y-1|^p - |y+1|^p`, the vertical part of the bisector equation.
pub fn vertical_difference(y: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p < 0.0 && y.abs() == 1.0 {
        return Err(Error::PoleAtUnit(y));
    }
    Ok(power_difference((y - 1.0).abs(), (y + 1.0).abs(), p))
}

/// `1 / |(1/p) d/dy vertical_difference(y)|`.
///
/// Even in `y`; equals `1/2` at `y = 0` for every `p < 1`.
pub fn inverse_vertical_slope(y: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if y.abs() == 1.0 {
        return Err(Error::PoleAtUnit(y));
    }
    let (below, above) = ((y - 1.0).abs(), (y + 1.0).abs());
    let slope = if y.abs() > 1.0 {
        power_difference(below, above, p - 1.0).abs()
    } else {
        below.powf(p - 1.0) + above.powf(p - 1.0)
    };
    Ok(1.0 / slope)
}

/// The hyperbolic part `y = -u/x` of the limit bisector.
pub fn hyperbola_y(x: f64, u: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Asymptote);
    }
    Ok(-u / x)
}

/// The linear part `y = -x/u` of the limit bisector.
pub fn line_y(x: f64, u: f64) -> f64 {
    -x / u
}

/// One of the six lines separating the cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryLine {
    XNegU,
    XZero,
    XPosU,
    YNegOne,
    YZero,
    YPosOne,
}

impl BoundaryLine {
    pub const ALL: [BoundaryLine; 6] = [
        BoundaryLine::XNegU,
        BoundaryLine::XZero,
        BoundaryLine::XPosU,
        BoundaryLine::YNegOne,
        BoundaryLine::YZero,
        BoundaryLine::YPosOne,
    ];

    pub fn is_vertical(self) -> bool {
        matches!(self, BoundaryLine::XNegU | BoundaryLine::XZero | BoundaryLine::XPosU)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundaryLine::XNegU => "x=-u",
            BoundaryLine::XZero => "x=0",
            BoundaryLine::XPosU => "x=u",
            BoundaryLine::YNegOne => "y=-1",
            BoundaryLine::YZero => "y=0",
            BoundaryLine::YPosOne => "y=1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        BoundaryLine::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for BoundaryLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which limit curve a grey cell converges to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Hyperbola,
    Line,
}

/// The open cells of the canonical plane, plus boundary lines.
///
/// Rows are `y > 1`, `-1 < y < 1` and `y < -1`; columns are `x < -u`,
/// `-u < x < 0`, `0 < x < u` and `x > u`:
///
/// ```text
///            x<-u   (-u,0)  (0,u)   x>u
///   y>1      S1     H2      W-ur-n  W-ur-f
///   |y|<1    H1     S2      S3      H4
///   y<-1     W-ll-f W-ll-n  H3      S4
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    H1,
    H2,
    H3,
    H4,
    S1,
    S2,
    S3,
    S4,
    WhiteUpperRightNear,
    WhiteUpperRightFar,
    WhiteLowerLeftNear,
    WhiteLowerLeftFar,
    BoundaryLine(BoundaryLine),
}

impl Cell {
    /// The cells that carry bisector points.
    pub const GREY: [Cell; 8] = [
        Cell::H1,
        Cell::H2,
        Cell::H3,
        Cell::H4,
        Cell::S1,
        Cell::S2,
        Cell::S3,
        Cell::S4,
    ];

    pub const WHITE: [Cell; 4] = [
        Cell::WhiteUpperRightNear,
        Cell::WhiteUpperRightFar,
        Cell::WhiteLowerLeftNear,
        Cell::WhiteLowerLeftFar,
    ];

    pub fn is_grey(self) -> bool {
        self.target().is_some()
    }

    pub fn target(self) -> Option<Target> {
        use Cell::*;
        match self {
            H1 | H2 | H3 | H4 => Some(Target::Hyperbola),
            S1 | S2 | S3 | S4 => Some(Target::Line),
            _ => None,
        }
    }

    /// Column index 0..4, left to right.
    fn column(self) -> Option<usize> {
        use Cell::*;
        match self {
            H1 | S1 | WhiteLowerLeftFar => Some(0),
            H2 | S2 | WhiteLowerLeftNear => Some(1),
            H3 | S3 | WhiteUpperRightNear => Some(2),
            H4 | S4 | WhiteUpperRightFar => Some(3),
            BoundaryLine(_) => None,
        }
    }

    /// Open X-interval of the cell column; unbounded ends are infinite.
    pub fn x_interval(self, u: f64) -> Option<(f64, f64)> {
        self.column().map(|c| match c {
            0 => (f64::NEG_INFINITY, -u),
            1 => (-u, 0.0),
            2 => (0.0, u),
            _ => (u, f64::INFINITY),
        })
    }

    /// Open Y-interval of the cell row; unbounded ends are infinite.
    pub fn y_interval(self) -> Option<(f64, f64)> {
        use Cell::*;
        match self {
            S1 | H2 | WhiteUpperRightNear | WhiteUpperRightFar => Some((1.0, f64::INFINITY)),
            H1 | S2 | S3 | H4 => Some((-1.0, 1.0)),
            WhiteLowerLeftFar | WhiteLowerLeftNear | H3 | S4 => Some((f64::NEG_INFINITY, -1.0)),
            BoundaryLine(_) => None,
        }
    }

    /// Whether `(x, y)` lies strictly inside the cell.
    pub fn contains(self, x: f64, y: f64, u: f64) -> bool {
        classify_cell(x, y, u) == self
    }

    pub fn name(self) -> &'static str {
        use Cell::*;
        match self {
            H1 => "H1",
            H2 => "H2",
            H3 => "H3",
            H4 => "H4",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
            WhiteUpperRightNear => "W-ur-near",
            WhiteUpperRightFar => "W-ur-far",
            WhiteLowerLeftNear => "W-ll-near",
            WhiteLowerLeftFar => "W-ll-far",
            BoundaryLine(l) => l.name(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Cell::GREY
            .into_iter()
            .chain(Cell::WHITE)
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .or_else(|| BoundaryLine::parse(s).map(Cell::BoundaryLine))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies `(x, y)` in the canonical frame with parameter `u`.
///
/// Boundary tests use exact equality; vertical lines are checked before
/// horizontal ones, so `(u, -1)` reports `x=u`.
pub fn classify_cell(x: f64, y: f64, u: f64) -> Cell {
    use Cell::*;
    let line = if x == -u {
        Some(self::BoundaryLine::XNegU)
    } else if x == 0.0 {
        Some(self::BoundaryLine::XZero)
    } else if x == u {
        Some(self::BoundaryLine::XPosU)
    } else if y == -1.0 {
        Some(self::BoundaryLine::YNegOne)
    } else if y == 0.0 {
        Some(self::BoundaryLine::YZero)
    } else if y == 1.0 {
        Some(self::BoundaryLine::YPosOne)
    } else {
        None
    };
    if let Some(l) = line {
        return Cell::BoundaryLine(l);
    }
    let col = if x < -u {
        0
    } else if x < 0.0 {
        1
    } else if x < u {
        2
    } else {
        3
    };
    const TOP: [Cell; 4] = [S1, H2, WhiteUpperRightNear, WhiteUpperRightFar];
    const MID: [Cell; 4] = [H1, S2, S3, H4];
    const BOTTOM: [Cell; 4] = [WhiteLowerLeftFar, WhiteLowerLeftNear, H3, S4];
    if y > 1.0 {
        TOP[col]
    } else if y > -1.0 {
        MID[col]
    } else {
        BOTTOM[col]
    }
}
