//! Voronoi bisectors under L_p distances and their p -> 0 limit.
//!
//! The crate covers the distance functions themselves ([`norms`]), the
//! canonical frame of a site pair ([`canonical`]), explicit and sampled
//! bisectors ([`bisector`]), convergence sweeps as `p` approaches zero
//! ([`convergence`]) and pixel rendering of Voronoi diagrams ([`raster`]).

// `!(x > 0.0)` style checks are meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bisector;
pub mod canonical;
pub mod convergence;
mod error;
mod exec;
pub mod norms;
mod poly;
pub mod raster;
mod roots;

pub use bisector::{
    l0_bisector, l0_face, sample_bisector_y, special_line_points, BisectorSample, FaceClass, FaceLabel, L0Bisector,
    SiteLabel, SpecialPoint,
};
pub use canonical::{canonicalize, classify_cell, BoundaryLine, CanonicalFrame, Cell, Target};
pub use convergence::{check_monotone, converge_sweep, converge_sweep_sequential, error_budget, SweepReport};
pub use error::{Error, Result};
pub use norms::{compare_distance, l0_norm_nd, lp_norm, power_difference, DistanceOrder, Exponent, Power, Vec2};
pub use raster::{count_faces, render_circle, render_owners, render_owners_sequential, Grid, Owner, OwnerMap, Palette};

/// 17 significant digits, enough to round-trip an `f64`.
pub(crate) fn sig17(v: f64) -> String {
    format!("{:.16e}", v)
}
