//! Sweeps of L_p bisector samples against their p -> 0 limit curves.
//!
//! In H-cells the samples approach the hyperbola `y = -u/x`, in S-cells the
//! line `y = -x/u`, from both signs of `p`.

use std::cmp::Ordering;
use std::io::Write;

use crate::bisector::sample_bisector_y;
use crate::canonical::{horizontal_difference, hyperbola_y, inverse_vertical_slope, line_y, Cell, Target};
use crate::error::{Error, Result};
use crate::sig17;

/// Exponents swept by default; both signs are used.
pub const DEFAULT_P_MAGNITUDES: [f64; 5] = [0.2, 0.1, 0.05, 0.02, 0.01];

/// Relative positions of the default x-grid inside each cell.
pub const DEFAULT_X_POSITIONS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Unbounded cell columns are truncated at `|x| = GRID_TRUNCATION * u`.
pub const GRID_TRUNCATION: f64 = 5.0;

/// Default bound on the deviation at the smallest `|p|` in [`check_monotone`].
pub const DEFAULT_FINAL_THRESHOLD: f64 = 0.05;

/// `±p` for each magnitude, positive first.
pub fn mirrored(magnitudes: &[f64]) -> Vec<f64> {
    magnitudes.iter().flat_map(|&m| [m.abs(), -m.abs()]).collect()
}

pub fn default_p_list() -> Vec<f64> {
    mirrored(&DEFAULT_P_MAGNITUDES)
}

/// `positions` spread across the X-interval of every grey cell.
pub fn x_grid(u: f64, positions: &[f64]) -> Vec<(Cell, Vec<f64>)> {
    Cell::GREY
        .into_iter()
        .map(|cell| {
            let (lo, hi) = cell.x_interval(u).expect("grey cells have intervals");
            let lo = lo.max(-GRID_TRUNCATION * u);
            let hi = hi.min(GRID_TRUNCATION * u);
            (cell, positions.iter().map(|t| lo + (hi - lo) * t).collect())
        })
        .collect()
}

pub fn default_x_grid(u: f64) -> Vec<(Cell, Vec<f64>)> {
    x_grid(u, &DEFAULT_X_POSITIONS)
}

fn target_y(cell: Cell, x: f64, u: f64) -> Result<f64> {
    match cell.target() {
        Some(Target::Hyperbola) => hyperbola_y(x, u),
        Some(Target::Line) => Ok(line_y(x, u)),
        None => Err(Error::InvalidCell(cell)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub x: f64,
    pub cell: Cell,
    /// `None` when the cell has no sign change at this `p`.
    pub y_p: Option<f64>,
    pub target: f64,
    pub deviation: Option<f64>,
}

impl SweepRow {
    pub fn flag(&self) -> &'static str {
        if self.y_p.is_some() {
            "ok"
        } else {
            "noroot"
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub u: f64,
    pub tol: f64,
    pub p_list: Vec<f64>,
    pub x_grid: Vec<(Cell, Vec<f64>)>,
    /// Sorted by cell, then x, then `|p|` descending, positive `p` first.
    pub rows: Vec<SweepRow>,
}

fn row_order(a: &SweepRow, b: &SweepRow) -> Ordering {
    a.cell
        .cmp(&b.cell)
        .then(a.x.total_cmp(&b.x))
        .then(b.p.abs().total_cmp(&a.p.abs()))
        .then(b.p.total_cmp(&a.p))
}

fn sweep_row(u: f64, cell: Cell, x: f64, p: f64, tol: f64) -> Result<SweepRow> {
    let target = target_y(cell, x, u)?;
    let y_p = match sample_bisector_y(x, p, cell, u, tol) {
        Ok(s) => Some(s.y),
        Err(Error::NoRootInCell { .. } | Error::ResidualAboveTolerance { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        p,
        x,
        cell,
        y_p,
        target,
        deviation: y_p.map(|y| (y - target).abs()),
    })
}

fn validate(u: f64, x_per_cell: &[(Cell, Vec<f64>)], p_list: &[f64], tol: f64) -> Result<()> {
    if !(u >= 1.0) || !u.is_finite() {
        return Err(Error::InvalidScale(u));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    if let Some(&p) = p_list.iter().find(|p| **p == 0.0 || !p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    if !p_list.iter().any(|&p| p > 0.0) || !p_list.iter().any(|&p| p < 0.0) {
        return Err(Error::OneSidedExponents);
    }
    for (cell, xs) in x_per_cell {
        let (lo, hi) = cell
            .x_interval(u)
            .filter(|_| cell.is_grey())
            .ok_or(Error::InvalidCell(*cell))?;
        if let Some(&x) = xs.iter().find(|&&x| !(x > lo && x < hi)) {
            return Err(Error::OutsideCell { cell: *cell, x });
        }
    }
    Ok(())
}

fn sweep(u: f64, x_per_cell: &[(Cell, Vec<f64>)], p_list: &[f64], tol: f64, parallel: bool) -> Result<SweepReport> {
    validate(u, x_per_cell, p_list, tol)?;
    let tasks: Vec<(Cell, f64, f64)> = x_per_cell
        .iter()
        .flat_map(|(cell, xs)| xs.iter().flat_map(move |&x| p_list.iter().map(move |&p| (*cell, x, p))))
        .collect();
    let run = |&(cell, x, p): &(Cell, f64, f64)| sweep_row(u, cell, x, p, tol);
    let rows: Result<Vec<SweepRow>> = if parallel {
        crate::exec::par_map(&tasks, run).into_iter().collect()
    } else {
        tasks.iter().map(run).collect()
    };
    let mut rows = rows?;
    rows.sort_by(row_order);
    Ok(SweepReport {
        u,
        tol,
        p_list: p_list.to_vec(),
        x_grid: x_per_cell.to_vec(),
        rows,
    })
}

/// Samples the bisector at every `(cell, x, p)` and measures the distance to
/// the cell's limit curve. Rows run in parallel when the `parallel` feature
/// is enabled; the report is identical either way.
pub fn converge_sweep(u: f64, x_per_cell: &[(Cell, Vec<f64>)], p_list: &[f64], tol: f64) -> Result<SweepReport> {
    sweep(u, x_per_cell, p_list, tol, true)
}

/// [`converge_sweep`] on the calling thread.
pub fn converge_sweep_sequential(
    u: f64,
    x_per_cell: &[(Cell, Vec<f64>)],
    p_list: &[f64],
    tol: f64,
) -> Result<SweepReport> {
    sweep(u, x_per_cell, p_list, tol, false)
}

/// Writes `p,x,cell,y_p,target,deviation,flag`; missing values are empty.
pub fn write_report_csv<W: Write>(mut w: W, report: &SweepReport) -> Result<()> {
    writeln!(w, "p,x,cell,y_p,target,deviation,flag")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            sig17(r.p),
            sig17(r.x),
            r.cell,
            r.y_p.map(sig17).unwrap_or_default(),
            sig17(r.target),
            r.deviation.map(sig17).unwrap_or_default(),
            r.flag()
        )?;
    }
    Ok(())
}

/// Deviation series of one `(cell, x)` for one sign of `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneVerdict {
    pub cell: Cell,
    pub x: f64,
    pub positive_p: bool,
    /// `(p, deviation)`, `|p|` descending; rows without a root are left out.
    pub series: Vec<(f64, f64)>,
    pub monotone: bool,
    pub final_deviation: f64,
    pub pass: bool,
}

/// Checks that deviations never grow as `|p|` shrinks and end at or below
/// `final_threshold`. This is a regression property of the sweep, not a
/// proven rate.
pub fn check_monotone(report: &SweepReport, final_threshold: f64) -> Result<Vec<MonotoneVerdict>> {
    let mut groups: Vec<MonotoneVerdict> = Vec::new();
    for sign in [true, false] {
        for (cell, xs) in &report.x_grid {
            for &x in xs {
                let mut series: Vec<(f64, f64)> = report
                    .rows
                    .iter()
                    .filter(|r| r.cell == *cell && r.x == x && (r.p > 0.0) == sign)
                    .filter_map(|r| r.deviation.map(|d| (r.p, d)))
                    .collect();
                series.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()));
                series.dedup_by(|a, b| a.0 == b.0);
                if series.len() < 2 {
                    return Err(Error::InsufficientData { cell: *cell, x });
                }
                let monotone = series.windows(2).all(|w| w[1].1 <= w[0].1);
                let final_deviation = series.last().unwrap().1;
                groups.push(MonotoneVerdict {
                    cell: *cell,
                    x,
                    positive_p: sign,
                    series,
                    monotone,
                    final_deviation,
                    pass: monotone && final_deviation <= final_threshold,
                });
            }
        }
    }
    groups.sort_by(|a, b| {
        a.cell
            .cmp(&b.cell)
            .then(a.x.total_cmp(&b.x))
            .then(b.positive_p.cmp(&a.positive_p))
    });
    Ok(groups)
}

/// Upper bound on `|y_p - target|` from the mean value theorem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorBudget {
    /// `(1/p)(1 - c^-p) · horizontal_difference(x)`, with `c = |x|` for
    /// hyperbola targets and `c = u` for line targets.
    pub f: f64,
    /// Bound on the inverse slope of the vertical difference between the
    /// sample and the target.
    pub zbound: f64,
    pub budget: f64,
}

/// Computes the error budget at `(x, p)` for a grey `cell`.
///
/// Cells in the middle row use the global maximum `1/2` of the inverse
/// slope; cells in the outer rows evaluate it at `2|target| + 3`, which
/// bounds the sample for `p` close to zero.
pub fn error_budget(x: f64, p: f64, u: f64, cell: Cell) -> Result<ErrorBudget> {
    if x == 0.0 {
        return Err(Error::Asymptote);
    }
    let target = target_y(cell, x, u)?;
    let (lo, hi) = cell.x_interval(u).expect("grey cells have intervals");
    if !(x > lo && x < hi) {
        return Err(Error::OutsideCell { cell, x });
    }
    let scale = match cell.target() {
        Some(Target::Hyperbola) => x.abs(),
        _ => u,
    };
    // (1 - scale^-p) / p without cancellation
    let factor = -(-p * scale.ln()).exp_m1() / p;
    let f = factor * horizontal_difference(x, u, p)?;
    let zbound = match cell.y_interval() {
        Some((-1.0, 1.0)) => 0.5,
        _ => inverse_vertical_slope(2.0 * target.abs() + 3.0, p)?,
    };
    Ok(ErrorBudget {
        f,
        zbound,
        budget: zbound * f.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report_from(series: &[(f64, f64)]) -> SweepReport {
        let rows = series
            .iter()
            .map(|&(p, d)| SweepRow {
                p,
                x: 1.0,
                cell: Cell::S3,
                y_p: Some(-0.5 - d),
                target: -0.5,
                deviation: Some(d),
            })
            .collect();
        SweepReport {
            u: 2.0,
            tol: 1e-12,
            p_list: series.iter().map(|s| s.0).collect(),
            x_grid: vec![(Cell::S3, vec![1.0])],
            rows,
        }
    }

    #[test]
    fn monotone_examples() {
        let zero = report_from(&[(0.1, 0.0), (0.05, 0.0), (-0.1, 0.0), (-0.05, 0.0)]);
        assert!(check_monotone(&zero, DEFAULT_FINAL_THRESHOLD)
            .unwrap()
            .iter()
            .all(|v| v.pass));

        let dec = report_from(&[(0.2, 0.1), (0.1, 0.03), (0.05, 0.01), (-0.2, 0.1), (-0.1, 0.03)]);
        assert!(check_monotone(&dec, DEFAULT_FINAL_THRESHOLD)
            .unwrap()
            .iter()
            .all(|v| v.pass));

        let inc = report_from(&[(0.2, 0.01), (0.1, 0.03), (-0.2, 0.01), (-0.1, 0.005)]);
        let v = check_monotone(&inc, DEFAULT_FINAL_THRESHOLD).unwrap();
        assert!(!v[0].pass && !v[0].monotone && v[0].positive_p);
        assert!(v[1].pass);

        let short = report_from(&[(0.2, 0.01), (-0.2, 0.01), (-0.1, 0.0)]);
        assert!(matches!(
            check_monotone(&short, DEFAULT_FINAL_THRESHOLD),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn sweep_symmetric_point_has_zero_deviation() {
        let grid = vec![(Cell::H3, vec![1.0])];
        let r = converge_sweep(2.0, &grid, &default_p_list(), 1e-12).unwrap();
        assert_eq!(r.rows.len(), 10);
        assert!(r.rows.iter().all(|row| row.deviation == Some(0.0)));
        // |p| descending, positive first
        assert_eq!(r.rows[0].p, 0.2);
        assert_eq!(r.rows[1].p, -0.2);
        assert_eq!(r.rows[9].p, -0.01);
    }

    #[test]
    fn sweep_s3_deviation_shrinks() {
        let grid = vec![(Cell::S3, vec![1.0])];
        let r = converge_sweep(2.0, &grid, &[0.1, 0.01, -0.1, -0.01], 1e-12).unwrap();
        let dev = |p: f64| r.rows.iter().find(|row| row.p == p).unwrap().deviation.unwrap();
        // high-precision roots: y = -0.5298373330680958, -0.5028679773825392
        assert!((dev(0.1) - 0.029_837_333_068_095_8).abs() < 1e-12);
        assert!((dev(0.01) - 0.002_867_977_382_539_2).abs() < 1e-12);
    }

    #[test]
    fn sweep_h2_stays_in_band() {
        // x = -1 is the symmetric point of H2: y_p = 2 = h(-1), inside (1, 7)
        let grid = vec![(Cell::H2, vec![-1.0])];
        let r = converge_sweep(2.0, &grid, &[0.05, -0.05], 1e-12).unwrap();
        for row in &r.rows {
            let y = row.y_p.unwrap();
            assert!(y > 1.0 && y < 7.0);
        }
    }

    #[test]
    fn sweep_preconditions() {
        let grid = vec![(Cell::S3, vec![1.0])];
        assert!(matches!(
            converge_sweep(2.0, &grid, &[0.1, 0.2], 1e-12),
            Err(Error::OneSidedExponents)
        ));
        let bad = vec![(Cell::S3, vec![3.0])];
        assert!(matches!(
            converge_sweep(2.0, &bad, &[0.1, -0.1], 1e-12),
            Err(Error::OutsideCell { .. })
        ));
        let white = vec![(Cell::WhiteUpperRightFar, vec![3.0])];
        assert!(matches!(
            converge_sweep(2.0, &white, &[0.1, -0.1], 1e-12),
            Err(Error::InvalidCell(_))
        ));
    }

    #[test]
    fn budget_examples() {
        for p in [0.2, 0.01, -0.05] {
            let b = error_budget(1.0, p, 2.0, Cell::H3).unwrap();
            assert_eq!(b.f, 0.0);
            assert_eq!(b.budget, 0.0);
        }
        for cell in [Cell::S2, Cell::S3, Cell::H4, Cell::H1] {
            let (lo, hi) = cell.x_interval(2.0).unwrap();
            let x = if lo.is_infinite() {
                hi - 1.0
            } else if hi.is_infinite() {
                lo + 1.0
            } else {
                0.5 * (lo + hi)
            };
            assert_eq!(error_budget(x, 0.03, 2.0, cell).unwrap().zbound, 0.5);
        }
        let b = error_budget(-1.2, 0.01, 2.0, Cell::H2).unwrap();
        let y = sample_bisector_y(-1.2, 0.01, Cell::H2, 2.0, 1e-12).unwrap().y;
        assert!((y - hyperbola_y(-1.2, 2.0).unwrap()).abs() <= b.budget);
    }

    #[test]
    fn default_grid_shape() {
        let g = default_x_grid(2.0);
        assert_eq!(g.len(), 8);
        let h1 = &g.iter().find(|(c, _)| *c == Cell::H1).unwrap().1;
        assert!((h1[0] + 9.2).abs() < 1e-12 && (h1[8] + 2.8).abs() < 1e-12);
        let s3 = &g.iter().find(|(c, _)| *c == Cell::S3).unwrap().1;
        assert_eq!(s3[4], 1.0);
    }

    #[test]
    fn csv_rows() {
        let grid = vec![(Cell::S3, vec![1.0])];
        let r = converge_sweep(2.0, &grid, &[0.1, -0.1], 1e-12).unwrap();
        let mut buf = Vec::new();
        write_report_csv(&mut buf, &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "p,x,cell,y_p,target,deviation,flag");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1.0000000000000001e-1,1.0000000000000000e0,S3,"));
        assert!(lines[1].ends_with(",ok"));
    }
}
