//! Argument parsing and dispatch for the `lpvoronoi` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use lpvoronoi::bisector::{write_samples_csv, SharedAxis, DEFAULT_TOL};
use lpvoronoi::convergence::{
    check_monotone, converge_sweep, default_p_list, mirrored, x_grid, DEFAULT_FINAL_THRESHOLD, DEFAULT_X_POSITIONS,
};
use lpvoronoi::raster::{save_pgm, save_ppm, write_faces_csv, Palette};
use lpvoronoi::{
    canonicalize, l0_bisector, render_circle, render_owners, sample_bisector_y, special_line_points, BoundaryLine,
    Cell, Error, Exponent, Grid, L0Bisector, Vec2,
};

#[derive(Parser, Debug)]
#[command(
    name = "lpvoronoi",
    version,
    about = "L_p and geometric L_0 Voronoi bisectors and diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct RasterArgs {
    /// Raster size, e.g. 512x512
    #[arg(long, default_value = "512x512")]
    grid: String,
    /// World rectangle xmin,ymin,xmax,ymax
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Render the Voronoi diagram of the sites as a PPM image
    Render {
        /// p=<r>, p=0, p=inf or p=-inf
        exponent: String,
        #[arg(long = "site", allow_hyphen_values = true, required = true)]
        sites: Vec<String>,
        #[command(flatten)]
        raster: RasterArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Describe the L_0 bisector of two sites, or sample the L_p bisector in
    /// the canonical frame
    Bisector {
        exponent: String,
        #[arg(long = "site", allow_hyphen_values = true)]
        sites: Vec<String>,
        /// Canonical frame parameter, instead of two sites
        #[arg(long)]
        u: Option<f64>,
        /// Intersections with one of x=-u, x=0, x=u, y=-1, y=0, y=1
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cell")]
        line: Option<String>,
        /// Sample a single cell (H1..H4, S1..S4)
        #[arg(long)]
        cell: Option<String>,
        /// Comma-separated x values; defaults to a grid inside each cell
        #[arg(long, allow_hyphen_values = true, requires = "cell")]
        x: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep bisector samples toward p = 0 and report deviations as CSV
    Converge {
        #[arg(long = "site", allow_hyphen_values = true)]
        sites: Vec<String>,
        #[arg(long)]
        u: Option<f64>,
        /// Comma-separated exponents; each is used with both signs
        #[arg(long, allow_hyphen_values = true)]
        plist: Option<String>,
        /// Comma-separated relative positions in (0, 1) inside each cell
        #[arg(long)]
        xgrid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render the circle of the given radius as a PGM mask
    Circle {
        exponent: String,
        #[arg(long)]
        radius: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        center: String,
        #[command(flatten)]
        raster: RasterArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Count the connected faces of every site's region
    Faces {
        exponent: String,
        #[arg(long = "site", allow_hyphen_values = true, required = true)]
        sites: Vec<String>,
        #[command(flatten)]
        raster: RasterArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Where the canonical frame comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FrameSource {
    Scale(f64),
    Sites(Vec2, Vec2),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BisectorMode {
    /// Analytic description for `p=0`.
    Describe(Vec2, Vec2),
    Line(BoundaryLine),
    Cell(Cell, Option<Vec<f64>>),
    AllCells,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunConfig {
    Render {
        sites: Vec<Vec2>,
        exponent: Exponent,
        grid: Grid,
        output: PathBuf,
    },
    Bisector {
        exponent: Exponent,
        frame: FrameSource,
        mode: BisectorMode,
        tol: f64,
        output: Option<PathBuf>,
    },
    Converge {
        frame: FrameSource,
        p_list: Vec<f64>,
        positions: Vec<f64>,
        tol: f64,
        output: Option<PathBuf>,
    },
    Circle {
        center: Vec2,
        radius: f64,
        exponent: Exponent,
        grid: Grid,
        output: PathBuf,
    },
    Faces {
        sites: Vec<Vec2>,
        exponent: Exponent,
        grid: Grid,
        output: Option<PathBuf>,
    },
}

fn usage(msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

fn number(s: &str) -> Result<f64, clap::Error> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(usage(format!("malformed number '{s}'"))),
    }
}

fn numbers(s: &str) -> Result<Vec<f64>, clap::Error> {
    s.split(',').map(number).collect()
}

fn point(s: &str) -> Result<Vec2, clap::Error> {
    match numbers(s)?.as_slice() {
        &[x, y] => Ok(Vec2::new(x, y)),
        _ => Err(usage(format!("expected x,y, got '{s}'"))),
    }
}

/// `p=<r>` with nonzero finite `r`, `p=0` (or `p=0.0`), `p=inf`, `p=-inf`.
pub fn parse_exponent(s: &str) -> Result<Exponent, clap::Error> {
    let Some(v) = s.strip_prefix("p=") else {
        return Err(usage(format!("exponent must look like p=<value>, got '{s}'")));
    };
    let parsed = match v {
        "inf" | "+inf" => return Ok(Exponent::PosInfinity),
        "-inf" => return Ok(Exponent::NegInfinity),
        _ => number(v)?,
    };
    if parsed == 0.0 {
        Ok(Exponent::GeometricZero)
    } else {
        Ok(Exponent::finite(parsed).expect("nonzero finite"))
    }
}

fn finite_p(e: Exponent) -> Result<f64, clap::Error> {
    e.p()
        .ok_or_else(|| usage(format!("{e} has no canonical-frame samples; use a finite nonzero p")))
}

fn parse_grid(raster: &RasterArgs, sites: &[Vec2], fallback: (Vec2, f64)) -> Result<Grid, clap::Error> {
    let (w, h) = raster
        .grid
        .split_once('x')
        .and_then(|(w, h)| Some((w.parse::<usize>().ok()?, h.parse::<usize>().ok()?)))
        .ok_or_else(|| usage(format!("grid must look like WxH, got '{}'", raster.grid)))?;
    let (xmin, ymin, xmax, ymax) = match &raster.window {
        Some(s) => match numbers(s)?.as_slice() {
            &[a, b, c, d] => (a, b, c, d),
            _ => return Err(usage(format!("window must be xmin,ymin,xmax,ymax, got '{s}'"))),
        },
        None => default_window(sites, fallback),
    };
    Grid::new(w, h, xmin, ymin, xmax, ymax).map_err(usage)
}

/// Bounding box of the sites, grown to three times its half-extents around
/// its center; half-extents below 1/2 count as 1/2.
fn default_window(sites: &[Vec2], fallback: (Vec2, f64)) -> (f64, f64, f64, f64) {
    let (c, hx, hy) = if sites.is_empty() {
        (fallback.0, fallback.1, fallback.1)
    } else {
        let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&Vec2) -> f64| sites.iter().map(g).fold(init, f);
        let (x0, x1) = (
            fold(f64::min, f64::INFINITY, |s| s.x),
            fold(f64::max, f64::NEG_INFINITY, |s| s.x),
        );
        let (y0, y1) = (
            fold(f64::min, f64::INFINITY, |s| s.y),
            fold(f64::max, f64::NEG_INFINITY, |s| s.y),
        );
        let c = Vec2::new(0.5 * (x0 + x1), 0.5 * (y0 + y1));
        (c, (0.5 * (x1 - x0)).max(0.5), (0.5 * (y1 - y0)).max(0.5))
    };
    (c.x - 3.0 * hx, c.y - 3.0 * hy, c.x + 3.0 * hx, c.y + 3.0 * hy)
}

fn frame_source(sites: &[Vec2], u: Option<f64>) -> Result<FrameSource, clap::Error> {
    match (sites, u) {
        ([], None) => Ok(FrameSource::Scale(2.0)),
        ([], Some(u)) if u >= 1.0 && u.is_finite() => Ok(FrameSource::Scale(u)),
        ([], Some(u)) => Err(usage(format!("u must be >= 1, got {u}"))),
        (&[a, b], None) => Ok(FrameSource::Sites(a, b)),
        (&[_, _], Some(_)) => Err(usage("give either two sites or --u, not both")),
        _ => Err(usage("the canonical frame needs exactly two sites")),
    }
}

fn check_tol(tol: f64) -> Result<f64, clap::Error> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(usage(format!("tolerance must be positive, got {tol}")))
    }
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let sites_of = |v: &[String]| v.iter().map(|s| point(s)).collect::<Result<Vec<_>, _>>();
    Ok(match cli.command {
        Sub::Render {
            exponent,
            sites,
            raster,
            output,
        } => {
            let sites = sites_of(&sites)?;
            RunConfig::Render {
                exponent: parse_exponent(&exponent)?,
                grid: parse_grid(&raster, &sites, (Vec2::ZERO, 1.0))?,
                sites,
                output,
            }
        }
        Sub::Faces {
            exponent,
            sites,
            raster,
            output,
        } => {
            let sites = sites_of(&sites)?;
            RunConfig::Faces {
                exponent: parse_exponent(&exponent)?,
                grid: parse_grid(&raster, &sites, (Vec2::ZERO, 1.0))?,
                sites,
                output,
            }
        }
        Sub::Circle {
            exponent,
            radius,
            center,
            raster,
            output,
        } => {
            if radius <= 0.0 || !radius.is_finite() {
                return Err(usage(format!("radius must be positive, got {radius}")));
            }
            let center = point(&center)?;
            RunConfig::Circle {
                exponent: parse_exponent(&exponent)?,
                grid: parse_grid(&raster, &[], (center, 3.0 * radius))?,
                center,
                radius,
                output,
            }
        }
        Sub::Bisector {
            exponent,
            sites,
            u,
            line,
            cell,
            x,
            tol,
            output,
        } => {
            let exponent = parse_exponent(&exponent)?;
            let sites = sites_of(&sites)?;
            let tol = check_tol(tol)?;
            if exponent == Exponent::GeometricZero {
                let &[a, b] = sites.as_slice() else {
                    return Err(usage("p=0 describes the bisector of exactly two --site values"));
                };
                if line.is_some() || cell.is_some() || u.is_some() {
                    return Err(usage("--line, --cell and --u need a finite nonzero p"));
                }
                return Ok(RunConfig::Bisector {
                    exponent,
                    frame: FrameSource::Sites(a, b),
                    mode: BisectorMode::Describe(a, b),
                    tol,
                    output,
                });
            }
            finite_p(exponent)?;
            let mode = match (line, cell) {
                (Some(l), _) => {
                    BisectorMode::Line(BoundaryLine::parse(&l).ok_or_else(|| usage(format!("unknown line '{l}'")))?)
                }
                (None, Some(c)) => {
                    let cell = Cell::parse(&c)
                        .filter(|c| c.is_grey())
                        .ok_or_else(|| usage(format!("'{c}' is not one of H1..H4, S1..S4")))?;
                    BisectorMode::Cell(cell, x.as_deref().map(numbers).transpose()?)
                }
                (None, None) => BisectorMode::AllCells,
            };
            RunConfig::Bisector {
                exponent,
                frame: frame_source(&sites, u)?,
                mode,
                tol,
                output,
            }
        }
        Sub::Converge {
            sites,
            u,
            plist,
            xgrid,
            tol,
            output,
        } => {
            let p_list = match plist {
                Some(s) => {
                    let ps = numbers(&s)?;
                    if ps.contains(&0.0) {
                        return Err(usage("the p-list must not contain 0"));
                    }
                    let mut all = mirrored(&ps);
                    all.sort_by(|a, b| b.abs().total_cmp(&a.abs()).then(b.total_cmp(a)));
                    all.dedup();
                    all
                }
                None => default_p_list(),
            };
            let positions = match xgrid {
                Some(s) => {
                    let ts = numbers(&s)?;
                    if let Some(t) = ts.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
                        return Err(usage(format!("x-grid positions must lie in (0, 1), got {t}")));
                    }
                    ts
                }
                None => DEFAULT_X_POSITIONS.to_vec(),
            };
            RunConfig::Converge {
                frame: frame_source(&sites_of(&sites)?, u)?,
                p_list,
                positions,
                tol: check_tol(tol)?,
                output,
            }
        }
    })
}

fn frame_u(frame: &FrameSource) -> lpvoronoi::Result<f64> {
    match *frame {
        FrameSource::Scale(u) => Ok(u),
        FrameSource::Sites(a, b) => Ok(canonicalize(a, b)?.u()),
    }
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> lpvoronoi::Result<()>) -> lpvoronoi::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn describe(w: &mut dyn Write, a: Vec2, b: Vec2) -> lpvoronoi::Result<()> {
    match l0_bisector(a, b)? {
        L0Bisector::General {
            line,
            hyperbola,
            lambda,
            rho,
        } => {
            writeln!(w, "line: {}*x + {}*y = {}", line.a, line.b, line.c)?;
            writeln!(
                w,
                "hyperbola: (x - {})*(y - {}) = {}",
                hyperbola.center.x, hyperbola.center.y, hyperbola.k
            )?;
            writeln!(w, "corners: {lambda} {rho}")?;
        }
        L0Bisector::Degenerate { shared, midpoint } => {
            let (axis, x, y) = match shared {
                SharedAxis::SharedX => ("x", a.x, midpoint.y),
                SharedAxis::SharedY => ("y", midpoint.x, a.y),
            };
            writeln!(w, "degenerate: sites share {axis}")?;
            writeln!(w, "lines: x = {x}, y = {y}")?;
        }
    }
    Ok(())
}

fn bisector(
    exponent: Exponent,
    frame: &FrameSource,
    mode: &BisectorMode,
    tol: f64,
    w: &mut dyn Write,
) -> lpvoronoi::Result<()> {
    if let BisectorMode::Describe(a, b) = *mode {
        return describe(w, a, b);
    }
    let p = exponent.p().ok_or(Error::InvalidExponent(0.0))?;
    let u = frame_u(frame)?;
    if let BisectorMode::Line(line) = *mode {
        writeln!(w, "line,x,y,offset")?;
        for s in special_line_points(p, u)?.into_iter().filter(|s| s.line == line) {
            writeln!(w, "{},{:.16e},{:.16e},{:.16e}", s.line.name(), s.at.x, s.at.y, s.offset)?;
        }
        return Ok(());
    }
    let cells: Vec<(Cell, Vec<f64>)> = match mode {
        BisectorMode::Cell(cell, Some(xs)) => vec![(*cell, xs.clone())],
        BisectorMode::Cell(cell, None) => x_grid(u, &DEFAULT_X_POSITIONS)
            .into_iter()
            .filter(|(c, _)| c == cell)
            .collect(),
        _ => x_grid(u, &DEFAULT_X_POSITIONS),
    };
    let mut samples = Vec::new();
    for (cell, xs) in cells {
        for x in xs {
            match sample_bisector_y(x, p, cell, u, tol) {
                Ok(s) => samples.push(s),
                Err(Error::NoRootInCell { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    write_samples_csv(w, &samples)
}

fn execute(config: &RunConfig) -> lpvoronoi::Result<()> {
    match config {
        RunConfig::Render {
            sites,
            exponent,
            grid,
            output,
        } => {
            let map = render_owners(sites, *exponent, grid)?;
            save_ppm(output, &map, &Palette::hue(sites.len()))
        }
        RunConfig::Faces {
            sites,
            exponent,
            grid,
            output,
        } => {
            let map = render_owners(sites, *exponent, grid)?;
            with_output(output.as_deref(), |w| write_faces_csv(w, &map))
        }
        RunConfig::Circle {
            center,
            radius,
            exponent,
            grid,
            output,
        } => {
            let mask = render_circle(*center, *radius, *exponent, grid)?;
            save_pgm(output, grid, &mask)
        }
        RunConfig::Bisector {
            exponent,
            frame,
            mode,
            tol,
            output,
        } => with_output(output.as_deref(), |w| bisector(*exponent, frame, mode, *tol, w)),
        RunConfig::Converge {
            frame,
            p_list,
            positions,
            tol,
            output,
        } => {
            let u = frame_u(frame)?;
            let report = converge_sweep(u, &x_grid(u, positions), p_list, *tol)?;
            with_output(output.as_deref(), |w| {
                lpvoronoi::convergence::write_report_csv(w, &report)
            })?;
            let noroot = report.rows.iter().filter(|r| r.y_p.is_none()).count();
            match check_monotone(&report, DEFAULT_FINAL_THRESHOLD) {
                Ok(v) => {
                    let failing = v.iter().filter(|v| !v.pass).count();
                    eprintln!(
                        "{} rows ({noroot} without root); {} of {} series monotone within {DEFAULT_FINAL_THRESHOLD}",
                        report.rows.len(),
                        v.len() - failing,
                        v.len()
                    );
                }
                Err(e) => eprintln!("{} rows ({noroot} without root); {e}", report.rows.len()),
            }
            Ok(())
        }
    }
}

/// Runs a parsed configuration: 0 on success, 1 on a domain error.
pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
