//! Pixelwise Voronoi diagrams and L_p circles over a rectangle of the plane.

mod pnm;

pub use pnm::{save_pgm, save_ppm, write_faces_csv, write_pgm, write_ppm, Palette};

use crate::error::{Error, Result};
use crate::exec::{par_rows, seq_rows};
use crate::norms::{compare_distance, DistanceOrder, Exponent, Vec2};

/// A `width × height` raster over `[xmin, xmax] × [ymin, ymax]`.
///
/// Pixel `(col, row)` stands for the center of its world cell; row 0 is the
/// top edge (largest y).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    width: usize,
    height: usize,
    xmin: f64,
    ymin: f64,
    xmax: f64,
    ymax: f64,
}

impl Grid {
    pub fn new(width: usize, height: usize, xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGrid(format!("empty raster {width}x{height}")));
        }
        if ![xmin, ymin, xmax, ymax].iter().all(|v| v.is_finite()) || !(xmax > xmin) || !(ymax > ymin) {
            return Err(Error::InvalidGrid(format!("bad window {xmin},{ymin},{xmax},{ymax}")));
        }
        Ok(Grid {
            width,
            height,
            xmin,
            ymin,
            xmax,
            ymax,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(xmin, ymin, xmax, ymax)`
    pub fn window(&self) -> (f64, f64, f64, f64) {
        (self.xmin, self.ymin, self.xmax, self.ymax)
    }

    pub fn pixel_width(&self) -> f64 {
        (self.xmax - self.xmin) / self.width as f64
    }

    pub fn pixel_height(&self) -> f64 {
        (self.ymax - self.ymin) / self.height as f64
    }

    pub fn pixel_diagonal(&self) -> f64 {
        self.pixel_width().hypot(self.pixel_height())
    }

    pub fn center(&self, col: usize, row: usize) -> Vec2 {
        Vec2::new(
            self.xmin + (col as f64 + 0.5) * self.pixel_width(),
            self.ymax - (row as f64 + 0.5) * self.pixel_height(),
        )
    }

    /// The pixel whose world cell contains `q`, if any.
    pub fn pixel_of(&self, q: Vec2) -> Option<(usize, usize)> {
        let c = ((q.x - self.xmin) / self.pixel_width()).floor();
        let r = ((self.ymax - q.y) / self.pixel_height()).floor();
        if c >= 0.0 && r >= 0.0 && (c as usize) < self.width && (r as usize) < self.height {
            Some((c as usize, r as usize))
        } else {
            None
        }
    }

    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.width + col
    }

    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        let (w, h) = (self.width, self.height);
        let (c, r) = (i % w, i / w);
        [
            (c > 0).then(|| i - 1),
            (c + 1 < w).then(|| i + 1),
            (r > 0).then(|| i - w),
            (r + 1 < h).then(|| i + w),
        ]
        .into_iter()
        .flatten()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Site(usize),
    Tie,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OwnerMap {
    pub grid: Grid,
    pub sites: usize,
    /// Row-major, row 0 at the top.
    pub owners: Vec<Owner>,
    /// Ties and pixels with a 4-neighbor of another owner.
    pub bisector_mask: Vec<bool>,
}

impl OwnerMap {
    pub fn owner(&self, col: usize, row: usize) -> Owner {
        self.owners[self.grid.index(col, row)]
    }
}

fn nearest(q: Vec2, sites: &[Vec2], e: Exponent) -> Owner {
    let mut best = 0;
    let mut tie = false;
    for (i, &s) in sites.iter().enumerate().skip(1) {
        match compare_distance(q, sites[best], s, e) {
            DistanceOrder::CloserToA => {}
            DistanceOrder::CloserToB => {
                best = i;
                tie = false;
            }
            DistanceOrder::Equidistant => tie = true,
        }
    }
    if tie {
        Owner::Tie
    } else {
        Owner::Site(best)
    }
}

fn check_sites(sites: &[Vec2]) -> Result<()> {
    if sites.is_empty() {
        return Err(Error::NoSites);
    }
    if sites.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonFinite);
    }
    for (i, a) in sites.iter().enumerate() {
        if sites[i + 1..].contains(a) {
            return Err(Error::IdenticalSites);
        }
    }
    Ok(())
}

fn mask_of(grid: &Grid, owners: &[Owner]) -> Vec<bool> {
    (0..owners.len())
        .map(|i| owners[i] == Owner::Tie || grid.neighbors(i).any(|j| owners[j] != owners[i]))
        .collect()
}

fn render(sites: &[Vec2], e: Exponent, grid: &Grid, parallel: bool) -> Result<OwnerMap> {
    check_sites(sites)?;
    let mut owners = vec![Owner::Tie; grid.len()];
    let fill = |row: usize, chunk: &mut [Owner]| {
        for (col, o) in chunk.iter_mut().enumerate() {
            *o = nearest(grid.center(col, row), sites, e);
        }
    };
    if parallel {
        par_rows(&mut owners, grid.width, fill);
    } else {
        seq_rows(&mut owners, grid.width, fill);
    }
    let bisector_mask = mask_of(grid, &owners);
    Ok(OwnerMap {
        grid: *grid,
        sites: sites.len(),
        owners,
        bisector_mask,
    })
}

/// Assigns every pixel to its nearest site under `e`; exact ties become
/// [`Owner::Tie`]. Rows are processed in parallel when the `parallel`
/// feature is enabled.
pub fn render_owners(sites: &[Vec2], e: Exponent, grid: &Grid) -> Result<OwnerMap> {
    render(sites, e, grid, true)
}

/// [`render_owners`] on the calling thread.
pub fn render_owners_sequential(sites: &[Vec2], e: Exponent, grid: &Grid) -> Result<OwnerMap> {
    render(sites, e, grid, false)
}

/// Number of 4-connected components of the pixels owned by `site`, leaving
/// out masked pixels.
pub fn count_faces(map: &OwnerMap, site: usize) -> Result<usize> {
    if site >= map.sites {
        return Err(Error::SiteIndex {
            index: site,
            count: map.sites,
        });
    }
    let member = |i: usize| map.owners[i] == Owner::Site(site) && !map.bisector_mask[i];
    let mut seen = vec![false; map.owners.len()];
    let mut stack = Vec::new();
    let mut faces = 0;
    for start in 0..map.owners.len() {
        if seen[start] || !member(start) {
            continue;
        }
        faces += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for j in map.grid.neighbors(i) {
                if !seen[j] && member(j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(faces)
}

/// Sign of `dist(q, 0) - r` without forming the distance where a power sum
/// comparison is exact.
fn circle_sign(d: Vec2, r: f64, e: Exponent) -> i8 {
    let (ax, ay) = (d.x.abs(), d.y.abs());
    let diff = match e {
        Exponent::Finite(p) => {
            let p = p.get();
            if p > 0.0 {
                ax.powf(p) + ay.powf(p) - r.powf(p)
            } else if ax == 0.0 || ay == 0.0 {
                -1.0
            } else {
                // the sum decreases as the distance grows
                r.powf(p) - (ax.powf(p) + ay.powf(p))
            }
        }
        Exponent::GeometricZero => ax * ay - r,
        Exponent::PosInfinity => ax.max(ay) - r,
        Exponent::NegInfinity => ax.min(ay) - r,
    };
    if diff > 0.0 {
        1
    } else if diff < 0.0 {
        -1
    } else {
        0
    }
}

/// Marks the pixels where `dist(q, center) - r` changes sign against a
/// 4-neighbor. An exact zero counts as its own sign.
pub fn render_circle(center: Vec2, r: f64, e: Exponent, grid: &Grid) -> Result<Vec<bool>> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    if !center.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut signs = vec![0i8; grid.len()];
    par_rows(&mut signs, grid.width, |row, chunk| {
        for (col, s) in chunk.iter_mut().enumerate() {
            *s = circle_sign(grid.center(col, row) - center, r, e);
        }
    });
    Ok((0..signs.len())
        .map(|i| grid.neighbors(i).any(|j| signs[j] != signs[i]))
        .collect())
}
