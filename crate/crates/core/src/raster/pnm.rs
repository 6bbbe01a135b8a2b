//! Binary netpbm output and face-count CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{Grid, Owner, OwnerMap};
use crate::error::{Error, Result};

/// Site colors for owner-map images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub colors: Vec<[u8; 3]>,
}

fn channel(v: f64) -> u8 {
    (v * 255.0).round() as u8
}

impl Palette {
    /// Site `i` of `n` gets hue `i/n` at full saturation and value.
    pub fn hue(n: usize) -> Self {
        let colors = (0..n)
            .map(|i| {
                let h = 6.0 * i as f64 / n as f64;
                let sector = h.floor() as u32;
                let f = h - h.floor();
                let (r, g, b) = match sector % 6 {
                    0 => (1.0, f, 0.0),
                    1 => (1.0 - f, 1.0, 0.0),
                    2 => (0.0, 1.0, f),
                    3 => (0.0, 1.0 - f, 1.0),
                    4 => (f, 0.0, 1.0),
                    _ => (1.0, 0.0, 1.0 - f),
                };
                [channel(r), channel(g), channel(b)]
            })
            .collect();
        Palette { colors }
    }
}

/// P5 image of a mask: marked pixels 255, others 0.
pub fn write_pgm<W: Write>(mut w: W, grid: &Grid, mask: &[bool]) -> Result<()> {
    if mask.len() != grid.len() {
        return Err(Error::InvalidGrid(format!(
            "mask has {} pixels, grid {}",
            mask.len(),
            grid.len()
        )));
    }
    write!(w, "P5\n{} {}\n255\n", grid.width(), grid.height())?;
    let bytes: Vec<u8> = mask.iter().map(|&m| if m { 255 } else { 0 }).collect();
    w.write_all(&bytes)?;
    Ok(())
}

/// P6 image of an owner map; ties and masked pixels are black.
pub fn write_ppm<W: Write>(mut w: W, map: &OwnerMap, palette: &Palette) -> Result<()> {
    if palette.colors.len() < map.sites {
        return Err(Error::SiteIndex {
            index: map.sites - 1,
            count: palette.colors.len(),
        });
    }
    write!(w, "P6\n{} {}\n255\n", map.grid.width(), map.grid.height())?;
    let mut bytes = Vec::with_capacity(3 * map.owners.len());
    for (o, &m) in map.owners.iter().zip(&map.bisector_mask) {
        match o {
            Owner::Site(i) if !m => bytes.extend_from_slice(&palette.colors[*i]),
            _ => bytes.extend_from_slice(&[0, 0, 0]),
        }
    }
    w.write_all(&bytes)?;
    Ok(())
}

pub fn save_pgm(path: &Path, grid: &Grid, mask: &[bool]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_pgm(&mut w, grid, mask)?;
    w.flush()?;
    Ok(())
}

pub fn save_ppm(path: &Path, map: &OwnerMap, palette: &Palette) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_ppm(&mut w, map, palette)?;
    w.flush()?;
    Ok(())
}

/// `site,faces` rows for every site of the map.
pub fn write_faces_csv<W: Write>(mut w: W, map: &OwnerMap) -> Result<()> {
    writeln!(w, "site,faces")?;
    for site in 0..map.sites {
        writeln!(w, "{},{}", site, super::count_faces(map, site)?)?;
    }
    Ok(())
}
