use super::stats::{
    adjacent_correlation, adjacent_pairs, chi_square_uniform, histogram, mean_intensity, Direction,
    CHI_SQUARE_CRITICAL_1PCT,
};
use crate::error::{Error, Result};
use crate::image::Image;
use std::fmt::Write as _;

/// Statistics of a single image, as written by `cmlcrypt analyze`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageReport {
    pub width: u32,
    pub height: u32,
    pub mean_intensity: f64,
    pub histogram: [u64; 256],
    pub chi_square: f64,
    pub n_pairs: usize,
    pub sample_seed: u64,
    /// Correlation per direction; `None` when the sample has zero variance.
    pub correlations: Vec<(Direction, Option<f64>)>,
}

/// Histogram, mean and the three adjacent-pixel correlations of `img`.
///
/// All three directions are sampled with the same seed.
pub fn analyze_image(img: &Image, n_pairs: usize, sample_seed: u64) -> Result<ImageReport> {
    let histogram = histogram(img);
    let mut correlations = Vec::with_capacity(3);
    for d in Direction::ALL {
        let r = match adjacent_correlation(img, d, n_pairs, sample_seed) {
            Ok(rep) => Some(rep.r),
            Err(Error::DegenerateVariance { .. }) | Err(Error::ImageTooSmall { .. }) => None,
            Err(e) => return Err(e),
        };
        correlations.push((d, r));
    }
    Ok(ImageReport {
        width: img.width(),
        height: img.height(),
        mean_intensity: mean_intensity(img),
        chi_square: chi_square_uniform(&histogram),
        histogram,
        n_pairs,
        sample_seed,
        correlations,
    })
}

fn fmt_r(r: Option<f64>) -> String {
    r.map_or_else(|| "undefined".to_string(), |r| format!("{r:.6}"))
}

impl ImageReport {
    pub fn to_key_value(&self) -> String {
        let mut out = format!(
            "width={}\nheight={}\npixels={}\nmean_intensity={:.6}\nchi_square_uniform={:.6}\n\
             chi_square_critical_1pct={:.6}\npairs={}\nsample_seed={}\n",
            self.width,
            self.height,
            self.width as u64 * self.height as u64,
            self.mean_intensity,
            self.chi_square,
            CHI_SQUARE_CRITICAL_1PCT,
            self.n_pairs,
            self.sample_seed,
        );
        for (d, r) in &self.correlations {
            let _ = writeln!(out, "corr_{}={}", d.name(), fmt_r(*r));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "Image {}x{}\n  mean intensity      {:>12.4}\n  chi-square (255 dof){:>12.4}   1% critical {:.2}\n\
             Adjacent-pixel correlation ({} pairs, seed {})\n",
            self.width,
            self.height,
            self.mean_intensity,
            self.chi_square,
            CHI_SQUARE_CRITICAL_1PCT,
            self.n_pairs,
            self.sample_seed
        );
        for (d, r) in &self.correlations {
            let _ = writeln!(out, "  {:<18}{:>12}", d.name(), fmt_r(*r));
        }
        out
    }
}

/// `bin,count` rows for all 256 grey levels.
pub fn histogram_csv(hist: &[u64; 256]) -> String {
    let mut out = String::from("bin,count\n");
    for (bin, count) in hist.iter().enumerate() {
        let _ = writeln!(out, "{bin},{count}");
    }
    out
}

/// `x,y` rows of sampled neighbour pairs, for scatter plots.
pub fn scatter_csv(img: &Image, direction: Direction, n_pairs: usize, seed: u64) -> Result<String> {
    let mut out = String::from("x,y\n");
    for (x, y) in adjacent_pairs(img, direction, n_pairs, seed)? {
        let _ = writeln!(out, "{x},{y}");
    }
    Ok(out)
}
