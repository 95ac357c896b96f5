use crate::error::{Error, Result};
use crate::image::Image;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// 1% critical value of the chi-square distribution with 255 degrees of freedom.
pub const CHI_SQUARE_CRITICAL_1PCT: f64 = 310.457_388_219_905_85;

pub fn histogram(img: &Image) -> [u64; 256] {
    let mut bins = [0u64; 256];
    for &p in img.flatten() {
        bins[p as usize] += 1;
    }
    bins
}

pub fn mean_intensity(img: &Image) -> f64 {
    let sum: u64 = img.flatten().iter().map(|&p| p as u64).sum();
    sum as f64 / img.len() as f64
}

/// Pearson chi-square of `counts` against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64; 256]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / 256.0;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Self::Horizontal, Self::Vertical, Self::Diagonal];

    /// Neighbour offset `(dcol, drow)`.
    pub fn offset(self) -> (u32, u32) {
        match self {
            Self::Horizontal => (1, 0),
            Self::Vertical => (0, 1),
            Self::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Horizontal => "horizontal",
            Self::Vertical => "vertical",
            Self::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub direction: Direction,
    pub n_pairs: usize,
    pub r: f64,
    pub sampling_seed: u64,
}

/// Draws `n_pairs` neighbour pairs uniformly, with replacement.
pub fn adjacent_pairs(
    img: &Image,
    direction: Direction,
    n_pairs: usize,
    seed: u64,
) -> Result<Vec<(u8, u8)>> {
    let (dc, dr) = direction.offset();
    let (w, h) = (img.width(), img.height());
    if w <= dc || h <= dr {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            direction: direction.name(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n_pairs)
        .map(|_| {
            let col = rng.random_range(0..w - dc);
            let row = rng.random_range(0..h - dr);
            (img.get(col, row), img.get(col + dc, row + dr))
        })
        .collect())
}

/// `Cov(x, y) / (sqrt(D(x)) sqrt(D(y)))` with population moments.
pub(crate) fn correlation(pairs: &[(u8, u8)], direction: Direction) -> Result<f64> {
    let n = pairs.len() as f64;
    let ex = pairs.iter().map(|&(x, _)| x as f64).sum::<f64>() / n;
    let ey = pairs.iter().map(|&(_, y)| y as f64).sum::<f64>() / n;
    let (mut cov, mut dx, mut dy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let (u, v) = (x as f64 - ex, y as f64 - ey);
        cov += u * v;
        dx += u * u;
        dy += v * v;
    }
    let (cov, dx, dy) = (cov / n, dx / n, dy / n);
    if pairs.is_empty() || dx == 0.0 || dy == 0.0 {
        return Err(Error::DegenerateVariance {
            direction: direction.name(),
        });
    }
    Ok(cov / (dx.sqrt() * dy.sqrt()))
}

/// Correlation of `n_pairs` randomly chosen neighbour pairs.
pub fn adjacent_correlation(
    img: &Image,
    direction: Direction,
    n_pairs: usize,
    seed: u64,
) -> Result<CorrelationReport> {
    let pairs = adjacent_pairs(img, direction, n_pairs, seed)?;
    Ok(CorrelationReport {
        direction,
        n_pairs,
        r: correlation(&pairs, direction)?,
        sampling_seed: seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn histogram_examples() {
        let zero = Image::filled(2, 2, 0).unwrap();
        let h = histogram(&zero);
        assert_eq!(h[0], 4);
        assert_eq!(h.iter().sum::<u64>(), 4);
        let ramp = Image::from_fn(16, 16, |c, r| (r * 16 + c) as u8).unwrap();
        assert!(histogram(&ramp).iter().all(|&c| c == 1));
        assert_eq!(chi_square_uniform(&histogram(&ramp)), 0.0);
    }

    #[test]
    fn mean_examples() {
        assert_eq!(mean_intensity(&Image::filled(5, 3, 128).unwrap()), 128.0);
        let ramp = Image::from_fn(16, 16, |c, r| (r * 16 + c) as u8).unwrap();
        assert_eq!(mean_intensity(&ramp), 127.5);
    }

    #[test]
    fn constant_rows_are_degenerate() {
        // a single constant row: every sampled value is the same
        let img = Image::filled(20, 1, 42).unwrap();
        assert!(matches!(
            adjacent_correlation(&img, Direction::Horizontal, 200, 1),
            Err(Error::DegenerateVariance { .. })
        ));
        // constant rows with different levels: x == y in every pair, r = 1
        let img = Image::from_fn(20, 20, |_, r| r as u8).unwrap();
        let h = adjacent_correlation(&img, Direction::Horizontal, 200, 1).unwrap();
        assert!((h.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ramp_correlation() {
        // i + j < 256 everywhere: x and x + 1 are perfectly correlated
        let img = Image::from_fn(100, 100, |c, r| (c + r) as u8).unwrap();
        for d in Direction::ALL {
            let rep = adjacent_correlation(&img, d, 2000, 9).unwrap();
            assert!((rep.r - 1.0).abs() < 1e-6, "{d}: {}", rep.r);
        }
        // with wraparound at 255 -> 0 some pairs are far apart
        let img = Image::from_fn(256, 256, |c, r| ((c + r) % 256) as u8).unwrap();
        let pairs = adjacent_pairs(&img, Direction::Horizontal, 2000, 9).unwrap();
        assert!(pairs.iter().any(|&(x, y)| x == 255 && y == 0));
        let rep = adjacent_correlation(&img, Direction::Horizontal, 2000, 9).unwrap();
        assert!(rep.r >= 0.9, "{}", rep.r);
    }

    #[test]
    fn too_small_for_direction() {
        let img = Image::filled(1, 5, 3).unwrap();
        assert!(matches!(
            adjacent_correlation(&img, Direction::Horizontal, 10, 0),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        let img = Image::from_fn(30, 30, |c, r| (c * 7 + r * 13) as u8).unwrap();
        let a = adjacent_pairs(&img, Direction::Diagonal, 50, 4).unwrap();
        assert_eq!(a, adjacent_pairs(&img, Direction::Diagonal, 50, 4).unwrap());
        assert_ne!(a, adjacent_pairs(&img, Direction::Diagonal, 50, 5).unwrap());
    }

    proptest! {
        #[test]
        fn swapping_roles_keeps_r(pairs in prop::collection::vec(any::<(u8, u8)>(), 3..300)) {
            let swapped: Vec<_> = pairs.iter().map(|&(x, y)| (y, x)).collect();
            match (correlation(&pairs, Direction::Horizontal), correlation(&swapped, Direction::Horizontal)) {
                (Ok(a), Ok(b)) => {
                    prop_assert!((a - b).abs() <= 1e-12);
                    prop_assert!(a.abs() <= 1.0 + 1e-12);
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "only one orientation degenerate"),
            }
        }

        #[test]
        fn histogram_matches_mean(pixels in prop::collection::vec(any::<u8>(), 1..500)) {
            let n = pixels.len() as u32;
            let img = Image::new(n, 1, pixels).unwrap();
            let h = histogram(&img);
            prop_assert_eq!(h.iter().sum::<u64>(), n as u64);
            let from_bins = h.iter().enumerate().map(|(b, &c)| b as u64 * c).sum::<u64>() as f64 / n as f64;
            prop_assert_eq!(from_bins, mean_intensity(&img));
        }
    }
}
