#![allow(dead_code)]

use cmlcrypt::{keyfile, CipherKey, Image};
use std::path::PathBuf;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn reference_key() -> CipherKey {
    keyfile::read_key(data("reference.key")).expect("reference key")
}

pub fn natural_image() -> Image {
    cmlcrypt::pgm::read_pgm(data("astronaut256.pgm")).expect("bundled image")
}

pub fn ramp8() -> Image {
    Image::from_fn(8, 8, |c, r| (r * 8 + c) as u8).unwrap()
}

/// Compares `actual` with the committed golden file. With `CMLCRYPT_BLESS=1`
/// the file is (re)written instead.
pub fn check_golden(name: &str, actual: &[u8]) -> bool {
    let path = golden_path(name);
    if std::env::var_os("CMLCRYPT_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return true;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| {
        panic!(
            "{}: {e} (run with CMLCRYPT_BLESS=1 to create)",
            path.display()
        )
    });
    expected == actual
}

/// Small deterministic generator for test images, independent of `rand`.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn image(&mut self, w: u32, h: u32) -> Image {
        let pixels = (0..w * h).map(|_| self.next_u64() as u8).collect();
        Image::new(w, h, pixels).unwrap()
    }
}
