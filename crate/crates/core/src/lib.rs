//! Image encryption with a two-site coupled map lattice.
//!
//! The pipeline has three layers:
//!
//! 1. [`maps`]: chaotic trigonometric maps `f1`, `f2`, their rational
//!    conjugates, Chebyshev kernels and the logistic map.
//! 2. [`keystream`]: the coupled lattice driven by those maps, quantized into
//!    integer masks.
//! 3. [`cipher`]: XOR diffusion of row-major pixels with the masks, in a
//!    literal two-mask form (which cancels the plaintext) and in a repaired,
//!    invertible form.
//!
//! [`analysis`] measures the result (histogram, adjacent-pixel correlation,
//! NPCR/UACI, key-space size); [`pgm`] and [`keyfile`] handle files.
//!
//! ```
//! use cmlcrypt::{cipher, CipherKey, Image};
//! use rand::SeedableRng;
//!
//! let key = CipherKey::generate(&mut rand_chacha::ChaCha8Rng::seed_from_u64(7));
//! let img = Image::from_fn(32, 32, |c, r| (c * 8 + r) as u8).unwrap();
//! let ct = cipher::encrypt_repaired(img.clone(), &key).unwrap();
//! assert_eq!(cipher::decrypt_repaired(ct, &key).unwrap(), img);
//! ```

pub mod analysis;
pub mod cipher;
mod error;
pub mod image;
mod io;
pub mod key;
pub mod keyfile;
pub mod keystream;
pub mod maps;
pub mod pgm;

pub use cipher::Ciphertext;
pub use error::{Error, Result};
pub use image::Image;
pub use io::write_atomic;
pub use key::{CipherKey, CipherMode, EpsMode};
pub use maps::{LogisticParams, MapParams};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/cipher.md")]
    mod cipher {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
