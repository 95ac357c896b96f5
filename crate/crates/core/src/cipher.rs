//! Pixel diffusion.
//!
//! Both modes walk the row-major pixels in step with the keystream. With
//! `k1 = mx mod 256` and `k2 = my mod 256`:
//!
//! * literal: `e = k1 ^ p`, `f = k2 ^ p`, `c = e ^ f`
//! * repaired: `c = p ^ k1 ^ k2`
//!
//! The literal rule reduces to `c = k1 ^ k2` whatever the plaintext, so it
//! has no inverse. Encryption consumes the plaintext image and overwrites its
//! buffer in place; no other copy of the plaintext is made.

use crate::error::{Error, Result};
use crate::image::Image;
use crate::key::{CipherKey, CipherMode};
use crate::keystream::{Keystream, MaskPair, MAX_MODULUS};

/// An encrypted image. Same shape as the plaintext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext(Image);

impl Ciphertext {
    pub fn from_image(img: Image) -> Self {
        Ciphertext(img)
    }

    pub fn as_image(&self) -> &Image {
        &self.0
    }

    pub fn into_image(self) -> Image {
        self.0
    }
}

impl AsRef<Image> for Ciphertext {
    fn as_ref(&self) -> &Image {
        &self.0
    }
}

/// Mask modulus for an image: its pixel count, but never below 2.
pub fn modulus_for(img: &Image) -> Result<u32> {
    let pixels = img.width() as u64 * img.height() as u64;
    if pixels > MAX_MODULUS as u64 {
        return Err(Error::ImageTooLarge { pixels });
    }
    Ok(pixels.max(2) as u32)
}

fn apply(mut img: Image, key: &CipherKey, f: impl Fn(u8, MaskPair) -> u8) -> Result<Image> {
    let modulus = modulus_for(&img)?;
    let needed = img.len();
    let mut stream = Keystream::new(key, modulus)?.take(needed);
    for (i, p) in img.pixels_mut().iter_mut().enumerate() {
        let mask = stream.next().ok_or(Error::KeystreamExhausted {
            produced: i,
            needed,
        })?;
        *p = f(*p, mask);
    }
    Ok(img)
}

/// The literal two-mask rule. The result does not depend on `img`'s pixels.
pub fn encrypt_literal(img: Image, key: &CipherKey) -> Result<Ciphertext> {
    apply(img, key, |p, m| {
        let e = (m.mx as u8) ^ p;
        let f = (m.my as u8) ^ p;
        e ^ f
    })
    .map(Ciphertext)
}

/// XOR stream cipher with the combined lattice keystream.
pub fn encrypt_repaired(img: Image, key: &CipherKey) -> Result<Ciphertext> {
    apply(img, key, |p, m| p ^ m.combined_byte()).map(Ciphertext)
}

/// Inverse of [`encrypt_repaired`].
pub fn decrypt_repaired(ct: Ciphertext, key: &CipherKey) -> Result<Image> {
    apply(ct.0, key, |c, m| c ^ m.combined_byte())
}

/// Encrypts with the rule selected by `key.cipher_mode`.
pub fn encrypt(img: Image, key: &CipherKey) -> Result<Ciphertext> {
    match key.cipher_mode {
        CipherMode::PaperLiteral => encrypt_literal(img, key),
        CipherMode::Repaired => encrypt_repaired(img, key),
    }
}

/// Decrypts with the rule selected by `key.cipher_mode`; the literal rule
/// always fails with [`Error::LiteralNotInvertible`].
pub fn decrypt(ct: Ciphertext, key: &CipherKey) -> Result<Image> {
    match key.cipher_mode {
        CipherMode::PaperLiteral => Err(Error::LiteralNotInvertible),
        CipherMode::Repaired => decrypt_repaired(ct, key),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key::EpsMode;
    use crate::keystream::keystream;
    use crate::maps::{LogisticParams, MapParams};
    use proptest::prelude::*;

    fn reference() -> CipherKey {
        CipherKey {
            x0: 0.2,
            y0: 0.7,
            p1: MapParams::new(1.2, 2).unwrap(),
            p2: MapParams::new(1.4, 3).unwrap(),
            lp: LogisticParams::new(3.99997, 0.31).unwrap(),
            n_logistic: 100,
            n_burn: 200,
            eps_mode: EpsMode::Fixed,
            cipher_mode: CipherMode::Repaired,
        }
    }

    fn combined(key: &CipherKey, w: u32, h: u32) -> Vec<u8> {
        let modulus = (w * h).max(2);
        keystream(key, (w * h) as usize, modulus)
            .unwrap()
            .iter()
            .map(MaskPair::combined_byte)
            .collect()
    }

    #[test]
    fn literal_output_is_the_combined_keystream() {
        let key = reference();
        let ks = combined(&key, 9, 4);
        let a = Image::from_fn(9, 4, |c, r| (c * 17 + r) as u8).unwrap();
        let b = Image::filled(9, 4, 200).unwrap();
        let ca = encrypt_literal(a, &key).unwrap();
        let cb = encrypt_literal(b, &key).unwrap();
        assert_eq!(ca.as_image().flatten(), &ks[..]);
        assert_eq!(ca, cb);
    }

    #[test]
    fn repaired_zero_image_and_self_cancellation() {
        let key = reference();
        let ks = combined(&key, 5, 6);
        let zero = encrypt_repaired(Image::filled(5, 6, 0).unwrap(), &key).unwrap();
        assert_eq!(zero.as_image().flatten(), &ks[..]);
        let same = Image::new(5, 6, ks.clone()).unwrap();
        let ct = encrypt_repaired(same, &key).unwrap();
        assert!(ct.as_image().flatten().iter().all(|&c| c == 0));
        let back = decrypt_repaired(Ciphertext(Image::filled(5, 6, 0).unwrap()), &key).unwrap();
        assert_eq!(back.flatten(), &ks[..]);
    }

    #[test]
    fn encryption_reuses_the_plaintext_buffer() {
        let key = reference();
        let img = Image::from_fn(16, 16, |c, r| (c ^ r) as u8).unwrap();
        let plain = img.clone();
        let ptr = img.flatten().as_ptr();
        let ct = encrypt_repaired(img, &key).unwrap();
        assert_eq!(ct.as_image().flatten().as_ptr(), ptr);
        assert_ne!(ct.as_image(), &plain);
    }

    #[test]
    fn literal_decrypt_refused() {
        let key = CipherKey {
            cipher_mode: CipherMode::PaperLiteral,
            ..reference()
        };
        let ct = encrypt(Image::filled(3, 3, 1).unwrap(), &key).unwrap();
        assert_eq!(decrypt(ct, &key), Err(Error::LiteralNotInvertible));
    }

    #[test]
    fn single_pixel_uses_modulus_two() {
        let img = Image::new(1, 1, vec![7]).unwrap();
        assert_eq!(modulus_for(&img).unwrap(), 2);
        let key = reference();
        let ct = encrypt_repaired(img.clone(), &key).unwrap();
        assert_eq!(decrypt_repaired(ct, &key).unwrap(), img);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn repaired_round_trip(w in 1u32..24, h in 1u32..24, seed in any::<u64>()) {
            let key = reference();
            let img = Image::from_fn(w, h, |c, r| {
                (seed.rotate_left(c + 3 * r) ^ (c as u64 * 131 + r as u64)) as u8
            }).unwrap();
            let ct = encrypt_repaired(img.clone(), &key).unwrap();
            prop_assert_eq!(decrypt_repaired(ct, &key).unwrap(), img);
        }

        #[test]
        fn literal_ignores_plaintext(a in prop::collection::vec(any::<u8>(), 12),
                                     b in prop::collection::vec(any::<u8>(), 12)) {
            let key = reference();
            let ca = encrypt_literal(Image::new(4, 3, a).unwrap(), &key).unwrap();
            let cb = encrypt_literal(Image::new(4, 3, b).unwrap(), &key).unwrap();
            prop_assert_eq!(ca, cb);
        }
    }
}
