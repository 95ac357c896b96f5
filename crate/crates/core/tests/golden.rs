//! Frozen outputs of the reference build. Regenerate with `CMLCRYPT_BLESS=1`.

mod common;

use cmlcrypt::analysis::analyze_image;
use cmlcrypt::cipher::{encrypt_literal, encrypt_repaired, Ciphertext};
use cmlcrypt::keystream::{format_vectors, keystream, parse_vectors};
use cmlcrypt::{keyfile, pgm, Image};
use common::*;

#[test]
fn reference_key_file_is_canonical() {
    let text = std::fs::read_to_string(data("reference.key")).unwrap();
    assert_eq!(keyfile::serialize(&reference_key()), text);
}

#[test]
fn keystream_ten_pairs() {
    let masks = keystream(&reference_key(), 10, 65536).unwrap();
    assert!(check_golden(
        "keystream_10.txt",
        format_vectors(65536, &masks).as_bytes()
    ));
}

#[test]
fn literal_zero_image_matches_frozen_keystream() {
    let masks = keystream(&reference_key(), 16, 16).unwrap();
    assert!(check_golden(
        "keystream_4x4.txt",
        format_vectors(16, &masks).as_bytes()
    ));

    let text = std::fs::read_to_string(golden_path("keystream_4x4.txt")).unwrap();
    let (modulus, frozen) = parse_vectors(&text).unwrap();
    assert_eq!(modulus, 16);
    let ct = encrypt_literal(Image::filled(4, 4, 0).unwrap(), &reference_key()).unwrap();
    let expected: Vec<u8> = frozen
        .iter()
        .map(|m| (m.mx % 256) as u8 ^ (m.my % 256) as u8)
        .collect();
    assert_eq!(ct.as_image().flatten(), &expected[..]);
}

#[test]
fn ramp_ciphertext() {
    let ct = encrypt_repaired(ramp8(), &reference_key()).unwrap();
    assert!(check_golden(
        "ramp8_cipher.pgm",
        &pgm::encode_pgm(ct.as_image())
    ));

    let frozen = pgm::read_pgm(golden_path("ramp8_cipher.pgm")).unwrap();
    let back = cmlcrypt::cipher::decrypt_repaired(Ciphertext::from_image(frozen), &reference_key());
    assert_eq!(back.unwrap(), ramp8());
}

#[test]
fn natural_image_report() {
    let rep = analyze_image(&natural_image(), 2000, 0).unwrap();
    assert!(check_golden(
        "astronaut256_report.txt",
        rep.to_key_value().as_bytes()
    ));
}
