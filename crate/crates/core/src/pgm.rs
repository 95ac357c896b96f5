//! Binary PGM (`P5`) with `maxval` 255.
//!
//! Header tokens are separated by whitespace; a `#` starts a comment running
//! to the end of the line. Exactly one whitespace byte separates `maxval`
//! from the raster, which must hold exactly `width * height` bytes.

use crate::image::Image;
use crate::io::write_atomic;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: String },
    #[error("unsupported maxval {maxval} at byte {offset}; only 255 is accepted")]
    UnsupportedMaxval { offset: usize, maxval: u32 },
    #[error(
        "truncated payload starting at byte {offset}: expected {expected} bytes, found {actual}"
    )]
    Truncated {
        offset: usize,
        expected: usize,
        actual: usize,
    },
    #[error("{extra} unexpected bytes after the raster at byte {offset}")]
    TrailingData { offset: usize, extra: usize },
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn malformed(&self, reason: impl Into<String>) -> PgmError {
        PgmError::MalformedHeader {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads a decimal header token and its offset.
    fn number(&mut self, what: &str) -> Result<(u32, usize), PgmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.malformed(format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.data[start..self.pos]).expect("ascii digits");
        text.parse()
            .map(|v| (v, start))
            .map_err(|_| PgmError::MalformedHeader {
                offset: start,
                reason: format!("{what} `{text}` out of range"),
            })
    }
}

/// Parses a P5 file held in memory.
pub fn parse_pgm(data: &[u8]) -> Result<Image, PgmError> {
    let mut cur = Cursor { data, pos: 0 };
    if !data.starts_with(b"P5") {
        return Err(cur.malformed("missing P5 magic"));
    }
    cur.pos = 2;
    if !data
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(cur.malformed("expected whitespace after magic"));
    }
    let (width, _) = cur.number("width")?;
    let (height, _) = cur.number("height")?;
    let (maxval, maxval_at) = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.malformed(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval {
            offset: maxval_at,
            maxval,
        });
    }
    match data.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(cur.malformed("expected one whitespace byte before the raster")),
    }
    let expected = width as usize * height as usize;
    let actual = data.len() - cur.pos;
    if actual < expected {
        return Err(PgmError::Truncated {
            offset: cur.pos,
            expected,
            actual,
        });
    }
    if actual > expected {
        return Err(PgmError::TrailingData {
            offset: cur.pos + expected,
            extra: actual - expected,
        });
    }
    let pixels = data[cur.pos..].to_vec();
    Ok(Image::new(width, height, pixels).expect("shape checked above"))
}

/// Canonical serialization: `P5\n<w> <h>\n255\n` followed by the raster.
pub fn encode_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.flatten());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<Image, PgmError> {
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|source| PgmError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_pgm(&data)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_pgm(img: &Image, path: impl AsRef<Path>) -> Result<(), PgmError> {
    let path = path.as_ref();
    write_atomic(path, &encode_pgm(img)).map_err(|source| PgmError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_file() {
        let img = parse_pgm(b"P5 1 1 255 \x07").unwrap();
        assert_eq!(
            (img.width(), img.height(), img.flatten()),
            (1, 1, &[7u8][..])
        );
    }

    #[test]
    fn comments_between_tokens() {
        let a = parse_pgm(b"P5\n# made by hand\n2 # width done\n1\n255\n\x01\x02").unwrap();
        let b = parse_pgm(b"P5\n2 1\n255\n\x01\x02").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn raster_may_start_with_whitespace_bytes() {
        let img = parse_pgm(b"P5\n2 1\n255\n\n#").unwrap();
        assert_eq!(img.flatten(), b"\n#");
    }

    #[test]
    fn truncated_payload() {
        match parse_pgm(b"P5\n2 2\n255\n\x00\x01\x02") {
            Err(PgmError::Truncated {
                offset,
                expected,
                actual,
            }) => {
                assert_eq!((offset, expected, actual), (11, 4, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse_pgm(b"P2\n1 1\n255\n0"),
            Err(PgmError::MalformedHeader { offset: 0, .. })
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n65535\n\x00\x00"),
            Err(PgmError::UnsupportedMaxval {
                offset: 7,
                maxval: 65535
            })
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 x\n255\n\x00"),
            Err(PgmError::MalformedHeader { offset: 5, .. })
        ));
        assert!(matches!(
            parse_pgm(b"P5\n0 1\n255\n"),
            Err(PgmError::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n255\n\x00\x00"),
            Err(PgmError::TrailingData {
                offset: 12,
                extra: 1
            })
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n255"),
            Err(PgmError::MalformedHeader { .. })
        ));
    }

    #[test]
    fn canonical_header() {
        let img = Image::from_fn(2, 3, |c, r| (10 * r + c) as u8).unwrap();
        assert_eq!(
            encode_pgm(&img),
            b"P5\n2 3\n255\n\x00\x01\x0a\x0b\x14\x15".to_vec()
        );
    }

    #[test]
    fn file_round_trip_large() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("big.pgm");
        let img = Image::from_fn(1024, 1024, |c, r| (c.wrapping_mul(31) ^ r) as u8).unwrap();
        write_pgm(&img, &path).unwrap();
        assert_eq!(read_pgm(&path).unwrap(), img);
        assert!(matches!(
            read_pgm(dir.path().join("missing.pgm")),
            Err(PgmError::Io { .. })
        ));
    }

    proptest! {
        #[test]
        fn encode_parse_round_trip(w in 1u32..40, h in 1u32..40, fill in any::<u8>()) {
            let img = Image::from_fn(w, h, |c, r| fill.wrapping_add((c * 7 + r * 3) as u8)).unwrap();
            prop_assert_eq!(parse_pgm(&encode_pgm(&img)).unwrap(), img);
        }
    }
}
