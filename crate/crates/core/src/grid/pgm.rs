//! Netpbm gray maps: P5 (binary) and P2 (plain) decoding, P5 encoding.

use std::io::Write;
use std::path::Path;

use super::{ImageGrid, MIN_SIDE};
use crate::error::{Error, PgmError, Result};

const MAX_MAXVAL: u64 = 255;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    Plain,
    Binary,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments.
    fn skip_blank(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal token. Returns the value and its start offset.
    fn number(&mut self, field: &'static str) -> Result<(u64, usize), PgmError> {
        self.skip_blank();
        let start = self.pos;
        if start >= self.bytes.len() {
            return Err(PgmError::MissingField { field, offset: start });
        }
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(PgmError::InvalidNumber { field, offset: start })?;
            self.pos += 1;
        }
        let terminated = self
            .bytes
            .get(self.pos)
            .map_or(true, |b| b.is_ascii_whitespace() || *b == b'#');
        if self.pos == start || !terminated {
            return Err(PgmError::InvalidNumber { field, offset: start });
        }
        Ok((value, start))
    }
}

/// Decodes a P5 or P2 gray map with maxval at most 255.
///
/// Samples become `f64` gray levels in `[0, maxval]`; no rescaling is done.
pub fn decode_pgm(bytes: &[u8]) -> Result<ImageGrid, PgmError> {
    let flavor = match bytes.get(..2) {
        Some(b"P5") => Flavor::Binary,
        Some(b"P2") => Flavor::Plain,
        _ => return Err(PgmError::BadMagic { offset: 0 }),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(PgmError::BadMagic { offset: 0 });
    }

    let (width, offset) = cur.number("width")?;
    if width < MIN_SIDE as u64 {
        return Err(PgmError::WidthTooSmall { width, offset });
    }
    let (height, offset) = cur.number("height")?;
    if height < MIN_SIDE as u64 {
        return Err(PgmError::HeightTooSmall { height, offset });
    }
    let (maxval, offset) = cur.number("maxval")?;
    if maxval == 0 {
        return Err(PgmError::ZeroMaxval { offset });
    }
    if maxval > MAX_MAXVAL {
        return Err(PgmError::MaxvalTooLarge { maxval, offset });
    }

    // Any count that does not fit in usize is necessarily truncated.
    let expected = usize::try_from(width)
        .ok()
        .zip(usize::try_from(height).ok())
        .and_then(|(w, h)| w.checked_mul(h))
        .unwrap_or(usize::MAX);

    let data = match flavor {
        Flavor::Binary => {
            // Exactly one whitespace byte separates the header from the raster.
            if cur.pos >= bytes.len() {
                return Err(PgmError::Truncated {
                    offset: cur.pos,
                    expected,
                    found: 0,
                });
            }
            let start = cur.pos + 1;
            let available = bytes.len() - start;
            if available < expected {
                return Err(PgmError::Truncated {
                    offset: bytes.len(),
                    expected,
                    found: available,
                });
            }
            let raster = &bytes[start..start + expected];
            if let Some(k) = raster.iter().position(|&b| u64::from(b) > maxval) {
                return Err(PgmError::SampleOutOfRange {
                    value: u64::from(raster[k]),
                    maxval,
                    offset: start + k,
                });
            }
            raster.iter().map(|&b| f64::from(b)).collect()
        }
        Flavor::Plain => {
            let mut data = Vec::with_capacity(expected.min(bytes.len()));
            while data.len() < expected {
                cur.skip_blank();
                if cur.pos >= bytes.len() {
                    return Err(PgmError::Truncated {
                        offset: cur.pos,
                        expected,
                        found: data.len(),
                    });
                }
                let (value, offset) = cur.number("sample")?;
                if value > maxval {
                    return Err(PgmError::SampleOutOfRange { value, maxval, offset });
                }
                data.push(value as f64);
            }
            data
        }
    };

    // Dimensions are bounded by the payload length, so these casts are lossless.
    Ok(ImageGrid::from_raw(width as usize, height as usize, data))
}

/// Quantizes a grid to 8 bits: clamp to `[0, 255]`, then round half away from zero.
pub fn quantize(value: f64) -> u8 {
    value.clamp(0.0, 255.0).round() as u8
}

/// Encodes a grid as P5 with maxval 255 and the header `P5\n<w> <h>\n255\n`.
pub fn encode_pgm(grid: &ImageGrid) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", grid.width(), grid.height());
    let mut out = Vec::with_capacity(header.len() + grid.len());
    out.extend_from_slice(header.as_bytes());
    out.extend(grid.as_slice().iter().map(|&v| quantize(v)));
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<ImageGrid> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    decode_pgm(&bytes).map_err(|source| Error::Pgm {
        path: path.to_owned(),
        source,
    })
}

pub fn write_pgm(grid: &ImageGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io)?;
    file.write_all(&encode_pgm(grid)).map_err(io)?;
    file.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5(width: usize, height: usize, raster: &[u8]) -> Vec<u8> {
        let mut v = format!("P5\n{width} {height}\n255\n").into_bytes();
        v.extend_from_slice(raster);
        v
    }

    #[test]
    fn plain_constant_image() {
        let g = decode_pgm(b"P2\n3 3\n255\n7 7 7\n7 7 7\n7 7 7\n").unwrap();
        assert_eq!(g.dims(), (3, 3));
        assert!(g.as_slice().iter().all(|&v| v == 7.0));
    }

    #[test]
    fn plain_with_comments_and_small_maxval() {
        let g = decode_pgm(b"P2 # made by hand\n# another\n4 3 15\n0 1 2 3 4 5 6 7 8 9 10 15").unwrap();
        assert_eq!(g.get(3, 2), 15.0);
        assert_eq!(g.get(1, 1), 5.0);
    }

    #[test]
    fn binary_decodes_row_major() {
        let raster: Vec<u8> = (0..12).collect();
        let g = decode_pgm(&p5(4, 3, &raster)).unwrap();
        assert_eq!(g.get(0, 1), 4.0);
        assert_eq!(g.get(3, 2), 11.0);
    }

    #[test]
    fn narrow_binary_is_rejected() {
        let err = decode_pgm(&p5(2, 5, &[0; 10])).unwrap_err();
        assert_eq!(err, PgmError::WidthTooSmall { width: 2, offset: 3 });
        assert!(err.to_string().contains("width < 3"));
        assert!(matches!(
            decode_pgm(&p5(5, 1, &[0; 5])),
            Err(PgmError::HeightTooSmall { height: 1, offset: 5 })
        ));
    }

    #[test]
    fn distinct_errors_with_offsets() {
        assert_eq!(decode_pgm(b"P6\n3 3\n255\n"), Err(PgmError::BadMagic { offset: 0 }));
        assert_eq!(decode_pgm(b"P5"), Err(PgmError::BadMagic { offset: 0 }));
        assert_eq!(
            decode_pgm(b"P5\n3 3\n"),
            Err(PgmError::MissingField { field: "maxval", offset: 7 })
        );
        assert_eq!(
            decode_pgm(b"P5\n3x 3\n255\n"),
            Err(PgmError::InvalidNumber { field: "width", offset: 3 })
        );
        assert_eq!(
            decode_pgm(b"P5\n3 3\n65535\n"),
            Err(PgmError::MaxvalTooLarge { maxval: 65535, offset: 7 })
        );
        assert_eq!(decode_pgm(b"P5\n3 3\n0\n"), Err(PgmError::ZeroMaxval { offset: 7 }));
        assert_eq!(
            decode_pgm(&p5(3, 3, &[1; 5])),
            Err(PgmError::Truncated { offset: 16, expected: 9, found: 5 })
        );
        assert_eq!(
            decode_pgm(b"P2\n3 3\n255\n1 2 3"),
            Err(PgmError::Truncated { offset: 16, expected: 9, found: 3 })
        );
        assert_eq!(
            decode_pgm(b"P2\n3 3\n10\n1 2 3 4 5 6 7 8 11"),
            Err(PgmError::SampleOutOfRange { value: 11, maxval: 10, offset: 26 })
        );
        assert!(matches!(
            decode_pgm(b"P5\n3 3\n9\n\x00\x01\x02\x03\x0a\x00\x00\x00\x00"),
            Err(PgmError::SampleOutOfRange { value: 10, offset: 13, .. })
        ));
    }

    #[test]
    fn huge_dimensions_do_not_allocate() {
        let err = decode_pgm(b"P5\n99999999999 99999999999\n255\n\x00").unwrap_err();
        assert!(matches!(err, PgmError::Truncated { .. }));
        let err = decode_pgm(b"P2\n4000000000 4000000000\n255\n1").unwrap_err();
        assert!(matches!(err, PgmError::Truncated { found: 1, .. }));
        let err = decode_pgm(b"P5\n999999999999999999999999 3\n255\n").unwrap_err();
        assert!(matches!(err, PgmError::InvalidNumber { field: "width", .. }));
    }

    #[test]
    fn encoder_rounds_and_clamps() {
        let g = ImageGrid::filled(3, 3, 7.4).unwrap();
        let bytes = encode_pgm(&g);
        assert_eq!(&bytes[..11], b"P5\n3 3\n255\n");
        assert!(bytes[11..].iter().all(|&b| b == 7));

        let g = ImageGrid::new(3, 3, vec![300.0, -2.0, 2.5, -0.5, 254.5, 0.49, 1.5, 255.0, 0.0]).unwrap();
        assert_eq!(&encode_pgm(&g)[11..], &[255, 0, 3, 0, 255, 0, 2, 255, 0]);
    }

    #[test]
    fn canonical_binary_round_trips_bytewise() {
        let raster: Vec<u8> = (0..=255u8).cycle().take(17 * 5).collect();
        let bytes = p5(17, 5, &raster);
        assert_eq!(encode_pgm(&decode_pgm(&bytes).unwrap()), bytes);
    }
}
