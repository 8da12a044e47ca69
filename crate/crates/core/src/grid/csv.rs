//! Plain CSV matrices: one line per row, comma-separated, row 0 first.
//!
//! Values are written with the shortest decimal form that parses back to the
//! same `f64`, so a write/parse cycle is exact.

use std::fmt::Write as _;
use std::path::Path;

use super::{ImageGrid, MIN_SIDE};
use crate::error::{CsvError, Error, Result};

pub fn encode_csv_matrix(grid: &ImageGrid) -> String {
    let mut out = String::with_capacity(grid.len() * 8);
    for y in 0..grid.height() {
        for (x, v) in grid.row(y).iter().enumerate() {
            if x > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

/// Parses a CSV matrix. Blank trailing lines and `\r\n` endings are accepted.
pub fn decode_csv_matrix(text: &str) -> Result<ImageGrid, CsvError> {
    let mut data = Vec::new();
    let mut width = None;
    let mut height = 0;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut count = 0;
        for (col, token) in line.split(',').enumerate() {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| CsvError::InvalidNumber {
                line: idx + 1,
                column: col + 1,
                token: token.to_owned(),
            })?;
            if !value.is_finite() {
                return Err(CsvError::NonFinite {
                    line: idx + 1,
                    column: col + 1,
                });
            }
            data.push(value);
            count += 1;
        }
        match width {
            None => width = Some(count),
            Some(w) if w != count => {
                return Err(CsvError::RaggedRow {
                    line: idx + 1,
                    expected: w,
                    found: count,
                })
            }
            Some(_) => {}
        }
        height += 1;
    }
    let width = width.unwrap_or(0);
    if width < MIN_SIDE || height < MIN_SIDE {
        return Err(CsvError::TooSmall { width, height });
    }
    Ok(ImageGrid::from_raw(width, height, data))
}

pub fn write_csv_matrix(grid: &ImageGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_csv_matrix(grid)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_csv_matrix(path: impl AsRef<Path>) -> Result<ImageGrid> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    decode_csv_matrix(&text).map_err(|source| Error::Csv {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_ones() {
        let g = ImageGrid::filled(3, 3, 1.0).unwrap();
        assert_eq!(encode_csv_matrix(&g), "1,1,1\n1,1,1\n1,1,1\n");
    }

    #[test]
    fn half_survives() {
        let mut data = vec![2.0; 9];
        data[0] = 0.5;
        let text = encode_csv_matrix(&ImageGrid::new(3, 3, data).unwrap());
        let first: f64 = text.lines().next().unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(first, 0.5);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            decode_csv_matrix("1,2,3\n1,x,3\n1,2,3\n"),
            Err(CsvError::InvalidNumber { line: 2, column: 2, token: "x".into() })
        );
        assert_eq!(
            decode_csv_matrix("1,2,3\n1,2\n1,2,3\n"),
            Err(CsvError::RaggedRow { line: 2, expected: 3, found: 2 })
        );
        assert_eq!(
            decode_csv_matrix("1,2,3\n1,2,3\n"),
            Err(CsvError::TooSmall { width: 3, height: 2 })
        );
        assert_eq!(
            decode_csv_matrix("1,2,inf\n1,2,3\n1,2,3\n"),
            Err(CsvError::NonFinite { line: 1, column: 3 })
        );
        assert_eq!(decode_csv_matrix(""), Err(CsvError::TooSmall { width: 0, height: 0 }));
        assert!(decode_csv_matrix("1,2,3\r\n4,5,6\r\n7,8,9\r\n\n").is_ok());
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(
            (w, h, data) in (3usize..9, 3usize..9).prop_flat_map(|(w, h)| {
                (Just(w), Just(h), proptest::collection::vec(-1e300f64..1e300, w * h))
            })
        ) {
            let g = ImageGrid::new(w, h, data).unwrap();
            prop_assert_eq!(decode_csv_matrix(&encode_csv_matrix(&g)).unwrap(), g);
        }
    }
}
