#![no_main]

use libfuzzer_sys::fuzz_target;
use speckle_tde::grid::{decode_csv_matrix, encode_csv_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = decode_csv_matrix(text) {
        let again = decode_csv_matrix(&encode_csv_matrix(&grid)).expect("encoded matrix decodes");
        assert_eq!(again, grid);
    }
});
