#![no_main]

use libfuzzer_sys::fuzz_target;
use speckle_tde::grid::decode_pgm;

fuzz_target!(|data: &[u8]| {
    if let Ok(grid) = decode_pgm(data) {
        assert!(grid.width() >= 3 && grid.height() >= 3);
        assert!(grid.as_slice().iter().all(|v| (0.0..=255.0).contains(v)));
    }
});
