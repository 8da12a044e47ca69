#![no_main]

use libfuzzer_sys::fuzz_target;
use speckle_tde::grid::{decode_pgm, encode_pgm};

// Any decodable image must survive an encode/decode cycle unchanged, since
// decoded samples are already integers in [0, 255].
fuzz_target!(|data: &[u8]| {
    if let Ok(grid) = decode_pgm(data) {
        let bytes = encode_pgm(&grid);
        assert_eq!(decode_pgm(&bytes).expect("encoded image decodes"), grid);
    }
});
