#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::{read_pgm, write_pgm};

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = read_pgm(data) {
        let again = read_pgm(&write_pgm(&img)).expect("writer output must parse");
        assert_eq!(again, img);
    }
});
