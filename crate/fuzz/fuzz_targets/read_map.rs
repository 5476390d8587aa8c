#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::{read_map, write_map};

fuzz_target!(|data: &[u8]| {
    if let Ok(map) = read_map(data) {
        // the format has one canonical encoding
        assert_eq!(write_map(&map), data);
    }
});
