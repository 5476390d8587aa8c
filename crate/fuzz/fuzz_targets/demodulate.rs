#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::codec::{demodulate_one, modulate_one};

fuzz_target!(|input: (i32, u8)| {
    let (m, a) = input;
    let alpha = i32::from(a % 63) + 1;
    let (eps, bits) = demodulate_one(m, alpha);
    // whatever was demodulated must modulate back to the same value
    let (again, used) = modulate_one(eps, alpha, bits.as_slice());
    assert_eq!(used, bits.len());
    assert_eq!(again, m);
});
