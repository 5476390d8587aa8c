#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::codec::{decode_register_runs, deconcat, read_header, BitStream, LENGTH_FIELD_BITS};

// [register length: u16 LE] frame bytes...
fuzz_target!(|data: &[u8]| {
    let [lo, hi, rest @ ..] = data else {
        return;
    };
    let count = usize::from(u16::from_le_bytes([*lo, *hi]));
    let bits = BitStream::from_bytes(rest);
    if let Ok((flags, used)) = decode_register_runs(bits.as_slice(), count) {
        assert_eq!(flags.len(), count);
        assert!(used <= bits.len());
    }
    if let Some(header) = read_header(bits.as_slice()) {
        let end = (header.frame_len() as usize).min(bits.len());
        let payload = &bits.as_slice()[LENGTH_FIELD_BITS..end];
        if let Ok((message, register)) = deconcat(payload, count, header.coding) {
            assert_eq!(register.len(), count);
            assert!(message.len() <= payload.len());
        }
    }
});
