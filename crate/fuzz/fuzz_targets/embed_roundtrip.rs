#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::{
    decode, encode, Alpha, AnalyzerKind, BitStream, Error, ExternalMaps, GrayImage, StegoConfig,
};

// [alpha] [width] [message length] message... pixels...
fuzz_target!(|data: &[u8]| {
    let [a, w, n, rest @ ..] = data else {
        return;
    };
    let n = usize::from(*n).min(rest.len());
    let (message, pixels) = rest.split_at(n);
    let w = usize::from(*w % 48) + 2;
    let h = pixels.len() / w;
    let Ok(cover) = GrayImage::new(w, h, pixels[..w * h].to_vec()) else {
        return;
    };
    let alpha = Alpha::new(u32::from(*a % 8) + 1).unwrap();
    let cfg = StegoConfig::interp(alpha, AnalyzerKind::LocalVariance);
    let message = BitStream::from_bytes(message);
    match encode(&cover, &message, &cfg, &ExternalMaps::none()) {
        Ok(stego) => {
            let (restored, extracted) = decode(&stego, &cfg, &ExternalMaps::none()).unwrap();
            assert_eq!(restored, cover);
            assert_eq!(extracted, message);
        }
        Err(Error::CapacityExceeded { .. } | Error::ImageTooSmall { .. }) => {}
        Err(e) => panic!("unexpected encode error: {e}"),
    }
});
