#![no_main]

use libfuzzer_sys::fuzz_target;
use residmod::{decode, read_pgm, Alpha, AnalyzerKind, ExternalMaps, GrayImage, StegoConfig};

// [alpha] [analyzer] [width] image...
// The image is tried as a PGM first, then as raw pixels of the given width.
fuzz_target!(|data: &[u8]| {
    let [a, kind, w, rest @ ..] = data else {
        return;
    };
    let alpha = Alpha::new(u32::from(*a) % Alpha::MAX + 1).unwrap();
    let analyzer = if kind & 1 == 0 {
        AnalyzerKind::LocalVariance
    } else {
        AnalyzerKind::Raster
    };
    let img = match read_pgm(rest) {
        Ok(img) => img,
        Err(_) => {
            let w = usize::from(*w % 64) + 2;
            let h = rest.len() / w;
            match GrayImage::new(w, h, rest[..w * h].to_vec()) {
                Ok(img) => img,
                Err(_) => return,
            }
        }
    };
    let cfg = StegoConfig::interp(alpha, analyzer);
    if let Ok((restored, _)) = decode(&img, &cfg, &ExternalMaps::none()) {
        assert_eq!(restored.dims(), img.dims());
    }
});
