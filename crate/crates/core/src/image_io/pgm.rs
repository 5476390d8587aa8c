use crate::error::{Error, Result};
use crate::image::GrayImage;

const MAXVAL: u32 = 255;
// Header numbers longer than this cannot be valid dimensions.
const MAX_DIGITS: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    Binary,
    Ascii,
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.buf.get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments (which run to the end of the line).
    fn skip_filler(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(b) = self.peek() {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal token. `None` if no digit is present.
    fn number(&mut self) -> Option<std::result::Result<u32, ()>> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let digits = &self.buf[start..self.pos];
        if digits.len() > MAX_DIGITS {
            return Some(Err(()));
        }
        let value = digits
            .iter()
            .fold(0u64, |acc, d| acc * 10 + u64::from(d - b'0'));
        Some(u32::try_from(value).map_err(|_| ()))
    }

    fn header_field(&mut self, name: &str) -> Result<u32> {
        self.skip_filler();
        match self.number() {
            Some(Ok(v)) => Ok(v),
            Some(Err(())) => Err(Error::MalformedHeader(format!("{name} out of range"))),
            None => Err(Error::MalformedHeader(format!("missing {name}"))),
        }
    }
}

/// Parses a binary (`P5`) or ASCII (`P2`) PGM with maxval 255.
///
/// Bytes after the declared raster are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let flavor = match bytes.get(..2) {
        Some(b"P5") => Flavor::Binary,
        Some(b"P2") => Flavor::Ascii,
        _ => return Err(Error::MalformedHeader("expected magic P5 or P2".into())),
    };
    let mut cur = Cursor { buf: bytes, pos: 2 };
    if !matches!(cur.peek(), Some(b) if b.is_ascii_whitespace() || b == b'#') {
        return Err(Error::MalformedHeader("no separator after magic".into()));
    }
    let width = cur.header_field("width")? as usize;
    let height = cur.header_field("height")? as usize;
    let maxval = cur.header_field("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval != MAXVAL {
        return Err(Error::MaxvalUnsupported(maxval));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;

    let pixels = match flavor {
        Flavor::Binary => {
            // exactly one whitespace byte separates the header from the raster
            match cur.peek() {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                Some(_) => return Err(Error::MalformedHeader("no separator after maxval".into())),
                None => {
                    return Err(Error::TruncatedData {
                        expected: count,
                        found: 0,
                    })
                }
            }
            let raster = &bytes[cur.pos..];
            if raster.len() < count {
                return Err(Error::TruncatedData {
                    expected: count,
                    found: raster.len(),
                });
            }
            raster[..count].to_vec()
        }
        Flavor::Ascii => {
            let mut pixels = Vec::with_capacity(count.min(bytes.len()));
            while pixels.len() < count {
                cur.skip_filler();
                match cur.number() {
                    Some(Ok(v)) if v <= MAXVAL => pixels.push(v as u8),
                    Some(Ok(v)) => {
                        return Err(Error::SampleOutOfRange {
                            index: pixels.len(),
                            value: v,
                        })
                    }
                    Some(Err(())) => {
                        return Err(Error::SampleOutOfRange {
                            index: pixels.len(),
                            value: u32::MAX,
                        })
                    }
                    None if cur.peek().is_none() => {
                        return Err(Error::TruncatedData {
                            expected: count,
                            found: pixels.len(),
                        })
                    }
                    None => {
                        return Err(Error::MalformedData(format!(
                            "unexpected byte 0x{:02x} in raster",
                            bytes[cur.pos]
                        )))
                    }
                }
            }
            pixels
        }
    };
    GrayImage::new(width, height, pixels)
}

/// Serializes as binary `P5` with a minimal header.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_two_by_two() {
        let mut bytes = b"P5 2 2 255 ".to_vec();
        bytes.extend_from_slice(&[0, 255, 7, 8]);
        let img = read_pgm(&bytes).unwrap();
        assert_eq!(img.dims(), (2, 2));
        assert_eq!(img.pixels(), &[0, 255, 7, 8]);
    }

    #[test]
    fn ascii_single_pixel() {
        let img = read_pgm(b"P2 1 1 255 42").unwrap();
        assert_eq!(img.pixels(), &[42]);
    }

    #[test]
    fn truncated_binary() {
        let mut bytes = b"P5 2 2 255 ".to_vec();
        bytes.extend_from_slice(&[1, 2, 3]);
        assert_eq!(
            read_pgm(&bytes),
            Err(Error::TruncatedData {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn comments_and_odd_whitespace() {
        let mut bytes = b"P5\n# made by hand\n 2\t# w\n1\r\n255\n".to_vec();
        bytes.extend_from_slice(&[9, 10, 99]);
        let img = read_pgm(&bytes).unwrap();
        assert_eq!(img.pixels(), &[9, 10]);
    }

    #[test]
    fn ascii_with_comment_inside_raster() {
        let img = read_pgm(b"P2\n2 2\n255\n1 2 # row end\n3\n4\n").unwrap();
        assert_eq!(img.pixels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn rejects_other_maxvals() {
        assert_eq!(
            read_pgm(b"P5 1 1 65535 \0\0"),
            Err(Error::MaxvalUnsupported(65535))
        );
        assert_eq!(read_pgm(b"P2 1 1 15 3"), Err(Error::MaxvalUnsupported(15)));
    }

    #[test]
    fn rejects_bad_headers() {
        for bad in [
            &b"P6 1 1 255 x"[..],
            b"P5",
            b"P51 1 255 x",
            b"P5 a 1 255 x",
            b"P5 0 1 255 ",
            b"P5 99999999999 1 255 ",
        ] {
            assert!(
                matches!(read_pgm(bad), Err(Error::MalformedHeader(_))),
                "{:?}",
                String::from_utf8_lossy(bad)
            );
        }
    }

    #[test]
    fn ascii_sample_range_and_garbage() {
        assert_eq!(
            read_pgm(b"P2 2 1 255 3 256"),
            Err(Error::SampleOutOfRange {
                index: 1,
                value: 256
            })
        );
        assert!(matches!(
            read_pgm(b"P2 2 1 255 3 x"),
            Err(Error::MalformedData(_))
        ));
        assert_eq!(
            read_pgm(b"P2 2 1 255 3"),
            Err(Error::TruncatedData {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn canonical_serialization() {
        let img = GrayImage::new(1, 1, vec![42]).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n1 1\n255\n\x2a".to_vec());
        let img = GrayImage::new(2, 2, vec![0, 255, 7, 8]).unwrap();
        let mut expected = b"P5\n2 2\n255\n".to_vec();
        expected.extend_from_slice(&[0, 255, 7, 8]);
        assert_eq!(write_pgm(&img), expected);
    }

    #[test]
    fn huge_declared_dims_do_not_allocate() {
        assert_eq!(
            read_pgm(b"P5 4000000000 4000000000 255 \x01"),
            Err(Error::TruncatedData {
                expected: 16_000_000_000_000_000_000,
                found: 1
            })
        );
    }
}
