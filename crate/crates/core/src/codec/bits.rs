/// Ordered bit sequence with an exact length. Packs MSB-first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitStream {
    bits: Vec<bool>,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        let bits = bytes
            .iter()
            .flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
            .collect();
        Self { bits }
    }

    /// Packs MSB-first; a final partial byte is zero-padded on the right.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
            })
            .collect()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from_slice(&mut self, bits: &[bool]) {
        self.bits.extend_from_slice(bits);
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.bits.push((value >> i) & 1 == 1);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }
}

impl From<Vec<bool>> for BitStream {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl From<&[bool]> for BitStream {
    fn from(bits: &[bool]) -> Self {
        Self {
            bits: bits.to_vec(),
        }
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

/// Reads the first `width` bits as a big-endian unsigned integer.
pub(crate) fn read_uint(bits: &[bool], width: usize) -> u64 {
    bits[..width]
        .iter()
        .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first() {
        let s = BitStream::from_bytes(&[0b1010_0001]);
        assert_eq!(
            s.as_slice(),
            &[true, false, true, false, false, false, false, true]
        );
        assert_eq!(s.to_bytes(), vec![0b1010_0001]);
        let partial = BitStream::from(vec![true, true, false]);
        assert_eq!(partial.to_bytes(), vec![0b1100_0000]);
    }

    #[test]
    fn uint_fields() {
        let mut s = BitStream::new();
        s.push_uint(0x0102_0304, 32);
        assert_eq!(s.to_bytes(), vec![1, 2, 3, 4]);
        assert_eq!(read_uint(s.as_slice(), 32), 0x0102_0304);
    }
}
