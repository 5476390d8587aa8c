//! Payload framing.
//!
//! ```text
//! raw:   [C=0 | L:31] message register 0
//! coded: [C=1 | L:31] runs(register) message 0
//! ```
//!
//! The 32-bit big-endian header holds the payload length `L` in its low 31
//! bits. Its top bit `C` says the overflow register is run-length coded and
//! sits before the message; otherwise the raw flags follow the message.
//! Coding is chosen only when it is strictly shorter. The trailing 0 pad bit
//! lets the two-bit lookahead on a zero residual always read a real bit.
//!
//! The decoder never needs the register length in the header: it restores
//! the processed image first and counts its ambiguous pixels.

use super::bits::{read_uint, BitStream};
use super::overflow::OverflowRegister;
use crate::error::{Error, Result};

pub const LENGTH_FIELD_BITS: usize = 32;
pub const PAD_BITS: usize = 1;
pub const MAX_PAYLOAD_BITS: u64 = (1 << 31) - 1;
const CODED_REGISTER_FLAG: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegisterCoding {
    Raw,
    RunLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameHeader {
    pub payload_len: u64,
    pub coding: RegisterCoding,
}

impl FrameHeader {
    /// Header plus payload, pad excluded.
    pub fn frame_len(&self) -> u64 {
        LENGTH_FIELD_BITS as u64 + self.payload_len
    }
}

/// `|m| + |v|` (with `v` as framed), which must fit the 31-bit length.
pub fn payload_len(message_len: usize, register_len: usize) -> Result<u64> {
    let total = message_len as u64 + register_len as u64;
    if total > MAX_PAYLOAD_BITS {
        return Err(Error::PayloadTooLarge(total));
    }
    Ok(total)
}

fn push_gamma(out: &mut BitStream, n: u64) {
    debug_assert!(n >= 1);
    let width = 64 - n.leading_zeros();
    out.push_uint(0, width - 1);
    out.push_uint(n, width);
}

/// Value of the first flag, then the Elias-gamma length of every run.
pub fn encode_register_runs(flags: &[bool]) -> BitStream {
    let mut out = BitStream::new();
    let Some(&first) = flags.first() else {
        return out;
    };
    out.push(first);
    let mut run = 0u64;
    let mut current = first;
    for &f in flags {
        if f == current {
            run += 1;
        } else {
            push_gamma(&mut out, run);
            current = f;
            run = 1;
        }
    }
    push_gamma(&mut out, run);
    out
}

/// Decodes `count` flags from the front of `bits`; returns them and the
/// number of bits read.
pub fn decode_register_runs(bits: &[bool], count: usize) -> Result<(BitStream, usize)> {
    let corrupt = |what: &str| Error::CorruptStego(format!("register runs: {what}"));
    let mut flags = BitStream::with_capacity(count);
    if count == 0 {
        return Ok((flags, 0));
    }
    let mut pos = 0;
    let mut value = *bits.first().ok_or_else(|| corrupt("empty"))?;
    pos += 1;
    while flags.len() < count {
        let zeros = bits[pos..].iter().take_while(|&&b| !b).count();
        if zeros > 40 {
            return Err(corrupt("run length prefix too long"));
        }
        let width = zeros + 1;
        if pos + zeros + width > bits.len() {
            return Err(corrupt("truncated run length"));
        }
        let run = read_uint(&bits[pos + zeros..], width) as usize;
        pos += zeros + width;
        if run > count - flags.len() {
            return Err(corrupt("run overshoots the register"));
        }
        for _ in 0..run {
            flags.push(value);
        }
        value = !value;
    }
    Ok((flags, pos))
}

pub fn frame_payload(message: &BitStream, register: &OverflowRegister) -> Result<BitStream> {
    let raw = register.flags.as_slice();
    let runs = encode_register_runs(raw);
    let coded = runs.len() < raw.len();
    let register_bits = if coded { runs.len() } else { raw.len() };
    let total = payload_len(message.len(), register_bits)?;

    let mut framed = BitStream::with_capacity(LENGTH_FIELD_BITS + total as usize + PAD_BITS);
    let flag = if coded { CODED_REGISTER_FLAG } else { 0 };
    framed.push_uint(flag | total, LENGTH_FIELD_BITS as u32);
    if coded {
        framed.extend_from_slice(runs.as_slice());
        framed.extend_from_slice(message.as_slice());
    } else {
        framed.extend_from_slice(message.as_slice());
        framed.extend_from_slice(raw);
    }
    framed.push(false);
    Ok(framed)
}

/// Bits the register will occupy once framed.
pub fn framed_register_bits(register: &OverflowRegister) -> usize {
    register
        .len()
        .min(encode_register_runs(register.flags.as_slice()).len())
}

/// Parses the header once enough bits are available.
pub fn read_header(bits: &[bool]) -> Option<FrameHeader> {
    if bits.len() < LENGTH_FIELD_BITS {
        return None;
    }
    let raw = read_uint(bits, LENGTH_FIELD_BITS);
    Some(FrameHeader {
        payload_len: raw & MAX_PAYLOAD_BITS,
        coding: if raw & CODED_REGISTER_FLAG != 0 {
            RegisterCoding::RunLength
        } else {
            RegisterCoding::Raw
        },
    })
}

/// Splits the payload (header stripped) into message and register, given
/// how many ambiguous pixels the restored image has.
pub fn deconcat(
    payload: &[bool],
    register_len: usize,
    coding: RegisterCoding,
) -> Result<(BitStream, OverflowRegister)> {
    match coding {
        RegisterCoding::Raw => {
            if register_len > payload.len() {
                return Err(Error::RegisterLengthMismatch {
                    expected: register_len,
                    found: payload.len(),
                });
            }
            let cut = payload.len() - register_len;
            Ok((
                BitStream::from(&payload[..cut]),
                OverflowRegister {
                    flags: BitStream::from(&payload[cut..]),
                },
            ))
        }
        RegisterCoding::RunLength => {
            let (flags, used) = decode_register_runs(payload, register_len)?;
            Ok((
                BitStream::from(&payload[used..]),
                OverflowRegister { flags },
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(n: u32) -> Vec<bool> {
        let mut s = BitStream::new();
        s.push_uint(u64::from(n), 32);
        s.as_slice().to_vec()
    }

    fn reg(flags: &[bool]) -> OverflowRegister {
        OverflowRegister {
            flags: flags.into(),
        }
    }

    #[test]
    fn single_message_bit() {
        let f = frame_payload(&vec![true].into(), &OverflowRegister::default()).unwrap();
        let mut expected = header(1);
        expected.extend_from_slice(&[true, false]);
        assert_eq!(f.as_slice(), &expected[..]);
    }

    #[test]
    fn register_only() {
        let f = frame_payload(&BitStream::new(), &reg(&[false, true])).unwrap();
        let mut expected = header(2);
        expected.extend_from_slice(&[false, true, false]);
        assert_eq!(f.as_slice(), &expected[..]);
        assert_eq!(
            read_header(f.as_slice()),
            Some(FrameHeader {
                payload_len: 2,
                coding: RegisterCoding::Raw
            })
        );
        assert_eq!(read_header(&f.as_slice()[..31]), None);
    }

    #[test]
    fn gamma_runs() {
        // runs 3 x true, 1 x false, 4 x true: first=1, gamma(3)=011, gamma(1)=1, gamma(4)=00100
        let flags = [true, true, true, false, true, true, true, true];
        let runs = encode_register_runs(&flags);
        let expected: Vec<bool> = "1011100100".chars().map(|c| c == '1').collect();
        assert_eq!(runs.as_slice(), &expected[..]);
        let (back, used) = decode_register_runs(runs.as_slice(), flags.len()).unwrap();
        assert_eq!((back.as_slice(), used), (&flags[..], expected.len()));
    }

    #[test]
    fn long_runs_are_coded() {
        let flags = vec![true; 1000];
        let message: BitStream = vec![false, true].into();
        let f = frame_payload(&message, &reg(&flags)).unwrap();
        let h = read_header(f.as_slice()).unwrap();
        assert_eq!(h.coding, RegisterCoding::RunLength);
        // 1 value bit + gamma(1000) = 1 + 19 bits
        assert_eq!(h.payload_len, 2 + 20);
        let payload = &f.as_slice()[32..32 + h.payload_len as usize];
        let (m, v) = deconcat(payload, 1000, h.coding).unwrap();
        assert_eq!(m, message);
        assert_eq!(v.flags.as_slice(), &flags[..]);
        assert_eq!(framed_register_bits(&reg(&flags)), 20);
    }

    #[test]
    fn corrupt_runs_are_errors() {
        assert!(decode_register_runs(&[], 3).is_err());
        // gamma(4) but only 3 flags expected
        let bits: Vec<bool> = "100100".chars().map(|c| c == '1').collect();
        assert!(decode_register_runs(&bits, 3).is_err());
        assert!(decode_register_runs(&[true, false, false], 3).is_err());
        assert!(decode_register_runs(&[false; 60], 3).is_err());
    }

    #[test]
    fn deconcat_splits_at_register() {
        let (m, v) = deconcat(&[true, true, false, true], 1, RegisterCoding::Raw).unwrap();
        assert_eq!(m.as_slice(), &[true, true, false]);
        assert_eq!(v.flags.as_slice(), &[true]);
        assert!(matches!(
            deconcat(&[true], 2, RegisterCoding::Raw),
            Err(Error::RegisterLengthMismatch { .. })
        ));
    }

    #[test]
    fn oversized_payload() {
        assert_eq!(
            payload_len(1 << 32, 0),
            Err(Error::PayloadTooLarge(1 << 32))
        );
        assert_eq!(
            payload_len(1 << 31, 0),
            Err(Error::PayloadTooLarge(1 << 31))
        );
        assert_eq!(payload_len((1 << 31) - 4, 3), Ok(MAX_PAYLOAD_BITS));
    }
}
