//! Per-residual modulation.
//!
//! | residual            | bits   | modulated            |
//! |---------------------|--------|----------------------|
//! | `0`                 | `0`    | `0`                  |
//! | `0`                 | `1 0`  | `-1`                 |
//! | `0`                 | `1 1`  | `+1`                 |
//! | `0 < abs(e) < a`    | `b`    | `2e + sgn(e) * b`    |
//! | `abs(e) >= a`       | none   | `e + sgn(e) * a`     |
//!
//! The output classes are pairwise disjoint: `{-1, 0, 1}`, even values in
//! `[2, 2a-2]`, odd values in `[3, 2a-1]` (both signs), and `abs >= 2a`.

/// Up to two extracted bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extracted {
    bits: [bool; 2],
    len: u8,
}

impl Extracted {
    const NONE: Self = Self {
        bits: [false; 2],
        len: 0,
    };

    fn one(b: bool) -> Self {
        Self {
            bits: [b, false],
            len: 1,
        }
    }

    fn two(a: bool, b: bool) -> Self {
        Self {
            bits: [a, b],
            len: 2,
        }
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits[..usize::from(self.len)]
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Modulates one residual, reading from the front of `pending`.
///
/// `eps` must lie in [-255, 255]. Returns the modulated residual and how
/// many bits were consumed. Bits past
/// the end of `pending` read as 0; framed payloads end with a 0 pad bit so
/// this only ever stands in for that pad.
#[inline]
pub fn modulate_one(eps: i32, alpha: i32, pending: &[bool]) -> (i32, usize) {
    let bit = |i: usize| pending.get(i).copied().unwrap_or(false);
    let magnitude = eps.abs();
    if eps == 0 {
        match (bit(0), bit(1)) {
            (false, _) => (0, 1),
            (true, false) => (-1, 2),
            (true, true) => (1, 2),
        }
    } else if magnitude < alpha {
        (2 * eps + eps.signum() * i32::from(bit(0)), 1)
    } else {
        (eps + eps.signum() * alpha, 0)
    }
}

/// Inverse of [`modulate_one`]. Total on all integers.
#[inline]
pub fn demodulate_one(modulated: i32, alpha: i32) -> (i32, Extracted) {
    let magnitude = i64::from(modulated).abs();
    match modulated {
        0 => (0, Extracted::one(false)),
        -1 => (0, Extracted::two(true, false)),
        1 => (0, Extracted::two(true, true)),
        _ if magnitude < 2 * i64::from(alpha) => {
            let odd = magnitude % 2 == 1;
            let sign = modulated.signum();
            ((modulated - sign * i32::from(odd)) / 2, Extracted::one(odd))
        }
        _ => (modulated - modulated.signum() * alpha, Extracted::NONE),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_examples() {
        assert_eq!(modulate_one(0, 2, &[true, false]), (-1, 2));
        assert_eq!(modulate_one(0, 2, &[true, true]), (1, 2));
        assert_eq!(modulate_one(0, 2, &[false, true]), (0, 1));
        assert_eq!(modulate_one(1, 2, &[true, false]), (3, 1));
        assert_eq!(modulate_one(-1, 2, &[false]), (-2, 1));
        assert_eq!(modulate_one(-3, 2, &[true, true]), (-5, 0));
        assert_eq!(modulate_one(0, 1, &[true]), (-1, 2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(demodulate_one(3, 2), (1, Extracted::one(true)));
        assert_eq!(demodulate_one(4, 2), (2, Extracted::NONE));
        assert_eq!(demodulate_one(0, 2), (0, Extracted::one(false)));
        assert_eq!(demodulate_one(-1, 7).1.as_slice(), &[true, false]);
        assert_eq!(demodulate_one(-6, 4), (-3, Extracted::one(false)));
    }

    #[test]
    fn inverse_matches_forward_table() {
        // build the forward table exhaustively, then look every output up
        use std::collections::HashMap;
        for alpha in 1..=8 {
            let mut table: HashMap<i32, (i32, Vec<bool>)> = HashMap::new();
            for eps in -255..=255 {
                for prefix in [[false, false], [false, true], [true, false], [true, true]] {
                    let (m, used) = modulate_one(eps, alpha, &prefix);
                    let entry = (eps, prefix[..used].to_vec());
                    if let Some(prev) = table.insert(m, entry.clone()) {
                        assert_eq!(prev, entry, "alpha {alpha}: {m} reached twice");
                    }
                }
            }
            for (m, (eps, bits)) in table {
                let (back, got) = demodulate_one(m, alpha);
                assert_eq!((back, got.as_slice()), (eps, &bits[..]));
            }
        }
    }

    #[test]
    fn total_on_unreachable_inputs() {
        for m in -2000..=2000 {
            for alpha in 1..=63 {
                let _ = demodulate_one(m, alpha);
            }
        }
        let _ = demodulate_one(i32::MAX, 1);
        let _ = demodulate_one(i32::MIN, 63);
    }
}
