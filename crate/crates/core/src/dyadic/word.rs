use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::dyadic::DyadicRational;
use crate::{Error, Result};

/// A finite binary string. The depth of a word is its length; the empty
/// word has depth 0 and is written `~` in the ASCII serialisation.
///
/// Bits are stored most-significant-first, so the last bit is the units
/// digit and horizontal moves (adding or subtracting 1 modulo `2^depth`)
/// propagate carries from the back of the vector. Appending and removing
/// the final bit are O(1); increments are O(1) amortised.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: Vec<u8>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    /// Builds a word from bits given most-significant-first. Panics on a
    /// value other than 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "word bits must be 0 or 1");
        Word { bits: bits.to_vec() }
    }

    /// The word of the given depth whose integer value is `value`
    /// (reduced modulo `2^depth`).
    pub fn from_value(depth: usize, value: u64) -> Self {
        assert!(depth <= 64);
        let mut bits = vec![0u8; depth];
        for (i, slot) in bits.iter_mut().enumerate() {
            *slot = ((value >> (depth - 1 - i)) & 1) as u8;
        }
        Word { bits }
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at position `i` counting from the most significant.
    pub fn bit_msb(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The units digit, `None` for the empty word.
    pub fn last_bit(&self) -> Option<u8> {
        self.bits.last().copied()
    }

    /// Whether the label ends in 0. The empty word is not considered even:
    /// it has no final bit, and in the wrapped graph it has no upward move.
    pub fn is_even(&self) -> bool {
        self.last_bit() == Some(0)
    }

    /// Integer value with the first bit most significant.
    pub fn value_biguint(&self) -> BigUint {
        let mut v = BigUint::default();
        for &b in &self.bits {
            v = (v << 1u8) + b;
        }
        v
    }

    /// Integer value for words of depth at most 64.
    pub fn value_u64(&self) -> u64 {
        assert!(self.depth() <= 64, "value_u64 requires depth <= 64");
        self.bits.iter().fold(0u64, |v, &b| (v << 1) | b as u64)
    }

    /// Adds `delta` (+1 or -1) modulo `2^depth`; the horizontal move of the
    /// wrapped graph. The empty word has no horizontal neighbours.
    pub fn offset_mod(&self, delta: i8) -> Result<Word> {
        let mut w = self.clone();
        w.offset_mod_in_place(delta)?;
        Ok(w)
    }

    /// In-place variant of [`Word::offset_mod`], used by the walk engine.
    pub fn offset_mod_in_place(&mut self, delta: i8) -> Result<()> {
        if self.bits.is_empty() {
            return Err(Error::Domain(
                "the empty word has no horizontal neighbours".into(),
            ));
        }
        match delta {
            1 => {
                for b in self.bits.iter_mut().rev() {
                    if *b == 0 {
                        *b = 1;
                        return Ok(());
                    }
                    *b = 0;
                }
                Ok(()) // wrapped around: (11...1) + 1 = (00...0)
            }
            -1 => {
                for b in self.bits.iter_mut().rev() {
                    if *b == 1 {
                        *b = 0;
                        return Ok(());
                    }
                    *b = 1;
                }
                Ok(())
            }
            _ => Err(Error::Domain(format!("offset must be +1 or -1, got {delta}"))),
        }
    }

    /// Appends a bit, increasing the depth by one.
    pub fn append(&self, bit: u8) -> Word {
        let mut w = self.clone();
        w.append_in_place(bit);
        w
    }

    pub fn append_in_place(&mut self, bit: u8) {
        assert!(bit <= 1);
        self.bits.push(bit);
    }

    /// Removes the final bit, decreasing the depth by one.
    pub fn pop(&self) -> Result<Word> {
        let mut w = self.clone();
        w.pop_in_place()?;
        Ok(w)
    }

    pub fn pop_in_place(&mut self) -> Result<()> {
        if self.bits.pop().is_none() {
            return Err(Error::Domain("cannot remove a bit from the empty word".into()));
        }
        Ok(())
    }

    /// Horizontal position `v(w) / 2^depth` in `[0, 1)`; the empty word is
    /// at 0. The result is canonical, so trailing zeros do not change it.
    pub fn position(&self) -> DyadicRational {
        DyadicRational::new(self.value_biguint().into(), self.depth() as u32)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("~");
        }
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        if s == "~" {
            return Ok(Word::empty());
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::Domain(format!("invalid word character {c:?}"))),
            }
        }
        Ok(Word { bits })
    }
}
