use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A deterministic source for the bits of a left-infinite binary string,
/// indexed by place value: index 0 is the units digit and higher indices are
/// more significant. Three tail shapes cover every experiment we run: an
/// all-zero tail, a periodic tail, and a seeded pseudorandom tail. Bits are
/// pure functions of the provider, so queries are repeatable and thread-safe
/// without locking, and a recorded seed replays an entire experiment.
///
/// The JSON form is `{kind, suffix, period?, seed?}` with `suffix` and
/// `period` written most-significant-first, e.g. the all-ones string is
/// `{"kind": "periodic", "suffix": "", "period": "1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProviderRecord", into = "ProviderRecord")]
pub enum BitProvider {
    /// Explicit low bits, zeros above.
    Zero { low: Vec<u8> },
    /// Explicit low bits, then a repeating block above them. `period[0]` is
    /// the bit immediately above the suffix.
    Periodic { low: Vec<u8>, period: Vec<u8> },
    /// Explicit low bits, then seeded pseudorandom bits above.
    Random { seed: u64, low: Vec<u8> },
}

impl BitProvider {
    pub fn zero_tail(suffix: &str) -> Result<Self> {
        Ok(BitProvider::Zero { low: parse_low(suffix)? })
    }

    pub fn periodic(suffix: &str, period: &str) -> Result<Self> {
        let period = parse_low(period)?;
        if period.is_empty() {
            return Err(Error::Domain("periodic provider needs a nonempty period".into()));
        }
        Ok(BitProvider::Periodic { low: parse_low(suffix)?, period })
    }

    pub fn random(seed: u64) -> Self {
        BitProvider::Random { seed, low: Vec::new() }
    }

    /// The bit at place `i` (place 0 is the units digit).
    pub fn bit(&self, i: u64) -> u8 {
        match self {
            BitProvider::Zero { low } => low.get(i as usize).copied().unwrap_or(0),
            BitProvider::Periodic { low, period } => match low.get(i as usize) {
                Some(&b) => b,
                None => period[((i - low.len() as u64) % period.len() as u64) as usize],
            },
            BitProvider::Random { seed, low } => match low.get(i as usize) {
                Some(&b) => b,
                None => pseudorandom_bit(*seed, i),
            },
        }
    }

    /// Whether the bit sequence is eventually periodic. Exactly the
    /// providers with nontrivial rooted-graph automorphisms; a seeded
    /// pseudorandom tail is treated as aperiodic.
    pub fn is_eventually_periodic(&self) -> bool {
        matches!(self, BitProvider::Zero { .. } | BitProvider::Periodic { .. })
    }
}

fn parse_low(s: &str) -> Result<Vec<u8>> {
    let mut low = Vec::with_capacity(s.len());
    for c in s.chars().rev() {
        match c {
            '0' => low.push(0),
            '1' => low.push(1),
            _ => return Err(Error::Domain(format!("invalid bit character {c:?}"))),
        }
    }
    Ok(low)
}

fn render_low(low: &[u8]) -> String {
    low.iter().rev().map(|b| char::from(b'0' + b)).collect()
}

/// splitmix64 finaliser over (seed, place); a stateless counter-based
/// generator, so bit queries need no shared state.
fn pseudorandom_bit(seed: u64, i: u64) -> u8 {
    let mut z = seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z & 1) as u8
}

#[derive(Serialize, Deserialize)]
struct ProviderRecord {
    kind: String,
    #[serde(default)]
    suffix: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl From<BitProvider> for ProviderRecord {
    fn from(p: BitProvider) -> Self {
        match p {
            BitProvider::Zero { low } => ProviderRecord {
                kind: "zero".into(),
                suffix: render_low(&low),
                period: None,
                seed: None,
            },
            BitProvider::Periodic { low, period } => ProviderRecord {
                kind: "periodic".into(),
                suffix: render_low(&low),
                period: Some(render_low(&period)),
                seed: None,
            },
            BitProvider::Random { seed, low } => ProviderRecord {
                kind: "random".into(),
                suffix: render_low(&low),
                period: None,
                seed: Some(seed),
            },
        }
    }
}

impl TryFrom<ProviderRecord> for BitProvider {
    type Error = Error;

    fn try_from(r: ProviderRecord) -> Result<Self> {
        match r.kind.as_str() {
            "zero" => BitProvider::zero_tail(&r.suffix),
            "periodic" => {
                let period = r
                    .period
                    .ok_or_else(|| Error::Domain("periodic provider needs a period".into()))?;
                BitProvider::periodic(&r.suffix, &period)
            }
            "random" => {
                let seed = r
                    .seed
                    .ok_or_else(|| Error::Domain("random provider needs a seed".into()))?;
                let low = parse_low(&r.suffix)?;
                Ok(BitProvider::Random { seed, low })
            }
            other => Err(Error::Domain(format!("unknown provider kind {other:?}"))),
        }
    }
}

/// A lazily evaluated dyadic integer: a left-infinite bit string with exact
/// `+1`, `-1`, `*2`, `/2` arithmetic. Values are immutable; arithmetic
/// produces fresh values, so they may be shared freely across threads.
///
/// Internally a value is `low + 2^n * (tail + pending)`, where `low` holds
/// the `n` materialised least-significant bits, `tail` is the provider bit
/// stream starting at place `n + delta`, and `pending` is a carry that has
/// been pushed past the materialised range. Carries propagate eagerly
/// through `low` and accumulate symbolically at the boundary, which keeps
/// every operation O(1) amortised. Bit queries above the boundary resolve
/// the pending carry through the provider bits on the fly.
#[derive(Clone)]
pub struct LazyDyadic {
    provider: Arc<BitProvider>,
    low: Vec<u8>,
    delta: i64,
    pending: i64,
}

impl LazyDyadic {
    pub fn from_provider(provider: BitProvider) -> Self {
        LazyDyadic { provider: Arc::new(provider), low: Vec::new(), delta: 0, pending: 0 }
    }

    /// The all-zero dyadic integer.
    pub fn zeros() -> Self {
        LazyDyadic::from_provider(BitProvider::Zero { low: Vec::new() })
    }

    pub fn provider(&self) -> &BitProvider {
        &self.provider
    }

    /// The bit at place `k`; deterministic and repeatable.
    pub fn bit(&self, k: usize) -> u8 {
        if let Some(&b) = self.low.get(k) {
            return b;
        }
        let mut carry = self.pending;
        let mut resolved = 0;
        for j in self.low.len()..=k {
            let b = self.provider.bit((j as i64 + self.delta) as u64) as i64;
            let total = b + carry;
            resolved = total.rem_euclid(2);
            carry = (total - resolved) >> 1;
        }
        resolved as u8
    }

    /// The units bit.
    pub fn parity(&self) -> u8 {
        self.bit(0)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    /// The value modulo `2^k` as an integer; the reference view used by the
    /// big-integer oracle tests.
    pub fn low_bits(&self, k: usize) -> BigUint {
        let mut bits = Vec::with_capacity(k);
        bits.extend(self.low.iter().take(k).copied());
        let mut carry = self.pending;
        for j in self.low.len()..k {
            let b = self.provider.bit((j as i64 + self.delta) as u64) as i64;
            let total = b + carry;
            let r = total.rem_euclid(2);
            carry = (total - r) >> 1;
            bits.push(r as u8);
        }
        let mut v = BigUint::default();
        for &b in bits.iter().rev() {
            v = (v << 1u8) + b;
        }
        v
    }

    /// `self + 1`.
    pub fn succ(&self) -> Self {
        self.offset(1)
    }

    /// `self - 1`.
    pub fn pred(&self) -> Self {
        self.offset(-1)
    }

    fn offset(&self, delta: i64) -> Self {
        let mut out = self.clone();
        match delta {
            1 => {
                for b in out.low.iter_mut() {
                    if *b == 0 {
                        *b = 1;
                        return out;
                    }
                    *b = 0;
                }
                out.pending += 1;
            }
            -1 => {
                for b in out.low.iter_mut() {
                    if *b == 1 {
                        *b = 0;
                        return out;
                    }
                    *b = 1;
                }
                out.pending -= 1;
            }
            _ => unreachable!(),
        }
        out
    }

    /// `2 * self`: appends a zero as the new units digit.
    pub fn double(&self) -> Self {
        let mut out = self.clone();
        out.low.insert(0, 0);
        out.delta -= 1;
        out
    }

    /// `self / 2`; defined only when the units bit is 0.
    pub fn halve(&self) -> Result<Self> {
        if self.parity() != 0 {
            return Err(Error::Parity("cannot halve an odd dyadic integer".into()));
        }
        let mut out = self.clone();
        if out.low.is_empty() {
            let b = out.provider.bit(out.delta as u64) as i64;
            out.pending = (b + out.pending) >> 1;
        } else {
            out.low.remove(0);
        }
        out.delta += 1;
        Ok(out)
    }
}

impl fmt::Debug for LazyDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: String =
            (0..12).rev().map(|k| char::from(b'0' + self.bit(k))).collect();
        write!(f, "LazyDyadic(...{shown})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn addition_with_carry() {
        // (...0011) + 1 = (...0100)
        let a = LazyDyadic::from_provider(BitProvider::zero_tail("0011").unwrap());
        let b = a.succ();
        assert_eq!(b.low_bits(4), 0b0100u32.into());
        assert_eq!(b.bit(5), 0);
    }

    #[test]
    fn carry_through_infinite_ones() {
        // (...1111) + 1 = (...0000)
        let a = LazyDyadic::from_provider(BitProvider::periodic("", "1").unwrap());
        let b = a.succ();
        assert!(b.low_bits(64).is_zero());
        assert_eq!(b.bit(63), 0);
        // and back down again
        let c = b.pred();
        assert_eq!(c.low_bits(8), 0xffu32.into());
    }

    #[test]
    fn halving_shifts_right() {
        // (...0010) / 2 = (...0001)
        let a = LazyDyadic::from_provider(BitProvider::zero_tail("0010").unwrap());
        let b = a.halve().unwrap();
        assert_eq!(b.low_bits(4), 0b0001u32.into());
    }

    #[test]
    fn halving_odd_is_a_parity_error() {
        let a = LazyDyadic::from_provider(BitProvider::zero_tail("01").unwrap());
        assert!(matches!(a.halve(), Err(Error::Parity(_))));
    }

    #[test]
    fn seeded_bits_are_repeatable() {
        let p = BitProvider::random(42);
        let a = LazyDyadic::from_provider(p.clone());
        let b = LazyDyadic::from_provider(p);
        for k in 0..256 {
            assert_eq!(a.bit(k), b.bit(k));
        }
    }

    #[test]
    fn provider_json_round_trip() {
        for p in [
            BitProvider::zero_tail("0011").unwrap(),
            BitProvider::periodic("01", "10").unwrap(),
            BitProvider::random(7),
        ] {
            let json = serde_json::to_string(&p).unwrap();
            let back: BitProvider = serde_json::from_str(&json).unwrap();
            assert_eq!(p, back);
        }
        let json = serde_json::to_string(&BitProvider::random(7)).unwrap();
        assert_eq!(json, r#"{"kind":"random","suffix":"","seed":7}"#);
    }

    #[test]
    fn periodicity_predicate() {
        assert!(BitProvider::zero_tail("01").unwrap().is_eventually_periodic());
        assert!(BitProvider::periodic("0", "10").unwrap().is_eventually_periodic());
        assert!(!BitProvider::random(3).is_eventually_periodic());
    }
}
