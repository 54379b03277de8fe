//! Arbitrary-precision unsigned integers with bit addressing.
//!
//! [`BitNum`] stores its value as little-endian 64-bit limbs with no trailing
//! zero limbs, so `bit(0)` is the least significant bit and zero owns no
//! storage at all.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, BitAnd, BitOr, BitXor, Shl, Shr};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const LIMB_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitNumError {
    #[error("subtraction underflow: subtrahend exceeds minuend")]
    Underflow,
    #[error("invalid {radix} literal {literal:?}")]
    Parse { radix: &'static str, literal: String },
}

/// Unsigned integer of unbounded width.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitNum {
    limbs: Vec<u64>,
}

impl BitNum {
    pub const fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from(1u64)
    }

    fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Self { limbs }
    }

    /// Builds a value from bits given least significant first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut limbs = Vec::new();
        for (i, bit) in bits.into_iter().enumerate() {
            if i % LIMB_BITS == 0 {
                limbs.push(0);
            }
            if bit {
                *limbs.last_mut().unwrap() |= 1 << (i % LIMB_BITS);
            }
        }
        Self::from_limbs(limbs)
    }

    /// `2^m - 1`, the all-ones operand of width `m`.
    pub fn ones(m: usize) -> Self {
        let mut limbs = vec![u64::MAX; m / LIMB_BITS];
        if !m.is_multiple_of(LIMB_BITS) {
            limbs.push((1u64 << (m % LIMB_BITS)) - 1);
        }
        Self::from_limbs(limbs)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Position of the highest set bit plus one; zero for the value zero.
    pub fn bit_length(&self) -> usize {
        match self.limbs.last() {
            None => 0,
            Some(top) => self.limbs.len() * LIMB_BITS - top.leading_zeros() as usize,
        }
    }

    /// Bit `i`; positions at or above `bit_length` read as zero.
    pub fn bit(&self, i: usize) -> bool {
        self.limbs
            .get(i / LIMB_BITS)
            .is_some_and(|limb| (limb >> (i % LIMB_BITS)) & 1 == 1)
    }

    /// Hamming weight.
    pub fn weight(&self) -> u64 {
        self.limbs.iter().map(|l| u64::from(l.count_ones())).sum()
    }

    /// Canonical-form check: no zero limb at the top.
    pub fn is_canonical(&self) -> bool {
        self.limbs.last() != Some(&0)
    }

    /// Iterates the positions of set bits in ascending order.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(w, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * LIMB_BITS + tz)
            })
        })
    }

    /// Keeps the low `width` bits.
    pub fn low_bits(&self, width: usize) -> Self {
        let full = width / LIMB_BITS;
        if full >= self.limbs.len() {
            return self.clone();
        }
        let mut limbs = self.limbs[..full].to_vec();
        let rem = width % LIMB_BITS;
        if rem != 0 {
            limbs.push(self.limbs[full] & ((1u64 << rem) - 1));
        }
        Self::from_limbs(limbs)
    }

    /// Bits `[lo, lo + width)` as a new value.
    pub fn extract(&self, lo: usize, width: usize) -> Self {
        (self >> lo).low_bits(width)
    }

    /// `self & !other`.
    pub fn and_not(&self, other: &BitNum) -> Self {
        let limbs = self
            .limbs
            .iter()
            .enumerate()
            .map(|(i, &l)| l & !other.limbs.get(i).copied().unwrap_or(0))
            .collect();
        Self::from_limbs(limbs)
    }

    /// `self - other`, failing when `other > self`.
    pub fn checked_sub(&self, other: &BitNum) -> Result<Self, BitNumError> {
        if self < other {
            return Err(BitNumError::Underflow);
        }
        let mut limbs = self.limbs.clone();
        let mut borrow = false;
        for (i, limb) in limbs.iter_mut().enumerate() {
            let rhs = other.limbs.get(i).copied().unwrap_or(0);
            if rhs == 0 && !borrow {
                if i >= other.limbs.len() {
                    break;
                }
                continue;
            }
            let (d1, b1) = limb.overflowing_sub(rhs);
            let (d2, b2) = d1.overflowing_sub(u64::from(borrow));
            *limb = d2;
            borrow = b1 || b2;
        }
        debug_assert!(!borrow);
        Ok(Self::from_limbs(limbs))
    }

    /// Uniform value of at most `m` bits drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut limbs: Vec<u64> = (0..m.div_ceil(LIMB_BITS)).map(|_| rng.gen()).collect();
        if !m.is_multiple_of(LIMB_BITS) {
            if let Some(top) = limbs.last_mut() {
                *top &= (1u64 << (m % LIMB_BITS)) - 1;
            }
        }
        Self::from_limbs(limbs)
    }

    /// Zero-padded binary digits, most significant first, at least `width` wide.
    pub fn to_binary_padded(&self, width: usize) -> String {
        let len = self.bit_length().max(width).max(1);
        (0..len).rev().map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }

    fn mul_small_add(&mut self, mul: u64, add: u64) {
        let mut carry = add as u128;
        for limb in &mut self.limbs {
            let t = (*limb as u128) * (mul as u128) + carry;
            *limb = t as u64;
            carry = t >> 64;
        }
        if carry != 0 {
            self.limbs.push(carry as u64);
        }
        let norm = std::mem::take(&mut self.limbs);
        *self = Self::from_limbs(norm);
    }

    fn divrem_small(&self, div: u64) -> (Self, u64) {
        let mut rem = 0u128;
        let mut q = vec![0u64; self.limbs.len()];
        for (i, &limb) in self.limbs.iter().enumerate().rev() {
            let cur = (rem << 64) | limb as u128;
            q[i] = (cur / div as u128) as u64;
            rem = cur % div as u128;
        }
        (Self::from_limbs(q), rem as u64)
    }

    fn parse_radix(digits: &str, radix: u32, name: &'static str) -> Result<Self, BitNumError> {
        let err = || BitNumError::Parse {
            radix: name,
            literal: digits.to_string(),
        };
        let mut out = Self::zero();
        let mut seen = false;
        for c in digits.chars() {
            if c == '_' {
                continue;
            }
            let d = c.to_digit(radix).ok_or_else(err)?;
            out.mul_small_add(u64::from(radix), u64::from(d));
            seen = true;
        }
        if !seen {
            return Err(err());
        }
        Ok(out)
    }
}

/// Deterministic uniform value of at most `m` bits for `seed`.
pub fn random_bitnum(m: usize, seed: u64) -> BitNum {
    BitNum::random(m, &mut ChaCha8Rng::seed_from_u64(seed))
}

impl From<u64> for BitNum {
    fn from(v: u64) -> Self {
        Self::from_limbs(vec![v])
    }
}

impl From<u128> for BitNum {
    fn from(v: u128) -> Self {
        Self::from_limbs(vec![v as u64, (v >> 64) as u64])
    }
}

impl Ord for BitNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BitNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AddAssign<&BitNum> for BitNum {
    fn add_assign(&mut self, rhs: &BitNum) {
        if self.limbs.len() < rhs.limbs.len() {
            self.limbs.resize(rhs.limbs.len(), 0);
        }
        let mut carry = false;
        for (i, limb) in self.limbs.iter_mut().enumerate() {
            let r = rhs.limbs.get(i).copied().unwrap_or(0);
            if i >= rhs.limbs.len() && !carry {
                break;
            }
            let (s1, c1) = limb.overflowing_add(r);
            let (s2, c2) = s1.overflowing_add(u64::from(carry));
            *limb = s2;
            carry = c1 || c2;
        }
        if carry {
            self.limbs.push(1);
        }
    }
}

impl Add<&BitNum> for &BitNum {
    type Output = BitNum;

    fn add(self, rhs: &BitNum) -> BitNum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BitNum {
    type Output = BitNum;

    fn add(mut self, rhs: BitNum) -> BitNum {
        self += &rhs;
        self
    }
}

impl Shl<usize> for &BitNum {
    type Output = BitNum;

    fn shl(self, s: usize) -> BitNum {
        if self.is_zero() {
            return BitNum::zero();
        }
        let (words, bits) = (s / LIMB_BITS, s % LIMB_BITS);
        let mut limbs = vec![0u64; words];
        limbs.reserve(self.limbs.len() + 1);
        if bits == 0 {
            limbs.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0u64;
            for &l in &self.limbs {
                limbs.push((l << bits) | carry);
                carry = l >> (LIMB_BITS - bits);
            }
            limbs.push(carry);
        }
        BitNum::from_limbs(limbs)
    }
}

impl Shl<usize> for BitNum {
    type Output = BitNum;

    fn shl(self, s: usize) -> BitNum {
        &self << s
    }
}

impl Shr<usize> for &BitNum {
    type Output = BitNum;

    fn shr(self, s: usize) -> BitNum {
        let (words, bits) = (s / LIMB_BITS, s % LIMB_BITS);
        if words >= self.limbs.len() {
            return BitNum::zero();
        }
        let src = &self.limbs[words..];
        let limbs = if bits == 0 {
            src.to_vec()
        } else {
            (0..src.len())
                .map(|i| {
                    let hi = src.get(i + 1).map_or(0, |h| h << (LIMB_BITS - bits));
                    (src[i] >> bits) | hi
                })
                .collect()
        };
        BitNum::from_limbs(limbs)
    }
}

macro_rules! bitwise {
    ($tr:ident, $f:ident, $op:tt, $union:expr) => {
        impl $tr<&BitNum> for &BitNum {
            type Output = BitNum;

            fn $f(self, rhs: &BitNum) -> BitNum {
                let len = if $union {
                    self.limbs.len().max(rhs.limbs.len())
                } else {
                    self.limbs.len().min(rhs.limbs.len())
                };
                let limbs = (0..len)
                    .map(|i| {
                        self.limbs.get(i).copied().unwrap_or(0) $op rhs.limbs.get(i).copied().unwrap_or(0)
                    })
                    .collect();
                BitNum::from_limbs(limbs)
            }
        }
    };
}

bitwise!(BitAnd, bitand, &, false);
bitwise!(BitOr, bitor, |, true);
bitwise!(BitXor, bitxor, ^, true);

impl fmt::Display for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const CHUNK: u64 = 10_000_000_000_000_000_000;
        if self.is_zero() {
            return f.pad_integral(true, "", "0");
        }
        let mut chunks = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.divrem_small(CHUNK);
            chunks.push(r);
            rest = q;
        }
        let mut s = chunks.pop().unwrap().to_string();
        for c in chunks.iter().rev() {
            s.push_str(&format!("{c:019}"));
        }
        f.pad_integral(true, "", &s)
    }
}

impl fmt::Binary for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad_integral(true, "0b", &self.to_binary_padded(1))
    }
}

impl fmt::LowerHex for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, limb) in self.limbs.iter().rev().enumerate() {
            if i == 0 {
                s.push_str(&format!("{limb:x}"));
            } else {
                s.push_str(&format!("{limb:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        f.pad_integral(true, "0x", &s)
    }
}

impl fmt::Debug for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitNum({self:#x})")
    }
}

/// Accepts `0b…`, `0x…`, or plain decimal; `_` separators are ignored.
impl FromStr for BitNum {
    type Err = BitNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("0b").or_else(|| s.strip_prefix("0B")) {
            Self::parse_radix(rest, 2, "binary")
        } else if let Some(rest) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            Self::parse_radix(rest, 16, "hexadecimal")
        } else {
            Self::parse_radix(s, 10, "decimal")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitNum {
        s.parse().unwrap()
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(&BitNum::zero() + &b("0b1101"), b("0b1101"));
        assert_eq!(&b("0b101") + &b("0b011"), b("0b1000"));
        assert_eq!(b("0b1000").checked_sub(&b("0b011")).unwrap(), b("0b101"));
        let y = b("0xdeadbeefcafebabe1234");
        assert!(y.checked_sub(&y).unwrap().is_zero());
        assert_eq!(b("0b10").checked_sub(&b("0b11")), Err(BitNumError::Underflow));
    }

    #[test]
    fn shifts() {
        let x = b("0b1011");
        assert_eq!(&x << 0, x);
        assert_eq!(&BitNum::one() << 5, b("0b100000"));
        let toy = b("0b101010100011");
        assert_eq!(format!("{:b}", &toy << 6), "101010100011000000");
        assert_eq!(&(&toy << 70) >> 70, toy);
        assert!((&BitNum::zero() << 100).is_zero());
    }

    #[test]
    fn zero_is_empty() {
        let z = BitNum::zero();
        assert_eq!(z.bit_length(), 0);
        assert_eq!(z.weight(), 0);
        assert!(!z.bit(1000));
        assert!(z.is_canonical());
        assert_eq!(z.to_string(), "0");
        assert_eq!(format!("{z:#b}"), "0b0");
        assert_eq!(random_bitnum(0, 7), z);
    }

    #[test]
    fn toy_weight() {
        assert_eq!(b("0b101010100011").weight(), 6);
        assert_eq!(b("0b101010100011").bit_length(), 12);
    }

    #[test]
    fn bit_access_and_extract() {
        let x = b("0b101010100011");
        assert!(x.bit(0) && x.bit(1) && !x.bit(2) && x.bit(11) && !x.bit(12));
        assert_eq!(x.extract(6, 6), b("0b101010"));
        assert_eq!(x.low_bits(6), b("0b100011"));
        assert_eq!(x.ones_positions().collect::<Vec<_>>(), vec![0, 1, 5, 7, 9, 11]);
        assert_eq!(BitNum::ones(70).weight(), 70);
    }

    #[test]
    fn text_forms() {
        let x = b("123456789012345678901234567890");
        assert_eq!(x.to_string(), "123456789012345678901234567890");
        assert_eq!(format!("{x:#x}").parse::<BitNum>().unwrap(), x);
        assert_eq!(format!("{x:#b}").parse::<BitNum>().unwrap(), x);
        assert!("0b102".parse::<BitNum>().is_err());
        assert!("0x".parse::<BitNum>().is_err());
        assert!("".parse::<BitNum>().is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_bitnum(64, 99), random_bitnum(64, 99));
        assert_ne!(random_bitnum(64, 99), random_bitnum(64, 100));
        assert!(random_bitnum(13, 1).bit_length() <= 13);
    }
}
