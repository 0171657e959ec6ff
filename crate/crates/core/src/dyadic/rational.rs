use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact dyadic rational `num / 2^exp`, kept in canonical form: the
/// numerator is odd or the exponent is 0. Horizontal positions are always
/// held in this form; they are never rounded to floating point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    /// `num / 2^exp`, reduced to canonical form.
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut r = DyadicRational { num, exp };
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        DyadicRational { num: BigInt::zero(), exp: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        DyadicRational { num: n.into(), exp: 0 }
    }

    /// `2^-depth`, the horizontal step size at the given depth. Negative
    /// depths give integer step sizes.
    pub fn step_size(depth: i64) -> Self {
        if depth >= 0 {
            DyadicRational { num: BigInt::one(), exp: depth as u32 }
        } else {
            DyadicRational { num: BigInt::one() << (-depth) as usize, exp: 0 }
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && !self.num.bit(0) {
            self.num >>= 1;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the canonical form.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduces the value modulo 1 into `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        let den = BigInt::one() << self.exp;
        let mut num = &self.num % &den;
        if num.is_negative() {
            num += &den;
        }
        DyadicRational::new(num, self.exp)
    }

    /// Lossy conversion for reporting; exactness is preserved only by the
    /// rational form itself.
    pub fn to_f64(&self) -> f64 {
        let num = self.num.to_f64().unwrap_or(f64::NAN);
        num / 2f64.powi(self.exp as i32)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = BigInt::one() << self.exp;
        write!(f, "{}/{}", self.num, den)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyadicRational({self})")
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let exp = self.exp.max(rhs.exp);
        let a = &self.num << (exp - self.exp) as usize;
        let b = &rhs.num << (exp - rhs.exp) as usize;
        DyadicRational::new(a + b, exp)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let exp = self.exp.max(rhs.exp);
        let a = &self.num << (exp - self.exp) as usize;
        let b = &rhs.num << (exp - rhs.exp) as usize;
        DyadicRational::new(a - b, exp)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: DyadicRational) -> DyadicRational {
        &self - &rhs
    }
}

impl AddAssign<&DyadicRational> for DyadicRational {
    fn add_assign(&mut self, rhs: &DyadicRational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&DyadicRational> for DyadicRational {
    fn sub_assign(&mut self, rhs: &DyadicRational) {
        *self = &*self - rhs;
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational { num: -self.num, exp: self.exp }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp) as usize;
        let b = &other.num << (exp - other.exp) as usize;
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = DyadicRational::new(4.into(), 4);
        assert_eq!(r.to_string(), "1/4");
        assert_eq!(r.exponent(), 2);
        let z = DyadicRational::new(0.into(), 7);
        assert_eq!(z.to_string(), "0/1");
    }

    #[test]
    fn mixed_exponent_arithmetic_is_exact() {
        let a = DyadicRational::new(1.into(), 2); // 1/4
        let b = DyadicRational::new(1.into(), 5); // 1/32
        assert_eq!((&a + &b).to_string(), "9/32");
        assert_eq!((&a - &b).to_string(), "7/32");
        assert_eq!((&a - &a).to_string(), "0/1");
    }

    #[test]
    fn mod_one_wraps_negatives() {
        let a = DyadicRational::new((-3).into(), 2); // -3/4
        assert_eq!(a.mod_one().to_string(), "1/4");
        let b = DyadicRational::new(9.into(), 2); // 9/4
        assert_eq!(b.mod_one().to_string(), "1/4");
    }

    #[test]
    fn step_sizes() {
        assert_eq!(DyadicRational::step_size(3).to_string(), "1/8");
        assert_eq!(DyadicRational::step_size(0).to_string(), "1/1");
        assert_eq!(DyadicRational::step_size(-2).to_string(), "4/1");
    }
}
