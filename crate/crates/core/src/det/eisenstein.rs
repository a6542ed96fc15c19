use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `x + y·ω` with `ω = e^{2πi/3}`, so `ω² = −1 − ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInt {
    pub x: BigInt,
    pub y: BigInt,
}

impl EisensteinInt {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        EisensteinInt {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => Self::new(-1, -1),
        }
    }

    /// `|x + yω|² = x² − xy + y²`.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x - &self.x * &self.y + &self.y * &self.y
    }

    /// `a + bω + cω²` for integers `a, b, c`.
    pub fn from_triple(a: &BigInt, b: &BigInt, c: &BigInt) -> Self {
        EisensteinInt { x: a - c, y: b - c }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: &EisensteinInt) -> EisensteinInt {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let bd = &self.y * &o.y;
        EisensteinInt {
            x: &self.x * &o.x - &bd,
            y: &self.x * &o.y + &self.y * &o.x - bd,
        }
    }
}
