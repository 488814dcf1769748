//! Double-double reals.
//!
//! A newtype over [`TwoFloat`] that reuses its addition and multiplication but
//! replaces division: twofloat 0.8 forms the residual `1 - hi * (1/hi)` in plain
//! f64, which rounds to zero and leaves quotients at double precision.

use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};
use twofloat::TwoFloat;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Dd(pub TwoFloat);

impl Dd {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    pub fn abs(self) -> Self {
        Dd(self.0.abs())
    }

    pub fn sqrt(self) -> Self {
        let s = self.0.sqrt();
        // one Newton step; twofloat's sqrt has the same division weakness
        let s = Dd(s);
        if s.hi() == 0.0 {
            return s;
        }
        (s + self / s) * Dd::from(0.5)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd(TwoFloat::from(x))
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> f64 {
        f64::from(x.0)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        Dd(self.0 + rhs.0)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        Dd(self.0 - rhs.0)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        Dd(self.0 * rhs.0)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let b = rhs.0;
        let q1 = self.0.hi() / b.hi();
        let r = self.0 - b * q1;
        let q2 = r.hi() / b.hi();
        let r = r - b * q2;
        let q3 = r.hi() / b.hi();
        Dd(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, rhs: Dd) -> Dd {
        let quotient = Dd((self / rhs).0.trunc());
        self - quotient * rhs
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::from(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::from(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_double_double() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        let back = third * Dd::from(3.0) - Dd::from(1.0);
        assert!(f64::from(back).abs() < 1e-32);
        let x = Dd::from(0.1) / Dd::from(7.0);
        let err = (x * x) / x - x;
        assert!(f64::from(err).abs() < 1e-33);
    }

    #[test]
    fn square_root() {
        let s = Dd::from(2.0).sqrt();
        assert!(f64::from(s * s - Dd::from(2.0)).abs() < 1e-31);
    }
}
