//! Scalar types.
//!
//! Everything public works in [`ComplexScalar`] (IEEE double complex). A few
//! checks whose integrands cancel by many orders of magnitude run the same
//! generic kernels in [`WideScalar`], a double-double complex type with about
//! 32 significant digits.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use twofloat::consts;

use super::dd::Dd;

use crate::error::{QError, Result};

pub type ComplexScalar = Complex64;
pub type WideScalar = Complex<Dd>;

/// Field operations needed by the generic product, series and quadrature kernels.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Unit roundoff of the underlying real type.
    const EPSILON: f64;

    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    /// |self| rounded to double.
    fn modulus(self) -> f64;
    /// exp(2 pi i num / den), accurate to the working precision.
    fn unit_root(num: u64, den: u64) -> Self;

    fn from_real(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }
    fn zero() -> Self {
        Self::from_real(0.0)
    }
    fn one() -> Self {
        Self::from_real(1.0)
    }
    fn is_finite(self) -> bool {
        let z = self.to_c64();
        z.re.is_finite() && z.im.is_finite()
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Complex64 {
    const EPSILON: f64 = f64::EPSILON;

    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn unit_root(num: u64, den: u64) -> Self {
        let r = num % den;
        let theta = std::f64::consts::TAU * (r as f64) / (den as f64);
        Complex64::from_polar(1.0, theta)
    }
}

impl Scalar for Complex<Dd> {
    const EPSILON: f64 = 1.0e-32;

    fn from_c64(z: Complex64) -> Self {
        Complex::new(Dd::from(z.re), Dd::from(z.im))
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(f64::from(self.re), f64::from(self.im))
    }
    fn modulus(self) -> f64 {
        self.to_c64().norm()
    }
    fn unit_root(num: u64, den: u64) -> Self {
        wide_unit_root(num, den)
    }
}

/// exp(2 pi i num/den) in double-double: exact octant rotation followed by a
/// Taylor series on |delta| <= pi/8.
fn wide_unit_root(num: u64, den: u64) -> WideScalar {
    assert!(den > 0 && den < (1 << 52), "unit root denominator out of range");
    let r = (num % den) as i128;
    let d = den as i128;
    let k = (8 * r + d / 2) / d;
    let m = 8 * r - k * d;
    let delta = Dd(consts::FRAC_PI_4) * Dd::from(m as f64) / Dd::from(den as f64);

    let one = Dd::from(1.0);
    let zero = Dd::from(0.0);
    let mut c = one;
    let mut s = zero;
    let mut term = one;
    let d2 = delta * delta;
    let mut odd = delta;
    s = s + odd;
    for j in 1..30 {
        let jf = j as f64;
        term = -term * d2 / Dd::from((2.0 * jf - 1.0) * (2.0 * jf));
        odd = -odd * d2 / Dd::from((2.0 * jf) * (2.0 * jf + 1.0));
        c = c + term;
        s = s + odd;
        if f64::from(term).abs() < 1e-36 && f64::from(odd).abs() < 1e-36 {
            break;
        }
    }
    let h = Dd(consts::FRAC_1_SQRT_2);
    let rot = match k {
        0 | 8 => Complex::new(one, zero),
        1 => Complex::new(h, h),
        2 => Complex::new(zero, one),
        3 => Complex::new(-h, h),
        4 => Complex::new(-one, zero),
        5 => Complex::new(-h, -h),
        6 => Complex::new(zero, -one),
        _ => Complex::new(h, -h),
    };
    rot * Complex::new(c, s)
}

/// Rejects NaN/Inf with an error naming the producing routine.
pub fn ensure_finite<T: Scalar>(value: T, origin: &'static str) -> Result<T> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(QError::NonFinite(origin))
    }
}

/// Parses `0.3`, `-2e-3`, `0.3+0.1i`, `1-i`, `2.5i` (also accepts `j`).
pub fn parse_complex(text: &str) -> Result<ComplexScalar> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(QError::InvalidArgument("empty scalar literal".into()));
    }
    let bad = || QError::InvalidArgument(format!("cannot parse `{text}` as a complex number"));
    let value = if let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().map_err(|_| bad())? };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| bad())?,
        };
        Complex64::new(re, im)
    } else {
        Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(QError::InvalidArgument(format!("`{text}` is not finite")))
    }
}

/// Formats a scalar the way [`parse_complex`] reads it.
pub fn format_complex(z: ComplexScalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
