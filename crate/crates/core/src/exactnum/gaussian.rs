use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::NumError;

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text: `0`, `3/2`, `-i`, `1/2*i`, `(1-2*i)`. Always re-parses to the same value.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &BigRational| -> String {
            let a = q.abs();
            if a.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&a))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{}{}", sign, im_part(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{})", fmt_rational(&self.re), sign, im_part(&self.im))
            }
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, BigRational::zero());
        }
        GaussianRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] otherwise.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

super::forward_owned_ops!(GaussianRational);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = GaussianRational::complex((1, 2), (3, 1));
        let b = GaussianRational::complex((-2, 1), (1, 3));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a - &a, GaussianRational::zero());
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::complex((1, 1), (-2, 1)).to_string(), "(1-2*i)");
        assert_eq!(GaussianRational::complex((0, 1), (1, 2)).to_string(), "1/2*i");
    }
}
