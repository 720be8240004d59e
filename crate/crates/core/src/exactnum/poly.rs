use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, NumError};

/// Polynomial in one variable over ℚ(i), stored densely by exponent.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    /// `c·t^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn t() -> Self {
        Poly::monomial(GaussianRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.coeffs.len() {
            0 => Some(GaussianRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Least exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, v: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * v) + c)
    }

    /// `p(t²)`.
    pub fn substitute_square(&self) -> Poly {
        let mut coeffs = vec![GaussianRational::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), NumError> {
        let dl = d.leading().ok_or(NumError::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &dl;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&q * c);
            }
            quot[k] = q;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

super::forward_owned_ops!(Poly);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() && c.re < num::BigRational::from_integer(0.into()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", k),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (_, true) => write!(f, "{}", var)?,
                _ => write!(f, "{}*{}", mag, var)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    #[test]
    fn product_expands() {
        // (1 - t)(1 + t) = 1 - t²
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[1, 1]) * &p(&[-2, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[1, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn valuation_and_display() {
        assert_eq!(p(&[0, 0, 3]).valuation(), Some(2));
        assert_eq!(Poly::zero().valuation(), None);
        assert_eq!(p(&[1, 0, -2]).to_string(), "-2*t^2 + 1");
    }
}
