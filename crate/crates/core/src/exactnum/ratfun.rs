use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, NumError, Poly};

/// Order of vanishing at `t = 0`; `Infinite` only for the zero function.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

/// Element of ℚ(i)(t) kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, NumError> {
        if den.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(RatFun { num, den }.normalized())
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        let g = Poly::gcd(&self.num, &self.den);
        let (num, _) = self.num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = self.den.div_rem(&g).expect("gcd is nonzero");
        let lead = den.leading().expect("nonzero denominator").inv().expect("nonzero");
        RatFun { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn normalize(&self) -> Self {
        self.clone().normalized()
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::constant(GaussianRational::one())
    }

    pub fn t() -> Self {
        RatFun::from_poly(Poly::t())
    }

    pub fn constant(c: GaussianRational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The embedded Gaussian rational, if this function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFun) -> Result<Self, NumError> {
        Ok(self * &o.inv()?)
    }

    pub fn powi(&self, k: i32) -> Result<Self, NumError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(RatFun::one(), |acc, _| &acc * &base))
    }

    pub fn valuation_at_zero(&self) -> Valuation {
        match (self.num.valuation(), self.den.valuation()) {
            (None, _) => Valuation::Infinite,
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }

    pub fn limit_at_zero(&self) -> Result<GaussianRational, NumError> {
        match self.valuation_at_zero() {
            Valuation::Infinite => Ok(GaussianRational::zero()),
            Valuation::Finite(v) if v < 0 => Err(NumError::PoleAtZero),
            Valuation::Finite(v) if v > 0 => Ok(GaussianRational::zero()),
            Valuation::Finite(_) => {
                let a = self.num.valuation().unwrap_or(0);
                let b = self.den.valuation().unwrap_or(0);
                self.num.coeff(a).checked_div(&self.den.coeff(b))
            }
        }
    }

    pub fn evaluate_at(&self, v: &GaussianRational) -> Result<GaussianRational, NumError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(NumError::EvalAtPole);
        }
        self.num.eval(v).checked_div(&d)
    }

    /// `f(t²)`, used when a witness is written in `√t`.
    pub fn substitute_square(&self) -> Self {
        RatFun { num: self.num.substitute_square(), den: self.den.substitute_square() }.normalized()
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun { num: &self.num + &o.num, den: self.den.clone() }.normalized();
        }
        RatFun { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }.normalized()
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: &self.num * &o.num, den: &self.den * &o.den }.normalized()
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

super::forward_owned_ops!(RatFun);

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return match self.num.coeffs().len() {
                0 | 1 => write!(f, "{}", self.num),
                _ => write!(f, "({})", self.num),
            };
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}
