use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::{Poly, Rational, Scalar};
use crate::error::{Error, Result};

/// Element of ℚ(ε): a reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct EpsScalar {
    num: Poly,
    den: Poly,
}

impl EpsScalar {
    /// Builds `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in ℚ(ε)");
        if num.is_zero() {
            return EpsScalar::zero();
        }
        if den.is_constant() {
            let inv = den.leading().unwrap().recip();
            return EpsScalar {
                num: num.scale(&inv),
                den: Poly::constant(super::q(1)),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().recip();
        EpsScalar {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        EpsScalar {
            num: p,
            den: Poly::constant(super::q(1)),
        }
    }

    /// The formal parameter ε itself.
    pub fn eps() -> Self {
        EpsScalar::from_poly(Poly::eps())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Substitutes ε = `value`.
    pub fn eval(&self, value: &Rational) -> Result<Rational> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::Pole(super::fmt_rational(value)));
        }
        Ok(self.num.eval(value) / d)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = EpsScalar::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Zero for EpsScalar {
    fn zero() -> Self {
        EpsScalar {
            num: Poly::zero(),
            den: Poly::constant(super::q(1)),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for EpsScalar {
    fn one() -> Self {
        EpsScalar::from_poly(Poly::constant(super::q(1)))
    }
}

impl Add for EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: EpsScalar) -> EpsScalar {
        if self.den == rhs.den {
            return EpsScalar::new(&self.num + &rhs.num, self.den);
        }
        EpsScalar::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: EpsScalar) -> EpsScalar {
        self + (-rhs)
    }
}

impl Neg for EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: EpsScalar) -> EpsScalar {
        if self.is_zero() || rhs.is_zero() {
            return EpsScalar::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return EpsScalar::from_poly(&self.num * &rhs.num);
        }
        EpsScalar::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for EpsScalar {
    type Output = EpsScalar;
    fn div(self, rhs: EpsScalar) -> EpsScalar {
        assert!(!rhs.is_zero(), "division by zero in ℚ(ε)");
        EpsScalar::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Scalar for EpsScalar {
    fn from_rational(q: &Rational) -> Self {
        EpsScalar::from_poly(Poly::constant(q.clone()))
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{q, qf};

    #[test]
    fn reduces_common_factors() {
        let e = EpsScalar::eps();
        let one = EpsScalar::one();
        // (ε² - 1) / (ε - 1) = ε + 1
        let x = (e.clone() * e.clone() - one.clone()) / (e.clone() - one.clone());
        assert_eq!(x, e + one);
    }

    #[test]
    fn eval_and_poles() {
        let e = EpsScalar::eps();
        let x = EpsScalar::one() / (e.clone() - EpsScalar::from_rational(&qf(1, 2)));
        assert_eq!(x.eval(&q(1)).unwrap(), q(2));
        assert!(matches!(x.eval(&qf(1, 2)), Err(Error::Pole(_))));
    }

    #[test]
    fn field_axioms_spot_check() {
        let e = EpsScalar::eps();
        let a = e.clone() * e.clone() + EpsScalar::from_rational(&q(3));
        let b = EpsScalar::one() / (e.clone() + EpsScalar::one());
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(a.clone() - a.clone(), EpsScalar::zero());
        assert_eq!(a.clone() + b.clone(), b + a);
    }
}
