use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One, Zero};

use super::poly::{gcd, rat_int, Poly, Rat, Var};
use super::ExactError;

/// Element of ℚ(params) in canonical form: coprime numerator and
/// denominator, denominator with leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_poly(Poly::constant(rat_int(n)))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::from_rat(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rat(c: Rat) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn param(name: &str) -> Self {
        Scalar::from_poly(Poly::var(Var::named(name)))
    }

    /// Canonical form of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Scalar, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(Scalar::from_poly(num.scale(&c.recip())));
        }
        let (num, den) = if num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().recip();
        Ok(Scalar {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    fn canonical(num: Poly, den: Poly) -> Scalar {
        Scalar::normalize(num, den).expect("denominator is a product of nonzero polynomials")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value when no parameter occurs.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Scalar::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Replace parameters by rational functions.
    pub fn substitute(&self, values: &[(Var, Scalar)]) -> Result<Scalar, ExactError> {
        let eval = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut t = Scalar::from_rat(c.clone());
                for &(v, e) in m.factors() {
                    let base = values
                        .iter()
                        .find(|(w, _)| *w == v)
                        .map_or_else(|| Scalar::from_poly(Poly::var(v)), |(_, s)| s.clone());
                    t = &t * &base.pow(e);
                }
                acc = &acc + &t;
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    pub fn sign(&self, negative: bool) -> Scalar {
        if negative {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::canonical(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let q = |p: &Poly, g: &Poly| p.div_exact(g).expect("gcd divides");
        let num = q(&self.num, &g1).mul(&q(&rhs.num, &g2));
        let den = q(&self.den, &g2).mul(&q(&rhs.den, &g1));
        let lc = den.leading_coeff().recip();
        Scalar {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the rational types it wraps.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.terms().len() > 1
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if needs_parens(&self.num) {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let bare = self.den.terms().len() == 1
            && self.den.terms()[0].1.is_one()
            && self.den.terms()[0].0.factors().len() == 1;
        let d = if bare {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{n}/{d}")
    }
}
