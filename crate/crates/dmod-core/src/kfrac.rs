//! The fraction field K = F_q(T), kept in lowest terms with monic denominator.

use std::fmt;
use std::sync::Arc;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;

/// An element of K = Frac(A). Invariants: gcd(num, den) = 1, den is monic,
/// and zero is stored as 0/1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFrac {
    num: APoly,
    den: APoly,
}

impl KFrac {
    pub fn new(num: APoly, den: APoly) -> Result<KFrac> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KFrac::reduce(num, den))
    }

    fn reduce(num: APoly, den: APoly) -> KFrac {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return KFrac { num: APoly::zero(&ctx), den: APoly::one(&ctx) };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        // Normalize to a monic denominator.
        let lead = den.leading().unwrap().clone();
        if lead == ctx.one() {
            KFrac { num, den }
        } else {
            let inv = ctx.inv(&lead).unwrap();
            KFrac { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_apoly(a: APoly) -> KFrac {
        let one = APoly::one(a.ctx());
        KFrac { num: a, den: one }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> KFrac {
        KFrac::from_apoly(APoly::zero(ctx))
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> KFrac {
        KFrac::from_apoly(APoly::one(ctx))
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> KFrac {
        KFrac::from_apoly(APoly::from_int(ctx, n))
    }

    pub fn num(&self) -> &APoly {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying A-element, if the denominator is 1.
    pub fn as_apoly(&self) -> Option<&APoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &KFrac) -> KFrac {
        if self.den.is_one() && other.den.is_one() {
            return KFrac::from_apoly(self.num.add(&other.num));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        KFrac::reduce(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &KFrac) -> KFrac {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KFrac {
        KFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &KFrac) -> KFrac {
        if self.den.is_one() && other.den.is_one() {
            return KFrac::from_apoly(self.num.mul(&other.num));
        }
        KFrac::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<KFrac> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KFrac::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &KFrac) -> Result<KFrac> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn int_mul(&self, n: i64) -> KFrac {
        KFrac { num: self.num.int_mul(n), den: self.den.clone() }
    }
}

impl fmt::Display for KFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::ops::Add for &KFrac {
    type Output = KFrac;
    fn add(self, rhs: &KFrac) -> KFrac {
        KFrac::add(self, rhs)
    }
}

impl std::ops::Sub for &KFrac {
    type Output = KFrac;
    fn sub(self, rhs: &KFrac) -> KFrac {
        KFrac::sub(self, rhs)
    }
}

impl std::ops::Mul for &KFrac {
    type Output = KFrac;
    fn mul(self, rhs: &KFrac) -> KFrac {
        KFrac::mul(self, rhs)
    }
}

impl std::ops::Neg for &KFrac {
    type Output = KFrac;
    fn neg(self) -> KFrac {
        KFrac::neg(self)
    }
}
