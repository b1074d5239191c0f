//! The base ring A = F_q[T]: polynomials in T with F_q coefficients.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fq::{FieldCtx, FqElem};

/// An element of A = F_q[T]. Coefficients ascend in T and carry no trailing
/// zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FqElem>,
}

impl APoly {
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FqElem>) -> APoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        APoly { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> APoly {
        APoly { ctx: Arc::clone(ctx), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> APoly {
        APoly::constant(ctx, ctx.one())
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: FqElem) -> APoly {
        APoly::from_coeffs(ctx, vec![c])
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> APoly {
        APoly::constant(ctx, ctx.from_int(n))
    }

    /// The monomial c * T^e.
    pub fn monomial(ctx: &Arc<FieldCtx>, c: FqElem, e: usize) -> APoly {
        if c.is_zero() {
            return APoly::zero(ctx);
        }
        let mut coeffs = vec![ctx.zero(); e + 1];
        coeffs[e] = c;
        APoly { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn t(ctx: &Arc<FieldCtx>) -> APoly {
        APoly::monomial(ctx, ctx.one(), 1)
    }

    pub fn t_pow(ctx: &Arc<FieldCtx>, e: usize) -> APoly {
        APoly::monomial(ctx, ctx.one(), e)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of T^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.ctx.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<FqElem> {
        match self.coeffs.len() {
            0 => Some(self.ctx.zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.ctx.one())
    }

    fn assert_same_ctx(&self, other: &APoly) {
        assert!(self.ctx == other.ctx, "mixed field contexts");
    }

    pub fn add(&self, other: &APoly) -> APoly {
        self.assert_same_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i))).collect();
        APoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &APoly) -> APoly {
        self.assert_same_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i))).collect();
        APoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> APoly {
        let coeffs = self.coeffs.iter().map(|c| self.ctx.neg(c)).collect();
        APoly { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn mul(&self, other: &APoly) -> APoly {
        self.assert_same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return APoly::zero(&self.ctx);
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = self.ctx.add(&coeffs[i + j], &self.ctx.mul(a, b));
            }
        }
        APoly { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn scale(&self, c: &FqElem) -> APoly {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect();
        APoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn int_mul(&self, n: i64) -> APoly {
        self.scale(&self.ctx.from_int(n))
    }

    pub fn pow(&self, mut e: u64) -> APoly {
        let mut base = self.clone();
        let mut acc = APoly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The image under the q-power Frobenius: coefficients are raised to the
    /// q-th power (a no-op on F_q) and T-exponents are multiplied by q.
    pub fn frobenius_q(&self) -> APoly {
        let q = self.ctx.q();
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len().saturating_sub(1) * q as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * q as usize] = self.ctx.pow(c, q);
            }
        }
        APoly::from_coeffs(&self.ctx, coeffs)
    }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    pub fn divrem(&self, b: &APoly) -> Result<(APoly, APoly)> {
        self.assert_same_ctx(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.degree().unwrap();
        let lead_inv = self.ctx.inv(b.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((APoly::zero(&self.ctx), self.clone()));
        }
        let mut quo = vec![self.ctx.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = self.ctx.mul(&rem[i], &lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[i - db] = c.clone();
            for (j, m) in b.coeffs.iter().enumerate() {
                let t = self.ctx.mul(&c, m);
                rem[i - db + j] = self.ctx.sub(&rem[i - db + j], &t);
            }
        }
        Ok((APoly::from_coeffs(&self.ctx, quo), APoly::from_coeffs(&self.ctx, rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, b: &APoly) -> Result<APoly> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &APoly) -> APoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).unwrap();
            a = std::mem::replace(&mut b, r);
        }
        a.make_monic()
    }

    /// Scales by the inverse of the leading coefficient (identity on 0).
    pub fn make_monic(&self) -> APoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.ctx.inv(l).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ctx.add(&self.ctx.mul(&acc, x), c);
        }
        acc
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = self.ctx.one();
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let part = if e == 0 {
                let cs = c.to_string();
                if cs.contains('+') && self.coeffs.len() > 1 {
                    format!("({cs})")
                } else {
                    cs
                }
            } else {
                let tpow = if e == 1 { "T".to_string() } else { format!("T^{e}") };
                if *c == one {
                    tpow
                } else {
                    let cs = c.to_string();
                    if cs.contains('+') {
                        format!("({cs})*{tpow}")
                    } else {
                        format!("{cs}*{tpow}")
                    }
                }
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl std::ops::Add for &APoly {
    type Output = APoly;
    fn add(self, rhs: &APoly) -> APoly {
        APoly::add(self, rhs)
    }
}

impl std::ops::Sub for &APoly {
    type Output = APoly;
    fn sub(self, rhs: &APoly) -> APoly {
        APoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &APoly {
    type Output = APoly;
    fn mul(self, rhs: &APoly) -> APoly {
        APoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        APoly::neg(self)
    }
}

/// All monic polynomials of the given degree, in odometer order over the
/// lower coefficients. There are q^deg of them.
pub fn monic_polys(ctx: &Arc<FieldCtx>, deg: usize) -> Vec<APoly> {
    let elements = ctx.elements();
    let q = elements.len();
    let mut out = Vec::with_capacity(q.pow(deg as u32));
    let mut idx = vec![0usize; deg];
    loop {
        let mut coeffs: Vec<FqElem> = idx.iter().map(|&i| elements[i].clone()).collect();
        coeffs.push(ctx.one());
        out.push(APoly::from_coeffs(ctx, coeffs));
        let mut i = 0;
        loop {
            if i == deg {
                return out;
            }
            idx[i] += 1;
            if idx[i] < q {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    #[test]
    fn divrem_t_cubed_by_t_plus_one() {
        let ctx = f3();
        let a = APoly::t_pow(&ctx, 3);
        let b = poly(&ctx, &[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        // T^3 = (T^2 - T + 1)(T + 1) - 1.
        assert_eq!(q, poly(&ctx, &[1, 2, 1]));
        assert_eq!(r, poly(&ctx, &[2]));
    }

    #[test]
    fn divrem_by_zero_fails() {
        let ctx = f3();
        let a = APoly::t(&ctx);
        assert_eq!(a.divrem(&APoly::zero(&ctx)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn exact_division_detects_remainders() {
        let ctx = f3();
        let b = poly(&ctx, &[1, 1]);
        let prod = b.mul(&poly(&ctx, &[2, 0, 1]));
        assert_eq!(prod.exact_div(&b).unwrap(), poly(&ctx, &[2, 0, 1]));
        assert_eq!(
            APoly::t_pow(&ctx, 3).exact_div(&b).unwrap_err(),
            Error::InexactDivision
        );
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let ctx = f3();
        let common = poly(&ctx, &[1, 1]);
        let a = common.mul(&poly(&ctx, &[2, 1])).int_mul(2);
        let b = common.mul(&APoly::t(&ctx));
        assert_eq!(a.gcd(&b), common);
        assert_eq!(APoly::zero(&ctx).gcd(&APoly::zero(&ctx)), APoly::zero(&ctx));
    }

    #[test]
    fn frobenius_spreads_exponents() {
        let ctx = f3();
        let a = poly(&ctx, &[1, 2, 1]); // T^2 + 2T + 1
        let expect = poly(&ctx, &[1, 0, 0, 2, 0, 0, 1]); // T^6 + 2T^3 + 1
        assert_eq!(a.frobenius_q(), expect);
        assert_eq!(a.pow(3), expect);
    }

    #[test]
    fn monic_enumeration_counts() {
        let ctx = f3();
        assert_eq!(monic_polys(&ctx, 0), vec![APoly::one(&ctx)]);
        assert_eq!(monic_polys(&ctx, 1).len(), 3);
        assert_eq!(monic_polys(&ctx, 2).len(), 9);
        assert!(monic_polys(&ctx, 2).iter().all(|p| p.is_monic()));
    }

    #[test]
    fn displays_readably() {
        let ctx = f3();
        assert_eq!(poly(&ctx, &[1, 2, 0, 1]).to_string(), "T^3+2*T+1");
        assert_eq!(APoly::zero(&ctx).to_string(), "0");
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let p = APoly::from_coeffs(
            &f9,
            vec![f9.from_coords(&[1, 1]).unwrap(), f9.gen_x()],
        );
        assert_eq!(p.to_string(), "x*T+(x+1)");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = APoly> {
        prop::collection::vec(0i64..3, 0..=max_deg + 1).prop_map(|coeffs| {
            let ctx = f3();
            APoly::from_coeffs(&ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6)) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), APoly::zero(a.ctx()));
        }

        #[test]
        fn divrem_invariant(a in arb_poly(8), b in arb_poly(4)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }
    }
}
