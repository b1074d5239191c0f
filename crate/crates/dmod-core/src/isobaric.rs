//! Isobaric polynomials in the two weight q-1 generators.
//!
//! A weight w(q-1) isobaric polynomial is sum over j of c_j U^(w-j) V^j,
//! stored as the coefficient vector indexed by the V-degree j. U stands for
//! Delta_W and V for Delta_T. Because every monomial has total degree w the
//! vector determines the polynomial, and multiplication is univariate
//! convolution.

use std::fmt;

use crate::apoly::APoly;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct IsobaricPoly<C: Coeff> {
    ctx: C::Ctx,
    weight: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> IsobaricPoly<C> {
    /// Weight per generator, q - 1.
    fn step(ctx: &C::Ctx) -> i64 {
        C::field_ctx(ctx).q() as i64 - 1
    }

    /// Builds the polynomial with the given isobaric weight from the
    /// coefficients of V^0 .. V^w. The weight must be a nonnegative multiple
    /// of q - 1 and unlock exactly the supplied number of coefficients.
    pub fn new(ctx: &C::Ctx, weight: i64, coeffs: Vec<C>) -> Result<IsobaricPoly<C>> {
        let step = Self::step(ctx);
        if weight < 0 || weight % step != 0 {
            return Err(Error::Invalid(format!(
                "isobaric weight {weight} is not a nonnegative multiple of {step}"
            )));
        }
        let w = (weight / step) as usize;
        if coeffs.len() != w + 1 {
            return Err(Error::Invalid(format!(
                "weight {weight} needs {} coefficients, got {}",
                w + 1,
                coeffs.len()
            )));
        }
        Ok(IsobaricPoly { ctx: ctx.clone(), weight, coeffs })
    }

    pub fn zero(ctx: &C::Ctx, weight: i64) -> IsobaricPoly<C> {
        let w = (weight / Self::step(ctx)) as usize;
        IsobaricPoly { ctx: ctx.clone(), weight, coeffs: vec![C::zero(ctx); w + 1] }
    }

    pub fn one(ctx: &C::Ctx) -> IsobaricPoly<C> {
        IsobaricPoly { ctx: ctx.clone(), weight: 0, coeffs: vec![C::one(ctx)] }
    }

    /// The product U V, the image of E_T^(q-1).
    pub fn uv(ctx: &C::Ctx) -> IsobaricPoly<C> {
        let coeffs = vec![C::zero(ctx), C::one(ctx), C::zero(ctx)];
        IsobaricPoly { ctx: ctx.clone(), weight: 2 * Self::step(ctx), coeffs }
    }

    /// A single monomial c U^(w-j) V^j.
    pub fn monomial(ctx: &C::Ctx, w: usize, j: usize, c: C) -> IsobaricPoly<C> {
        assert!(j <= w, "V-degree beyond total degree");
        let mut coeffs = vec![C::zero(ctx); w + 1];
        coeffs[j] = c;
        IsobaricPoly { ctx: ctx.clone(), weight: w as i64 * Self::step(ctx), coeffs }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Total degree w in (U, V).
    pub fn total_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of U^(w-j) V^j.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest and largest V-degree carrying a nonzero coefficient.
    pub fn vdeg_range(&self) -> Option<(usize, usize)> {
        let lo = self.coeffs.iter().position(|c| !c.is_zero())?;
        let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        Some((lo, hi))
    }

    /// Largest e with U^e dividing the polynomial (None when zero).
    pub fn u_content(&self) -> Option<usize> {
        self.vdeg_range().map(|(_, hi)| self.total_degree() - hi)
    }

    /// Largest e with V^e dividing the polynomial (None when zero).
    pub fn v_content(&self) -> Option<usize> {
        self.vdeg_range().map(|(lo, _)| lo)
    }

    fn check_compatible(&self, other: &IsobaricPoly<C>) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch);
        }
        if self.weight != other.weight {
            return Err(Error::Invalid(format!(
                "isobaric weights differ: {} vs {}",
                self.weight, other.weight
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &IsobaricPoly<C>) -> Result<IsobaricPoly<C>> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(IsobaricPoly { ctx: self.ctx.clone(), weight: self.weight, coeffs })
    }

    pub fn sub(&self, other: &IsobaricPoly<C>) -> Result<IsobaricPoly<C>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IsobaricPoly<C> {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        IsobaricPoly { ctx: self.ctx.clone(), weight: self.weight, coeffs }
    }

    pub fn scale(&self, c: &C) -> IsobaricPoly<C> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        IsobaricPoly { ctx: self.ctx.clone(), weight: self.weight, coeffs }
    }

    pub fn scale_int(&self, n: i64) -> IsobaricPoly<C> {
        let coeffs = self.coeffs.iter().map(|a| a.int_mul(n)).collect();
        IsobaricPoly { ctx: self.ctx.clone(), weight: self.weight, coeffs }
    }

    pub fn mul(&self, other: &IsobaricPoly<C>) -> Result<IsobaricPoly<C>> {
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch);
        }
        let w = self.total_degree() + other.total_degree();
        let mut coeffs = vec![C::zero(&self.ctx); w + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(IsobaricPoly {
            ctx: self.ctx.clone(),
            weight: self.weight + other.weight,
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u64) -> IsobaricPoly<C> {
        let mut base = self.clone();
        let mut acc = IsobaricPoly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }
}

impl IsobaricPoly<APoly> {
    /// Maps the coefficients through the structure map A -> C.
    pub fn embed<D: Coeff>(&self, ctx: &D::Ctx) -> Result<IsobaricPoly<D>> {
        if D::field_ctx(ctx) != &self.ctx {
            return Err(Error::RingMismatch);
        }
        let coeffs = self.coeffs.iter().map(|c| D::embed_a(ctx, c)).collect();
        Ok(IsobaricPoly { ctx: ctx.clone(), weight: self.weight, coeffs })
    }

    /// Raises to the power q^e; in characteristic p this just Frobenius
    /// twists the coefficients and dilates the exponents.
    pub fn frob_pow(&self, e: u32) -> IsobaricPoly<APoly> {
        let factor = (self.ctx.q() as usize).pow(e);
        let w = self.total_degree() * factor;
        let mut coeffs = vec![APoly::zero(&self.ctx); w + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut fc = c.clone();
            for _ in 0..e {
                fc = fc.frobenius_q();
            }
            coeffs[j * factor] = fc;
        }
        IsobaricPoly {
            ctx: self.ctx.clone(),
            weight: self.weight * factor as i64,
            coeffs,
        }
    }
}

impl<C: Coeff> fmt::Display for IsobaricPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let w = self.total_degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let wrapped = if cs.contains('+') || cs.contains('/') {
                format!("({cs})")
            } else {
                cs.clone()
            };
            let mut factors = Vec::new();
            if cs != "1" || j == w && j == 0 {
                factors.push(wrapped.clone());
            }
            let udeg = w - j;
            if udeg == 1 {
                factors.push("U".into());
            } else if udeg > 1 {
                factors.push(format!("U^{udeg}"));
            }
            if j == 1 {
                factors.push("V".into());
            } else if j > 1 {
                factors.push(format!("V^{j}"));
            }
            if factors.is_empty() {
                factors.push(wrapped);
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldCtx;
    use std::sync::Arc;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    fn iso(ctx: &Arc<FieldCtx>, coeffs: &[&[i64]]) -> IsobaricPoly<APoly> {
        let w = coeffs.len() as i64 - 1;
        IsobaricPoly::new(
            ctx,
            w * 2,
            coeffs.iter().map(|c| poly(ctx, c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validates_weight_and_length() {
        let ctx = f3();
        assert!(IsobaricPoly::<APoly>::new(&ctx, 3, vec![]).is_err());
        assert!(IsobaricPoly::<APoly>::new(&ctx, -2, vec![]).is_err());
        assert!(
            IsobaricPoly::<APoly>::new(&ctx, 2, vec![APoly::one(&ctx)]).is_err()
        );
        assert!(IsobaricPoly::<APoly>::new(
            &ctx,
            2,
            vec![APoly::one(&ctx), APoly::zero(&ctx)]
        )
        .is_ok());
    }

    #[test]
    fn multiplication_is_convolution() {
        let ctx = f3();
        // (U - T^3 V)(U + V) = U^2 + (1 - T^3) U V - T^3 V^2
        let a = iso(&ctx, &[&[1], &[0, 0, 0, 2]]);
        let b = iso(&ctx, &[&[1], &[1]]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.weight(), 4);
        assert_eq!(
            prod.coeffs(),
            &[poly(&ctx, &[1]), poly(&ctx, &[1, 0, 0, 2]), poly(&ctx, &[0, 0, 0, 2])]
        );
    }

    #[test]
    fn contents_track_divisibility() {
        let ctx = f3();
        // U^2 V (coefficient vector of w = 3 with only j = 1 set).
        let m = IsobaricPoly::monomial(&ctx, 3, 1, APoly::one(&ctx));
        assert_eq!(m.u_content(), Some(2));
        assert_eq!(m.v_content(), Some(1));
        assert_eq!(m.vdeg_range(), Some((1, 1)));
        assert_eq!(IsobaricPoly::<APoly>::zero(&ctx, 4).u_content(), None);
    }

    #[test]
    fn frobenius_power_matches_repeated_multiplication() {
        let ctx = f3();
        let a = iso(&ctx, &[&[1], &[0, 2]]);
        assert_eq!(a.frob_pow(1), a.pow(3));
        assert_eq!(a.frob_pow(2), a.pow(9));
    }

    #[test]
    fn displays_readably() {
        let ctx = f3();
        let a = iso(&ctx, &[&[1], &[0, 2], &[0, 0, 1]]);
        assert_eq!(a.to_string(), "U^2 + 2*T*U*V + T^2*V^2");
        assert_eq!(IsobaricPoly::<APoly>::one(&ctx).to_string(), "1");
        assert_eq!(IsobaricPoly::<APoly>::zero(&ctx, 2).to_string(), "0");
    }
}
