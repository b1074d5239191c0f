//! The coefficient-ring abstraction shared by series and isobaric
//! polynomials. The three instances are A = F_q[T], K = F_q(T) and the
//! residue field F_p; each element carries a handle to its ambient ring, so
//! zeros and ones are minted from a context rather than from thin air.

use std::fmt::{Debug, Display};
use std::sync::Arc;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::kfrac::KFrac;
use crate::residue::{vp_apoly, vp_kfrac, FpElem, PrimeSpec, ResidueCtx, Valuation};

/// Which coefficient ring a series lives over, as named on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingTag {
    A,
    K,
    Fpd,
}

impl RingTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingTag::A => "A",
            RingTag::K => "K",
            RingTag::Fpd => "Fpd",
        }
    }
}

/// A coefficient ring element. All three rings are A-algebras over a common
/// F_q, which is what the generator series are written over.
pub trait Coeff: Clone + PartialEq + Debug + Display {
    /// The ambient-ring handle elements carry (field context, or residue
    /// context for F_p).
    type Ctx: Clone + PartialEq + Debug;

    const TAG: RingTag;

    fn ctx(&self) -> Self::Ctx;
    fn field_ctx(ctx: &Self::Ctx) -> &Arc<FieldCtx>;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplication by an integer, reduced mod p.
    fn int_mul(&self, n: i64) -> Self;
    /// None when rhs is zero or does not divide exactly in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    /// None when the element is not a unit of the ring.
    fn inv(&self) -> Option<Self>;
    /// The structure map A -> Self.
    fn embed_a(ctx: &Self::Ctx, a: &APoly) -> Self;
}

impl Coeff for APoly {
    type Ctx = Arc<FieldCtx>;

    const TAG: RingTag = RingTag::A;

    fn ctx(&self) -> Arc<FieldCtx> {
        Arc::clone(APoly::ctx(self))
    }

    fn field_ctx(ctx: &Arc<FieldCtx>) -> &Arc<FieldCtx> {
        ctx
    }

    fn zero(ctx: &Arc<FieldCtx>) -> APoly {
        APoly::zero(ctx)
    }

    fn one(ctx: &Arc<FieldCtx>) -> APoly {
        APoly::one(ctx)
    }

    fn is_zero(&self) -> bool {
        APoly::is_zero(self)
    }

    fn add(&self, rhs: &APoly) -> APoly {
        APoly::add(self, rhs)
    }

    fn sub(&self, rhs: &APoly) -> APoly {
        APoly::sub(self, rhs)
    }

    fn neg(&self) -> APoly {
        APoly::neg(self)
    }

    fn mul(&self, rhs: &APoly) -> APoly {
        APoly::mul(self, rhs)
    }

    fn int_mul(&self, n: i64) -> APoly {
        APoly::int_mul(self, n)
    }

    fn exact_div(&self, rhs: &APoly) -> Option<APoly> {
        APoly::exact_div(self, rhs).ok()
    }

    fn inv(&self) -> Option<APoly> {
        // Units of A are the nonzero constants.
        let c = self.as_constant()?;
        let inv = APoly::ctx(self).inv(&c)?;
        Some(APoly::constant(APoly::ctx(self), inv))
    }

    fn embed_a(_ctx: &Arc<FieldCtx>, a: &APoly) -> APoly {
        a.clone()
    }
}

impl Coeff for KFrac {
    type Ctx = Arc<FieldCtx>;

    const TAG: RingTag = RingTag::K;

    fn ctx(&self) -> Arc<FieldCtx> {
        Arc::clone(KFrac::ctx(self))
    }

    fn field_ctx(ctx: &Arc<FieldCtx>) -> &Arc<FieldCtx> {
        ctx
    }

    fn zero(ctx: &Arc<FieldCtx>) -> KFrac {
        KFrac::zero(ctx)
    }

    fn one(ctx: &Arc<FieldCtx>) -> KFrac {
        KFrac::one(ctx)
    }

    fn is_zero(&self) -> bool {
        KFrac::is_zero(self)
    }

    fn add(&self, rhs: &KFrac) -> KFrac {
        KFrac::add(self, rhs)
    }

    fn sub(&self, rhs: &KFrac) -> KFrac {
        KFrac::sub(self, rhs)
    }

    fn neg(&self) -> KFrac {
        KFrac::neg(self)
    }

    fn mul(&self, rhs: &KFrac) -> KFrac {
        KFrac::mul(self, rhs)
    }

    fn int_mul(&self, n: i64) -> KFrac {
        KFrac::int_mul(self, n)
    }

    fn exact_div(&self, rhs: &KFrac) -> Option<KFrac> {
        KFrac::div(self, rhs).ok()
    }

    fn inv(&self) -> Option<KFrac> {
        KFrac::inv(self).ok()
    }

    fn embed_a(_ctx: &Arc<FieldCtx>, a: &APoly) -> KFrac {
        KFrac::from_apoly(a.clone())
    }
}

impl Coeff for FpElem {
    type Ctx = Arc<ResidueCtx>;

    const TAG: RingTag = RingTag::Fpd;

    fn ctx(&self) -> Arc<ResidueCtx> {
        Arc::clone(FpElem::ctx(self))
    }

    fn field_ctx(ctx: &Arc<ResidueCtx>) -> &Arc<FieldCtx> {
        ctx.field_ctx()
    }

    fn zero(ctx: &Arc<ResidueCtx>) -> FpElem {
        FpElem::zero(ctx)
    }

    fn one(ctx: &Arc<ResidueCtx>) -> FpElem {
        FpElem::one(ctx)
    }

    fn is_zero(&self) -> bool {
        FpElem::is_zero(self)
    }

    fn add(&self, rhs: &FpElem) -> FpElem {
        FpElem::add(self, rhs)
    }

    fn sub(&self, rhs: &FpElem) -> FpElem {
        FpElem::sub(self, rhs)
    }

    fn neg(&self) -> FpElem {
        FpElem::neg(self)
    }

    fn mul(&self, rhs: &FpElem) -> FpElem {
        FpElem::mul(self, rhs)
    }

    fn int_mul(&self, n: i64) -> FpElem {
        FpElem::int_mul(self, n)
    }

    fn exact_div(&self, rhs: &FpElem) -> Option<FpElem> {
        Some(self.mul(&FpElem::inv(rhs).ok()?))
    }

    fn inv(&self) -> Option<FpElem> {
        FpElem::inv(self).ok()
    }

    fn embed_a(ctx: &Arc<ResidueCtx>, a: &APoly) -> FpElem {
        FpElem::from_apoly(ctx, a)
    }
}

/// Coefficients with a pi-adic valuation (A and K, not the residue field).
pub trait PAdic: Coeff {
    fn vp(&self, prime: &PrimeSpec) -> Valuation;
}

impl PAdic for APoly {
    fn vp(&self, prime: &PrimeSpec) -> Valuation {
        vp_apoly(self, prime)
    }
}

impl PAdic for KFrac {
    fn vp(&self, prime: &PrimeSpec) -> Valuation {
        vp_kfrac(self, prime)
    }
}

/// Coefficients that reduce modulo a prime of A.
pub trait Reduce: Coeff {
    fn reduce(&self, rc: &Arc<ResidueCtx>) -> Result<FpElem>;
}

impl Reduce for APoly {
    fn reduce(&self, rc: &Arc<ResidueCtx>) -> Result<FpElem> {
        if APoly::ctx(self) != rc.field_ctx() {
            return Err(Error::RingMismatch);
        }
        Ok(FpElem::from_apoly(rc, self))
    }
}

impl Reduce for KFrac {
    fn reduce(&self, rc: &Arc<ResidueCtx>) -> Result<FpElem> {
        if KFrac::ctx(self) != rc.field_ctx() {
            return Err(Error::RingMismatch);
        }
        FpElem::from_kfrac(rc, self)
    }
}
