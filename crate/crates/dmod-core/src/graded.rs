//! Graded modular forms of level Gamma_0(T) in their polynomial form.
//!
//! The graded algebra of forms with all types is generated by Delta_W,
//! Delta_T (both weight q - 1, type 0) and E_T (weight 2, type 1), with the
//! single relation E_T^(q-1) = Delta_W Delta_T. A form of weight k and type
//! l therefore has a unique representation
//!
//!   f = P(Delta_W, Delta_T) E_T^l,  0 <= l < q - 1,
//!
//! with P isobaric of weight k - 2l. GradedForm stores (k, l, P) and moves
//! between this representation and u-expansions.

use std::sync::Arc;

use crate::apoly::APoly;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::generators::Generators;
use crate::isobaric::IsobaricPoly;
use crate::series::USeries;

/// Normalizes the type into 0 <= l < q - 1 and returns it with the total
/// degree w of the isobaric part, when (k, l) supports nonzero forms.
pub fn admissible(q: u64, k: i64, l: i64) -> Option<(i64, usize)> {
    let step = q as i64 - 1;
    let ln = l.rem_euclid(step);
    let rest = k - 2 * ln;
    if rest < 0 || rest % step != 0 {
        return None;
    }
    Some((ln, (rest / step) as usize))
}

/// Dimension of the space of forms of weight k and type l (0 when the pair
/// is inadmissible).
pub fn dimension(q: u64, k: i64, l: i64) -> usize {
    admissible(q, k, l).map(|(_, w)| w + 1).unwrap_or(0)
}

/// Two forms of weight k and type l agreeing through u^bound are equal;
/// bound is the largest pivot exponent w(q-1) + l.
pub fn equality_bound(q: u64, k: i64, l: i64) -> Result<usize> {
    let (ln, w) = admissible(q, k, l).ok_or(Error::TypeMismatch { k, l })?;
    Ok(w * (q as usize - 1) + ln as usize)
}

#[derive(Debug, Clone)]
pub struct GradedForm<C: Coeff> {
    k: i64,
    l: i64,
    iso: IsobaricPoly<C>,
}

impl<C: Coeff> PartialEq for GradedForm<C> {
    fn eq(&self, other: &GradedForm<C>) -> bool {
        if self.k != other.k {
            return false;
        }
        if self.iso.is_zero() && other.iso.is_zero() {
            return true;
        }
        self.l == other.l && self.iso == other.iso
    }
}

impl<C: Coeff> GradedForm<C> {
    /// Wraps an isobaric polynomial as the form P(Delta_W, Delta_T) E_T^l
    /// of weight k; the weight of P must be k - 2l after normalizing l.
    pub fn new(k: i64, l: i64, iso: IsobaricPoly<C>) -> Result<GradedForm<C>> {
        let q = C::field_ctx(iso.ctx()).q();
        let (ln, w) = admissible(q, k, l).ok_or(Error::TypeMismatch { k, l })?;
        if iso.total_degree() != w || iso.weight() != k - 2 * ln {
            return Err(Error::TypeMismatch { k, l });
        }
        Ok(GradedForm { k, l: ln, iso })
    }

    pub fn zero(ctx: &C::Ctx, k: i64, l: i64) -> Result<GradedForm<C>> {
        let q = C::field_ctx(ctx).q();
        let (ln, _) = admissible(q, k, l).ok_or(Error::TypeMismatch { k, l })?;
        Ok(GradedForm { k, l: ln, iso: IsobaricPoly::zero(ctx, k - 2 * ln) })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn iso(&self) -> &IsobaricPoly<C> {
        &self.iso
    }

    pub fn ctx(&self) -> &C::Ctx {
        self.iso.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.iso.is_zero()
    }

    fn q(&self) -> u64 {
        C::field_ctx(self.iso.ctx()).q()
    }

    pub fn add(&self, other: &GradedForm<C>) -> Result<GradedForm<C>> {
        if self.k != other.k || self.l != other.l {
            return Err(Error::TypeMismatch { k: other.k, l: other.l });
        }
        Ok(GradedForm { k: self.k, l: self.l, iso: self.iso.add(&other.iso)? })
    }

    pub fn sub(&self, other: &GradedForm<C>) -> Result<GradedForm<C>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedForm<C> {
        GradedForm { k: self.k, l: self.l, iso: self.iso.neg() }
    }

    pub fn scale(&self, c: &C) -> GradedForm<C> {
        GradedForm { k: self.k, l: self.l, iso: self.iso.scale(c) }
    }

    pub fn scale_int(&self, n: i64) -> GradedForm<C> {
        GradedForm { k: self.k, l: self.l, iso: self.iso.scale_int(n) }
    }

    /// Product in the graded algebra. Weights and types add; when the type
    /// passes q - 1 the relation E_T^(q-1) = Delta_W Delta_T folds it back.
    pub fn graded_mul(&self, other: &GradedForm<C>) -> Result<GradedForm<C>> {
        let step = self.q() as i64 - 1;
        let k = self.k + other.k;
        let lsum = self.l + other.l;
        let mut iso = self.iso.mul(&other.iso)?;
        let l = if lsum >= step {
            iso = iso.mul(&IsobaricPoly::uv(self.iso.ctx()))?;
            lsum - step
        } else {
            lsum
        };
        Ok(GradedForm { k, l, iso })
    }

    pub fn pow(&self, e: u64) -> GradedForm<C> {
        let mut acc = GradedForm {
            k: 0,
            l: 0,
            iso: IsobaricPoly::one(self.iso.ctx()),
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.graded_mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.graded_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// The weight raising derivation: on a monomial c U^(w-j) V^j E_T^l it
    /// multiplies by (l - (w - j)) and one more power of E_T, because
    /// Delta_T is flat, Delta_W moves by -Delta_W E_T, and E_T by E_T^2.
    /// The result has weight k + 2 and type l + 1 (normalized).
    pub fn partial(&self) -> Result<GradedForm<C>> {
        let step = self.q() as i64 - 1;
        let w = self.iso.total_degree();
        let coeffs = self
            .iso
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c.int_mul(self.l - (w - j) as i64))
            .collect();
        let mut iso = IsobaricPoly::new(self.iso.ctx(), self.iso.weight(), coeffs)?;
        let raw = self.l + 1;
        let l = if raw == step {
            iso = iso.mul(&IsobaricPoly::uv(self.iso.ctx()))?;
            0
        } else {
            raw
        };
        Ok(GradedForm { k: self.k + 2, l, iso })
    }

    /// Expands the form as a u-series to the requested precision.
    pub fn to_series(&self, gens: &Generators, prec: usize) -> Result<USeries<C>> {
        if C::field_ctx(self.iso.ctx()) != gens.ctx() {
            return Err(Error::RingMismatch);
        }
        let ctx = self.iso.ctx();
        let dw: USeries<C> = gens.delta_w(prec)?.embed(ctx)?;
        let dt: USeries<C> = gens.delta_t(prec)?.embed(ctx)?;
        let w = self.iso.total_degree();
        let mut dwp: Vec<USeries<C>> = Vec::with_capacity(w + 1);
        let mut dtp: Vec<USeries<C>> = Vec::with_capacity(w + 1);
        dwp.push(USeries::one(ctx, prec));
        dtp.push(USeries::one(ctx, prec));
        for i in 1..=w {
            dwp.push(dwp[i - 1].mul(&dw)?);
            dtp.push(dtp[i - 1].mul(&dt)?);
        }
        let mut acc = USeries::zero(ctx, prec);
        for (j, c) in self.iso.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&dwp[w - j].mul(&dtp[j])?.scale(c)?)?;
        }
        if self.l > 0 {
            let et: USeries<C> = gens.et(prec)?.embed(ctx)?;
            acc = acc.mul(&et.pow(self.l as u64))?;
        }
        Ok(acc)
    }

    /// Recovers the polynomial representation of a u-expansion known to be
    /// a form of weight k and type l. The pivot coefficients sit at
    /// exponents j(q-1) + l, so the series must reach past w(q-1) + l; any
    /// residual after the triangular solve means the series is not modular
    /// of this weight and type.
    pub fn from_series(
        gens: &Generators,
        k: i64,
        l: i64,
        s: &USeries<C>,
    ) -> Result<GradedForm<C>> {
        if C::field_ctx(s.ctx()) != gens.ctx() {
            return Err(Error::RingMismatch);
        }
        let q = gens.ctx().q();
        let (ln, w) = admissible(q, k, l).ok_or(Error::TypeMismatch { k, l })?;
        let step = q as usize - 1;
        let bound = w * step + ln as usize;
        if s.prec() <= bound {
            return Err(Error::PrecisionTooLow { needed: bound + 1, got: s.prec() });
        }
        let ctx = s.ctx();
        let prec = s.prec();
        let dw: USeries<C> = gens.delta_w(prec)?.embed(ctx)?;
        let dt: USeries<C> = gens.delta_t(prec)?.embed(ctx)?;
        let etl = if ln > 0 {
            gens.et(prec)?.embed::<C>(ctx)?.pow(ln as u64)
        } else {
            USeries::one(ctx, prec)
        };
        let mut dwp: Vec<USeries<C>> = vec![USeries::one(ctx, prec)];
        let mut dtp: Vec<USeries<C>> = vec![USeries::one(ctx, prec)];
        for i in 1..=w {
            dwp.push(dwp[i - 1].mul(&dw)?);
            dtp.push(dtp[i - 1].mul(&dt)?);
        }
        let mut residual = s.clone();
        let mut coeffs = vec![C::zero(ctx); w + 1];
        for (j, slot) in coeffs.iter_mut().enumerate() {
            let c = residual.coeff_at(j * step + ln as usize);
            if c.is_zero() {
                continue;
            }
            let basis = dwp[w - j].mul(&dtp[j])?.mul(&etl)?;
            residual = residual.sub(&basis.scale(&c)?)?;
            *slot = c;
        }
        if let Some((e, _)) = residual.terms().first() {
            return Err(Error::NotModular { exponent: *e });
        }
        Ok(GradedForm { k, l: ln, iso: IsobaricPoly::new(ctx, k - 2 * ln, coeffs)? })
    }

    /// Vanishing order at the infinite cusp (None for the zero form):
    /// j_min (q-1) + l over the nonzero monomials.
    pub fn ord_infinity(&self) -> Option<usize> {
        let (lo, _) = self.iso.vdeg_range()?;
        Some(lo * (self.q() as usize - 1) + self.l as usize)
    }

    /// Vanishing order at the zero cusp: (w - j_max)(q-1) + l, since
    /// Delta_W and Delta_T trade places there.
    pub fn ord_zero(&self) -> Option<usize> {
        let (_, hi) = self.iso.vdeg_range()?;
        let w = self.iso.total_degree();
        Some((w - hi) * (self.q() as usize - 1) + self.l as usize)
    }

    pub fn is_cuspidal(&self) -> bool {
        match (self.ord_infinity(), self.ord_zero()) {
            (Some(a), Some(b)) => a >= 1 && b >= 1,
            _ => true,
        }
    }

    pub fn is_doubly_cuspidal(&self) -> bool {
        match (self.ord_infinity(), self.ord_zero()) {
            (Some(a), Some(b)) => a >= 2 && b >= 2,
            _ => true,
        }
    }
}

/// The basis of weight k, type l forms normalized on the pivot exponents:
/// basis element i has u-coefficient 1 at i(q-1) + l and 0 at the other
/// pivots j(q-1) + l. Indexing is 0-based in i.
pub fn victor_miller(
    gens: &Generators,
    k: i64,
    l: i64,
) -> Result<Vec<GradedForm<APoly>>> {
    let ctx = gens.ctx();
    let q = ctx.q();
    let (ln, w) = admissible(q, k, l).ok_or(Error::EmptySpace)?;
    let step = q as usize - 1;
    let prec = w * step + ln as usize + 1;
    let dw = gens.delta_w(prec)?;
    let dt = gens.delta_t(prec)?;
    let etl = if ln > 0 {
        gens.et(prec)?.pow(ln as u64)
    } else {
        USeries::one(ctx, prec)
    };
    let mut dwp: Vec<USeries<APoly>> = vec![USeries::one(ctx, prec)];
    let mut dtp: Vec<USeries<APoly>> = vec![USeries::one(ctx, prec)];
    for i in 1..=w {
        dwp.push(dwp[i - 1].mul(&dw)?);
        dtp.push(dtp[i - 1].mul(&dt)?);
    }
    let monomials: Vec<USeries<APoly>> = (0..=w)
        .map(|j| dwp[w - j].mul(&dtp[j])?.mul(&etl))
        .collect::<Result<_>>()?;
    let mut basis = Vec::with_capacity(w + 1);
    for i in 0..=w {
        // Start from the i-th monomial form and clear the later pivots; the
        // pivot matrix is unitriangular so no division appears.
        let mut coeffs = vec![APoly::zero(ctx); w + 1];
        coeffs[i] = APoly::one(ctx);
        let mut ser = monomials[i].clone();
        for m in (i + 1)..=w {
            let c = ser.coeff_at(m * step + ln as usize);
            if !c.is_zero() {
                ser = ser.sub(&monomials[m].scale(&c)?)?;
                coeffs[m] = coeffs[m].sub(&c);
            }
        }
        basis.push(GradedForm {
            k,
            l: ln,
            iso: IsobaricPoly::new(ctx, k - 2 * ln, coeffs)?,
        });
    }
    Ok(basis)
}

/// The isobaric polynomial phi_d with phi_d(Delta_W, Delta_T) = g_d, via the
/// same two-term recursion as the series:
/// phi_d = phi_(d-1) (U - T^q V)^(q^(d-1))
///         + (T^(q^(d-1)) - T) phi_(d-2) (U^q V)^(q^(d-2)).
pub fn phi_d(ctx: &Arc<FieldCtx>, d: u32) -> Result<IsobaricPoly<APoly>> {
    let q = ctx.q();
    let wd = (0..d).fold(1u128, |acc, _| acc * q as u128 + 1) - 1;
    // wd = (q^d - 1)/(q - 1) monomials; refuse absurd sizes up front.
    if wd > 1_000_000 {
        return Err(Error::Invalid(format!("phi_{d} has degree {wd}, too large")));
    }
    let tq = APoly::t_pow(ctx, q as usize);
    let phi1 = IsobaricPoly::new(
        ctx,
        q as i64 - 1,
        vec![APoly::one(ctx), tq.neg()],
    )?;
    if d == 0 {
        return Ok(IsobaricPoly::one(ctx));
    }
    if d == 1 {
        return Ok(phi1);
    }
    let mut prev2 = IsobaricPoly::one(ctx);
    let mut prev = phi1.clone();
    for m in 2..=d {
        let head = prev.mul(&phi1.frob_pow(m - 1))?;
        let qm2 = (q as usize).pow(m - 2);
        let scalar = APoly::t_pow(ctx, qm2 * q as usize).sub(&APoly::t(ctx));
        let mono = IsobaricPoly::monomial(ctx, (q as usize + 1) * qm2, qm2, scalar);
        let tail = prev2.mul(&mono)?;
        let next = head.add(&tail)?;
        prev2 = prev;
        prev = next;
    }
    Ok(prev)
}

impl GradedForm<APoly> {
    /// Maps the coefficients through the structure map A -> C.
    pub fn embed<D: Coeff>(&self, ctx: &D::Ctx) -> Result<GradedForm<D>> {
        Ok(GradedForm { k: self.k, l: self.l, iso: self.iso.embed(ctx)? })
    }

    pub fn unit(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        GradedForm { k: 0, l: 0, iso: IsobaricPoly::one(ctx) }
    }

    /// E_T as a form: weight 2, type 1, polynomial part 1.
    pub fn et_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        GradedForm { k: 2, l: 1, iso: IsobaricPoly::one(ctx) }
    }

    pub fn delta_t_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        let iso = IsobaricPoly::monomial(ctx, 1, 1, APoly::one(ctx));
        GradedForm { k: ctx.q() as i64 - 1, l: 0, iso }
    }

    pub fn delta_w_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        let iso = IsobaricPoly::monomial(ctx, 1, 0, APoly::one(ctx));
        GradedForm { k: ctx.q() as i64 - 1, l: 0, iso }
    }

    /// g_1 = Delta_W - T^q Delta_T.
    pub fn g1_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        let iso = IsobaricPoly::new(
            ctx,
            ctx.q() as i64 - 1,
            vec![APoly::one(ctx), APoly::t_pow(ctx, ctx.q() as usize).neg()],
        )
        .expect("well formed");
        GradedForm { k: ctx.q() as i64 - 1, l: 0, iso }
    }

    /// h = -Delta_W E_T: weight q + 1, type 1.
    pub fn h_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        let iso = IsobaricPoly::monomial(ctx, 1, 0, APoly::one(ctx).neg());
        GradedForm { k: ctx.q() as i64 + 1, l: 1, iso }
    }

    /// Delta = -Delta_W^q Delta_T: weight q^2 - 1, type 0.
    pub fn delta_form(ctx: &Arc<FieldCtx>) -> GradedForm<APoly> {
        let q = ctx.q() as usize;
        let iso = IsobaricPoly::monomial(ctx, q + 1, 1, APoly::one(ctx).neg());
        GradedForm { k: (ctx.q() * ctx.q()) as i64 - 1, l: 0, iso }
    }

    /// g_d = phi_d(Delta_W, Delta_T): weight q^d - 1, type 0.
    pub fn gd_form(ctx: &Arc<FieldCtx>, d: u32) -> Result<GradedForm<APoly>> {
        let mut k = 1i64;
        for _ in 0..d {
            k = k
                .checked_mul(ctx.q() as i64)
                .ok_or_else(|| Error::Invalid(format!("weight overflow for g_{d}")))?;
        }
        Ok(GradedForm { k: k - 1, l: 0, iso: phi_d(ctx, d)? })
    }
}
