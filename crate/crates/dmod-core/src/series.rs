//! Truncated u-expansions with exact coefficients.
//!
//! A series is a sparse list of (exponent, coefficient) pairs plus the
//! precision N up to which the expansion is reliable: it represents its
//! value modulo u^N. Arithmetic tracks the reliable precision
//! conservatively (binary operations keep the minimum of the two inputs).

use std::fmt;
use std::sync::Arc;

use crate::apoly::APoly;
use crate::coeff::{Coeff, PAdic, Reduce};
use crate::error::{Error, Result};
use crate::residue::{FpElem, PrimeSpec, ResidueCtx, Valuation};

#[derive(Debug, Clone, PartialEq)]
pub struct USeries<C: Coeff> {
    ctx: C::Ctx,
    prec: usize,
    /// Sorted by exponent, all exponents < prec, no zero coefficients.
    terms: Vec<(usize, C)>,
}

impl<C: Coeff> USeries<C> {
    /// Builds a series from arbitrary (exponent, coefficient) pairs:
    /// duplicates are summed, zeros and anything at or above the precision
    /// are dropped.
    pub fn new(ctx: &C::Ctx, prec: usize, mut terms: Vec<(usize, C)>) -> USeries<C> {
        assert!(prec >= 1, "series precision must be positive");
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(usize, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e >= prec {
                continue;
            }
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        USeries { ctx: ctx.clone(), prec, terms: merged }
    }

    pub fn zero(ctx: &C::Ctx, prec: usize) -> USeries<C> {
        USeries::new(ctx, prec, Vec::new())
    }

    pub fn one(ctx: &C::Ctx, prec: usize) -> USeries<C> {
        USeries::new(ctx, prec, vec![(0, C::one(ctx))])
    }

    /// The series u itself.
    pub fn u(ctx: &C::Ctx, prec: usize) -> USeries<C> {
        USeries::new(ctx, prec, vec![(1, C::one(ctx))])
    }

    pub fn monomial(ctx: &C::Ctx, prec: usize, e: usize, c: C) -> USeries<C> {
        USeries::new(ctx, prec, vec![(e, c)])
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn terms(&self) -> &[(usize, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Valuation of the truncated series (None when no term survives).
    pub fn val(&self) -> Option<usize> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn coeff_at(&self, e: usize) -> C {
        match self.terms.binary_search_by_key(&e, |(n, _)| *n) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(&self.ctx),
        }
    }

    pub fn truncate(&self, prec: usize) -> USeries<C> {
        let prec = prec.min(self.prec);
        assert!(prec >= 1, "series precision must be positive");
        let terms = self.terms.iter().take_while(|(e, _)| *e < prec).cloned().collect();
        USeries { ctx: self.ctx.clone(), prec, terms }
    }

    /// Multiplication by u^k (shifts exponents; the tail that was unknown
    /// stays unknown, so the reliable precision also moves up by k).
    pub fn shift_up(&self, k: usize) -> USeries<C> {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        USeries { ctx: self.ctx.clone(), prec: self.prec + k, terms }
    }

    fn check_ctx(&self, other: &USeries<C>) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &USeries<C>) -> Result<USeries<C>> {
        self.check_ctx(other)?;
        let prec = self.prec.min(other.prec);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        terms.extend(self.terms.iter().cloned());
        terms.extend(other.terms.iter().cloned());
        Ok(USeries::new(&self.ctx, prec, terms))
    }

    pub fn sub(&self, other: &USeries<C>) -> Result<USeries<C>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> USeries<C> {
        let terms = self.terms.iter().map(|(e, c)| (*e, c.neg())).collect();
        USeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    pub fn mul(&self, other: &USeries<C>) -> Result<USeries<C>> {
        self.check_ctx(other)?;
        let prec = self.prec.min(other.prec);
        let mut acc: Vec<Option<C>> = vec![None; prec];
        for (e1, c1) in &self.terms {
            if *e1 >= prec {
                break;
            }
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if e >= prec {
                    break;
                }
                let prod = c1.mul(c2);
                acc[e] = Some(match acc[e].take() {
                    Some(cur) => cur.add(&prod),
                    None => prod,
                });
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(e, c)| c.map(|c| (e, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(USeries { ctx: self.ctx.clone(), prec, terms })
    }

    /// Multiplication by a scalar of the coefficient ring.
    pub fn scale(&self, c: &C) -> Result<USeries<C>> {
        if c.ctx() != self.ctx {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, t)| (*e, t.mul(c)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        Ok(USeries { ctx: self.ctx.clone(), prec: self.prec, terms })
    }

    pub fn scale_int(&self, n: i64) -> USeries<C> {
        let terms = self
            .terms
            .iter()
            .map(|(e, t)| (*e, t.int_mul(n)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        USeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    pub fn pow(&self, mut e: u64) -> USeries<C> {
        let mut base = self.clone();
        let mut acc = USeries::one(&self.ctx, self.prec);
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

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<USeries<C>> {
        if self.val() != Some(0) {
            return Err(Error::NonUnitConstantTerm);
        }
        let lead_inv = self.terms[0].1.inv().ok_or(Error::NonUnitConstantTerm)?;
        let mut out: Vec<C> = Vec::with_capacity(self.prec);
        out.push(lead_inv.clone());
        for m in 1..self.prec {
            let mut sum: Option<C> = None;
            for (e, c) in self.terms.iter().skip(1) {
                if *e > m {
                    break;
                }
                let prod = c.mul(&out[m - e]);
                sum = Some(match sum {
                    Some(cur) => cur.add(&prod),
                    None => prod,
                });
            }
            let val = match sum {
                Some(s) => s.mul(&lead_inv).neg(),
                None => C::zero(&self.ctx),
            };
            out.push(val);
        }
        let terms = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(USeries { ctx: self.ctx.clone(), prec: self.prec, terms })
    }

    /// Division that must be exact: every step divides in the coefficient
    /// ring and no remainder is left below the working precision.
    pub fn exact_div(&self, g: &USeries<C>) -> Result<USeries<C>> {
        self.check_ctx(g)?;
        let vg = g.val().ok_or(Error::DivisionByZero)?;
        let avail = self.prec.min(g.prec);
        if avail <= vg {
            return Err(Error::PrecisionTooLow { needed: vg + 1, got: avail });
        }
        let out_prec = avail - vg;
        if self.is_zero() {
            return Ok(USeries::zero(&self.ctx, out_prec));
        }
        if self.val().unwrap() < vg {
            return Err(Error::InexactSeriesDivision);
        }
        let lead = g.coeff_at(vg);
        let mut out: Vec<C> = Vec::with_capacity(out_prec);
        for m in 0..out_prec {
            let mut num = self.coeff_at(m + vg);
            for (e, c) in &g.terms {
                if *e <= vg {
                    continue;
                }
                let off = e - vg;
                if off > m {
                    break;
                }
                num = num.sub(&c.mul(&out[m - off]));
            }
            let q = num.exact_div(&lead).ok_or(Error::InexactSeriesDivision)?;
            out.push(q);
        }
        let terms = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(USeries { ctx: self.ctx.clone(), prec: out_prec, terms })
    }

    /// Substitutes `inner` for u in `self`. The inner series must vanish at
    /// the origin; the result is reliable to min(prec_inner, val(inner) *
    /// prec_outer).
    pub fn compose(&self, inner: &USeries<C>) -> Result<USeries<C>> {
        self.check_ctx(inner)?;
        if inner.val() == Some(0) {
            return Err(Error::InnerValuationZero);
        }
        let v = inner.val().unwrap_or(inner.prec);
        let out_prec = inner.prec.min(v.saturating_mul(self.prec)).max(1);
        let mut acc = USeries::zero(&self.ctx, out_prec);
        let mut cur = USeries::one(&self.ctx, out_prec);
        let mut cur_exp = 0usize;
        for (e, c) in &self.terms {
            if e.saturating_mul(v) >= out_prec {
                break;
            }
            cur = cur.mul(&inner.truncate(out_prec).pow((e - cur_exp) as u64))?;
            cur_exp = *e;
            acc = acc.add(&cur.scale(c)?)?;
        }
        Ok(acc.truncate(out_prec))
    }

    /// The operator -u^2 d/du: sends c u^n to -n c u^(n+1). The output is
    /// reliable one past the input precision but is conservatively kept at
    /// the same precision.
    pub fn theta(&self) -> USeries<C> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e + 1, c.int_mul(-(*e as i64))))
            .filter(|(e, c)| *e < self.prec && !c.is_zero())
            .collect();
        USeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    /// Equality of the two truncations at their common precision.
    pub fn agrees_with(&self, other: &USeries<C>) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let prec = self.prec.min(other.prec);
        let a: Vec<_> = self.terms.iter().filter(|(e, _)| *e < prec).collect();
        let b: Vec<_> = other.terms.iter().filter(|(e, _)| *e < prec).collect();
        a == b
    }
}

impl<C: PAdic> USeries<C> {
    /// Minimum pi-adic valuation over the stored coefficients. This is
    /// relative to the truncation: terms beyond the precision are unseen.
    pub fn vp(&self, prime: &PrimeSpec) -> Result<Valuation> {
        if C::field_ctx(&self.ctx) != prime.ctx() {
            return Err(Error::RingMismatch);
        }
        Ok(self
            .terms
            .iter()
            .map(|(_, c)| c.vp(prime))
            .min()
            .unwrap_or(Valuation::Infinite))
    }
}

impl<C: Reduce> USeries<C> {
    /// Coefficientwise reduction modulo the prime; fails on any coefficient
    /// with negative valuation.
    pub fn reduce(&self, rc: &Arc<ResidueCtx>) -> Result<USeries<FpElem>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let r = c.reduce(rc)?;
            if !r.is_zero() {
                terms.push((*e, r));
            }
        }
        Ok(USeries { ctx: Arc::clone(rc), prec: self.prec, terms })
    }
}

impl USeries<APoly> {
    /// Raises to the power q^e using Frobenius semilinearity:
    /// (sum c_n u^n)^(q^e) = sum c_n^(q^e) u^(n q^e). The result is
    /// truncated back to the input precision.
    pub fn frob_pow(&self, e: u32) -> USeries<APoly> {
        let q = self.ctx.q() as usize;
        let mut factor = 1usize;
        for _ in 0..e {
            factor = factor.saturating_mul(q);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, c) in &self.terms {
            let shifted = n.saturating_mul(factor);
            if shifted >= self.prec {
                break;
            }
            let mut fc = c.clone();
            for _ in 0..e {
                fc = fc.frobenius_q();
            }
            terms.push((shifted, fc));
        }
        USeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    /// Maps an A-coefficient series into any coefficient ring over the same
    /// F_q through the structure map A -> C.
    pub fn embed<D: Coeff>(&self, ctx: &D::Ctx) -> Result<USeries<D>> {
        if D::field_ctx(ctx) != &self.ctx {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, D::embed_a(ctx, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(USeries { ctx: ctx.clone(), prec: self.prec, terms })
    }
}

impl<C: Coeff> fmt::Display for USeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            let cs = c.to_string();
            let wrapped = if cs.contains('+') || cs.contains('/') {
                format!("({cs})")
            } else {
                cs.clone()
            };
            match e {
                0 => write!(f, "{wrapped} + ")?,
                _ => {
                    let upow = if *e == 1 { "u".to_string() } else { format!("u^{e}") };
                    if cs == "1" {
                        write!(f, "{upow} + ")?;
                    } else {
                        write!(f, "{wrapped}*{upow} + ")?;
                    }
                }
            }
        }
        write!(f, "O(u^{})", self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldCtx;
    use proptest::prelude::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    fn series(ctx: &Arc<FieldCtx>, prec: usize, terms: &[(usize, &[i64])]) -> USeries<APoly> {
        USeries::new(
            ctx,
            prec,
            terms.iter().map(|(e, c)| (*e, poly(ctx, c))).collect(),
        )
    }

    #[test]
    fn inversion_is_the_geometric_series() {
        let ctx = f3();
        // 1/(1 + T u^2) = 1 - T u^2 + T^2 u^4 - T^3 u^6 + ...
        let s = series(&ctx, 7, &[(0, &[1]), (2, &[0, 1])]);
        let inv = s.inv().unwrap();
        let expect = series(&ctx, 7, &[(0, &[1]), (2, &[0, 2]), (4, &[0, 0, 1]), (6, &[0, 0, 0, 2])]);
        assert_eq!(inv, expect);
        assert_eq!(s.mul(&inv).unwrap(), USeries::one(&ctx, 7));
    }

    #[test]
    fn inversion_needs_a_unit_constant_term() {
        let ctx = f3();
        let no_constant = series(&ctx, 5, &[(1, &[1])]);
        assert_eq!(no_constant.inv().unwrap_err(), Error::NonUnitConstantTerm);
        let t_constant = series(&ctx, 5, &[(0, &[0, 1])]);
        assert_eq!(t_constant.inv().unwrap_err(), Error::NonUnitConstantTerm);
    }

    #[test]
    fn exact_division_shifts_and_checks() {
        let ctx = f3();
        let f = series(&ctx, 10, &[(2, &[1]), (3, &[1])]);
        let g = USeries::u(&ctx, 10);
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, series(&ctx, 9, &[(1, &[1]), (2, &[1])]));

        // Dividing u^2 by T u needs 1/T: inexact over A.
        let tu = series(&ctx, 10, &[(1, &[0, 1])]);
        let u2 = series(&ctx, 10, &[(2, &[1])]);
        assert_eq!(u2.exact_div(&tu).unwrap_err(), Error::InexactSeriesDivision);

        // Valuation obstruction: u / u^2 is not a power series.
        let u1 = USeries::u(&ctx, 10);
        let usq = series(&ctx, 10, &[(2, &[1])]);
        assert_eq!(u1.exact_div(&usq).unwrap_err(), Error::InexactSeriesDivision);

        let zero = USeries::zero(&ctx, 10);
        assert_eq!(f.exact_div(&zero).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn division_by_constants_keeps_precision() {
        let ctx = f3();
        let c = poly(&ctx, &[0, 0, 2]); // 2 T^2
        let f = series(&ctx, 8, &[(1, &[0, 0, 2]), (5, &[0, 0, 0, 4])]);
        let g = USeries::monomial(&ctx, 8, 0, c);
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q.prec(), 8);
        assert_eq!(q, series(&ctx, 8, &[(1, &[1]), (5, &[0, 2])]));
    }

    #[test]
    fn composition_substitutes() {
        let ctx = f3();
        let outer = series(&ctx, 4, &[(2, &[1])]);
        let inner = series(&ctx, 4, &[(1, &[1]), (2, &[1])]);
        let got = outer.compose(&inner).unwrap();
        // (u + u^2)^2 = u^2 + 2u^3 + u^4, truncated at 4.
        assert_eq!(got, series(&ctx, 4, &[(2, &[1]), (3, &[2])]));

        let const_inner = series(&ctx, 4, &[(0, &[1])]);
        assert_eq!(outer.compose(&const_inner).unwrap_err(), Error::InnerValuationZero);
    }

    #[test]
    fn theta_kills_p_th_powers() {
        let ctx = f3();
        let s = series(&ctx, 10, &[(2, &[1]), (3, &[0, 1]), (6, &[1])]);
        //  -2 u^3 = u^3; -3 T u^4 = 0; -6 u^7 = 0.
        assert_eq!(s.theta(), series(&ctx, 10, &[(3, &[1])]));
    }

    #[test]
    fn valuation_is_min_over_coefficients() {
        let ctx = f3();
        let prime = crate::residue::PrimeSpec::new(poly(&ctx, &[1, 1])).unwrap();
        let t1 = poly(&ctx, &[1, 1]);
        let s = USeries::new(
            &ctx,
            6,
            vec![(1, t1.clone()), (2, t1.mul(&t1).mul(&t1))],
        );
        assert_eq!(s.vp(&prime).unwrap(), Valuation::Finite(1));
        assert_eq!(
            USeries::<APoly>::zero(&ctx, 6).vp(&prime).unwrap(),
            Valuation::Infinite
        );
    }

    #[test]
    fn reduction_drops_vanishing_terms() {
        let ctx = f3();
        let rc = crate::residue::ResidueCtx::from_pi(poly(&ctx, &[1, 1])).unwrap();
        let s = series(&ctx, 6, &[(1, &[1, 1]), (2, &[1])]);
        let r = s.reduce(&rc).unwrap();
        assert_eq!(r.terms().len(), 1);
        assert_eq!(r.terms()[0].0, 2);
    }

    #[test]
    fn frobenius_power_matches_plain_power() {
        let ctx = f3();
        let s = series(&ctx, 30, &[(1, &[1]), (3, &[0, 2]), (5, &[1, 1])]);
        assert!(s.frob_pow(1).agrees_with(&s.pow(3)));
        assert!(s.frob_pow(2).agrees_with(&s.pow(9)));
    }

    #[test]
    fn displays_readably() {
        let ctx = f3();
        let s = series(&ctx, 9, &[(0, &[1]), (2, &[0, 1]), (6, &[2])]);
        assert_eq!(s.to_string(), "1 + T*u^2 + 2*u^6 + O(u^9)");
    }

    fn arb_series() -> impl Strategy<Value = USeries<APoly>> {
        prop::collection::vec((0usize..12, prop::collection::vec(0i64..3, 0..3)), 0..6).prop_map(
            |terms| {
                let ctx = f3();
                USeries::new(
                    &ctx,
                    12,
                    terms
                        .into_iter()
                        .map(|(e, c)| {
                            (e, APoly::from_coeffs(&ctx, c.iter().map(|&v| ctx.from_int(v)).collect()))
                        })
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn theta_is_a_derivation(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).unwrap().theta();
            let rhs = a.theta().mul(&b).unwrap().add(&a.mul(&b.theta()).unwrap()).unwrap();
            prop_assert!(lhs.agrees_with(&rhs));
        }

        #[test]
        fn inverse_round_trips(a in arb_series()) {
            let ctx = f3();
            let unit = USeries::one(&ctx, 12).add(&a.shift_up(1).truncate(12)).unwrap();
            let inv = unit.inv().unwrap();
            prop_assert_eq!(unit.mul(&inv).unwrap(), USeries::one(&ctx, 12));
            prop_assert_eq!(unit.exact_div(&unit).unwrap(), USeries::one(&ctx, 12));
        }
    }
}
