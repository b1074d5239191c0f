//! Reduction of forms modulo a prime of A, weight filtration, and
//! congruence decisions.
//!
//! Fix a monic irreducible pi different from T, of degree d. The reduction
//! of g_d modulo pi is 1, so multiplying by g_d changes nothing mod pi while
//! raising the weight by q^d - 1; the polynomial phi_d (with g_d =
//! phi_d(Delta_W, Delta_T)) generates all such collapses. The filtration of
//! a form is found by dividing out phi_d as often as possible, and two forms
//! are congruent exactly when their reductions differ by a power of phi_d.

use std::sync::Arc;

use crate::apoly::APoly;
use crate::coeff::Reduce;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::generators::Generators;
use crate::graded::{phi_d, GradedForm};
use crate::isobaric::IsobaricPoly;
use crate::residue::{FpElem, ResidueCtx};

pub type ResidueIso = IsobaricPoly<FpElem>;

/// Coefficientwise reduction of an isobaric polynomial modulo pi.
pub fn iso_reduce<C: Reduce>(
    iso: &IsobaricPoly<C>,
    rc: &Arc<ResidueCtx>,
) -> Result<ResidueIso> {
    let coeffs = iso
        .coeffs()
        .iter()
        .map(|c| c.reduce(rc))
        .collect::<Result<Vec<_>>>()?;
    IsobaricPoly::new(rc, iso.weight(), coeffs)
}

/// Reduction of a graded form modulo pi, keeping weight and type.
pub fn form_reduce<C: Reduce>(
    f: &GradedForm<C>,
    rc: &Arc<ResidueCtx>,
) -> Result<GradedForm<FpElem>> {
    GradedForm::new(f.k(), f.l(), iso_reduce(f.iso(), rc)?)
}

// Univariate helpers over the residue field. An isobaric polynomial of
// total degree w corresponds to p(x) = P(1, x) plus the U-content w - deg p.

fn up_deg(v: &[FpElem]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn up_divrem(
    num: &[FpElem],
    den: &[FpElem],
    rc: &Arc<ResidueCtx>,
) -> Result<(Vec<FpElem>, Vec<FpElem>)> {
    let dd = up_deg(den).ok_or(Error::DivisionByZero)?;
    let lead_inv = den[dd].inv()?;
    let mut rem: Vec<FpElem> = num.to_vec();
    let dn = match up_deg(&rem) {
        Some(dn) if dn >= dd => dn,
        _ => return Ok((vec![FpElem::zero(rc)], rem)),
    };
    let mut quot = vec![FpElem::zero(rc); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = rem[i].mul(&lead_inv);
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate().take(dd + 1) {
            rem[i - dd + j] = rem[i - dd + j].sub(&c.mul(dj));
        }
    }
    Ok((quot, rem))
}

fn up_gcd(a: &[FpElem], b: &[FpElem], rc: &Arc<ResidueCtx>) -> Result<Vec<FpElem>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while up_deg(&y).is_some() {
        let (_, r) = up_divrem(&x, &y, rc)?;
        x = y;
        y = r;
    }
    // Normalize to monic for a canonical answer.
    if let Some(d) = up_deg(&x) {
        let inv = x[d].inv()?;
        for c in x.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    Ok(x)
}

fn up_deriv(a: &[FpElem], rc: &Arc<ResidueCtx>) -> Vec<FpElem> {
    if a.len() <= 1 {
        return vec![FpElem::zero(rc)];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.int_mul(i as i64))
        .collect()
}

/// Whether divisor | dividend in F_p[U, V], with the quotient if so. Both
/// arguments are isobaric; the quotient has the difference weight. Errors
/// only when the divisor is zero.
pub fn iso_divides(
    divisor: &ResidueIso,
    dividend: &ResidueIso,
) -> Result<Option<ResidueIso>> {
    if divisor.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let rc = divisor.ctx();
    if dividend.total_degree() < divisor.total_degree() && !dividend.is_zero() {
        return Ok(None);
    }
    let wq = match dividend.total_degree().checked_sub(divisor.total_degree()) {
        Some(wq) => wq,
        None => return Ok(None),
    };
    if dividend.is_zero() {
        let q = rc.field_ctx().q() as i64;
        return Ok(Some(IsobaricPoly::zero(rc, wq as i64 * (q - 1))));
    }
    let (quot, rem) = up_divrem(dividend.coeffs(), divisor.coeffs(), rc)?;
    if up_deg(&rem).is_some() {
        return Ok(None);
    }
    // The univariate quotient must fit in total degree wq; if its degree is
    // larger the dividend lacks the U-content of the divisor's multiples.
    let dq = up_deg(&quot).unwrap_or(0);
    if dq > wq {
        return Ok(None);
    }
    let mut coeffs = quot;
    coeffs.resize(wq + 1, FpElem::zero(rc));
    let q = rc.field_ctx().q() as i64;
    Ok(Some(IsobaricPoly::new(rc, wq as i64 * (q - 1), coeffs)?))
}

/// Whether two reduced isobaric polynomials share no common factor.
pub fn coprime(a: &ResidueIso, b: &ResidueIso) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.u_content().unwrap() >= 1 && b.u_content().unwrap() >= 1 {
        return Ok(false);
    }
    let g = up_gcd(a.coeffs(), b.coeffs(), a.ctx())?;
    Ok(up_deg(&g) == Some(0))
}

/// Squarefreeness of a nonzero reduced isobaric polynomial in F_p[U, V].
/// The univariate gcd test covers every factor involving V; a repeated U
/// factor shows up as U-content at least 2.
pub fn squarefree(iso: &ResidueIso) -> Result<bool> {
    if iso.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if iso.u_content().unwrap() >= 2 {
        return Ok(false);
    }
    let rc = iso.ctx();
    let deriv = up_deriv(iso.coeffs(), rc);
    if up_deg(&deriv).is_none() {
        // Zero derivative with positive degree means a p-th power.
        return Ok(up_deg(iso.coeffs()) == Some(0));
    }
    let g = up_gcd(iso.coeffs(), &deriv, rc)?;
    Ok(up_deg(&g) == Some(0))
}

/// The isobaric polynomial psi_d with partial(g_d) = psi_d(Delta_W,
/// Delta_T) E_T, over A.
pub fn psi_d(ctx: &Arc<FieldCtx>, d: u32) -> Result<IsobaricPoly<APoly>> {
    Ok(GradedForm::gd_form(ctx, d)?.partial()?.iso().clone())
}

#[derive(Debug, Clone)]
pub struct FiltrationResult {
    /// The filtration weight, None for reduction zero (filtration minus
    /// infinity).
    pub value: Option<i64>,
    /// How many times phi_d divided the reduction.
    pub steps: usize,
    /// The remaining cofactor once phi_d no longer divides.
    pub witness: ResidueIso,
}

/// Weight filtration of a form modulo pi: the smallest weight of a form
/// with the same reduction, obtained by stripping factors of phi_d.
pub fn filtration<C: Reduce>(
    f: &GradedForm<C>,
    rc: &Arc<ResidueCtx>,
) -> Result<FiltrationResult> {
    let reduced = form_reduce(f, rc)?;
    if reduced.is_zero() {
        return Ok(FiltrationResult {
            value: None,
            steps: 0,
            witness: reduced.iso().clone(),
        });
    }
    let ctx = rc.field_ctx();
    let d = rc.degree() as u32;
    let qd1 = (ctx.q() as i64)
        .checked_pow(d)
        .ok_or_else(|| Error::Invalid("prime degree too large".into()))?
        - 1;
    let phir = iso_reduce(&phi_d(ctx, d)?, rc)?;
    let mut witness = reduced.iso().clone();
    let mut steps = 0usize;
    while let Some(qt) = iso_divides(&phir, &witness)? {
        witness = qt;
        steps += 1;
    }
    Ok(FiltrationResult {
        value: Some(f.k() - steps as i64 * qd1),
        steps,
        witness,
    })
}

#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub congruent: bool,
    /// The weight gap (k_f - k_g)/(q^d - 1) when the congruence holds with
    /// distinct or equal weights; None for incongruent pairs and for the
    /// trivial case of two reductions that both vanish.
    pub m: Option<i64>,
}

/// Decides whether f and g have the same u-expansion modulo pi. Nonzero
/// congruent reductions must share the type, have weights differing by a
/// multiple of q^d - 1, and satisfy iso_big = iso_small phi_d^m.
pub fn congruent<C: Reduce>(
    f: &GradedForm<C>,
    g: &GradedForm<C>,
    rc: &Arc<ResidueCtx>,
) -> Result<CongruenceReport> {
    let fr = form_reduce(f, rc)?;
    let gr = form_reduce(g, rc)?;
    let not = CongruenceReport { congruent: false, m: None };
    match (fr.is_zero(), gr.is_zero()) {
        (true, true) => return Ok(CongruenceReport { congruent: true, m: None }),
        (true, false) | (false, true) => return Ok(not),
        _ => {}
    }
    if fr.l() != gr.l() {
        return Ok(not);
    }
    let ctx = rc.field_ctx();
    let d = rc.degree() as u32;
    let qd1 = (ctx.q() as i64)
        .checked_pow(d)
        .ok_or_else(|| Error::Invalid("prime degree too large".into()))?
        - 1;
    let dk = fr.k() - gr.k();
    if dk % qd1 != 0 {
        return Ok(not);
    }
    let m = dk / qd1;
    let (big, small) = if m >= 0 { (&fr, &gr) } else { (&gr, &fr) };
    let phir = iso_reduce(&phi_d(ctx, d)?, rc)?;
    let target = small.iso().mul(&phir.pow(m.unsigned_abs()))?;
    if big.iso() == &target {
        Ok(CongruenceReport { congruent: true, m: Some(m) })
    } else {
        Ok(not)
    }
}

/// Checks the companion congruence of the false Eisenstein series,
/// E = -partial(g_d) mod pi, as u-expansions to the given precision.
pub fn verify_e_congruence(
    gens: &Generators,
    rc: &Arc<ResidueCtx>,
    prec: usize,
) -> Result<bool> {
    let ctx = gens.ctx();
    if ctx != rc.field_ctx() {
        return Err(Error::RingMismatch);
    }
    let d = rc.degree() as u32;
    let e = gens.e(prec)?.reduce(rc)?;
    let dgd = GradedForm::gd_form(ctx, d)?
        .partial()?
        .to_series(gens, prec)?
        .reduce(rc)?;
    Ok(e == dgd.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::USeries;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    fn rc_t1(ctx: &Arc<FieldCtx>) -> Arc<ResidueCtx> {
        ResidueCtx::from_pi(poly(ctx, &[1, 1])).unwrap()
    }

    fn riso(rc: &Arc<ResidueCtx>, coeffs: &[i64]) -> ResidueIso {
        let w = coeffs.len() as i64 - 1;
        let q = rc.field_ctx().q() as i64;
        IsobaricPoly::new(
            rc,
            w * (q - 1),
            coeffs.iter().map(|&c| FpElem::from_int(rc, c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn reduction_of_phi_1() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        // phi_1 = U - T^3 V becomes U + V mod T + 1.
        let phir = iso_reduce(&phi_d(&ctx, 1).unwrap(), &rc).unwrap();
        assert_eq!(phir, riso(&rc, &[1, 1]));
    }

    #[test]
    fn divisibility_with_u_content() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        // (U + V) | (U^2 - V^2), quotient U - V.
        let d = iso_divides(&riso(&rc, &[1, 1]), &riso(&rc, &[1, 0, 2])).unwrap();
        assert_eq!(d, Some(riso(&rc, &[1, 2])));
        // V^2 divides U V^2 with quotient U.
        let v2 = IsobaricPoly::monomial(&rc, 2, 2, FpElem::one(&rc));
        let uv2 = IsobaricPoly::monomial(&rc, 3, 2, FpElem::one(&rc));
        assert_eq!(
            iso_divides(&v2, &uv2).unwrap(),
            Some(IsobaricPoly::monomial(&rc, 1, 0, FpElem::one(&rc)))
        );
        // U V^2 does not divide U^2 V.
        let u2v = IsobaricPoly::monomial(&rc, 3, 1, FpElem::one(&rc));
        assert_eq!(iso_divides(&uv2, &u2v).unwrap(), None);
        // U^2 does not divide V^2 even though the univariate quotient is 1.
        let u2 = IsobaricPoly::monomial(&rc, 2, 0, FpElem::one(&rc));
        assert_eq!(iso_divides(&u2, &v2).unwrap(), None);
        assert!(matches!(
            iso_divides(&IsobaricPoly::zero(&rc, 2), &v2).unwrap_err(),
            Error::ZeroDivisor
        ));
    }

    #[test]
    fn squarefree_cases() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        // U V (U + V): coefficients of w = 3 are [0, 1, 1, 0].
        assert!(squarefree(&riso(&rc, &[0, 1, 1, 0])).unwrap());
        // (U + V)^2 = U^2 + 2 U V + V^2.
        assert!(!squarefree(&riso(&rc, &[1, 2, 1])).unwrap());
        // U^2 V.
        assert!(!squarefree(&riso(&rc, &[0, 1, 0, 0])).unwrap());
        // V^3 = (cube): zero derivative.
        assert!(!squarefree(&riso(&rc, &[0, 0, 0, 1])).unwrap());
        assert!(squarefree(&riso(&rc, &[1])).unwrap());
        assert!(matches!(
            squarefree(&IsobaricPoly::zero(&rc, 2)).unwrap_err(),
            Error::ZeroPolynomial
        ));
    }

    #[test]
    fn psi_1_is_minus_u() {
        let ctx = f3();
        let psi = psi_d(&ctx, 1).unwrap();
        assert_eq!(psi.coeffs(), &[poly(&ctx, &[2]), poly(&ctx, &[])]);
    }

    #[test]
    fn psi_and_phi_are_coprime_mod_small_primes() {
        let ctx = f3();
        for pi in [&[1i64, 1][..], &[2, 1], &[1, 0, 1]] {
            let rc = ResidueCtx::from_pi(poly(&ctx, pi)).unwrap();
            let d = rc.degree() as u32;
            let phir = iso_reduce(&phi_d(&ctx, d).unwrap(), &rc).unwrap();
            let psir = iso_reduce(&psi_d(&ctx, d).unwrap(), &rc).unwrap();
            assert!(coprime(&phir, &psir).unwrap(), "pi = {:?}", pi);
            assert!(squarefree(&phir).unwrap(), "pi = {:?}", pi);
        }
    }

    #[test]
    fn filtration_strips_phi_factors() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        let dt = GradedForm::delta_t_form(&ctx);
        let g1 = GradedForm::g1_form(&ctx);

        let f0 = filtration(&dt, &rc).unwrap();
        assert_eq!(f0.value, Some(2));
        assert_eq!(f0.steps, 0);

        let f2 = filtration(
            &dt.graded_mul(&g1).unwrap().graded_mul(&g1).unwrap(),
            &rc,
        )
        .unwrap();
        assert_eq!(f2.value, Some(2));
        assert_eq!(f2.steps, 2);

        let et = GradedForm::et_form(&ctx);
        assert_eq!(filtration(&et, &rc).unwrap().value, Some(2));

        let killed = dt.scale(&poly(&ctx, &[1, 1]));
        let fk = filtration(&killed, &rc).unwrap();
        assert_eq!(fk.value, None);
        assert!(fk.witness.is_zero());
    }

    #[test]
    fn congruence_decisions() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        let unit = GradedForm::unit(&ctx);
        let g1 = GradedForm::g1_form(&ctx);
        let r = congruent(&g1, &unit, &rc).unwrap();
        assert!(r.congruent);
        assert_eq!(r.m, Some(1));

        let dt = GradedForm::delta_t_form(&ctx);
        let dw = GradedForm::delta_w_form(&ctx);
        assert!(!congruent(&dt, &dw, &rc).unwrap().congruent);

        let f = GradedForm::delta_form(&ctx);
        let fg = f.graded_mul(&GradedForm::gd_form(&ctx, 1).unwrap()).unwrap();
        let r2 = congruent(&fg, &f, &rc).unwrap();
        assert!(r2.congruent);
        assert_eq!(r2.m, Some(1));

        let z1 = dt.scale(&poly(&ctx, &[1, 1]));
        let z2 = dw.scale(&poly(&ctx, &[2, 2]));
        let r3 = congruent(&z1, &z2, &rc).unwrap();
        assert!(r3.congruent);
        assert_eq!(r3.m, None);
    }

    #[test]
    fn congruent_forms_share_series_mod_pi() {
        let ctx = f3();
        let rc = rc_t1(&ctx);
        let gens = Generators::new(&ctx);
        let f = GradedForm::h_form(&ctx).graded_mul(&GradedForm::delta_t_form(&ctx)).unwrap();
        let fg = f.graded_mul(&GradedForm::gd_form(&ctx, 1).unwrap()).unwrap();
        assert!(congruent(&fg, &f, &rc).unwrap().congruent);
        let n = 30;
        let a = f.to_series(&gens, n).unwrap().reduce(&rc).unwrap();
        let b = fg.to_series(&gens, n).unwrap().reduce(&rc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gd_reduces_to_one() {
        let ctx = f3();
        for pi in [&[1i64, 1][..], &[2, 1], &[1, 0, 1]] {
            let rc = ResidueCtx::from_pi(poly(&ctx, pi)).unwrap();
            let d = rc.degree() as u32;
            let gens = Generators::new(&ctx);
            let gd = gens.gd(d, 40).unwrap().reduce(&rc).unwrap();
            assert_eq!(gd, USeries::one(&rc, 40), "pi = {:?}", pi);
        }
    }

    #[test]
    fn e_congruence_holds() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        for pi in [&[1i64, 1][..], &[2, 1], &[1, 0, 1]] {
            let rc = ResidueCtx::from_pi(poly(&ctx, pi)).unwrap();
            assert!(
                verify_e_congruence(&gens, &rc, 40).unwrap(),
                "pi = {:?}",
                pi
            );
        }
    }
}
