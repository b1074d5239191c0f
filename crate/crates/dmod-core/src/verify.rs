//! Built-in consistency suites. Every check recomputes both sides of an
//! identity from scratch at the requested precision and compares exactly;
//! nothing is sampled or approximated.

use std::sync::Arc;

use serde::Serialize;

use crate::apoly::APoly;
use crate::carlitz;
use crate::error::Result;
use crate::fq::FieldCtx;
use crate::generators::Generators;
use crate::graded::{dimension, equality_bound, phi_d, victor_miller, GradedForm};
use crate::modp;
use crate::residue::ResidueCtx;
use crate::series::USeries;

/// Outcome of a single verification.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub details: String,
}

fn check(id: &str, statement: &str, pass: bool, details: String) -> Check {
    Check {
        id: id.to_string(),
        statement: statement.to_string(),
        pass,
        details,
    }
}

fn window(a: &USeries<APoly>, b: &USeries<APoly>) -> String {
    format!("compared through u^{}", a.prec().min(b.prec()) - 1)
}

/// The leading terms of each generator in closed form: exponents and
/// coefficients as polynomials in T, valid for every q. Terms below the
/// last listed exponent and not listed are zero.
pub fn expected_prefixes(ctx: &Arc<FieldCtx>) -> Vec<(&'static str, USeries<APoly>)> {
    let q = ctx.q() as usize;
    let t = APoly::t(ctx);
    let tq = t.frobenius_q();
    let one = APoly::from_int(ctx, 1);
    let neg = |a: &APoly| a.neg();
    let bracket = tq.sub(&t);
    vec![
        (
            "deltaT",
            USeries::new(
                ctx,
                q * (q - 1) + 1,
                vec![(q - 1, one.clone()), (q * (q - 1), neg(&one))],
            ),
        ),
        (
            "deltaW",
            USeries::new(
                ctx,
                q * (q - 1) + 1,
                vec![(0, one.clone()), (q - 1, t.clone()), (q * (q - 1), neg(&tq))],
            ),
        ),
        (
            "g1",
            USeries::new(
                ctx,
                (q * q - q + 1) * (q - 1) + 1,
                vec![
                    (0, one.clone()),
                    (q - 1, neg(&bracket)),
                    ((q * q - q + 1) * (q - 1), neg(&bracket)),
                ],
            ),
        ),
        (
            "ET",
            USeries::new(ctx, q + 1, vec![(1, one.clone()), (q, neg(&t))]),
        ),
        (
            "h",
            USeries::new(
                ctx,
                (q - 1) * (q - 1) + 2,
                vec![(1, neg(&one)), ((q - 1) * (q - 1) + 1, neg(&one))],
            ),
        ),
        (
            "delta",
            USeries::new(ctx, q, vec![(q - 1, neg(&one))]),
        ),
        (
            "uT",
            USeries::new(ctx, q + 1, vec![(q, one.clone())]),
        ),
    ]
}

/// Identities among the generators over A, compared as u-expansions at
/// precision `prec` (or the natural window of each statement if smaller).
pub fn identity_suite(gens: &Generators, prec: usize) -> Result<Vec<Check>> {
    let ctx = gens.ctx();
    let q = ctx.q();
    let mut out = Vec::new();

    let e = gens.e(prec)?;
    let et = gens.et(prec)?;
    let dw = gens.delta_w(prec)?;
    let dt = gens.delta_t(prec)?;
    let g1 = gens.g1(prec)?;
    let h = gens.h(prec)?;
    let delta = gens.delta(prec)?;
    let ut = gens.u_t(prec)?;

    // The derivation of weight k at series level.
    let dk = |f: &USeries<APoly>, k: i64| -> Result<USeries<APoly>> {
        f.theta().add(&e.mul(f)?.scale_int(k))
    };

    let mut all = true;
    let mut parts = Vec::new();
    for (name, expected) in expected_prefixes(ctx) {
        let computed = match name {
            "deltaT" => &dt,
            "deltaW" => &dw,
            "g1" => &g1,
            "ET" => &et,
            "h" => &h,
            "delta" => &delta,
            "uT" => &ut,
            _ => unreachable!(),
        };
        let ok = computed.agrees_with(&expected);
        all &= ok;
        parts.push(format!("{name}: {}", if ok { "ok" } else { "FAIL" }));
    }
    out.push(check(
        "printed-expansions",
        "generator u-expansions match their closed-form leading terms",
        all,
        parts.join(", "),
    ));

    let tq = APoly::t(ctx).frobenius_q();
    let rhs = dw.sub(&dt.scale(&tq)?)?;
    out.push(check(
        "g1-split",
        "g_1 = Delta_W - T^q Delta_T",
        g1.agrees_with(&rhs),
        window(&g1, &rhs),
    ));

    let lhs = et.pow(q - 1);
    let rhs = dw.mul(&dt)?;
    out.push(check(
        "et-power",
        "E_T^(q-1) = Delta_W Delta_T",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let lhs = dk(&dw, q as i64 - 1)?;
    let rhs = dw.mul(&et)?.neg();
    out.push(check(
        "partial-dw",
        "partial(Delta_W) = -Delta_W E_T",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let lhs = dk(&dt, q as i64 - 1)?;
    out.push(check(
        "partial-dt",
        "partial(Delta_T) = 0",
        lhs.is_zero(),
        format!("checked through u^{}", lhs.prec() - 1),
    ));

    let lhs = dk(&et, 2)?;
    let rhs = et.mul(&et)?;
    out.push(check(
        "partial-et",
        "partial(E_T) = E_T^2",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let dg1 = dk(&g1, q as i64 - 1)?;
    let prod = dw.mul(&et)?.neg();
    out.push(check(
        "h-partial",
        "h = partial(g_1) = -Delta_W E_T",
        dg1.agrees_with(&h) && h.agrees_with(&prod),
        window(&dg1, &h),
    ));

    let rhs = dw.frob_pow(1).mul(&dt)?.neg();
    out.push(check(
        "delta-product",
        "Delta = -Delta_W^q Delta_T",
        delta.agrees_with(&rhs),
        window(&delta, &rhs),
    ));

    let lhs = h.pow(q - 1);
    let rhs = delta.neg();
    out.push(check(
        "h-power",
        "h^(q-1) = -Delta",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let lhs = g1.compose(&ut)?;
    let rhs = gens.g1_tz(prec)?;
    out.push(check(
        "g1-compose",
        "g_1(Tz) = g_1 o u(Tz)",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let t2 = APoly::t(ctx).mul(&APoly::t(ctx));
    let lhs = carlitz::u_scaled(&t2, prec)?;
    let rhs = ut.compose(&ut)?;
    out.push(check(
        "ut-composition",
        "u(T^2 z) = u(Tz) o u(Tz)",
        lhs.agrees_with(&rhs),
        window(&lhs, &rhs),
    ));

    let g2_poly = GradedForm::gd_form(ctx, 2)?.to_series(gens, prec)?;
    let g2 = gens.gd(2, prec)?;
    out.push(check(
        "phi-gd",
        "phi_2(Delta_W, Delta_T) = g_2",
        g2_poly.agrees_with(&g2),
        window(&g2_poly, &g2),
    ));

    let mut all = true;
    let mut parts = Vec::new();
    let forms = [
        ("g_1", GradedForm::g1_form(ctx)),
        ("h", GradedForm::h_form(ctx)),
        ("Delta", GradedForm::delta_form(ctx)),
        ("g_2", GradedForm::gd_form(ctx, 2)?),
    ];
    for (name, f) in &forms {
        let bound = equality_bound(q, f.k(), f.l())?;
        let s = f.to_series(gens, bound + 1)?;
        let back = GradedForm::from_series(gens, f.k(), f.l(), &s)?;
        let ok = back == *f;
        all &= ok;
        parts.push(format!("{name}: {}", if ok { "ok" } else { "FAIL" }));
    }
    out.push(check(
        "form-roundtrip",
        "from_series(to_series(f), k, l) = f",
        all,
        parts.join(", "),
    ));

    let mut all = true;
    let mut parts = Vec::new();
    for (name, f) in &forms {
        let s = f.to_series(gens, prec)?;
        let lhs = f.partial()?.to_series(gens, prec)?;
        let rhs = dk(&s, f.k())?;
        let ok = lhs.agrees_with(&rhs);
        all &= ok;
        parts.push(format!("{name}: {}", if ok { "ok" } else { "FAIL" }));
    }
    out.push(check(
        "partial-compat",
        "partial(f) as a form matches theta(f) + kEf as series",
        all,
        parts.join(", "),
    ));

    let mut all = true;
    let mut tested = 0usize;
    for w in 1..=3usize {
        for l in 0..(q - 1).min(3) {
            let k = w as i64 * (q as i64 - 1) + 2 * l as i64;
            let basis = victor_miller(gens, k, l as i64)?;
            all &= basis.len() == dimension(q, k, l as i64);
            let bound = equality_bound(q, k, l as i64)?;
            for (j, f) in basis.iter().enumerate() {
                let s = f.to_series(gens, bound + 1)?;
                for i in 0..basis.len() {
                    let c = s.coeff_at(i * (q as usize - 1) + l as usize);
                    let want = if i == j {
                        APoly::from_int(ctx, 1)
                    } else {
                        APoly::zero(ctx)
                    };
                    all &= c == want;
                }
            }
            tested += 1;
        }
    }
    out.push(check(
        "vm-duality",
        "Victor-Miller basis has b_{f_j}(i) = delta_ij",
        all,
        format!("{tested} weight/type pairs"),
    ));

    Ok(out)
}

/// Structural facts modulo a chosen prime pi of degree d.
pub fn modp_suite(
    gens: &Generators,
    rc: &Arc<ResidueCtx>,
    prec: usize,
) -> Result<Vec<Check>> {
    let ctx = gens.ctx();
    let q = ctx.q();
    let d = rc.degree() as u32;
    let mut out = Vec::new();

    let gd = gens.gd(d, prec)?.reduce(rc)?;
    let one = USeries::one(rc, prec);
    out.push(check(
        "gd-one",
        "g_d = 1 mod pi",
        gd == one,
        format!("d = {d}, compared through u^{}", prec - 1),
    ));

    let phi = modp::iso_reduce(&phi_d(ctx, d)?, rc)?;
    out.push(check(
        "phi-squarefree",
        "phi_d mod pi is squarefree",
        modp::squarefree(&phi)?,
        format!("total degree {}", phi.total_degree()),
    ));

    let uc = phi.u_content().unwrap_or(0);
    let vc = phi.v_content().unwrap_or(0);
    out.push(check(
        "phi-no-uv",
        "neither U nor V divides phi_d mod pi",
        !phi.is_zero() && uc == 0 && vc == 0,
        format!("U-content {uc}, V-content {vc}"),
    ));

    let psi = modp::iso_reduce(&modp::psi_d(ctx, d)?, rc)?;
    out.push(check(
        "psi-phi-coprime",
        "gcd(psi_d, phi_d) = 1 mod pi",
        modp::coprime(&psi, &phi)?,
        format!("psi_d total degree {}", psi.total_degree()),
    ));

    out.push(check(
        "e-congruence",
        "E = -partial(g_d) mod pi",
        modp::verify_e_congruence(gens, rc, prec)?,
        format!("compared through u^{}", prec - 1),
    ));

    let dt_form = GradedForm::delta_t_form(ctx);
    let dw_form = GradedForm::delta_w_form(ctx);
    let et_form = GradedForm::et_form(ctx);
    let gd_form = GradedForm::gd_form(ctx, d)?;

    let mut all = true;
    let mut parts = Vec::new();
    for m in 0..3u64 {
        let f = dt_form.graded_mul(&gd_form.pow(m))?;
        let r = modp::filtration(&f, rc)?;
        let ok = r.value == Some(q as i64 - 1) && r.steps == m as usize;
        all &= ok;
        parts.push(format!("m = {m}: {}", if ok { "ok" } else { "FAIL" }));
    }
    out.push(check(
        "filtration-steps",
        "w(Delta_T g_d^m) = q - 1 for m = 0, 1, 2",
        all,
        parts.join(", "),
    ));

    let r = modp::filtration(&dw_form.graded_mul(&gd_form)?, rc)?;
    out.push(check(
        "filtration-dw",
        "w(Delta_W g_d) = q - 1",
        r.value == Some(q as i64 - 1),
        format!("steps {}", r.steps),
    ));

    let r = modp::filtration(&et_form, rc)?;
    out.push(check(
        "filtration-et",
        "w(E_T) = 2",
        r.value == Some(2),
        format!("steps {}", r.steps),
    ));

    let r = modp::filtration(&dt_form.scale(rc.pi()), rc)?;
    out.push(check(
        "filtration-minf",
        "w(pi f) = -infinity",
        r.value.is_none(),
        "reduction vanishes".to_string(),
    ));

    let rep = modp::congruent(&gd_form, &GradedForm::unit(ctx), rc)?;
    out.push(check(
        "congruent-gd-one",
        "g_d = 1 mod pi as forms, with m = 1",
        rep.congruent && rep.m == Some(1),
        format!(
            "m = {}",
            rep.m.map_or_else(|| "none".to_string(), |m| m.to_string())
        ),
    ));

    let f = dt_form.graded_mul(&GradedForm::h_form(ctx))?;
    let fg = f.graded_mul(&gd_form)?;
    let rep = modp::congruent(&f, &fg, rc)?;
    let sf = f.to_series(gens, prec)?.reduce(rc)?;
    let sfg = fg.to_series(gens, prec)?.reduce(rc)?;
    out.push(check(
        "congruent-stable",
        "f = f g_d mod pi, with matching reduced series",
        rep.congruent && sf == sfg,
        format!("weights {} and {}", f.k(), fg.k()),
    ));

    let rep = modp::congruent(&dt_form, &dw_form, rc)?;
    out.push(check(
        "congruent-distinct",
        "Delta_T and Delta_W are not congruent mod pi",
        !rep.congruent,
        "weight gap 0, distinct reductions".to_string(),
    ));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::PrimeSpec;

    #[test]
    fn identity_suite_passes() {
        for q in [3u64, 5] {
            let ctx = FieldCtx::new(q, 1, None).unwrap();
            let gens = Generators::new(&ctx);
            let checks = identity_suite(&gens, 40).unwrap();
            assert_eq!(checks.len(), 15);
            for c in &checks {
                assert!(c.pass, "q = {q}: {} failed: {}", c.id, c.details);
            }
        }
    }

    #[test]
    fn modp_suite_passes() {
        let ctx = FieldCtx::new(3, 1, None).unwrap();
        let gens = Generators::new(&ctx);
        for coeffs in [vec![1i64, 1], vec![1, 0, 1]] {
            let pi = APoly::from_coeffs(
                &ctx,
                coeffs.iter().map(|&c| ctx.from_int(c)).collect(),
            );
            let spec = PrimeSpec::new(pi.clone()).unwrap();
            let rc = ResidueCtx::new(spec);
            let checks = modp_suite(&gens, &rc, 40).unwrap();
            assert_eq!(checks.len(), 12);
            for c in &checks {
                assert!(c.pass, "pi = {pi}: {} failed: {}", c.id, c.details);
            }
        }
    }

    #[test]
    fn checks_serialize() {
        let ctx = FieldCtx::new(3, 1, None).unwrap();
        let gens = Generators::new(&ctx);
        let checks = identity_suite(&gens, 20).unwrap();
        let text = serde_json::to_string(&checks).unwrap();
        assert!(text.contains("\"et-power\""));
        assert!(text.contains("\"pass\":true"));
    }
}
