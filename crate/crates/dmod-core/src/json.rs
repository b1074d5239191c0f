//! JSON wire format for every value the tools exchange.
//!
//! Encodings:
//!   F_q element      [c_0, ..., c_(r-1)]       coordinates over F_p
//!   A polynomial     [e_0, e_1, ...]           F_q elements by T-degree
//!   K fraction       {"num": A, "den": A}
//!   residue element  A polynomial (the reduced representative)
//!   u-series         {"ring": "A"|"K"|"Fpd", "prec": N, "terms": [[n, c]]}
//!   isobaric poly    {"weight": w, "coeffs": [c_0, ..., c_w]}
//!   graded form      {"k": k, "l": l, "iso": {...}}
//!
//! Parsing is liberal about integers (negatives reduce mod p) and strict
//! about shape; any malformed input surfaces as Error::Invalid.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::apoly::APoly;
use crate::coeff::{Coeff, RingTag};
use crate::error::{Error, Result};
use crate::fq::{FieldCtx, FqElem};
use crate::graded::GradedForm;
use crate::isobaric::IsobaricPoly;
use crate::kfrac::KFrac;
use crate::residue::{FpElem, ResidueCtx};
use crate::series::USeries;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn fq_to_json(e: &FqElem) -> Value {
    Value::Array(e.coords().iter().map(|&c| json!(c)).collect())
}

pub fn fq_from_json(ctx: &Arc<FieldCtx>, v: &Value) -> Result<FqElem> {
    let arr = v.as_array().ok_or_else(|| bad("field element must be an array"))?;
    if arr.len() > ctx.r() {
        return Err(bad(format!(
            "field element has {} coordinates, at most {} allowed",
            arr.len(),
            ctx.r()
        )));
    }
    let mut coords = Vec::with_capacity(ctx.r());
    for c in arr {
        let n = c
            .as_i64()
            .ok_or_else(|| bad("field element coordinates must be integers"))?;
        coords.push(n.rem_euclid(ctx.p() as i64) as u64);
    }
    coords.resize(ctx.r(), 0);
    ctx.from_coords(&coords)
}

pub fn apoly_to_json(a: &APoly) -> Value {
    Value::Array(a.coeffs().iter().map(fq_to_json).collect())
}

pub fn apoly_from_json(ctx: &Arc<FieldCtx>, v: &Value) -> Result<APoly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial must be an array"))?;
    let coeffs = arr
        .iter()
        .map(|c| fq_from_json(ctx, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(APoly::from_coeffs(ctx, coeffs))
}

pub fn kfrac_to_json(x: &KFrac) -> Value {
    json!({ "num": apoly_to_json(x.num()), "den": apoly_to_json(x.den()) })
}

pub fn kfrac_from_json(ctx: &Arc<FieldCtx>, v: &Value) -> Result<KFrac> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("fraction must be an object with num and den"))?;
    let num = apoly_from_json(
        ctx,
        obj.get("num").ok_or_else(|| bad("fraction is missing num"))?,
    )?;
    let den = apoly_from_json(
        ctx,
        obj.get("den").ok_or_else(|| bad("fraction is missing den"))?,
    )?;
    KFrac::new(num, den)
}

pub fn fpelem_to_json(x: &FpElem) -> Value {
    apoly_to_json(x.rep())
}

pub fn fpelem_from_json(rc: &Arc<ResidueCtx>, v: &Value) -> Result<FpElem> {
    let rep = apoly_from_json(rc.field_ctx(), v)?;
    Ok(FpElem::from_apoly(rc, &rep))
}

/// Coefficient rings that know their own JSON encoding.
pub trait JsonCoeff: Coeff {
    fn coeff_to_json(&self) -> Value;
    fn coeff_from_json(ctx: &Self::Ctx, v: &Value) -> Result<Self>;
}

impl JsonCoeff for APoly {
    fn coeff_to_json(&self) -> Value {
        apoly_to_json(self)
    }
    fn coeff_from_json(ctx: &Self::Ctx, v: &Value) -> Result<APoly> {
        apoly_from_json(ctx, v)
    }
}

impl JsonCoeff for KFrac {
    fn coeff_to_json(&self) -> Value {
        kfrac_to_json(self)
    }
    fn coeff_from_json(ctx: &Self::Ctx, v: &Value) -> Result<KFrac> {
        kfrac_from_json(ctx, v)
    }
}

impl JsonCoeff for FpElem {
    fn coeff_to_json(&self) -> Value {
        fpelem_to_json(self)
    }
    fn coeff_from_json(ctx: &Self::Ctx, v: &Value) -> Result<FpElem> {
        fpelem_from_json(ctx, v)
    }
}

pub fn series_to_json<C: JsonCoeff>(s: &USeries<C>) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(e, c)| json!([e, c.coeff_to_json()]))
        .collect();
    json!({ "ring": C::TAG.as_str(), "prec": s.prec(), "terms": terms })
}

/// The declared coefficient ring of an encoded series.
pub fn series_ring(v: &Value) -> Result<RingTag> {
    let tag = v
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("series is missing its ring tag"))?;
    match tag {
        "A" => Ok(RingTag::A),
        "K" => Ok(RingTag::K),
        "Fpd" => Ok(RingTag::Fpd),
        other => Err(bad(format!("unknown coefficient ring {other:?}"))),
    }
}

pub fn series_from_json<C: JsonCoeff>(ctx: &C::Ctx, v: &Value) -> Result<USeries<C>> {
    if series_ring(v)? != C::TAG {
        return Err(bad("series ring tag does not match the expected ring"));
    }
    let prec = v
        .get("prec")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("series needs a positive integer prec"))? as usize;
    if prec == 0 {
        return Err(bad("series needs a positive integer prec"));
    }
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("series needs a terms array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
            bad("series terms must be [exponent, coefficient] pairs")
        })?;
        let e = pair[0]
            .as_u64()
            .ok_or_else(|| bad("series exponents must be nonnegative integers"))?
            as usize;
        parsed.push((e, C::coeff_from_json(ctx, &pair[1])?));
    }
    Ok(USeries::new(ctx, prec, parsed))
}

pub fn iso_to_json<C: JsonCoeff>(iso: &IsobaricPoly<C>) -> Value {
    let coeffs: Vec<Value> = iso.coeffs().iter().map(|c| c.coeff_to_json()).collect();
    json!({ "weight": iso.weight(), "coeffs": coeffs })
}

pub fn iso_from_json<C: JsonCoeff>(ctx: &C::Ctx, v: &Value) -> Result<IsobaricPoly<C>> {
    let weight = v
        .get("weight")
        .and_then(Value::as_i64)
        .ok_or_else(|| bad("isobaric polynomial needs an integer weight"))?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("isobaric polynomial needs a coeffs array"))?
        .iter()
        .map(|c| C::coeff_from_json(ctx, c))
        .collect::<Result<Vec<_>>>()?;
    IsobaricPoly::new(ctx, weight, coeffs)
}

pub fn form_to_json<C: JsonCoeff>(f: &GradedForm<C>) -> Value {
    json!({ "k": f.k(), "l": f.l(), "iso": iso_to_json(f.iso()) })
}

pub fn form_from_json<C: JsonCoeff>(ctx: &C::Ctx, v: &Value) -> Result<GradedForm<C>> {
    let k = v
        .get("k")
        .and_then(Value::as_i64)
        .ok_or_else(|| bad("form needs an integer weight k"))?;
    let l = v
        .get("l")
        .and_then(Value::as_i64)
        .ok_or_else(|| bad("form needs an integer type l"))?;
    let iso = iso_from_json(
        ctx,
        v.get("iso").ok_or_else(|| bad("form needs its iso part"))?,
    )?;
    GradedForm::new(k, l, iso)
}

/// A form over A or over K, as found in the wild: coefficient arrays mean
/// A, num/den objects mean K.
pub enum AnyForm {
    A(GradedForm<APoly>),
    K(GradedForm<KFrac>),
}

fn form_coeff_shapes(v: &Value) -> Result<&Vec<Value>> {
    v.get("iso")
        .and_then(|iso| iso.get("coeffs"))
        .and_then(Value::as_array)
        .ok_or_else(|| bad("form needs iso coefficients"))
}

pub fn form_any_from_json(ctx: &Arc<FieldCtx>, v: &Value) -> Result<AnyForm> {
    let coeffs = form_coeff_shapes(v)?;
    let is_k = coeffs.iter().any(Value::is_object);
    if is_k {
        Ok(AnyForm::K(form_from_json::<KFrac>(ctx, v)?))
    } else {
        Ok(AnyForm::A(form_from_json::<APoly>(ctx, v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::ResidueCtx;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn f9() -> Arc<FieldCtx> {
        FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    #[test]
    fn apoly_round_trip() {
        let ctx = f3();
        let a = poly(&ctx, &[1, 0, 2]);
        let v = apoly_to_json(&a);
        assert_eq!(v, json!([[1], [0], [2]]));
        assert_eq!(apoly_from_json(&ctx, &v).unwrap(), a);
        // Negative inputs reduce mod p.
        assert_eq!(apoly_from_json(&ctx, &json!([[-1]])).unwrap(), poly(&ctx, &[2]));
    }

    #[test]
    fn extension_field_coefficients() {
        let ctx = f9();
        let x = ctx.gen_x();
        let a = APoly::from_coeffs(&ctx, vec![x.clone(), ctx.one()]);
        let v = apoly_to_json(&a);
        assert_eq!(v, json!([[0, 1], [1, 0]]));
        assert_eq!(apoly_from_json(&ctx, &v).unwrap(), a);
        // Short coordinate arrays pad with zeros.
        assert_eq!(
            fq_from_json(&ctx, &json!([1])).unwrap(),
            ctx.one()
        );
        assert!(fq_from_json(&ctx, &json!([1, 2, 3])).is_err());
    }

    #[test]
    fn series_round_trip_and_ring_tags() {
        let ctx = f3();
        let s: USeries<APoly> = USeries::new(
            &ctx,
            9,
            vec![(2, poly(&ctx, &[1])), (6, poly(&ctx, &[2]))],
        );
        let v = series_to_json(&s);
        assert_eq!(series_ring(&v).unwrap(), RingTag::A);
        assert_eq!(series_from_json::<APoly>(&ctx, &v).unwrap(), s);
        assert!(series_from_json::<KFrac>(&ctx, &v).is_err());

        let half = KFrac::new(poly(&ctx, &[1]), poly(&ctx, &[0, 1])).unwrap();
        let t: USeries<KFrac> = USeries::new(&ctx, 4, vec![(1, half)]);
        let tv = series_to_json(&t);
        assert_eq!(series_ring(&tv).unwrap(), RingTag::K);
        assert_eq!(series_from_json::<KFrac>(&ctx, &tv).unwrap(), t);
    }

    #[test]
    fn residue_series_round_trip() {
        let ctx = f3();
        let rc = ResidueCtx::from_pi(poly(&ctx, &[1, 0, 1])).unwrap();
        let s: USeries<FpElem> = USeries::new(
            &rc,
            5,
            vec![(1, FpElem::from_apoly(&rc, &poly(&ctx, &[0, 1])))],
        );
        let v = series_to_json(&s);
        assert_eq!(series_ring(&v).unwrap(), RingTag::Fpd);
        assert_eq!(series_from_json::<FpElem>(&rc, &v).unwrap(), s);
    }

    #[test]
    fn form_round_trip_and_detection() {
        let ctx = f3();
        let f = GradedForm::delta_form(&ctx);
        let v = form_to_json(&f);
        assert_eq!(form_from_json::<APoly>(&ctx, &v).unwrap(), f);
        match form_any_from_json(&ctx, &v).unwrap() {
            AnyForm::A(g) => assert_eq!(g, f),
            AnyForm::K(_) => panic!("A-form detected as K"),
        }

        let fk = f.embed::<KFrac>(&ctx).unwrap();
        let vk = form_to_json(&fk);
        match form_any_from_json(&ctx, &vk).unwrap() {
            AnyForm::K(g) => assert_eq!(g, fk),
            AnyForm::A(_) => panic!("K-form detected as A"),
        }
    }

    #[test]
    fn malformed_inputs_are_invalid() {
        let ctx = f3();
        for v in [
            json!({ "ring": "Z", "prec": 4, "terms": [] }),
            json!({ "prec": 4, "terms": [] }),
            json!({ "ring": "A", "prec": 0, "terms": [] }),
            json!({ "ring": "A", "prec": 4, "terms": [[1]] }),
            json!({ "ring": "A", "prec": 4, "terms": [[-1, [[1]]]] }),
        ] {
            assert!(matches!(
                series_from_json::<APoly>(&ctx, &v).unwrap_err(),
                Error::Invalid(_)
            ));
        }
        assert!(form_from_json::<APoly>(&ctx, &json!({ "k": 2 })).is_err());
    }
}
