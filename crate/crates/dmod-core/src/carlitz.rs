//! The Carlitz module and the u-expansions of the scaling maps u(az).
//!
//! The Carlitz module is the ring map a -> C_a from A into twisted
//! polynomials, pinned down by C_T(X) = T X + X^q and F_q-linearity. Writing
//! u = 1/e(z) for the Carlitz exponential, the scaled uniformizer u(az) is a
//! power series in u with coefficients in A, computed here by inverting
//! C_a(1/u) term by term.

use std::sync::Arc;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::series::USeries;

/// An F_q-linear (twisted) polynomial sum c_i X^(q^i), stored by its
/// coefficient list c_0 .. c_d.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlitzPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<APoly>,
}

impl CarlitzPoly {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Coefficients c_0 .. c_d with respect to X^(q^i).
    pub fn coeffs(&self) -> &[APoly] {
        &self.coeffs
    }

    /// The twisted degree d (so the polynomial has degree q^d in X).
    pub fn twisted_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Composition of twisted polynomials: (f o g)_k = sum over i + j = k of
    /// f_i g_j^(q^i).
    pub fn compose(&self, other: &CarlitzPoly) -> CarlitzPoly {
        let d = self.twisted_degree() + other.twisted_degree();
        let mut out = vec![APoly::zero(&self.ctx); d + 1];
        for (i, fi) in self.coeffs.iter().enumerate() {
            let mut gq = other.coeffs.clone();
            for g in gq.iter_mut() {
                for _ in 0..i {
                    *g = g.frobenius_q();
                }
            }
            for (j, gj) in gq.iter().enumerate() {
                out[i + j] = out[i + j].add(&fi.mul(gj));
            }
        }
        CarlitzPoly { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Applies the twisted polynomial to a series with A coefficients.
    pub fn apply_series(&self, s: &USeries<APoly>) -> USeries<APoly> {
        let mut acc = USeries::zero(s.ctx(), s.prec());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = s.frob_pow(i as u32).scale(c).expect("same ring");
            acc = acc.add(&term).expect("same ring");
        }
        acc
    }
}

/// The Carlitz polynomial C_a for nonzero a, via the recursion
/// C_(T^(j+1)) = C_T o C_(T^j) and F_q-linearity in a.
pub fn carlitz_poly(a: &APoly) -> Result<CarlitzPoly> {
    if a.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let ctx = a.ctx().clone();
    let deg = a.degree().unwrap();
    // Coefficient lists of C_(T^j) for j = 0 .. deg, built in place:
    // c'_i = T b_i + b_(i-1)^q.
    let t = APoly::t(&ctx);
    let mut power: Vec<APoly> = vec![APoly::one(&ctx)];
    let mut out = vec![APoly::zero(&ctx); deg + 1];
    for (j, aj) in a.coeffs().iter().enumerate() {
        if j > 0 {
            let mut next = vec![APoly::zero(&ctx); power.len() + 1];
            for (i, b) in power.iter().enumerate() {
                next[i] = next[i].add(&t.mul(b));
                next[i + 1] = next[i + 1].add(&b.frobenius_q());
            }
            power = next;
        }
        if !aj.is_zero() {
            let scalar = APoly::constant(&ctx, aj.clone());
            for (i, b) in power.iter().enumerate() {
                out[i] = out[i].add(&scalar.mul(b));
            }
        }
    }
    Ok(CarlitzPoly { ctx, coeffs: out })
}

/// The u-expansion of u(az) for monic a, to precision N:
/// u(az) = u^Q / (1 + sum over i < d of c_i u^(Q - q^i)) with Q = q^d,
/// d = deg a, and c_i the coefficients of C_a.
pub fn u_scaled(a: &APoly, prec: usize) -> Result<USeries<APoly>> {
    if a.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let ctx = a.ctx().clone();
    let q = ctx.q() as usize;
    let d = a.degree().unwrap();
    let mut big_q = 1usize;
    for _ in 0..d {
        big_q = big_q.saturating_mul(q);
        if big_q >= prec {
            return Ok(USeries::zero(&ctx, prec));
        }
    }
    if big_q >= prec {
        return Ok(USeries::zero(&ctx, prec));
    }
    let cp = carlitz_poly(a)?;
    let inner_prec = prec - big_q;
    let mut inner_terms = Vec::with_capacity(d + 1);
    let mut qi = 1usize;
    for i in 0..d {
        inner_terms.push((big_q - qi, cp.coeffs()[i].clone()));
        qi *= q;
    }
    inner_terms.push((0, APoly::one(&ctx)));
    let inner = USeries::new(&ctx, inner_prec, inner_terms);
    Ok(inner.inv()?.shift_up(big_q))
}
