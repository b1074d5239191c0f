//! u-expansions of the generating forms at level Gamma_0(T).
//!
//! Everything here is bootstrapped from the Carlitz module alone. The false
//! Eisenstein series E and the weight q-1 Eisenstein series g_1 come from
//! sums of scaled uniformizers over monic polynomials; the remaining
//! generators are algebraic combinations:
//!
//!   E_T      = E - T E(Tz)
//!   Delta_T  = (g_1(Tz) - g_1) / (T^q - T)
//!   Delta_W  = (T^q g_1(Tz) - T g_1) / (T^q - T)
//!   h        = -Delta_W E_T
//!   Delta    = -Delta_W^q Delta_T
//!
//! and the weight q^d - 1 Eisenstein series follow the two-term recursion
//!
//!   g_d = g_(d-1) g_1^(q^(d-1)) + (T^(q^(d-1)) - T) g_(d-2) mu^(q^(d-2)),
//!
//! where mu = Delta_W^q Delta_T. Computed series are cached per precision.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::apoly::{monic_polys, APoly};
use crate::carlitz::u_scaled;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::series::USeries;

type ASeries = USeries<APoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum GenKey {
    E,
    ETz,
    Et,
    G1,
    G1T,
    DeltaT,
    DeltaW,
    H,
    Mu,
    Gd(u32),
}

/// Shared computation context for generator expansions over one F_q.
pub struct Generators {
    ctx: Arc<FieldCtx>,
    cache: RwLock<HashMap<(GenKey, usize), ASeries>>,
}

impl Generators {
    pub fn new(ctx: &Arc<FieldCtx>) -> Generators {
        Generators { ctx: Arc::clone(ctx), cache: RwLock::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn cached<F>(&self, key: GenKey, prec: usize, compute: F) -> Result<ASeries>
    where
        F: FnOnce() -> Result<ASeries>,
    {
        if let Some(s) = self.cache.read().unwrap().get(&(key, prec)) {
            return Ok(s.clone());
        }
        let s = compute()?;
        self.cache.write().unwrap().insert((key, prec), s.clone());
        Ok(s)
    }

    /// T^q - T, the scalar that keeps appearing in the level structure.
    fn bracket(&self) -> APoly {
        let q = self.ctx.q() as usize;
        APoly::t_pow(&self.ctx, q).sub(&APoly::t(&self.ctx))
    }

    /// The false Eisenstein series of the scaled lattice,
    /// E(bz) = sum over monic a of a u(abz), for monic b.
    pub fn e_scaled(&self, b: &APoly, prec: usize) -> Result<ASeries> {
        if !b.is_monic() {
            return Err(Error::NotMonic);
        }
        let q = self.ctx.q() as usize;
        let db = b.degree().unwrap();
        let mut acc = USeries::zero(&self.ctx, prec);
        let mut val = 1usize;
        for _ in 0..db {
            val = val.saturating_mul(q);
        }
        let mut da = 0usize;
        while val < prec {
            for a in monic_polys(&self.ctx, da) {
                let term = u_scaled(&a.mul(b), prec)?.scale(&a)?;
                acc = acc.add(&term)?;
            }
            da += 1;
            val = val.saturating_mul(q);
        }
        Ok(acc)
    }

    /// E itself (weight 2, type 1).
    pub fn e(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::E, prec, || self.e_scaled(&APoly::one(&self.ctx), prec))
    }

    /// E(Tz).
    pub fn e_tz(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::ETz, prec, || self.e_scaled(&APoly::t(&self.ctx), prec))
    }

    /// E_T = E - T E(Tz) (weight 2, type 1; doubly cuspidal generator).
    pub fn et(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::Et, prec, || {
            let tail = self.e_tz(prec)?.scale(&APoly::t(&self.ctx))?;
            self.e(prec)?.sub(&tail)
        })
    }

    /// Eisenstein sum 1 - (T^q - T) sum over monic a of u(abz)^(q-1),
    /// shared by g_1 (b = 1) and g_1(Tz) (b = T).
    fn eisenstein_q1(&self, b: &APoly, prec: usize) -> Result<ASeries> {
        let q = self.ctx.q() as usize;
        let db = b.degree().unwrap();
        let mut sum = USeries::zero(&self.ctx, prec);
        let mut val = q - 1;
        for _ in 0..db {
            val = val.saturating_mul(q);
        }
        let mut da = 0usize;
        while val < prec {
            for a in monic_polys(&self.ctx, da) {
                sum = sum.add(&u_scaled(&a.mul(b), prec)?.pow((q - 1) as u64))?;
            }
            da += 1;
            val = val.saturating_mul(q);
        }
        USeries::one(&self.ctx, prec).sub(&sum.scale(&self.bracket())?)
    }

    /// g_1, the Eisenstein series of weight q - 1 (normalized to constant
    /// term 1).
    pub fn g1(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::G1, prec, || self.eisenstein_q1(&APoly::one(&self.ctx), prec))
    }

    /// g_1(Tz).
    pub fn g1_tz(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::G1T, prec, || self.eisenstein_q1(&APoly::t(&self.ctx), prec))
    }

    /// Delta_T = (g_1(Tz) - g_1) / (T^q - T), cuspidal of weight q - 1.
    pub fn delta_t(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::DeltaT, prec, || {
            let num = self.g1_tz(prec)?.sub(&self.g1(prec)?)?;
            let den = USeries::monomial(&self.ctx, prec, 0, self.bracket());
            num.exact_div(&den)
        })
    }

    /// Delta_W = (T^q g_1(Tz) - T g_1) / (T^q - T), with constant term 1.
    pub fn delta_w(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::DeltaW, prec, || {
            let q = self.ctx.q() as usize;
            let a = self.g1_tz(prec)?.scale(&APoly::t_pow(&self.ctx, q))?;
            let b = self.g1(prec)?.scale(&APoly::t(&self.ctx))?;
            let den = USeries::monomial(&self.ctx, prec, 0, self.bracket());
            a.sub(&b)?.exact_div(&den)
        })
    }

    /// h = -Delta_W E_T, the cusp form of weight q + 1 and type 1.
    pub fn h(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::H, prec, || {
            Ok(self.delta_w(prec)?.mul(&self.et(prec)?)?.neg())
        })
    }

    /// mu = Delta_W^q Delta_T; the discriminant is Delta = -mu.
    fn mu(&self, prec: usize) -> Result<ASeries> {
        self.cached(GenKey::Mu, prec, || {
            self.delta_w(prec)?.frob_pow(1).mul(&self.delta_t(prec)?)
        })
    }

    /// Delta = -Delta_W^q Delta_T, the discriminant at level T (weight
    /// q^2 - 1).
    pub fn delta(&self, prec: usize) -> Result<ASeries> {
        Ok(self.mu(prec)?.neg())
    }

    /// g_d, the Eisenstein series of weight q^d - 1 attached to the degree d
    /// primes (g_0 = 1).
    pub fn gd(&self, d: u32, prec: usize) -> Result<ASeries> {
        match d {
            0 => Ok(USeries::one(&self.ctx, prec)),
            1 => self.g1(prec),
            _ => self.cached(GenKey::Gd(d), prec, || {
                let head = self.gd(d - 1, prec)?.mul(&self.g1(prec)?.frob_pow(d - 1))?;
                let tail = self.gd(d - 2, prec)?.mul(&self.mu(prec)?.frob_pow(d - 2))?;
                if tail.is_zero() {
                    return Ok(head);
                }
                // tail is nonzero only while q^(d-1) is far below the
                // precision, so this power of T stays small.
                let qd1 = (self.ctx.q() as usize).pow(d - 1);
                let scalar = APoly::t_pow(&self.ctx, qd1).sub(&APoly::t(&self.ctx));
                head.add(&tail.scale(&scalar)?)
            }),
        }
    }

    /// u(Tz) as a series in u.
    pub fn u_t(&self, prec: usize) -> Result<ASeries> {
        u_scaled(&APoly::t(&self.ctx), prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    fn series(ctx: &Arc<FieldCtx>, prec: usize, terms: &[(usize, &[i64])]) -> ASeries {
        USeries::new(
            ctx,
            prec,
            terms.iter().map(|(e, c)| (*e, poly(ctx, c))).collect(),
        )
    }

    #[test]
    fn false_eisenstein_prefix() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        let e = gens.e(12).unwrap();
        // E = u + u^5 + u^9 + (T - T^3) u^11 + ...
        let expect = series(
            &ctx,
            12,
            &[(1, &[1]), (5, &[1]), (9, &[1]), (11, &[0, 1, 0, 2])],
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn et_prefix() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        let et = gens.et(12).unwrap();
        // E_T = u - T u^3 + (1 + T^2) u^5 - T^3 u^7 + (1 + T^4) u^9
        //         + (T - T^3 - T^5) u^11 + ...
        let expect = series(
            &ctx,
            12,
            &[
                (1, &[1]),
                (3, &[0, 2]),
                (5, &[1, 0, 1]),
                (7, &[0, 0, 0, 2]),
                (9, &[1, 0, 0, 0, 1]),
                (11, &[0, 1, 0, 2, 0, 2]),
            ],
        );
        assert_eq!(et, expect);
    }

    #[test]
    fn g1_and_level_forms() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        // g_1 = 1 + (T - T^3) u^2 + O(u^9)
        assert_eq!(
            gens.g1(9).unwrap(),
            series(&ctx, 9, &[(0, &[1]), (2, &[0, 1, 0, 2])])
        );
        // Delta_T = u^2 - u^6 - T u^8 + O(u^9)
        assert_eq!(
            gens.delta_t(9).unwrap(),
            series(&ctx, 9, &[(2, &[1]), (6, &[2]), (8, &[0, 2])])
        );
        // Delta_W = 1 + T u^2 - T^3 u^6 - T^4 u^8 + O(u^9)
        assert_eq!(
            gens.delta_w(9).unwrap(),
            series(
                &ctx,
                9,
                &[(0, &[1]), (2, &[0, 1]), (6, &[0, 0, 0, 2]), (8, &[0, 0, 0, 0, 2])]
            )
        );
    }

    #[test]
    fn h_and_delta_prefixes() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        // h = -u - u^5 + (T^3 - T) u^7 - u^9 + O(u^10)
        assert_eq!(
            gens.h(10).unwrap(),
            series(&ctx, 10, &[(1, &[2]), (5, &[2]), (7, &[0, 2, 0, 1]), (9, &[2])])
        );
        // Delta = -u^2 + u^6 + (T - T^3) u^8 + O(u^10)
        assert_eq!(
            gens.delta(10).unwrap(),
            series(&ctx, 10, &[(2, &[2]), (6, &[1]), (8, &[0, 1, 0, 2])])
        );
    }

    #[test]
    fn g1_is_delta_w_minus_tq_delta_t() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        let n = 40;
        let rhs = gens
            .delta_w(n)
            .unwrap()
            .sub(&gens.delta_t(n).unwrap().scale(&APoly::t_pow(&ctx, 3)).unwrap())
            .unwrap();
        assert_eq!(gens.g1(n).unwrap(), rhs);
    }

    #[test]
    fn et_power_splits_into_deltas() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        let n = 40;
        let lhs = gens.et(n).unwrap().pow(2);
        let rhs = gens.delta_w(n).unwrap().mul(&gens.delta_t(n).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g2_recursion_consistency() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        let n = 40;
        let g2 = gens.gd(2, n).unwrap();
        // Spot shape: constant term 1 and valuation jump at 2 like g1.
        assert_eq!(g2.coeff_at(0), APoly::one(&ctx));
        let g1 = gens.g1(n).unwrap();
        let mu = gens.delta(n).unwrap().neg();
        let expect = g1
            .mul(&g1.frob_pow(1))
            .unwrap()
            .add(
                &mu.scale(&APoly::t_pow(&ctx, 3).sub(&APoly::t(&ctx)))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(g2, expect);
    }

    #[test]
    fn gd_stabilizes_at_finite_precision() {
        let ctx = f3();
        let gens = Generators::new(&ctx);
        // Once q^(d-1) (q - 1) and 2 q^(d-2) pass the precision, the
        // recursion degenerates to g_d = g_(d-1).
        let n = 20;
        let g4 = gens.gd(4, n).unwrap();
        let g5 = gens.gd(5, n).unwrap();
        assert_eq!(g4, g5);
    }

    #[test]
    fn q5_prefixes() {
        let ctx = FieldCtx::new(5, 1, None).unwrap();
        let gens = Generators::new(&ctx);
        let et = gens.et(18).unwrap();
        let expect = USeries::new(
            &ctx,
            18,
            vec![
                (1, poly(&ctx, &[1])),
                (5, poly(&ctx, &[0, 4])),
                (9, poly(&ctx, &[0, 0, 1])),
                (13, poly(&ctx, &[0, 0, 0, 4])),
                (17, poly(&ctx, &[1, 0, 0, 0, 1])),
            ],
        );
        assert_eq!(et, expect);
        let h = gens.h(18).unwrap();
        let hexpect = USeries::new(
            &ctx,
            18,
            vec![(1, poly(&ctx, &[4])), (17, poly(&ctx, &[4]))],
        );
        assert_eq!(h, hexpect);
    }
}
