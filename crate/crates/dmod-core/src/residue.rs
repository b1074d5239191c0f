//! Primes of A, p-adic valuations, and the residue field F_p = A/(pi).

use std::fmt;
use std::sync::Arc;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;
use crate::kfrac::KFrac;

/// A monic irreducible pi in A, different from T, together with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpec {
    pi: APoly,
    d: usize,
}

impl PrimeSpec {
    /// Validates that pi is monic, irreducible over F_q, and not T itself.
    /// Irreducibility is brute force: root search in low degree, trial
    /// division by all lower-degree monic polynomials above that.
    pub fn new(pi: APoly) -> Result<PrimeSpec> {
        if !pi.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = pi.degree().unwrap();
        if d == 0 {
            return Err(Error::Reducible);
        }
        if pi == APoly::t(pi.ctx()) {
            return Err(Error::PrimeIsT);
        }
        match d {
            1 => {}
            2 | 3 => {
                // Reducible in degree 2 or 3 means having a linear factor,
                // so a root search settles it.
                for x in pi.ctx().elements() {
                    if pi.eval(&x).is_zero() {
                        return Err(Error::Reducible);
                    }
                }
            }
            _ => {
                for deg in 1..=d / 2 {
                    for cand in crate::apoly::monic_polys(pi.ctx(), deg) {
                        let (_, r) = pi.divrem(&cand).unwrap();
                        if r.is_zero() {
                            return Err(Error::Reducible);
                        }
                    }
                }
            }
        }
        Ok(PrimeSpec { pi, d })
    }

    pub fn pi(&self) -> &APoly {
        &self.pi
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.pi.ctx()
    }
}

/// The residue field F_p = A/(pi), of cardinality q^d. Elements are reduced
/// representatives in A of degree below d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCtx {
    prime: PrimeSpec,
}

impl ResidueCtx {
    pub fn new(prime: PrimeSpec) -> Arc<ResidueCtx> {
        Arc::new(ResidueCtx { prime })
    }

    pub fn from_pi(pi: APoly) -> Result<Arc<ResidueCtx>> {
        Ok(ResidueCtx::new(PrimeSpec::new(pi)?))
    }

    pub fn prime(&self) -> &PrimeSpec {
        &self.prime
    }

    pub fn pi(&self) -> &APoly {
        self.prime.pi()
    }

    pub fn degree(&self) -> usize {
        self.prime.degree()
    }

    pub fn field_ctx(&self) -> &Arc<FieldCtx> {
        self.prime.ctx()
    }
}

/// A pi-adic valuation: finite, or infinite for 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_nonnegative(&self) -> bool {
        match self {
            Valuation::Finite(v) => *v >= 0,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Exact power of pi dividing a.
pub fn vp_apoly(a: &APoly, prime: &PrimeSpec) -> Valuation {
    if a.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = cur.divrem(prime.pi()).unwrap();
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        cur = q;
    }
}

/// vp of a fraction: vp(num) - vp(den). In lowest terms at most one side
/// is divisible by pi.
pub fn vp_kfrac(x: &KFrac, prime: &PrimeSpec) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match (vp_apoly(x.num(), prime), vp_apoly(x.den(), prime)) {
        (Valuation::Finite(n), Valuation::Finite(d)) => Valuation::Finite(n - d),
        _ => unreachable!("finite valuations on a nonzero reduced fraction"),
    }
}

/// An element of the residue field F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpElem {
    ctx: Arc<ResidueCtx>,
    rep: APoly,
}

impl FpElem {
    /// Reduces any A-element to its residue.
    pub fn from_apoly(ctx: &Arc<ResidueCtx>, a: &APoly) -> FpElem {
        let (_, rep) = a.divrem(ctx.pi()).unwrap();
        FpElem { ctx: Arc::clone(ctx), rep }
    }

    /// Reduces a pi-integral fraction: fails with NotPIntegral when the
    /// denominator is divisible by pi (equivalently vp < 0 in lowest terms).
    pub fn from_kfrac(ctx: &Arc<ResidueCtx>, x: &KFrac) -> Result<FpElem> {
        let den = FpElem::from_apoly(ctx, x.den());
        let den_inv = den.inv().map_err(|_| Error::NotPIntegral)?;
        Ok(FpElem::from_apoly(ctx, x.num()).mul(&den_inv))
    }

    pub fn zero(ctx: &Arc<ResidueCtx>) -> FpElem {
        FpElem { ctx: Arc::clone(ctx), rep: APoly::zero(ctx.field_ctx()) }
    }

    pub fn one(ctx: &Arc<ResidueCtx>) -> FpElem {
        FpElem { ctx: Arc::clone(ctx), rep: APoly::one(ctx.field_ctx()) }
    }

    pub fn from_int(ctx: &Arc<ResidueCtx>, n: i64) -> FpElem {
        FpElem { ctx: Arc::clone(ctx), rep: APoly::from_int(ctx.field_ctx(), n) }
    }

    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    /// The reduced representative, of degree below d.
    pub fn rep(&self) -> &APoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn assert_same_ctx(&self, other: &FpElem) {
        assert!(self.ctx == other.ctx, "mixed residue fields");
    }

    pub fn add(&self, other: &FpElem) -> FpElem {
        self.assert_same_ctx(other);
        FpElem { ctx: Arc::clone(&self.ctx), rep: self.rep.add(&other.rep) }
    }

    pub fn sub(&self, other: &FpElem) -> FpElem {
        self.assert_same_ctx(other);
        FpElem { ctx: Arc::clone(&self.ctx), rep: self.rep.sub(&other.rep) }
    }

    pub fn neg(&self) -> FpElem {
        FpElem { ctx: Arc::clone(&self.ctx), rep: self.rep.neg() }
    }

    pub fn mul(&self, other: &FpElem) -> FpElem {
        self.assert_same_ctx(other);
        FpElem::from_apoly(&self.ctx, &self.rep.mul(&other.rep))
    }

    pub fn int_mul(&self, n: i64) -> FpElem {
        FpElem { ctx: Arc::clone(&self.ctx), rep: self.rep.int_mul(n) }
    }

    pub fn inv(&self) -> Result<FpElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid in A against pi.
        let ctx = self.ctx.field_ctx();
        let (mut r0, mut r1) = (self.ctx.pi().clone(), self.rep.clone());
        let (mut s0, mut s1) = (APoly::zero(ctx), APoly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let unit = r0.as_constant().expect("pi is irreducible");
        let scale = ctx.inv(&unit).unwrap();
        Ok(FpElem::from_apoly(&self.ctx, &s0.scale(&scale)))
    }

    pub fn pow(&self, mut e: u64) -> FpElem {
        let mut base = self.clone();
        let mut acc = FpElem::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1, None).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> APoly {
        APoly::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    #[test]
    fn validates_primes() {
        let ctx = f3();
        assert!(PrimeSpec::new(poly(&ctx, &[1, 1])).is_ok());
        assert!(PrimeSpec::new(poly(&ctx, &[1, 0, 1])).is_ok());
        assert_eq!(PrimeSpec::new(poly(&ctx, &[0, 2])).unwrap_err(), Error::NotMonic);
        assert_eq!(PrimeSpec::new(APoly::t(&ctx)).unwrap_err(), Error::PrimeIsT);
        // T^2 + 2 = (T+1)(T+2) over F_3.
        assert_eq!(PrimeSpec::new(poly(&ctx, &[2, 0, 1])).unwrap_err(), Error::Reducible);
        // T^3 + T + 1 has the root 1 over F_3.
        assert_eq!(PrimeSpec::new(poly(&ctx, &[1, 1, 0, 1])).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn accepts_degree_one_over_f9() {
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let pi = APoly::from_coeffs(&f9, vec![f9.gen_x(), f9.one()]); // T + x
        let prime = PrimeSpec::new(pi).unwrap();
        assert_eq!(prime.degree(), 1);
    }

    #[test]
    fn valuation_counts_pi_powers() {
        let ctx = f3();
        let prime = PrimeSpec::new(poly(&ctx, &[1, 1])).unwrap();
        let pi2t = prime.pi().mul(prime.pi()).mul(&APoly::t(&ctx));
        assert_eq!(vp_apoly(&pi2t, &prime), Valuation::Finite(2));
        assert_eq!(vp_apoly(&APoly::t(&ctx), &prime), Valuation::Finite(0));
        assert_eq!(vp_apoly(&APoly::zero(&ctx), &prime), Valuation::Infinite);
        let x = KFrac::new(APoly::t(&ctx), prime.pi().clone()).unwrap();
        assert_eq!(vp_kfrac(&x, &prime), Valuation::Finite(-1));
    }

    #[test]
    fn residue_examples() {
        let ctx = f3();
        let rc = ResidueCtx::from_pi(poly(&ctx, &[1, 1])).unwrap();
        // T = -1 = 2 mod (T+1).
        assert_eq!(FpElem::from_apoly(&rc, &APoly::t(&ctx)), FpElem::from_int(&rc, 2));
        // 1/(T+2) = 1 mod (T+1) since T+2 = 1 there.
        let x = KFrac::new(APoly::one(&ctx), poly(&ctx, &[2, 1])).unwrap();
        assert_eq!(FpElem::from_kfrac(&rc, &x).unwrap(), FpElem::one(&rc));
        // 1/(T+1) is not integral.
        let bad = KFrac::new(APoly::one(&ctx), poly(&ctx, &[1, 1])).unwrap();
        assert_eq!(FpElem::from_kfrac(&rc, &bad).unwrap_err(), Error::NotPIntegral);

        let rc2 = ResidueCtx::from_pi(poly(&ctx, &[1, 0, 1])).unwrap();
        // T^3 mod (T^2+1): T^3 = T(T^2+1) - T = -T = 2T.
        assert_eq!(
            FpElem::from_apoly(&rc2, &APoly::t_pow(&ctx, 3)),
            FpElem::from_apoly(&rc2, &poly(&ctx, &[0, 2]))
        );
    }

    #[test]
    fn residue_field_axioms_on_random_triples() {
        let ctx = f3();
        let rc = ResidueCtx::from_pi(poly(&ctx, &[1, 0, 1])).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            let coeffs: Vec<i64> = (0..rc.degree()).map(|_| rng.gen_range(0..3)).collect();
            FpElem::from_apoly(&rc, &poly(&ctx, &coeffs))
        };
        for _ in 0..1000 {
            let a = random(&mut rng);
            let b = random(&mut rng);
            let c = random(&mut rng);
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()), FpElem::one(&rc));
            }
        }
        // Cardinality q^d = 9: Frobenius a^9 = a.
        for _ in 0..50 {
            let a = random(&mut rng);
            assert_eq!(a.pow(9), a);
        }
    }
}
