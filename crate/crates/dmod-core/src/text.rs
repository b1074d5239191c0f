//! Text syntax for polynomials, as accepted on the command line.
//!
//! Grammar (whitespace free-form):
//!   expr   := term (('+' | '-') term)*
//!   term   := factor ('*' factor)*
//!   factor := '-' factor | atom ('^' INT)?
//!   atom   := INT | 'T' | 'x' | '(' expr ')'
//!
//! The same parser feeds two targets: polynomials in T over F_q (where x
//! names the chosen generator of F_q over F_p), and polynomials in x over
//! F_p used to describe the field modulus itself.

use std::sync::Arc;

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::fq::FieldCtx;

trait Algebra {
    type V: Clone;
    fn int(&self, n: i64) -> Self::V;
    fn var_t(&self) -> Result<Self::V>;
    fn var_x(&self) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
}

struct TPolys {
    ctx: Arc<FieldCtx>,
}

impl Algebra for TPolys {
    type V = APoly;
    fn int(&self, n: i64) -> APoly {
        APoly::from_int(&self.ctx, n)
    }
    fn var_t(&self) -> Result<APoly> {
        Ok(APoly::t(&self.ctx))
    }
    fn var_x(&self) -> Result<APoly> {
        if self.ctx.r() == 1 {
            return Err(Error::Invalid(
                "x names the F_q generator, but q is prime here".into(),
            ));
        }
        Ok(APoly::constant(&self.ctx, self.ctx.gen_x()))
    }
    fn add(&self, a: &APoly, b: &APoly) -> APoly {
        a.add(b)
    }
    fn sub(&self, a: &APoly, b: &APoly) -> APoly {
        a.sub(b)
    }
    fn neg(&self, a: &APoly) -> APoly {
        a.neg()
    }
    fn mul(&self, a: &APoly, b: &APoly) -> APoly {
        a.mul(b)
    }
}

struct XPolys {
    p: u64,
}

impl XPolys {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

impl Algebra for XPolys {
    type V = Vec<u64>;
    fn int(&self, n: i64) -> Vec<u64> {
        Self::trim(vec![n.rem_euclid(self.p as i64) as u64])
    }
    fn var_t(&self) -> Result<Vec<u64>> {
        Err(Error::Invalid("the field modulus may only use x".into()))
    }
    fn var_x(&self) -> Result<Vec<u64>> {
        Ok(vec![0, 1])
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        Self::trim(out)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        Self::trim(a.iter().map(|&c| (self.p - c % self.p) % self.p).collect())
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(out)
    }
}

struct Parser<'a, A: Algebra> {
    src: &'a [u8],
    pos: usize,
    alg: &'a A,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn fail(&self, msg: &str) -> Error {
        Error::Invalid(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.fail("number too large"))
    }

    fn atom(&mut self) -> Result<A::V> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.fail("expected )"));
                }
                Ok(v)
            }
            Some(b'T') => {
                self.pos += 1;
                self.alg.var_t()
            }
            Some(b'x') => {
                self.pos += 1;
                self.alg.var_x()
            }
            Some(c) if c.is_ascii_digit() => Ok(self.alg.int(self.integer()?)),
            _ => Err(self.fail("expected a number, T, x, or (")),
        }
    }

    fn factor(&mut self) -> Result<A::V> {
        if self.eat(b'-') {
            return Ok(self.alg.neg(&self.factor()?));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if !(0..=100_000).contains(&e) {
                return Err(self.fail("exponent out of range"));
            }
            let mut acc = self.alg.int(1);
            for _ in 0..e {
                acc = self.alg.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<A::V> {
        let mut v = self.factor()?;
        while self.eat(b'*') {
            v = self.alg.mul(&v, &self.factor()?);
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<A::V> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v = self.alg.add(&v, &self.term()?);
            } else if self.eat(b'-') {
                v = self.alg.sub(&v, &self.term()?);
            } else {
                return Ok(v);
            }
        }
    }

    fn run(&mut self) -> Result<A::V> {
        let v = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.fail("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Parses a polynomial in T (and x for extension fields) over F_q.
pub fn apoly_from_text(ctx: &Arc<FieldCtx>, s: &str) -> Result<APoly> {
    let alg = TPolys { ctx: Arc::clone(ctx) };
    Parser { src: s.as_bytes(), pos: 0, alg: &alg }.run()
}

/// Parses the F_q modulus, a polynomial in x with F_p coefficients,
/// returning its coefficient list.
pub fn xpoly_from_text(p: u64, s: &str) -> Result<Vec<u64>> {
    let alg = XPolys { p };
    Parser { src: s.as_bytes(), pos: 0, alg: &alg }.run()
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

    #[test]
    fn parses_standard_shapes() {
        let ctx = f3();
        assert_eq!(
            apoly_from_text(&ctx, "T^3+2*T+1").unwrap(),
            poly(&ctx, &[1, 2, 0, 1])
        );
        assert_eq!(
            apoly_from_text(&ctx, " T^2 - 1 ").unwrap(),
            poly(&ctx, &[2, 0, 1])
        );
        assert_eq!(
            apoly_from_text(&ctx, "(T+1)*(T+2)").unwrap(),
            poly(&ctx, &[2, 0, 1])
        );
        assert_eq!(apoly_from_text(&ctx, "-T").unwrap(), poly(&ctx, &[0, 2]));
        assert_eq!(apoly_from_text(&ctx, "-T^2").unwrap(), poly(&ctx, &[0, 0, 2]));
        assert_eq!(apoly_from_text(&ctx, "5").unwrap(), poly(&ctx, &[2]));
    }

    #[test]
    fn extension_generator_in_coefficients() {
        let ctx = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let a = apoly_from_text(&ctx, "x*T+x^2").unwrap();
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(a.coeffs()[1], ctx.gen_x());
        // x^2 reduces through the modulus.
        let sq = ctx.mul(&ctx.gen_x(), &ctx.gen_x());
        assert_eq!(a.coeffs()[0], sq);

        assert!(apoly_from_text(&f3(), "x+1").is_err());
    }

    #[test]
    fn modulus_polynomials() {
        assert_eq!(xpoly_from_text(3, "x^2+1").unwrap(), vec![1, 0, 1]);
        assert_eq!(xpoly_from_text(3, "x^2+2*x+2").unwrap(), vec![2, 2, 1]);
        assert_eq!(xpoly_from_text(5, "x^2-2").unwrap(), vec![3, 0, 1]);
        assert!(xpoly_from_text(3, "T").is_err());
    }

    #[test]
    fn rejects_garbage() {
        let ctx = f3();
        for s in ["", "T+", "((T)", "y", "T^", "T^^2", "T 1", "2T"] {
            assert!(apoly_from_text(&ctx, s).is_err(), "{s:?} should fail");
        }
    }
}
