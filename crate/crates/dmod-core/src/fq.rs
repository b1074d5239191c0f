//! The coefficient field F_q, q = p^r with p an odd prime.
//!
//! Elements are coordinate vectors over F_p in the basis 1, x, ..., x^(r-1)
//! of F_p[x]/(m(x)). All arithmetic goes through a [`FieldCtx`], which fixes
//! p, r and the defining modulus m(x) once and is shared behind an `Arc`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A fixed choice of F_q = F_p[x]/(m(x)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    r: usize,
    /// Monic defining polynomial of degree r, coefficients ascending in x.
    /// For r = 1 this is the placeholder x, which is never used in reduction.
    modulus: Vec<u64>,
    q: u64,
}

/// An element of F_q: coordinates over F_p, ascending powers of x, length r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    coords: Vec<u64>,
}

impl FqElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

const MAX_Q: u64 = 1 << 32;

impl FieldCtx {
    /// Builds the field F_p^r. `modulus` gives the coefficients of the
    /// defining polynomial, ascending in x; it is required exactly when
    /// r > 1 and must be monic of degree r and irreducible over F_p.
    pub fn new(p: u64, r: usize, modulus: Option<&[i64]>) -> Result<Arc<FieldCtx>> {
        if p % 2 == 0 {
            return Err(Error::EvenCharacteristic);
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q = checked_pow(p, r)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::BadModulus(format!("q = {p}^{r} is too large")))?;
        let modulus = match (r, modulus) {
            (1, None) => vec![0, 1],
            (1, Some(_)) => {
                return Err(Error::BadModulus("a modulus is only meaningful for r > 1".into()))
            }
            (_, None) => {
                return Err(Error::BadModulus(format!("an extension of degree {r} needs one")))
            }
            (_, Some(m)) => {
                let m: Vec<u64> = m.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                let m = px_trim(m);
                if m.len() != r + 1 {
                    return Err(Error::BadModulus(format!("degree must be {r}")));
                }
                if m[r] != 1 {
                    return Err(Error::BadModulus("must be monic".into()));
                }
                if !px_is_irreducible(&m, p) {
                    return Err(Error::BadModulus("must be irreducible over F_p".into()));
                }
                m
            }
        };
        Ok(Arc::new(FieldCtx { p, r, modulus, q }))
    }

    /// Convenience constructor from a prime power q. For prime q this is the
    /// prime field; otherwise a modulus for the unique p^r decomposition is
    /// still required.
    pub fn from_q(q: u64, modulus: Option<&[i64]>) -> Result<Arc<FieldCtx>> {
        let (p, r) = split_prime_power(q)
            .ok_or_else(|| Error::BadModulus(format!("{q} is not a prime power")))?;
        FieldCtx::new(p, r, modulus)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coords: vec![0; self.r] }
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// The class of x, a generator of F_q over F_p (for r = 1 this is 0).
    pub fn gen_x(&self) -> FqElem {
        let mut coords = vec![0; self.r];
        if self.r > 1 {
            coords[1] = 1;
        }
        FqElem { coords }
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let mut coords = vec![0; self.r];
        coords[0] = n.rem_euclid(self.p as i64) as u64;
        FqElem { coords }
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() != self.r {
            return Err(Error::Invalid(format!(
                "field element needs {} coordinates, got {}",
                self.r,
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Invalid(format!("coordinates must lie in [0, {})", self.p)));
        }
        Ok(FqElem { coords: coords.to_vec() })
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FqElem { coords }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FqElem { coords }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let coords = a.coords.iter().map(|&x| (self.p - x) % self.p).collect();
        FqElem { coords }
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let r = self.r;
        if r == 1 {
            return FqElem { coords: vec![a.coords[0] * b.coords[0] % self.p] };
        }
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic defining polynomial.
        for i in (r..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().take(r).enumerate() {
                let idx = i - r + j;
                prod[idx] = (prod[idx] + c * (self.p - m) % self.p) % self.p;
            }
        }
        prod.truncate(r);
        FqElem { coords: prod }
    }

    /// Multiplication by an integer scalar (reduced mod p).
    pub fn int_mul(&self, n: i64, a: &FqElem) -> FqElem {
        let n = n.rem_euclid(self.p as i64) as u64;
        let coords = a.coords.iter().map(|&x| x * n % self.p).collect();
        FqElem { coords }
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        if self.r == 1 {
            return Some(FqElem { coords: vec![int_pow_mod(a.coords[0], self.p - 2, self.p)] });
        }
        let mut inv = px_inv_mod(&px_trim(a.coords.clone()), &self.modulus, self.p);
        inv.resize(self.r, 0);
        Some(FqElem { coords: inv })
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All q elements of the field, in odometer order over the coordinates.
    pub fn elements(&self) -> Vec<FqElem> {
        let mut out = Vec::with_capacity(self.q as usize);
        let mut coords = vec![0u64; self.r];
        loop {
            out.push(FqElem { coords: coords.clone() });
            let mut i = 0;
            loop {
                if i == self.r {
                    return out;
                }
                coords[i] += 1;
                if coords[i] < self.p {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, r: usize) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..r {
        q = q.checked_mul(p)?;
    }
    Some(q)
}

/// Writes q = p^r with p prime, if q is a prime power > 1.
pub fn split_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = q;
            let mut r = 0;
            while n % p == 0 {
                n /= p;
                r += 1;
            }
            return if n == 1 { Some((p, r)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn int_pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

// Small F_p[x] toolkit on raw coefficient vectors (ascending powers, no
// trailing zeros), used for modulus validation and field inversion.

fn px_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn px_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    px_trim(out)
}

fn px_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero in F_p[x]");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = int_pow_mod(b[db], p - 2, p);
    if rem.len() <= db {
        return (Vec::new(), px_trim(rem));
    }
    let mut quo = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i] * lead_inv % p;
        if c == 0 {
            continue;
        }
        quo[i - db] = c;
        for (j, &m) in b.iter().enumerate() {
            let idx = i - db + j;
            rem[idx] = (rem[idx] + c * (p - m) % p) % p;
        }
    }
    (px_trim(quo), px_trim(rem))
}

/// Inverse of a modulo m in F_p[x] via the extended Euclidean algorithm.
/// Panics if gcd(a, m) != 1; callers guarantee m irreducible and a != 0.
fn px_inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = px_divrem(&r0, &r1, p);
        let qs = px_mul(&q, &s1, p);
        let s = px_sub(&s0, &qs, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r0.len() == 1, "element is not invertible");
    let scale = int_pow_mod(r0[0], p - 2, p);
    s0.iter().map(|&c| c * scale % p).collect()
}

fn px_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    px_trim(out)
}

/// Brute-force irreducibility over F_p: trial division by every monic
/// polynomial of degree up to deg/2. Degrees here are tiny.
fn px_is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut low = vec![0u64; d];
        loop {
            let mut cand = low.clone();
            cand.push(1);
            let (_, rem) = px_divrem(m, &cand, p);
            if rem.is_empty() {
                return false;
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}
