//! Exact arithmetic in GF(p^k).
//!
//! A [`FieldCtx`] owns the prime p, the extension degree k, a certified
//! irreducible defining polynomial, and a certified multiplicative generator.
//! Elements are stored as packed codes: an element with power-basis
//! coordinates (c_0, ..., c_{k-1}) has code sum(c_i * p^i). Fields of size
//! at most 2^16 carry log/exp tables so multiplication is a table lookup.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Hard cap on field size. Desk scale: nothing in the toolkit needs more.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;
/// Fields up to this size get log/exp tables.
const TABLE_CAP: u64 = 1 << 16;

#[derive(Debug)]
pub struct FieldData {
    p: u64,
    k: u32,
    q: u64,
    /// Monic, degree k, coefficients mod p, index = degree (length k+1).
    defining_poly: Vec<u64>,
    /// Packed code of a certified generator of the multiplicative group.
    generator: u32,
    /// exp[i] = code of generator^i, for 0 <= i < q-1. Present iff q <= 2^16.
    exp: Vec<u32>,
    /// log[code] = i with generator^i = code (log[0] unused). Present iff q <= 2^16.
    log: Vec<u32>,
}

/// Shared, immutable field context. Cheap to clone; equality is (p, k)
/// since the defining polynomial is chosen deterministically.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldData>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf({},{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf({},{})", self.0.p, self.0.k)
    }
}

/// An element of GF(p^k) together with its context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    code: u32,
    ctx: FieldCtx,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- polynomial helpers over GF(p), coefficient vectors with index = degree ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    debug_assert!(db >= 1 && b[db] != 0);
    let lead_inv = mod_inv(b[db], p);
    while !poly_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        let shift = dr - db;
        for i in 0..=db {
            let sub = (c * b[i]) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Trial factorization: divides by every monic polynomial of degree <= k/2.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=(k / 2) {
        // enumerate monic polys of degree d: p^d candidates for lower coeffs
        let count = p.pow(d as u32);
        for n in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut m = n;
            for _ in 0..d {
                div.push(m % p);
                m /= p;
            }
            div.push(1);
            if poly_is_zero(&poly_rem(f, &div, p)) {
                return false;
            }
        }
    }
    true
}

fn code_to_digits(code: u32, p: u64, k: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(k as usize);
    let mut c = code as u64;
    for _ in 0..k {
        v.push(c % p);
        c /= p;
    }
    v
}

fn digits_to_code(d: &[u64], p: u64) -> u32 {
    let mut code: u64 = 0;
    for &c in d.iter().rev() {
        code = code * p + c;
    }
    code as u32
}

impl FieldData {
    fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let da = code_to_digits(a, self.p, self.k);
        let db = code_to_digits(b, self.p, self.k);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        digits_to_code(&sum, self.p)
    }

    fn neg_code(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return ((self.p - a as u64) % self.p) as u32;
        }
        let da = code_to_digits(a, self.p, self.k);
        let n: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        digits_to_code(&n, self.p)
    }

    /// Schoolbook multiply + reduction mod the defining polynomial.
    fn mul_codes_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return (a as u64 * b as u64 % self.p) as u32;
        }
        let da = code_to_digits(a, self.p, self.k);
        let db = code_to_digits(b, self.p, self.k);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce degree >= k terms using x^k = -(lower part of defining poly)
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let sub = (c * self.defining_poly[i]) % self.p;
                prod[deg - k + i] = (prod[deg - k + i] + self.p - sub) % self.p;
            }
        }
        digits_to_code(&prod[..k], self.p)
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            let lb = self.log[b as usize] as u64;
            return self.exp[((la + lb) % (self.q - 1)) as usize];
        }
        self.mul_codes_slow(a, b)
    }

    fn inv_code(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            return self.exp[((self.q - 1 - la) % (self.q - 1)) as usize];
        }
        self.pow_code(a, self.q - 2)
    }

    fn pow_code(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_codes_slow_or_table(acc, base);
            }
            base = self.mul_codes_slow_or_table(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_codes_slow_or_table(&self, a: u32, b: u32) -> u32 {
        if self.exp.is_empty() {
            if a == 0 || b == 0 {
                return 0;
            }
            self.mul_codes_slow(a, b)
        } else {
            self.mul_codes(a, b)
        }
    }

    fn element_order(&self, a: u32) -> u64 {
        debug_assert!(a != 0);
        let mut order = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while order.is_multiple_of(r) && self.pow_code(a, order / r) == 1 {
                order /= r;
            }
        }
        order
    }
}

impl FieldCtx {
    /// Builds GF(p^k). The defining polynomial is the lowest irreducible
    /// monic polynomial of degree k over GF(p) in the base-p encoding,
    /// certified by trial factorization; a multiplicative generator is
    /// found by exhaustive order checks and stored.
    pub fn new(p: u64, k: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(k).filter(|&q| q <= FIELD_SIZE_CAP).ok_or_else(|| {
            Error::SizeCapExceeded(format!("field size {}^{} exceeds 2^20", p, k))
        })?;

        let defining_poly = if k == 1 {
            vec![0, 1] // x
        } else {
            let mut found = None;
            for n in 0..p.pow(k) {
                let mut f = Vec::with_capacity(k as usize + 1);
                let mut m = n;
                for _ in 0..k {
                    f.push(m % p);
                    m /= p;
                }
                f.push(1);
                if poly_is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists over GF(p)")
        };

        let mut data = FieldData {
            p,
            k,
            q,
            defining_poly,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };

        // Find the lowest-code generator of the multiplicative group.
        let mut gen = 0u32;
        for cand in 1..q as u32 {
            if data.element_order(cand) == q - 1 {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "multiplicative group of a finite field is cyclic");
        data.generator = gen;

        if q <= TABLE_CAP {
            let mut exp = vec![0u32; (q - 1) as usize];
            let mut log = vec![0u32; q as usize];
            let mut acc = 1u32;
            for i in 0..(q - 1) as usize {
                exp[i] = acc;
                log[acc as usize] = i as u32;
                acc = data.mul_codes_slow(acc, gen);
            }
            debug_assert_eq!(acc, 1);
            data.exp = exp;
            data.log = log;
        }

        Ok(FieldCtx(Arc::new(data)))
    }

    /// Parses a field spec string of the form "gf(p,k)".
    pub fn parse(spec: &str) -> Result<FieldCtx> {
        let s = spec.trim();
        let inner = s
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad field spec {s:?}, expected \"gf(p,k)\"")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("bad field spec {s:?}, expected \"gf(p,k)\"")));
        }
        let p: u64 = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field spec {s:?}")))?;
        let k: u32 = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in field spec {s:?}")))?;
        FieldCtx::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    /// Coefficients of the defining polynomial, index = degree, length k+1.
    pub fn defining_poly(&self) -> &[u64] {
        &self.0.defining_poly
    }

    pub fn zero(&self) -> FieldElement {
        self.el(0)
    }
    pub fn one(&self) -> FieldElement {
        self.el(1)
    }
    /// Element from a packed code (must be < q).
    pub fn el(&self, code: u32) -> FieldElement {
        debug_assert!((code as u64) < self.q());
        FieldElement { code, ctx: self.clone() }
    }
    /// Element of the prime subfield from an integer.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        let r = ((n % p) + p) % p;
        self.el(r as u32)
    }
    /// Element from power-basis coordinates (length <= k).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.k() as usize);
        let mut padded = coeffs.to_vec();
        padded.iter_mut().for_each(|c| *c %= self.p());
        padded.resize(self.k() as usize, 0);
        self.el(digits_to_code(&padded, self.p()))
    }
    pub fn generator(&self) -> FieldElement {
        self.el(self.0.generator)
    }

    /// Returns an element of exact multiplicative order n, or NoSuchRoot
    /// when n does not divide q-1.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let q = self.q();
        if n == 0 || !(q - 1).is_multiple_of(n) {
            return Err(Error::NoSuchRoot { order: n, q });
        }
        Ok(self.el(self.0.pow_code(self.0.generator, (q - 1) / n)))
    }

    // raw-code arithmetic, used by the matrix layer
    #[inline]
    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        self.0.add_codes(a, b)
    }
    #[inline]
    pub(crate) fn neg_code(&self, a: u32) -> u32 {
        self.0.neg_code(a)
    }
    #[inline]
    pub(crate) fn mul_codes(&self, a: u32, b: u32) -> u32 {
        self.0.mul_codes(a, b)
    }
    #[inline]
    pub(crate) fn inv_code(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero("field inverse".into()));
        }
        Ok(self.0.inv_code(a))
    }
    #[inline]
    pub(crate) fn sub_codes(&self, a: u32, b: u32) -> u32 {
        self.0.add_codes(a, self.0.neg_code(b))
    }

    fn check_same(&self, other: &FieldCtx) -> Result<()> {
        if self != other {
            return Err(Error::CtxMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    /// Power-basis coordinates, length k, each in [0, p).
    pub fn coeffs(&self) -> Vec<u64> {
        code_to_digits(self.code, self.ctx.p(), self.ctx.k())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.ctx.el(self.ctx.add_codes(self.code, other.code)))
    }
    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.ctx.el(self.ctx.sub_codes(self.code, other.code)))
    }
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.ctx.el(self.ctx.mul_codes(self.code, other.code)))
    }
    pub fn neg(&self) -> FieldElement {
        self.ctx.el(self.ctx.neg_code(self.code))
    }
    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.ctx.el(self.ctx.inv_code(self.code)?))
    }
    pub fn pow(&self, e: u64) -> FieldElement {
        self.ctx.el(self.ctx.0.pow_code(self.code, e))
    }

    /// Multiplicative order; panics on zero.
    pub fn order(&self) -> u64 {
        assert!(self.code != 0, "zero has no multiplicative order");
        self.ctx.0.element_order(self.code)
    }

    /// Trace to the prime subfield: a + a^p + ... + a^{p^{k-1}}.
    /// The result is a constant (its code is < p).
    pub fn trace_to_prime(&self) -> FieldElement {
        let p = self.ctx.p();
        let k = self.ctx.k();
        let mut acc = 0u32;
        let mut frob = self.code;
        for _ in 0..k {
            acc = self.ctx.add_codes(acc, frob);
            frob = self.ctx.0.pow_code(frob, p);
        }
        debug_assert!((acc as u64) < p, "trace must land in the prime subfield");
        self.ctx.el(acc)
    }

    /// Integer lift of a prime-subfield element into [0, p).
    pub fn lift_prime(&self) -> Result<u64> {
        if self.code as u64 >= self.ctx.p() {
            return Err(Error::Parse(format!(
                "element code {} is not in the prime subfield of {}",
                self.code, self.ctx
            )));
        }
        Ok(self.code as u64)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k() == 1 {
            return write!(f, "{}", self.code);
        }
        let cs = self.coeffs();
        let mut first = true;
        for (i, &c) in cs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_prime_field_with_poly_x() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.defining_poly(), &[0, 1]);
    }

    #[test]
    fn gf4_uses_the_unique_irreducible_quadratic() {
        let f = FieldCtx::new(2, 2).unwrap();
        // x^2 + x + 1
        assert_eq!(f.defining_poly(), &[1, 1, 1]);
        // x * (x+1) = 1 since x^2 = x + 1
        let x = f.el(0b10);
        let x1 = f.el(0b11);
        assert_eq!(x.mul(&x1).unwrap(), f.one());
    }

    #[test]
    fn gf9_has_a_generator_of_order_8() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        // exhaustive order check over all 8 nonzero elements: some order is 8,
        // and the stored generator attains it
        let orders: Vec<u64> = (1..9).map(|c| f.el(c).order()).collect();
        assert!(orders.contains(&8));
        assert_eq!(f.generator().order(), 8);
        // (generator)^8 = 1 by repeated squaring
        let g = f.generator();
        let g2 = g.mul(&g).unwrap();
        let g4 = g2.mul(&g2).unwrap();
        let g8 = g4.mul(&g4).unwrap();
        assert_eq!(g8, f.one());
    }

    #[test]
    fn gf7_inverse_of_three_is_five() {
        let f = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f.el(3).inv().unwrap(), f.el(5));
    }

    #[test]
    fn nonprime_and_cap_errors() {
        assert!(matches!(FieldCtx::new(6, 1), Err(Error::NonPrime(6))));
        assert!(matches!(FieldCtx::new(2, 21), Err(Error::SizeCapExceeded(_))));
        assert!(FieldCtx::new(2, 20).is_ok());
    }

    #[test]
    fn trace_examples() {
        // GF(4): trace of x is x + x^2 = x + (x+1) = 1
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.el(0b10).trace_to_prime(), f4.one());
        // prime field: trace is the identity
        let f5 = FieldCtx::new(5, 1).unwrap();
        for c in 0..5 {
            assert_eq!(f5.el(c).trace_to_prime(), f5.el(c));
        }
        // GF(9): trace of 0 is 0
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.zero().trace_to_prime(), f9.zero());
    }

    #[test]
    fn trace_is_additive_and_lands_in_prime_subfield() {
        for (p, k) in [(2u64, 4u32), (3, 2), (5, 2), (2, 10)] {
            let f = FieldCtx::new(p, k).unwrap();
            let q = f.q();
            if q <= 1 << 10 {
                for a in 0..q as u32 {
                    let ta = f.el(a).trace_to_prime();
                    assert!((ta.code() as u64) < p);
                    for b in (0..q as u32).step_by(((q / 37) + 1) as usize) {
                        let tb = f.el(b).trace_to_prime();
                        let tsum = f.el(a).add(&f.el(b)).unwrap().trace_to_prime();
                        assert_eq!(tsum, ta.add(&tb).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let r = f7.root_of_unity(3).unwrap();
        assert_eq!(r.order(), 3);

        let f4 = FieldCtx::new(2, 2).unwrap();
        let r = f4.root_of_unity(3).unwrap();
        assert!(r == f4.el(0b10) || r == f4.el(0b11));

        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.root_of_unity(2).unwrap(), f3.el(2));

        assert!(matches!(f3.root_of_unity(5), Err(Error::NoSuchRoot { order: 5, q: 3 })));
    }

    #[test]
    fn root_of_unity_has_exact_order() {
        let f = FieldCtx::new(5, 2).unwrap(); // q - 1 = 24
        for n in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            let r = f.root_of_unity(n).unwrap();
            assert_eq!(r.pow(n), f.one());
            assert_eq!(r.order(), n);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1), (2, 4)] {
            let f = FieldCtx::new(p, k).unwrap();
            let q = f.q() as u32;
            if f.q() > 16 {
                continue;
            }
            for a in 0..q {
                for b in 0..q {
                    let ab = f.el(a).mul(&f.el(b)).unwrap();
                    let ba = f.el(b).mul(&f.el(a)).unwrap();
                    assert_eq!(ab, ba);
                    for c in 0..q {
                        let left = f.el(a).mul(&f.el(b)).unwrap().mul(&f.el(c)).unwrap();
                        let right = f.el(a).mul(&f.el(b).mul(&f.el(c)).unwrap()).unwrap();
                        assert_eq!(left, right);
                        let d1 = f.el(a).mul(&f.el(b).add(&f.el(c)).unwrap()).unwrap();
                        let d2 = ab.add(&f.el(a).mul(&f.el(c)).unwrap()).unwrap();
                        assert_eq!(d1, d2);
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_randomized_larger() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for (p, k) in [(2u64, 8u32), (5, 3), (251, 1), (3, 5)] {
            let f = FieldCtx::new(p, k).unwrap();
            let q = f.q() as u32;
            for _ in 0..10_000 {
                let a = f.el(rng.random_range(0..q));
                let b = f.el(rng.random_range(0..q));
                let c = f.el(rng.random_range(0..q));
                let left = a.mul(&b).unwrap().mul(&c).unwrap();
                let right = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(left, right);
                let d1 = a.mul(&b.add(&c).unwrap()).unwrap();
                let d2 = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(d1, d2);
                assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            }
        }
    }

    #[test]
    fn inverses_exhaustive() {
        for (p, k) in [(2u64, 1u32), (2, 2), (2, 8), (3, 4), (5, 2), (31, 1), (2, 10)] {
            let f = FieldCtx::new(p, k).unwrap();
            assert!(f.q() <= 1 << 10);
            for a in 1..f.q() as u32 {
                let e = f.el(a);
                assert_eq!(e.inv().unwrap().mul(&e).unwrap(), f.one());
            }
            assert!(f.zero().inv().is_err());
        }
    }

    #[test]
    fn ctx_mismatch_is_an_error() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert!(matches!(f3.one().add(&f5.one()), Err(Error::CtxMismatch(_, _))));
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!(FieldCtx::parse("gf(3,2)").unwrap().q(), 9);
        assert_eq!(FieldCtx::parse(" gf( 5 , 1 ) ").unwrap().q(), 5);
        assert!(FieldCtx::parse("gf(4)").is_err());
        assert!(FieldCtx::parse("fq(3,2)").is_err());
    }
}
