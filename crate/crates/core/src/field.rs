//! Exact arithmetic in `GF(p^k)` for desk-scale field orders (`q <= 2^16`).
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! encoding are the coefficients (low degree first) of the residue polynomial
//! modulo the field's defining polynomial. For prime fields the encoding is the
//! residue itself.
//!
//! [`Field`] is a cheap, reference-counted handle. The hot paths (matrices,
//! polynomials) work on raw `u32` encodings through the `Field` methods, while
//! [`FieldElement`] is the value type that carries its field and refuses to mix
//! with elements of another field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported maximum of 2^16")]
    TooLarge { p: u32, k: u32 },
    #[error("modulus must have {expected} coefficients (degree {degree}), got {got}")]
    ModulusLength { degree: u32, expected: usize, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is out of range")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible over GF({0})")]
    ModulusReducible(u32),
    #[error("element encoding {value} is out of range for a field of order {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// Serialized description of a finite field: characteristic, extension degree
/// and (for `k > 1`) the monic defining polynomial, low coefficient first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, k: 1, modulus: None }
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
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
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn check_params(p: u32, k: u32) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if (p as u64).checked_pow(k).map_or(true, |q| q > MAX_ORDER) {
        return Err(FieldError::TooLarge { p, k });
    }
    Ok(())
}

/// Dense polynomials over the prime field, used only to build extension fields.
mod fp_poly {
    pub type Poly = Vec<u32>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2) is the inverse.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            for (i, &c) in m.iter().enumerate() {
                let sub = factor * c as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
        rem(&mul(a, b, p), m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^(p^times) mod m`, by repeated p-th powering.
    pub fn frobenius_iter(base: &[u32], times: u32, m: &[u32], p: u32) -> Poly {
        let mut acc = rem(base, m, p);
        for _ in 0..times {
            let mut result = vec![1u32];
            let mut sq = acc.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    result = mul_mod(&result, &sq, m, p);
                }
                sq = mul_mod(&sq, &sq, m, p);
                e >>= 1;
            }
            acc = result;
        }
        acc
    }
}

/// Rabin's irreducibility test for a monic polynomial over `GF(p)`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let full = fp_poly::frobenius_iter(&x, k, m, p);
    if !fp_poly::sub(&full, &x, p).is_empty() {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let partial = fp_poly::frobenius_iter(&x, k / r as u32, m, p);
        let diff = fp_poly::sub(&partial, &x, p);
        fp_poly::gcd(&diff, m, p).len() == 1
    })
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over `GF(p)`, comparing coefficients from the constant term upwards.
/// Returned low coefficient first, including the leading 1.
pub fn find_irreducible(p: u32, k: u32) -> Result<Vec<u32>, FieldError> {
    check_params(p, k)?;
    let count = (p as u64).pow(k);
    for idx in 0..count {
        // The constant term is the most significant digit of idx.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut rest = idx;
        for j in (0..k as usize).rev() {
            coeffs[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[k as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct Inner {
    spec: FieldSpec,
    p: u32,
    k: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `GF(p^k)` with precomputed log/antilog tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds a field from a serialized spec. A missing modulus with `k > 1`
    /// selects [`find_irreducible`].
    pub fn new(spec: &FieldSpec) -> Result<Self, FieldError> {
        let (p, k) = (spec.p, spec.k);
        check_params(p, k)?;
        let modulus = match &spec.modulus {
            None if k == 1 => vec![0, 1],
            None => find_irreducible(p, k)?,
            Some(m) => {
                let expected = k as usize + 1;
                if m.len() != expected {
                    return Err(FieldError::ModulusLength { degree: k, expected, got: m.len() });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::ModulusCoefficient(c));
                }
                if m[k as usize] != 1 {
                    return Err(FieldError::ModulusNotMonic);
                }
                if !is_irreducible(m, p) {
                    return Err(FieldError::ModulusReducible(p));
                }
                m.clone()
            }
        };
        let canonical = FieldSpec {
            p,
            k,
            modulus: if k == 1 { None } else { Some(modulus.clone()) },
        };
        Ok(Self::build(canonical, &modulus))
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(&FieldSpec::prime(p))
    }

    /// `GF(p^k)` with the default modulus from [`find_irreducible`].
    pub fn extension(p: u32, k: u32) -> Result<Self, FieldError> {
        Self::new(&FieldSpec { p, k, modulus: None })
    }

    /// A field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Self, FieldError> {
        let p = prime_factors(q as u64).first().copied().unwrap_or(q as u64) as u32;
        let mut k = 0;
        let mut rest = q;
        while rest > 1 && rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotPrime(q));
        }
        Self::extension(p, k)
    }

    fn build(spec: FieldSpec, modulus: &[u32]) -> Self {
        let (p, k) = (spec.p, spec.k);
        let q = p.pow(k);
        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, k), digits(b, p, k));
            let k = k as usize;
            let mut prod = [0u64; 32];
            for (i, &x) in da.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] += x as u64 * y as u64;
                }
            }
            // Reduce by the monic modulus from the top down.
            for i in (k..2 * k - 1).rev() {
                let c = prod[i] % p as u64;
                prod[i] = 0;
                if c != 0 {
                    for (j, &m) in modulus[..k].iter().enumerate() {
                        prod[i - k + j] += c * (p - m) as u64;
                    }
                }
            }
            let reduced: Vec<u32> = prod[..k].iter().map(|&c| (c % p as u64) as u32).collect();
            undigits(&reduced, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut acc, mut base) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, generator);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }
        Field { inner: Arc::new(Inner { spec, p, k, q, exp, log }) }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn contains(&self, value: u32) -> bool {
        value < self.inner.q
    }

    pub fn check(&self, value: u64) -> Result<u32, FieldError> {
        if value < self.inner.q as u64 {
            Ok(value as u32)
        } else {
            Err(FieldError::OutOfRange { value, q: self.inner.q })
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (p - a) % p;
        }
        if p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let inner = &*self.inner;
        let l = inner.log[a as usize];
        Ok(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let l = inner.log[a as usize] as u64 * (e % (inner.q as u64 - 1));
        inner.exp[(l % (inner.q as u64 - 1)) as usize]
    }

    /// Image of the integer `n` under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: u64) -> u32 {
        (n % self.inner.p as u64) as u32
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        self.check(value as u64)?;
        Ok(FieldElement { field: self.clone(), value })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 1 }
    }
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// All elements of the field described by `spec`, in encoding order.
pub fn enumerate_elements(spec: &FieldSpec) -> Result<Vec<FieldElement>, FieldError> {
    let field = Field::new(spec)?;
    Ok(field.elements().map(|v| FieldElement { field: field.clone(), value: v }).collect())
}

/// A field element that remembers which field it lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field element operands from different fields")
            }
        }

        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
