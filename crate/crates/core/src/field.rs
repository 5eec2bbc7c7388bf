//! Arithmetic in GF(p^k) for small prime powers.
//!
//! Elements are stored by their polynomial-basis coordinates, packed into a
//! single integer `code = c0 + c1*p + ... + c_{k-1}*p^(k-1)`. The modulus for a
//! given `(p, k)` is the lexicographically least primitive polynomial (compared
//! from the constant term upwards), so two independently built fields with the
//! same parameters are identical and their elements interoperate.
//!
//! Internally multiplication goes through discrete-log tables and addition in
//! odd characteristic through a Zech-logarithm table; neither is visible in the
//! public encoding.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Upper bound on the field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the cap of 2^20")]
    TooLarge { p: u64, k: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("zero has no multiplicative order")]
    OrderOfZero,
    #[error("operands belong to different fields (GF({0}) and GF({1}))")]
    MixedFields(u32, u32),
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("coordinate {0} is not reduced modulo the characteristic")]
    BadCoordinate(u32),
}

/// An element of some GF(q). The field order travels with the value so that
/// mixed-field arithmetic is caught.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    q: u32,
    code: u32,
}

impl FieldElement {
    /// Packed polynomial-basis coordinates.
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn field_order(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})#{}", self.q, self.code)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Low-degree-first coefficients of the monic modulus, length k + 1.
    modulus: Vec<u32>,
    /// Code of the chosen generator of the multiplicative group.
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[n] = log(1 + g^n), or NO_LOG when 1 + g^n = 0. Empty in characteristic 2.
    zech: Vec<u32>,
}

/// A concrete finite field GF(p^k) with its canonical modulus.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.t.p)
            .field("k", &self.t.k)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.q == other.t.q
    }
}
impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.t.q.hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Splits `q` as `p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Distinct prime divisors, ascending.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
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

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(code % p);
        code /= p;
    }
    v
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_digits(a: u32, b: u32, p: u32, k: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Multiplies the residue `code` by x modulo the monic `modulus`.
fn times_x(code: u32, modulus: &[u32], p: u32, k: u32) -> u32 {
    let mut d = digits(code, p, k);
    let top = d[k as usize - 1];
    for i in (1..k as usize).rev() {
        d[i] = d[i - 1];
    }
    d[0] = 0;
    if top != 0 {
        for (i, di) in d.iter_mut().enumerate() {
            *di = (*di + (p - top) * modulus[i] % p) % p;
        }
    }
    undigits(&d, p)
}

/// Multiplicative order of x modulo `modulus`, or 0 if x never returns to 1
/// within q - 1 steps.
fn order_of_x(modulus: &[u32], p: u32, k: u32) -> u32 {
    let q = p.pow(k);
    let mut cur = 1u32;
    for i in 1..q {
        cur = times_x(cur, modulus, p, k);
        if cur == 1 {
            return i;
        }
        if cur == 0 {
            return 0;
        }
    }
    0
}

fn least_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let factors = prime_divisors(u64::from(p - 1));
    (2..p)
        .find(|&g| {
            factors.iter().all(|&r| {
                let e = (u64::from(p) - 1) / r;
                pow_mod(u64::from(g), e, u64::from(p)) != 1
            })
        })
        .expect("every prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Lexicographically least primitive monic polynomial of degree `k >= 2`,
/// comparing the constant coefficient first.
fn least_primitive_modulus(p: u32, k: u32) -> Vec<u32> {
    let q = p.pow(k);
    // Counter over (c0, c1, ..., c_{k-1}) with c0 most significant.
    let mut c = vec![0u32; k as usize];
    c[0] = 1;
    loop {
        let mut modulus = c.clone();
        modulus.push(1);
        if order_of_x(&modulus, p, k) == q - 1 {
            return modulus;
        }
        let mut i = k as usize - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "a primitive polynomial always exists");
            i -= 1;
        }
    }
}

/// Builds GF(p^k) with its canonical modulus.
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(FieldError::TooLarge { p, k })?;
    let (p, q) = (p as u32, q as u32);

    let (modulus, generator) = if k == 1 {
        (vec![0, 1], least_primitive_root(p))
    } else {
        (least_primitive_modulus(p, k), p)
    };

    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = cur;
        log[cur as usize] = i as u32;
        cur = if k == 1 {
            (cur * generator) % p
        } else {
            times_x(cur, &modulus, p, k)
        };
    }
    debug_assert_eq!(cur, 1);

    let zech = if p == 2 {
        Vec::new()
    } else {
        exp.iter()
            .map(|&g| log[add_digits(1, g, p, k) as usize])
            .collect()
    };

    Ok(FieldSpec {
        t: Arc::new(Tables {
            p,
            k,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
        }),
    })
}

/// Builds GF(q) for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldSpec, FieldError> {
    let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    make_field(p, k)
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Low-degree-first coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The fixed generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElement {
        self.wrap(self.t.generator)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(n.rem_euclid(i64::from(self.t.p)) as u32)
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.t.k as usize {
            return Err(FieldError::BadLength {
                expected: self.t.k as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.t.p) {
            return Err(FieldError::BadCoordinate(c));
        }
        Ok(self.wrap(undigits(coeffs, self.t.p)))
    }

    pub fn from_code(&self, code: u32) -> Option<FieldElement> {
        (code < self.t.q).then(|| self.wrap(code))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.code, self.t.p, self.t.k)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(|c| self.wrap(c))
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement { q: self.t.q, code }
    }

    fn check(&self, a: FieldElement) -> Result<u32, FieldError> {
        if a.q == self.t.q {
            Ok(a.code)
        } else {
            Err(FieldError::MixedFields(self.t.q, a.q))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.add_c(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.sub_c(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.neg_c(self.check(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.mul_c(self.check(a)?, self.check(b)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let c = self.check(a)?;
        if c == 0 {
            return Err(FieldError::InverseOfZero);
        }
        Ok(self.wrap(self.inv_c(c)))
    }

    /// Square-and-multiply exponentiation; negative exponents invert first.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        let mut base = self.check(a)?;
        if e < 0 {
            if base == 0 {
                return Err(FieldError::InverseOfZero);
            }
            base = self.inv_c(base);
        }
        let mut e = e.unsigned_abs();
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_c(acc, base);
            }
            base = self.mul_c(base, base);
            e >>= 1;
        }
        Ok(self.wrap(acc))
    }

    /// Least m >= 1 with a^m = 1.
    pub fn element_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        let c = self.check(a)?;
        if c == 0 {
            return Err(FieldError::OrderOfZero);
        }
        Ok(self.order_c(c))
    }

    /// a^(p^i), the i-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.frob_c(self.check(a)?, i)))
    }

    // Raw-code arithmetic for matrix code; operands are trusted to be in range.

    #[inline]
    pub(crate) fn add_c(&self, a: u32, b: u32) -> u32 {
        let t = &*self.t;
        if t.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = t.q - 1;
        let la = t.log[a as usize];
        let lb = t.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = t.zech[d as usize];
        if z == NO_LOG {
            0
        } else {
            let s = la + z;
            t.exp[(if s >= n { s - n } else { s }) as usize]
        }
    }

    #[inline]
    pub(crate) fn neg_c(&self, a: u32) -> u32 {
        let t = &*self.t;
        if t.p == 2 || a == 0 {
            return a;
        }
        let n = t.q - 1;
        let s = t.log[a as usize] + n / 2;
        t.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub(crate) fn sub_c(&self, a: u32, b: u32) -> u32 {
        self.add_c(a, self.neg_c(b))
    }

    #[inline]
    pub(crate) fn mul_c(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        let n = t.q - 1;
        let s = t.log[a as usize] + t.log[b as usize];
        t.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub(crate) fn inv_c(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let t = &*self.t;
        let n = t.q - 1;
        let l = t.log[a as usize];
        t.exp[((n - l) % n) as usize]
    }

    pub(crate) fn pow_c(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let t = &*self.t;
        let n = u64::from(t.q - 1);
        let l = u64::from(t.log[a as usize]);
        t.exp[((l * (e % n)) % n) as usize]
    }

    pub(crate) fn exp_c(&self, e: u64) -> u32 {
        let n = u64::from(self.t.q - 1);
        self.t.exp[(e % n) as usize]
    }

    pub(crate) fn order_c(&self, a: u32) -> u64 {
        let n = u64::from(self.t.q - 1);
        let l = u64::from(self.t.log[a as usize]);
        n / gcd(n, l)
    }

    pub(crate) fn frob_c(&self, a: u32, i: u32) -> u32 {
        let i = i % self.t.k;
        self.pow_c(a, u64::from(self.t.p).pow(i))
    }

    /// Codes of all elements of multiplicative order exactly `m`.
    pub(crate) fn elements_of_order(&self, m: u64) -> Vec<u32> {
        let n = u64::from(self.t.q - 1);
        if m == 0 || n % m != 0 {
            return Vec::new();
        }
        let step = n / m;
        (0..m)
            .filter(|&j| gcd(j, m) == 1)
            .map(|j| self.exp_c(j * step))
            .collect()
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
