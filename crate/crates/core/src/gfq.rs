//! Arithmetic in the finite field F_q, q = p^m.
//!
//! A field is `F_p[x]/(modulus)` for a user-chosen monic irreducible
//! modulus. Elements are stored as an [`Elem`] index: the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of the coefficient sequence in the
//! modulus root. For p = 2 this index is exactly the packed bit encoding
//! consumed by the bit-sliced linear algebra. Index order is the canonical
//! element order (lexicographic on coefficients, highest degree first).
//!
//! All arithmetic goes through precomputed tables, so a [`FieldSpec`] is
//! cheap to clone and every operation is a lookup.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order; tables are `q * q` entries.
pub const MAX_ORDER: u64 = 1024;

/// A field element as its canonical index. Only meaningful together with
/// the [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_index(i: usize) -> Elem {
        debug_assert!(i < MAX_ORDER as usize);
        Elem(i as u16)
    }
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Little-endian: `modulus[i]` is the coefficient of x^i, `modulus[m] == 1`.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    primitive: Elem,
}

/// A validated finite field `F_p[x]/(modulus)`.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", crate::format::field_to_string(self))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `g` over F_p (little-endian).
fn poly_rem_monic(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let dg = g.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let t = (lead as u64 * gi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive factor search: no monic polynomial of degree `1..=m/2` divides.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem_monic(modulus, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Moduli used when only the field order is given. Where the worked
/// examples fix a modulus it is used verbatim; otherwise the Conway
/// polynomial. Little-endian coefficients.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 0, 1, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
];

impl FieldSpec {
    /// Builds `F_p[x]/(modulus)`; `modulus` holds `m + 1` little-endian
    /// coefficients and must be monic and irreducible.
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if m == 0 || modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::DegreeMismatch {
                expected: m,
                got: modulus.len(),
            });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::CoefficientOutOfRange { coeff: c as i64, p });
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(FieldSpec(Arc::new(build_tables(p, m, q as u32, modulus))))
    }

    /// The field of order `q` with the built-in modulus (prime fields use `x`).
    pub fn with_order(q: u32) -> Result<FieldSpec> {
        if is_prime(q) {
            return FieldSpec::new(q, 1, &[0, 1]);
        }
        DEFAULT_MODULI
            .iter()
            .find(|(p, m, _)| p.pow(*m) == q)
            .ok_or_else(|| Error::Parse(format!("no built-in modulus for q = {q}")))
            .and_then(|(p, m, modulus)| FieldSpec::new(*p, *m, modulus))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.q as usize
    }

    /// Little-endian modulus coefficients (`m + 1` of them).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn element(&self, index: usize) -> Option<Elem> {
        (index < self.order()).then(|| Elem::from_index(index))
    }

    /// Element from little-endian coefficients (at most `m`, missing high
    /// coefficients are zero).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.m() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m() as usize,
                got: coeffs.len(),
            });
        }
        let p = self.p();
        let mut idx = 0usize;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::CoefficientOutOfRange { coeff: c as i64, p });
            }
            idx = idx * p as usize + c as usize;
        }
        Ok(Elem::from_index(idx))
    }

    /// Little-endian coefficients, always exactly `m` of them.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.p() as usize;
        let mut idx = a.index();
        (0..self.m())
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c as u32
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem::from_index(n.rem_euclid(self.p() as i64) as usize)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a.index() * self.order() + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a.index() * self.order() + b.index()]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.0.inv[a.index()])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.q() - 1) as u64;
        let l = self.0.log[a.index()] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: Elem, e: u32) -> Elem {
        (0..e % self.m()).fold(a, |x, _| self.0.frob[x.index()])
    }

    /// Least `n >= 1` with `a^n = 1`.
    pub fn element_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut x = a;
        let mut n = 1u64;
        while x != Elem::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Ok(n)
    }

    /// The smallest element (in canonical order) of order `q - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.0.primitive
    }

    /// `g^k` for the canonical primitive element `g`.
    pub fn gen_pow(&self, k: u64) -> Elem {
        self.pow(self.primitive_element(), k)
    }

    /// Discrete log to the canonical primitive element, `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (!a.is_zero()).then(|| self.0.log[a.index()] as u64)
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(Elem::from_index)
    }

    pub fn bind(&self, a: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: a,
        }
    }
}

fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> Tables {
    let qs = q as usize;
    let mu = m as usize;
    let digits = |mut idx: usize| -> Vec<u32> {
        (0..mu)
            .map(|_| {
                let c = idx % p as usize;
                idx /= p as usize;
                c as u32
            })
            .collect()
    };
    let undigits = |c: &[u32]| -> usize {
        c.iter()
            .rev()
            .fold(0, |acc, &d| acc * p as usize + d as usize)
    };
    let all: Vec<Vec<u32>> = (0..qs).map(digits).collect();

    let mut add = vec![Elem::ZERO; qs * qs];
    let mut neg = vec![Elem::ZERO; qs];
    for a in 0..qs {
        let na: Vec<u32> = all[a].iter().map(|&c| (p - c) % p).collect();
        neg[a] = Elem::from_index(undigits(&na));
        for b in 0..qs {
            let s: Vec<u32> = all[a]
                .iter()
                .zip(&all[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            add[a * qs + b] = Elem::from_index(undigits(&s));
        }
    }

    // x^i reduced, for i < 2m - 1.
    let mut xpow: Vec<Vec<u32>> = Vec::with_capacity(2 * mu);
    for i in 0..(2 * mu).max(1) {
        let mut mono = vec![0u32; i + 1];
        mono[i] = 1;
        let mut r = poly_rem_monic(&mono, modulus, p);
        r.resize(mu, 0);
        xpow.push(r);
    }
    let mut mul = vec![Elem::ZERO; qs * qs];
    for a in 0..qs {
        for b in a..qs {
            let mut acc = vec![0u64; mu];
            for (i, &ai) in all[a].iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in all[b].iter().enumerate() {
                    if bj == 0 {
                        continue;
                    }
                    let c = (ai * bj) as u64;
                    for (k, &xk) in xpow[i + j].iter().enumerate() {
                        acc[k] += c * xk as u64;
                    }
                }
            }
            let r: Vec<u32> = acc.iter().map(|&v| (v % p as u64) as u32).collect();
            let e = Elem::from_index(undigits(&r));
            mul[a * qs + b] = e;
            mul[b * qs + a] = e;
        }
    }

    let mut inv = vec![Elem::ZERO; qs];
    for a in 1..qs {
        for b in 1..qs {
            if mul[a * qs + b] == Elem::ONE {
                inv[a] = Elem::from_index(b);
                break;
            }
        }
    }

    let order_of = |a: usize| -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = mul[x * qs + a].index();
            n += 1;
        }
        n
    };
    let primitive = (1..qs)
        .find(|&a| order_of(a) == qs - 1)
        .expect("F_q^* is cyclic");

    let mut exp = Vec::with_capacity(qs - 1);
    let mut log = vec![0u32; qs];
    let mut x = 1usize;
    for k in 0..qs - 1 {
        exp.push(Elem::from_index(x));
        log[x] = k as u32;
        x = mul[x * qs + primitive].index();
    }

    let frob = (0..qs)
        .map(|a| {
            let mut r = 1usize;
            for _ in 0..p {
                r = mul[r * qs + a].index();
            }
            Elem::from_index(r)
        })
        .collect();

    Tables {
        p,
        m,
        q,
        modulus: modulus.to_vec(),
        add,
        mul,
        neg,
        inv,
        frob,
        exp,
        log,
        primitive: Elem::from_index(primitive),
    }
}

/// An element bound to its field; arithmetic checks that operands agree.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field.coeffs(self.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.bind(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.bind(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.bind(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.bind(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.bind(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.bind(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, e: u32) -> FieldElement {
        self.field.bind(self.field.frobenius(self.value, e))
    }

    pub fn order(&self) -> Result<u64> {
        self.field.element_order(self.value)
    }
}
