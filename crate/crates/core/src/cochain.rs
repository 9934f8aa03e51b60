//! Cochains `F_q^n -> F_q` as reduced polynomials in the difference
//! coordinates `U_i = x_i - x_{i+1}` (`i < n`), `U_n = x_n`.
//!
//! Every exponent is kept below `q`, so a [`UCochain`] is the unique
//! polynomial representative of its function and structural equality is
//! equality of functions.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gfq::{Elem, FieldSpec};
use crate::linalg::GFqMatrix;
use crate::quandle::AlexanderFQuandle;

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = SmallVec<[u16; 6]>;

/// A linear form `Σ c_j V_j` in the variables of the target ring.
pub type LinearForm = Vec<(usize, Elem)>;

/// Function-preserving reduction of an exponent: `x^e = x^{e'}` on F_q.
pub fn reduce_exponent(q: u32, e: u64) -> u16 {
    let q = q as u64;
    if e < q {
        e as u16
    } else {
        (((e - 1) % (q - 1)) + 1) as u16
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct UCochain {
    field: FieldSpec,
    arity: usize,
    terms: BTreeMap<Exponents, Elem>,
}

impl fmt::Debug for UCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "UCochain[{}]({})",
            self.arity,
            crate::format::cochain_to_string(self)
        )
    }
}

impl UCochain {
    pub fn zero(field: &FieldSpec, arity: usize) -> UCochain {
        UCochain {
            field: field.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldSpec, arity: usize, c: Elem) -> UCochain {
        let mut z = UCochain::zero(field, arity);
        z.add_term(smallvec::smallvec![0; arity], c);
        z
    }

    /// `coeff · Π U_i^{e_i}`, exponents reduced as functions.
    pub fn monomial(
        field: &FieldSpec,
        arity: usize,
        exponents: &[u64],
        coeff: Elem,
    ) -> Result<UCochain> {
        if exponents.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: exponents.len(),
            });
        }
        let mut z = UCochain::zero(field, arity);
        let exps = exponents
            .iter()
            .map(|&e| reduce_exponent(field.q(), e))
            .collect();
        z.add_term(exps, coeff);
        Ok(z)
    }

    /// Sums the given terms, reducing exponents.
    pub fn from_terms<I>(field: &FieldSpec, arity: usize, terms: I) -> Result<UCochain>
    where
        I: IntoIterator<Item = (Vec<u64>, Elem)>,
    {
        let mut z = UCochain::zero(field, arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: exps.len(),
                });
            }
            z.add_term(
                exps.iter()
                    .map(|&e| reduce_exponent(field.q(), e))
                    .collect(),
                c,
            );
        }
        Ok(z)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Elem) {
        if c.is_zero() {
            return;
        }
        debug_assert!(exps.iter().all(|&e| (e as u32) < self.field.q()));
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Elem)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> Elem {
        self.terms.get(exps).copied().unwrap_or(Elem::ZERO)
    }

    /// True when some exponent was reduced modulo `x^q = x` on input, i.e.
    /// the cochain differs from the literal polynomial it was built from.
    pub fn max_exponent(&self) -> u16 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn compatible(&self, other: &UCochain) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UCochain) -> Result<UCochain> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UCochain) -> Result<UCochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UCochain {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> UCochain {
        let mut out = UCochain::zero(&self.field, self.arity);
        if c.is_zero() {
            return out;
        }
        for (e, a) in self.terms() {
            out.terms.insert(e.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Pointwise product, reduced.
    pub fn mul(&self, other: &UCochain) -> Result<UCochain> {
        self.compatible(other)?;
        let q = self.field.q();
        let mut out = UCochain::zero(&self.field, self.arity);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps = ea
                    .iter()
                    .zip(eb)
                    .map(|(&x, &y)| reduce_exponent(q, x as u64 + y as u64))
                    .collect();
                out.add_term(exps, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> UCochain {
        let mut acc = UCochain::constant(&self.field, self.arity, Elem::ONE);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Composes with `U_k ↦ forms[k]`, a linear form in `new_arity` variables.
    pub fn substitute_linear(&self, forms: &[LinearForm], new_arity: usize) -> Result<UCochain> {
        if forms.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: forms.len(),
            });
        }
        if let Some(&(v, _)) = forms.iter().flatten().find(|(v, _)| *v >= new_arity) {
            return Err(Error::ArityMismatch {
                expected: new_arity,
                got: v + 1,
            });
        }
        let mut expander = Expander::new(&self.field);
        let forms: Vec<LinearForm> = forms
            .iter()
            .map(|f| normalize_form(&self.field, f))
            .collect();
        let mut out = UCochain::zero(&self.field, new_arity);
        for (exps, c) in self.terms() {
            let mut partial: Vec<(Exponents, Elem)> = vec![(smallvec::smallvec![0; new_arity], c)];
            for (k, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let expansion = expander.expand(&forms[k], e as u64);
                if expansion.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (pe, pc) in &partial {
                    for (xe, xc) in expansion.iter() {
                        let mut ne = pe.clone();
                        for &(v, a) in xe {
                            ne[v] = reduce_exponent(self.field.q(), ne[v] as u64 + a);
                        }
                        next.push((ne, self.field.mul(*pc, *xc)));
                    }
                }
                partial = next;
            }
            for (e, c) in partial {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Places this cochain's variables at `positions` inside a ring of
    /// `new_arity` variables.
    pub fn embed(&self, positions: &[usize], new_arity: usize) -> Result<UCochain> {
        let forms: Vec<LinearForm> = positions.iter().map(|&v| vec![(v, Elem::ONE)]).collect();
        self.substitute_linear(&forms, new_arity)
    }

    pub fn eval_u(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (exps, c) in self.terms() {
            let mut t = c;
            for (&x, &e) in point.iter().zip(exps) {
                t = f.mul(t, f.pow(x, e as u64));
                if t.is_zero() {
                    break;
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    /// Values at every U-point, indexed with `U_1` as the most significant
    /// base-q digit.
    pub fn value_table(&self) -> Vec<Elem> {
        let q = self.field.order();
        let n = self.arity;
        let mut data = vec![Elem::ZERO; q.pow(n as u32)];
        for (exps, c) in self.terms() {
            let idx = exps.iter().fold(0usize, |acc, &e| acc * q + e as usize);
            data[idx] = c;
        }
        let vander = evaluation_matrix(&self.field);
        for axis in 0..n {
            apply_axis(&self.field, &mut data, n, axis, &vander);
        }
        data
    }

    /// The unique reduced cochain with the given value table (same indexing
    /// as [`UCochain::value_table`]).
    pub fn interpolate(field: &FieldSpec, arity: usize, values: &[Elem]) -> Result<UCochain> {
        let q = field.order();
        let expected = q.pow(arity as u32);
        if values.len() != expected {
            return Err(Error::IncompleteValueTable {
                expected,
                got: values.len(),
            });
        }
        let mut data = values.to_vec();
        let inv = evaluation_matrix(field)
            .inverse()
            .expect("Vandermonde matrix is invertible");
        for axis in 0..arity {
            apply_axis(field, &mut data, arity, axis, &inv);
        }
        let mut out = UCochain::zero(field, arity);
        for (idx, &c) in data.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.terms.insert(
                point_digits(idx, q, arity)
                    .iter()
                    .map(|&d| d as u16)
                    .collect(),
                c,
            );
        }
        Ok(out)
    }
}

/// Digits of a table index, most significant first.
pub(crate) fn point_digits(mut idx: usize, q: usize, n: usize) -> SmallVec<[usize; 8]> {
    let mut d: SmallVec<[usize; 8]> = smallvec::smallvec![0; n];
    for k in (0..n).rev() {
        d[k] = idx % q;
        idx /= q;
    }
    d
}

/// `V[x][e] = x^e` with `0^0 = 1`.
fn evaluation_matrix(field: &FieldSpec) -> GFqMatrix {
    let q = field.order();
    let mut v = GFqMatrix::zeros(field, q, q);
    for x in field.elements() {
        for e in 0..q {
            v.set(x.index(), e, field.pow(x, e as u64));
        }
    }
    v
}

/// In-place `data[.., i, ..] = Σ_j mat[i][j] data[.., j, ..]` along `axis`.
fn apply_axis(field: &FieldSpec, data: &mut [Elem], n: usize, axis: usize, mat: &GFqMatrix) {
    let q = field.order();
    let stride = q.pow((n - 1 - axis) as u32);
    let block = stride * q;
    let mut buf = vec![Elem::ZERO; q];
    for base in (0..data.len()).step_by(block) {
        for off in 0..stride {
            for (i, slot) in buf.iter_mut().enumerate() {
                let mut acc = Elem::ZERO;
                for j in 0..q {
                    let v = data[base + off + j * stride];
                    if !v.is_zero() {
                        acc = field.add(acc, field.mul(mat.get(i, j), v));
                    }
                }
                *slot = acc;
            }
            for (j, &v) in buf.iter().enumerate() {
                data[base + off + j * stride] = v;
            }
        }
    }
}

fn normalize_form(field: &FieldSpec, form: &LinearForm) -> LinearForm {
    let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
    for &(v, c) in form {
        let e = acc.entry(v).or_insert(Elem::ZERO);
        *e = field.add(*e, c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `(Σ c_j V_j, e)` and its expansion as `(Π V_j^{a_j}, coefficient)` terms.
type ExpansionKey = (Vec<(usize, Elem)>, u64);
type Expansion = Vec<(Vec<(usize, u64)>, Elem)>;

/// Multinomial expansion of `(Σ c_j V_j)^e` in characteristic p, cached
/// per (form, exponent).
struct Expander<'a> {
    field: &'a FieldSpec,
    factorial: Vec<Elem>,
    cache: std::collections::HashMap<ExpansionKey, Expansion>,
}

impl<'a> Expander<'a> {
    fn new(field: &'a FieldSpec) -> Self {
        let p = field.p() as usize;
        let mut factorial = vec![Elem::ONE; p];
        for i in 1..p {
            factorial[i] = field.mul(factorial[i - 1], field.from_int(i as i64));
        }
        Expander {
            field,
            factorial,
            cache: Default::default(),
        }
    }

    /// `binom(n, k) mod p` via Lucas; zero when a digit of `k` exceeds `n`'s.
    fn binom(&self, mut n: u64, mut k: u64) -> Elem {
        let p = self.field.p() as u64;
        let f = self.field;
        let mut acc = Elem::ONE;
        while k > 0 || n > 0 {
            let (nd, kd) = ((n % p) as usize, (k % p) as usize);
            if kd > nd {
                return Elem::ZERO;
            }
            let denom = f.mul(self.factorial[kd], self.factorial[nd - kd]);
            acc = f.mul(
                acc,
                f.div(self.factorial[nd], denom)
                    .expect("factorials below p are units"),
            );
            n /= p;
            k /= p;
        }
        acc
    }

    fn expand(&mut self, form: &LinearForm, e: u64) -> &Vec<(Vec<(usize, u64)>, Elem)> {
        let key = (form.clone(), e);
        if !self.cache.contains_key(&key) {
            let mut out = Vec::new();
            let mut current = Vec::with_capacity(form.len());
            self.compositions(form, 0, e, Elem::ONE, &mut current, &mut out);
            self.cache.insert(key.clone(), out);
        }
        &self.cache[&key]
    }

    fn compositions(
        &self,
        form: &LinearForm,
        j: usize,
        remaining: u64,
        coeff: Elem,
        current: &mut Vec<(usize, u64)>,
        out: &mut Vec<(Vec<(usize, u64)>, Elem)>,
    ) {
        let f = self.field;
        if j + 1 == form.len() {
            let (v, c) = form[j];
            current.push((v, remaining));
            out.push((current.clone(), f.mul(coeff, f.pow(c, remaining))));
            current.pop();
            return;
        }
        if form.is_empty() {
            return;
        }
        let (v, c) = form[j];
        for a in 0..=remaining {
            let b = self.binom(remaining, a);
            if b.is_zero() {
                continue;
            }
            current.push((v, a));
            let next = f.mul(coeff, f.mul(b, f.pow(c, a)));
            self.compositions(form, j + 1, remaining - a, next, current, out);
            current.pop();
        }
    }
}

/// `U_i = x_i - x_{i+1}` for `i < n`, `U_n = x_n`.
pub fn u_from_x(field: &FieldSpec, x: &[Elem], n: usize) -> Result<Vec<Elem>> {
    if x.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok((0..n)
        .map(|i| {
            if i + 1 < n {
                field.sub(x[i], x[i + 1])
            } else {
                x[i]
            }
        })
        .collect())
}

/// Inverse of [`u_from_x`].
pub fn x_from_u(field: &FieldSpec, u: &[Elem], n: usize) -> Result<Vec<Elem>> {
    if u.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let mut x = vec![Elem::ZERO; n];
    for i in (0..n).rev() {
        x[i] = if i + 1 < n {
            field.add(u[i], x[i + 1])
        } else {
            u[i]
        };
    }
    Ok(x)
}

fn ensure_field(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<()> {
    if quandle.field() == phi.field() {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// Coboundary by direct evaluation of the twisted differential on every
/// x-tuple, interpolated back to U-coordinates.
///
/// `δφ(x_1..x_{n+1}) = (-1)^{n+1} Σ_{i=2}^{n+1} (-1)^i [φ(x_1..x̂_i..x_{n+1})
///   - φ(x_1*x_i, .., x_{i-1}*x_i, f(x_{i+1}), .., f(x_{n+1}))]`.
pub fn delta_pointwise(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<UCochain> {
    ensure_field(quandle, phi)?;
    let f = quandle.field();
    let q = f.order();
    let n = phi.arity();
    let table = phi.value_table();
    let lookup = |y: &[Elem]| -> Elem {
        // φ in x-coordinates: convert to U and index the table
        let mut idx = 0usize;
        for k in 0..n {
            let u = if k + 1 < n {
                f.sub(y[k], y[k + 1])
            } else {
                y[k]
            };
            idx = idx * q + u.index();
        }
        table[idx]
    };
    let total = q.pow(n as u32 + 1);
    let mut out = vec![Elem::ZERO; total];
    let mut face = vec![Elem::ZERO; n];
    let mut act = vec![Elem::ZERO; n];
    for (idx, slot) in out.iter_mut().enumerate() {
        let u: Vec<Elem> = point_digits(idx, q, n + 1)
            .iter()
            .map(|&d| Elem::from_index(d))
            .collect();
        let x = x_from_u(f, &u, n + 1)?;
        let mut acc = Elem::ZERO;
        for i in 1..=n {
            // zero-based x index i, one-based i+1
            let mut k = 0;
            for (j, &xj) in x.iter().enumerate() {
                if j == i {
                    continue;
                }
                face[k] = xj;
                act[k] = if j < i {
                    quandle.star(xj, x[i])
                } else {
                    quandle.f_map(xj)
                };
                k += 1;
            }
            let term = f.sub(lookup(&face), lookup(&act));
            // (-1)^{n+1} (-1)^{i+1}
            acc = if (n + i).is_multiple_of(2) {
                f.add(acc, term)
            } else {
                f.sub(acc, term)
            };
        }
        *slot = acc;
    }
    UCochain::interpolate(f, n + 1, &out)
}

/// Coboundary computed symbolically in U-coordinates: for slot `i`,
/// merge `U_i + U_{i+1}` in the face term and substitute
/// `ωU_j (j<i), ωU_i + (ω+β)U_{i+1}, (ω+β)U_{j+1} (j>i)` in the action term.
pub fn delta_poly(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<UCochain> {
    ensure_field(quandle, phi)?;
    let f = quandle.field();
    let n = phi.arity();
    let w = quandle.omega();
    let s = quandle.omega_plus_beta();
    let mut out = UCochain::zero(f, n + 1);
    for i in 0..n {
        let face: Vec<LinearForm> = (0..n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => vec![(j, Elem::ONE)],
                std::cmp::Ordering::Equal => vec![(i, Elem::ONE), (i + 1, Elem::ONE)],
                std::cmp::Ordering::Greater => vec![(j + 1, Elem::ONE)],
            })
            .collect();
        let act: Vec<LinearForm> = (0..n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => vec![(j, w)],
                std::cmp::Ordering::Equal => vec![(i, w), (i + 1, s)],
                std::cmp::Ordering::Greater => vec![(j + 1, s)],
            })
            .collect();
        let term = phi
            .substitute_linear(&face, n + 1)?
            .sub(&phi.substitute_linear(&act, n + 1)?)?;
        // one-based slot i+1: sign (-1)^{n+1} (-1)^{i+2}
        out = if (n + i + 1).is_multiple_of(2) {
            out.add(&term)?
        } else {
            out.sub(&term)?
        };
    }
    Ok(out)
}

/// Vanishes on every tuple with `x_i = x_{i+1}` for some `i >= 2`, i.e.
/// every monomial carries `U_2 .. U_{n-1}`.
pub fn is_quandle_cochain(phi: &UCochain) -> bool {
    let n = phi.arity();
    if n <= 2 {
        return true;
    }
    phi.terms().all(|(e, _)| e[1..n - 1].iter().all(|&x| x > 0))
}
