//! Named cocycle families, their unity conditions, and the candidate
//! bases of `H^2`, `H^3` and `H^4`.
//!
//! Exponents are written as powers of `p`: a parameter `k` stands for the
//! exponent `p^k`. `χ(x, y) = Σ_{i=1}^{p-1} (-1)^{i-1} i^{-1} x^{p-i} y^i`
//! is the carry polynomial `((x+y)^p - x^p - y^p) / p`.

use std::fmt;
use std::str::FromStr;

use crate::cochain::UCochain;
use crate::error::{Error, Result};
use crate::gfq::{Elem, FieldSpec};
use crate::quandle::AlexanderFQuandle;

/// `base^exponent = 1`, with `0^0 = 1` and `0^k = 0` otherwise.
pub fn cond_unity(field: &FieldSpec, base: Elem, exponent: u64) -> bool {
    field.pow(base, exponent) == Elem::ONE
}

/// `ω^e = 1` and `(ω+β)^e = 1`.
pub fn both_unity(quandle: &AlexanderFQuandle, exponent: u64) -> bool {
    let f = quandle.field();
    cond_unity(f, quandle.omega(), exponent) && cond_unity(f, quandle.omega_plus_beta(), exponent)
}

fn pw(field: &FieldSpec, k: u32) -> u64 {
    (field.p() as u64).pow(k)
}

fn mono(field: &FieldSpec, exps: &[u64]) -> UCochain {
    UCochain::monomial(field, exps.len(), exps, Elem::ONE).expect("arity matches")
}

/// `μ_a(x, y) = (x+y)^a - x^a - y^a` in two variables.
pub fn mu(field: &FieldSpec, a: u64) -> UCochain {
    let sum = UCochain::from_terms(field, 2, [(vec![1, 0], Elem::ONE), (vec![0, 1], Elem::ONE)])
        .expect("arity 2");
    sum.pow(a)
        .sub(&mono(field, &[a, 0]))
        .and_then(|x| x.sub(&mono(field, &[0, a])))
        .expect("same ring")
}

/// `χ(a U_x, b U_y)` inside a ring of `arity` variables.
fn chi_at(field: &FieldSpec, arity: usize, x: usize, y: usize, a: Elem, b: Elem) -> UCochain {
    let p = field.p() as u64;
    let mut out = UCochain::zero(field, arity);
    for i in 1..p {
        let sign = if i % 2 == 1 {
            Elem::ONE
        } else {
            field.neg(Elem::ONE)
        };
        let c = field.mul(sign, field.inv(field.from_int(i as i64)).expect("i < p"));
        let c = field.mul(c, field.mul(field.pow(a, p - i), field.pow(b, i)));
        let mut exps = vec![0; arity];
        exps[x] = p - i;
        exps[y] = i;
        out = out
            .add(&UCochain::monomial(field, arity, &exps, c).expect("arity"))
            .expect("same ring");
    }
    out
}

/// The carry polynomial `χ(U_1, U_2)`.
pub fn chi(field: &FieldSpec) -> UCochain {
    chi_at(field, 2, 0, 1, Elem::ONE, Elem::ONE)
}

/// `χ(U_x, U_{x+1})^k - scale · χ(ωU_x, (ω+β)U_{x+1})^k`.
fn chi_difference(
    quandle: &AlexanderFQuandle,
    arity: usize,
    x: usize,
    k: u64,
    scale: Elem,
) -> UCochain {
    let f = quandle.field();
    let plain = chi_at(f, arity, x, x + 1, Elem::ONE, Elem::ONE).pow(k);
    let twisted = chi_at(
        f,
        arity,
        x,
        x + 1,
        quandle.omega(),
        quandle.omega_plus_beta(),
    )
    .pow(k);
    plain.sub(&twisted.scale(scale)).expect("same ring")
}

/// `Ψ(a, b) = (μ_a(U_1,U_2) - μ_a(ωU_1, (ω+β)U_2)) · U_3^b`.
pub fn psi(quandle: &AlexanderFQuandle, a: u64, b: u64) -> UCochain {
    let f = quandle.field();
    let m = mu(f, a);
    let twisted = m
        .substitute_linear(
            &[
                vec![(0, quandle.omega())],
                vec![(1, quandle.omega_plus_beta())],
            ],
            2,
        )
        .expect("two forms");
    let h = m
        .sub(&twisted)
        .expect("same ring")
        .embed(&[0, 1], 3)
        .expect("embed");
    h.mul(&mono(f, &[0, 0, b])).expect("same ring")
}

/// `E_0(a·p, b) = (χ(U_1,U_2)^a - (ω+β)^b χ(ωU_1, (ω+β)U_2)^a) · U_3^b`.
pub fn e0(quandle: &AlexanderFQuandle, a_times_p: u64, b: u64) -> Result<UCochain> {
    let f = quandle.field();
    let p = f.p() as u64;
    if a_times_p == 0 || !a_times_p.is_multiple_of(p) {
        return Err(Error::NotDivisibleByP(a_times_p));
    }
    let scale = f.pow(quandle.omega_plus_beta(), b);
    let h = chi_difference(quandle, 3, 0, a_times_p / p, scale);
    h.mul(&mono(f, &[0, 0, b]))
}

/// `E_1(a, b·p) = U_1^a · (χ(U_2,U_3)^b - ω^a χ(ωU_2, (ω+β)U_3)^b)`.
pub fn e1(quandle: &AlexanderFQuandle, a: u64, b_times_p: u64) -> Result<UCochain> {
    let f = quandle.field();
    let p = f.p() as u64;
    if b_times_p == 0 || !b_times_p.is_multiple_of(p) {
        return Err(Error::NotDivisibleByP(b_times_p));
    }
    let scale = f.pow(quandle.omega(), a);
    let h = chi_difference(quandle, 3, 1, b_times_p / p, scale);
    mono(f, &[a, 0, 0]).mul(&h)
}

/// `U_1^a U_2^b U_3^c` for arbitrary exponents.
pub fn f_monomial(field: &FieldSpec, a: u64, b: u64, c: u64) -> UCochain {
    mono(field, &[a, b, c])
}

pub fn f4_monomial(field: &FieldSpec, a: u64, b: u64, c: u64, d: u64) -> UCochain {
    mono(field, &[a, b, c, d])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
}

impl CaseTag {
    pub const ALL: [CaseTag; 5] = [
        CaseTag::I,
        CaseTag::II,
        CaseTag::III,
        CaseTag::IV,
        CaseTag::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IV => "IV",
            CaseTag::V => "V",
        }
    }
}

/// A tuple `(p^v, p^u, p^t, p^s)`, stored by its exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QTuple {
    pub v: u32,
    pub u: u32,
    pub t: u32,
    pub s: u32,
    pub case: CaseTag,
}

/// The case a tuple falls in, if it satisfies the shared constraints and
/// exactly one case block.
pub fn classify(quandle: &AlexanderFQuandle, v: u32, u: u32, t: u32, s: u32) -> Option<CaseTag> {
    let f = quandle.field();
    let p2 = f.p() == 2;
    if !(v < t && u < s && u <= t) || (p2 && u >= t) {
        return None;
    }
    let (pv, pu, pt, ps) = (pw(f, v), pw(f, u), pw(f, t), pw(f, s));
    if !both_unity(quandle, pv + pt) || !both_unity(quandle, pu + ps) {
        return None;
    }
    let (w, g) = (quandle.omega(), quandle.omega_plus_beta());
    let w_one = cond_unity(f, w, pv + pu);
    let g_one = cond_unity(f, g, pv + pu);
    if w_one && g_one {
        return Some(CaseTag::I);
    }
    if w_one || g_one {
        return None;
    }
    let equal_powers = f.pow(w, pv) == f.pow(w, pu) && f.pow(g, pv) == f.pow(g, pu);
    if t > s {
        Some(CaseTag::II)
    } else if t == s && !p2 {
        Some(CaseTag::III)
    } else if !p2 && u <= v && v < t && t < s && equal_powers {
        Some(CaseTag::IV)
    } else if p2 && u < v && v < t && t <= s && equal_powers {
        Some(CaseTag::V)
    } else {
        None
    }
}

/// Every tuple of exponents below `m` that lies in the Q-set, in
/// lexicographic `(v, u, t, s)` order.
pub fn q_set(quandle: &AlexanderFQuandle) -> Vec<QTuple> {
    let m = quandle.field().m();
    let mut out = Vec::new();
    for v in 0..m {
        for u in 0..m {
            for t in 0..m {
                for s in 0..m {
                    if let Some(case) = classify(quandle, v, u, t, s) {
                        out.push(QTuple { v, u, t, s, case });
                    }
                }
            }
        }
    }
    out
}

/// The 3-cocycle attached to a Q-set tuple.
pub fn gamma(quandle: &AlexanderFQuandle, tuple: &QTuple) -> Result<UCochain> {
    let f = quandle.field();
    let (pv, pu, pt, ps) = (
        pw(f, tuple.v),
        pw(f, tuple.u),
        pw(f, tuple.t),
        pw(f, tuple.s),
    );
    match tuple.case {
        CaseTag::I => Ok(f_monomial(f, pv, pu + pt, ps)),
        CaseTag::II => {
            let (w, g) = (quandle.omega(), quandle.omega_plus_beta());
            let denom = f.sub(f.mul(f.pow(w, pu), f.pow(g, ps)), Elem::ONE);
            if denom.is_zero() {
                return Err(Error::CaseIICoefficientSingular);
            }
            let numer = f.sub(Elem::ONE, f.mul(f.pow(w, pu + pv), f.pow(g, pt + ps)));
            let c = f.div(numer, denom)?;
            // the last monomial carries `c` as well; with coefficient 1 the
            // combination is not closed once `v ≠ u`
            f_monomial(f, pv, pu + pt, ps)
                .sub(&f_monomial(f, pu, pv + ps, pt))?
                .sub(&f_monomial(f, pv, pu, pt + ps).scale(c))?
                .add(&f_monomial(f, pv + pu, ps, pt).scale(c))
        }
        CaseTag::III => Ok(f_monomial(f, pv, pt + ps, pu)),
        CaseTag::IV | CaseTag::V => Ok(f_monomial(f, pt, pv + pu, ps)),
    }
}

/// Proposition families, by their command-line identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `U_1^{p^t} U_2^{p^s}`
    P2,
    Psi,
    E0,
    E1,
    /// `F(p^v, p^u, p^t)`
    F,
    /// `F(p^v, p^u, 0)`
    F0,
    Gamma(CaseTag),
    /// `U_1^{p^v} U_2^{p^u} U_3^{p^t} U_4^{p^s}`
    A,
    /// `χ` at slots 1-2 times `U_3^{p^t} U_4^{p^s}`
    B,
    /// `χ` at slots 2-3
    C,
    /// `χ` at slots 3-4
    D,
    /// `U_1^{p^v} U_2^{p^u} U_3^{p^t}` read as a 4-cochain
    E,
    /// `U_1^{p^i} U_2^{p^j+p^u} U_3^{p^t} U_4^{p^s}`
    P5M1,
    /// product of two `χ` differences
    P5XX,
    /// `U_1^{p^i} U_2^{p^j+p^u}` times a `χ` difference at slots 3-4
    P5MX,
    /// `U_1^{p^i} U_2^{p^j+p^v} U_3^{p^u+p^t} U_4^{p^s}`
    P5M2,
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut v = vec![
            Family::P2,
            Family::Psi,
            Family::E0,
            Family::E1,
            Family::F,
            Family::F0,
        ];
        v.extend(CaseTag::ALL.iter().map(|&c| Family::Gamma(c)));
        v.extend([
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::P5M1,
            Family::P5XX,
            Family::P5MX,
            Family::P5M2,
        ]);
        v
    }

    pub fn id(&self) -> String {
        match self {
            Family::P2 => "P2".into(),
            Family::Psi => "PSI".into(),
            Family::E0 => "E0".into(),
            Family::E1 => "E1".into(),
            Family::F => "F".into(),
            Family::F0 => "F0".into(),
            Family::Gamma(c) => format!("GAMMA:{}", c.name()),
            Family::A => "A".into(),
            Family::B => "B".into(),
            Family::C => "C".into(),
            Family::D => "D".into(),
            Family::E => "E".into(),
            Family::P5M1 => "P5M1".into(),
            Family::P5XX => "P5XX".into(),
            Family::P5MX => "P5MX".into(),
            Family::P5M2 => "P5M2".into(),
        }
    }

    /// Degree of the cochains in the family.
    pub fn degree(&self) -> usize {
        match self {
            Family::P2 => 2,
            Family::Psi | Family::E0 | Family::E1 | Family::F | Family::F0 | Family::Gamma(_) => 3,
            _ => 4,
        }
    }

    /// Number of exponent parameters.
    pub fn params(&self) -> usize {
        match self {
            Family::P2 | Family::Psi | Family::E0 | Family::E1 | Family::F0 | Family::P5XX => 2,
            Family::F | Family::B | Family::C | Family::D | Family::E => 3,
            Family::Gamma(_) | Family::A | Family::P5MX => 4,
            Family::P5M1 => 5,
            Family::P5M2 => 6,
        }
    }

    /// Ranges swept by proposition checks. `PSI` takes a raw exponent
    /// `a` first; `E0`/`E1` have a second power `≥ p` (`s > 0`).
    fn param_ranges(&self, field: &FieldSpec) -> Vec<std::ops::Range<u32>> {
        let m = field.m();
        match self {
            Family::Psi => vec![1..field.q(), 0..m],
            Family::E0 => vec![1..m + 1, 0..m],
            Family::E1 => vec![0..m, 1..m + 1],
            _ => vec![0..m; self.params()],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let up = s.trim().to_ascii_uppercase();
        Family::all()
            .into_iter()
            .find(|f| f.id() == up)
            .ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

/// Whether the printed hypothesis of `family` holds at `params`.
pub fn conditions_hold(quandle: &AlexanderFQuandle, family: Family, params: &[u32]) -> bool {
    let f = quandle.field();
    if params.len() != family.params() {
        return false;
    }
    let p = |k: usize| pw(f, params[k]);
    let (w, g) = (quandle.omega(), quandle.omega_plus_beta());
    let wu = |e: u64| cond_unity(f, w, e);
    let gu = |e: u64| cond_unity(f, g, e);
    let both = |e: u64| both_unity(quandle, e);
    match family {
        Family::P2 | Family::F0 => both(p(0) + p(1)),
        Family::Psi => both(params[0] as u64 + p(1)),
        Family::E0 | Family::E1 => {
            params[if family == Family::E0 { 0 } else { 1 }] > 0 && both(p(0) + p(1))
        }
        Family::F | Family::E => both(p(0) + p(1) + p(2)),
        Family::Gamma(c) => {
            classify(quandle, params[0], params[1], params[2], params[3]) == Some(c)
        }
        Family::A => both(p(0) + p(1) + p(2) + p(3)),
        // (u, t, s): p^{u+1} + p^t + p^s
        Family::B => both(p(0) * pw(f, 1) + p(1) + p(2)),
        // (v, t, s): p^v + p^{t+1} + p^s
        Family::C => both(p(0) + p(1) * pw(f, 1) + p(2)),
        // (v, u, s): p^v + p^u + p^{s+1}
        Family::D => both(p(0) + p(1) + p(2) * pw(f, 1)),
        Family::P5M1 => {
            let (i, j, u, t, s) = (p(0), p(1), p(2), p(3), p(4));
            both(i + j + u + t + s) && wu(i + j) && wu(i + u) && gu(u + t + s) && gu(j + t + s)
        }
        Family::P5XX => both(p(0) * pw(f, 1) + p(1) * pw(f, 1)),
        Family::P5MX => {
            let (i, j, u, s1) = (p(0), p(1), p(2), p(3) * pw(f, 1));
            both(i + j + u + s1) && wu(i + j) && wu(i + u) && gu(u + s1) && gu(j + s1)
        }
        Family::P5M2 => {
            let (i, j, v, u, t, s) = (p(0), p(1), p(2), p(3), p(4), p(5));
            both(i + j + v + u + t + s)
                && wu(i + j)
                && wu(i + v)
                && wu(v + u)
                && wu(v + t)
                && gu(s + t)
                && gu(s + u)
                && gu(v + u)
                && gu(j + u)
        }
    }
}

/// Builds a family member without checking its hypothesis.
pub fn build_unchecked(
    quandle: &AlexanderFQuandle,
    family: Family,
    params: &[u32],
) -> Result<UCochain> {
    let f = quandle.field();
    if params.len() != family.params() {
        return Err(Error::ArityMismatch {
            expected: family.params(),
            got: params.len(),
        });
    }
    let p = |k: usize| pw(f, params[k]);
    let (w, g) = (quandle.omega(), quandle.omega_plus_beta());
    Ok(match family {
        Family::P2 => mono(f, &[p(0), p(1)]),
        Family::Psi => psi(quandle, params[0] as u64, p(1)),
        Family::E0 => e0(quandle, p(0), p(1))?,
        Family::E1 => e1(quandle, p(0), p(1))?,
        Family::F => f_monomial(f, p(0), p(1), p(2)),
        Family::F0 => f_monomial(f, p(0), p(1), 0),
        Family::Gamma(case) => gamma(
            quandle,
            &QTuple {
                v: params[0],
                u: params[1],
                t: params[2],
                s: params[3],
                case,
            },
        )?,
        Family::A => f4_monomial(f, p(0), p(1), p(2), p(3)),
        Family::B => {
            let (u, t, s) = (p(0), p(1), p(2));
            chi_difference(quandle, 4, 0, u, f.pow(g, t + s)).mul(&mono(f, &[0, 0, t, s]))?
        }
        Family::C => {
            let (v, t, s) = (p(0), p(1), p(2));
            let scale = f.mul(f.pow(w, v), f.pow(g, s));
            mono(f, &[v, 0, 0, s]).mul(&chi_difference(quandle, 4, 1, t, scale))?
        }
        Family::D => {
            let (v, u, s) = (p(0), p(1), p(2));
            mono(f, &[v, u, 0, 0]).mul(&chi_difference(quandle, 4, 2, s, f.pow(w, v + u)))?
        }
        Family::E => f4_monomial(f, p(0), p(1), p(2), 0),
        Family::P5M1 => f4_monomial(f, p(0), p(1) + p(2), p(3), p(4)),
        Family::P5XX => {
            let (u, s) = (p(0), p(1));
            let pp = pw(f, 1);
            let left = chi_difference(quandle, 4, 0, u, f.pow(g, s * pp));
            let right = chi_difference(quandle, 4, 2, s, f.pow(w, u * pp));
            left.mul(&right)?
        }
        Family::P5MX => {
            let (i, j, u, s) = (p(0), p(1), p(2), p(3));
            mono(f, &[i, j + u, 0, 0]).mul(&chi_difference(
                quandle,
                4,
                2,
                s,
                f.pow(w, i + j + u),
            ))?
        }
        Family::P5M2 => f4_monomial(f, p(0), p(1) + p(2), p(3) + p(4), p(5)),
    })
}

/// Builds a family member, rejecting parameters whose hypothesis fails.
pub fn build(quandle: &AlexanderFQuandle, family: Family, params: &[u32]) -> Result<UCochain> {
    if !conditions_hold(quandle, family, params) {
        return Err(Error::ConditionViolation {
            family: family.id(),
            params: params.to_vec(),
        });
    }
    build_unchecked(quandle, family, params)
}

/// The four extra 4-cocycle families (`P5M1`, `P5XX`, `P5MX`, `P5M2`).
pub fn prop5_extras(
    quandle: &AlexanderFQuandle,
    family: Family,
    params: &[u32],
) -> Result<UCochain> {
    match family {
        Family::P5M1 | Family::P5XX | Family::P5MX | Family::P5M2 => build(quandle, family, params),
        other => Err(Error::UnknownProposition(other.id())),
    }
}

pub fn prop5_extras_unchecked(
    quandle: &AlexanderFQuandle,
    family: Family,
    params: &[u32],
) -> Result<UCochain> {
    match family {
        Family::P5M1 | Family::P5XX | Family::P5MX | Family::P5M2 => {
            build_unchecked(quandle, family, params)
        }
        other => Err(Error::UnknownProposition(other.id())),
    }
}

/// Every parameter tuple of the family's sweep range, lexicographically.
pub fn parameter_space(field: &FieldSpec, family: Family) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for r in family.param_ranges(field) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                r.clone().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Parameter tuples satisfying the hypothesis.
pub fn admissible_parameters(quandle: &AlexanderFQuandle, family: Family) -> Vec<Vec<u32>> {
    match family {
        Family::Gamma(case) => q_set(quandle)
            .into_iter()
            .filter(|t| t.case == case)
            .map(|t| vec![t.v, t.u, t.t, t.s])
            .collect(),
        _ => parameter_space(quandle.field(), family)
            .into_iter()
            .filter(|ps| conditions_hold(quandle, family, ps))
            .collect(),
    }
}

/// Family label with the actual exponents, e.g. `F(1,2,4)`.
pub fn label(field: &FieldSpec, family: Family, params: &[u32]) -> String {
    let vals: Vec<String> = match family {
        Family::Psi => vec![params[0].to_string(), pw(field, params[1]).to_string()],
        _ => params.iter().map(|&k| pw(field, k).to_string()).collect(),
    };
    format!("{}({})", family.id(), vals.join(","))
}

/// Raw exponents a family member is written with, before reduction.
fn raw_exponents(field: &FieldSpec, family: Family, params: &[u32]) -> Vec<u64> {
    let p = |k: usize| pw(field, params[k]);
    match family {
        Family::P5M1 => vec![p(0), p(1) + p(2), p(3), p(4)],
        Family::P5M2 => vec![p(0), p(1) + p(2), p(3) + p(4), p(5)],
        Family::P5MX => vec![p(0), p(1) + p(2)],
        Family::Gamma(_) => {
            let (v, u, t, s) = (p(0), p(1), p(2), p(3));
            vec![u + t, v + s, t + s, v + u, v + u]
        }
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub family: Option<Family>,
    pub params: Vec<u32>,
    pub label: String,
    pub cochain: UCochain,
    /// Some written exponent reached `q` and was reduced as a function.
    pub reduced: bool,
}

impl Candidate {
    pub fn new(quandle: &AlexanderFQuandle, family: Family, params: &[u32]) -> Result<Candidate> {
        let f = quandle.field();
        Ok(Candidate {
            family: Some(family),
            params: params.to_vec(),
            label: label(f, family, params),
            cochain: build_unchecked(quandle, family, params)?,
            reduced: raw_exponents(f, family, params)
                .iter()
                .any(|&e| e >= f.q() as u64),
        })
    }
}

fn strictly_increasing(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

fn from_family(
    quandle: &AlexanderFQuandle,
    family: Family,
    keep: impl Fn(&[u32]) -> bool,
) -> Vec<Candidate> {
    admissible_parameters(quandle, family)
        .into_iter()
        .filter(|ps| keep(ps))
        .filter_map(|ps| Candidate::new(quandle, family, &ps).ok())
        .collect()
}

/// `U_1^{p^v} U_2^{p^u}` with `v < u` and both unity conditions.
pub fn h2_candidates(quandle: &AlexanderFQuandle) -> Vec<Candidate> {
    from_family(quandle, Family::P2, strictly_increasing)
}

/// `F(p^v,p^u,p^t)` (`v<u<t`), `F(p^v,p^u,0)` (`v<u`), `E_0(p·p^v, p^u)`
/// (`v<u`), `E_1(p^v, p·p^u)` (`v≤u`), and `Γ` over the Q-set.
pub fn h3_candidates(quandle: &AlexanderFQuandle) -> Vec<Candidate> {
    let mut out = from_family(quandle, Family::F, strictly_increasing);
    out.extend(from_family(quandle, Family::F0, strictly_increasing));
    // E0 parameters are (v+1, u)
    out.extend(from_family(quandle, Family::E0, |ps| ps[0] - 1 < ps[1]));
    // E1 parameters are (v, u+1)
    out.extend(from_family(quandle, Family::E1, |ps| ps[0] < ps[1]));
    for case in CaseTag::ALL {
        out.extend(from_family(quandle, Family::Gamma(case), |_| true));
    }
    out
}

/// Sets `A` (`v<u<t<s`), `B` (`u<t<s`), `C` (`v≤t<s`), `D` (`v<u≤s`),
/// `E` (`v<u<t`).
pub fn h4_candidates(quandle: &AlexanderFQuandle) -> Vec<Candidate> {
    let mut out = from_family(quandle, Family::A, strictly_increasing);
    out.extend(from_family(quandle, Family::B, strictly_increasing));
    out.extend(from_family(quandle, Family::C, |ps| {
        ps[0] <= ps[1] && ps[1] < ps[2]
    }));
    out.extend(from_family(quandle, Family::D, |ps| {
        ps[0] < ps[1] && ps[1] <= ps[2]
    }));
    out.extend(from_family(quandle, Family::E, strictly_increasing));
    out
}

pub fn basis_candidates(quandle: &AlexanderFQuandle, n: usize) -> Vec<Candidate> {
    match n {
        2 => h2_candidates(quandle),
        3 => h3_candidates(quandle),
        4 => h4_candidates(quandle),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{delta_poly, is_quandle_cochain};

    fn example(q: u32, beta_pow: u64) -> AlexanderFQuandle {
        let f = FieldSpec::with_order(q).unwrap();
        let w = f.primitive_element();
        AlexanderFQuandle::new(&f, w, f.pow(w, beta_pow)).unwrap()
    }

    fn f9_minus_one() -> AlexanderFQuandle {
        let f = FieldSpec::with_order(9).unwrap();
        AlexanderFQuandle::new(&f, f.from_int(-1), f.from_int(2)).unwrap()
    }

    #[test]
    fn unity_predicates() {
        let f4 = FieldSpec::with_order(4).unwrap();
        assert!(cond_unity(&f4, f4.primitive_element(), 3));
        assert!(cond_unity(&f4, f4.primitive_element(), 0));
        assert!(!cond_unity(&f4, Elem::ZERO, 3));
        let f8 = FieldSpec::with_order(8).unwrap();
        assert!(!cond_unity(&f8, f8.primitive_element(), 3));
    }

    #[test]
    fn mu_and_chi() {
        let f2 = FieldSpec::with_order(2).unwrap();
        let f3 = FieldSpec::with_order(3).unwrap();
        let f4 = FieldSpec::with_order(4).unwrap();
        assert!(mu(&f4, 2).is_zero());
        assert!(mu(&f4, 1).is_zero());
        assert_eq!(mu(&f3, 2), mono(&f3, &[1, 1]).scale(f3.from_int(2)));
        assert_eq!(chi(&f2), mono(&f2, &[1, 1]));
        assert_eq!(
            chi(&f3),
            mono(&f3, &[2, 1]).add(&mono(&f3, &[1, 2])).unwrap()
        );
        for q in [3, 9] {
            let f = FieldSpec::with_order(q).unwrap();
            let c = chi(&f);
            for a in f.elements() {
                assert!(c.eval_u(&[a, Elem::ZERO]).unwrap().is_zero());
                assert!(c.eval_u(&[Elem::ZERO, a]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn chi_is_the_integer_carry() {
        // binom(p, i) / p ≡ (-1)^{i-1} / i (mod p)
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::with_order(p as u32).unwrap();
            let c = chi(&f);
            let mut binom = 1u64;
            for i in 1..p {
                binom = binom * (p - i + 1) / i;
                let expected = f.from_int(((binom / p) % p) as i64);
                assert_eq!(
                    c.coeff(&[(p - i) as u16, i as u16]),
                    expected,
                    "p={p} i={i}"
                );
            }
        }
    }

    #[test]
    fn e_families_reject_non_multiples() {
        let qd = example(9, 2);
        assert_eq!(e0(&qd, 4, 1).unwrap_err(), Error::NotDivisibleByP(4));
        assert_eq!(e1(&qd, 1, 2).unwrap_err(), Error::NotDivisibleByP(2));
        assert!(e0(&qd, 3, 1).is_ok());
    }

    #[test]
    fn small_examples_are_cocycles() {
        let qd = example(4, 2);
        let f = qd.field().clone();
        assert!(delta_poly(&qd, &e0(&qd, 2, 1).unwrap()).unwrap().is_zero());
        assert!(delta_poly(&qd, &e1(&qd, 1, 2).unwrap()).unwrap().is_zero());
        assert!(psi(&qd, 2, 1).is_zero());
        assert_eq!(
            h2_candidates(&qd)
                .iter()
                .map(|c| c.cochain.clone())
                .collect::<Vec<_>>(),
            vec![mono(&f, &[1, 2])]
        );
    }

    #[test]
    fn paper_example_candidate_sets() {
        let f8 = example(8, 4);
        let h3: Vec<String> = h3_candidates(&f8).iter().map(|c| c.label.clone()).collect();
        assert_eq!(h3, vec!["F(1,2,4)"]);
        assert!(q_set(&f8).is_empty());

        let f16 = {
            let f = FieldSpec::new(2, 4, &[1, 1, 0, 0, 1]).unwrap();
            let w = f.primitive_element();
            AlexanderFQuandle::new(&f, w, f.pow(w, 4)).unwrap()
        };
        let h4: Vec<String> = h4_candidates(&f16)
            .iter()
            .map(|c| c.label.clone())
            .collect();
        assert_eq!(h4, vec!["A(1,2,4,8)"]);

        let f9 = f9_minus_one();
        let h2: Vec<String> = h2_candidates(&f9).iter().map(|c| c.label.clone()).collect();
        assert_eq!(h2, vec!["P2(1,3)"]);
    }

    #[test]
    fn q_set_for_minus_one_is_case_i() {
        let qd = f9_minus_one();
        let qs = q_set(&qd);
        assert!(!qs.is_empty());
        for t in &qs {
            assert_eq!(t.case, CaseTag::I);
            assert!(t.u <= t.t && t.v < t.t && t.u < t.s);
        }
        let m = qd.field().m();
        let expected = (0..m)
            .flat_map(|v| {
                (0..m)
                    .flat_map(move |u| (0..m).flat_map(move |t| (0..m).map(move |s| (v, u, t, s))))
            })
            .filter(|&(v, u, t, s)| u <= t && v < t && u < s)
            .count();
        assert_eq!(qs.len(), expected);
    }

    #[test]
    fn q_set_tags_are_unique() {
        for q in [4, 8, 9, 16, 25, 27] {
            let f = FieldSpec::with_order(q).unwrap();
            for w in f.elements().skip(2) {
                for b in f.elements().skip(1) {
                    let qd = AlexanderFQuandle::new(&f, w, b).unwrap();
                    for t in q_set(&qd) {
                        let hits = CaseTag::ALL
                            .iter()
                            .filter(|&&c| {
                                conditions_hold(&qd, Family::Gamma(c), &[t.v, t.u, t.t, t.s])
                            })
                            .count();
                        assert_eq!(hits, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn family_ids_round_trip() {
        for fam in Family::all() {
            assert_eq!(fam.id().parse::<Family>().unwrap(), fam);
        }
        assert_eq!(
            "gamma:ii".parse::<Family>().unwrap(),
            Family::Gamma(CaseTag::II)
        );
        assert!(matches!(
            "X9".parse::<Family>(),
            Err(Error::UnknownProposition(_))
        ));
    }

    #[test]
    fn checked_construction() {
        let qd = example(4, 2);
        assert!(matches!(
            prop5_extras(&qd, Family::P5XX, &[0, 0]),
            Err(Error::ConditionViolation { .. }) | Ok(_)
        ));
        let bad = parameter_space(qd.field(), Family::P5M1)
            .into_iter()
            .find(|ps| !conditions_hold(&qd, Family::P5M1, ps))
            .unwrap();
        assert!(matches!(
            prop5_extras(&qd, Family::P5M1, &bad),
            Err(Error::ConditionViolation { .. })
        ));
        assert!(prop5_extras_unchecked(&qd, Family::P5M1, &bad).is_ok());
        assert!(matches!(
            prop5_extras(&qd, Family::A, &[0, 0, 0, 0]),
            Err(Error::UnknownProposition(_))
        ));
    }

    #[test]
    fn candidates_are_quandle_cochains() {
        for (q, b) in [(4, 2), (8, 4), (9, 2), (16, 4)] {
            let qd = example(q, b);
            for n in 2..=4 {
                for c in basis_candidates(&qd, n) {
                    assert_eq!(c.cochain.arity(), n);
                    assert!(is_quandle_cochain(&c.cochain), "{}", c.label);
                }
            }
        }
    }
}
