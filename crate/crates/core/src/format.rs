//! Text and JSON forms of fields, elements and cochains.
//!
//! - field: `p^m/c_m,...,c_0` (highest coefficient first), or `p^m` / `q`
//!   for the built-in modulus
//! - element: `g^k`, or a comma-separated coefficient list, highest first;
//!   shorter lists are padded with leading zeros and integers are taken
//!   mod p
//! - cochain: `c*U1^e1*...*Un^en + ...`, where `c` is an element (wrapped in
//!   parentheses when it contains commas)

use serde::{Deserialize, Serialize};

use crate::cochain::UCochain;
use crate::error::{Error, Result};
use crate::gfq::{is_prime, Elem, FieldSpec};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| parse_err(format!("bad {what}: {s:?}")))
}

pub fn field_to_string(field: &FieldSpec) -> String {
    let coeffs: Vec<String> = field
        .modulus()
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect();
    format!("{}^{}/{}", field.p(), field.m(), coeffs.join(","))
}

pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    let (head, modulus) = match s.split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (s, None),
    };
    let (p, m) = match head.split_once('^') {
        Some((p, m)) => (parse_u32(p, "characteristic")?, parse_u32(m, "degree")?),
        None => {
            let q = parse_u32(head, "field order")?;
            return match modulus {
                None => FieldSpec::with_order(q),
                Some(_) => Err(parse_err("write the order as p^m when giving a modulus")),
            };
        }
    };
    if !is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    match modulus {
        None => FieldSpec::with_order(p.checked_pow(m).ok_or(Error::FieldTooLarge(u64::MAX))?),
        Some(list) => {
            let mut coeffs = list
                .split(',')
                .map(|c| parse_u32(c, "modulus coefficient"))
                .collect::<Result<Vec<u32>>>()?;
            coeffs.reverse();
            FieldSpec::new(p, m, &coeffs)
        }
    }
}

pub fn element_to_string(field: &FieldSpec, a: Elem) -> String {
    let c: Vec<String> = field
        .coeffs(a)
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect();
    c.join(",")
}

pub fn parse_element(field: &FieldSpec, s: &str) -> Result<Elem> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix("g^") {
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad power: {s:?}")))?;
        return Ok(field.gen_pow(k));
    }
    if s == "g" {
        return Ok(field.primitive_element());
    }
    let ints = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| parse_err(format!("bad element: {s:?}")))
        })
        .collect::<Result<Vec<i64>>>()?;
    element_from_ints(field, &ints)
}

/// Element from a highest-first integer list, each entry reduced mod p.
pub fn element_from_ints(field: &FieldSpec, ints: &[i64]) -> Result<Elem> {
    if ints.len() > field.m() as usize {
        return Err(Error::DimensionMismatch {
            expected: field.m() as usize,
            got: ints.len(),
        });
    }
    let p = field.p() as i64;
    let le: Vec<u32> = ints.iter().rev().map(|c| c.rem_euclid(p) as u32).collect();
    field.from_coeffs(&le)
}

fn coeff_to_string(field: &FieldSpec, c: Elem) -> String {
    let mut coeffs = field.coeffs(c);
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    let s = coeffs
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if s.contains(',') {
        format!("({s})")
    } else {
        s
    }
}

pub fn cochain_to_string(phi: &UCochain) -> String {
    if phi.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = phi
        .terms()
        .map(|(exps, c)| {
            let mut t = coeff_to_string(phi.field(), c);
            for (i, e) in exps.iter().enumerate() {
                t.push_str(&format!("*U{}^{}", i + 1, e));
            }
            t
        })
        .collect();
    terms.join(" + ")
}

/// Parses cochain text. Missing coefficients mean 1, missing exponents
/// mean 1, absent variables have exponent 0. `arity = None` takes the
/// largest variable index that appears.
pub fn parse_cochain(field: &FieldSpec, arity: Option<usize>, s: &str) -> Result<UCochain> {
    let mut terms: Vec<(Vec<(usize, u64)>, Elem)> = Vec::new();
    let mut max_var = 0;
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(UCochain::zero(field, arity.unwrap_or(1)));
    }
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(parse_err(format!("empty term in {s:?}")));
        }
        let mut coeff = Elem::ONE;
        let mut vars = Vec::new();
        for factor in split_factors(term)? {
            let factor = factor.trim();
            if let Some(rest) = factor.strip_prefix('U') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (
                        i,
                        e.trim()
                            .parse::<u64>()
                            .map_err(|_| parse_err(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (rest, 1),
                };
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad variable {factor:?}")))?;
                if idx == 0 {
                    return Err(parse_err("variables are numbered from U1"));
                }
                max_var = max_var.max(idx);
                vars.push((idx - 1, exp));
            } else {
                let inner = factor
                    .strip_prefix('(')
                    .and_then(|f| f.strip_suffix(')'))
                    .unwrap_or(factor);
                coeff = field.mul(coeff, parse_element(field, inner)?);
            }
        }
        terms.push((vars, coeff));
    }
    let arity = arity.unwrap_or(max_var.max(1));
    if max_var > arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: max_var,
        });
    }
    let mut out = UCochain::zero(field, arity);
    for (vars, c) in terms {
        let mut exps = vec![0u64; arity];
        for (i, e) in vars {
            exps[i] += e;
        }
        out = out.add(&UCochain::monomial(field, arity, &exps, c)?)?;
    }
    Ok(out)
}

/// Splits on `*` outside parentheses.
fn split_factors(term: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(format!("unbalanced parentheses in {term:?}")));
        }
    }
    out.push(&term[start..]);
    Ok(out)
}

/// One monomial in the JSON cochain form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<u64>,
    /// Highest-first coefficient list.
    pub coeff: Vec<i64>,
}

pub fn cochain_to_json_terms(phi: &UCochain) -> Vec<JsonTerm> {
    phi.terms()
        .map(|(exps, c)| JsonTerm {
            exponents: exps.iter().map(|&e| e as u64).collect(),
            coeff: phi
                .field()
                .coeffs(c)
                .iter()
                .rev()
                .map(|&x| x as i64)
                .collect(),
        })
        .collect()
}

pub fn cochain_from_json_terms(
    field: &FieldSpec,
    arity: usize,
    terms: &[JsonTerm],
) -> Result<UCochain> {
    let converted = terms
        .iter()
        .map(|t| Ok((t.exponents.clone(), element_from_ints(field, &t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    UCochain::from_terms(field, arity, converted)
}

pub fn cochain_to_json(phi: &UCochain) -> String {
    serde_json::to_string(&cochain_to_json_terms(phi)).expect("terms serialize")
}

pub fn cochain_from_json(field: &FieldSpec, arity: usize, s: &str) -> Result<UCochain> {
    let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    cochain_from_json_terms(field, arity, &terms)
}
