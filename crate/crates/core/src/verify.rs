//! Proposition suites, basis-theorem comparisons and whole-field sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{delta_poly, UCochain};
use crate::cohomology::{h_dim, h_dim_with, independent_mod_coboundaries, HDimOptions};
use crate::error::{Error, Result};
use crate::format::{cochain_to_string, element_to_string};
use crate::generators::{
    admissible_parameters, basis_candidates, build_unchecked, conditions_hold, label,
    parameter_space, Family,
};
use crate::gfq::{Elem, FieldSpec};
use crate::quandle::AlexanderFQuandle;
use crate::report::{
    BasisCheck, Environment, InstanceOutcome, Status, VerificationReport, Witness,
};

/// Default sweep limits; larger runs need `allow_big`.
pub const SWEEP_MAX_Q: u32 = 16;
pub const SWEEP_MAX_N: usize = 4;

/// First U-point, in lexicographic order, where `phi` is nonzero.
pub fn nonzero_point(phi: &UCochain) -> Option<(Vec<Elem>, Elem)> {
    if phi.is_zero() {
        return None;
    }
    let f = phi.field();
    let els: Vec<Elem> = f.elements().collect();
    let mut idx = vec![0usize; phi.arity()];
    loop {
        let point: Vec<Elem> = idx.iter().map(|&i| els[i]).collect();
        let v = phi.eval_u(&point).expect("arity matches");
        if !v.is_zero() {
            return Some((point, v));
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < els.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn nonzero_delta_witness(phi: &UCochain, delta: &UCochain) -> Witness {
    let f = phi.field();
    let (point, value) = nonzero_point(delta).expect("delta is nonzero");
    Witness::NonzeroDelta {
        cochain: cochain_to_string(phi),
        point: point.iter().map(|&e| element_to_string(f, e)).collect(),
        value: element_to_string(f, value),
    }
}

fn cocycle_outcome(
    quandle: &AlexanderFQuandle,
    name: String,
    phi: &UCochain,
) -> Result<InstanceOutcome> {
    let d = delta_poly(quandle, phi)?;
    Ok(if d.is_zero() {
        InstanceOutcome::pass(name)
    } else {
        InstanceOutcome::fail(name, nonzero_delta_witness(phi, &d))
    })
}

/// Builds every admissible member of `family` and checks `δ = 0`.
pub fn verify_proposition(
    quandle: &AlexanderFQuandle,
    family: Family,
) -> Result<VerificationReport> {
    let f = quandle.field();
    let params = admissible_parameters(quandle, family);
    let outcomes: Vec<std::result::Result<InstanceOutcome, String>> = params
        .par_iter()
        .map(|ps| {
            let name = label(f, family, ps);
            match build_unchecked(quandle, family, ps) {
                Ok(phi) => cocycle_outcome(quandle, name, &phi).map_err(|e| e.to_string()),
                Err(Error::CaseIICoefficientSingular) => {
                    Err(format!("{name}: singular coefficient, not built"))
                }
                Err(e) => Err(format!("{name}: {e}")),
            }
        })
        .collect();
    let mut report = VerificationReport::new(
        format!("proposition {}", family.id()),
        Environment::of(quandle),
    );
    for o in outcomes {
        match o {
            Ok(outcome) => report.push(outcome),
            Err(note) => report.notes.push(note),
        }
    }
    if report.instances.is_empty() {
        report
            .notes
            .push("no parameters satisfy the hypothesis".into());
    }
    Ok(report)
}

pub fn verify_proposition_id(quandle: &AlexanderFQuandle, id: &str) -> Result<VerificationReport> {
    verify_proposition(quandle, id.parse()?)
}

/// Parameters violating the hypothesis whose unchecked member is not a
/// cocycle. Evidence that the hypothesis matters, not an assertion.
pub fn violation_evidence(quandle: &AlexanderFQuandle, family: Family) -> Vec<String> {
    let f = quandle.field();
    parameter_space(f, family)
        .into_par_iter()
        .filter(|ps| !conditions_hold(quandle, family, ps))
        .filter_map(|ps| {
            let phi = build_unchecked(quandle, family, &ps).ok()?;
            let d = delta_poly(quandle, &phi).ok()?;
            (!d.is_zero()).then(|| label(f, family, &ps))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasisOptions {
    /// Check cocycle and independence only, skipping the full `dim H^n`.
    pub candidates_only: bool,
    pub allow_big: bool,
}

/// Checks the candidate set for `H^n` (`n ∈ {2,3,4}`): every candidate is
/// a cocycle, they are independent modulo coboundaries, and their number
/// equals `dim H^n`. For `n ≥ 3` the run is reported as skipped when
/// `dim H^2 ≠ 0` or `ω = -1`; the checks still run and are recorded.
pub fn verify_basis_theorem(
    quandle: &AlexanderFQuandle,
    n: usize,
    opts: BasisOptions,
) -> Result<VerificationReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnknownProposition(format!(
            "basis theorem for n = {n}"
        )));
    }
    let f = quandle.field();
    let mut report = VerificationReport::new(format!("basis H^{n}"), Environment::of(quandle));
    let mut check = BasisCheck {
        n,
        ..BasisCheck::default()
    };

    let mut hypothesis_ok = true;
    if n >= 3 {
        let h2 = h_dim(quandle, 2, false)?.dim_h;
        check.dim_h2 = Some(h2);
        if h2 != 0 {
            hypothesis_ok = false;
            report
                .notes
                .push(format!("skipped(hypothesis): dim H^2 = {h2}"));
        }
        if quandle.omega() == f.neg(Elem::ONE) {
            hypothesis_ok = false;
            report.notes.push("skipped(hypothesis): omega = -1".into());
        }
    }

    let candidates = basis_candidates(quandle, n);
    check.candidates = candidates.len();
    for c in &candidates {
        if c.reduced {
            report.notes.push(format!(
                "{}: an exponent reached q and was reduced",
                c.label
            ));
        }
    }
    let outcomes = candidates
        .par_iter()
        .map(|c| cocycle_outcome(quandle, c.label.clone(), &c.cochain))
        .collect::<Result<Vec<_>>>()?;
    check.all_cocycles = outcomes.iter().all(|o| o.ok);
    for o in outcomes {
        report.push(o);
    }

    let cochains: Vec<UCochain> = candidates.iter().map(|c| c.cochain.clone()).collect();
    check.independent_mod_coboundaries =
        check.all_cocycles && independent_mod_coboundaries(quandle, &cochains)?;

    let mut mismatch = check.all_cocycles && !check.independent_mod_coboundaries;
    if mismatch {
        report
            .notes
            .push("candidates are dependent modulo coboundaries".into());
    }
    if !opts.candidates_only {
        let h = h_dim_with(
            quandle,
            n,
            &HDimOptions {
                allow_big: opts.allow_big,
                representatives: false,
                ..HDimOptions::default()
            },
        )?;
        check.dim_h = Some(h.dim_h);
        if h.dim_h != candidates.len() {
            mismatch = true;
            report.instances.push(InstanceOutcome::fail(
                format!("|candidates| = dim H^{n}"),
                Witness::Dimensions {
                    expected: h.dim_h,
                    got: candidates.len(),
                },
            ));
        } else {
            report
                .instances
                .push(InstanceOutcome::pass(format!("|candidates| = dim H^{n}")));
        }
    }
    report.basis = Some(check);
    // cocycle failures are implementation faults; everything else is a finding
    let cocycle_failure = report
        .instances
        .iter()
        .any(|o| !o.ok && !o.label.starts_with('|'));
    report.status = if cocycle_failure {
        Status::Fail
    } else if !hypothesis_ok {
        Status::Skipped
    } else if mismatch {
        Status::Mismatch
    } else {
        Status::Pass
    };
    Ok(report)
}

/// All `(ω, β)` accepted by the quandle constructor, in index order.
pub fn admissible_pairs(field: &FieldSpec) -> Vec<AlexanderFQuandle> {
    field
        .elements()
        .flat_map(|w| field.elements().map(move |b| (w, b)))
        .filter_map(|(w, b)| AlexanderFQuandle::new(field, w, b).ok())
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub mismatch: usize,
    pub skipped: usize,
    pub total: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> SweepSummary {
    let mut s = SweepSummary {
        total: reports.len(),
        ..SweepSummary::default()
    };
    for r in reports {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Mismatch => s.mismatch += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

/// Runs the basis-theorem check for each admissible `(ω, β)` and each `n`.
/// Reports come back in `(ω, β, n)` input order.
pub fn sweep(
    field: &FieldSpec,
    ns: &[usize],
    opts: BasisOptions,
) -> Result<Vec<VerificationReport>> {
    let max_n = ns.iter().copied().max().unwrap_or(0);
    if !opts.allow_big && (field.q() > SWEEP_MAX_Q || max_n > SWEEP_MAX_N) {
        return Err(Error::ResourceLimit {
            estimate_bytes: crate::cohomology::estimate_bytes(field, max_n),
            ceiling_bytes: crate::cohomology::MEMORY_CEILING,
        });
    }
    let jobs: Vec<(AlexanderFQuandle, usize)> = admissible_pairs(field)
        .into_iter()
        .flat_map(|qd| ns.iter().map(move |&n| (qd.clone(), n)))
        .collect();
    jobs.par_iter()
        .map(|(qd, n)| verify_basis_theorem(qd, *n, opts))
        .collect()
}
