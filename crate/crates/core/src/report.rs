//! Structured verification outcomes, serialized as JSON by the CLI.

use serde::Serialize;

use crate::format::element_to_string;
use crate::quandle::AlexanderFQuandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Mismatch,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Environment {
    pub field: String,
    pub omega: String,
    pub beta: String,
}

impl Environment {
    pub fn of(quandle: &AlexanderFQuandle) -> Environment {
        let f = quandle.field();
        Environment {
            field: crate::format::field_to_string(f),
            omega: element_to_string(f, quandle.omega()),
            beta: element_to_string(f, quandle.beta()),
        }
    }
}

/// Concrete evidence attached to a failed instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A tuple of field elements violating an identity.
    Tuple { values: Vec<String> },
    /// A cochain together with a U-point where its coboundary is nonzero.
    NonzeroDelta {
        cochain: String,
        point: Vec<String>,
        value: String,
    },
    /// Two dimensions that were expected to agree.
    Dimensions { expected: usize, got: usize },
    /// A cochain that failed a structural check.
    Cochain { cochain: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub label: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl InstanceOutcome {
    pub fn pass(label: impl Into<String>) -> Self {
        InstanceOutcome {
            label: label.into(),
            ok: true,
            witness: None,
        }
    }

    pub fn fail(label: impl Into<String>, witness: Witness) -> Self {
        InstanceOutcome {
            label: label.into(),
            ok: false,
            witness: Some(witness),
        }
    }
}

/// Dimension bookkeeping for basis-theorem checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BasisCheck {
    pub n: usize,
    pub candidates: usize,
    pub all_cocycles: bool,
    pub independent_mod_coboundaries: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_h2: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub status: Status,
    pub environment: Environment,
    pub instances: Vec<InstanceOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, environment: Environment) -> Self {
        VerificationReport {
            subject: subject.into(),
            status: Status::Pass,
            environment,
            instances: Vec::new(),
            basis: None,
            notes: Vec::new(),
        }
    }

    /// Appends an instance; a failed instance turns the report into `Fail`.
    pub fn push(&mut self, outcome: InstanceOutcome) {
        if !outcome.ok {
            self.status = Status::Fail;
        }
        self.instances.push(outcome);
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceOutcome> {
        self.instances.iter().filter(|i| !i.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
