//! The Alexander f-quandle `x * y = ωx + βy`, `f(x) = (ω+β)x` on F_q.

use crate::error::{Error, Result};
use crate::format::element_to_string;
use crate::gfq::{Elem, FieldElement, FieldSpec};
use crate::report::{Environment, InstanceOutcome, VerificationReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderFQuandle {
    field: FieldSpec,
    omega: Elem,
    beta: Elem,
    scale: Elem,
}

impl AlexanderFQuandle {
    /// Rejects `ω ∈ {0, 1}` and `β = 0`. `ω = 0` would leave `z * y = f(x)`
    /// without a unique solution. `ω + β = 0` is allowed; `f` is then zero.
    pub fn new(field: &FieldSpec, omega: Elem, beta: Elem) -> Result<AlexanderFQuandle> {
        if omega.index() >= field.order() || beta.index() >= field.order() {
            return Err(Error::FieldMismatch);
        }
        if omega.is_zero() {
            return Err(Error::InvalidQuandle(
                "omega = 0: x*y is not left-invertible, so z*y = f(x) has no unique solution"
                    .into(),
            ));
        }
        if omega == Elem::ONE {
            return Err(Error::InvalidQuandle("omega = 1 is excluded".into()));
        }
        if beta.is_zero() {
            return Err(Error::InvalidQuandle("beta must be non-zero".into()));
        }
        Ok(AlexanderFQuandle {
            field: field.clone(),
            omega,
            beta,
            scale: field.add(omega, beta),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// `ω + β`, the scalar of the structure map `f`.
    pub fn omega_plus_beta(&self) -> Elem {
        self.scale
    }

    pub fn star(&self, x: Elem, y: Elem) -> Elem {
        let f = &self.field;
        f.add(f.mul(self.omega, x), f.mul(self.beta, y))
    }

    pub fn f_map(&self, x: Elem) -> Elem {
        self.field.mul(self.scale, x)
    }

    /// The unique `z` with `z * y = f(x)`: `z = ω⁻¹(f(x) − βy)`.
    pub fn solve_left(&self, x: Elem, y: Elem) -> Elem {
        let f = &self.field;
        let omega_inv = f.inv(self.omega).expect("omega is non-zero");
        f.mul(omega_inv, f.sub(self.f_map(x), f.mul(self.beta, y)))
    }

    fn check(&self, a: &FieldElement) -> Result<Elem> {
        if a.field() == &self.field {
            Ok(a.value())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn star_checked(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.field.bind(self.star(self.check(x)?, self.check(y)?)))
    }

    pub fn f_map_checked(&self, x: &FieldElement) -> Result<FieldElement> {
        Ok(self.field.bind(self.f_map(self.check(x)?)))
    }

    pub fn solve_left_checked(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self
            .field
            .bind(self.solve_left(self.check(x)?, self.check(y)?)))
    }

    /// Exhaustive check of `x*x = f(x)`, unique left solutions, and
    /// `(x*y)*f(z) = (x*z)*(y*z)`.
    pub fn verify_axioms(&self) -> VerificationReport {
        let f = &self.field;
        let els: Vec<Elem> = f.elements().collect();
        let tuple = |v: &[Elem]| Witness::Tuple {
            values: v.iter().map(|&e| element_to_string(f, e)).collect(),
        };
        let mut report = VerificationReport::new("axioms", Environment::of(self));

        let idempotent = els.iter().find(|&&x| self.star(x, x) != self.f_map(x));
        report.push(match idempotent {
            None => InstanceOutcome::pass("x*x = f(x)"),
            Some(&x) => InstanceOutcome::fail("x*x = f(x)", tuple(&[x])),
        });

        // For each (x, y), count the z with z*y = f(x); it must be exactly one.
        let mut unique_violation = None;
        'outer: for &x in &els {
            for &y in &els {
                let hits = els
                    .iter()
                    .filter(|&&z| self.star(z, y) == self.f_map(x))
                    .count();
                if hits != 1 || self.star(self.solve_left(x, y), y) != self.f_map(x) {
                    unique_violation = Some([x, y]);
                    break 'outer;
                }
            }
        }
        report.push(match unique_violation {
            None => InstanceOutcome::pass("unique z with z*y = f(x)"),
            Some(v) => InstanceOutcome::fail("unique z with z*y = f(x)", tuple(&v)),
        });

        let mut distributive_violation = None;
        'dist: for &x in &els {
            for &y in &els {
                for &z in &els {
                    let lhs = self.star(self.star(x, y), self.f_map(z));
                    let rhs = self.star(self.star(x, z), self.star(y, z));
                    if lhs != rhs {
                        distributive_violation = Some([x, y, z]);
                        break 'dist;
                    }
                }
            }
        }
        report.push(match distributive_violation {
            None => InstanceOutcome::pass("(x*y)*f(z) = (x*z)*(y*z)"),
            Some(v) => InstanceOutcome::fail("(x*y)*f(z) = (x*z)*(y*z)", tuple(&v)),
        });
        report
    }
}
