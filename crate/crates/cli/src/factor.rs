//! Dispatch from a class triple to the closed-form factors that apply to it.

use serde::{Deserialize, Serialize};
use srg_core::classes::OperatorClassSpec;
use srg_core::rates::{
    averagedness_thm41, contraction_thm31, contraction_thm32, contraction_thm33, updated_d61, updated_d62, updated_d63,
    updated_d64, updated_d65, updated_d66, Comparison, PriorConstants,
};
use srg_core::{AveragednessReport, DysParams, RateReport, Role, Theorem};

use crate::error::CliError;
use crate::problem::ClassTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremChoice {
    Thm31,
    Thm32,
    Thm33,
    Thm41,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    Contraction(RateReport),
    Averagedness(AveragednessReport),
}

impl Factor {
    pub fn value(&self) -> f64 {
        match self {
            Factor::Contraction(r) => r.rho,
            Factor::Averagedness(r) => r.theta,
        }
    }

    pub fn theorem(&self) -> Theorem {
        match self {
            Factor::Contraction(r) => r.theorem,
            Factor::Averagedness(r) => r.theorem,
        }
    }

    pub fn role(&self) -> Role {
        match self {
            Factor::Contraction(r) => r.role,
            Factor::Averagedness(r) => r.role,
        }
    }
}

/// One theorem/role combination that was tried.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub theorem: Theorem,
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

enum Failure {
    /// The classes lack a parameter the theorem needs.
    Missing(String),
    /// The parameters exist but violate a stated inequality.
    Core(srg_core::Error),
}

type Attempt = Result<Factor, Failure>;

fn need(v: Option<f64>, what: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Missing(what.to_string()))
}

fn monotone(spec: &OperatorClassSpec) -> bool {
    spec.has_monotone() || spec.strong_monotonicity().is_some()
}

fn ensure(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Missing(what.to_string()))
    }
}

fn split(classes: &ClassTriple, role: Role) -> (&OperatorClassSpec, &OperatorClassSpec, char, char) {
    match role {
        Role::A => (&classes.a, &classes.b, 'A', 'B'),
        Role::B => (&classes.b, &classes.a, 'B', 'A'),
    }
}

fn attempt(theorem: Theorem, role: Role, classes: &ClassTriple, p: &DysParams) -> Attempt {
    let (x, y, xn, yn) = split(classes, role);
    let c = &classes.c;
    let core = |e| Failure::Core(e);
    if theorem != Theorem::Thm41 {
        ensure(p.s == 0.0, "s = 0")?;
    }
    match theorem {
        Theorem::Thm31 => {
            let mu = need(x.strong_monotonicity(), &format!("{xn} strongly monotone"))?;
            let lip = need(x.lipschitz(), &format!("{xn} Lipschitz"))?;
            ensure(monotone(y), &format!("{yn} monotone"))?;
            let beta = need(c.cocoercivity(), "C cocoercive")?;
            contraction_thm31(p.alpha, p.lambda, beta, mu, lip, role).map(Factor::Contraction).map_err(core)
        }
        Theorem::Thm32 => {
            let lip = need(x.lipschitz(), &format!("{xn} Lipschitz"))?;
            ensure(monotone(x), &format!("{xn} monotone"))?;
            let mu = need(y.strong_monotonicity(), &format!("{yn} strongly monotone"))?;
            let beta = need(c.cocoercivity(), "C cocoercive")?;
            contraction_thm32(p.alpha, p.lambda, beta, lip, mu, role).map(Factor::Contraction).map_err(core)
        }
        Theorem::Thm33 => {
            let lip = need(x.lipschitz(), &format!("{xn} Lipschitz"))?;
            ensure(monotone(x), &format!("{xn} monotone"))?;
            ensure(monotone(y), &format!("{yn} monotone"))?;
            let beta = need(c.cocoercivity(), "C cocoercive")?;
            let mu_c = need(c.strong_monotonicity(), "C strongly monotone")?;
            contraction_thm33(p.alpha, p.lambda, beta, lip, mu_c, role).map(Factor::Contraction).map_err(core)
        }
        Theorem::Thm41 => {
            let mu = need(x.strong_monotonicity(), &format!("{xn} strongly monotone"))?;
            ensure(monotone(y), &format!("{yn} monotone"))?;
            ensure(monotone(c), "C monotone")?;
            let lip_c = need(c.lipschitz(), "C Lipschitz")?;
            ensure(p.lambda == 1.0, "lambda = 1")?;
            averagedness_thm41(p.alpha, mu, lip_c, role).map(Factor::Averagedness).map_err(core)
        }
        _ => unreachable!("prior factors are not dispatched here"),
    }
}

fn theorems_for(choice: TheoremChoice, classes: &ClassTriple) -> Vec<Theorem> {
    match choice {
        TheoremChoice::Thm31 => vec![Theorem::Thm31],
        TheoremChoice::Thm32 => vec![Theorem::Thm32],
        TheoremChoice::Thm33 => vec![Theorem::Thm33],
        TheoremChoice::Thm41 => vec![Theorem::Thm41],
        // Contraction needs a cocoercive C; otherwise only averagedness can apply.
        TheoremChoice::Auto if classes.c.cocoercivity().is_some() => {
            vec![Theorem::Thm31, Theorem::Thm32, Theorem::Thm33]
        }
        TheoremChoice::Auto => vec![Theorem::Thm41],
    }
}

/// Evaluate every applicable theorem/role and keep the smallest factor.
pub fn select_factor(
    choice: TheoremChoice,
    classes: &ClassTriple,
    p: &DysParams,
) -> Result<(Factor, Vec<Candidate>), CliError> {
    let mut best: Option<Factor> = None;
    let mut candidates = Vec::new();
    let mut first_violation: Option<srg_core::Error> = None;
    let mut missing = Vec::new();
    for theorem in theorems_for(choice, classes) {
        for role in [Role::A, Role::B] {
            let outcome = attempt(theorem, role, classes, p);
            let (value, error) = match &outcome {
                Ok(f) => (Some(f.value()), None),
                Err(Failure::Missing(m)) => (None, Some(format!("needs {m}"))),
                Err(Failure::Core(e)) => (None, Some(e.to_string())),
            };
            candidates.push(Candidate { theorem, role, value, error });
            match outcome {
                Ok(f) => {
                    if best.as_ref().is_none_or(|b| f.value() < b.value()) {
                        best = Some(f);
                    }
                }
                Err(Failure::Core(e)) => {
                    first_violation.get_or_insert(e);
                }
                Err(Failure::Missing(m)) => {
                    missing.push(format!("{} ({}): needs {m}", theorem.label(), role_name(role)))
                }
            }
        }
    }
    match (best, first_violation) {
        (Some(f), _) => Ok((f, candidates)),
        (None, Some(e)) => Err(CliError::Core(e)),
        (None, None) => Err(CliError::NotApplicable(format!("no factor applies: {}", missing.join("; ")))),
    }
}

fn role_name(role: Role) -> &'static str {
    match role {
        Role::A => "role A",
        Role::B => "role B",
    }
}

/// A pairing of a new factor with the updated prior factor it improves on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedPairing {
    pub new: Theorem,
    pub role: Role,
    pub prior: Theorem,
    pub reason: String,
}

type Pair = (Theorem, Role, Theorem);

const PAIRINGS: [Pair; 6] = [
    (Theorem::Thm31, Role::B, Theorem::D61),
    (Theorem::Thm31, Role::A, Theorem::D62),
    (Theorem::Thm32, Role::B, Theorem::D63),
    (Theorem::Thm32, Role::A, Theorem::D64),
    (Theorem::Thm33, Role::A, Theorem::D65),
    (Theorem::Thm33, Role::B, Theorem::D66),
];

/// Every pairing whose class parameters are present, with `ε`, `η` at their defaults.
pub fn compare_classes(
    classes: &ClassTriple,
    p: &DysParams,
) -> Result<(PriorConstants, Vec<Comparison>, Vec<SkippedPairing>), CliError> {
    let beta = classes
        .c
        .cocoercivity()
        .ok_or_else(|| CliError::NotApplicable("comparison needs a cocoercive C (beta_C)".into()))?;
    let k = PriorConstants::midpoints(p.alpha, beta)?;
    let (a, b, c) = (&classes.a, &classes.b, &classes.c);
    let (mu_a, lip_a, mu_b, lip_b, mu_c) =
        (a.strong_monotonicity(), a.lipschitz(), b.strong_monotonicity(), b.lipschitz(), c.strong_monotonicity());
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (new, role, prior) in PAIRINGS {
        let (x, y) = match (new, role) {
            (Theorem::Thm31, Role::B) => (mu_b, lip_b),
            (Theorem::Thm31, Role::A) => (mu_a, lip_a),
            (Theorem::Thm32, Role::B) => (mu_a, lip_b),
            (Theorem::Thm32, Role::A) => (mu_b, lip_a),
            (Theorem::Thm33, Role::A) => (mu_c, lip_a),
            _ => (mu_c, lip_b),
        };
        let (Some(mu), Some(lip)) = (x, y) else {
            skipped.push(SkippedPairing { new, role, prior, reason: "class parameters absent".into() });
            continue;
        };
        let (al, la) = (p.alpha, p.lambda);
        let pair = match prior {
            Theorem::D61 => contraction_thm31(al, la, beta, mu, lip, role)
                .and_then(|n| Ok((n, updated_d61(al, la, beta, mu, lip, Some(k))?))),
            Theorem::D62 => contraction_thm31(al, la, beta, mu, lip, role)
                .and_then(|n| Ok((n, updated_d62(al, la, beta, mu, lip, Some(k))?))),
            Theorem::D63 => contraction_thm32(al, la, beta, lip, mu, role)
                .and_then(|n| Ok((n, updated_d63(al, la, beta, mu, lip, Some(k))?))),
            Theorem::D64 => contraction_thm32(al, la, beta, lip, mu, role)
                .and_then(|n| Ok((n, updated_d64(al, la, beta, mu, lip, Some(k))?))),
            Theorem::D65 => contraction_thm33(al, la, beta, lip, mu, role)
                .and_then(|n| Ok((n, updated_d65(al, la, beta, mu, lip, Some(k))?))),
            _ => contraction_thm33(al, la, beta, lip, mu, role)
                .and_then(|n| Ok((n, updated_d66(al, la, beta, mu, lip, Some(k))?))),
        };
        match pair {
            Ok((n, old)) => rows.push(Comparison { margin: old.rho - n.rho, new: n, prior: old }),
            Err(e) => skipped.push(SkippedPairing { new, role, prior, reason: e.to_string() }),
        }
    }
    if rows.is_empty() {
        let reasons: Vec<String> =
            skipped.iter().map(|s| format!("{} vs {}: {}", s.new.label(), s.prior.label(), s.reason)).collect();
        return Err(CliError::NotApplicable(format!("no comparison applies: {}", reasons.join("; "))));
    }
    Ok((k, rows, skipped))
}
