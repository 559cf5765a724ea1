//! Job orchestration: runs one command against a parsed config and produces a
//! deterministic JSON report plus a process exit code.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::JobConfig;
use crate::criteria::{
    kernel_of_x, prime_decide, semiprime_decide, InvariantCone, VerdictValue,
};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::hopf::{BElement, BasisLabel, Bosonization, TensorElement};
use crate::qas::{run_checks, CheckOutcome, ModuleAction, QuantumAffineSpace};
use crate::smash::{verify_smash_identities, SmashAlgebra, SmashElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN_STRICT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    HopfCheck,
    Invariants,
    Semiprime,
    Prime,
    SmashEval,
}

impl Command {
    pub fn parse(s: &str) -> Option<Command> {
        Some(match s {
            "validate" => Command::Validate,
            "hopf-check" => Command::HopfCheck,
            "invariants" => Command::Invariants,
            "semiprime" => Command::Semiprime,
            "prime" => Command::Prime,
            "smash-eval" => Command::SmashEval,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::HopfCheck => "hopf-check",
            Command::Invariants => "invariants",
            Command::Semiprime => "semiprime",
            Command::Prime => "prime",
            Command::SmashEval => "smash-eval",
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub exit: i32,
    pub summary: String,
}

fn checks_json(checks: &[CheckOutcome]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "check": c.check,
                    "passed": c.passed,
                    "witness": c.witness,
                })
            })
            .collect(),
    )
}

fn cone_json(cone: &InvariantCone) -> Value {
    match cone {
        InvariantCone::Cone { moduli } => json!({
            "kind": "cone",
            "moduli": moduli,
            "generators": cone.generators(),
        }),
        InvariantCone::Capped { cap, bases } => json!({
            "kind": "capped",
            "cap": cap,
            "dimensions": bases.iter().map(|b| b.len()).collect::<Vec<_>>(),
        }),
    }
}

/// Coassociativity, counit laws, and multiplicativity of the coproduct,
/// checked exactly on the PBW basis (pairs are subsampled past a size cap).
fn hopf_axiom_checks(boson: &Bosonization) -> Result<Vec<CheckOutcome>> {
    let basis = boson.basis();
    let mut checks = Vec::new();

    type Triple = BTreeMap<(BasisLabel, BasisLabel, BasisLabel), CycNumber>;

    let mut coassoc_witness = None;
    let mut counit_witness = None;
    for label in &basis {
        let b = BElement::from_term(label.clone(), CycNumber::one());
        let delta = boson.comultiply(&b)?;

        let mut left: Triple = BTreeMap::new();
        let mut right: Triple = BTreeMap::new();
        for ((b1, b2), c) in delta.terms() {
            let d1 = boson.comultiply(&BElement::from_term(b1.clone(), CycNumber::one()))?;
            for ((a, bb), c1) in d1.terms() {
                let k = (a.clone(), bb.clone(), b2.clone());
                let e = left.entry(k).or_insert_with(CycNumber::zero);
                *e = e.add(&c.mul(c1));
            }
            let d2 = boson.comultiply(&BElement::from_term(b2.clone(), CycNumber::one()))?;
            for ((bb, cc), c2) in d2.terms() {
                let k = (b1.clone(), bb.clone(), cc.clone());
                let e = right.entry(k).or_insert_with(CycNumber::zero);
                *e = e.add(&c.mul(c2));
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        if left != right && coassoc_witness.is_none() {
            coassoc_witness = Some(format!("basis label {label:?}"));
        }

        let mut eps_id = BElement::zero();
        let mut id_eps = BElement::zero();
        for ((b1, b2), c) in delta.terms() {
            let e1 = boson.counit(&BElement::from_term(b1.clone(), CycNumber::one()));
            eps_id.add_term(b2.clone(), c.mul(&e1));
            let e2 = boson.counit(&BElement::from_term(b2.clone(), CycNumber::one()));
            id_eps.add_term(b1.clone(), c.mul(&e2));
        }
        let same = |lhs: &BElement| {
            let mut diff = lhs.clone();
            diff = diff.sub(&b);
            diff.is_zero()
        };
        if (!same(&eps_id) || !same(&id_eps)) && counit_witness.is_none() {
            counit_witness = Some(format!("basis label {label:?}"));
        }
    }
    checks.push(CheckOutcome {
        check: "coassociativity",
        passed: coassoc_witness.is_none(),
        witness: coassoc_witness,
    });
    checks.push(CheckOutcome {
        check: "counit",
        passed: counit_witness.is_none(),
        witness: counit_witness,
    });

    // Multiplicativity of the coproduct; all pairs for small dimensions, a
    // deterministic LCG subsample otherwise.
    let dim = basis.len();
    let pairs: Vec<(usize, usize)> = if dim * dim <= 4096 {
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
    } else {
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut out = Vec::with_capacity(512);
        for _ in 0..512 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (state >> 33) as usize % dim;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % dim;
            out.push((i, j));
        }
        out
    };
    let mut mult_witness = None;
    for (i, j) in pairs {
        let a = BElement::from_term(basis[i].clone(), CycNumber::one());
        let b = BElement::from_term(basis[j].clone(), CycNumber::one());
        let lhs = boson.comultiply(&boson.multiply(&a, &b)?)?;
        let rhs = boson.tensor_mul(&boson.comultiply(&a)?, &boson.comultiply(&b)?)?;
        if !tensor_eq(&lhs, &rhs) {
            mult_witness = Some(format!("pair ({:?}, {:?})", basis[i], basis[j]));
            break;
        }
    }
    checks.push(CheckOutcome {
        check: "coproduct_multiplicative",
        passed: mult_witness.is_none(),
        witness: mult_witness,
    });
    Ok(checks)
}

fn tensor_eq(a: &TensorElement, b: &TensorElement) -> bool {
    let mut diff: BTreeMap<(BasisLabel, BasisLabel), CycNumber> = BTreeMap::new();
    for (k, c) in a.terms() {
        let e = diff.entry(k.clone()).or_insert_with(CycNumber::zero);
        *e = e.add(c);
    }
    for (k, c) in b.terms() {
        let e = diff.entry(k.clone()).or_insert_with(CycNumber::zero);
        *e = e.sub(c);
    }
    diff.values().all(|c| c.is_zero())
}

fn smash_terms_json(e: &SmashElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(label, c)| {
                json!({
                    "u": label.u,
                    "x": label.b.alpha,
                    "g": label.b.g,
                    "c": c.to_display(),
                })
            })
            .collect(),
    )
}

fn decision_summary(kind: &str, d: &crate::criteria::Decision) -> String {
    let verdict = match d.verdict {
        VerdictValue::Yes => "Yes",
        VerdictValue::No => "No",
        VerdictValue::Unknown => "Unknown",
    };
    let mut s = format!("{kind}: {verdict}");
    if let Some(ord) = &d.ordering {
        s.push_str(&format!(" (ordering {ord:?})"));
    }
    if let Some(cov) = &d.coverage {
        s.push_str(&format!(
            " (coverage {} of {})",
            cov.subgroup_order, cov.group_order
        ));
    }
    s
}

fn build_action(job: &JobConfig) -> Result<(ModuleAction, Vec<CheckOutcome>)> {
    let boson = Bosonization::new(job.datum.clone())?;
    let space = QuantumAffineSpace::new(job.p.clone());
    let check_cap = job.degree_cap.min(8);
    let checks = run_checks(&boson, &space, &job.spec, check_cap)?;
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(Error::ActionCheck {
            check: bad.check.to_string(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    let action = ModuleAction::new(boson, space, job.spec.clone(), check_cap)?;
    Ok((action, checks))
}

pub fn run(
    command: Command,
    config_text: &str,
    degree_cap_override: Option<u32>,
    strict_flag: bool,
) -> Outcome {
    let started = Instant::now();
    let digest = format!("{:x}", Sha256::digest(config_text.as_bytes()));
    let mut base = serde_json::Map::new();
    base.insert("command".into(), json!(command.name()));
    base.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    base.insert("input_digest".into(), json!(digest));

    let fail = |mut base: serde_json::Map<String, Value>, err: &Error, started: Instant| {
        base.insert("error".into(), json!(err.to_string()));
        base.insert("timing_ms".into(), json!(started.elapsed().as_millis() as u64));
        Outcome {
            report: Value::Object(base),
            exit: EXIT_INVALID,
            summary: format!("error: {err}"),
        }
    };

    let job = match JobConfig::parse(config_text) {
        Ok(j) => j,
        Err(e) => return fail(base, &e, started),
    };
    let degree_cap = degree_cap_override.unwrap_or(job.degree_cap);
    let strict = strict_flag || job.strict;
    base.insert("degree_cap".into(), json!(degree_cap));

    let result: Result<(Value, i32, String)> = (|| match command {
        Command::Validate => {
            let boson = Bosonization::new(job.datum.clone())?;
            let space = QuantumAffineSpace::new(job.p.clone());
            let checks = run_checks(&boson, &space, &job.spec, degree_cap.min(8))?;
            let ok = checks.iter().all(|c| c.passed);
            let payload = json!({
                "valid": ok,
                "dimension": boson.dim(),
                "checks": checks_json(&checks),
            });
            let summary = if ok {
                format!("valid: datum and action pass all checks (dim {})", boson.dim())
            } else {
                let bad: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.check).collect();
                format!("invalid: failed checks {bad:?}")
            };
            Ok((payload, if ok { EXIT_OK } else { EXIT_INVALID }, summary))
        }
        Command::HopfCheck => {
            let boson = Bosonization::new(job.datum.clone())?;
            if boson.dim() > 4096 {
                return Err(Error::SizeLimit {
                    dim: boson.dim(),
                    limit: 4096,
                });
            }
            let checks = hopf_axiom_checks(&boson)?;
            let ok = checks.iter().all(|c| c.passed);
            let payload = json!({
                "pass": ok,
                "dimension": boson.dim(),
                "checks": checks_json(&checks),
            });
            let summary = if ok {
                format!("hopf-check: all axioms hold on the full basis (dim {})", boson.dim())
            } else {
                "hopf-check: axiom violation found".to_string()
            };
            Ok((payload, if ok { EXIT_OK } else { EXIT_INVALID }, summary))
        }
        Command::Invariants => {
            let (action, _) = build_action(&job)?;
            let mut kernels = Vec::new();
            let mut total = InvariantCone::full(action.n());
            for i in 0..action.theta() {
                let k = kernel_of_x(&action, i, degree_cap)?;
                total = total.intersect(&k, &action)?;
                kernels.push(json!({
                    "x_index": i + 1,
                    "kernel": cone_json(&k),
                }));
            }
            let payload = json!({
                "kernels": kernels,
                "invariants": cone_json(&total),
            });
            let summary = match &total {
                InvariantCone::Cone { moduli } => {
                    format!("invariants: monomial cone with moduli {moduli:?}")
                }
                InvariantCone::Capped { cap, .. } => {
                    format!("invariants: degreewise description up to degree {cap}")
                }
            };
            Ok((payload, EXIT_OK, summary))
        }
        Command::Semiprime | Command::Prime => {
            let (action, _) = build_action(&job)?;
            let decision = if command == Command::Semiprime {
                semiprime_decide(&action, degree_cap)?
            } else {
                prime_decide(&action, degree_cap)?
            };
            let exit = match decision.verdict {
                VerdictValue::Unknown if strict => EXIT_UNKNOWN_STRICT,
                _ => EXIT_OK,
            };
            let summary = decision_summary(command.name(), &decision);
            let payload = json!({ "decision": decision });
            Ok((payload, exit, summary))
        }
        Command::SmashEval => {
            let left = job
                .smash_left
                .as_ref()
                .ok_or_else(|| Error::Config("smash.left: missing".into()))?;
            let right = job
                .smash_right
                .as_ref()
                .ok_or_else(|| Error::Config("smash.right: missing".into()))?;
            let (action, _) = build_action(&job)?;
            let a = job.parse_smash_element(left, "smash.left")?;
            let b = job.parse_smash_element(right, "smash.right")?;
            let algebra = SmashAlgebra::new(action);
            let product = algebra.multiply(&a, &b)?;
            let identities = verify_smash_identities(&algebra, 2.min(degree_cap))?;
            let ok = identities.iter().all(|c| c.passed);
            let payload = json!({
                "left": smash_terms_json(&a),
                "right": smash_terms_json(&b),
                "product": smash_terms_json(&product),
                "identity_checks": checks_json(&identities),
            });
            let summary = format!(
                "smash-eval: product has {} terms; identity suite {}",
                product.terms().count(),
                if ok { "passed" } else { "FAILED" }
            );
            Ok((payload, if ok { EXIT_OK } else { EXIT_INVALID }, summary))
        }
    })();

    match result {
        Ok((payload, exit, summary)) => {
            if let Value::Object(map) = payload {
                for (k, v) in map {
                    base.insert(k, v);
                }
            }
            base.insert("timing_ms".into(), json!(started.elapsed().as_millis() as u64));
            Outcome {
                report: Value::Object(base),
                exit,
                summary,
            }
        }
        Err(e) => fail(base, &e, started),
    }
}
