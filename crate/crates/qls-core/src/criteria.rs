//! Invariant subalgebra chains and the semiprimeness/primeness deciders for
//! smash products over quantum affine spaces. Yes/No verdicts always carry an
//! exact, replayable certificate; exhausted search yields Unknown.

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group_chars::{subgroup_generated, Character};
use crate::linalg::Matrix;
use crate::qas::{monomials_of_degree, ModuleAction, QASElement};

pub const DEFAULT_DEGREE_CAP: u32 = 16;

/// Per-variable congruence constraint on the exponent of a cone monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    /// M | alpha_j; M = 1 is unconstrained.
    Multiple(u64),
    /// alpha_j = 0.
    Absent,
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Multiple(m) => s.serialize_u64(*m),
            Modulus::Absent => s.serialize_str("inf"),
        }
    }
}

impl Modulus {
    pub fn admits(&self, exp: u32) -> bool {
        match self {
            Modulus::Multiple(m) => exp as u64 % m == 0,
            Modulus::Absent => exp == 0,
        }
    }

    fn intersect(&self, other: &Modulus) -> Modulus {
        match (self, other) {
            (Modulus::Absent, _) | (_, Modulus::Absent) => Modulus::Absent,
            (Modulus::Multiple(a), Modulus::Multiple(b)) => {
                Modulus::Multiple(num::integer::lcm(*a, *b))
            }
        }
    }

    /// Every exponent admitted by `self` is admitted by `other`.
    fn refines(&self, other: &Modulus) -> bool {
        match (other, self) {
            (Modulus::Multiple(1), _) => true,
            (_, Modulus::Absent) => true,
            (Modulus::Multiple(m), Modulus::Multiple(d)) => d % m == 0,
            (Modulus::Absent, Modulus::Multiple(_)) => false,
        }
    }
}

/// An invariant subalgebra, either as an exact monomial cone or as per-degree
/// kernel bases up to a cap.
#[derive(Clone, Debug)]
pub enum InvariantCone {
    Cone { moduli: Vec<Modulus> },
    Capped { cap: u32, bases: Vec<Vec<QASElement>> },
}

impl InvariantCone {
    pub fn full(n: usize) -> InvariantCone {
        InvariantCone::Cone {
            moduli: vec![Modulus::Multiple(1); n],
        }
    }

    pub fn contains_monomial(&self, alpha: &[u32]) -> Option<bool> {
        match self {
            InvariantCone::Cone { moduli } => {
                Some(moduli.iter().zip(alpha).all(|(m, &a)| m.admits(a)))
            }
            InvariantCone::Capped { .. } => None,
        }
    }

    /// Multiplicative generators u_j^{M_j} of a monomial cone.
    pub fn generators(&self) -> Option<Vec<Vec<u32>>> {
        let InvariantCone::Cone { moduli } = self else {
            return None;
        };
        let n = moduli.len();
        let mut gens = Vec::new();
        for (j, m) in moduli.iter().enumerate() {
            if let Modulus::Multiple(m) = m {
                let mut alpha = vec![0; n];
                alpha[j] = *m as u32;
                gens.push(alpha);
            }
        }
        Some(gens)
    }

    pub fn intersect(&self, other: &InvariantCone, action: &ModuleAction) -> Result<InvariantCone> {
        match (self, other) {
            (InvariantCone::Cone { moduli: a }, InvariantCone::Cone { moduli: b }) => {
                Ok(InvariantCone::Cone {
                    moduli: a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect(),
                })
            }
            (InvariantCone::Cone { moduli }, InvariantCone::Capped { cap, bases })
            | (InvariantCone::Capped { cap, bases }, InvariantCone::Cone { moduli }) => {
                let mut out = Vec::with_capacity(bases.len());
                for basis in bases {
                    out.push(intersect_span_with_cone(basis, moduli)?);
                }
                Ok(InvariantCone::Capped {
                    cap: *cap,
                    bases: out,
                })
            }
            (
                InvariantCone::Capped { cap: ca, bases: ba },
                InvariantCone::Capped { cap: cb, bases: bb },
            ) => {
                let cap = (*ca).min(*cb);
                let n = action.n();
                let mut out = Vec::with_capacity(cap as usize + 1);
                for d in 0..=cap {
                    out.push(intersect_spans(&ba[d as usize], &bb[d as usize], n, d)?);
                }
                Ok(InvariantCone::Capped { cap, bases: out })
            }
        }
    }
}

fn cone_subset(domain: &[Modulus], kernel: &[Modulus]) -> bool {
    domain.iter().zip(kernel).all(|(d, k)| d.refines(k))
}

/// Elements of `span` supported only on monomials inside the cone.
fn intersect_span_with_cone(span: &[QASElement], moduli: &[Modulus]) -> Result<Vec<QASElement>> {
    if span.is_empty() {
        return Ok(vec![]);
    }
    let outside: Vec<Vec<u32>> = span
        .iter()
        .flat_map(|v| v.terms().map(|(a, _)| a.clone()))
        .filter(|a| !moduli.iter().zip(a).all(|(m, &e)| m.admits(e)))
        .unique()
        .collect();
    let mut m = Matrix::zero(outside.len(), span.len());
    for (r, alpha) in outside.iter().enumerate() {
        for (c, v) in span.iter().enumerate() {
            if let Some(coeff) = v.terms().find(|(a, _)| *a == alpha).map(|(_, c)| c) {
                m.set(r, c, coeff.clone());
            }
        }
    }
    let mut out = Vec::new();
    for combo in m.nullspace()? {
        let mut elt = QASElement::zero();
        for (c, v) in span.iter().enumerate() {
            for (a, coeff) in v.terms() {
                elt.add_term(a.clone(), coeff.mul(&combo[c]));
            }
        }
        if !elt.is_zero() {
            out.push(elt);
        }
    }
    Ok(out)
}

/// Intersection of two spans of degree-d elements, in monomial coordinates.
fn intersect_spans(
    a: &[QASElement],
    b: &[QASElement],
    n: usize,
    d: u32,
) -> Result<Vec<QASElement>> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let coords = monomials_of_degree(n, d);
    let idx = |alpha: &Vec<u32>| coords.iter().position(|c| c == alpha).unwrap();
    let mut m = Matrix::zero(coords.len(), a.len() + b.len());
    for (c, v) in a.iter().enumerate() {
        for (alpha, coeff) in v.terms() {
            m.set(idx(alpha), c, coeff.clone());
        }
    }
    for (c, v) in b.iter().enumerate() {
        for (alpha, coeff) in v.terms() {
            m.set(idx(alpha), a.len() + c, coeff.neg());
        }
    }
    let mut out = Vec::new();
    for combo in m.nullspace()? {
        let mut elt = QASElement::zero();
        for (c, v) in a.iter().enumerate() {
            for (alpha, coeff) in v.terms() {
                elt.add_term(alpha.clone(), coeff.mul(&combo[c]));
            }
        }
        if !elt.is_zero() {
            out.push(elt);
        }
    }
    Ok(out)
}

/// The single nonzero target of x_i, if there is exactly one and its image
/// avoids the source variable.
fn single_target(action: &ModuleAction, i: usize) -> Option<usize> {
    let row = &action.spec().targets[i];
    let hits: Vec<usize> = row
        .iter()
        .enumerate()
        .filter_map(|(j, t)| t.as_ref().map(|_| j))
        .collect();
    match hits.as_slice() {
        [j] if row[*j].as_ref().unwrap().beta[*j] == 0 => Some(*j),
        _ => None,
    }
}

/// The effective q-scalar w governing x_i on powers of its target variable:
/// x_i(u_j^k) = [k]_w (scalar) u^{(k-1)e_j + beta}.
pub fn effective_q_scalar(action: &ModuleAction, i: usize, j: usize) -> Result<CycNumber> {
    let gi = &action.boson().datum().g_list[i];
    let mut w = action.gamma_for(gi, j)?;
    let beta = &action.spec().targets[i][j].as_ref().unwrap().beta;
    for (l, &bl) in beta.iter().enumerate() {
        if bl > 0 {
            w = w.mul(&action.space().p().get(j, l).pow(bl as i64)?);
        }
    }
    Ok(w)
}

/// R^{<x_i>}: a monomial cone in the single-target case, degree-capped
/// kernel bases otherwise.
pub fn kernel_of_x(action: &ModuleAction, i: usize, degree_cap: u32) -> Result<InvariantCone> {
    let n = action.n();
    if action.spec().targets[i].iter().all(|t| t.is_none()) {
        return Ok(InvariantCone::full(n));
    }
    if let Some(j) = single_target(action, i) {
        let w = effective_q_scalar(action, i, j)?;
        let modulus = match w.mult_order()? {
            Some(1) => Modulus::Absent,
            Some(m) => Modulus::Multiple(m),
            None => {
                return Err(Error::InvalidDatum(
                    "effective q-scalar is not a root of unity".into(),
                ))
            }
        };
        let mut moduli = vec![Modulus::Multiple(1); n];
        moduli[j] = modulus;
        return Ok(InvariantCone::Cone { moduli });
    }
    let mut bases = Vec::with_capacity(degree_cap as usize + 1);
    for d in 0..=degree_cap {
        bases.push(degree_kernel(action, i, d)?);
    }
    Ok(InvariantCone::Capped {
        cap: degree_cap,
        bases,
    })
}

/// Exact kernel of x_i on the span of degree-d monomials.
pub fn degree_kernel(action: &ModuleAction, i: usize, d: u32) -> Result<Vec<QASElement>> {
    let domain = monomials_of_degree(action.n(), d);
    let mut images = Vec::with_capacity(domain.len());
    let mut coords: Vec<Vec<u32>> = Vec::new();
    for alpha in &domain {
        let img = action.act_skew(i, &QASElement::monomial(alpha.clone(), CycNumber::one()))?;
        for (a, _) in img.terms() {
            if !coords.contains(a) {
                coords.push(a.clone());
            }
        }
        images.push(img);
    }
    let mut m = Matrix::zero(coords.len(), domain.len());
    for (c, img) in images.iter().enumerate() {
        for (a, coeff) in img.terms() {
            let r = coords.iter().position(|x| x == a).unwrap();
            m.set(r, c, coeff.clone());
        }
    }
    let mut out = Vec::new();
    for v in m.nullspace()? {
        let mut elt = QASElement::zero();
        for (c, alpha) in domain.iter().enumerate() {
            elt.add_term(alpha.clone(), v[c].clone());
        }
        out.push(elt);
    }
    Ok(out)
}

/// The chain R_1 >= R_2 >= ... with R_k the intersection of the kernels of
/// the first k operators in `ordering` (0-based x indices).
pub fn invariant_chain(
    action: &ModuleAction,
    ordering: &[usize],
    degree_cap: u32,
) -> Result<Vec<InvariantCone>> {
    let mut chain = Vec::with_capacity(ordering.len());
    let mut cur = InvariantCone::full(action.n());
    for &i in ordering {
        cur = cur.intersect(&kernel_of_x(action, i, degree_cap)?, action)?;
        chain.push(cur.clone());
    }
    Ok(chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictValue {
    Yes,
    No,
    Unknown,
}

/// The exact evidence attached to one nonvanishing check.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepEvidence {
    /// x_i(u^alpha) != 0 by direct evaluation.
    Witness { monomial: Vec<u32> },
    /// A kernel-basis element mapping to something nonzero; its support.
    WitnessElement { monomials: Vec<Vec<u32>> },
    /// The domain cone sits inside the kernel cone of x_i.
    ConeInclusion {
        domain: Vec<Modulus>,
        kernel: Vec<Modulus>,
    },
    CapExhausted { cap: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct StepResult {
    /// 1-based index of the operator x_i being tested.
    pub x_index: usize,
    pub verdict: VerdictValue,
    pub evidence: StepEvidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct Refutation {
    /// 1-based ordering that fails.
    pub ordering: Vec<usize>,
    pub step: StepResult,
}

#[derive(Clone, Debug)]
pub struct Coverage {
    pub subgroup_order: u64,
    pub group_order: u64,
    pub generator_weights: Vec<Character>,
    pub covers_all: bool,
}

impl Serialize for Coverage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Coverage", 4)?;
        st.serialize_field("subgroup_order", &self.subgroup_order)?;
        st.serialize_field("group_order", &self.group_order)?;
        let gens: Vec<Vec<u64>> = self
            .generator_weights
            .iter()
            .map(|c| c.exps().to_vec())
            .collect();
        st.serialize_field("generator_weights", &gens)?;
        st.serialize_field("covers_all", &self.covers_all)?;
        st.end()
    }
}

/// Outcome of semiprime_decide or prime_decide, with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub verdict: VerdictValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub refutations: Vec<Refutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<Coverage>,
    pub degree_cap: u32,
}

/// Does x_i act nonzero somewhere on `domain`? Yes comes with a witness, No
/// only from exact cone inclusion, Unknown from an exhausted cap.
pub fn nonvanishing_witness(
    action: &ModuleAction,
    i: usize,
    domain: &InvariantCone,
    degree_cap: u32,
) -> Result<StepResult> {
    let verdictify = |verdict, evidence| StepResult {
        x_index: i + 1,
        verdict,
        evidence,
    };
    match domain {
        InvariantCone::Cone { moduli } => {
            if let InvariantCone::Cone { moduli: kernel } = kernel_of_x(action, i, degree_cap)? {
                if cone_subset(moduli, &kernel) {
                    return Ok(verdictify(
                        VerdictValue::No,
                        StepEvidence::ConeInclusion {
                            domain: moduli.clone(),
                            kernel,
                        },
                    ));
                }
            }
            for d in 1..=degree_cap {
                let mut mons = monomials_of_degree(action.n(), d);
                mons.sort();
                for alpha in mons {
                    if !moduli.iter().zip(&alpha).all(|(m, &a)| m.admits(a)) {
                        continue;
                    }
                    let img =
                        action.act_skew(i, &QASElement::monomial(alpha.clone(), CycNumber::one()))?;
                    if !img.is_zero() {
                        return Ok(verdictify(
                            VerdictValue::Yes,
                            StepEvidence::Witness { monomial: alpha },
                        ));
                    }
                }
            }
            Ok(verdictify(
                VerdictValue::Unknown,
                StepEvidence::CapExhausted { cap: degree_cap },
            ))
        }
        InvariantCone::Capped { cap, bases } => {
            for basis in bases {
                for elt in basis {
                    if !action.act_skew(i, elt)?.is_zero() {
                        return Ok(verdictify(
                            VerdictValue::Yes,
                            StepEvidence::WitnessElement {
                                monomials: elt.terms().map(|(a, _)| a.clone()).collect(),
                            },
                        ));
                    }
                }
            }
            Ok(verdictify(
                VerdictValue::Unknown,
                StepEvidence::CapExhausted { cap: *cap },
            ))
        }
    }
}

fn chain_decide(action: &ModuleAction, degree_cap: u32) -> Result<Decision> {
    let theta = action.theta();
    if theta > 6 {
        return Err(Error::Unsupported(format!(
            "ordering search over theta = {theta} > 6 operators"
        )));
    }
    if theta == 0 {
        return Ok(Decision {
            verdict: VerdictValue::Yes,
            ordering: Some(vec![]),
            steps: vec![],
            refutations: vec![],
            coverage: None,
            degree_cap,
        });
    }
    let mut refutations = Vec::new();
    let mut saw_unknown = false;
    for perm in (0..theta).permutations(theta) {
        // suffix intersections: domain for position k is the intersection of
        // the kernels after it; the last operator sees all of R
        let mut domains = vec![InvariantCone::full(action.n()); theta];
        for k in (0..theta - 1).rev() {
            domains[k] =
                domains[k + 1].intersect(&kernel_of_x(action, perm[k + 1], degree_cap)?, action)?;
        }
        let mut steps = Vec::with_capacity(theta);
        let mut failed = None;
        for k in 0..theta {
            let step = nonvanishing_witness(action, perm[k], &domains[k], degree_cap)?;
            match step.verdict {
                VerdictValue::Yes => steps.push(step),
                VerdictValue::No => {
                    failed = Some(step);
                    break;
                }
                VerdictValue::Unknown => {
                    saw_unknown = true;
                    failed = Some(step);
                    break;
                }
            }
        }
        match failed {
            None => {
                return Ok(Decision {
                    verdict: VerdictValue::Yes,
                    ordering: Some(perm.iter().map(|&i| i + 1).collect()),
                    steps,
                    refutations: vec![],
                    coverage: None,
                    degree_cap,
                });
            }
            Some(step) if step.verdict == VerdictValue::No => {
                refutations.push(Refutation {
                    ordering: perm.iter().map(|&i| i + 1).collect(),
                    step,
                });
            }
            Some(_) => {}
        }
    }
    Ok(Decision {
        verdict: if saw_unknown {
            VerdictValue::Unknown
        } else {
            VerdictValue::No
        },
        ordering: None,
        steps: vec![],
        refutations,
        coverage: None,
        degree_cap,
    })
}

/// Decides semiprimeness of A # B for a quantum affine base (a domain):
/// some ordering must satisfy x_last(R) != 0 and x_k of each suffix
/// intersection nonzero.
pub fn semiprime_decide(action: &ModuleAction, degree_cap: u32) -> Result<Decision> {
    chain_decide(action, degree_cap)
}

/// Character coverage of R^x: the subgroup of the dual generated by the
/// inverse weights of the cone generators.
pub fn coverage_of_invariants(action: &ModuleAction, degree_cap: u32) -> Result<Option<Coverage>> {
    let mut rx = InvariantCone::full(action.n());
    for i in 0..action.theta() {
        rx = rx.intersect(&kernel_of_x(action, i, degree_cap)?, action)?;
    }
    let group = action.boson().group();
    match rx {
        InvariantCone::Cone { .. } => {
            let gens = rx.generators().unwrap();
            let weights: Vec<Character> = gens
                .iter()
                .map(|a| action.weight(a).map(|w| w.inverse()))
                .collect::<Result<_>>()?;
            let (sub, all) = subgroup_generated(group, &weights)?;
            Ok(Some(Coverage {
                subgroup_order: sub.len() as u64,
                group_order: group.order(),
                generator_weights: weights,
                covers_all: all,
            }))
        }
        InvariantCone::Capped { bases, .. } => {
            // only weight-homogeneous kernel elements are usable as exact
            // eigenvectors; a full coverage from them is a sound Yes
            let mut weights = Vec::new();
            for basis in &bases {
                for elt in basis {
                    let ws: Vec<Character> = elt
                        .terms()
                        .map(|(a, _)| action.weight(a))
                        .collect::<Result<_>>()?;
                    if let Some(first) = ws.first() {
                        if ws.iter().all(|w| w == first) {
                            weights.push(first.inverse());
                        }
                    }
                }
            }
            let (sub, all) = subgroup_generated(group, &weights)?;
            if all {
                Ok(Some(Coverage {
                    subgroup_order: sub.len() as u64,
                    group_order: group.order(),
                    generator_weights: weights,
                    covers_all: true,
                }))
            } else {
                Ok(None) // incomplete capped coverage proves nothing
            }
        }
    }
}

/// Decides primeness: the semiprime chain condition plus full character
/// coverage of R^x. A proper coverage subgroup refutes primeness even when
/// the chain is undecided.
pub fn prime_decide(action: &ModuleAction, degree_cap: u32) -> Result<Decision> {
    let mut chain = chain_decide(action, degree_cap)?;
    let coverage = coverage_of_invariants(action, degree_cap)?;
    match (&chain.verdict, &coverage) {
        (_, Some(c)) if !c.covers_all => {
            chain.verdict = VerdictValue::No;
            chain.ordering = None;
            chain.steps.clear();
        }
        (VerdictValue::Yes, Some(c)) if c.covers_all => {}
        (VerdictValue::Yes, _) => chain.verdict = VerdictValue::Unknown,
        (VerdictValue::No, _) | (VerdictValue::Unknown, _) => {}
    }
    chain.coverage = coverage;
    Ok(chain)
}

/// t_chi(a) = e_chi(xbar(a)): apply x_1^{m_1 - 1} through x_theta^{m_theta - 1},
/// then average g(a) against chi over G.
pub fn t_chi_evaluate(action: &ModuleAction, chi: &Character, a: &QASElement) -> Result<QASElement> {
    let mut v = a.clone();
    for i in 0..action.theta() {
        for _ in 0..action.boson().orders()[i] - 1 {
            v = action.act_skew(i, &v)?;
        }
    }
    let group = action.boson().group();
    let mut acc = QASElement::zero();
    for g in group.elements() {
        acc = acc.add(&action.act_group(&g, &v)?.scale(&chi.eval(&g)?));
    }
    let order = CycNumber::from_integer(group.order() as i64);
    Ok(acc.scale(&order.inverse()?))
}
