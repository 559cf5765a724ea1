//! End-to-end acceptance suite: each test exercises one headline guarantee on
//! the bundled example configs and prints a single pass line with its timing.

use std::time::{Duration, Instant};

use qls_core::config::JobConfig;
use qls_core::criteria::{
    kernel_of_x, nonvanishing_witness, prime_decide, semiprime_decide, InvariantCone, Modulus,
    StepEvidence, VerdictValue,
};
use qls_core::cyclotomic::CycNumber;
use qls_core::group_chars::{char_sum, subgroup_generated, AbelianGroup};
use qls_core::hopf::{BElement, Bosonization, QLSDatum, TaftDatum};
use qls_core::linalg::Matrix;
use qls_core::qas::{monomials_of_degree, ModuleAction};
use qls_core::smash::{verify_smash_identities, SmashAlgebra};

const CONFIGS: [&str; 5] = [
    "ex_nsp_n3.json",
    "ex_sp_n3.json",
    "ex_sp_n5.json",
    "final_prime.json",
    "sweedler.json",
];

fn load(name: &str) -> ModuleAction {
    let path = format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("read bundled config");
    JobConfig::parse(&text)
        .expect("parse config")
        .action()
        .expect("valid action")
}

fn finish(name: &str, t: Instant, bound_s: u64) {
    let elapsed = t.elapsed();
    assert!(
        elapsed < Duration::from_secs(bound_s),
        "{name} exceeded {bound_s}s: {elapsed:?}"
    );
    println!("PASS {name} ({elapsed:?})");
}

#[test]
fn a1_not_semiprime_with_cone_inclusion_certificate() {
    let t = Instant::now();
    let action = load("ex_nsp_n3.json");
    let d = semiprime_decide(&action, 16).unwrap();
    assert_eq!(d.verdict, VerdictValue::No);
    assert!(!d.refutations.is_empty());
    // every refutation exhibits the kernel cone k[u_1, u_2^3] containing the
    // whole search domain
    let mut saw_cone = false;
    for r in &d.refutations {
        if let StepEvidence::ConeInclusion { kernel, .. } = &r.step.evidence {
            assert_eq!(kernel, &vec![Modulus::Multiple(1), Modulus::Multiple(3)]);
            saw_cone = true;
        }
    }
    assert!(saw_cone, "expected a cone-inclusion certificate");
    finish("a1_not_semiprime_with_cone_inclusion_certificate", t, 5);
}

#[test]
fn a2_semiprime_with_expected_witnesses() {
    let t = Instant::now();
    for name in ["ex_sp_n3.json", "ex_sp_n5.json"] {
        let action = load(name);
        let d = semiprime_decide(&action, 16).unwrap();
        assert_eq!(d.verdict, VerdictValue::Yes, "{name}");

        // the ordering that applies x_2 first sees u_3 on the full space,
        // then u_2 inside ker x_2 = k[u_1, u_2, u_3^n]
        let full = InvariantCone::full(3);
        let s1 = nonvanishing_witness(&action, 1, &full, 16).unwrap();
        assert_eq!(s1.verdict, VerdictValue::Yes);
        assert!(matches!(&s1.evidence, StepEvidence::Witness { monomial } if monomial == &vec![0, 0, 1]));

        let dom = full
            .intersect(&kernel_of_x(&action, 1, 16).unwrap(), &action)
            .unwrap();
        let s2 = nonvanishing_witness(&action, 0, &dom, 16).unwrap();
        assert_eq!(s2.verdict, VerdictValue::Yes);
        assert!(matches!(&s2.evidence, StepEvidence::Witness { monomial } if monomial == &vec![0, 1, 0]));
    }
    finish("a2_semiprime_with_expected_witnesses", t, 5);
}

#[test]
fn a3_not_prime_with_proper_coverage_subgroup() {
    let t = Instant::now();
    let action = load("ex_sp_n3.json");
    let d = prime_decide(&action, 16).unwrap();
    assert_eq!(d.verdict, VerdictValue::No);
    let cov = d.coverage.expect("coverage certificate");
    assert_eq!(cov.subgroup_order, 3);
    assert_eq!(cov.group_order, 9);
    assert!(!cov.covers_all);
    finish("a3_not_prime_with_proper_coverage_subgroup", t, 5);
}

#[test]
fn a4_prime_with_full_weight_coverage() {
    let t = Instant::now();
    let action = load("final_prime.json");
    let d = prime_decide(&action, 16).unwrap();
    assert_eq!(d.verdict, VerdictValue::Yes);
    let cov = d.coverage.expect("coverage certificate");
    assert!(cov.covers_all);

    // the coverage subgroup equals the one generated by the weights of u_1
    // and u_2, which already exhaust the dual
    let group = action.boson().group().clone();
    let w1 = action.weight(&[1, 0, 0, 0]).unwrap();
    let w2 = action.weight(&[0, 1, 0, 0]).unwrap();
    let (from_u, all_u) = subgroup_generated(&group, &[w1, w2]).unwrap();
    let (from_cov, all_cov) = subgroup_generated(&group, &cov.generator_weights).unwrap();
    assert!(all_u && all_cov);
    assert_eq!(from_u, from_cov);
    finish("a4_prime_with_full_weight_coverage", t, 10);
}

#[test]
fn a5_idempotent_and_integral_identities_exhaustive() {
    let t = Instant::now();
    // (group factors, g exponents, chi exponents) with theta in {0, 1, 2}
    let data: Vec<(Vec<u64>, Vec<Vec<i64>>, Vec<Vec<i64>>)> = vec![
        (vec![2], vec![], vec![]),
        (vec![2], vec![vec![1]], vec![vec![1]]),
        (vec![2], vec![vec![1], vec![1]], vec![vec![1], vec![1]]),
        (vec![3], vec![vec![1]], vec![vec![1]]),
        (vec![3], vec![vec![1], vec![2]], vec![vec![1], vec![1]]),
        (
            vec![2, 2],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        (
            vec![3, 3],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![-1, 1], vec![-1, -1]],
        ),
    ];
    for (factors, gs, chis) in data {
        let group = AbelianGroup::new(factors).unwrap();
        let datum = QLSDatum {
            group: group.clone(),
            g_list: gs.iter().map(|e| group.element(e).unwrap()).collect(),
            chi_list: chis.iter().map(|e| group.character(e).unwrap()).collect(),
        };
        let boson = Bosonization::new(datum).unwrap();
        let chars = group.characters();

        // e_chi e_psi = delta e_chi and sum_chi e_chi = 1
        let mut total = BElement::zero();
        for chi in &chars {
            let e1 = boson.e_chi(chi).unwrap();
            total = total.add(&e1);
            for psi in &chars {
                let e2 = boson.e_chi(psi).unwrap();
                let prod = boson.multiply(&e1, &e2).unwrap();
                if chi == psi {
                    assert_eq!(prod, e1);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
        assert_eq!(total, boson.unit());

        // h e_chi = chi(h^{-1}) e_chi
        for chi in &chars {
            let e = boson.e_chi(chi).unwrap();
            for h in group.elements() {
                let lhs = boson.multiply(&boson.gen_g(&h), &e).unwrap();
                let scalar = chi.eval(&h.inverse()).unwrap();
                assert_eq!(lhs, e.clone().scale(&scalar));
            }
        }

        // e_chi x_i = x_i e_{chi chi_i}
        for chi in &chars {
            let e = boson.e_chi(chi).unwrap();
            for i in 0..boson.theta() {
                let xi = boson.gen_x(i);
                let lhs = boson.multiply(&e, &xi).unwrap();
                let shifted = chi.product(&boson.datum().chi_list[i]).unwrap();
                let rhs = boson
                    .multiply(&xi, &boson.e_chi(&shifted).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }

        // b t_0 = eps(b) t_0 for every basis element b
        let t0 = boson.t_chi(&group.trivial_character()).unwrap();
        for label in boson.basis() {
            let b = BElement::from_term(label, CycNumber::one());
            let lhs = boson.multiply(&b, &t0).unwrap();
            let rhs = t0.clone().scale(&boson.counit(&b));
            assert_eq!(lhs, rhs);
        }
    }
    finish("a5_idempotent_and_integral_identities_exhaustive", t, 30);
}

#[test]
fn a6_radical_dimension_by_trace_form() {
    let t = Instant::now();
    let z2 = AbelianGroup::new(vec![2]).unwrap();
    let sweedler = Bosonization::new(QLSDatum {
        group: z2.clone(),
        g_list: vec![z2.element(&[1]).unwrap()],
        chi_list: vec![z2.character(&[1]).unwrap()],
    })
    .unwrap();
    assert_eq!(sweedler.radical_dimension(100).unwrap(), 2);

    let omega = CycNumber::root_of_unity(3, 1).unwrap();
    let taft = Bosonization::new(
        TaftDatum::new(3, 3, omega, CycNumber::zero())
            .unwrap()
            .to_qls()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(taft.radical_dimension(100).unwrap(), 6);

    let action = load("final_prime.json");
    let rank2 = action.boson();
    assert_eq!(rank2.dim(), 81);
    assert_eq!(rank2.radical_dimension(100).unwrap(), 9 * (9 - 1));
    finish("a6_radical_dimension_by_trace_form", t, 60);
}

#[test]
fn a7_smash_identity_suite() {
    let t = Instant::now();
    for name in ["ex_sp_n3.json", "sweedler.json"] {
        let algebra = SmashAlgebra::new(load(name));
        let checks = verify_smash_identities(&algebra, 3).unwrap();
        for c in &checks {
            assert!(c.passed, "{name}: {} failed: {:?}", c.check, c.witness);
        }
        assert!(checks.iter().any(|c| c.check == "integral_identity"));
        assert!(checks.iter().any(|c| c.check == "pi_chi_multiplicative"));
    }
    finish("a7_smash_identity_suite", t, 60);
}

#[test]
fn a8_kernel_cones_match_degreewise_linear_algebra() {
    let t = Instant::now();
    for name in CONFIGS {
        let action = load(name);
        let n = action.n();
        for i in 0..action.theta() {
            let cone = kernel_of_x(&action, i, 8).unwrap();
            for d in 0..=8u32 {
                let mons = monomials_of_degree(n, d);
                // cone monomials are killed outright
                let mut in_cone = 0usize;
                for alpha in &mons {
                    if cone.contains_monomial(alpha) == Some(true) {
                        let img = action
                            .act_skew(i, &qls_core::qas::QASElement::monomial(
                                alpha.clone(),
                                CycNumber::one(),
                            ))
                            .unwrap();
                        assert!(img.is_zero(), "{name}: x_{} on u^{alpha:?}", i + 1);
                        in_cone += 1;
                    }
                }
                // and the exact kernel has no room for anything else
                let mut row_index = std::collections::BTreeMap::new();
                let mut entries = Vec::new();
                for (col, alpha) in mons.iter().enumerate() {
                    let img = action
                        .act_skew(i, &qls_core::qas::QASElement::monomial(
                            alpha.clone(),
                            CycNumber::one(),
                        ))
                        .unwrap();
                    for (beta, c) in img.terms() {
                        let next = row_index.len();
                        let row = *row_index.entry(beta.clone()).or_insert(next);
                        entries.push((row, col, c.clone()));
                    }
                }
                let mut m = Matrix::zero(row_index.len().max(1), mons.len());
                for (r, c, v) in entries {
                    m.set(r, c, v);
                }
                let nullity = m.nullspace().unwrap().len();
                assert_eq!(nullity, in_cone, "{name}: x_{} degree {d}", i + 1);
            }
        }
    }
    finish("a8_kernel_cones_match_degreewise_linear_algebra", t, 60);
}

#[test]
fn a9_prime_implies_semiprime_and_orthogonality() {
    let t = Instant::now();
    for name in CONFIGS {
        let action = load(name);
        let p = prime_decide(&action, 16).unwrap();
        let s = semiprime_decide(&action, 16).unwrap();
        if p.verdict == VerdictValue::Yes {
            assert_eq!(s.verdict, VerdictValue::Yes, "{name}");
        }
    }

    for factors in [vec![2], vec![3], vec![4], vec![2, 2], vec![3, 3], vec![16], vec![2, 8]] {
        let group = AbelianGroup::new(factors).unwrap();
        assert!(group.order() <= 16);
        let chars = group.characters();
        for chi in &chars {
            for psi in &chars {
                let v = char_sum(chi, psi).unwrap();
                let expected = if *psi == chi.inverse() { 1 } else { 0 };
                assert_eq!(v, num::BigRational::from_integer(expected.into()));
            }
        }
    }
    finish("a9_prime_implies_semiprime_and_orthogonality", t, 60);
}
