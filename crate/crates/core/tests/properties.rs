mod common;

use proptest::prelude::*;

use revbridge::atpg::{self, build_parity_matrix, gen_t4, AtpgOptions};
use revbridge::circuit::{derive_pprm, expand_network, normalize_zero_controls, parse_circuit, ParseOptions, ReversibleCircuit};
use revbridge::fault::{enumerate_faults, BridgingFault, Polarity};
use revbridge::pattern::{DcPolicy, Origin, TestPattern};
use revbridge::sim::{self, Verdict};

fn circuit_strategy(max_n: usize, max_p: usize, max_d: usize) -> impl Strategy<Value = ReversibleCircuit> {
    (1..=max_n, 1..=max_p).prop_flat_map(move |(n, p)| {
        let gate = (prop::collection::btree_set(0..n, 0..=n), 0..p);
        prop::collection::vec(gate, 0..=max_d).prop_map(move |gates| {
            let gates = gates.into_iter().map(|(cs, t)| (cs.into_iter().collect(), t));
            normalize_zero_controls(ReversibleCircuit::with_zero_controls(n, p, gates).unwrap())
        })
    })
}

fn bits(m: u64, len: usize, shift: usize) -> Vec<bool> {
    (0..len).map(|k| (m >> (shift + k)) & 1 == 1).collect()
}

fn pattern(c: &[bool], x: &[bool]) -> TestPattern {
    TestPattern::from_bits(c, x, Origin::User)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(c in circuit_strategy(6, 3, 8)) {
        let printed = c.to_string();
        let back = normalize_zero_controls(parse_circuit(&printed, ParseOptions::default()).unwrap());
        prop_assert_eq!(back.gates(), c.gates());
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn pprm_matches_cascade(c in circuit_strategy(5, 3, 8), m in any::<u64>()) {
        let x = bits(m, c.inputs(), 0);
        let cv = bits(m, c.p(), 32);
        let f = derive_pprm(&c);
        let out = c.evaluate(&cv, &x);
        for (j, fj) in f.iter().enumerate() {
            prop_assert_eq!(out[j], cv[j] ^ fj.eval(&x));
        }
        let net = expand_network(&c);
        let sim = sim::eval_good(&net, &pattern(&cv, &x), DcPolicy::FillZero).unwrap();
        prop_assert_eq!(sim.outputs, out);
    }

    #[test]
    fn zero_x_is_identity(c in circuit_strategy(5, 4, 8), m in any::<u64>()) {
        // the auxiliary line, if any, is also held at 0 here
        let cv = bits(m, c.p(), 0);
        prop_assert_eq!(c.evaluate(&cv, &vec![false; c.inputs()]), cv);
    }

    #[test]
    fn cascade_is_a_bijection_on_c(c in circuit_strategy(4, 3, 8), m in any::<u64>()) {
        let x = bits(m, c.inputs(), 0);
        let mut images: Vec<Vec<bool>> = (0..1u64 << c.p()).map(|k| c.evaluate(&bits(k, c.p(), 0), &x)).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), 1 << c.p());
    }

    #[test]
    fn pprm_resynthesis_is_equivalent(c in circuit_strategy(5, 3, 8)) {
        let f = derive_pprm(&c);
        let gates = f.iter().flat_map(|fj| fj.canonical.iter().map(move |t| (t.clone(), fj.output)));
        let re = ReversibleCircuit::with_zero_controls(c.inputs(), c.p(), gates).unwrap();
        for (cv, x) in common::assignments(c.inputs(), c.p()) {
            prop_assert_eq!(re.evaluate(&cv, &x), c.evaluate(&cv, &x));
        }
    }

    #[test]
    fn parity_matrix_matches_term_enumeration(c in circuit_strategy(6, 3, 10)) {
        let active: Vec<usize> = (0..c.inputs()).collect();
        let pm = build_parity_matrix(&derive_pprm(&c), &active);
        prop_assert!(pm.is_symmetric());
        for &i in &active {
            for &j in &active {
                let odd = (0..c.p()).any(|k| {
                    c.gates().iter().filter(|g| g.target == k && g.controls.contains(&i) && g.controls.contains(&j)).count() % 2 == 1
                });
                prop_assert_eq!(pm.get(i, j), odd);
            }
        }
    }

    #[test]
    fn fault_free_matches_reference(c in circuit_strategy(5, 3, 8), m in any::<u64>()) {
        let net = expand_network(&c);
        let x = bits(m, c.inputs(), 0);
        let cv = bits(m, c.p(), 32);
        let t = pattern(&cv, &x);
        for f in enumerate_faults(&net, true).faults.iter().filter(|f| !matches!(f, BridgingFault::ExorInternal { .. })) {
            let faulty = sim::eval_faulty(&net, f, &t, DcPolicy::FillZero).unwrap();
            prop_assert_eq!(&faulty.outputs, &common::reference_outputs(&c, &cv, &x, Some(f)), "{}", f);
        }
    }

    #[test]
    fn a_pair_bridge_flips_at_most_one_gate_each_side(c in circuit_strategy(5, 3, 8), m in any::<u64>()) {
        // a single a-pair bridge changes at most one of the two AND outputs
        let net = expand_network(&c);
        let x = bits(m, c.inputs(), 0);
        let cv = bits(m, c.p(), 32);
        let t = pattern(&cv, &x);
        let good = sim::eval_good(&net, &t, DcPolicy::FillZero).unwrap();
        for i in 0..c.d() {
            for j in i + 1..c.d() {
                for pol in Polarity::BOTH {
                    let bad = sim::eval_faulty(&net, &BridgingFault::a_pair(i, j, pol), &t, DcPolicy::FillZero).unwrap();
                    let changed = good.a.iter().zip(&bad.a).filter(|(g, b)| g != b).count();
                    prop_assert!(changed <= 1);
                    let flipped = good.outputs.iter().zip(&bad.outputs).filter(|(g, b)| g != b).count();
                    prop_assert_eq!(flipped, changed);
                }
            }
        }
    }

    #[test]
    fn intra_level_transparent_at_zero_x(c in circuit_strategy(4, 3, 6)) {
        let net = expand_network(&c);
        let x = vec![false; c.inputs()];
        for m in 0..1u64 << c.p() {
            let t = pattern(&bits(m, c.p(), 0), &x);
            for level in 0..=c.d() {
                for j1 in 0..c.p() {
                    for j2 in j1 + 1..c.p() {
                        for pol in Polarity::BOTH {
                            let at = sim::eval_faulty(&net, &BridgingFault::intra_level(level, j1, j2, pol), &t, DcPolicy::FillZero).unwrap();
                            let first = sim::eval_faulty(&net, &BridgingFault::intra_level(0, j1, j2, pol), &t, DcPolicy::FillZero).unwrap();
                            prop_assert_eq!(at.outputs, first.outputs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adding_patterns_never_loses_detections(c in circuit_strategy(5, 3, 8), extra in prop::collection::vec(any::<u64>(), 1..6)) {
        let net = expand_network(&c);
        let faults = enumerate_faults(&net, false);
        let g = atpg::generate(&net, &derive_pprm(&c), &AtpgOptions::default());
        let base = atpg::assemble_union(&g.sets, &[], false, DcPolicy::FillZero).patterns;
        let mut more = base.clone();
        more.extend(extra.iter().map(|&m| pattern(&bits(m, c.p(), 40), &bits(m, c.inputs(), 0))));
        let a = sim::evaluate_test_set(&net, &faults, &base, DcPolicy::FillZero).unwrap();
        let b = sim::evaluate_test_set(&net, &faults, &more, DcPolicy::FillZero).unwrap();
        for (va, vb) in a.verdicts.iter().zip(&b.verdicts) {
            if va.is_detected() {
                prop_assert_eq!(va, vb);
            }
        }
    }

    #[test]
    fn oracle_agrees_with_reference(c in circuit_strategy(4, 3, 6)) {
        let net = expand_network(&c);
        for f in enumerate_faults(&net, true).faults.iter().filter(|f| !matches!(f, BridgingFault::ExorInternal { .. })) {
            let lib = sim::exhaustive_detectability(&net, f, 22).unwrap();
            let want = common::reference_detectable(&c, f);
            match lib {
                sim::Detectability::Detectable(w) => {
                    prop_assert!(want);
                    let (cv, xv) = w.resolve(DcPolicy::FillZero);
                    prop_assert!(common::reference_detects(&c, f, &cv, &xv));
                }
                sim::Detectability::Redundant => prop_assert!(!want, "{}", f),
            }
        }
    }

    #[test]
    fn t2_t3_within_construction_bound(c in circuit_strategy(8, 3, 10)) {
        let net = expand_network(&c);
        let g = atpg::generate(&net, &derive_pprm(&c), &AtpgOptions::default());
        let n = c.n();
        for o in [Origin::T2, Origin::T3] {
            prop_assert!(g.set(o).unwrap().len() <= n.saturating_sub(1));
        }
    }
}

#[test]
fn t4_codes_distinct_up_to_64() {
    for p in 1..=64 {
        let t = gen_t4(p, 0);
        assert_eq!(t.len(), atpg::ceil_log2(p));
        let codes: std::collections::HashSet<Vec<_>> = (0..p).map(|q| t.patterns.iter().map(|r| r.c[q]).collect()).collect();
        assert_eq!(codes.len(), p, "p={p}");
    }
}

#[test]
fn verdicts_independent_of_thread_count() {
    let mut rng = common::rng(7);
    for _ in 0..10 {
        let c = normalize_zero_controls(common::random_circuit(&mut rng, 6, 3, 10, 9));
        let net = expand_network(&c);
        let f = derive_pprm(&c);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(6).build().unwrap();
        let a = one.install(|| atpg::verify(&net, &f, &AtpgOptions::default()).unwrap());
        let b = many.install(|| atpg::verify(&net, &f, &AtpgOptions::default()).unwrap());
        assert_eq!(a.coverage.verdicts, b.coverage.verdicts);
        assert!(a.coverage.verdicts.iter().all(|v| !matches!(v, Verdict::Undetected | Verdict::Unresolved)));
    }
}
