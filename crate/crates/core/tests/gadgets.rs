use proptest::prelude::*;

use dcut::colouring::{oracle_solve_with, validate_colouring, validate_edge_colouring, OracleConfig, OracleOutcome};
use dcut::gadgets::{
    build_3p2_gadget, build_line_gadget, figure_instance, line_image, parse_dimacs, sat_oracle, validate_instance,
    verify_reduction, witness_colouring_3p2, witness_edge_colouring, ClassCheck, CnfInstance, DcutDecision, Flavour,
    GadgetError, GadgetKind, InstanceViolation, VerifyConfig,
};
use dcut::generate::{random_nae, random_split_pos_neg, rng};
use dcut::graph::{emit_graph6, parse_graph6};

#[test]
fn dimacs_round_trip() {
    let inst = figure_instance();
    let back = parse_dimacs(&inst.to_dimacs()).unwrap();
    assert_eq!(back, inst);
    assert_eq!(back.flavour, Flavour::SplitPosNeg);
}

#[test]
fn dimacs_with_comments() {
    let text = "c tiny\np cnf 4 2\n1 2 3 0\n2 3 4 0\n";
    let inst = parse_dimacs(text).unwrap();
    assert_eq!(inst.flavour, Flavour::NaeAllPositive);
    assert_eq!(inst.clauses, vec![vec![1, 2, 3], vec![2, 3, 4]]);
    assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
}

#[test]
fn figure_gadget_shape() {
    let out = build_3p2_gadget(&figure_instance(), 2).unwrap();
    // 4 + C, 4 + D, six variables
    assert_eq!(out.graph.n(), 16);
    assert_eq!(out.with_role("I").len(), 6);
    assert_eq!(out.with_role("C").len(), 1);
    let c = ClassCheck::of(&out.graph);
    assert!(c.connected && c.three_p2.is_none());
    assert!(c.within_bounds());
    let roles: serde_json::Value = serde_json::from_str(&out.role_map_json()).unwrap();
    assert_eq!(roles.as_array().unwrap().len(), 16);
}

#[test]
fn gadget_graph6_is_stable() {
    for d in 2..=4 {
        let a = build_3p2_gadget(&figure_instance(), d).unwrap();
        let b = build_3p2_gadget(&figure_instance(), d).unwrap();
        assert_eq!(emit_graph6(&a.graph), emit_graph6(&b.graph));
        assert_eq!(parse_graph6(&emit_graph6(&a.graph)).unwrap(), a.graph);
    }
}

#[test]
fn restrictions_are_enforced() {
    let mut inst = figure_instance();
    inst.clauses[0] = vec![1, 2, 2];
    let v = validate_instance(&inst);
    assert!(v.iter().any(|x| matches!(x, InstanceViolation::RepeatedVariable { .. })), "{v:?}");
    assert!(matches!(build_3p2_gadget(&inst, 2), Err(GadgetError::Invalid(_))));

    let nae = CnfInstance { n_vars: 3, clauses: vec![vec![1, 2, 3]], flavour: Flavour::NaeAllPositive };
    assert!(matches!(build_3p2_gadget(&nae, 2), Err(GadgetError::WrongFlavour { .. })));
    assert!(matches!(build_line_gadget(&figure_instance(), 3), Err(GadgetError::WrongFlavour { .. })));
}

#[test]
fn line_gadget_on_random_instances() {
    let mut r = rng(3);
    let mut done = 0;
    while done < 6 {
        let inst = random_nae(6, 6, &mut r);
        let Some(a) = sat_oracle(&inst).unwrap() else { continue };
        done += 1;
        for d in 3..=4 {
            let out = build_line_gadget(&inst, d).unwrap();
            let pre = out.pre_line.as_ref().unwrap();
            assert!(pre.cliques.iter().all(|c| c.vertices.len() >= 2 * d + 2));
            let ec = witness_edge_colouring(&out, &inst, &a).unwrap();
            assert!(validate_edge_colouring(&pre.graph, &ec, d).is_empty());
            let (red, blue) = line_image(&out, &ec);
            assert_eq!(validate_colouring(&out.graph, &red, &blue, d).unwrap(), vec![]);
        }
    }
}

#[test]
fn line_gadget_agrees_on_small_instances() {
    let cfg = VerifyConfig {
        timeout: Some(std::time::Duration::from_secs(60)),
        oracle_guard: None,
        ..VerifyConfig::default()
    };
    let mut r = rng(11);
    for _ in 0..4 {
        let inst = random_nae(5, 4, &mut r);
        let rep = verify_reduction(&inst, 3, GadgetKind::LineGadget, &cfg).unwrap();
        assert_eq!(rep.forward_witness_valid, rep.sat.and_then(|s| s.then_some(true)));
        if rep.dcut != DcutDecision::TimedOut {
            assert_eq!(rep.agree, Some(true), "{rep:?}");
        }
        if rep.dcut == DcutDecision::Yes {
            assert_eq!(rep.backward_assignment_valid, Some(true));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn three_p2_reduction_agrees(seed in any::<u64>(), n in prop::sample::select(vec![6usize, 9]), d in 2..=4usize) {
        let inst = random_split_pos_neg(n, &mut rng(seed));
        prop_assert!(validate_instance(&inst).is_empty());
        let out = build_3p2_gadget(&inst, d).unwrap();
        let c = ClassCheck::of(&out.graph);
        prop_assert!(c.three_p2.is_none() && c.within_bounds());
        let sat = sat_oracle(&inst).unwrap();
        let cut = oracle_solve_with(&out.graph, d, None, &OracleConfig { guard: None, deadline: None }).unwrap();
        prop_assert_eq!(sat.is_some(), matches!(cut, OracleOutcome::Found(_)));
        if let Some(a) = sat {
            let (red, blue) = witness_colouring_3p2(&out, &inst, &a).unwrap();
            prop_assert_eq!(validate_colouring(&out.graph, &red, &blue, d).unwrap(), vec![]);
        }
    }
}
