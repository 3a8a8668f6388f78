use emcode::code::{replay, EmCode, HoneycombCode, LoopKind};
use emcode::kw::Realization;
use emcode::lattice::Cycle;
use emcode::{PauliString, Policy};

#[test]
fn every_single_record_flip_is_detected() {
    for policy in [Policy::ForcePlus, Policy::Random] {
        let mut code = EmCode::new(3, 3, policy, 11).unwrap();
        code.run_rounds(9).unwrap();
        let history = code.ledger.history.clone();
        assert!(replay(&code.lattice, &code.ios, &history).violations.is_empty());
        for (i, rec) in history[3].iter().enumerate() {
            for bit in 0..rec.r.len() {
                for which in [0, 1] {
                    let mut h = history.clone();
                    let field = if which == 0 { &mut h[3][i].r } else { &mut h[3][i].m };
                    field[bit] ^= 1;
                    let rep = replay(&code.lattice, &code.ios, &h);
                    assert!(
                        !rep.violations.is_empty(),
                        "{policy:?}: flip of {} bit {bit} on plaquette {} went unnoticed",
                        if which == 0 { "r" } else { "m" },
                        rec.plaquette
                    );
                }
            }
        }
    }
}

#[test]
fn injected_z_errors_are_detected() {
    let base = {
        let mut c = EmCode::new(3, 3, Policy::Random, 5).unwrap();
        c.run_rounds(3).unwrap();
        c
    };
    let n = base.num_qubits();
    for q in 0..n {
        let mut code = base.clone();
        code.inject_error(&PauliString::z_on(n, &[q])).unwrap();
        code.run_rounds(6).unwrap();
        assert!(!code.live_violations().is_empty(), "Z error on edge {q} went unnoticed");
    }
}

#[test]
fn clean_runs_have_no_violations_in_either_realization() {
    for realization in [Realization::Reference, Realization::MeasurementOnly] {
        let mut code = EmCode::with_realization(2, 3, Policy::Random, 3, realization).unwrap();
        for _ in 0..9 {
            code.run_round().unwrap();
            assert!(code.isg_matches(), "{realization:?} round {}", code.round_index);
        }
        assert!(code.live_violations().is_empty());
        assert!(code.verify_product_constraints().violations.is_empty());
    }
}

#[test]
fn logical_returns_after_two_periods() {
    for kind in [LoopKind::Electric, LoopKind::Magnetic] {
        for cycle in [Cycle::B1, Cycle::B2] {
            let mut code = EmCode::new(3, 3, Policy::Random, 21).unwrap();
            code.run_rounds(3).unwrap();
            let lp = code.logical(kind, cycle);
            let tr = code.track_logical(&lp).unwrap();
            assert_eq!(tr.dual.kind, kind.dual());
            assert!(tr.dual_value.is_some(), "{kind:?} {cycle:?}: dual not determined");
            assert!(tr.restored_value.is_some(), "{kind:?} {cycle:?}: original not restored");
        }
    }
}

#[test]
fn force_plus_logical_outcome_is_plus() {
    let mut code = EmCode::new(3, 3, Policy::ForcePlus, 0).unwrap();
    code.run_rounds(3).unwrap();
    let lp = code.logical(LoopKind::Electric, Cycle::B1);
    assert_eq!(code.track_logical(&lp).unwrap().outcome, 1);
}

#[test]
fn honeycomb_mixed_start_settles_one_round_later() {
    let mut h = HoneycombCode::new(3, 3, Policy::Random, 1, false).unwrap();
    let n = h.num_qubits();
    for t in 0..9 {
        h.run_round().unwrap();
        if t >= 3 {
            assert_eq!(h.isg_rank() + 2, n, "round index {t}");
        }
    }
    assert!(h.verify_plaquettes(None).violations.is_empty());
}

#[test]
fn rejects_degenerate_torus() {
    assert!(EmCode::new(1, 3, Policy::Random, 0).is_err());
}
