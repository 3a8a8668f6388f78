use emcode::dense::{apply_local, c, pauli_matrix, CMat, StateVec, C64};
use emcode::tableau::{canonical_form, group_rank, groups_equal};
use emcode::{Pauli, PauliString, Policy, StabilizerTableau};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn hermitian(n: usize) -> impl Strategy<Value = PauliString> {
    (proptest::collection::vec(letter(), n), any::<bool>())
        .prop_map(|(ls, neg)| PauliString::from_letters(&ls).with_sign_bit(neg))
}

#[derive(Clone, Debug)]
enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        (0..n).prop_map(Gate::H),
        (0..n).prop_map(Gate::S),
        (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| Gate::Cnot(a, b)),
        (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| Gate::Cz(a, b)),
    ]
}

fn s_matrix() -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), C64::new(0.0, 1.0)]))
}

proptest! {
    #[test]
    fn product_matches_matrices(p in hermitian(3), q in hermitian(3)) {
        let lhs = pauli_matrix(&p).unwrap() * pauli_matrix(&q).unwrap();
        let rhs = pauli_matrix(&p.mul(&q).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn commutation_is_symmetric_and_consistent(p in hermitian(70), q in hermitian(70)) {
        let pq = p.mul(&q).unwrap();
        let qp = q.mul(&p).unwrap();
        let comm = p.commutes(&q).unwrap();
        prop_assert_eq!(comm, q.commutes(&p).unwrap());
        prop_assert_eq!(comm, pq == qp);
        prop_assert_eq!(comm, pq.is_hermitian());
    }

    #[test]
    fn display_round_trips(p in hermitian(9)) {
        let back: PauliString = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn measuring_twice_is_deterministic(seed in any::<u64>(), ps in proptest::collection::vec(hermitian(5), 1..8)) {
        let mut t = StabilizerTableau::maximally_mixed(5, seed);
        for p in &ps {
            if p.is_identity_up_to_phase() {
                continue;
            }
            let first = t.measure(p, Policy::Random).unwrap();
            let second = t.measure(p, Policy::Random).unwrap();
            prop_assert!(second.is_deterministic());
            prop_assert_eq!(first.outcome, second.outcome);
        }
    }

    #[test]
    fn rank_never_decreases(seed in any::<u64>(), ps in proptest::collection::vec(hermitian(6), 1..12)) {
        let mut t = StabilizerTableau::maximally_mixed(6, seed);
        let mut last = 0;
        for p in &ps {
            if p.is_identity_up_to_phase() {
                continue;
            }
            t.measure(p, Policy::Random).unwrap();
            prop_assert!(t.rank() >= last);
            last = t.rank();
        }
    }

    #[test]
    fn canonical_form_is_idempotent(gens in proptest::collection::vec(hermitian(5), 1..6)) {
        // only commuting sets describe stabilizer groups
        let mut set: Vec<PauliString> = Vec::new();
        for g in gens {
            if set.iter().all(|s| s.commutes(&g).unwrap()) && !g.is_identity_up_to_phase() {
                set.push(g);
            }
        }
        prop_assume!(!set.is_empty());
        let once = canonical_form(&set);
        prop_assert_eq!(canonical_form(&once), once.clone());
        prop_assert_eq!(group_rank(&set), once.len());
        // multiplying one generator into another does not change the group
        if set.len() >= 2 {
            let mut other = set.clone();
            other[1] = other[1].mul(&set[0]).unwrap();
            if other[1].is_hermitian() {
                prop_assert!(groups_equal(&set, &other).unwrap());
            }
        }
    }

    /// Tableau against a dense statevector: gates, then Pauli measurements.
    #[test]
    fn tableau_matches_statevector(
        seed in any::<u64>(),
        gates in proptest::collection::vec(gate(5), 0..25),
        ps in proptest::collection::vec(hermitian(5), 1..6),
    ) {
        let n = 5;
        let mut t = StabilizerTableau::zero_state(n, seed);
        let mut psi = StateVec::basis(n, 0).unwrap();
        for g in &gates {
            match *g {
                Gate::H(q) => { t.h(q); psi.h(q); }
                Gate::S(q) => { t.s(q); apply_local(&mut psi, &s_matrix(), &[q]); }
                Gate::Cnot(a, b) => { t.cnot(a, b); psi.cnot(a, b); }
                Gate::Cz(a, b) => { t.cz(a, b); psi.cz(a, b); }
            }
        }
        for p in &ps {
            if p.is_identity_up_to_phase() {
                continue;
            }
            let ev = psi.expectation(p);
            prop_assert!(ev.im.abs() < 1e-9);
            let m = t.measure(p, Policy::Random).unwrap();
            if m.is_deterministic() {
                prop_assert!((ev.re - m.outcome as f64).abs() < 1e-9, "{p}: <P> = {}, tableau {}", ev.re, m.outcome);
            } else {
                prop_assert!(ev.re.abs() < 1e-9, "{p}: <P> = {} but tableau says random", ev.re);
            }
            psi.project(p, m.bit());
            psi.normalize();
            prop_assert!((psi.expectation(p).re - m.outcome as f64).abs() < 1e-9);
        }
    }
}
