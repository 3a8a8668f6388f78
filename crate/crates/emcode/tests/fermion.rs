use emcode::fermion::{
    defect_spectrum, dimer_crossing_parity, gap_formula, kekule_bloch_gap, ring_gap, ring_hamiltonian,
    ring_min_gap, CouplingVector, DefectDisc, DimerConfig, MajoranaQuadratic,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_particle_hole(q: &MajoranaQuadratic) {
    let mut spec = q.hermitian_spectrum();
    spec.sort_by(f64::total_cmp);
    let n = spec.len();
    for i in 0..n {
        assert!((spec[i] + spec[n - 1 - i]).abs() < 1e-12, "{} vs {}", spec[i], spec[n - 1 - i]);
    }
}

#[test]
fn gap_formula_examples() {
    assert!(gap_formula(&CouplingVector::new(1.0, 1.0, 1.0).unwrap()) < 1e-15);
    assert!((gap_formula(&CouplingVector::new(2.0, 1.0, 1.0).unwrap()) - 0.5).abs() < 1e-15);
    // (0.6, 0.2, 0.2): q = 0.44 - 0.28 = 0.16
    assert!((gap_formula(&CouplingVector::new(3.0, 1.0, 1.0).unwrap()) - 0.8).abs() < 1e-12);
}

#[test]
fn couplings_are_normalized_and_validated() {
    let j = CouplingVector::new(2.0, 3.0, 5.0).unwrap();
    assert!((j.j.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    assert!(CouplingVector::new(0.0, 1.0, 1.0).is_err());
    assert!(CouplingVector::new(-1.0, 1.0, 1.0).is_err());
}

#[test]
fn sampled_couplings_respect_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let j = CouplingVector::sample(&mut rng, 0.1).unwrap();
        assert!(j.j.iter().all(|&v| v >= 0.1));
        assert!((j.j.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
    assert!(CouplingVector::sample(&mut rng, 0.5).is_err());
}

#[test]
fn bloch_gap_is_invariant_under_cyclic_relabeling() {
    let [x, y, z] = [0.5, 0.3, 0.2];
    let g: Vec<f64> = [(x, y, z), (y, z, x), (z, x, y)]
        .iter()
        .map(|&(a, b, c)| kekule_bloch_gap(&CouplingVector::new(a, b, c).unwrap(), 48).unwrap())
        .collect();
    assert!((g[0] - g[1]).abs() < 1e-12 && (g[1] - g[2]).abs() < 1e-12, "{g:?}");
    assert!(kekule_bloch_gap(&CouplingVector::new(x, y, z).unwrap(), 0).is_err());
}

#[test]
fn majorana_matrix_must_be_antisymmetric() {
    assert!(MajoranaQuadratic::from_matrix(DMatrix::from_element(2, 2, 1.0)).is_err());
    assert!(MajoranaQuadratic::zeros(3).is_err());
    let mut q = MajoranaQuadratic::zeros(2).unwrap();
    q.add_bond(0, 1, 0.5);
    assert!((q.many_body_gap() - 1.0).abs() < 1e-15);
}

#[test]
fn dimerized_ring_has_unit_bonds() {
    assert!((ring_gap(6, 0.0, false).unwrap() - 2.0).abs() < 1e-12);
    assert!(ring_hamiltonian(7, 0.0, false).is_err());
    assert!(ring_hamiltonian(6, 3.5, false).is_err());
}

#[test]
fn ring_gap_follows_mod_four_rule() {
    for m in [6usize, 8, 10, 12] {
        let plain = ring_min_gap(m, false, 360).unwrap();
        let vortex = ring_min_gap(m, true, 360).unwrap();
        let (open, closed) = if m % 4 == 2 { (plain, vortex) } else { (vortex, plain) };
        assert!(open > 0.3, "m={m}: {open}");
        assert!(closed < 1e-6, "m={m}: {closed}");
    }
}

#[test]
fn spectra_are_particle_hole_symmetric() {
    for t in [0.0, 0.4, 1.7, 2.9] {
        assert_particle_hole(&ring_hamiltonian(10, t, true).unwrap());
    }
    assert_particle_hole(&DefectDisc::new(6, 0.2).unwrap().quadratic());
}

#[test]
fn disc_singular_values_match_full_spectrum() {
    let disc = DefectDisc::new(6, 0.15).unwrap();
    let mut full: Vec<f64> = disc.quadratic().energies();
    full.sort_by(f64::total_cmp);
    let spec = defect_spectrum(6, 0.15).unwrap();
    assert_eq!(full.len(), spec.energies.len());
    for (a, b) in full.iter().zip(&spec.energies) {
        assert!((2.0 * a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn uniform_disc_has_no_bound_mode() {
    let s = defect_spectrum(8, 0.0).unwrap();
    assert!(s.bound_mode.is_none());
    assert!(s.bulk_gap < 1e-12);
}

#[test]
fn bulk_gap_is_linear_in_lambda() {
    let a = defect_spectrum(6, 0.1).unwrap().bulk_gap;
    let b = defect_spectrum(6, 0.2).unwrap().bulk_gap;
    assert!((b - 2.0 * a).abs() < 1e-12);
    assert!((b - 0.6).abs() < 1e-12);
}

#[test]
fn defect_mode_is_localized() {
    let s = defect_spectrum(10, 0.2).unwrap();
    let bm = s.bound_mode.expect("bound mode");
    assert!(bm.energy < 1e-4);
    assert!(bm.central_weight > 0.25);
    assert!(defect_spectrum(4, 0.2).is_err());
}

#[test]
fn trivial_configuration_has_no_parity_against_itself() {
    let t = DimerConfig::trivial(9, 30).unwrap();
    for x0 in t.cut_positions() {
        assert_eq!(dimer_crossing_parity(&t, &t, x0).unwrap(), 0);
    }
}

#[test]
fn path_parity_is_the_same_at_every_cut() {
    let p = DimerConfig::unrolled(12, 36).unwrap();
    let t = DimerConfig::trivial(12, 36).unwrap();
    let values: Vec<u8> = p.cut_positions().iter().map(|&x| dimer_crossing_parity(&p, &t, x).unwrap()).collect();
    assert!(values.iter().all(|&v| v == values[0]), "{values:?}");
    assert!(p.crossings(0.5).is_err(), "a cut through a vertex must be rejected");
}

proptest! {
    #[test]
    fn formula_is_permutation_symmetric(a in 0.01f64..1.0, b in 0.01f64..1.0, c in 0.01f64..1.0) {
        let g = gap_formula(&CouplingVector::new(a, b, c).unwrap());
        prop_assert!((g - gap_formula(&CouplingVector::new(b, a, c).unwrap())).abs() < 1e-12);
        prop_assert!((g - gap_formula(&CouplingVector::new(c, b, a).unwrap())).abs() < 1e-12);
    }
}
