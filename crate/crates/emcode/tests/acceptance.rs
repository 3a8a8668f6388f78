//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stderr so it shows up even when test output is captured.

use std::io::Write;
use std::time::{Duration, Instant};

use emcode::code::{EmCode, HoneycombCode, LoopKind};
use emcode::fermion::{
    defect_spectrum, gap_formula, kekule_bloch_gap, parity_scan, ring_min_gap, CouplingVector,
};
use emcode::kw::{check_sign_laws, KWRecord, Realization};
use emcode::lattice::Cycle;
use emcode::oracle::{compare_with_formula, dense_kw_channel, verify_dj_algebra, verify_family};
use emcode::Policy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MINUTE: Duration = Duration::from_secs(60);
const SECONDS: Duration = Duration::from_secs(15);

type Check = emcode::Result<(bool, String)>;

struct Outcome {
    id: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn run(id: usize, title: &'static str, budget: Duration, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let (mut passed, mut detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let took = start.elapsed();
    if took > budget {
        passed = false;
        detail.push_str(&format!("; over time budget {budget:?}"));
    }
    detail.push_str(&format!(" [{:.1}s]", took.as_secs_f64()));
    let line = format!("{} {:>2}. {}: {}\n", if passed { "PASS" } else { "FAIL" }, id, title, detail);
    let _ = std::io::stderr().write_all(line.as_bytes());
    Outcome { id, title, passed, detail }
}

fn kw_matrix_elements() -> Check {
    let mut worst = 0.0f64;
    let mut scales = Vec::new();
    for pattern in 0..1usize << 12 {
        let rec = KWRecord::from_pattern(0, 3, pattern);
        let (scale, dev) = compare_with_formula(&dense_kw_channel(3, &rec)?, &rec);
        worst = worst.max(dev);
        scales.push(scale);
    }
    let positive = scales.iter().all(|s| s.re > 0.0 && s.im.abs() < 1e-12);
    Ok((worst <= 1e-10 && positive, format!("4096 patterns x 64 entries, max deviation {worst:.1e}")))
}

fn kw_sign_laws() -> Check {
    let mut failures = 0;
    for realization in [Realization::Reference, Realization::MeasurementOnly] {
        for seed in 0..200u64 {
            failures += check_sign_laws(3, seed, seed % 2 == 0, realization)?.len();
        }
    }
    Ok((failures == 0, format!("2 realizations x 200 seeded runs, {failures} sign mismatches")))
}

/// Shared runs for criteria 3 and 4: (3,3) torus, rounds 0-9, 50 seeds per
/// policy.
fn isg_and_products(check_products: bool) -> Check {
    let (mut mismatches, mut violations, mut bad_globals, mut runs) = (0, 0, 0, 0);
    for policy in [Policy::ForcePlus, Policy::Random] {
        for seed in 0..50 {
            let mut code = EmCode::new(3, 3, policy, seed)?;
            for _ in 0..10 {
                code.run_round()?;
                if !check_products && !code.isg_matches() {
                    mismatches += 1;
                }
            }
            runs += 1;
            if check_products {
                let rep = code.verify_product_constraints();
                violations += rep.violations.len() + code.live_violations().len();
                if policy == Policy::ForcePlus {
                    bad_globals += rep
                        .rounds
                        .iter()
                        .filter(|r| r.round >= 2)
                        .filter(|r| r.vertex_product != Some(1) || r.plaquette_product != Some(1))
                        .count();
                }
            }
        }
    }
    if check_products {
        Ok((
            violations == 0 && bad_globals == 0,
            format!("{runs} runs, {violations} transfer/parity violations, {bad_globals} force-plus global products != +1"),
        ))
    } else {
        Ok((mismatches == 0, format!("{runs} runs x 10 rounds, {mismatches} ISG mismatches")))
    }
}

fn logical_interchange() -> Check {
    let (mut trials, mut bad) = (0, 0);
    for cycle in [Cycle::B1, Cycle::B2] {
        for seed in 0..20 {
            let mut code = EmCode::new(3, 3, Policy::Random, seed)?;
            code.run_rounds(3)?;
            let lp = code.logical(LoopKind::Electric, cycle);
            let tr = code.track_logical(&lp)?;
            trials += 1;
            if tr.dual.kind != LoopKind::Magnetic || tr.dual_value.is_none() || tr.restored_value.is_none() {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{trials} trials (both cycles, 20 seeds), {bad} without deterministic interchange")))
}

fn encoded_qubits() -> Check {
    let mut bad = Vec::new();
    for (l1, l2) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        for policy in [Policy::ForcePlus, Policy::Random] {
            let mut code = EmCode::new(l1, l2, policy, 7)?;
            let n = code.num_qubits();
            for t in 0..9 {
                code.run_round()?;
                if t >= 2 && code.isg_rank() + 2 != n {
                    bad.push((l1, l2, t));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("tori 2x2..4x4, rank n-2 from round 2; failures {bad:?}")))
}

fn honeycomb() -> Check {
    let (mut checked, mut violations, mut lost, mut rank_bad) = (0, 0, 0, 0);
    for (l1, l2) in [(2, 3), (3, 3), (3, 4)] {
        for policy in [Policy::ForcePlus, Policy::Random] {
            for seed in 0..5 {
                let mut h = HoneycombCode::new(l1, l2, policy, seed, true)?;
                let n = h.num_qubits();
                for t in 0..9 {
                    h.run_round()?;
                    if t >= 2 && h.isg_rank() + 2 != n {
                        rank_bad += 1;
                    }
                    for p in 0..h.lattice.num_plaquettes() {
                        if h.plaquette_value(p)? != Some(1) {
                            lost += 1;
                        }
                    }
                }
                let rep = h.verify_plaquettes(Some(1));
                checked += rep.checked;
                violations += rep.violations.len();
            }
        }
    }
    Ok((
        violations == 0 && lost == 0 && rank_bad == 0 && checked > 0,
        format!("{checked} two-round products, {violations} != +1, {lost} lost plaquettes, {rank_bad} rank failures"),
    ))
}

fn operator_algebra() -> Check {
    let rep = verify_dj_algebra(5)?;
    Ok((rep.ok(), format!("{} identities, worst {:.1e}", rep.identities.len(), rep.worst())))
}

fn family() -> Check {
    let rep = verify_family(3)?;
    let worst = rep.integer_time_errors.iter().copied().fold(0.0, f64::max);
    let ok = rep.ok()
        && worst <= 1e-9
        && rep.ground_degeneracy.iter().all(|&d| d == 4)
        && rep.electric_to_magnetic
        && rep.magnetic_to_electric;
    Ok((
        ok,
        format!(
            "max |H(r) - H^(r+2)| = {worst:.1e}, degeneracy {:?}, strings swapped {}",
            rep.ground_degeneracy,
            rep.electric_to_magnetic && rep.magnetic_to_electric
        ),
    ))
}

fn kekule_gap() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let j = CouplingVector::sample(&mut rng, 0.05)?;
        let exact = gap_formula(&j);
        worst = worst.max((kekule_bloch_gap(&j, 96)? - exact).abs() / exact);
    }
    let sym = kekule_bloch_gap(&CouplingVector::new(1.0, 1.0, 1.0)?, 96)?;
    Ok((worst <= 1e-3 && sym <= 1e-9, format!("max rel err {worst:.1e} over 10 couplings, symmetric-point gap {sym:.1e}")))
}

fn ring_rule() -> Check {
    let steps = 360;
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, vortex, want_open) in
        [(6, false, true), (10, false, true), (8, true, true), (12, true, true), (8, false, false), (12, false, false)]
    {
        let g = ring_min_gap(m, vortex, steps)?;
        ok &= if want_open { g > 0.05 } else { g <= 1e-6 };
        parts.push(format!("m={m}{} {g:.3}", if vortex { "+v" } else { "" }));
    }
    Ok((ok, format!("min gaps: {}", parts.join(", "))))
}

fn dimer_parity() -> Check {
    let mut cuts = 0;
    let mut bad = 0;
    for (w, h) in [(6, 24), (9, 30), (12, 36)] {
        for row in parity_scan(w, h)? {
            cuts += 1;
            if row.parity_difference != 1 {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{cuts} cut positions on 3 cylinders, {bad} with even difference")))
}

fn defect() -> Check {
    let spectra = [8, 10, 12].map(|l| defect_spectrum(l, 0.2));
    let mut e = Vec::new();
    let mut bulk = 0.0;
    for s in spectra {
        let s = s?;
        e.push(s.smallest);
        bulk = s.bulk_gap;
    }
    let decreasing = e.windows(2).all(|w| w[1] < w[0]);
    let small = e[2] < 0.1 * bulk;
    Ok((decreasing && small, format!("smallest energies L=8,10,12: {:.2e} {:.2e} {:.2e}, bulk gap {bulk:.2}", e[0], e[1], e[2])))
}

#[test]
fn acceptance_criteria() {
    let results = vec![
        run(1, "KW matrix elements", MINUTE, kw_matrix_elements),
        run(2, "KW sign laws", SECONDS, kw_sign_laws),
        run(3, "ISG reproduction", MINUTE, || isg_and_products(false)),
        run(4, "Product constraints", MINUTE, || isg_and_products(true)),
        run(5, "Logical interchange", MINUTE, logical_interchange),
        run(6, "Encoded-qubit count", MINUTE, encoded_qubits),
        run(7, "Honeycomb code", MINUTE, honeycomb),
        run(8, "Operator algebra", SECONDS, operator_algebra),
        run(9, "Family check", MINUTE, family),
        run(10, "Kekule gap", SECONDS, kekule_gap),
        run(11, "Ring mod-4 rule", SECONDS, ring_rule),
        run(12, "Dimer parity", MINUTE, dimer_parity),
        run(13, "Defect bound mode", MINUTE, defect),
    ];
    let failed: Vec<String> =
        results.iter().filter(|r| !r.passed).map(|r| format!("{}. {}: {}", r.id, r.title, r.detail)).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
