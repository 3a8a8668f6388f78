//! The honeycomb code: one qubit per vertex, two-qubit checks `XX`, `YY`,
//! `ZZ` on edges of type 0, 1, 2, and round `t` measuring the type-`t mod 3`
//! checks.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::HexTorus;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::{Policy, StabilizerTableau};

pub fn check_letter(edge_type: usize) -> Pauli {
    match edge_type % 3 {
        0 => Pauli::X,
        1 => Pauli::Y,
        _ => Pauli::Z,
    }
}

#[derive(Clone, Debug)]
pub struct HoneycombCode {
    pub lattice: HexTorus,
    pub tableau: StabilizerTableau,
    pub round_index: usize,
    pub policy: Policy,
    /// `outcomes[t][e]`: outcome of check `e` at round `t`, if measured.
    pub outcomes: Vec<Vec<Option<i8>>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HoneycombReport {
    /// (plaquette, first round) pairs whose six-outcome product was `-1`
    /// although the plaquette was prefixed to `+1`, or that changed value.
    pub violations: Vec<(usize, usize)>,
    /// Number of (plaquette, round-pair) products checked.
    pub checked: usize,
}

impl HoneycombCode {
    /// Maximally mixed start; with `prefix_plaquettes` every plaquette
    /// stabilizer is first fixed to `+1`.
    pub fn new(l1: usize, l2: usize, policy: Policy, seed: u64, prefix_plaquettes: bool) -> Result<Self> {
        let lattice = HexTorus::new(l1, l2)?;
        let mut tableau = StabilizerTableau::maximally_mixed(lattice.num_vertices(), seed);
        if prefix_plaquettes {
            for p in 0..lattice.num_plaquettes() {
                let w = plaquette_operator(&lattice, p);
                // The plaquette products satisfy global relations, so later
                // ones may already be determined; they are then +1 as well.
                tableau.measure_forced(&w, 1)?;
            }
        }
        Ok(HoneycombCode { lattice, tableau, round_index: 0, policy, outcomes: Vec::new() })
    }

    pub fn num_qubits(&self) -> usize {
        self.lattice.num_vertices()
    }

    pub fn check(&self, e: usize) -> PauliString {
        check_operator(&self.lattice, e)
    }

    /// Measure every check of type `round_index mod 3`.
    pub fn run_round(&mut self) -> Result<()> {
        let r = self.round_index % 3;
        let mut row = vec![None; self.lattice.num_edges()];
        for e in self.lattice.edges_of_type(r) {
            let m = self.tableau.measure(&check_operator(&self.lattice, e), self.policy)?;
            row[e] = Some(m.outcome);
        }
        self.outcomes.push(row);
        self.round_index += 1;
        Ok(())
    }

    pub fn run_rounds(&mut self, k: usize) -> Result<()> {
        for _ in 0..k {
            self.run_round()?;
        }
        Ok(())
    }

    pub fn isg_rank(&self) -> usize {
        self.tableau.rank()
    }

    /// Product of a plaquette's six check outcomes from the two consecutive
    /// rounds `t, t+1` that measure its boundary types.
    pub fn plaquette_outcome_product(&self, p: usize, t: usize) -> Option<i8> {
        let mut s = 1i8;
        for round in [t, t + 1] {
            let row = self.outcomes.get(round)?;
            for &e in &self.lattice.plaquettes[p].boundary_edges {
                if self.lattice.edges[e].edge_type == round % 3 {
                    s *= row[e]?;
                }
            }
        }
        Some(s)
    }

    /// Check that every plaquette's two-round product is constant over the
    /// run (and equal to `expected` when given).
    pub fn verify_plaquettes(&self, expected: Option<i8>) -> HoneycombReport {
        let mut report = HoneycombReport::default();
        for p in 0..self.lattice.num_plaquettes() {
            let c = self.lattice.plaquettes[p].color;
            let mut first: Option<i8> = expected;
            for t in 0..self.outcomes.len().saturating_sub(1) {
                if t % 3 != (c + 1) % 3 {
                    continue;
                }
                let Some(v) = self.plaquette_outcome_product(p, t) else { continue };
                report.checked += 1;
                match first {
                    None => first = Some(v),
                    Some(f) if f != v => report.violations.push((p, t)),
                    _ => {}
                }
            }
        }
        report
    }

    /// Sign of the plaquette stabilizer if it is in the ISG.
    pub fn plaquette_value(&self, p: usize) -> Result<Option<i8>> {
        self.tableau.peek(&plaquette_operator(&self.lattice, p))
    }
}

pub fn check_operator(h: &HexTorus, e: usize) -> PauliString {
    let edge = &h.edges[e];
    PauliString::uniform(h.num_vertices(), &edge.vertices, check_letter(edge.edge_type))
}

/// `W_p`: the product of the type-(r+1) checks times the product of the
/// type-(r+2) checks around a type-r plaquette.
pub fn plaquette_operator(h: &HexTorus, p: usize) -> PauliString {
    let r = h.plaquettes[p].color;
    let mut w = PauliString::identity(h.num_vertices());
    for t in [r + 1, r + 2] {
        for e in h.boundary_edges_of_type(p, t) {
            w = w.mul(&check_operator(h, e)).expect("same register");
        }
    }
    w
}
