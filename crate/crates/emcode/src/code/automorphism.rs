//! The e↔m automorphism Floquet code: one qubit per edge, round `t` applies
//! the KW channel to every plaquette of colour `t mod 3`.
//!
//! After a round with `r = t mod 3` (and from round 2 on) the instantaneous
//! stabilizer group is the toric code on the colour-`(r+2)` superlattice:
//!
//! * six-Z "vertex" terms on the edges terminating on each `q ∈ P^(r-1)`,
//! * three-X "plaquette" terms on `∂p ∩ E^(r+2)` for `p ∈ P^(r) ∪ P^(r+1)`,
//! * single-X terms on the dead edges `E^(r) ⊔ E^(r+1)`.
//!
//! The ledger carries the sign of each such term, `None` while undefined.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kw::{apply_kw, kw_sign_measured, kw_sign_prepared, KWRecord, PlaquetteIO, Realization};
use crate::lattice::{Cycle, HexTorus};
use crate::pauli::PauliString;
use crate::tableau::{restricted_subgroup, Policy, StabilizerTableau};

/// Number of scratch ancillas appended after the edge qubits.
pub const SCRATCH: usize = 6;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SignLedger {
    /// Sign of the plaquette's current term (its meaning depends on the
    /// plaquette colour relative to the last round).
    pub plaquette: Vec<Option<i8>>,
    /// Sign of `X_e` for dead edges.
    pub dead: Vec<Option<i8>>,
    /// KW records of every round, in plaquette-id order.
    pub history: Vec<Vec<KWRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The measured `Π X_odd` disagrees with the previously prepared sign.
    MeasuredParity { round: usize, plaquette: usize, expected: i8, got: i8 },
    /// An X measurement on a dead edge disagrees with its recorded sign.
    DeadEdge { round: usize, edge: usize, expected: i8, got: i8 },
    /// A product-transfer identity fails for a colour class.
    Transfer { round: usize, color: usize, identity: &'static str },
    /// A global product of superlattice terms is not `+1`.
    GlobalProduct { round: usize, color: usize, terms: &'static str },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundProducts {
    pub round: usize,
    /// Product of all six-Z vertex terms, when all are defined.
    pub vertex_product: Option<i8>,
    /// Product of all three-X plaquette terms, when all are defined.
    pub plaquette_product: Option<i8>,
    /// Product of the measured signs of this round's channels.
    pub measured_product: i8,
    /// Product of the prepared signs of this round's channels.
    pub prepared_product: i8,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProductReport {
    pub rounds: Vec<RoundProducts>,
    pub violations: Vec<Violation>,
}

impl ProductReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn bit_sign(b: bool) -> i8 {
    if b {
        -1
    } else {
        1
    }
}

fn product(signs: impl Iterator<Item = Option<i8>>) -> Option<i8> {
    signs.fold(Some(1), |acc, s| Some(acc? * s?))
}

/// Position (1-based) of `edge` on a plaquette's KW ring.
fn ring_position(io: &PlaquetteIO, edge: usize) -> i64 {
    io.ring.iter().position(|&e| e == edge).expect("edge on ring") as i64 + 1
}

/// Push one round of records through the ledger. Returns the violations
/// found and the products observed.
fn ledger_step(
    h: &HexTorus,
    ios: &[PlaquetteIO],
    plaq: &mut [Option<i8>],
    dead: &mut [Option<i8>],
    round: usize,
    records: &[KWRecord],
) -> (Vec<Violation>, RoundProducts) {
    let r = round % 3;
    let mut violations = Vec::new();
    let by_plaquette = |p: usize| records.iter().find(|rec| rec.plaquette == p).expect("record for plaquette");

    let old_vertex_product = product(h.plaquettes_of_color(r + 2).into_iter().map(|q| plaq[q]));
    let old_g_product = product(h.plaquettes_of_color(r + 1).into_iter().map(|q| plaq[q]));

    // Measured parity and dead-edge consistency.
    for rec in records {
        let p = rec.plaquette;
        let got = kw_sign_measured(rec);
        if let Some(expected) = plaq[p] {
            if expected != got {
                violations.push(Violation::MeasuredParity { round, plaquette: p, expected, got });
            }
        }
        let io = &ios[p];
        for j in 1..=io.n_half() as i64 {
            let e = io.a(2 * j);
            let got = bit_sign(rec.m_bit(2 * j - 1));
            if let Some(expected) = dead[e] {
                if expected != got {
                    violations.push(Violation::DeadEdge { round, edge: e, expected, got });
                }
            }
        }
    }

    // Terms of the neighbouring colours pass through the channels. An edge
    // at ring position k contributes m_{k-1} + r_{k+1}.
    let transfer = |q: usize, edge_type: usize, plaq: &[Option<i8>]| -> Option<i8> {
        let mut s = plaq[q]?;
        for e in h.boundary_edges_of_type(q, edge_type) {
            let [a, b] = h.edges[e].sides;
            let other = if a == q { b } else { a };
            let rec = by_plaquette(other);
            let k = ring_position(&ios[other], e);
            s *= bit_sign(rec.m_bit(k - 1) ^ rec.r_bit(k + 1));
        }
        Some(s)
    };
    let f_updates: Vec<(usize, Option<i8>)> =
        h.plaquettes_of_color(r + 2).into_iter().map(|q| (q, transfer(q, r + 1, plaq))).collect();
    let g_updates: Vec<(usize, Option<i8>)> =
        h.plaquettes_of_color(r + 1).into_iter().map(|q| (q, transfer(q, r + 2, plaq))).collect();
    for (q, s) in f_updates.into_iter().chain(g_updates) {
        plaq[q] = s;
    }

    // The channel prepares fresh terms on its own plaquette and kills the
    // incoming edges.
    for rec in records {
        let p = rec.plaquette;
        plaq[p] = Some(kw_sign_prepared(rec));
        let io = &ios[p];
        for j in 1..=io.n_half() as i64 {
            dead[io.a(2 * j)] = None;
        }
        for j in 0..io.n_half() as i64 {
            dead[io.a(2 * j + 1)] = Some(bit_sign(rec.m_bit(2 * j)));
        }
    }

    let measured_product = records.iter().map(kw_sign_measured).product::<i8>();
    let prepared_product = records.iter().map(kw_sign_prepared).product::<i8>();
    let new_vertex_product = product(h.plaquettes_of_color(r + 2).into_iter().map(|q| plaq[q]));
    let new_g_product = product(h.plaquettes_of_color(r + 1).into_iter().map(|q| plaq[q]));
    if let (Some(old), Some(new)) = (old_vertex_product, new_vertex_product) {
        if new != old * measured_product {
            violations.push(Violation::Transfer { round, color: (r + 2) % 3, identity: "vertex" });
        }
    }
    if let (Some(old), Some(new)) = (old_g_product, new_g_product) {
        if new != old * prepared_product {
            violations.push(Violation::Transfer { round, color: (r + 1) % 3, identity: "plaquette" });
        }
    }

    let plaquette_product = product(
        h.plaquettes_of_color(r).into_iter().chain(h.plaquettes_of_color(r + 1)).map(|q| plaq[q]),
    );
    if let Some(s) = new_vertex_product {
        if s != 1 {
            violations.push(Violation::GlobalProduct { round, color: (r + 2) % 3, terms: "vertex" });
        }
    }
    if let Some(s) = plaquette_product {
        if s != 1 {
            violations.push(Violation::GlobalProduct { round, color: (r + 2) % 3, terms: "plaquette" });
        }
    }
    let products = RoundProducts {
        round,
        vertex_product: new_vertex_product,
        plaquette_product,
        measured_product,
        prepared_product,
    };
    (violations, products)
}

/// X-type ("electric") or Z-type ("magnetic") logical string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    Electric,
    Magnetic,
}

impl LoopKind {
    pub fn dual(self) -> LoopKind {
        match self {
            LoopKind::Electric => LoopKind::Magnetic,
            LoopKind::Magnetic => LoopKind::Electric,
        }
    }
}

/// A logical string on the active superlattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogicalLoop {
    pub kind: LoopKind,
    /// Homology class: the torus cycle the string winds along.
    pub cycle: Cycle,
    /// Superlattice colour the support lives on.
    pub color: usize,
    /// Edge ids.
    pub support: Vec<usize>,
}

impl LogicalLoop {
    /// Electric strings are X on a straight superlattice cycle; magnetic
    /// strings are Z on the edges cut by a dual cycle.
    pub fn new(h: &HexTorus, kind: LoopKind, cycle: Cycle, color: usize) -> Self {
        let sl = h.superlattice(color);
        let support = match kind {
            LoopKind::Electric => sl.straight_cycle(h, cycle, 0),
            LoopKind::Magnetic => sl.dual_cycle(h, cycle, 0),
        };
        LogicalLoop { kind, cycle, color: color % 3, support }
    }

    /// Contractible electric loop: X on the three superlattice edges
    /// bounding a face, i.e. one of the plaquette terms.
    pub fn contractible(h: &HexTorus, color: usize, face: usize) -> Self {
        let support = h.boundary_edges_of_type(face, color);
        LogicalLoop { kind: LoopKind::Electric, cycle: Cycle::B1, color: color % 3, support }
    }

    pub fn pauli(&self, n: usize) -> PauliString {
        match self.kind {
            LoopKind::Electric => PauliString::x_on(n, &self.support),
            LoopKind::Magnetic => PauliString::z_on(n, &self.support),
        }
    }
}

/// Outcome of the period protocol.
#[derive(Clone, Debug, Serialize)]
pub struct LogicalTrack {
    pub measured: LogicalLoop,
    pub outcome: i8,
    pub dual: LogicalLoop,
    /// Sign of the dual loop after one period, `None` if not determined.
    pub dual_value: Option<i8>,
    /// Sign of the original-type loop after a second period.
    pub restored_value: Option<i8>,
}

#[derive(Clone, Debug)]
pub struct EmCode {
    pub lattice: HexTorus,
    pub tableau: StabilizerTableau,
    pub round_index: usize,
    pub ledger: SignLedger,
    pub policy: Policy,
    pub realization: Realization,
    pub ios: Vec<PlaquetteIO>,
    ancillas: Vec<usize>,
    products: Vec<RoundProducts>,
    violations: Vec<Violation>,
}

impl EmCode {
    /// Maximally mixed start on the edges, scratch ancillas in `|0>`.
    pub fn new(l1: usize, l2: usize, policy: Policy, seed: u64) -> Result<Self> {
        Self::with_realization(l1, l2, policy, seed, Realization::Reference)
    }

    pub fn with_realization(
        l1: usize,
        l2: usize,
        policy: Policy,
        seed: u64,
        realization: Realization,
    ) -> Result<Self> {
        let lattice = HexTorus::new(l1, l2)?;
        let n = lattice.num_edges();
        let mut tableau = StabilizerTableau::maximally_mixed(n + SCRATCH, seed);
        let ancillas: Vec<usize> = (n..n + SCRATCH).collect();
        for &a in &ancillas {
            tableau.measure_forced(&PauliString::z_on(n + SCRATCH, &[a]), 1)?;
        }
        let ios = (0..lattice.num_plaquettes())
            .map(|p| PlaquetteIO::for_plaquette(&lattice, p))
            .collect::<Result<Vec<_>>>()?;
        let ledger = SignLedger {
            plaquette: vec![None; lattice.num_plaquettes()],
            dead: vec![None; n],
            history: Vec::new(),
        };
        Ok(EmCode {
            lattice,
            tableau,
            round_index: 0,
            ledger,
            policy,
            realization,
            ios,
            ancillas,
            products: Vec::new(),
            violations: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.lattice.num_edges()
    }

    /// Colour of the superlattice carrying the current toric code.
    pub fn active_color(&self) -> usize {
        (self.round_index + 1) % 3
    }

    /// One round: KW on every plaquette of colour `round_index mod 3`.
    pub fn run_round(&mut self) -> Result<Vec<KWRecord>> {
        let t = self.round_index;
        let mut records = Vec::new();
        for p in self.lattice.plaquettes_of_color(t % 3) {
            let rec = apply_kw(&mut self.tableau, &self.ios[p], &self.ancillas, self.policy, self.realization)?;
            records.push(rec);
        }
        let (v, prods) = ledger_step(
            &self.lattice,
            &self.ios,
            &mut self.ledger.plaquette,
            &mut self.ledger.dead,
            t,
            &records,
        );
        self.violations.extend(v);
        self.products.push(prods);
        self.ledger.history.push(records.clone());
        self.round_index += 1;
        Ok(records)
    }

    pub fn run_rounds(&mut self, k: usize) -> Result<()> {
        for _ in 0..k {
            self.run_round()?;
        }
        Ok(())
    }

    /// Violations seen while running (the tableau and ledger agree, so this
    /// is empty for a faithful simulation).
    pub fn live_violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Simulated ISG on the edge qubits, canonicalised.
    pub fn simulated_isg(&self) -> Vec<PauliString> {
        restricted_subgroup(self.tableau.stabilizers(), self.num_qubits())
    }

    pub fn isg_rank(&self) -> usize {
        self.simulated_isg().len()
    }

    /// Explicitly constructed signed generators predicted by the ledger.
    pub fn expected_isg(&self) -> Vec<PauliString> {
        expected_isg(&self.lattice, &self.ledger, self.round_index)
    }

    pub fn isg_matches(&self) -> bool {
        crate::tableau::canonical_form(&self.expected_isg()) == self.simulated_isg()
    }

    /// Replay the ledger from the raw records and check every constraint.
    pub fn verify_product_constraints(&self) -> ProductReport {
        replay(&self.lattice, &self.ios, &self.ledger.history)
    }

    pub fn logical(&self, kind: LoopKind, cycle: Cycle) -> LogicalLoop {
        LogicalLoop::new(&self.lattice, kind, cycle, self.active_color())
    }

    /// Measure `lp`, run one period, query the dual-type loop on the same
    /// homology cycle, then run a second period and query the original type.
    pub fn track_logical(&mut self, lp: &LogicalLoop) -> Result<LogicalTrack> {
        let n = self.tableau.num_qubits();
        let p = lp.pauli(n);
        if let Some(bad) = self.tableau.stabilizers().iter().find(|s| !s.commutes_unchecked(&p)) {
            return Err(Error::NotLogical(format!("{:?} loop anticommutes with {}", lp.kind, bad.letters())));
        }
        let outcome = self.tableau.measure(&p, self.policy)?.outcome;
        self.run_rounds(3)?;
        let dual = LogicalLoop::new(&self.lattice, lp.kind.dual(), lp.cycle, self.active_color());
        let dual_value = self.tableau.peek(&dual.pauli(n))?;
        self.run_rounds(3)?;
        let again = LogicalLoop::new(&self.lattice, lp.kind, lp.cycle, self.active_color());
        let restored_value = self.tableau.peek(&again.pauli(n))?;
        Ok(LogicalTrack { measured: lp.clone(), outcome, dual, dual_value, restored_value })
    }

    /// Apply a Pauli error to the edge qubits (fault injection for tests).
    pub fn inject_error(&mut self, error: &PauliString) -> Result<()> {
        let n = self.tableau.num_qubits();
        if error.num_qubits() > n {
            return Err(Error::LengthMismatch { left: error.num_qubits(), right: n });
        }
        self.tableau.apply_pauli(&error.extended(n));
        Ok(())
    }

    /// Sign of a loop if it is determined by the current state.
    pub fn peek_loop(&self, lp: &LogicalLoop) -> Result<Option<i8>> {
        self.tableau.peek(&lp.pauli(self.tableau.num_qubits()))
    }
}

/// Replay the ledger over a record history.
pub fn replay(h: &HexTorus, ios: &[PlaquetteIO], history: &[Vec<KWRecord>]) -> ProductReport {
    let mut plaq = vec![None; h.num_plaquettes()];
    let mut dead = vec![None; h.num_edges()];
    let mut report = ProductReport::default();
    for (t, records) in history.iter().enumerate() {
        let (v, prods) = ledger_step(h, ios, &mut plaq, &mut dead, t, records);
        report.violations.extend(v);
        report.rounds.push(prods);
    }
    report
}

/// Signed generators of the ISG after `rounds` rounds.
pub fn expected_isg(h: &HexTorus, ledger: &SignLedger, rounds: usize) -> Vec<PauliString> {
    let n = h.num_edges();
    let mut gens = Vec::new();
    if rounds == 0 {
        return gens;
    }
    let r = (rounds - 1) % 3;
    let sign = |s: i8| s < 0;
    for q in h.plaquettes_of_color(r + 2) {
        if let Some(s) = ledger.plaquette[q] {
            gens.push(PauliString::z_on(n, &h.plaquettes[q].terminating_edges).with_sign_bit(sign(s)));
        }
    }
    for p in h.plaquettes_of_color(r).into_iter().chain(h.plaquettes_of_color(r + 1)) {
        if let Some(s) = ledger.plaquette[p] {
            gens.push(PauliString::x_on(n, &h.boundary_edges_of_type(p, r + 2)).with_sign_bit(sign(s)));
        }
    }
    for (e, s) in ledger.dead.iter().enumerate() {
        if let Some(s) = s {
            gens.push(PauliString::x_on(n, &[e]).with_sign_bit(sign(*s)));
        }
    }
    gens
}
