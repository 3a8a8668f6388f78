//! Measurement-based Kramers–Wannier plaquette channel.
//!
//! A plaquette's 2N boundary qubits are labelled `a_1 … a_{2N}` in
//! counter-clockwise order. Odd-labelled qubits carry the incoming state,
//! even-labelled qubits receive the outgoing one. The channel is specified
//! by its outcome-dependent matrix elements
//!
//! ```text
//! <a_even| KW_{r,m} |a_odd> ∝ Π_j (-1)^{(a_{2j+1}+r_{2j+1})(a_{2j}+a_{2j+2}+m_{2j}+r_{2j+2})}
//!                               · (-1)^{a_{2j}(m_{2j-1}+r_{2j-1}) + r_{2j-1} r_{2j}}
//! ```
//!
//! Two realizations drive any [`KwBackend`]: a gate-based reference circuit
//! with 2N scratch ancillas, and a compilation into one- and two-qubit Pauli
//! measurements plus Pauli corrections.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dense::StateVec;
use crate::error::{Error, Result};
use crate::lattice::HexTorus;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::{Policy, StabilizerTableau};

/// Outcome record of one channel application. Bit `k` (1-based in the
/// formulas) is stored at index `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWRecord {
    pub plaquette: usize,
    pub r: Vec<u8>,
    pub m: Vec<u8>,
}

impl KWRecord {
    pub fn zeros(plaquette: usize, n_half: usize) -> Self {
        KWRecord { plaquette, r: vec![0; 2 * n_half], m: vec![0; 2 * n_half] }
    }

    /// Pack a pattern index: bit `k-1` is `r_k`, bit `2N + k - 1` is `m_k`.
    pub fn from_pattern(plaquette: usize, n_half: usize, pattern: usize) -> Self {
        let n2 = 2 * n_half;
        KWRecord {
            plaquette,
            r: (0..n2).map(|k| ((pattern >> k) & 1) as u8).collect(),
            m: (0..n2).map(|k| ((pattern >> (n2 + k)) & 1) as u8).collect(),
        }
    }

    pub fn n_half(&self) -> usize {
        self.r.len() / 2
    }

    /// `r_k` with cyclic 1-based index.
    pub fn r_bit(&self, k: i64) -> bool {
        let n2 = self.r.len() as i64;
        self.r[(k - 1).rem_euclid(n2) as usize] == 1
    }

    /// `m_k` with cyclic 1-based index.
    pub fn m_bit(&self, k: i64) -> bool {
        let n2 = self.m.len() as i64;
        self.m[(k - 1).rem_euclid(n2) as usize] == 1
    }

    fn set(&mut self, tag: Tag, bit: bool) {
        match tag {
            Tag::R(k) => self.r[k - 1] = bit as u8,
            Tag::M(k) => self.m[k - 1] = bit as u8,
            Tag::Internal => {}
        }
    }

    fn get(&self, tag: Tag) -> Option<bool> {
        match tag {
            Tag::R(k) => Some(self.r[k - 1] == 1),
            Tag::M(k) => Some(self.m[k - 1] == 1),
            Tag::Internal => None,
        }
    }
}

fn sign_of(bit: bool) -> i8 {
    if bit {
        -1
    } else {
        1
    }
}

/// `(-1)^{Σ_j m_{2j} + r_{2j}}`: the measured value of `Π X_odd`.
pub fn kw_sign_measured(rec: &KWRecord) -> i8 {
    let n = rec.n_half() as i64;
    sign_of((1..=n).fold(false, |acc, j| acc ^ rec.m_bit(2 * j) ^ rec.r_bit(2 * j)))
}

/// `(-1)^{Σ_j m_{2j-1} + r_{2j-1}}`: the prepared value of `Π X_even`.
pub fn kw_sign_prepared(rec: &KWRecord) -> i8 {
    let n = rec.n_half() as i64;
    sign_of((1..=n).fold(false, |acc, j| acc ^ rec.m_bit(2 * j - 1) ^ rec.r_bit(2 * j - 1)))
}

/// Sign of the matrix element `<a_out|KW_{r,m}|a_in>`, with `a_out[j-1] =
/// a_{2j}` and `a_in[j] = a_{2j+1}` (so `a_in[0] = a_1`).
pub fn kw_matrix_element(a_out: &[bool], a_in: &[bool], rec: &KWRecord) -> i8 {
    let n = rec.n_half() as i64;
    assert_eq!(a_out.len() as i64, n);
    assert_eq!(a_in.len() as i64, n);
    // a(k) for 1-based cyclic k.
    let a = |k: i64| -> bool {
        let k = (k - 1).rem_euclid(2 * n) + 1;
        if k % 2 == 0 {
            a_out[(k / 2 - 1) as usize]
        } else {
            a_in[((k - 1) / 2) as usize]
        }
    };
    let (r, m) = (|k| rec.r_bit(k), |k| rec.m_bit(k));
    let mut e = false;
    for j in 1..=n {
        e ^= (a(2 * j + 1) ^ r(2 * j + 1)) & (a(2 * j) ^ a(2 * j + 2) ^ m(2 * j) ^ r(2 * j + 2));
        e ^= a(2 * j) & (m(2 * j - 1) ^ r(2 * j - 1));
        e ^= r(2 * j - 1) & r(2 * j);
    }
    sign_of(e)
}

/// Role assignment of the qubits touched by one channel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaquetteIO {
    pub plaquette: usize,
    /// `a_1 … a_{2N}` in counter-clockwise order.
    pub ring: Vec<usize>,
}

impl PlaquetteIO {
    /// For a type-r plaquette, odd roles are its type-(r+1) boundary edges and
    /// `a_1` is the one with the smallest id.
    pub fn for_plaquette(h: &HexTorus, p: usize) -> Result<Self> {
        let pl = h.plaquette(p)?;
        let (edges, r) = (pl.boundary_edges, pl.color);
        let start = (0..6)
            .filter(|&k| h.edges[edges[k]].edge_type == (r + 1) % 3)
            .min_by_key(|&k| edges[k])
            .expect("hexagon has odd-role edges");
        let ring = (0..6).map(|i| edges[(start + i) % 6]).collect();
        Ok(PlaquetteIO { plaquette: p, ring })
    }

    /// Generic ring on the given qubits.
    pub fn ring(plaquette: usize, ring: Vec<usize>) -> Self {
        PlaquetteIO { plaquette, ring }
    }

    pub fn n_half(&self) -> usize {
        self.ring.len() / 2
    }

    /// `a_k`, 1-based and cyclic.
    pub fn a(&self, k: i64) -> usize {
        let n2 = self.ring.len() as i64;
        self.ring[(k - 1).rem_euclid(n2) as usize]
    }

    /// Incoming qubits `a_1, a_3, …`.
    pub fn odd(&self) -> Vec<usize> {
        self.ring.iter().step_by(2).copied().collect()
    }

    /// Outgoing qubits `a_2, a_4, …`.
    pub fn even(&self) -> Vec<usize> {
        self.ring.iter().skip(1).step_by(2).copied().collect()
    }

    /// Qubits left decoupled in the X basis: in this realization the
    /// incoming (odd) qubits, which are measured out.
    pub fn b_role(&self) -> Vec<usize> {
        self.odd()
    }
}

/// Which record bit a measurement feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    R(usize),
    M(usize),
    Internal,
}

/// Minimal instruction set needed by the channel realizations.
pub trait KwBackend {
    /// Measure the product of the listed single-qubit Paulis; returns the
    /// outcome bit (`true` for `-1`).
    fn measure(&mut self, support: &[(usize, Pauli)], tag: Tag) -> Result<bool>;
    fn h(&mut self, q: usize);
    fn cz(&mut self, a: usize, b: usize);
    fn cnot(&mut self, c: usize, t: usize);
    fn x(&mut self, q: usize);
    fn z(&mut self, q: usize);
}

/// Which realization to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Reference,
    MeasurementOnly,
}

/// Gate-based reference circuit. Ancillas must start in `|0>` and are
/// returned to `|0>`. Needs `2N` ancillas.
pub fn run_reference<B: KwBackend>(b: &mut B, io: &PlaquetteIO, anc: &[usize]) -> Result<KWRecord> {
    let n = io.n_half() as i64;
    if anc.len() < 2 * n as usize {
        return Err(Error::InvalidArgument(format!("reference channel needs {} ancillas", 2 * n)));
    }
    let q = |k: i64| anc[(k - 1) as usize];
    let mut rec = KWRecord::zeros(io.plaquette, n as usize);
    for j in 1..=n {
        let bit = b.measure(&[(io.a(2 * j), Pauli::X)], Tag::M((2 * j - 1) as usize))?;
        rec.set(Tag::M((2 * j - 1) as usize), bit);
    }
    for k in 1..=2 * n {
        b.h(q(k));
    }
    for j in 1..=n {
        b.cz(q(2 * j), io.a(2 * j - 1));
        b.cnot(q(2 * j - 1), io.a(2 * j - 1));
        b.cz(q(2 * j - 1), io.a(2 * j));
    }
    for j in 1..=n {
        b.cz(io.a(2 * j), io.a(2 * j - 1));
        b.cz(io.a(2 * j), io.a(2 * j + 1));
    }
    for j in 1..=n {
        let tag = Tag::M((2 * j) as usize);
        let bit = b.measure(&[(io.a(2 * j + 1), Pauli::X)], tag)?;
        rec.set(tag, bit);
    }
    for k in 1..=2 * n {
        let tag = Tag::R(k as usize);
        let bit = b.measure(&[(q(k), Pauli::Z)], tag)?;
        rec.set(tag, bit);
        if bit {
            b.x(q(k));
        }
    }
    Ok(rec)
}

fn prepare_plus<B: KwBackend>(b: &mut B, q: usize) -> Result<()> {
    if b.measure(&[(q, Pauli::X)], Tag::Internal)? {
        b.z(q);
    }
    Ok(())
}

/// Random bit from a Z measurement of a fresh `|+>` ancilla, which is then
/// returned to `|0>`.
fn coin<B: KwBackend>(b: &mut B, anc: usize, tag: Tag) -> Result<bool> {
    prepare_plus(b, anc)?;
    let bit = b.measure(&[(anc, Pauli::Z)], tag)?;
    if bit {
        b.x(anc);
    }
    Ok(bit)
}

/// `CZ(c, t)` by measurements `Z_c Z_a`, `X_a Z_t`, `Z_a` on a `|+>`
/// ancilla followed by the Pauli frame fix `Z_c^{s2} Z_t^{s1+s3}`.
fn cz_by_measurement<B: KwBackend>(b: &mut B, c: usize, t: usize, anc: usize) -> Result<()> {
    prepare_plus(b, anc)?;
    let s1 = b.measure(&[(c, Pauli::Z), (anc, Pauli::Z)], Tag::Internal)?;
    let s2 = b.measure(&[(anc, Pauli::X), (t, Pauli::Z)], Tag::Internal)?;
    let s3 = b.measure(&[(anc, Pauli::Z)], Tag::Internal)?;
    if s2 {
        b.z(c);
    }
    if s1 ^ s3 {
        b.z(t);
    }
    if s3 {
        b.x(anc);
    }
    Ok(())
}

/// The same channel compiled to one- and two-qubit Pauli measurements and
/// Pauli corrections. Needs one ancilla.
pub fn run_measurement_only<B: KwBackend>(b: &mut B, io: &PlaquetteIO, anc: &[usize]) -> Result<KWRecord> {
    let n = io.n_half() as i64;
    let Some(&a0) = anc.first() else {
        return Err(Error::InvalidArgument("measurement-only channel needs one ancilla".into()));
    };
    let mut rec = KWRecord::zeros(io.plaquette, n as usize);
    for j in 1..=n {
        let tag = Tag::M((2 * j - 1) as usize);
        let bit = b.measure(&[(io.a(2 * j), Pauli::X)], tag)?;
        rec.set(tag, bit);
    }
    for j in 1..=n {
        let tag = Tag::R((2 * j) as usize);
        let bit = coin(b, a0, tag)?;
        rec.set(tag, bit);
        if bit {
            b.z(io.a(2 * j - 1));
        }
        let tag = Tag::R((2 * j - 1) as usize);
        let bit = coin(b, a0, tag)?;
        rec.set(tag, bit);
        if bit {
            b.x(io.a(2 * j - 1));
            b.z(io.a(2 * j));
        }
    }
    for j in 1..=n {
        cz_by_measurement(b, io.a(2 * j), io.a(2 * j - 1), a0)?;
        cz_by_measurement(b, io.a(2 * j), io.a(2 * j + 1), a0)?;
    }
    for j in 1..=n {
        let tag = Tag::M((2 * j) as usize);
        let bit = b.measure(&[(io.a(2 * j + 1), Pauli::X)], tag)?;
        rec.set(tag, bit);
    }
    Ok(rec)
}

pub fn run_realization<B: KwBackend>(
    b: &mut B,
    io: &PlaquetteIO,
    anc: &[usize],
    realization: Realization,
) -> Result<KWRecord> {
    match realization {
        Realization::Reference => run_reference(b, io, anc),
        Realization::MeasurementOnly => run_measurement_only(b, io, anc),
    }
}

/// Where measurement outcomes come from.
#[derive(Clone, Copy, Debug)]
pub enum OutcomeSource<'a> {
    Policy(Policy),
    /// Record bits are forced to the given record; internal measurements use
    /// the fallback policy.
    Script(&'a KWRecord, Policy),
}

/// Tableau-backed executor.
pub struct TableauBackend<'a> {
    pub tableau: &'a mut StabilizerTableau,
    pub source: OutcomeSource<'a>,
}

impl KwBackend for TableauBackend<'_> {
    fn measure(&mut self, support: &[(usize, Pauli)], tag: Tag) -> Result<bool> {
        let n = self.tableau.num_qubits();
        let mut p = PauliString::identity(n);
        for &(q, l) in support {
            p.set(q, l);
        }
        let m = match self.source {
            OutcomeSource::Policy(pol) => self.tableau.measure(&p, pol)?,
            OutcomeSource::Script(rec, pol) => match rec.get(tag) {
                Some(bit) => self.tableau.measure_forced(&p, sign_of(bit))?,
                None => self.tableau.measure(&p, pol)?,
            },
        };
        Ok(m.bit())
    }
    fn h(&mut self, q: usize) {
        self.tableau.h(q)
    }
    fn cz(&mut self, a: usize, b: usize) {
        self.tableau.cz(a, b)
    }
    fn cnot(&mut self, c: usize, t: usize) {
        self.tableau.cnot(c, t)
    }
    fn x(&mut self, q: usize) {
        self.tableau.x(q)
    }
    fn z(&mut self, q: usize) {
        self.tableau.z(q)
    }
}

/// Statevector executor with scripted, unnormalised projections. Internal
/// measurements are resolved with a seeded coin weighted by the Born rule.
pub struct DenseBackend<'a, R: Rng> {
    pub state: StateVec,
    pub script: &'a KWRecord,
    pub rng: R,
}

impl<R: Rng> KwBackend for DenseBackend<'_, R> {
    fn measure(&mut self, support: &[(usize, Pauli)], tag: Tag) -> Result<bool> {
        let mut p = PauliString::identity(self.state.n);
        for &(q, l) in support {
            p.set(q, l);
        }
        let bit = match self.script.get(tag) {
            Some(bit) => bit,
            None => {
                let total = self.state.norm_sqr();
                let mut plus = self.state.clone();
                plus.project(&p, false);
                let pr = if total > 0.0 { plus.norm_sqr() / total } else { 1.0 };
                self.rng.gen::<f64>() >= pr
            }
        };
        self.state.project(&p, bit);
        Ok(bit)
    }
    fn h(&mut self, q: usize) {
        self.state.h(q)
    }
    fn cz(&mut self, a: usize, b: usize) {
        self.state.cz(a, b)
    }
    fn cnot(&mut self, c: usize, t: usize) {
        self.state.cnot(c, t)
    }
    fn x(&mut self, q: usize) {
        self.state.x(q)
    }
    fn z(&mut self, q: usize) {
        self.state.z(q)
    }
}

/// Apply the reference channel on a tableau with the given policy.
pub fn apply_kw(
    t: &mut StabilizerTableau,
    io: &PlaquetteIO,
    anc: &[usize],
    policy: Policy,
    realization: Realization,
) -> Result<KWRecord> {
    let mut b = TableauBackend { tableau: t, source: OutcomeSource::Policy(policy) };
    run_realization(&mut b, io, anc, realization)
}

/// Apply a channel with record bits forced to `rec`.
pub fn apply_kw_scripted(
    t: &mut StabilizerTableau,
    io: &PlaquetteIO,
    anc: &[usize],
    rec: &KWRecord,
    realization: Realization,
) -> Result<KWRecord> {
    let mut b = TableauBackend { tableau: t, source: OutcomeSource::Script(rec, Policy::Random) };
    run_realization(&mut b, io, anc, realization)
}

/// Which commutation law a sign check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignLaw {
    /// `KW X_{2j+1} = (-1)^{m_{2j}+r_{2j+2}} Z_{2j} Z_{2j+2} KW`
    XToZz,
    /// `KW Z_{2j-1} Z_{2j+1} = (-1)^{m_{2j-1}+r_{2j+1}} X_{2j} KW`
    ZzToX,
    /// Measured `Π X_odd`.
    MeasuredProduct,
    /// Prepared `Π X_even`.
    PreparedProduct,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignLawFailure {
    pub seed: u64,
    pub law: SignLaw,
    pub j: usize,
    pub expected: i8,
    pub got: Option<i8>,
}

/// Run the channel on an isolated `2n`-qubit ring whose incoming qubits are
/// in a random-sign X-basis (`x_basis`) or Z-basis product state, and check
/// every signed operator the commutation laws predict on the output.
pub fn check_sign_laws(n: usize, seed: u64, x_basis: bool, realization: Realization) -> Result<Vec<SignLawFailure>> {
    use rand::SeedableRng;
    let io = PlaquetteIO::ring(0, (0..2 * n).collect());
    let anc: Vec<usize> = (2 * n..4 * n).collect();
    let total = 4 * n;
    let mut t = StabilizerTableau::zero_state(total, seed);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    // flips[j] for incoming qubit a_{2j+1}
    let flips: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    for (j, &f) in flips.iter().enumerate() {
        let q = io.a(2 * j as i64 + 1);
        if x_basis {
            t.h(q);
            if f {
                t.z(q);
            }
        } else if f {
            t.x(q);
        }
    }
    for j in 1..=n as i64 {
        if rng.gen() {
            t.h(io.a(2 * j));
        }
    }
    let rec = apply_kw(&mut t, &io, &anc, Policy::Random, realization)?;
    let (r, m) = (|k| rec.r_bit(k), |k| rec.m_bit(k));
    let flip = |j: i64| flips[(j.rem_euclid(n as i64)) as usize];
    let mut failures = Vec::new();
    if x_basis {
        let parity = flips.iter().fold(false, |a, &f| a ^ f);
        let got = kw_sign_measured(&rec);
        if got != sign_of(parity) {
            let law = SignLaw::MeasuredProduct;
            failures.push(SignLawFailure { seed, law, j: 0, expected: sign_of(parity), got: Some(got) });
        }
    }
    let mut expect = |law, j: usize, op: PauliString, sign_bit: bool| -> Result<()> {
        let expected = sign_of(sign_bit);
        let got = t.peek(&op)?;
        if got != Some(expected) {
            failures.push(SignLawFailure { seed, law, j, expected, got });
        }
        Ok(())
    };
    if x_basis {
        for j in 0..n as i64 {
            // X_{2j+1} has sign flip(j) on the input.
            let op = PauliString::z_on(total, &[io.a(2 * j), io.a(2 * j + 2)]);
            expect(SignLaw::XToZz, j as usize, op, flip(j) ^ m(2 * j) ^ r(2 * j + 2))?;
        }
    } else {
        for j in 1..=n as i64 {
            // Z_{2j-1} Z_{2j+1}: input flips j-1 and j.
            let op = PauliString::x_on(total, &[io.a(2 * j)]);
            expect(SignLaw::ZzToX, j as usize, op, flip(j - 1) ^ flip(j) ^ m(2 * j - 1) ^ r(2 * j + 1))?;
        }
    }
    let evens: Vec<usize> = (1..=n as i64).map(|j| io.a(2 * j)).collect();
    expect(SignLaw::PreparedProduct, 0, PauliString::x_on(total, &evens), kw_sign_prepared(&rec) < 0)?;
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_record() {
        let rec = KWRecord::zeros(0, 3);
        assert_eq!((kw_sign_measured(&rec), kw_sign_prepared(&rec)), (1, 1));
        assert_eq!(kw_matrix_element(&[false; 3], &[false; 3], &rec), 1);
        assert_eq!(kw_matrix_element(&[false; 3], &[true, false, false], &rec), 1);
    }

    #[test]
    fn single_bit_signs() {
        let mut rec = KWRecord::zeros(0, 3);
        rec.m[1] = 1; // m_2
        assert_eq!((kw_sign_measured(&rec), kw_sign_prepared(&rec)), (-1, 1));
        for k in [1usize, 3, 5] {
            let mut rec = KWRecord::zeros(0, 3);
            rec.r[k - 1] = 1;
            assert_eq!((kw_sign_measured(&rec), kw_sign_prepared(&rec)), (1, -1));
        }
    }

    #[test]
    fn record_json_shape() {
        let rec = KWRecord::from_pattern(4, 3, 0b1000_0000_0001);
        let js = serde_json::to_string(&rec).unwrap();
        assert_eq!(js, r#"{"plaquette":4,"r":[1,0,0,0,0,0],"m":[0,0,0,0,0,1]}"#);
    }

    #[test]
    fn plaquette_roles_alternate() {
        let h = HexTorus::new(2, 2).unwrap();
        for p in 0..h.num_plaquettes() {
            let io = PlaquetteIO::for_plaquette(&h, p).unwrap();
            let r = h.plaquettes[p].color;
            for (i, &e) in io.ring.iter().enumerate() {
                let want = if i % 2 == 0 { (r + 1) % 3 } else { (r + 2) % 3 };
                assert_eq!(h.edges[e].edge_type, want);
            }
            assert_eq!(io.a(1), *io.odd().iter().min().unwrap());
        }
    }
}
