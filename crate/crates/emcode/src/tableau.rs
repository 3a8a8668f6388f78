//! Mixed-state stabilizer tableau.
//!
//! The tableau keeps a full symplectic basis of `2n` rows grouped in pairs.
//! The first `k` pairs are (stabilizer, destabilizer); the remaining `n - k`
//! pairs span the logical (undetermined) degrees of freedom. A maximally mixed
//! state has `k = 0`. Within a pair the two rows anticommute; rows from
//! different pairs commute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Undetermined outcomes are drawn from the tableau's seeded generator.
    Random,
    /// Undetermined outcomes are post-selected to `+1`.
    ForcePlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Determinism {
    Deterministic,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `+1` or `-1`.
    pub outcome: i8,
    pub determinism: Determinism,
}

impl Measurement {
    /// Outcome as a GF(2) bit (`true` for `-1`).
    pub fn bit(&self) -> bool {
        self.outcome < 0
    }

    pub fn is_deterministic(&self) -> bool {
        self.determinism == Determinism::Deterministic
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerTableau {
    n: usize,
    k: usize,
    a: Vec<PauliString>,
    b: Vec<PauliString>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl StabilizerTableau {
    /// Maximally mixed state on `n` qubits.
    pub fn maximally_mixed(n: usize, seed: u64) -> Self {
        let a = (0..n).map(|q| PauliString::single(n, q, Pauli::X)).collect();
        let b = (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect();
        StabilizerTableau { n, k: 0, a, b, seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// The computational basis state `|0…0>`.
    pub fn zero_state(n: usize, seed: u64) -> Self {
        let a = (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect();
        let b = (0..n).map(|q| PauliString::single(n, q, Pauli::X)).collect();
        StabilizerTableau { n, k: n, a, b, seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// The state stabilized by exactly the given signed generators.
    pub fn from_stabilizers(n: usize, gens: &[PauliString], seed: u64) -> Result<Self> {
        let mut t = Self::maximally_mixed(n, seed);
        for g in gens {
            t.measure_forced(g, g.sign()?)?;
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Current stabilizer generators (independent, mutually commuting).
    pub fn stabilizers(&self) -> &[PauliString] {
        &self.a[..self.k]
    }

    pub fn destabilizers(&self) -> &[PauliString] {
        &self.b[..self.k]
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    fn check_len(&self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: p.num_qubits() });
        }
        Ok(())
    }

    /// Sign of `p` if it is (up to sign) in the stabilizer group, else `None`.
    pub fn peek(&self, p: &PauliString) -> Result<Option<i8>> {
        self.check_len(p)?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.to_string()));
        }
        if self.a.iter().chain(self.b[self.k..].iter()).any(|r| !r.commutes_unchecked(p)) {
            return Ok(None);
        }
        Ok(Some(self.determined_sign(p)))
    }

    /// `p` must commute with every row except possibly destabilizers.
    fn determined_sign(&self, p: &PauliString) -> i8 {
        let mut acc = PauliString::identity(self.n);
        for i in 0..self.k {
            if !self.b[i].commutes_unchecked(p) {
                acc.mul_assign_unchecked(&self.a[i]);
            }
        }
        debug_assert_eq!(acc.letters(), p.letters());
        if acc.phase() == p.phase() {
            1
        } else {
            -1
        }
    }

    pub fn measure(&mut self, p: &PauliString, policy: Policy) -> Result<Measurement> {
        self.measure_with(p, |rng| match policy {
            Policy::Random => Ok(if rng.gen::<bool>() { -1 } else { 1 }),
            Policy::ForcePlus => Ok(1),
        })
    }

    /// Measure with a scripted outcome. Fails if `outcome` contradicts a
    /// deterministic result.
    pub fn measure_forced(&mut self, p: &PauliString, outcome: i8) -> Result<Measurement> {
        let m = self.measure_with(p, |_| Ok(outcome))?;
        if m.outcome != outcome {
            return Err(Error::ForcedOutcomeConflict { forced: outcome, determined: m.outcome });
        }
        Ok(m)
    }

    fn measure_with(
        &mut self,
        p: &PauliString,
        choose: impl FnOnce(&mut ChaCha8Rng) -> Result<i8>,
    ) -> Result<Measurement> {
        self.check_len(p)?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.to_string()));
        }
        let pivot = (0..self.k)
            .find(|&i| !self.a[i].commutes_unchecked(p))
            .map(|i| (i, false))
            .or_else(|| {
                (self.k..self.n).find_map(|i| {
                    if !self.a[i].commutes_unchecked(p) {
                        Some((i, false))
                    } else if !self.b[i].commutes_unchecked(p) {
                        Some((i, true))
                    } else {
                        None
                    }
                })
            });
        let Some((i, q_is_b)) = pivot else {
            return Ok(Measurement {
                outcome: self.determined_sign(p),
                determinism: Determinism::Deterministic,
            });
        };
        let outcome = choose(&mut self.rng)?;
        let q = if q_is_b { self.b[i].clone() } else { self.a[i].clone() };
        for j in 0..self.n {
            if j != i {
                if !self.a[j].commutes_unchecked(p) {
                    self.a[j].mul_assign_unchecked(&q);
                }
                if !self.b[j].commutes_unchecked(p) {
                    self.b[j].mul_assign_unchecked(&q);
                }
            }
        }
        let mut newp = p.clone();
        if outcome < 0 {
            newp.negate();
        }
        self.b[i] = q;
        self.a[i] = newp;
        if i >= self.k {
            self.a.swap(i, self.k);
            self.b.swap(i, self.k);
            self.k += 1;
        }
        Ok(Measurement { outcome, determinism: Determinism::Random })
    }

    fn for_rows(&mut self, mut f: impl FnMut(&mut PauliString)) {
        self.a.iter_mut().chain(self.b.iter_mut()).for_each(&mut f);
    }

    pub fn h(&mut self, q: usize) {
        self.for_rows(|r| r.conj_h(q));
    }

    pub fn s(&mut self, q: usize) {
        self.for_rows(|r| r.conj_s(q));
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        self.for_rows(|r| r.conj_cnot(c, t));
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        self.for_rows(|r| r.conj_cz(a, b));
    }

    /// Apply a Pauli operator to the state.
    pub fn apply_pauli(&mut self, p: &PauliString) {
        self.for_rows(|r| r.conj_pauli(p));
    }

    pub fn x(&mut self, q: usize) {
        self.apply_pauli(&PauliString::single(self.n, q, Pauli::X));
    }

    pub fn z(&mut self, q: usize) {
        self.apply_pauli(&PauliString::single(self.n, q, Pauli::Z));
    }

    /// Measure `Z_q` and flip to `|0>`; returns the pre-reset measurement.
    pub fn measure_z_and_reset(&mut self, q: usize, policy: Policy) -> Result<Measurement> {
        let m = self.measure(&PauliString::single(self.n, q, Pauli::Z), policy)?;
        if m.outcome < 0 {
            self.x(q);
        }
        Ok(m)
    }

    /// Put qubit `q` into `|+>` regardless of its current state.
    pub fn reset_plus(&mut self, q: usize) -> Result<()> {
        let m = self.measure(&PauliString::single(self.n, q, Pauli::X), Policy::ForcePlus)?;
        if m.outcome < 0 {
            self.z(q);
        }
        Ok(())
    }

    /// Canonical generator matrix of the stabilizer group.
    pub fn canonicalize(&self) -> Vec<PauliString> {
        canonical_form(self.stabilizers())
    }

    /// The subgroup of stabilizers supported on the first `m` qubits,
    /// truncated to `m` qubits and canonicalized.
    pub fn restricted_group(&self, m: usize) -> Vec<PauliString> {
        restricted_subgroup(self.stabilizers(), m)
    }

    /// Line-based text form, one signed stabilizer per line.
    pub fn to_text(&self) -> String {
        to_text(&self.canonicalize())
    }
}

/// Column order for elimination: qubit `q` contributes `(q, x)` then `(q, z)`.
fn column_bit(p: &PauliString, col: (usize, bool)) -> bool {
    if col.1 {
        p.z_bit(col.0)
    } else {
        p.x_bit(col.0)
    }
}

/// Gaussian elimination over GF(2) with phase carry. Returns pivot columns;
/// independent rows are moved to the front and dependent rows dropped.
fn eliminate(rows: &mut Vec<PauliString>, cols: &[(usize, bool)], reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for (ci, &col) in cols.iter().enumerate() {
        let Some(pr) = (r..rows.len()).find(|&i| column_bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot_row = rows[r].clone();
        for i in 0..rows.len() {
            if i != r && (i > r || reduce_above) && column_bit(&rows[i], col) {
                rows[i].mul_assign_unchecked(&pivot_row);
            }
        }
        pivots.push(ci);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn standard_columns(n: usize) -> Vec<(usize, bool)> {
    (0..n).flat_map(|q| [(q, false), (q, true)]).collect()
}

/// Unique reduced row-echelon generating set (pivots ascending), signs kept.
pub fn canonical_form(gens: &[PauliString]) -> Vec<PauliString> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let mut rows = gens.to_vec();
    eliminate(&mut rows, &standard_columns(first.num_qubits()), true);
    rows
}

/// Number of independent generators.
pub fn group_rank(gens: &[PauliString]) -> usize {
    canonical_form(gens).len()
}

/// Equality of the signed groups generated by `a` and `b`.
pub fn groups_equal(a: &[PauliString], b: &[PauliString]) -> Result<bool> {
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        if x.num_qubits() != y.num_qubits() {
            return Err(Error::LengthMismatch { left: x.num_qubits(), right: y.num_qubits() });
        }
    }
    Ok(canonical_form(a) == canonical_form(b))
}

/// Subgroup of `⟨gens⟩` acting trivially outside the first `m` qubits.
pub fn restricted_subgroup(gens: &[PauliString], m: usize) -> Vec<PauliString> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.num_qubits();
    let mut cols: Vec<(usize, bool)> = (m..n).flat_map(|q| [(q, false), (q, true)]).collect();
    let scratch = cols.len();
    cols.extend(standard_columns(m));
    let mut rows = gens.to_vec();
    let pivots = eliminate(&mut rows, &cols, false);
    let kept: Vec<PauliString> = rows
        .iter()
        .zip(&pivots)
        .filter(|(_, &c)| c >= scratch)
        .map(|(r, _)| r.truncated(m))
        .collect();
    canonical_form(&kept)
}

/// Does `p` (up to sign) belong to `⟨gens⟩`? Returns its sign in the group.
pub fn sign_in_group(gens: &[PauliString], p: &PauliString) -> Option<i8> {
    let mut rows = canonical_form(gens);
    let n = p.num_qubits();
    let cols = standard_columns(n);
    let mut rem = p.clone();
    rem.set_phase(0);
    let mut acc = PauliString::identity(n);
    for row in rows.drain(..) {
        let lead = cols.iter().find(|&&c| column_bit(&row, c)).copied()?;
        if column_bit(&rem, lead) {
            rem.mul_assign_unchecked(&row);
            acc.mul_assign_unchecked(&row);
        }
    }
    if !rem.is_identity_up_to_phase() {
        return None;
    }
    // acc = ± p up to the phase of p.
    let diff = (acc.phase() + 4 - p.phase()) % 4;
    match diff {
        0 => Some(1),
        2 => Some(-1),
        _ => None,
    }
}

pub fn to_text(gens: &[PauliString]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

pub fn from_text(text: &str) -> Result<Vec<PauliString>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.replace('−', "-").parse())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn group(v: &[&str]) -> Vec<PauliString> {
        v.iter().map(|s| ps(s)).collect()
    }

    #[test]
    fn deterministic_measurement_keeps_tableau() {
        let mut t = StabilizerTableau::from_stabilizers(1, &group(&["Z"]), 0).unwrap();
        let m = t.measure(&ps("Z"), Policy::Random).unwrap();
        assert_eq!(m, Measurement { outcome: 1, determinism: Determinism::Deterministic });
        assert_eq!(t.to_text(), "+Z\n");
    }

    #[test]
    fn force_plus_on_x_state() {
        let mut t = StabilizerTableau::from_stabilizers(1, &group(&["X"]), 0).unwrap();
        let m = t.measure(&ps("Z"), Policy::ForcePlus).unwrap();
        assert_eq!(m.outcome, 1);
        assert_eq!(m.determinism, Determinism::Random);
        assert_eq!(t.to_text(), "+Z\n");
    }

    #[test]
    fn canonical_forms() {
        assert!(groups_equal(&group(&["ZZ", "ZI"]), &group(&["IZ", "ZI"])).unwrap());
        assert!(!groups_equal(&group(&["-Z"]), &group(&["Z"])).unwrap());
        assert!(groups_equal(&group(&["XX", "ZZ"]), &group(&["XX", "-YY"])).unwrap());
        assert!(!groups_equal(&group(&["XX", "ZZ"]), &group(&["XX", "YY"])).unwrap());
        assert_eq!(group_rank(&group(&["ZI", "IZ", "ZZ"])), 2);
        let c = canonical_form(&group(&["XXZ", "-ZZI", "IYY"]));
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn measuring_twice_is_deterministic() {
        let mut t = StabilizerTableau::maximally_mixed(3, 9);
        let p = ps("XYZ");
        let first = t.measure(&p, Policy::Random).unwrap();
        let second = t.measure(&p, Policy::Random).unwrap();
        assert_eq!(first.outcome, second.outcome);
        assert!(second.is_deterministic());
    }

    #[test]
    fn forced_conflict_is_an_error() {
        let mut t = StabilizerTableau::from_stabilizers(1, &group(&["Z"]), 0).unwrap();
        assert!(t.measure_forced(&ps("Z"), -1).is_err());
    }

    #[test]
    fn restricted_subgroup_drops_scratch() {
        // ⟨Z0 Z2, Z1 Z2, X0 X1 X2⟩ restricted to qubits {0,1} is ⟨Z0 Z1⟩.
        let g = group(&["ZIZ", "IZZ", "XXX"]);
        assert_eq!(restricted_subgroup(&g, 2), group(&["ZZ"]));
    }

    #[test]
    fn sign_lookup() {
        let g = group(&["XX", "ZZ"]);
        assert_eq!(sign_in_group(&g, &ps("YY")), Some(-1));
        assert_eq!(sign_in_group(&g, &ps("XI")), None);
    }

    #[test]
    fn text_round_trip() {
        let g = group(&["+XXI", "-IZZ"]);
        assert_eq!(from_text(&to_text(&g)).unwrap(), g);
        assert_eq!(from_text("−IZZ\n").unwrap(), group(&["-IZZ"]));
    }

    #[test]
    fn bell_pair_from_mixed() {
        let mut t = StabilizerTableau::maximally_mixed(2, 1);
        t.measure(&ps("XX"), Policy::ForcePlus).unwrap();
        t.measure(&ps("ZZ"), Policy::ForcePlus).unwrap();
        let m = t.measure(&ps("YY"), Policy::Random).unwrap();
        assert_eq!(m, Measurement { outcome: -1, determinism: Determinism::Deterministic });
        assert_eq!(t.rank(), 2);
    }
}
