//! The D / J operators and the period-3 toric-code Hamiltonian family on the
//! triangular torus.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::dense::{apply_local, c, identity, op_norm, pauli_matrix, CMat, StateVec, C64, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::lattice::TriTorus;
use crate::pauli::PauliString;
use crate::tableau::{canonical_form, group_rank};

/// `<a|D|b> = 2^{-N/2} (-1)^{Σ_j b_j (a_j + a_{j+1})}`, indices mod N, with
/// qubit `j` stored in bit `j`.
pub fn build_d(n: usize) -> Result<CMat> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("D needs N >= 2, got {n}")));
    }
    if n > DENSE_LIMIT / 2 {
        return Err(Error::DenseLimit(n));
    }
    let dim = 1 << n;
    let norm = 2f64.powf(-(n as f64) / 2.0);
    Ok(CMat::from_fn(dim, dim, |a, b| {
        let mut e = 0;
        for j in 0..n {
            let bj = (b >> j) & 1;
            let aj = (a >> j) & 1;
            let aj1 = (a >> ((j + 1) % n)) & 1;
            e ^= bj & (aj ^ aj1);
        }
        c(if e == 1 { -norm } else { norm })
    }))
}

/// `J = (D + Z_1 D Z_1) / √2` on three qubits.
pub fn build_j() -> CMat {
    let d = build_d(3).expect("N = 3");
    let z1 = pauli_matrix(&PauliString::z_on(3, &[0])).expect("3 qubits");
    (&d + &z1 * &d * &z1) * c(std::f64::consts::FRAC_1_SQRT_2)
}

/// Spectral factorisation `J = M Λ M†` of a normal matrix, with eigenphases
/// `α` taken in `(-π, π]`.
#[derive(Clone, Debug)]
pub struct Spectral {
    pub m: CMat,
    pub alpha: Vec<f64>,
}

impl Spectral {
    pub fn of_unitary(u: &CMat) -> Self {
        // H + cK is Hermitian with the same eigenvectors as U for a generic c.
        let gen = 0.618_033_988_749_894_9 * std::f64::consts::SQRT_2;
        let h = (u + u.adjoint()) * c(0.5);
        let k = (u - u.adjoint()) * C64::new(0.0, -0.5);
        let mix = &h + &k * c(gen);
        let eig = nalgebra::linalg::SymmetricEigen::new(mix);
        let m = eig.eigenvectors;
        let lam = m.adjoint() * u * &m;
        let alpha = (0..lam.nrows())
            .map(|i| {
                let a = lam[(i, i)].arg();
                if a <= -std::f64::consts::PI {
                    a + 2.0 * std::f64::consts::PI
                } else {
                    a
                }
            })
            .collect();
        Spectral { m, alpha }
    }

    pub fn lambda(&self) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.alpha.len(),
            self.alpha.iter().map(|&a| C64::from_polar(1.0, a)),
        ))
    }

    /// `J̃(t)`: identity for `t ≤ 0`, `J` for `t ≥ 1`, `M e^{itα} M†` between.
    pub fn interpolate(&self, t: f64) -> CMat {
        let t = t.clamp(0.0, 1.0);
        let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.alpha.len(),
            self.alpha.iter().map(|&a| C64::from_polar(1.0, t * a)),
        ));
        &self.m * d * self.m.adjoint()
    }
}

/// Terms of the commuting-Pauli Hamiltonian `H^(s)` on the triangular torus:
/// `-XXX` on up-triangles of colours `s` and `s+1`, and `-Z6` around each
/// up-triangle of colour `s+2`.
pub fn special_terms(tri: &TriTorus, s: usize) -> Vec<PauliString> {
    let n = tri.num_qubits();
    let l = tri.l as i64;
    let mut terms = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let color = (i - j).rem_euclid(3) as usize;
            if color == s % 3 || color == (s + 1) % 3 {
                terms.push(PauliString::x_on(n, &[tri.qubit(i, j), tri.qubit(i, j + 1), tri.qubit(i + 1, j)]));
            } else {
                terms.push(z6(tri, i, j));
            }
        }
    }
    terms
}

/// Z on the corners of up-triangle `(i, j)` and the far corners of its
/// three neighbouring down-triangles.
pub fn z6(tri: &TriTorus, i: i64, j: i64) -> PauliString {
    let qs = [
        tri.qubit(i, j),
        tri.qubit(i + 1, j),
        tri.qubit(i, j + 1),
        tri.qubit(i - 1, j + 1),
        tri.qubit(i + 1, j + 1),
        tri.qubit(i + 1, j - 1),
    ];
    PauliString::z_on(tri.num_qubits(), &qs)
}

/// `-Σ terms` as a real symmetric matrix.
pub fn local_hamiltonian(terms: &[PauliString]) -> Result<DMatrix<f64>> {
    let n = terms.first().map_or(0, |t| t.num_qubits());
    let dim = 1 << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for t in terms {
        let m = pauli_matrix(t)?;
        for (i, z) in m.iter().enumerate() {
            if z.im.abs() > 1e-15 {
                return Err(Error::InvalidArgument(format!("term {t} is not real")));
            }
            h[(i % dim, i / dim)] -= z.re;
        }
    }
    Ok(h)
}

/// Ground space of a real symmetric matrix: (energy, degeneracy, projector).
pub fn ground_space(h: &DMatrix<f64>, tol: f64) -> (f64, usize, CMat, f64) {
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let e0 = eig.eigenvalues[order[0]];
    let ground: Vec<usize> = order.iter().copied().filter(|&i| eig.eigenvalues[i] - e0 < tol).collect();
    let gap = order.iter().map(|&i| eig.eigenvalues[i] - e0).find(|&d| d >= tol).unwrap_or(0.0);
    let dim = h.nrows();
    let mut p = CMat::zeros(dim, dim);
    for &g in &ground {
        let v = eig.eigenvectors.column(g);
        for a in 0..dim {
            if v[a] == 0.0 {
                continue;
            }
            for b in 0..dim {
                p[(a, b)] += c(v[a] * v[b]);
            }
        }
    }
    (e0, ground.len(), p, gap)
}

/// Operator norm of `[P, Q]` for Pauli strings, computed column by column
/// on the dense matrices (both are monomial, so the largest column norm is
/// the operator norm).
pub fn commutator_norm(p: &PauliString, q: &PauliString) -> Result<f64> {
    let n = p.num_qubits();
    let mut worst = 0.0f64;
    for b in 0..1usize << n {
        let mut pq = StateVec::basis(n, b)?;
        pq.apply_pauli(q);
        pq.apply_pauli(p);
        let mut qp = StateVec::basis(n, b)?;
        qp.apply_pauli(p);
        qp.apply_pauli(q);
        let col: f64 = pq.amp.iter().zip(&qp.amp).map(|(a, b)| (a - b).norm_sqr()).sum();
        worst = worst.max(col.sqrt());
    }
    Ok(worst)
}

/// Read a dense matrix as `±P` for a Pauli string `P`, if it is one.
pub fn dense_to_pauli(m: &CMat, n: usize, tol: f64) -> Option<PauliString> {
    let dim = 1usize << n;
    let col0 = m.column(0);
    let row = (0..dim).find(|&i| col0[i].norm() > 0.5)?;
    let mut p = PauliString::identity(n);
    for q in 0..n {
        if (row >> q) & 1 == 1 {
            p.set_x_bit(q, true);
        }
    }
    // Z bits from the relative sign of column 2^q against column 0.
    let base = m[(row, 0)];
    for q in 0..n {
        let col = 1 << q;
        let r = row ^ col;
        let ratio = m[(r, col)] / base;
        if (ratio - c(-1.0)).norm() < tol {
            p.set_z_bit(q, true);
        }
    }
    // Fix the global phase: compare with the candidate matrix.
    for ph in 0..4u8 {
        let mut cand = p.clone();
        cand.set_phase((cand.phase() + ph) % 4);
        let pm = pauli_matrix(&cand).ok()?;
        if (&pm - m).iter().all(|z| z.norm() < tol) {
            return Some(cand);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub l: usize,
    /// `‖H(r) - H^(r+2 mod 3)‖` for `r = 0, 1, 2`, and period `‖H(3) - H(0)‖`.
    pub integer_time_errors: Vec<f64>,
    pub period_error: f64,
    pub ground_degeneracy: Vec<usize>,
    pub spectral_gap: Vec<f64>,
    pub max_term_commutator: f64,
    /// Rank of each special stabilizer group.
    pub group_rank: Vec<usize>,
    /// Electric string mapped to a magnetic one (and back) by `Ũ(3)`.
    pub electric_to_magnetic: bool,
    pub magnetic_to_electric: bool,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Left-multiply `m` by the layer applying `op` to every up-triangle of one
/// colour (triangles of one colour are disjoint).
fn apply_layer(tri: &TriTorus, color: usize, op: &CMat, m: &CMat) -> Result<CMat> {
    let n = tri.num_qubits();
    let tris = tri.triangles_of_color(color);
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let mut s = StateVec { n, amp: m.column(j).iter().copied().collect() };
        for t in &tris {
            apply_local(&mut s, op, t);
        }
        out.set_column(j, &nalgebra::DVector::from_vec(s.amp));
    }
    Ok(out)
}

/// The interpolating unitaries of the family on a given torus.
pub struct Family {
    pub tri: TriTorus,
    pub spectral: Spectral,
}

impl Family {
    pub fn new(l: usize) -> Result<Self> {
        let tri = TriTorus::new(l)?;
        if tri.num_qubits() > DENSE_LIMIT {
            return Err(Error::DenseLimit(tri.num_qubits()));
        }
        Ok(Family { tri, spectral: Spectral::of_unitary(&build_j()) })
    }

    /// `U(t) m` with `U(t) = J̃^{P2}(t-2) J̃^{P1}(t-1) J̃^{P0}(t)`, `t ∈ [0, 3]`.
    pub fn apply_u_period(&self, t: f64, m: &CMat) -> Result<CMat> {
        let mut out = m.clone();
        for color in 0..3 {
            let local = self.spectral.interpolate(t - color as f64);
            out = apply_layer(&self.tri, color, &local, &out)?;
        }
        Ok(out)
    }

    /// `Ũ(t) m` with `Ũ(t) = U(t mod 3) U(3)^{⌊t/3⌋}`.
    pub fn apply_u_tilde(&self, t: f64, m: &CMat) -> Result<CMat> {
        let k = (t / 3.0).floor();
        let mut out = m.clone();
        for _ in 0..k.max(0.0) as usize {
            out = self.apply_u_period(3.0, &out)?;
        }
        self.apply_u_period(t - 3.0 * k, &out)
    }

    pub fn u_tilde(&self, t: f64) -> Result<CMat> {
        self.apply_u_tilde(t, &identity(self.tri.num_qubits()))
    }

    /// `H(t) = Ũ(t) H^(2) Ũ(t)†` for Hermitian `h2`.
    pub fn hamiltonian_at(&self, t: f64, h2: &CMat) -> Result<CMat> {
        let a = self.apply_u_tilde(t, h2)?;
        self.apply_u_tilde(t, &a.adjoint())
    }
}

/// X bits (or Z bits) of a string, as a GF(2) row.
fn bits(p: &PauliString, z: bool) -> PauliString {
    let n = p.num_qubits();
    let mut out = PauliString::identity(n);
    for q in 0..n {
        let b = if z { p.z_bit(q) } else { p.x_bit(q) };
        out.set_x_bit(q, b);
    }
    out
}

/// Is `p` a nontrivial logical of `⟨gens⟩` whose coset contains a
/// `want_z`-type (pure Z if true, pure X otherwise) representative?
fn is_logical_of_type(gens: &[PauliString], p: &PauliString, want_z: bool) -> bool {
    if gens.iter().any(|g| !g.commutes_unchecked(p)) {
        return false;
    }
    let mut with = gens.to_vec();
    with.push(p.clone());
    if group_rank(&with) == group_rank(gens) {
        return false;
    }
    // The unwanted component must be cancellable by generators, whose
    // unwanted components we span.
    let span: Vec<PauliString> = gens.iter().map(|g| bits(g, !want_z)).filter(|b| !b.is_identity_up_to_phase()).collect();
    let target = bits(p, !want_z);
    if target.is_identity_up_to_phase() {
        return true;
    }
    let mut with = span.clone();
    with.push(target);
    group_rank(&with) == group_rank(&span)
}

/// Independent X-type (or Z-type) logicals of a CSS group on `n` qubits.
fn css_logicals(gens: &[PauliString], z_type: bool) -> Vec<PauliString> {
    let n = gens[0].num_qubits();
    let mut found: Vec<PauliString> = Vec::new();
    // Brute force over weight-ordered supports is fine at 9 qubits.
    let mut cands: Vec<usize> = (1..1usize << n).collect();
    cands.sort_by_key(|m| (m.count_ones(), *m));
    for mask in cands {
        let qs: Vec<usize> = (0..n).filter(|q| (mask >> q) & 1 == 1).collect();
        let p = if z_type { PauliString::z_on(n, &qs) } else { PauliString::x_on(n, &qs) };
        if gens.iter().any(|g| !g.commutes_unchecked(&p)) {
            continue;
        }
        let mut with = gens.to_vec();
        with.extend(found.iter().cloned());
        let before = group_rank(&with);
        with.push(p.clone());
        if group_rank(&with) > before {
            found.push(p);
            if found.len() == 2 {
                break;
            }
        }
    }
    found
}

/// Full family verification at side `l` (use `l = 3`).
pub fn verify_family(l: usize) -> Result<FamilyReport> {
    let fam = Family::new(l)?;
    let tri = &fam.tri;
    let n = tri.num_qubits();
    let mut failures = Vec::new();

    let mut projectors = Vec::new();
    let mut ground_degeneracy = Vec::new();
    let mut spectral_gap = Vec::new();
    let mut group_ranks = Vec::new();
    let mut max_comm = 0.0f64;
    for s in 0..3 {
        let terms = special_terms(tri, s);
        for (a, ta) in terms.iter().enumerate() {
            for tb in &terms[a + 1..] {
                max_comm = max_comm.max(commutator_norm(ta, tb)?);
            }
        }
        group_ranks.push(group_rank(&terms));
        let h = local_hamiltonian(&terms)?;
        let (_, deg, proj, gap) = ground_space(&h, 1e-8);
        ground_degeneracy.push(deg);
        spectral_gap.push(gap);
        projectors.push(identity(n) - proj);
    }
    if max_comm > 1e-12 {
        failures.push(format!("terms do not commute: {max_comm:e}"));
    }
    if ground_degeneracy.iter().any(|&d| d != 4) {
        failures.push(format!("ground degeneracy {ground_degeneracy:?}, expected 4"));
    }

    let h2 = &projectors[2];
    let mut integer_time_errors = Vec::new();
    for r in 0..3 {
        let ht = fam.hamiltonian_at(r as f64, h2)?;
        let err = op_norm(&(ht - &projectors[(r + 2) % 3]));
        if err > 1e-9 {
            failures.push(format!("H({r}) differs from H^({}) by {err:e}", (r + 2) % 3));
        }
        integer_time_errors.push(err);
    }
    let period_error = op_norm(&(fam.hamiltonian_at(3.0, h2)? - h2));
    if period_error > 1e-9 {
        failures.push(format!("H(3) differs from H(0) by {period_error:e}"));
    }

    // String interchange under one period.
    let gens = canonical_form(&special_terms(tri, 2));
    let u3 = fam.u_tilde(3.0)?;
    let swap = |from_z: bool| -> Result<bool> {
        let mut all = true;
        for s in css_logicals(&gens, from_z) {
            let img = &u3 * pauli_matrix(&s)? * u3.adjoint();
            let ok = match dense_to_pauli(&img, n, 1e-9) {
                Some(p) => is_logical_of_type(&gens, &p, !from_z),
                None => false,
            };
            all &= ok;
        }
        Ok(all)
    };
    let electric_to_magnetic = swap(false)?;
    let magnetic_to_electric = swap(true)?;
    if !electric_to_magnetic || !magnetic_to_electric {
        failures.push("string operators are not interchanged by one period".into());
    }

    Ok(FamilyReport {
        l,
        integer_time_errors,
        period_error,
        ground_degeneracy,
        spectral_gap,
        max_term_commutator: max_comm,
        group_rank: group_ranks,
        electric_to_magnetic,
        magnetic_to_electric,
        failures,
    })
}

/// Apply J to three qubits of a statevector (used for spot checks).
pub fn apply_j(state: &mut StateVec, qubits: [usize; 3]) {
    apply_local(state, &build_j(), &qubits);
}
