//! Dense statevectors and operators for small registers.
//!
//! Qubit `q` is bit `q` of the basis-state index (little-endian).

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Largest register handled densely.
pub const DENSE_LIMIT: usize = 14;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn check_limit(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        return Err(Error::DenseLimit(n));
    }
    Ok(())
}

/// Action of a Pauli string on a basis state: `P|b> = coef |b'>`.
fn pauli_on_basis(p: &PauliString, b: usize) -> (usize, C64) {
    let mut out = b;
    // i^phase, then each Y = i X Z contributes an extra i.
    let mut ipow = p.phase() as u32;
    let mut neg = false;
    for q in 0..p.num_qubits() {
        let bit = (b >> q) & 1 == 1;
        match p.get(q) {
            Pauli::I => {}
            Pauli::X => out ^= 1 << q,
            Pauli::Z => neg ^= bit,
            Pauli::Y => {
                // Y|0> = i|1>, Y|1> = -i|0>
                ipow += 1;
                neg ^= bit;
                out ^= 1 << q;
            }
        }
    }
    let mut coef = match ipow % 4 {
        0 => c(1.0),
        1 => C64::new(0.0, 1.0),
        2 => c(-1.0),
        _ => C64::new(0.0, -1.0),
    };
    if neg {
        coef = -coef;
    }
    (out, coef)
}

/// Dense matrix of a Pauli string.
pub fn pauli_matrix(p: &PauliString) -> Result<CMat> {
    let n = p.num_qubits();
    check_limit(n)?;
    let d = 1 << n;
    let mut m = CMat::zeros(d, d);
    for b in 0..d {
        let (o, coef) = pauli_on_basis(p, b);
        m[(o, b)] = coef;
    }
    Ok(m)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(1 << n, 1 << n)
}

/// Operator norm (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Frobenius-norm shortcut, useful as a cheap upper bound.
pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Statevector on up to [`DENSE_LIMIT`] qubits. Projections are not
/// renormalised, so amplitudes track Kraus-operator matrix elements.
#[derive(Clone, Debug)]
pub struct StateVec {
    pub n: usize,
    pub amp: Vec<C64>,
}

impl StateVec {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_limit(n)?;
        let mut amp = vec![c(0.0); 1 << n];
        amp[index] = c(1.0);
        Ok(StateVec { n, amp })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        if s > 0.0 {
            self.amp.iter_mut().for_each(|z| *z /= s);
        }
    }

    pub fn apply_pauli(&mut self, p: &PauliString) {
        let mut out = vec![c(0.0); self.amp.len()];
        for (b, &a) in self.amp.iter().enumerate() {
            if a != c(0.0) {
                let (o, coef) = pauli_on_basis(p, b);
                out[o] += coef * a;
            }
        }
        self.amp = out;
    }

    pub fn x(&mut self, q: usize) {
        let m = 1 << q;
        for b in 0..self.amp.len() {
            if b & m == 0 {
                self.amp.swap(b, b | m);
            }
        }
    }

    pub fn z(&mut self, q: usize) {
        let m = 1 << q;
        for (b, a) in self.amp.iter_mut().enumerate() {
            if b & m != 0 {
                *a = -*a;
            }
        }
    }

    pub fn h(&mut self, q: usize) {
        let m = 1 << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amp.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amp[b], self.amp[b | m]);
                self.amp[b] = (a0 + a1) * s;
                self.amp[b | m] = (a0 - a1) * s;
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let m = (1 << a) | (1 << b);
        for (i, z) in self.amp.iter_mut().enumerate() {
            if i & m == m {
                *z = -*z;
            }
        }
    }

    pub fn cnot(&mut self, ctl: usize, tgt: usize) {
        let (mc, mt) = (1 << ctl, 1 << tgt);
        for i in 0..self.amp.len() {
            if i & mc != 0 && i & mt == 0 {
                self.amp.swap(i, i | mt);
            }
        }
    }

    /// Apply `(1 + (-1)^bit P)/2`.
    pub fn project(&mut self, p: &PauliString, bit: bool) {
        let mut pv = self.clone();
        pv.apply_pauli(p);
        let s = if bit { -1.0 } else { 1.0 };
        for (a, b) in self.amp.iter_mut().zip(&pv.amp) {
            *a = (*a + b * s) * 0.5;
        }
    }

    /// Expectation value `<ψ|P|ψ>` (for normalised states).
    pub fn expectation(&self, p: &PauliString) -> C64 {
        let mut pv = self.clone();
        pv.apply_pauli(p);
        self.amp.iter().zip(&pv.amp).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_vector(&self) -> CVec {
        CVec::from_vec(self.amp.clone())
    }
}

/// Apply a dense operator acting on the listed qubits (qubit `targets[k]` is
/// bit `k` of the operator's index).
pub fn apply_local(state: &mut StateVec, op: &CMat, targets: &[usize]) {
    let k = targets.len();
    let d = 1 << k;
    assert_eq!(op.nrows(), d);
    let mask: usize = targets.iter().map(|&t| 1 << t).sum();
    let mut out = vec![c(0.0); state.amp.len()];
    for base in 0..state.amp.len() {
        if base & mask != 0 {
            continue;
        }
        let idx = |local: usize| -> usize {
            let mut i = base;
            for (bit, &t) in targets.iter().enumerate() {
                if (local >> bit) & 1 == 1 {
                    i |= 1 << t;
                }
            }
            i
        };
        let inputs: Vec<C64> = (0..d).map(|l| state.amp[idx(l)]).collect();
        for row in 0..d {
            let mut acc = c(0.0);
            for (col, v) in inputs.iter().enumerate() {
                acc += op[(row, col)] * v;
            }
            out[idx(row)] = acc;
        }
    }
    state.amp = out;
}

/// Embed an operator on `targets` into the full `n`-qubit space.
pub fn embed(op: &CMat, targets: &[usize], n: usize) -> Result<CMat> {
    check_limit(n)?;
    let d = 1 << n;
    let mut m = CMat::zeros(d, d);
    for col in 0..d {
        let mut s = StateVec::basis(n, col)?;
        apply_local(&mut s, op, targets);
        for (row, z) in s.amp.iter().enumerate() {
            m[(row, col)] = *z;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn pauli_matrices_multiply_like_strings() {
        let cases = [("XX", "ZZ"), ("XYZ", "ZZY"), ("-iYI", "XZ"), ("YY", "YX")];
        for (a, b) in cases {
            let (pa, pb) = (ps(a), ps(b));
            let lhs = pauli_matrix(&pa).unwrap() * pauli_matrix(&pb).unwrap();
            let rhs = pauli_matrix(&pa.mul(&pb).unwrap()).unwrap();
            assert!(fro_norm(&(lhs - rhs)) < 1e-12, "{a} * {b}");
        }
    }

    #[test]
    fn gates_match_conjugation_rules() {
        // H X H = Z on qubit 1 of a 2-qubit register.
        let mut s = StateVec::basis(2, 0).unwrap();
        s.h(1);
        s.cnot(1, 0);
        // Bell state: <XX> = <ZZ> = 1, <YY> = -1
        assert!((s.expectation(&ps("XX")).re - 1.0).abs() < 1e-12);
        assert!((s.expectation(&ps("ZZ")).re - 1.0).abs() < 1e-12);
        assert!((s.expectation(&ps("YY")).re + 1.0).abs() < 1e-12);
    }
}
