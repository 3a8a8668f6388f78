//! Signed Pauli strings in binary-symplectic form.
//!
//! A string is `i^phase * P_0 ⊗ P_1 ⊗ ...` where the single-qubit factor on
//! qubit `j` is `σ(x_j, z_j)` with `σ(0,0)=I, σ(1,0)=X, σ(0,1)=Z, σ(1,1)=Y`.
//! Bits are packed 64 per word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const W: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(W)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString { n, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    /// A single Pauli letter on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    /// The same letter on every listed qubit (duplicates cancel).
    pub fn uniform(n: usize, qubits: &[usize], p: Pauli) -> Self {
        let mut s = Self::identity(n);
        for &q in qubits {
            let (x, z) = p.bits();
            if x {
                s.x[q / W] ^= 1 << (q % W);
            }
            if z {
                s.z[q / W] ^= 1 << (q % W);
            }
        }
        s
    }

    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        Self::uniform(n, qubits, Pauli::X)
    }

    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        Self::uniform(n, qubits, Pauli::Z)
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut s = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    /// `+1` or `-1` for Hermitian strings.
    pub fn sign(&self) -> Result<i8> {
        match self.phase {
            0 => Ok(1),
            2 => Ok(-1),
            _ => Err(Error::NonHermitian(self.to_string())),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) & 3;
    }

    pub fn negated(mut self) -> Self {
        self.negate();
        self
    }

    /// Multiply by `(-1)^bit`.
    pub fn with_sign_bit(mut self, bit: bool) -> Self {
        if bit {
            self.negate();
        }
        self
    }

    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / W] >> (q % W)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / W] >> (q % W)) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrite the letter on qubit `q` (the phase is left untouched).
    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.set_x_bit(q, x);
        self.set_z_bit(q, z);
    }

    pub(crate) fn set_x_bit(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % W);
        if v {
            self.x[q / W] |= m;
        } else {
            self.x[q / W] &= !m;
        }
    }

    pub(crate) fn set_z_bit(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % W);
        if v {
            self.z[q / W] |= m;
        } else {
            self.z[q / W] &= !m;
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// Qubits on which the string acts non-trivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    /// Symplectic-form test, no length check.
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        acc & 1 == 0
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.commutes_unchecked(other))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// In-place right multiplication `self <- self * other`.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let y1 = x1 & z1;
            let xo1 = x1 & !z1;
            let zo1 = !x1 & z1;
            let p = (y1 & z2 & !x2) | (xo1 & x2 & z2) | (zo1 & x2 & !z2);
            let m = (y1 & x2 & !z2) | (xo1 & z2 & !x2) | (zo1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
            self.x[i] = x1 ^ x2;
            self.z[i] = z1 ^ z2;
        }
        let g = (plus as i64 - minus as i64).rem_euclid(4) as u8;
        self.phase = (self.phase + other.phase + g) & 3;
    }

    /// Product `self * other` with the phase tracked mod 4.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// Embed into a larger register (extra qubits get identity).
    pub fn extended(&self, n: usize) -> Self {
        let mut out = Self::identity(n);
        for q in 0..self.n.min(n) {
            out.set(q, self.get(q));
        }
        out.phase = self.phase;
        out
    }

    /// Keep only the first `n` qubits.
    pub fn truncated(&self, n: usize) -> Self {
        self.extended(n)
    }

    // ---- Clifford conjugations P -> C P C† ----

    pub(crate) fn conj_h(&mut self, q: usize) {
        let (x, z) = (self.x_bit(q), self.z_bit(q));
        if x && z {
            self.negate();
        }
        self.set_x_bit(q, z);
        self.set_z_bit(q, x);
    }

    pub(crate) fn conj_s(&mut self, q: usize) {
        let (x, z) = (self.x_bit(q), self.z_bit(q));
        if x && z {
            self.negate();
        }
        self.set_z_bit(q, z ^ x);
    }

    pub(crate) fn conj_cnot(&mut self, c: usize, t: usize) {
        let (xc, zc, xt, zt) = (self.x_bit(c), self.z_bit(c), self.x_bit(t), self.z_bit(t));
        if xc && zt && !(xt ^ zc) {
            self.negate();
        }
        self.set_x_bit(t, xt ^ xc);
        self.set_z_bit(c, zc ^ zt);
    }

    pub(crate) fn conj_cz(&mut self, a: usize, b: usize) {
        self.conj_h(b);
        self.conj_cnot(a, b);
        self.conj_h(b);
    }

    /// Conjugation by a Pauli operator: a sign flip iff they anticommute.
    pub(crate) fn conj_pauli(&mut self, p: &PauliString) {
        if !self.commutes_unchecked(p) {
            self.negate();
        }
    }

    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.get(q).letter()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{}{}", prefix, self.letters())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts an optional `+`, `-`, `+i`, `-i` or `i` prefix followed by
    /// letters from `IXYZ` (`_` is read as `I`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        let mut letters = Vec::with_capacity(body.len());
        for c in body.chars() {
            letters.push(match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::Parse(format!("bad Pauli letter {other:?} in {s:?}"))),
            });
        }
        let mut p = PauliString::from_letters(&letters);
        p.phase = phase;
        Ok(p)
    }
}

/// Free-function form of [`PauliString::mul`].
pub fn pauli_product(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    p.mul(q)
}

/// Free-function form of [`PauliString::commutes`].
pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.commutes(q)
}
