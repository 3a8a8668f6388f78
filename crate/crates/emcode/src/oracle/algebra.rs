//! Operator identities of D and J, checked densely.

use serde::Serialize;

use crate::dense::{identity, op_norm, pauli_matrix, CMat};
use crate::error::Result;
use crate::oracle::family::{build_d, build_j, Spectral};
use crate::pauli::PauliString;

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub tolerance: f64,
    pub identities: Vec<Identity>,
}

impl AlgebraReport {
    pub fn ok(&self) -> bool {
        self.identities.iter().all(|i| i.error <= self.tolerance)
    }

    pub fn worst(&self) -> f64 {
        self.identities.iter().map(|i| i.error).fold(0.0, f64::max)
    }
}

fn p(n: usize, x: &[usize], z: &[usize]) -> Result<CMat> {
    pauli_matrix(&PauliString::x_on(n, x).mul(&PauliString::z_on(n, z))?)
}

/// D relations for ring sizes `2..=max_n` and the J identities.
pub fn verify_dj_algebra(max_n: usize) -> Result<AlgebraReport> {
    let mut ids = Vec::new();
    let mut push = |name: String, m: CMat| ids.push(Identity { name, error: op_norm(&m) });
    for n in 2..=max_n {
        let d = build_d(n)?;
        let all: Vec<usize> = (0..n).collect();
        let xall = p(n, &all, &[])?;
        for j in 0..n {
            let k = (j + 1) % n;
            let xj = p(n, &[j], &[])?;
            let zz = p(n, &[], &[j, k])?;
            let xk = p(n, &[k], &[])?;
            push(format!("N={n}: D X_{j} = Z_{j} Z_{k} D"), &d * &xj - &zz * &d);
            push(format!("N={n}: D Z_{j} Z_{k} = X_{k} D"), &d * &zz - &xk * &d);
        }
        push(format!("N={n}: D†D = 1 + X…X"), d.adjoint() * &d - identity(n) - &xall);
        push(format!("N={n}: X…X D = D"), &xall * &d - &d);
        push(format!("N={n}: D X…X = D"), &d * &xall - &d);
    }
    let j = build_j();
    let xxx = p(3, &[0, 1, 2], &[])?;
    push("J†J = 1".into(), j.adjoint() * &j - identity(3));
    push("J J† = 1".into(), &j * j.adjoint() - identity(3));
    push("J†(X1X2X3)J = X1X2X3".into(), j.adjoint() * &xxx * &j - &xxx);
    let sp = Spectral::of_unitary(&j);
    push("J = M Λ M†".into(), &sp.m * sp.lambda() * sp.m.adjoint() - &j);
    push("J̃(0) = 1".into(), sp.interpolate(0.0) - identity(3));
    push("J̃(1) = J".into(), sp.interpolate(1.0) - &j);
    Ok(AlgebraReport { tolerance: 1e-12, identities: ids })
}
