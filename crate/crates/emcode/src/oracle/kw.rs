//! Dense conditional channel matrices of the KW realizations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::{c, CMat, StateVec, C64};
use crate::error::{Error, Result};
use crate::kw::{kw_matrix_element, run_reference, DenseBackend, KWRecord, PlaquetteIO};

/// Post-selected Kraus matrix `K[a_out, a_in]` of the reference circuit for
/// one outcome record. Odd qubits are read out in the X basis they were
/// measured in and ancillas in `|0>`; `a_out` indexes the even qubits with
/// bit `j-1` holding `a_{2j}`, `a_in` the odd qubits with bit `j` holding
/// `a_{2j+1}`.
pub fn dense_kw_channel(n_half: usize, rec: &KWRecord) -> Result<CMat> {
    let n2 = 2 * n_half;
    let total = 2 * n2;
    if total > crate::dense::DENSE_LIMIT {
        return Err(Error::DenseLimit(total));
    }
    let io = PlaquetteIO::ring(rec.plaquette, (0..n2).collect());
    let anc: Vec<usize> = (n2..total).collect();
    let dim = 1 << n_half;
    let mut k = CMat::zeros(dim, dim);
    for a_in in 0..dim {
        let mut index = 0usize;
        for j in 0..n_half {
            if (a_in >> j) & 1 == 1 {
                index |= 1 << (2 * j);
            }
        }
        let mut b = DenseBackend {
            state: StateVec::basis(total, index)?,
            script: rec,
            rng: ChaCha8Rng::seed_from_u64(0),
        };
        run_reference(&mut b, &io, &anc)?;
        let state = b.state;
        for a_out in 0..dim {
            // <a_out| on even qubits, <±| on odd qubits, <0| on ancillas.
            let mut amp = c(0.0);
            for odd in 0..dim {
                let mut idx = 0usize;
                let mut w = c(1.0);
                for j in 0..n_half {
                    if (a_out >> j) & 1 == 1 {
                        idx |= 1 << (2 * j + 1);
                    }
                    if (odd >> j) & 1 == 1 {
                        idx |= 1 << (2 * j);
                        // odd qubit a_{2j+1} was measured as m_{2j}
                        if rec.m_bit(2 * (j as i64)) {
                            w = -w;
                        }
                    }
                }
                amp += w * state.amp[idx] * std::f64::consts::FRAC_1_SQRT_2.powi(n_half as i32);
            }
            k[(a_out, a_in)] = amp;
        }
    }
    Ok(k)
}

/// The sign matrix predicted by [`kw_matrix_element`].
pub fn formula_matrix(rec: &KWRecord) -> CMat {
    let n = rec.n_half();
    let dim = 1 << n;
    let bits = |x: usize| -> Vec<bool> { (0..n).map(|j| (x >> j) & 1 == 1).collect() };
    CMat::from_fn(dim, dim, |o, i| c(kw_matrix_element(&bits(o), &bits(i), rec) as f64))
}

/// Compare a dense Kraus matrix with the formula: returns the fitted
/// normalisation and the largest entrywise deviation after rescaling.
pub fn compare_with_formula(k: &CMat, rec: &KWRecord) -> (C64, f64) {
    compare_matrices(k, &formula_matrix(rec))
}

/// Least-squares scale `s` with `s·f ≈ k`, and the largest residual.
pub fn compare_matrices(k: &CMat, f: &CMat) -> (C64, f64) {
    let num: C64 = f.iter().zip(k.iter()).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = f.iter().map(|a| a.norm_sqr()).sum();
    let scale = num / den;
    let dev = f.iter().zip(k.iter()).map(|(a, b)| (a * scale - b).norm()).fold(0.0, f64::max);
    (scale, dev)
}
