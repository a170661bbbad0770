//! Reference engine on full `2^n` amplitude vectors.
//!
//! Nothing here touches polynomials or roots: states are spread over the
//! computational basis, symmetrized from explicit single-qubit factors, and
//! transformed qubit by qubit. Tests compare these results with the
//! root-level operations.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::symstate::{binomial, SpherePoint, SymmetricState};

/// Largest `n` accepted by [`expand_full`] and [`apply_tensor`].
pub const DENSE_MAX_QUBITS: usize = 20;
/// Largest `n` accepted by [`symmetrize`].
pub const SYMMETRIZE_MAX_QUBITS: usize = 10;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A state vector over `n` qubits; bit `i` of a basis index is qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amplitudes: Vec<C64>,
}

impl DenseState {
    pub fn new(n: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(Error::Domain(format!("expected {} amplitudes for n = {n}", 1usize << n)));
        }
        if amplitudes.iter().all(|&a| a == ZERO) {
            return Err(Error::Domain("the zero vector is not a state".into()));
        }
        Ok(DenseState { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Exchanges qubits `i` and `j`.
    pub fn swap_qubits(&self, i: usize, j: usize) -> DenseState {
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (idx, &a) in self.amplitudes.iter().enumerate() {
            let bi = (idx >> i) & 1;
            let bj = (idx >> j) & 1;
            let mut t = idx & !(1 << i) & !(1 << j);
            t |= bj << i;
            t |= bi << j;
            out[t] = a;
        }
        DenseState { n: self.n, amplitudes: out }
    }
}

fn guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::Resource(format!("{n} qubits exceed the dense limit of {max}")));
    }
    Ok(())
}

/// Spreads each `a_k` uniformly, with weight `C(n,k)^{−1/2}`, over the
/// basis states of Hamming weight `k`.
pub fn expand_full(s: &SymmetricState) -> Result<DenseState> {
    let n = s.n();
    guard(n, DENSE_MAX_QUBITS)?;
    let weights: Vec<C64> = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, &a)| a / binomial(n, k).sqrt())
        .collect();
    let amplitudes = (0..1usize << n).map(|idx| weights[idx.count_ones() as usize]).collect();
    Ok(DenseState { n, amplitudes })
}

/// Normalized sum over all orderings of the product states
/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
///
/// The permutation sum is accumulated qubit by qubit over the subsets of
/// factors already placed, which enumerates every permutation exactly once
/// at `O(3^n n)` cost instead of `O(n! 2^n)`.
pub fn symmetrize(points: &[SpherePoint]) -> Result<DenseState> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Domain("need at least one point".into()));
    }
    guard(n, SYMMETRIZE_MAX_QUBITS)?;
    let factors: Vec<[C64; 2]> = points
        .iter()
        .map(|p| {
            let half = 0.5 * p.theta();
            [C64::new(half.cos(), 0.0), C64::from_polar(half.sin(), p.phi())]
        })
        .collect();
    // partial[mask]: sum over bijections from the first popcount(mask)
    // qubits onto the factors in `mask`, as a vector over those qubits.
    let mut partial: Vec<Vec<C64>> = vec![Vec::new(); 1 << n];
    partial[0] = vec![C64::new(1.0, 0.0)];
    for placed in 0..n {
        for mask in 0usize..1 << n {
            if mask.count_ones() as usize != placed || partial[mask].is_empty() {
                continue;
            }
            let current = std::mem::take(&mut partial[mask]);
            for (f, factor) in factors.iter().enumerate() {
                if mask & (1 << f) != 0 {
                    continue;
                }
                let next = mask | (1 << f);
                let len = current.len();
                let target = &mut partial[next];
                if target.is_empty() {
                    *target = vec![ZERO; 2 * len];
                }
                // Qubit `placed` is the new highest bit.
                for (idx, &amp) in current.iter().enumerate() {
                    target[idx] += amp * factor[0];
                    target[idx + len] += amp * factor[1];
                }
            }
        }
    }
    let full = std::mem::take(&mut partial[(1 << n) - 1]);
    let norm = full.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Numeric("permutation sum vanished".into()));
    }
    Ok(DenseState { n, amplitudes: full.into_iter().map(|a| a / norm).collect() })
}

/// Applies the map's 2×2 matrix to every qubit. The result is not normalized.
pub fn apply_tensor(m: &MoebiusMap, v: &DenseState) -> Result<DenseState> {
    guard(v.n, DENSE_MAX_QUBITS)?;
    let [a, b, c, d] = m.entries();
    let mut amps = v.amplitudes.clone();
    for q in 0..v.n {
        let bit = 1usize << q;
        for idx in 0..amps.len() {
            if idx & bit != 0 {
                continue;
            }
            let x0 = amps[idx];
            let x1 = amps[idx | bit];
            amps[idx] = a * x0 + b * x1;
            amps[idx | bit] = c * x0 + d * x1;
        }
    }
    Ok(DenseState { n: v.n, amplitudes: amps })
}

/// Whether `v1 = λ v2` for some `λ ≠ 0`: normalized overlap `≥ 1 − tol`.
pub fn equal_up_to_scale(v1: &DenseState, v2: &DenseState, tol: f64) -> bool {
    if v1.n != v2.n {
        return false;
    }
    overlap(v1, v2) >= 1.0 - tol
}

/// `|⟨v1|v2⟩| / (‖v1‖ ‖v2‖)`.
pub fn overlap(v1: &DenseState, v2: &DenseState) -> f64 {
    let inner: C64 = v1.amplitudes.iter().zip(&v2.amplitudes).map(|(x, y)| x.conj() * y).sum();
    inner.norm() / (v1.norm() * v2.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symstate::dicke;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn expand_examples() {
        let s1 = expand_full(&dicke(2, 1).unwrap()).unwrap();
        let want = [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];
        for (a, w) in s1.amplitudes().iter().zip(want) {
            assert!((a - w).norm() < 1e-15);
        }
        let s0 = expand_full(&dicke(3, 0).unwrap()).unwrap();
        assert_eq!(s0.amplitudes()[0], C64::new(1.0, 0.0));
        let ghz = SymmetricState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let g = expand_full(&ghz).unwrap();
        assert!((g.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((g.amplitudes()[7].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn w_state_has_three_equal_branches() {
        let w = expand_full(&dicke(3, 1).unwrap()).unwrap();
        for idx in [1, 2, 4] {
            assert!((w.amplitudes()[idx].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(w.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 3);
    }

    #[test]
    fn symmetrize_examples() {
        let pts = [SpherePoint::NORTH, SpherePoint::SOUTH];
        let v = symmetrize(&pts).unwrap();
        assert!(equal_up_to_scale(&v, &expand_full(&dicke(2, 1).unwrap()).unwrap(), 1e-14));

        let ring: Vec<SpherePoint> =
            (0..3).map(|k| SpherePoint::new(PI / 2.0, 2.0 * PI * k as f64 / 3.0).unwrap()).collect();
        let ghz = SymmetricState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(equal_up_to_scale(&symmetrize(&ring).unwrap(), &expand_full(&ghz).unwrap(), 1e-14));

        let p = SpherePoint::new(1.1, 0.4).unwrap();
        let v = symmetrize(&[p; 4]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tensor_action_examples() {
        let v = expand_full(&dicke(3, 1).unwrap()).unwrap();
        assert_eq!(apply_tensor(&MoebiusMap::identity(), &v).unwrap(), v);
        let u = MoebiusMap::unitary_from_north(crate::ExtendedComplex::new(0.3, -0.9));
        assert!((apply_tensor(&u, &v).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scale_comparison() {
        let v = expand_full(&dicke(3, 1).unwrap()).unwrap();
        let scaled = DenseState::new(3, v.amplitudes().iter().map(|a| a * C64::new(0.0, 3.0)).collect()).unwrap();
        assert!(equal_up_to_scale(&v, &scaled, 1e-15));
        let other = expand_full(&dicke(3, 0).unwrap()).unwrap();
        assert!(!equal_up_to_scale(&v, &other, 1e-3));
    }

    #[test]
    fn guards() {
        assert!(matches!(expand_full(&dicke(21, 0).unwrap()), Err(Error::Resource(_))));
        assert!(matches!(symmetrize(&[SpherePoint::NORTH; 11]), Err(Error::Resource(_))));
    }
}
