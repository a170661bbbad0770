//! Symmetric states, their Majorana polynomials and root multisets.
//!
//! A symmetric state `Σ a_k |S_k⟩` is stored by its Dicke amplitudes. Its
//! Majorana polynomial is `ψ(z) = Σ (−1)^{k−n} a_k √C(n,k) z^k`; the `n`
//! roots (counting a degree drop of `ψ` as roots at ∞) are the Majorana
//! points. The stereographic convention is `z = cot(θ/2)·e^{−iφ}`, so the
//! single-qubit state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` has its root at
//! `(θ, φ)` and `|0⟩` sits at the north pole (∞).

mod extended;
mod rootfind;
mod sphere;

use std::fmt;

use num_complex::Complex64 as C64;

pub use extended::ExtendedComplex;
pub use rootfind::{polynomial_roots, POLISH_ITERATIONS, RESIDUAL_TOL};
pub use sphere::{cartesian, from_sphere, to_sphere, SpherePoint};

use crate::error::{domain, Result};
use crate::moebius::MoebiusMap;

/// Coefficients with `|c_k| ≤ DEGREE_TOL · max|c|` are ignored when
/// computing the degree of a Majorana polynomial, and amplitudes below the
/// same relative level never fix the global phase.
pub const DEGREE_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A normalized permutation-symmetric state of `n` qubits in the Dicke basis.
///
/// The global phase is fixed so that the lowest-`k` non-negligible
/// amplitude is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    amps: Vec<C64>,
}

impl SymmetricState {
    /// Normalizes `amps` (`a_0 … a_n`) and fixes the global phase.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return domain("a symmetric state needs at least two amplitudes (n ≥ 1)");
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return domain("amplitudes must be finite");
        }
        let big = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if big == 0.0 {
            return domain("the zero vector is not a state");
        }
        // Rescale before summing squares so tiny or huge inputs survive.
        let scaled: Vec<C64> = amps.iter().map(|a| a / big).collect();
        let norm = scaled.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let mut amps: Vec<C64> = scaled.iter().map(|a| a / norm).collect();
        let top = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let lead = amps.iter().position(|a| a.norm() > DEGREE_TOL * top).unwrap_or(0);
        let r = amps[lead].norm();
        let phase = amps[lead].conj() / r;
        for a in amps.iter_mut() {
            *a *= phase;
        }
        amps[lead] = C64::new(r, 0.0);
        Ok(SymmetricState { amps })
    }

    /// Keeps `input` verbatim when it already agrees with the normalized
    /// state to rounding level, so stored documents read back bit-exactly.
    pub(crate) fn keep_if_normalized(self, input: &[C64]) -> Self {
        let close = input.len() == self.amps.len()
            && input.iter().zip(&self.amps).all(|(a, b)| (a - b).norm() <= 4.0 * f64::EPSILON);
        if close {
            SymmetricState { amps: input.to_vec() }
        } else {
            self
        }
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// `|⟨self|other⟩|`; 1 means equal up to global phase.
    pub fn fidelity(&self, other: &SymmetricState) -> f64 {
        if self.n() != other.n() {
            return 0.0;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum::<C64>().norm()
    }
}

impl fmt::Display for SymmetricState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > DEGREE_TOL)
            .map(|(k, a)| format!("({a})|S{k}⟩"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The Dicke state `|S_k⟩` of `n` qubits.
pub fn dicke(n: usize, k: usize) -> Result<SymmetricState> {
    if n < 1 {
        return domain("n must be at least 1");
    }
    if k > n {
        return domain(format!("Dicke index {k} exceeds n = {n}"));
    }
    let mut amps = vec![ZERO; n + 1];
    amps[k] = C64::new(1.0, 0.0);
    SymmetricState::new(amps)
}

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn sign(n: usize, k: usize) -> f64 {
    if (n - k).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Coefficients `c_0 … c_n` of `ψ(z) = Σ c_k z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    coeffs: Vec<C64>,
}

impl PolynomialCoeffs {
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree after dropping leading coefficients below the relative
    /// threshold [`DEGREE_TOL`]. The constant zero polynomial cannot occur.
    pub fn degree(&self) -> usize {
        let big = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs.iter().rposition(|c| c.norm() > DEGREE_TOL * big).unwrap_or(0)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }
}

/// The Majorana polynomial of `s`.
pub fn majorana_polynomial(s: &SymmetricState) -> PolynomialCoeffs {
    let n = s.n();
    let coeffs = s
        .amps
        .iter()
        .enumerate()
        .map(|(k, &a)| a * (sign(n, k) * binomial(n, k).sqrt()))
        .collect();
    PolynomialCoeffs { coeffs }
}

/// The `n` Majorana points of a state: finite roots plus a multiplicity at ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    finite: Vec<C64>,
    infinity_count: usize,
}

impl RootMultiset {
    pub fn new(mut finite: Vec<C64>, infinity_count: usize) -> Result<Self> {
        if finite.is_empty() && infinity_count == 0 {
            return domain("a root multiset needs n ≥ 1 points");
        }
        if finite.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("finite roots must have finite coordinates");
        }
        finite.sort_by(|a, b| ExtendedComplex::Finite(*a).serial_cmp(&ExtendedComplex::Finite(*b)));
        Ok(RootMultiset { finite, infinity_count })
    }

    pub fn from_points(points: impl IntoIterator<Item = ExtendedComplex>) -> Result<Self> {
        let mut finite = Vec::new();
        let mut infinity_count = 0;
        for p in points {
            match p {
                ExtendedComplex::Finite(z) => finite.push(z),
                ExtendedComplex::Infinity => infinity_count += 1,
            }
        }
        Self::new(finite, infinity_count)
    }

    pub fn n(&self) -> usize {
        self.finite.len() + self.infinity_count
    }

    pub fn finite_roots(&self) -> &[C64] {
        &self.finite
    }

    pub fn infinity_count(&self) -> usize {
        self.infinity_count
    }

    /// All `n` points in serialization order (∞ last).
    pub fn points(&self) -> Vec<ExtendedComplex> {
        self.finite
            .iter()
            .map(|&z| ExtendedComplex::Finite(z))
            .chain(std::iter::repeat_n(ExtendedComplex::Infinity, self.infinity_count))
            .collect()
    }

    pub fn map(&self, m: &MoebiusMap) -> Result<RootMultiset> {
        Self::from_points(self.points().into_iter().map(|z| m.apply(z)))
    }
}

/// Majorana roots of `s`, polished to the residual bound of
/// [`RESIDUAL_TOL`]. Fails with a numeric error if the root finder does not
/// converge.
pub fn majorana_roots(s: &SymmetricState) -> Result<RootMultiset> {
    let poly = majorana_polynomial(s);
    let degree = poly.degree();
    let c = &poly.coeffs[..=degree];
    let zeros = c.iter().take_while(|&&ci| ci == ZERO).count().min(degree);
    let mut finite = polynomial_roots(&c[zeros..])?;
    finite.extend(std::iter::repeat_n(ZERO, zeros));
    RootMultiset::new(finite, s.n() - degree)
}

/// The state whose Majorana points are `r`, normalized with canonical phase.
pub fn state_from_roots(r: &RootMultiset) -> Result<SymmetricState> {
    let n = r.n();
    // Expand Π (y_i z − x_i) in normalized homogeneous coordinates; a root
    // at ∞ contributes the constant factor −1, i.e. a degree drop.
    let mut c = vec![ZERO; n + 1];
    c[0] = C64::new(1.0, 0.0);
    for (len, p) in r.points().into_iter().enumerate() {
        let (x, y) = match p {
            ExtendedComplex::Finite(z) if z.norm() > 1.0 => (C64::new(1.0, 0.0), z.inv()),
            other => other.homogeneous(),
        };
        for i in (0..=len + 1).rev() {
            let shifted = if i > 0 { c[i - 1] * y } else { ZERO };
            c[i] = shifted - c[i] * x;
        }
    }
    let amps = c
        .iter()
        .enumerate()
        .map(|(k, &ck)| ck * (sign(n, k) / binomial(n, k).sqrt()))
        .collect();
    SymmetricState::new(amps)
}

/// The symmetric SLOCC operation `B^{⊗n}` applied to `s`, where `B` is the
/// matrix of `m` acting on `(a_0, a_1)`; on roots it is the Möbius map `m`.
pub fn apply_symmetric(m: &MoebiusMap, s: &SymmetricState) -> Result<SymmetricState> {
    state_from_roots(&majorana_roots(s)?.map(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn omega(k: usize) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0)
    }

    fn ghz3() -> SymmetricState {
        SymmetricState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn dicke_basis_vectors() {
        let w = dicke(3, 1).unwrap();
        assert_eq!(w.amplitudes()[1], C64::new(1.0, 0.0));
        assert_eq!(w.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 1);
        assert_eq!(dicke(1, 0).unwrap().amplitudes(), &[C64::new(1.0, 0.0), ZERO]);
        assert!(dicke(3, 4).is_err());
        assert!(dicke(0, 0).is_err());
    }

    #[test]
    fn construction_normalizes_and_fixes_phase() {
        let s = SymmetricState::new(vec![ZERO, C64::new(0.0, 3.0), C64::new(4.0, 0.0)]).unwrap();
        let a = s.amplitudes();
        assert_eq!(a[0], ZERO);
        assert!((a[1] - C64::new(0.6, 0.0)).norm() < 1e-15);
        assert!((a[2] - C64::new(0.0, -0.8)).norm() < 1e-15);
        assert!(SymmetricState::new(vec![ZERO, ZERO]).is_err());
        assert!(SymmetricState::new(vec![C64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn ghz_polynomial_is_z_cubed_minus_one() {
        let c = majorana_polynomial(&ghz3());
        let scale = c.coeffs()[3];
        let want = [-1.0, 0.0, 0.0, 1.0];
        for (got, w) in c.coeffs().iter().zip(want) {
            assert!((got / scale - w).norm() < 1e-15);
        }
    }

    #[test]
    fn w_and_s0_polynomials() {
        let w = majorana_polynomial(&dicke(3, 1).unwrap());
        assert_eq!(w.degree(), 1);
        assert_eq!(w.coeffs()[0], ZERO);
        let s0 = majorana_polynomial(&dicke(4, 0).unwrap());
        assert_eq!(s0.degree(), 0);
    }

    #[test]
    fn ghz_roots_are_cube_roots_of_unity() {
        let r = majorana_roots(&ghz3()).unwrap();
        assert_eq!(r.infinity_count(), 0);
        for k in 0..3 {
            assert!(r.finite_roots().iter().any(|z| (z - omega(k)).norm() < 1e-12));
        }
    }

    #[test]
    fn w_roots() {
        let r = majorana_roots(&dicke(3, 1).unwrap()).unwrap();
        assert_eq!(r.finite_roots(), &[ZERO]);
        assert_eq!(r.infinity_count(), 2);
        let r = majorana_roots(&dicke(4, 2).unwrap()).unwrap();
        assert_eq!(r.finite_roots(), &[ZERO, ZERO]);
        assert_eq!(r.infinity_count(), 2);
    }

    #[test]
    fn degree_drop_gives_roots_at_infinity() {
        // a_n = … = a_{m+1} = 0, a_m ≠ 0  ⇔  n − m roots at ∞.
        for n in 1..=8 {
            for m in 0..=n {
                let mut amps = vec![C64::new(0.3, 0.1); n + 1];
                for a in amps.iter_mut().skip(m + 1) {
                    *a = ZERO;
                }
                let s = SymmetricState::new(amps).unwrap();
                assert_eq!(majorana_roots(&s).unwrap().infinity_count(), n - m);
            }
        }
    }

    #[test]
    fn states_from_special_root_sets() {
        let cube = RootMultiset::new((0..3).map(omega).collect(), 0).unwrap();
        assert!((state_from_roots(&cube).unwrap().fidelity(&ghz3()) - 1.0).abs() < 1e-14);
        for n in 1..6 {
            let north = RootMultiset::new(vec![], n).unwrap();
            assert!((state_from_roots(&north).unwrap().fidelity(&dicke(n, 0).unwrap()) - 1.0).abs() < 1e-15);
        }
        let pair = RootMultiset::new(vec![ZERO], 1).unwrap();
        assert!((state_from_roots(&pair).unwrap().fidelity(&dicke(2, 1).unwrap()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn halving_map_lowers_the_ring() {
        let half = MoebiusMap::new(C64::new(1.0, 0.0), ZERO, ZERO, C64::new(2.0, 0.0)).unwrap();
        let s = apply_symmetric(&half, &ghz3()).unwrap();
        let r = majorana_roots(&s).unwrap();
        assert!(r.finite_roots().iter().all(|z| (z.norm() - 0.5).abs() < 1e-12));
        assert!((apply_symmetric(&MoebiusMap::identity(), &ghz3()).unwrap().fidelity(&ghz3()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_qubit_action_is_the_matrix() {
        // For n = 1, roots transform with the same matrix that acts on (a0, a1).
        let m = MoebiusMap::new(C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.3, 0.3), C64::new(2.0, -1.0)).unwrap();
        let s = SymmetricState::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let a = s.amplitudes();
        let [ma, mb, mc, md] = m.entries();
        let direct = SymmetricState::new(vec![ma * a[0] + mb * a[1], mc * a[0] + md * a[1]]).unwrap();
        let via_roots = apply_symmetric(&m, &s).unwrap();
        assert!((direct.fidelity(&via_roots) - 1.0).abs() < 1e-14);
    }
}
