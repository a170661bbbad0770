//! Factorization of a symmetric SLOCC operation into a sphere rotation after
//! an affine map `z ↦ Az + B` with `A > 0`.
//!
//! For `m` with `ad − bc = 1` and `λ = √(|a|² + |c|²)`:
//!
//! ```text
//! λ·m = [α  −β̄] [A  B]      α = a/λ, β = c/λ, A = λ²,
//!       [β   ᾱ] [0  1]      B = (λ²b + c̄)/a = (λ²d − ā)/c
//! ```
//!
//! The affine maps are exactly the translations of the sphere that keep the
//! north pole above the plane: `A` is the ratio of pole heights after and
//! before, `B` the horizontal displacement.

use num_complex::Complex64 as C64;

use super::{mat_mul, MoebiusMap};
use crate::error::{domain, Result};

/// `z ↦ A z + B` with `A > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    scale: f64,
    offset: C64,
}

impl AffineMap {
    pub fn new(scale: f64, offset: C64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return domain(format!("affine scale must be positive, got {scale}"));
        }
        Ok(AffineMap { scale, offset })
    }

    /// `A`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `B`.
    pub fn offset(&self) -> C64 {
        self.offset
    }

    pub fn matrix(&self) -> [C64; 4] {
        [C64::new(self.scale, 0.0), self.offset, C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
    }

    pub fn to_map(&self) -> MoebiusMap {
        MoebiusMap::from_entries(self.matrix()).expect("A > 0 keeps the matrix invertible")
    }

    /// `self ∘ first`, i.e. `(A₁A₂, A₁B₂ + B₁)`.
    pub fn compose(&self, first: &AffineMap) -> AffineMap {
        AffineMap {
            scale: self.scale * first.scale,
            offset: first.offset * self.scale + self.offset,
        }
    }
}

/// Rotation ∘ affine factorization of a Möbius map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub alpha: C64,
    pub beta: C64,
    pub affine: AffineMap,
    pub lambda: f64,
}

impl Decomposition {
    /// The unitary factor `(α, −β̄; β, ᾱ)`.
    pub fn rotation(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.alpha,
            b: -self.beta.conj(),
            c: self.beta,
            d: self.alpha.conj(),
        }
    }

    /// `rotation · affine`, which equals `λ·m` for the decomposed `m`.
    pub fn product(&self) -> [C64; 4] {
        let r = self.rotation();
        mat_mul([r.a, r.b, r.c, r.d], self.affine.matrix())
    }
}

/// Splits `m` (normalized to unit determinant) into rotation and affine part.
pub fn decompose_affine(m: &MoebiusMap) -> Decomposition {
    let [a, b, c, d] = m.entries();
    let l2 = a.norm_sqr() + c.norm_sqr();
    let lambda = l2.sqrt();
    // Both expressions for B agree; divide by the larger of a, c.
    let offset = if a.norm() >= c.norm() {
        (b * l2 + c.conj()) / a
    } else {
        (d * l2 - a.conj()) / c
    };
    Decomposition {
        alpha: a / lambda,
        beta: c / lambda,
        affine: AffineMap { scale: l2, offset },
        lambda,
    }
}

/// Pole height after the affine map and the horizontal displacement, given
/// the height `h1` before.
pub fn translation_view(aff: &AffineMap, h1: f64) -> Result<(f64, C64)> {
    if !(h1 > 0.0) || !h1.is_finite() {
        return domain(format!("pole height must be positive, got {h1}"));
    }
    Ok((aff.scale * h1, aff.offset))
}

/// The affine map of a sphere translation from pole height `h1` to `h2`
/// with horizontal displacement `displacement`.
pub fn affine_from_translation(h1: f64, h2: f64, displacement: C64) -> Result<AffineMap> {
    if !(h1 > 0.0) || !(h2 > 0.0) || !h1.is_finite() || !h2.is_finite() {
        return domain("pole heights must be positive");
    }
    AffineMap::new(h2 / h1, displacement)
}
