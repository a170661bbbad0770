//! Möbius transformations `f(z) = (az + b)/(cz + d)` of the extended plane.
//!
//! A map doubles as the 2×2 matrix of a symmetric SLOCC operation `B^{⊗n}`:
//! acting with `B` on every qubit moves each Majorana root by `f`. Maps are
//! stored with unit determinant; `±B` are the same transformation.

mod decompose;

use num_complex::Complex64 as C64;

pub use decompose::{
    affine_from_translation, decompose_affine, translation_view, AffineMap, Decomposition,
};

use crate::error::{domain, Result};
use crate::symstate::ExtendedComplex;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Determinants below this fraction of the squared entry scale are singular.
const SINGULAR_TOL: f64 = 1e-14;
/// Interpolation points closer than this (chordal) count as coincident.
pub const COINCIDENT_TOL: f64 = 1e-10;
/// Reality and boundary tolerance for `tr²` in [`MoebiusMap::classify`].
const TRACE_TOL: f64 = 1e-10;

/// An invertible Möbius map with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
}

/// Möbius maps by conjugacy type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
    Loxodromic,
}

/// Type of a map together with its fixed points (none for the identity).
#[derive(Debug, Clone, PartialEq)]
pub struct MapClass {
    pub kind: MapKind,
    pub fixed_points: Vec<ExtendedComplex>,
}

/// `[p q] = p.x q.y − q.x p.y`, which is `p − q` up to the homogeneous scale.
fn bracket(p: (C64, C64), q: (C64, C64)) -> C64 {
    p.0 * q.1 - q.0 * p.1
}

fn unit_homogeneous(z: ExtendedComplex) -> (C64, C64) {
    let (x, y) = z.homogeneous();
    let s = x.norm().hypot(y.norm());
    (x / s, y / s)
}

impl MoebiusMap {
    /// Builds and det-normalizes a map. Fails on (numerically) singular input.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let entries = [a, b, c, d];
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return domain("matrix entries must be finite");
        }
        let scale = entries.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let det = a * d - b * c;
        if scale == 0.0 || det.norm() <= SINGULAR_TOL * scale * scale {
            return domain("singular matrix: ad − bc = 0");
        }
        let mut root = det.sqrt();
        if root.re < 0.0 || (root.re == 0.0 && root.im < 0.0) {
            root = -root;
        }
        Ok(MoebiusMap { a: a / root, b: b / root, c: c / root, d: d / root })
    }

    pub fn from_entries(m: [C64; 4]) -> Result<Self> {
        Self::new(m[0], m[1], m[2], m[3])
    }

    /// Like [`from_entries`](Self::from_entries), but keeps entries that are
    /// already normalized to rounding level verbatim.
    pub fn from_normalized_entries(m: [C64; 4]) -> Result<Self> {
        let norm = Self::from_entries(m)?;
        let close = norm.entries().iter().zip(&m).all(|(a, b)| (a - b).norm() <= 4.0 * f64::EPSILON * (1.0 + b.norm()));
        Ok(if close { MoebiusMap { a: m[0], b: m[1], c: m[2], d: m[3] } } else { norm })
    }

    pub fn identity() -> Self {
        MoebiusMap { a: ONE, b: ZERO, c: ZERO, d: ONE }
    }

    /// `z ↦ k·z`.
    pub fn scaling(k: C64) -> Result<Self> {
        Self::new(k, ZERO, ZERO, ONE)
    }

    /// `z ↦ z + t`.
    pub fn translation(t: C64) -> Self {
        MoebiusMap { a: ONE, b: t, c: ZERO, d: ONE }
    }

    /// Root-space image of the sphere rotation `R_z(ψ)`: `z ↦ e^{−iψ} z`.
    pub fn rotation_z(psi: f64) -> Self {
        MoebiusMap {
            a: C64::from_polar(1.0, -0.5 * psi),
            b: ZERO,
            c: ZERO,
            d: C64::from_polar(1.0, 0.5 * psi),
        }
    }

    /// Root-space image of `R_x(π) = −iσ_x`: `z ↦ 1/z`.
    pub fn rotation_x_pi() -> Self {
        MoebiusMap { a: ZERO, b: -I, c: -I, d: ZERO }
    }

    /// A unitary map sending ∞ (the north pole) to `p`.
    pub fn unitary_from_north(p: ExtendedComplex) -> Self {
        let (x, y) = unit_homogeneous(p);
        MoebiusMap { a: x, b: -y.conj(), c: y, d: x.conj() }
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            ExtendedComplex::Infinity => {
                if self.c == ZERO {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite(self.a / self.c)
                }
            }
            ExtendedComplex::Finite(w) => {
                let den = self.c * w + self.d;
                let num = self.a * w + self.b;
                ExtendedComplex::from_homogeneous(num, den).unwrap_or(ExtendedComplex::Infinity)
            }
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MoebiusMap) -> MoebiusMap {
        let p = mat_mul(self.entries(), first.entries());
        MoebiusMap::from_entries(p).expect("product of invertible maps is invertible")
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Entrywise distance to `other` modulo the sign ambiguity.
    pub fn projective_distance(&self, other: &MoebiusMap) -> f64 {
        let diff = |sign: f64| {
            self.entries()
                .iter()
                .zip(other.entries())
                .map(|(x, y)| (x - y * sign).norm())
                .fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0))
    }

    /// The unique map with `v_i ↦ w_i`, built through the reference triple
    /// `(0, 1, ∞)`.
    pub fn from_three_points(v: [ExtendedComplex; 3], w: [ExtendedComplex; 3]) -> Result<Self> {
        let tv = to_reference(v)?;
        let tw = to_reference(w)?;
        Ok(tw.inverse().compose(&tv))
    }

    /// Type by `tr²` and fixed points as roots of `cz² + (d−a)z − b`.
    pub fn classify(&self) -> MapClass {
        let scale = self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max);
        let is_identity = self.b.norm() <= TRACE_TOL * scale
            && self.c.norm() <= TRACE_TOL * scale
            && (self.a - self.d).norm() <= TRACE_TOL * scale;
        if is_identity {
            return MapClass { kind: MapKind::Identity, fixed_points: Vec::new() };
        }
        let tr = self.a + self.d;
        let tr2 = tr * tr;
        let tol = TRACE_TOL * (1.0 + tr2.norm());
        let kind = if (tr2 - 4.0).norm() <= tol {
            MapKind::Parabolic
        } else if tr2.im.abs() <= tol {
            if tr2.re > 4.0 {
                MapKind::Hyperbolic
            } else if tr2.re >= 0.0 {
                MapKind::Elliptic
            } else {
                MapKind::Loxodromic
            }
        } else {
            MapKind::Loxodromic
        };
        let fixed_points = self.fixed_points(kind == MapKind::Parabolic);
        MapClass { kind, fixed_points }
    }

    fn fixed_points(&self, parabolic: bool) -> Vec<ExtendedComplex> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let amd = a - d;
        if c == ZERO {
            // Affine map: ∞ plus the solution of (d − a) z = b when it exists.
            if parabolic || amd == ZERO {
                return vec![ExtendedComplex::Infinity];
            }
            return vec![ExtendedComplex::Finite(b / (d - a)), ExtendedComplex::Infinity];
        }
        if parabolic {
            return vec![ExtendedComplex::Finite(amd / (c * 2.0))];
        }
        let disc = ((a + d) * (a + d) - 4.0).sqrt();
        // Pick the sign that avoids cancellation, then use Vieta for the other root.
        let q = if (amd + disc).norm() >= (amd - disc).norm() { amd + disc } else { amd - disc };
        let z1 = q / (c * 2.0);
        let z2 = ExtendedComplex::from_homogeneous(-b * 2.0, q).unwrap_or(ExtendedComplex::Infinity);
        vec![ExtendedComplex::Finite(z1), z2]
    }

    /// The SU(2) representative when `m†m` is a positive multiple of the
    /// identity to relative tolerance `tol`.
    pub fn projective_unitary(&self, tol: f64) -> Option<MoebiusMap> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let d11 = a.norm_sqr() + c.norm_sqr();
        let d22 = b.norm_sqr() + d.norm_sqr();
        let off = a.conj() * b + c.conj() * d;
        let scale = 0.5 * (d11 + d22);
        if (d11 - d22).abs() > tol * scale || off.norm() > tol * scale {
            return None;
        }
        let alpha = (a + d.conj()) * 0.5;
        let beta = (c - b.conj()) * 0.5;
        let r = alpha.norm().hypot(beta.norm());
        let (alpha, beta) = (alpha / r, beta / r);
        Some(MoebiusMap { a: alpha, b: -beta.conj(), c: beta, d: alpha.conj() })
    }

    pub fn is_projective_unitary(&self, tol: f64) -> bool {
        self.projective_unitary(tol).is_some()
    }
}

/// Map sending `(v1, v2, v3)` to `(0, 1, ∞)`.
fn to_reference(v: [ExtendedComplex; 3]) -> Result<MoebiusMap> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if v[i].chordal_distance(&v[j]) <= COINCIDENT_TOL {
            return domain(format!("interpolation points {} and {} coincide", v[i], v[j]));
        }
    }
    let [p1, p2, p3] = v.map(unit_homogeneous);
    let k23 = bracket(p2, p3);
    let k21 = bracket(p2, p1);
    MoebiusMap::new(k23 * p1.1, -k23 * p1.0, k21 * p3.1, -k21 * p3.0)
}

fn mat_mul(x: [C64; 4], y: [C64; 4]) -> [C64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Cross-ratio `(v1−v3)(v2−v4) / ((v2−v3)(v1−v4))`, with factors through ∞
/// cancelled. A vanishing denominator gives ∞; `0/0` is a domain error.
pub fn cross_ratio(v: [ExtendedComplex; 4]) -> Result<ExtendedComplex> {
    let [p1, p2, p3, p4] = v.map(unit_homogeneous);
    let num = bracket(p1, p3) * bracket(p2, p4);
    let den = bracket(p2, p3) * bracket(p1, p4);
    match ExtendedComplex::from_homogeneous(num, den) {
        Some(z) => Ok(z),
        None => domain("cross-ratio is 0/0 for these points"),
    }
}
