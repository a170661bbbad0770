use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::ExtendedComplex;
use crate::error::{domain, Result};

/// A point on the unit sphere in polar coordinates.
///
/// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`, and `phi == 0` at both poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    pub const NORTH: Self = SpherePoint { theta: 0.0, phi: 0.0 };
    pub const SOUTH: Self = SpherePoint { theta: PI, phi: 0.0 };

    /// Builds a point, wrapping `phi` into `[0, 2π)` and zeroing it at the poles.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || !(0.0..=PI).contains(&theta) {
            return domain(format!("polar angle {theta} outside [0, π]"));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        if theta == 0.0 || theta == PI {
            phi = 0.0;
        }
        Ok(SpherePoint { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Cartesian coordinates `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Stereographic image of a root on the sphere, with the convention
/// `z = cot(θ/2)·e^{−iφ}`; ∞ is the north pole.
pub fn to_sphere(z: ExtendedComplex) -> SpherePoint {
    match z {
        ExtendedComplex::Infinity => SpherePoint::NORTH,
        ExtendedComplex::Finite(w) => {
            let r = w.norm();
            if r == 0.0 {
                return SpherePoint::SOUTH;
            }
            let theta = 2.0 * 1.0f64.atan2(r);
            let mut phi = (-w.arg()).rem_euclid(TAU);
            if phi >= TAU {
                phi = 0.0;
            }
            SpherePoint { theta, phi }
        }
    }
}

/// Inverse of [`to_sphere`].
pub fn from_sphere(p: SpherePoint) -> ExtendedComplex {
    if p.theta == 0.0 {
        return ExtendedComplex::Infinity;
    }
    if p.theta == PI {
        return ExtendedComplex::ZERO;
    }
    let half = 0.5 * p.theta;
    let cot = half.cos() / half.sin();
    ExtendedComplex::Finite(Complex64::from_polar(cot, -p.phi))
}

/// Cartesian coordinates of the sphere image of `z`, computed from
/// homogeneous coordinates so that points near ∞ stay accurate.
pub fn cartesian(z: ExtendedComplex) -> [f64; 3] {
    let (x, y) = z.homogeneous();
    let s = x.norm_sqr() + y.norm_sqr();
    let xy = x * y.conj();
    [2.0 * xy.re / s, -2.0 * xy.im / s, (x.norm_sqr() - y.norm_sqr()) / s]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles() {
        assert_eq!(to_sphere(ExtendedComplex::Infinity), SpherePoint::NORTH);
        let south = to_sphere(ExtendedComplex::ZERO);
        assert_eq!((south.theta(), south.phi()), (PI, 0.0));
        assert_eq!(from_sphere(SpherePoint::NORTH), ExtendedComplex::Infinity);
        assert_eq!(from_sphere(SpherePoint::SOUTH), ExtendedComplex::ZERO);
    }

    #[test]
    fn unit_circle_is_equator() {
        let p = to_sphere(ExtendedComplex::ONE);
        assert!((p.theta() - PI / 2.0).abs() < 1e-15);
        assert_eq!(p.phi(), 0.0);
    }

    #[test]
    fn family_moving_root_lands_at_parameters() {
        // The root 1/t with t = e^{iφ} tan(θ/2).
        for &(theta, phi) in &[(0.5, 0.3), (1.2, 2.0), (2.9, 5.5), (PI / 2.0, PI / 3.0)] {
            let t = Complex64::from_polar((0.5f64 * theta).tan(), phi);
            let p = to_sphere(ExtendedComplex::Finite(t.inv()));
            assert!((p.theta() - theta).abs() < 1e-12);
            assert!((p.phi() - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn cartesian_matches_polar() {
        let z = ExtendedComplex::new(0.3, -1.7);
        let a = cartesian(z);
        let b = to_sphere(z).cartesian();
        for i in 0..3 {
            assert!((a[i] - b[i]).abs() < 1e-14);
        }
        assert_eq!(cartesian(ExtendedComplex::Infinity), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_theta() {
        assert!(SpherePoint::new(-0.1, 0.0).is_err());
        assert!(SpherePoint::new(4.0, 0.0).is_err());
        assert_eq!(SpherePoint::new(PI, 1.0).unwrap().phi(), 0.0);
    }
}
