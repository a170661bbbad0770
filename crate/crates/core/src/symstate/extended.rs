use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

/// A point of the extended complex plane ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

use ExtendedComplex::{Finite, Infinity};

impl ExtendedComplex {
    pub const ZERO: Self = Finite(Complex64::new(0.0, 0.0));
    pub const ONE: Self = Finite(Complex64::new(1.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            Finite(z) => Some(z),
            Infinity => None,
        }
    }

    /// Homogeneous coordinates `(x, y)` with `z = x / y`; ∞ is `(1, 0)`.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        match *self {
            Finite(z) => (z, Complex64::new(1.0, 0.0)),
            Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        }
    }

    /// Inverse of [`homogeneous`](Self::homogeneous). `(0, 0)` has no
    /// meaning and is reported as `None`.
    pub fn from_homogeneous(x: Complex64, y: Complex64) -> Option<Self> {
        if y == Complex64::new(0.0, 0.0) {
            if x == Complex64::new(0.0, 0.0) {
                None
            } else {
                Some(Infinity)
            }
        } else {
            let z = x / y;
            if z.re.is_finite() && z.im.is_finite() {
                Some(Finite(z))
            } else {
                Some(Infinity)
            }
        }
    }

    /// `1/z` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match *self {
            Infinity => Self::ZERO,
            Finite(z) if z == Complex64::new(0.0, 0.0) => Infinity,
            Finite(z) => Finite(z.inv()),
        }
    }

    /// Chordal distance between the sphere images of two points on the unit
    /// sphere: `2|z−w| / √((1+|z|²)(1+|w|²))`, and `2 / √(1+|z|²)` to ∞.
    /// Ranges over `[0, 2]`.
    pub fn chordal_distance(&self, other: &Self) -> f64 {
        let (x1, y1) = self.homogeneous();
        let (x2, y2) = other.homogeneous();
        let cross = (x1 * y2 - x2 * y1).norm();
        let n1 = x1.norm().hypot(y1.norm());
        let n2 = x2.norm().hypot(y2.norm());
        2.0 * cross / (n1 * n2)
    }

    /// Total order used for deterministic serialization: finite points by
    /// modulus then argument in `[0, 2π)`, ∞ last. Both keys are quantized
    /// to 1e−9 so rounding noise does not reshuffle equal-modulus points.
    pub fn serial_cmp(&self, other: &Self) -> Ordering {
        self.serial_key().cmp(&other.serial_key())
    }

    fn serial_key(&self) -> (u8, i64, i64) {
        match *self {
            Infinity => (1, 0, 0),
            Finite(z) => {
                let q = |v: f64| (v * 1e9).round() as i64;
                let modulus = q(z.norm());
                let mut arg = z.arg().rem_euclid(TAU);
                // Quantize first so that arguments just below 2π land on 0.
                let mut qa = q(arg);
                if qa >= q(TAU) || modulus == 0 {
                    arg = 0.0;
                    qa = q(arg);
                }
                (0, modulus, qa)
            }
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(z) => write!(f, "{z}"),
            Infinity => write!(f, "∞"),
        }
    }
}
