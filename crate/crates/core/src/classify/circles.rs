//! Circle census of a Majorana configuration.
//!
//! Möbius maps send circles on the sphere to circles and carry each of the
//! two caps bounded by a circle onto a cap of the image circle. Hence the
//! multiset of (sites on the circle, smaller cap population) over all
//! circles through three or more sites is a SLOCC invariant, and differing
//! censuses certify inequivalence. Matching censuses prove nothing.

use crate::symstate::{cartesian, RootMultiset};

use super::degeneracy_configuration;

/// A circle through at least three sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    /// Indices of the three sites that define the circle, in site order.
    pub triple: [usize; 3],
    /// Number of distinct sites on the circle.
    pub on_circle: usize,
    /// Root count (with multiplicity) of the less populated cap.
    pub min_cap: usize,
}

/// All distinct circles through site triples of one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSignature {
    pub circles: Vec<Circle>,
}

impl CircleSignature {
    /// The invariant part: sorted `(on_circle, min_cap)` pairs.
    pub fn census(&self) -> Vec<(usize, usize)> {
        let mut c: Vec<(usize, usize)> = self.circles.iter().map(|c| (c.on_circle, c.min_cap)).collect();
        c.sort_unstable();
        c
    }

    /// Largest number of sites on a common circle (0 with fewer than 3 sites).
    pub fn max_on_circle(&self) -> usize {
        self.circles.iter().map(|c| c.on_circle).max().unwrap_or(0)
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Circle census of `r`; sites within `tol` of a circle's plane lie on it.
pub fn circle_signature(r: &RootMultiset, tol: f64) -> CircleSignature {
    let (_, clusters) = degeneracy_configuration(r, tol);
    let sites = clusters.sites();
    let pts: Vec<[f64; 3]> = sites.iter().map(|s| cartesian(s.0)).collect();
    let d = sites.len();
    let mut seen: Vec<Vec<bool>> = Vec::new();
    let mut circles = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let normal = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                let len = dot(normal, normal).sqrt();
                let normal = normal.map(|x| x / len);
                let offset = dot(normal, pts[i]);
                let mut members = vec![false; d];
                let (mut above, mut below) = (0, 0);
                for (idx, p) in pts.iter().enumerate() {
                    let h = dot(normal, *p) - offset;
                    if h.abs() <= tol {
                        members[idx] = true;
                    } else if h > 0.0 {
                        above += sites[idx].1;
                    } else {
                        below += sites[idx].1;
                    }
                }
                if seen.contains(&members) {
                    continue;
                }
                circles.push(Circle {
                    triple: [i, j, k],
                    on_circle: members.iter().filter(|&&m| m).count(),
                    min_cap: above.min(below),
                });
                seen.push(members);
            }
        }
    }
    CircleSignature { circles }
}

/// Both signatures when their censuses differ, which certifies that the
/// two configurations are not SLOCC-equivalent; `None` is inconclusive.
pub fn cocircularity_witness(
    r1: &RootMultiset,
    r2: &RootMultiset,
    tol: f64,
) -> Option<(CircleSignature, CircleSignature)> {
    let s1 = circle_signature(r1, tol);
    let s2 = circle_signature(r2, tol);
    (s1.census() != s2.census()).then_some((s1, s2))
}
