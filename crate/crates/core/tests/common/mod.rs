#![allow(dead_code)]

use std::f64::consts::PI;

use majorana::symstate::{from_sphere, state_from_roots};
use majorana::{Complex64 as C64, ExtendedComplex, MoebiusMap, RootMultiset, SpherePoint, SymmetricState};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Uniform point on the sphere.
pub fn sphere_point(rng: &mut impl Rng) -> SpherePoint {
    let cos_theta: f64 = rng.gen_range(-1.0..1.0);
    SpherePoint::new(cos_theta.acos(), rng.gen_range(0.0..2.0 * PI)).unwrap()
}

pub fn point(rng: &mut impl Rng) -> ExtendedComplex {
    from_sphere(sphere_point(rng))
}

/// Point that is `∞` with probability `p_inf`.
pub fn point_or_infinity(rng: &mut impl Rng, p_inf: f64) -> ExtendedComplex {
    if rng.gen_bool(p_inf) {
        ExtendedComplex::Infinity
    } else {
        point(rng)
    }
}

pub fn state(rng: &mut impl Rng, n: usize) -> SymmetricState {
    SymmetricState::new((0..=n).map(|_| complex(rng)).collect()).unwrap()
}

/// Random invertible map with `|det|` bounded away from zero before normalization.
pub fn map(rng: &mut impl Rng) -> MoebiusMap {
    loop {
        let e = [complex(rng), complex(rng), complex(rng), complex(rng)];
        if (e[0] * e[3] - e[1] * e[2]).norm() > 0.2 {
            return MoebiusMap::from_entries(e).unwrap();
        }
    }
}

pub fn unitary(rng: &mut impl Rng) -> MoebiusMap {
    MoebiusMap::unitary_from_north(point(rng)).compose(&MoebiusMap::rotation_z(rng.gen_range(0.0..2.0 * PI)))
}

/// Random partition of `n` into parts, largest first.
pub fn partition(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Random sites carrying the given multiplicities.
pub fn sites_with_partition(rng: &mut impl Rng, parts: &[usize]) -> Vec<(ExtendedComplex, usize)> {
    parts.iter().map(|&m| (point(rng), m)).collect()
}

pub fn state_from_sites(sites: &[(ExtendedComplex, usize)]) -> SymmetricState {
    let pts = sites.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m));
    state_from_roots(&RootMultiset::from_points(pts).unwrap()).unwrap()
}

pub fn state_with_partition(rng: &mut impl Rng, parts: &[usize]) -> SymmetricState {
    state_from_sites(&sites_with_partition(rng, parts))
}

/// Smallest chordal separation between distinct points.
pub fn min_separation(points: &[ExtendedComplex]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min(p.chordal_distance(q));
        }
    }
    best
}

/// Random map that keeps the images of `points` at least `sep` apart, so
/// that multiple roots stay numerically resolvable.
pub fn separating_map(rng: &mut impl Rng, points: &[ExtendedComplex], sep: f64) -> MoebiusMap {
    loop {
        let m = map(rng);
        let images: Vec<ExtendedComplex> = points.iter().map(|&p| m.apply(p)).collect();
        if min_separation(&images) >= sep {
            return m;
        }
    }
}

/// Whether `m` carries the multiset `r1` onto `r2` within chordal `tol`.
pub fn maps_onto(m: &MoebiusMap, r1: &RootMultiset, r2: &RootMultiset, tol: f64) -> bool {
    let mut target = r2.points();
    if target.len() != r1.n() {
        return false;
    }
    for p in r1.points() {
        let q = m.apply(p);
        let Some((idx, d)) = target
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t.chordal_distance(&q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return false;
        };
        if d > tol {
            return false;
        }
        target.swap_remove(idx);
    }
    true
}

/// Smallest `|a − b|` modulo `2π`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Product of linear factors `Π (a_i z + b_i)`, lowest degree first.
pub fn expand(factors: &[(C64, C64)]) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    for &(a, b) in factors {
        let mut next = vec![C64::new(0.0, 0.0); out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k] += c * b;
            next[k + 1] += c * a;
        }
        out = next;
    }
    out
}

/// Largest entrywise deviation of `p` from the best multiple of `q`, relative to `max|p|`.
pub fn scale_mismatch(p: &[C64], q: &[C64]) -> f64 {
    let qq: f64 = q.iter().map(|c| c.norm_sqr()).sum();
    let lambda: C64 = p.iter().zip(q).map(|(a, b)| b.conj() * a).sum::<C64>() / qq;
    let big = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    p.iter().zip(q).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max) / big
}
