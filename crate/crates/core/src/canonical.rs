//! Canonical representatives of SLOCC classes for up to five qubits.
//!
//! For two and three qubits every degeneracy configuration is a single
//! class. From four qubits on, configurations with four or more distinct
//! sites are continua: three sites are moved onto the equatorial triangle
//! `{1, ω, ω²}` and the remaining sites are folded into a fundamental domain
//! by the rotations that permute the triangle.
//!
//! A moving root `q` is reported through the parameter
//! `t = e^{iφ} tan(θ/2)` with `q = 1/t`, so `(θ, φ)` are the sphere
//! coordinates of `q`.
//!
//! | n | sites | representative                                              |
//! |---|-------|-------------------------------------------------------------|
//! | 4 | ≥ 3   | `2|S0⟩ + t|S1⟩ + |S3⟩ + 2t|S4⟩`, roots `{1, ω, ω², 1/t}`       |
//! | 5 | 3–4   | `√10(|S0⟩ + t|S5⟩) + t|S2⟩ + |S3⟩ + √2(1+t)(|S1⟩+|S4⟩)`       |
//! | 5 | 5     | same with `t → t₁t₂`, `1+t → t₁+t₂`; not unique                |

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

use num_complex::Complex64 as C64;

use crate::classify::{degeneracy_configuration, ClusteredRoots, DegeneracyConfiguration};
use crate::error::{domain, Error, Result};
use crate::moebius::MoebiusMap;
use crate::symstate::{dicke, majorana_roots, to_sphere, ExtendedComplex, SymmetricState};

/// Slack on the edges of the fundamental domains.
pub const BOUNDARY_TOL: f64 = 1e-9;

const TWO_PI_3: f64 = 2.0 * PI / 3.0;

fn omega() -> C64 {
    C64::from_polar(1.0, TWO_PI_3)
}

/// The equatorial triangle and the six rotations that permute it.
#[derive(Debug, Clone)]
pub struct TriangleFrame {
    vertices: [ExtendedComplex; 3],
    fold_group: [MoebiusMap; 6],
}

impl Default for TriangleFrame {
    fn default() -> Self {
        Self::new()
    }
}

impl TriangleFrame {
    pub fn new() -> Self {
        let w = omega();
        let rz = |k: u32| MoebiusMap::scaling(w.powu(k)).expect("unit scaling");
        let flip = MoebiusMap::rotation_x_pi();
        TriangleFrame {
            vertices: [C64::new(1.0, 0.0), w, w * w].map(ExtendedComplex::Finite),
            fold_group: [rz(0), rz(1), rz(2), flip, rz(1).compose(&flip), rz(2).compose(&flip)],
        }
    }

    /// `1, ω, ω²`.
    pub fn vertices(&self) -> [ExtendedComplex; 3] {
        self.vertices
    }

    /// `z, ωz, ω²z, 1/z, ω/z, ω²/z`.
    pub fn fold_group(&self) -> &[MoebiusMap; 6] {
        &self.fold_group
    }

    /// Map carrying three sites onto `1, ω, ω²` in order.
    pub fn frame_map(&self, sites: [ExtendedComplex; 3]) -> Result<MoebiusMap> {
        MoebiusMap::from_three_points(sites, self.vertices)
    }
}

/// A canonical representative together with its class label and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub n: usize,
    pub label: DegeneracyConfiguration,
    /// Empty, `[θ, φ]`, or `[θ₁, φ₁, θ₂, φ₂]`.
    pub params: Vec<f64>,
    pub state: SymmetricState,
    /// False for the over-complete five-qubit generic family.
    pub unique: bool,
}

/// `t = e^{iφ} tan(θ/2)`.
pub fn family_parameter(theta: f64, phi: f64) -> C64 {
    C64::from_polar((0.5 * theta).tan(), phi)
}

/// `2|S0⟩ + t|S1⟩ + |S3⟩ + 2t|S4⟩`, normalized.
pub fn family_4(theta: f64, phi: f64) -> SymmetricState {
    let t = family_parameter(theta, phi);
    let one = C64::new(1.0, 0.0);
    SymmetricState::new(vec![one * 2.0, t, C64::new(0.0, 0.0), one, t * 2.0])
        .expect("family state is nonzero")
}

/// `√10(|S0⟩ + t|S5⟩) + t|S2⟩ + |S3⟩ + √2(1+t)(|S1⟩+|S4⟩)`, normalized.
pub fn family_5(theta: f64, phi: f64) -> SymmetricState {
    let t = family_parameter(theta, phi);
    five_qubit_amplitudes(t, C64::new(1.0, 0.0) + t)
}

/// `√10(|S0⟩ + t₁t₂|S5⟩) + t₁t₂|S2⟩ + |S3⟩ + √2(t₁+t₂)(|S1⟩+|S4⟩)`, normalized.
pub fn family_5_generic(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> SymmetricState {
    let t1 = family_parameter(theta1, phi1);
    let t2 = family_parameter(theta2, phi2);
    five_qubit_amplitudes(t1 * t2, t1 + t2)
}

fn five_qubit_amplitudes(product: C64, sum: C64) -> SymmetricState {
    let r10 = 10f64.sqrt();
    let r2 = 2f64.sqrt();
    let one = C64::new(1.0, 0.0);
    SymmetricState::new(vec![one * r10, sum * r2, product, one, sum * r2, product * r10])
        .expect("family state is nonzero")
}

fn ghz3() -> SymmetricState {
    SymmetricState::from_real(&[1.0, 0.0, 0.0, 1.0]).expect("valid amplitudes")
}

/// Fixed representatives for `n ≤ 3`: `|S_0⟩` for all roots coinciding,
/// `|S_1⟩` for two sites, GHZ for three.
pub fn representative_small(n: usize, dc: &DegeneracyConfiguration) -> Result<SymmetricState> {
    if !(1..=3).contains(&n) {
        return domain(format!("fixed representatives cover n ≤ 3, got n = {n}"));
    }
    if dc.n() != n {
        return domain(format!("{dc} is not a partition of {n}"));
    }
    match dc.diversity() {
        1 => dicke(n, 0),
        2 => dicke(n, 1),
        _ => Ok(ghz3()),
    }
}

/// Canonical form of any state with `n ≤ 5`.
pub fn canonicalize(s: &SymmetricState, tol: f64) -> Result<CanonicalForm> {
    match s.n() {
        1..=3 => {
            let (label, _) = degeneracy_configuration(&majorana_roots(s)?, tol);
            let state = representative_small(s.n(), &label)?;
            Ok(CanonicalForm { n: s.n(), label, params: Vec::new(), state, unique: true })
        }
        4 => canonical_4(s, tol),
        5 => {
            let (label, _) = degeneracy_configuration(&majorana_roots(s)?, tol);
            if label.diversity() < 5 {
                canonical_5_degenerate(s, tol)
            } else {
                representative_5_generic(s, tol)
            }
        }
        n => domain(format!("canonical forms are available for n ≤ 5, got n = {n}")),
    }
}

fn label(parts: &[usize]) -> DegeneracyConfiguration {
    DegeneracyConfiguration::new(parts.to_vec()).expect("static partition")
}

fn fixed(n: usize, parts: &[usize], state: SymmetricState) -> CanonicalForm {
    CanonicalForm { n, label: label(parts), params: Vec::new(), state, unique: true }
}

/// `φ` mapped into `(−2π + ε, 2π − ε]` so that values just below 2π read as
/// slightly negative.
fn wrapped_phi(phi: f64) -> f64 {
    if phi > TAU - BOUNDARY_TOL {
        phi - TAU
    } else {
        phi
    }
}

/// Sphere coordinates snapped onto the edges they are within slack of.
fn snapped(theta: f64, phi: f64, equator_max: f64) -> (f64, f64) {
    let on_equator = (theta - FRAC_PI_2).abs() <= BOUNDARY_TOL;
    let theta = if on_equator { FRAC_PI_2 } else { theta };
    let mut phi = phi.max(0.0);
    if on_equator {
        phi = phi.min(equator_max);
    }
    at_pole(theta, phi)
}

/// Exact poles for points within slack of them; the azimuth there is noise.
fn at_pole(theta: f64, phi: f64) -> (f64, f64) {
    if theta <= BOUNDARY_TOL {
        (0.0, 0.0)
    } else if theta >= PI - BOUNDARY_TOL {
        (PI, 0.0)
    } else {
        (theta, phi)
    }
}

/// Picks the orbit member inside `[0, π/2) × [0, upper_max) ∪ {π/2} × [0, equator_max]`,
/// preferring the smallest azimuth when slack admits several.
fn pick_in_domain(orbit: &[ExtendedComplex], upper_max: f64, equator_max: f64) -> Option<(f64, f64)> {
    orbit
        .iter()
        .filter_map(|&q| {
            let p = to_sphere(q);
            let phi = wrapped_phi(p.phi());
            let theta = p.theta();
            let upper = theta < FRAC_PI_2 - BOUNDARY_TOL
                && phi >= -BOUNDARY_TOL
                && phi < upper_max - BOUNDARY_TOL;
            let equator = (theta - FRAC_PI_2).abs() <= BOUNDARY_TOL
                && phi >= -BOUNDARY_TOL
                && phi <= equator_max + BOUNDARY_TOL;
            (upper || equator).then_some((theta, phi))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)))
        .map(|(theta, phi)| snapped(theta, phi, equator_max))
}

fn sites_of(s: &SymmetricState, tol: f64) -> Result<(DegeneracyConfiguration, ClusteredRoots)> {
    Ok(degeneracy_configuration(&majorana_roots(s)?, tol))
}

/// Folded `(θ, φ)` of the fourth site after moving sites `order[0..3]` onto
/// the triangle, or `None` when it lands on a vertex.
pub fn fold_parameter_4(
    sites: &[ExtendedComplex; 4],
    order: [usize; 4],
    tol: f64,
) -> Result<Option<(f64, f64)>> {
    let frame = TriangleFrame::new();
    let map = frame.frame_map([sites[order[0]], sites[order[1]], sites[order[2]]])?;
    let q = map.apply(sites[order[3]]);
    if frame.vertices.iter().any(|v| v.chordal_distance(&q) <= tol) {
        return Ok(None);
    }
    let orbit: Vec<ExtendedComplex> = frame.fold_group.iter().map(|g| g.apply(q)).collect();
    pick_in_domain(&orbit, TWO_PI_3, FRAC_PI_3)
        .map(Some)
        .ok_or_else(|| Error::Numeric("no fold of the fourth site lies in the domain".into()))
}

/// The unique representative of the SLOCC class of a four-qubit state.
pub fn canonical_4(s: &SymmetricState, tol: f64) -> Result<CanonicalForm> {
    if s.n() != 4 {
        return domain(format!("canonical_4 needs n = 4, got {}", s.n()));
    }
    let (dc, clusters) = sites_of(s, tol)?;
    let family_at_vertex = || CanonicalForm {
        n: 4,
        label: label(&[2, 1, 1]),
        params: vec![FRAC_PI_2, 0.0],
        state: family_4(FRAC_PI_2, 0.0),
        unique: true,
    };
    match dc.partition() {
        [4] => Ok(fixed(4, &[4], dicke(4, 0)?)),
        [3, 1] => Ok(fixed(4, &[3, 1], dicke(4, 1)?)),
        [2, 2] => Ok(fixed(4, &[2, 2], dicke(4, 2)?)),
        [2, 1, 1] => Ok(family_at_vertex()),
        _ => {
            let sites: [ExtendedComplex; 4] = std::array::from_fn(|i| clusters.sites()[i].0);
            match fold_parameter_4(&sites, [0, 1, 2, 3], tol)? {
                None => Ok(family_at_vertex()),
                Some((theta, phi)) => Ok(CanonicalForm {
                    n: 4,
                    label: dc,
                    params: vec![theta, phi],
                    state: family_4(theta, phi),
                    unique: true,
                }),
            }
        }
    }
}

/// The representative of a five-qubit state with coinciding roots.
///
/// For four distinct sites every choice of which single site moves and how
/// the other two meet `ω, ω²` is tried, each folded by `z ↦ 1/z`; the
/// candidate with the smallest azimuth is returned. Choosing a different
/// moving site rotates the folded point by `2π/3` about the polar axis, so
/// the result always has `φ ∈ [0, 2π/3)` (or `[0, π/3]` on the equator).
pub fn canonical_5_degenerate(s: &SymmetricState, tol: f64) -> Result<CanonicalForm> {
    if s.n() != 5 {
        return domain(format!("canonical_5_degenerate needs n = 5, got {}", s.n()));
    }
    let (dc, clusters) = sites_of(s, tol)?;
    let triple_vertex = || family_form_5(&[3, 1, 1], FRAC_PI_2, 0.0);
    let double_vertex = || family_form_5(&[2, 2, 1], FRAC_PI_2, TWO_PI_3);
    match dc.partition() {
        [5] => Ok(fixed(5, &[5], dicke(5, 0)?)),
        [4, 1] => Ok(fixed(5, &[4, 1], dicke(5, 1)?)),
        [3, 2] => Ok(fixed(5, &[3, 2], dicke(5, 2)?)),
        [3, 1, 1] => Ok(triple_vertex()),
        [2, 2, 1] => Ok(double_vertex()),
        [2, 1, 1, 1] => {
            let sites = clusters.sites();
            let doubled = sites.iter().find(|s| s.1 == 2).expect("one doubled site").0;
            let singles: Vec<ExtendedComplex> = sites.iter().filter(|s| s.1 == 1).map(|s| s.0).collect();
            let frame = TriangleFrame::new();
            let flip = MoebiusMap::rotation_x_pi();
            let mut orbit = Vec::with_capacity(12);
            for moving in 0..3 {
                let rest: Vec<usize> = (0..3).filter(|&i| i != moving).collect();
                for (a, b) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    let map = frame.frame_map([doubled, singles[a], singles[b]])?;
                    let q = map.apply(singles[moving]);
                    let [v1, v2, v3] = frame.vertices;
                    if q.chordal_distance(&v1) <= tol {
                        return Ok(triple_vertex());
                    }
                    if q.chordal_distance(&v2) <= tol || q.chordal_distance(&v3) <= tol {
                        return Ok(double_vertex());
                    }
                    orbit.push(q);
                    orbit.push(flip.apply(q));
                }
            }
            let (theta, phi) = pick_in_domain(&orbit, TAU, PI).ok_or_else(|| {
                Error::Numeric("no fold of the moving site lies in the domain".into())
            })?;
            Ok(family_form_5(&[2, 1, 1, 1], theta, phi))
        }
        _ => domain("canonical_5_degenerate needs a configuration with coinciding roots"),
    }
}

fn family_form_5(parts: &[usize], theta: f64, phi: f64) -> CanonicalForm {
    CanonicalForm {
        n: 5,
        label: label(parts),
        params: vec![theta, phi],
        state: family_5(theta, phi),
        unique: true,
    }
}

/// Folded parameters of the generic five-qubit family for one ordering of
/// the five sites: `order[0..3]` go to the triangle, `order[3]` is brought
/// into the upper hemisphere by `z ↦ 1/z`, and `order[4]` into
/// `φ ∈ [0, 2π/3)` by rotations `z ↦ ωᵏz`.
pub fn fold_parameters_5_generic(sites: &[ExtendedComplex; 5], order: [usize; 5]) -> Result<[f64; 4]> {
    let frame = TriangleFrame::new();
    let map = frame.frame_map([sites[order[0]], sites[order[1]], sites[order[2]]])?;
    let mut q4 = map.apply(sites[order[3]]);
    let mut q5 = map.apply(sites[order[4]]);
    if to_sphere(q4).theta() > FRAC_PI_2 + BOUNDARY_TOL {
        q4 = q4.recip();
        q5 = q5.recip();
    }
    let phi5 = wrapped_phi(to_sphere(q5).phi()).max(0.0);
    let mut k = (phi5 / TWO_PI_3).floor() as u32;
    if phi5 - k as f64 * TWO_PI_3 > TWO_PI_3 - BOUNDARY_TOL {
        k += 1;
    }
    let rot = MoebiusMap::scaling(omega().powu(k % 3))?;
    q4 = rot.apply(q4);
    q5 = rot.apply(q5);
    let p4 = to_sphere(q4);
    let p5 = to_sphere(q5);
    let theta1 = if (p4.theta() - FRAC_PI_2).abs() <= BOUNDARY_TOL { FRAC_PI_2 } else { p4.theta() };
    let (theta1, phi1) = at_pole(theta1, p4.phi());
    let (theta2, phi2) = at_pole(p5.theta(), wrapped_phi(p5.phi()).max(0.0));
    Ok([theta1, phi1, theta2, phi2])
}

/// One (of possibly several) generic five-qubit representatives, using the
/// first three sites in serialization order as the triangle.
pub fn representative_5_generic(s: &SymmetricState, tol: f64) -> Result<CanonicalForm> {
    let (dc, sites) = generic_5_sites(s, tol)?;
    let [t1, f1, t2, f2] = fold_parameters_5_generic(&sites, [0, 1, 2, 3, 4])?;
    Ok(CanonicalForm {
        n: 5,
        label: dc,
        params: vec![t1, f1, t2, f2],
        state: family_5_generic(t1, f1, t2, f2),
        unique: false,
    })
}

/// Every distinct generic representative reachable by some site ordering.
pub fn representatives_5_generic_all(s: &SymmetricState, tol: f64) -> Result<Vec<[f64; 4]>> {
    let (_, sites) = generic_5_sites(s, tol)?;
    let mut out: Vec<[f64; 4]> = Vec::new();
    for order in permutations(5) {
        let order: [usize; 5] = order.try_into().expect("length 5");
        let p = fold_parameters_5_generic(&sites, order)?;
        if !out.iter().any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() < 1e-9)) {
            out.push(p);
        }
    }
    Ok(out)
}

fn generic_5_sites(s: &SymmetricState, tol: f64) -> Result<(DegeneracyConfiguration, [ExtendedComplex; 5])> {
    if s.n() != 5 {
        return domain(format!("the generic five-qubit family needs n = 5, got {}", s.n()));
    }
    let (dc, clusters) = sites_of(s, tol)?;
    if dc.diversity() != 5 {
        return domain(format!("the generic five-qubit family needs 5 distinct roots, found {dc}"));
    }
    Ok((dc, std::array::from_fn(|i| clusters.sites()[i].0)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
