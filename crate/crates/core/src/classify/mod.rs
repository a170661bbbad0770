//! Degeneracy configurations and LOCC/SLOCC equivalence of symmetric states.
//!
//! Two symmetric states are SLOCC-equivalent exactly when a Möbius map takes
//! one root multiset onto the other, and LOCC-equivalent when that map can be
//! chosen unitary (a rigid rotation of the sphere). Multiplicities of
//! coinciding roots are preserved by every such map, so the sorted
//! multiplicity partition is a coarser invariant.
//!
//! For at least three distinct sites a map is pinned down by the images of
//! three sites, so trying every multiplicity-compatible image of one fixed
//! source triple is an exhaustive search. One or two sites are handled in
//! closed form.

mod circles;

use std::fmt;

use num_complex::Complex64 as C64;

pub use circles::{circle_signature, cocircularity_witness, Circle, CircleSignature};

use crate::error::{domain, Result};
use crate::moebius::{cross_ratio, MoebiusMap};
use crate::symstate::{majorana_roots, ExtendedComplex, RootMultiset, SymmetricState};

/// Sorted multiplicity partition `n₁ ≥ … ≥ n_d` of the Majorana points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyConfiguration {
    partition: Vec<usize>,
}

impl DegeneracyConfiguration {
    pub fn new(mut partition: Vec<usize>) -> Result<Self> {
        if partition.is_empty() || partition.contains(&0) {
            return domain("a partition needs at least one positive part");
        }
        partition.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegeneracyConfiguration { partition })
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    /// Number of distinct Majorana points.
    pub fn diversity(&self) -> usize {
        self.partition.len()
    }

    pub fn n(&self) -> usize {
        self.partition.iter().sum()
    }
}

impl fmt::Display for DegeneracyConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(|p| p.to_string()).collect();
        write!(f, "D_{{{}}}", parts.join(","))
    }
}

/// Distinct root sites with multiplicities, in serialization order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredRoots {
    sites: Vec<(ExtendedComplex, usize)>,
}

impl ClusteredRoots {
    pub fn sites(&self) -> &[(ExtendedComplex, usize)] {
        &self.sites
    }

    pub fn n(&self) -> usize {
        self.sites.iter().map(|s| s.1).sum()
    }

    pub fn to_multiset(&self) -> RootMultiset {
        RootMultiset::from_points(
            self.sites.iter().flat_map(|&(z, m)| std::iter::repeat_n(z, m)),
        )
        .expect("clusters are never empty")
    }
}

/// Groups roots by single-linkage clustering in the chordal metric.
pub fn degeneracy_configuration(
    r: &RootMultiset,
    tol: f64,
) -> (DegeneracyConfiguration, ClusteredRoots) {
    let points = r.points();
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i].chordal_distance(&points[j]) <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<ExtendedComplex>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if index_of_root[root] == usize::MAX {
            index_of_root[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[root]].push(points[i]);
    }
    let mut sites: Vec<(ExtendedComplex, usize)> =
        groups.iter().map(|g| (cluster_center(g), g.len())).collect();
    sites.sort_by(|a, b| a.0.serial_cmp(&b.0));
    let dc = DegeneracyConfiguration::new(sites.iter().map(|s| s.1).collect())
        .expect("at least one site");
    (dc, ClusteredRoots { sites })
}

/// Mean of a cluster, taken in the chart (z or 1/z) of its first member.
fn cluster_center(group: &[ExtendedComplex]) -> ExtendedComplex {
    if group.len() == 1 || group.iter().any(|z| z.is_infinite()) {
        return if group.iter().any(|z| z.is_infinite()) { ExtendedComplex::Infinity } else { group[0] };
    }
    let near_origin = group[0].finite().is_some_and(|z| z.norm() <= 1.0);
    let chart = |z: ExtendedComplex| if near_origin { z } else { z.recip() };
    let sum: C64 = group.iter().map(|&z| chart(z).finite().unwrap_or_default()).sum();
    chart(ExtendedComplex::Finite(sum / group.len() as f64))
}

/// Equivalence type certified by a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Locc,
    Slocc,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Locc => "locc",
            WitnessKind::Slocc => "slocc",
        })
    }
}

/// A map taking the source roots onto the target roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceWitness {
    pub map: MoebiusMap,
    pub kind: WitnessKind,
}

/// Outcome of an equivalence decision, with the stage that ruled it out.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Equivalent(EquivalenceWitness),
    /// The degeneracy partitions differ.
    ConfigurationMismatch(DegeneracyConfiguration, DegeneracyConfiguration),
    /// Every candidate map failed.
    Exhausted,
}

impl Verdict {
    pub fn witness(&self) -> Option<EquivalenceWitness> {
        match self {
            Verdict::Equivalent(w) => Some(*w),
            _ => None,
        }
    }
}

/// Decides SLOCC or LOCC equivalence of two states.
pub fn decide(s1: &SymmetricState, s2: &SymmetricState, kind: WitnessKind, tol: f64) -> Result<Verdict> {
    if s1.n() != s2.n() {
        return domain(format!("qubit counts differ: {} vs {}", s1.n(), s2.n()));
    }
    decide_roots(&majorana_roots(s1)?, &majorana_roots(s2)?, kind, tol)
}

/// [`decide`] on root multisets.
pub fn decide_roots(r1: &RootMultiset, r2: &RootMultiset, kind: WitnessKind, tol: f64) -> Result<Verdict> {
    if r1.n() != r2.n() {
        return domain(format!("qubit counts differ: {} vs {}", r1.n(), r2.n()));
    }
    let (dc1, c1) = degeneracy_configuration(r1, tol);
    let (dc2, c2) = degeneracy_configuration(r2, tol);
    if dc1 != dc2 {
        return Ok(Verdict::ConfigurationMismatch(dc1, dc2));
    }
    let found = match dc1.diversity() {
        1 => Some(single_site_map(c1.sites[0].0, c2.sites[0].0)),
        2 => two_site_map(&c1, &c2, kind, tol),
        _ => triple_search(&c1, &c2, kind, tol),
    };
    Ok(match found {
        Some(map) => Verdict::Equivalent(EquivalenceWitness { map, kind }),
        None => Verdict::Exhausted,
    })
}

/// A Möbius map taking the roots of `s1` onto those of `s2`, if any.
pub fn slocc_equivalent(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<Option<EquivalenceWitness>> {
    Ok(decide(s1, s2, WitnessKind::Slocc, tol)?.witness())
}

/// A unitary map taking the roots of `s1` onto those of `s2`, if any.
pub fn locc_equivalent(s1: &SymmetricState, s2: &SymmetricState, tol: f64) -> Result<Option<EquivalenceWitness>> {
    Ok(decide(s1, s2, WitnessKind::Locc, tol)?.witness())
}

/// Rotation carrying `u` to `v`.
fn single_site_map(u: ExtendedComplex, v: ExtendedComplex) -> MoebiusMap {
    MoebiusMap::unitary_from_north(v).compose(&MoebiusMap::unitary_from_north(u).inverse())
}

/// Map sending `p` to 0 and `q` to ∞.
fn zero_infinity_map(p: ExtendedComplex, q: ExtendedComplex) -> MoebiusMap {
    let (px, py) = p.homogeneous();
    let (qx, qy) = q.homogeneous();
    MoebiusMap::new(py, -px, qy, -qx).expect("distinct sites")
}

fn two_site_map(c1: &ClusteredRoots, c2: &ClusteredRoots, kind: WitnessKind, tol: f64) -> Option<MoebiusMap> {
    let [(u1, m1), (u2, _)] = [c1.sites[0], c1.sites[1]];
    let assignments = [(0usize, 1usize), (1, 0)];
    for (i, j) in assignments {
        let (v1, n1) = c2.sites[i];
        let v2 = c2.sites[j].0;
        if n1 != m1 {
            continue;
        }
        match kind {
            WitnessKind::Slocc => {
                // Every map fixing 0 and ∞ is a scaling; the identity one suffices.
                return Some(zero_infinity_map(v1, v2).inverse().compose(&zero_infinity_map(u1, u2)));
            }
            WitnessKind::Locc => {
                if (u1.chordal_distance(&u2) - v1.chordal_distance(&v2)).abs() > tol {
                    continue;
                }
                // Send u1 and v1 to the north pole; the remaining freedom is a
                // rotation about the polar axis, fixed by the second site.
                let a = MoebiusMap::unitary_from_north(u1).inverse();
                let b = MoebiusMap::unitary_from_north(v1).inverse();
                let pa = a.apply(u2).finite().unwrap_or_default();
                let pb = b.apply(v2).finite().unwrap_or_default();
                let phase = if pa.norm() == 0.0 || pb.norm() == 0.0 {
                    C64::new(1.0, 0.0)
                } else {
                    let r = pb / pa;
                    r / r.norm()
                };
                let spin = MoebiusMap::scaling(phase).expect("unit phase");
                return Some(b.inverse().compose(&spin.compose(&a)));
            }
        }
    }
    None
}

fn triple_search(c1: &ClusteredRoots, c2: &ClusteredRoots, kind: WitnessKind, tol: f64) -> Option<MoebiusMap> {
    let src = [c1.sites[0], c1.sites[1], c1.sites[2]];
    let d = c2.sites.len();
    for i in 0..d {
        if c2.sites[i].1 != src[0].1 {
            continue;
        }
        for j in 0..d {
            if j == i || c2.sites[j].1 != src[1].1 {
                continue;
            }
            for k in 0..d {
                if k == i || k == j || c2.sites[k].1 != src[2].1 {
                    continue;
                }
                let Ok(mut map) = MoebiusMap::from_three_points(
                    src.map(|s| s.0),
                    [c2.sites[i].0, c2.sites[j].0, c2.sites[k].0],
                ) else {
                    continue;
                };
                if kind == WitnessKind::Locc {
                    match map.projective_unitary(tol) {
                        Some(u) => map = u,
                        None => continue,
                    }
                }
                if sites_match(&map, c1, c2, tol) {
                    return Some(map);
                }
            }
        }
    }
    None
}

/// Whether `map` carries every site of `c1` onto a site of `c2` with the
/// same multiplicity, bijectively, within `tol`.
pub fn sites_match(map: &MoebiusMap, c1: &ClusteredRoots, c2: &ClusteredRoots, tol: f64) -> bool {
    if c1.sites.len() != c2.sites.len() {
        return false;
    }
    let mut used = vec![false; c2.sites.len()];
    for &(z, m) in &c1.sites {
        let image = map.apply(z);
        let best = c2
            .sites
            .iter()
            .enumerate()
            .filter(|(idx, s)| !used[*idx] && s.1 == m)
            .map(|(idx, s)| (idx, image.chordal_distance(&s.0)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((idx, dist)) if dist <= tol => used[idx] = true,
            _ => return false,
        }
    }
    true
}

/// Cross-ratios of four distinct sites over all 24 orderings.
pub fn cross_ratio_fingerprint(r: &RootMultiset, tol: f64) -> Result<Vec<ExtendedComplex>> {
    let (dc, clusters) = degeneracy_configuration(r, tol);
    if dc.diversity() != 4 {
        return domain(format!("fingerprint needs exactly 4 distinct sites, found {}", dc.diversity()));
    }
    let s: Vec<ExtendedComplex> = clusters.sites.iter().map(|x| x.0).collect();
    let mut out = Vec::with_capacity(24);
    for p in permutations4() {
        out.push(cross_ratio([s[p[0]], s[p[1]], s[p[2]], s[p[3]]])?);
    }
    Ok(out)
}

/// Whether two fingerprints share a value within chordal `tol`. Disjoint
/// fingerprints certify SLOCC inequivalence.
pub fn fingerprints_intersect(f1: &[ExtendedComplex], f2: &[ExtendedComplex], tol: f64) -> bool {
    f1.iter().any(|a| f2.iter().any(|b| a.chordal_distance(b) <= tol))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
