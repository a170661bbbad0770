//! Polynomial roots via companion-matrix eigenvalues.
//!
//! The companion matrix of the monic polynomial is balanced and reduced with
//! single-shift complex QR (it is already upper Hessenberg). Each eigenvalue
//! is then Newton-polished in the chart where it has modulus at most one, so
//! roots near ∞ are refined through the reversed polynomial.
//!
//! Eigenvalues of a k-fold root scatter by roughly `u^{1/k}`. Clusters are
//! therefore tested for genuine multiplicity: a cluster of k roots is snapped
//! to a single point `c` when the first k Taylor coefficients of the
//! polynomial at `c` vanish to within rounding noise.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Newton polishing iteration cap per root.
pub const POLISH_ITERATIONS: usize = 100;
/// QR sweeps allowed per eigenvalue before giving up.
const QR_SWEEPS_PER_EIGENVALUE: usize = 60;
/// Residual acceptance: `|p(z)| ≤ RESIDUAL_TOL · max|c| · max(1,|z|)^deg`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Relative noise level below which Taylor coefficients count as zero.
const MULTIPLICITY_TOL: f64 = 1e-12;
/// Candidate clusters wider than this (chordal) are never tested.
const CLUSTER_DIAMETER: f64 = 0.5;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn abs1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// All roots of `Σ coeffs[k] z^k`. The leading coefficient must be nonzero.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    if lead == ZERO {
        return Err(Error::Numeric("leading coefficient is zero".into()));
    }
    let raw = if degree == 1 {
        vec![-coeffs[0] / lead]
    } else {
        let mut h = companion(coeffs);
        balance(&mut h);
        hessenberg_eigenvalues(&mut h)?
    };
    let mut roots = Vec::with_capacity(degree);
    for z in raw {
        roots.push(polish(coeffs, z)?);
    }
    merge_multiple_roots(coeffs, &mut roots);
    for &z in &roots {
        if !residual_ok(coeffs, z) {
            return Err(Error::Numeric(format!(
                "root {z} fails the residual bound after {POLISH_ITERATIONS} polishing steps"
            )));
        }
    }
    Ok(roots)
}

/// Companion matrix with ones on the subdiagonal and `−c_k/c_n` in the last
/// column.
fn companion(coeffs: &[C64]) -> Vec<Vec<C64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut h = vec![vec![ZERO; n]; n];
    for i in 1..n {
        h[i][i - 1] = ONE;
    }
    for i in 0..n {
        h[i][n - 1] = -coeffs[i] / lead;
    }
    h
}

/// Diagonal similarity scaling by powers of two so that row and column
/// norms are comparable. Preserves the Hessenberg structure.
fn balance(a: &mut [Vec<C64>]) {
    const RADIX: f64 = 2.0;
    let n = a.len();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[j][i]);
                    r += abs1(a[i][j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[i][j] /= f;
                    a[j][i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by shifted QR with Givens
/// rotations. The matrix is destroyed.
fn hessenberg_eigenvalues(h: &mut [Vec<C64>]) -> Result<Vec<C64>> {
    let n = h.len();
    let eps = f64::EPSILON;
    let mut eig = vec![ZERO; n];
    let norm: f64 = h.iter().flat_map(|row| row.iter()).map(|&z| abs1(z)).sum();
    let mut hi = n;
    let mut iter = 0usize;
    let mut rot: Vec<(f64, C64)> = Vec::with_capacity(n);
    while hi > 0 {
        // Locate the start of the active unreduced block.
        let mut l = hi - 1;
        while l > 0 {
            let mut s = abs1(h[l - 1][l - 1]) + abs1(h[l][l]);
            if s == 0.0 {
                s = norm;
            }
            if abs1(h[l][l - 1]) <= eps * s {
                h[l][l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi - 1 {
            eig[hi - 1] = h[hi - 1][hi - 1];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > QR_SWEEPS_PER_EIGENVALUE {
            return Err(Error::Numeric(format!(
                "QR iteration did not converge for eigenvalue {} of {n}",
                hi
            )));
        }
        let shift = if iter.is_multiple_of(10) {
            let mut m = abs1(h[hi - 1][hi - 2]);
            if hi >= 3 {
                m += abs1(h[hi - 2][hi - 3]);
            }
            h[hi - 1][hi - 1] + C64::new(0.75 * m, -0.4375 * m)
        } else {
            wilkinson_shift(
                h[hi - 2][hi - 2],
                h[hi - 2][hi - 1],
                h[hi - 1][hi - 2],
                h[hi - 1][hi - 1],
            )
        };
        for k in l..hi {
            h[k][k] -= shift;
        }
        rot.clear();
        for k in l..hi - 1 {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            rot.push((c, s));
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 1).min(hi - 1) {
                let x = h[i][k];
                let y = h[i][k + 1];
                h[i][k] = x * c + y * s.conj();
                h[i][k + 1] = -x * s + y * c;
            }
        }
        for k in l..hi {
            h[k][k] += shift;
        }
    }
    Ok(eig)
}

/// Rotation `[c s; −s̄ c]` with real `c` that zeroes `b` in `(a, b)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let rho = na.hypot(nb);
    let phase = a / na;
    (na / rho, phase * b.conj() / rho)
}

/// Eigenvalue of the trailing 2×2 block closer to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let e1 = mid + disc;
    let e2 = mid - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// A root expressed in the chart where it has modulus ≤ 1: the polynomial
/// itself, or the reversed polynomial in `w = 1/z`.
struct Chart {
    coeffs: Vec<C64>,
    reversed: bool,
}

impl Chart {
    fn for_point(coeffs: &[C64], z: C64) -> Self {
        if z.norm() <= 1.0 {
            Chart { coeffs: coeffs.to_vec(), reversed: false }
        } else {
            Chart { coeffs: coeffs.iter().rev().copied().collect(), reversed: true }
        }
    }

    fn to_local(&self, z: C64) -> C64 {
        if self.reversed {
            z.inv()
        } else {
            z
        }
    }

    fn to_global(&self, w: C64) -> C64 {
        if self.reversed {
            w.inv()
        } else {
            w
        }
    }
}

fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn max_abs(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn residual_ok(coeffs: &[C64], z: C64) -> bool {
    let chart = Chart::for_point(coeffs, z);
    let w = chart.to_local(z);
    let (p, _) = horner(&chart.coeffs, w);
    p.norm() <= RESIDUAL_TOL * max_abs(coeffs)
}

/// Newton iteration in the local chart. Steps are only taken while they
/// reduce the residual; a stall is not an error as long as the residual
/// bound holds, which the caller checks.
fn polish(coeffs: &[C64], z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Numeric(format!("non-finite eigenvalue {z}")));
    }
    if z == ZERO {
        return Ok(z);
    }
    let chart = Chart::for_point(coeffs, z);
    let mut w = chart.to_local(z);
    let (mut p, mut dp) = horner(&chart.coeffs, w);
    for _ in 0..POLISH_ITERATIONS {
        if p == ZERO || dp == ZERO {
            break;
        }
        let step = p / dp;
        let candidate = w - step;
        let (pc, dpc) = horner(&chart.coeffs, candidate);
        if pc.norm() >= p.norm() {
            break;
        }
        w = candidate;
        p = pc;
        dp = dpc;
        if step.norm() <= 4.0 * f64::EPSILON * w.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(chart.to_global(w))
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Taylor coefficients `p^{(j)}(c)/j!` for `j ≤ order` together with the
/// matching rounding-noise scale `max|coeff| · Σ_i C(i,j) |c|^{i−j}`.
fn taylor(coeffs: &[C64], c: C64, order: usize) -> Vec<(C64, f64)> {
    let big = max_abs(coeffs);
    let r = c.norm();
    (0..=order)
        .map(|j| {
            let mut t = ZERO;
            let mut noise = 0.0;
            let mut cp = ONE;
            let mut rp = 1.0;
            for (i, &ci) in coeffs.iter().enumerate().skip(j) {
                let b = binomial(i, j);
                t += ci * cp * b;
                noise += b * rp;
                cp *= c;
                rp *= r;
            }
            (t, big * noise)
        })
        .collect()
}

/// Snaps every cluster of numerically coincident roots to one point.
fn merge_multiple_roots(coeffs: &[C64], roots: &mut [C64]) {
    let n = roots.len();
    if n < 2 {
        return;
    }
    let chord = |a: C64, b: C64| {
        crate::ExtendedComplex::Finite(a).chordal_distance(&crate::ExtendedComplex::Finite(b))
    };
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut neighbours: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i && !assigned[j])
            .map(|j| (chord(roots[i], roots[j]), j))
            .filter(|&(d, _)| d <= CLUSTER_DIAMETER)
            .collect();
        neighbours.sort_by(|a, b| a.0.total_cmp(&b.0));
        for k in (2..=neighbours.len() + 1).rev() {
            let members: Vec<usize> =
                std::iter::once(i).chain(neighbours[..k - 1].iter().map(|&(_, j)| j)).collect();
            if let Some(c) = validate_cluster(coeffs, roots, &members) {
                for &m in &members {
                    roots[m] = c;
                    assigned[m] = true;
                }
                break;
            }
        }
        assigned[i] = true;
    }
}

/// Returns the common point of a genuine k-fold root, or `None`.
fn validate_cluster(coeffs: &[C64], roots: &[C64], members: &[usize]) -> Option<C64> {
    let k = members.len();
    let mean = members.iter().map(|&m| roots[m]).sum::<C64>() / k as f64;
    let chart = Chart::for_point(coeffs, mean);
    let local: Vec<C64> = members.iter().map(|&m| chart.to_local(roots[m])).collect();
    let mut c = local.iter().sum::<C64>() / k as f64;
    // Newton on the (k−1)-th derivative, which has a simple root at c.
    let mut t = taylor(&chart.coeffs, c, k);
    for _ in 0..20 {
        let denom = t[k].0 * k as f64;
        if denom == ZERO {
            break;
        }
        let candidate = c - t[k - 1].0 / denom;
        let tc = taylor(&chart.coeffs, candidate, k);
        if tc[k - 1].0.norm() >= t[k - 1].0.norm() {
            break;
        }
        c = candidate;
        t = tc;
    }
    // Exactly k-fold: the first k coefficients vanish and the k-th does not.
    let vanishes = t[..k].iter().all(|&(tj, noise)| tj.norm() <= MULTIPLICITY_TOL * noise);
    if !vanishes || t[k].0.norm() <= MULTIPLICITY_TOL * t[k].1 {
        return None;
    }
    // Perturbing a k-fold root by δ scatters it over radius (δ/|T_k|)^{1/k}.
    // Members farther out are separate roots near a point where p happens
    // to be flat, not copies of this one.
    let radius = 2.0 * (MULTIPLICITY_TOL * t[0].1 / t[k].0.norm()).powf(1.0 / k as f64);
    if local.iter().any(|w| (w - c).norm() > radius) {
        return None;
    }
    let z = chart.to_global(c);
    // The members must be the roots nearest to c.
    let chord = |w: C64| crate::ExtendedComplex::Finite(z).chordal_distance(&crate::ExtendedComplex::Finite(w));
    let reach = members.iter().map(|&m| chord(roots[m])).fold(0.0, f64::max);
    let outside = (0..roots.len()).filter(|j| !members.contains(j)).map(|j| chord(roots[j]));
    if outside.fold(f64::INFINITY, f64::min) <= reach {
        return None;
    }
    residual_ok(coeffs, z).then_some(z)
}
