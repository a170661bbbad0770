//! Majorana representation of permutation-symmetric n-qubit pure states.
//!
//! A symmetric state is stored by its Dicke amplitudes and, equivalently, by
//! the roots of its Majorana polynomial, i.e. a multiset of points on the
//! extended complex plane (or, via stereographic projection, on the sphere).
//! Symmetric SLOCC operations act on those roots as Möbius transformations,
//! which turns entanglement classification into point-configuration geometry:
//!
//! * [`symstate`]: states, roots, sphere coordinates, and the root finder.
//! * [`moebius`]: the Möbius group, cross-ratios, map classification and the
//!   affine ⊗ unitary factorization of SLOCC operations.
//! * [`classify`]: degeneracy configurations and the LOCC/SLOCC deciders with
//!   explicit witnesses, plus cocircularity inequivalence certificates.
//! * [`canonical`]: canonical representatives for up to five qubits.
//! * [`oracle`]: a deliberately naive dense-vector engine used to cross-check
//!   the root-level machinery.
//! * [`doc`]: the JSON document formats.

pub mod canonical;
pub mod classify;
pub mod doc;
mod error;
pub mod moebius;
pub mod oracle;
pub mod symstate;

pub use num_complex::Complex64;

pub use canonical::{canonicalize, CanonicalForm};
pub use classify::{
    cocircularity_witness, degeneracy_configuration, locc_equivalent, slocc_equivalent,
    ClusteredRoots, DegeneracyConfiguration, EquivalenceWitness, WitnessKind,
};
pub use error::{Error, Result};
pub use moebius::{AffineMap, Decomposition, MapClass, MapKind, MoebiusMap};
pub use symstate::{
    ExtendedComplex, PolynomialCoeffs, RootMultiset, SpherePoint, SymmetricState,
};

/// Default chordal tolerance for clustering roots and matching multisets.
pub const DEFAULT_TOL: f64 = 1e-7;
