//! Deterministic inputs for the benchmarks.

use majorana::{Complex64, SymmetricState};

/// A generic state with `n + 1` amplitudes from a fixed low-discrepancy walk.
pub fn generic_state(n: usize) -> SymmetricState {
    let golden = 0.618_033_988_749_895_f64;
    let amps = (0..=n)
        .map(|k| {
            let x = (k as f64 * golden).fract();
            let y = ((k as f64 + 0.5) * golden * golden).fract();
            Complex64::new(x - 0.4, y - 0.6)
        })
        .collect();
    SymmetricState::new(amps).expect("nonzero amplitudes")
}
