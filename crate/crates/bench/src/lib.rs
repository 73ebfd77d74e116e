//! Benchmark-only crate; see `benches/engine.rs`.

/// A reproducible element family for benchmarks: magnitudes cycle through
/// a few decades, arguments walk a fixed irrational rotation.
pub fn bench_elements(len: usize) -> Vec<cfrac_core::Complex64> {
    (1..=len)
        .map(|n| {
            let mag = 10f64.powf(((n % 7) as f64 - 3.0) / 3.0);
            let arg = 0.61803398875 * n as f64 % 1.2 - 0.6;
            cfrac_core::Complex64::from_polar(mag, arg)
        })
        .collect()
}
