//! Criterion benchmarks for `thermolam`; run with `cargo bench -p thermolam-bench`.

use thermolam::laminate::DEFAULT_PLY_THICKNESS;
use thermolam::Laminate;

/// A 0/90 laminate of `n` plies with the angles in a fixed pseudo-random order.
pub fn cross_ply(n: usize) -> Laminate {
    let angles: Vec<f64> = (0..n)
        .map(|k| if (k * 7 + 3) % 5 < 2 { 90.0 } else { 0.0 })
        .collect();
    Laminate::identical("bench", "T300/5208", &angles, DEFAULT_PLY_THICKNESS)
        .expect("catalog material")
}
