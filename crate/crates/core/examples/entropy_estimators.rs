//! The two Rényi entropy estimators on samples with known entropy, and the
//! normalized scores that drive prototype compression and expansion.
//!
//!     cargo run --example entropy_estimators

use std::f64::consts::PI;

use odse::entropy::{mst_entropy, normalized_column_entropy, qre_entropy, EstimatorConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller.
    let (u, v): (f64, f64) = (rng.random(), rng.random());
    (-2.0 * (1.0 - u).ln()).sqrt() * (2.0 * PI * v).cos()
}

fn main() -> odse::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let normal: Vec<[f64; 1]> = (0..1000).map(|_| [gaussian(&mut rng)]).collect();
    println!("N(0,1), 1000 draws");
    println!("  Renyi-2 closed form   {:.4}", (2.0 * PI.sqrt()).ln());
    for sigma in [0.1, 0.3, 1.0] {
        println!("  QRE sigma={sigma:<4}        {:.4}", qre_entropy(&normal, sigma)?);
    }

    let square: Vec<[f64; 2]> = (0..500).map(|_| [rng.random(), rng.random()]).collect();
    println!("\nuniform on the unit square, 500 draws");
    for alpha in [0.25, 0.5, 0.75] {
        println!("  MST alpha={alpha:<4}        {:.4}", mst_entropy(&square, &EstimatorConfig::mst(alpha))?);
    }

    println!("\nnormalized column scores (QRE, sigma = 0.5)");
    let est = EstimatorConfig::qre(0.5);
    let columns: [(&str, Vec<f64>); 4] = [
        ("constant", vec![4.0; 50]),
        ("two clumps", (0..50).map(|i| if i < 25 { 0.0 } else { 10.0 }).collect()),
        ("one outlier", (0..50).map(|i| if i == 0 { 10.0 } else { 0.1 * (i % 3) as f64 }).collect()),
        ("uniform", (0..50).map(|i| i as f64 / 5.0).collect()),
    ];
    for (name, col) in &columns {
        println!("  {name:<12} {:.4}", normalized_column_entropy(col, &est)?.normalized);
    }
    Ok(())
}
