//! Convex combination of pseudo-tours certifying the metric upper bound.

use subtour_gap::families::{lambda_certificate, Ijk};

fn main() -> subtour_gap::Result<()> {
    let p = Ijk::new(1, 2, 1);
    let cert = lambda_certificate(p)?;
    println!("{p}: multiplier {:.9}, sum of coefficients {:.15}", cert.multiplier, cert.lambda_sum);
    for (tag, l) in &cert.coefficients {
        println!("  {:<10} {l:.6}", tag.name());
    }
    println!("largest deviation from multiplier * x: {:.2e}", cert.max_residual);
    Ok(())
}
