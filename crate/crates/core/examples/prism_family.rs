//! Rectilinear prism family and the metric ratio ladder.

use subtour_gap::exact::integrality_ratio;
use subtour_gap::families::{best_partition, gen_i3, metric_ratio_by_n, Family};

fn main() -> subtour_gap::Result<()> {
    for n in 6..=14 {
        let p = best_partition(n, Family::Metric)?;
        let certified = integrality_ratio(&gen_i3(p))?;
        println!("n = {n:>2}  {p}  certified {certified:.9}  formula {:.9}", metric_ratio_by_n(n));
    }
    // The ladder approaches 4/3 slowly.
    for n in [30, 100, 1000] {
        println!("n = {n:>4}  {:.6}", metric_ratio_by_n(n));
    }
    Ok(())
}
