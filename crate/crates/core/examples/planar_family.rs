//! Rectilinear planar family: certified ratios against the closed form.

use subtour_gap::exact::certified_ratio;
use subtour_gap::families::{best_partition, closed_form_ratio_i2, gen_i2, Family};

fn main() -> subtour_gap::Result<()> {
    println!("{:>3} {:>10} {:>12} {:>12}", "n", "(i,j,k)", "certified", "closed form");
    for n in 6..=12 {
        let p = best_partition(n, Family::Rectilinear)?;
        let r = certified_ratio(&gen_i2(p))?;
        println!("{n:>3} {:>10} {:>12.9} {:>12.9}", p.to_string(), r.ratio, closed_form_ratio_i2(p));
    }
    Ok(())
}
