//! Cutting-plane subtour LP on a small Euclidean instance.

use subtour_gap::lp::solve_subtour_lp;
use subtour_gap::{Instance, NormSpec};

fn main() -> subtour_gap::Result<()> {
    // Two unit squares joined by long edges: the LP wants two subtours
    // until the cut between the squares is added.
    let pts = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
        vec![5.0, 0.0],
        vec![6.0, 0.0],
        vec![6.0, 1.0],
        vec![5.0, 1.0],
    ];
    let inst = Instance::new(2, pts, NormSpec::euclidean())?;
    let sol = solve_subtour_lp(&inst)?;
    println!("LP cost {:.6} after {} cuts, min cut {:.6}", sol.cost, sol.cuts.len(), sol.min_cut);
    for (e, w) in sol.x.iter() {
        println!("  {}-{}  {w:.4}", e.u(), e.v());
    }
    Ok(())
}
