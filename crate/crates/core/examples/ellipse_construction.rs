//! Euclidean instances from the ellipse construction, checked exactly.

use subtour_gap::ellipse::{ellipse_construct, DEFAULT_EPS};
use subtour_gap::exact::held_karp;
use subtour_gap::lp::solve_subtour_lp;

fn main() -> subtour_gap::Result<()> {
    for (i, j) in [(0, 0), (1, 1), (2, 2), (3, 6)] {
        let c = ellipse_construct(i, j, DEFAULT_EPS)?;
        print!("({i},{j}) n = {:>2}  b = {:.6}  ratio {:.6}", c.instance.n(), c.params.b, c.ratio);
        if c.instance.n() <= 14 {
            let opt = held_karp(&c.instance)?.length;
            let lp = solve_subtour_lp(&c.instance)?.cost;
            print!("  certified {:.6}", opt / lp);
        }
        println!();
    }
    Ok(())
}
