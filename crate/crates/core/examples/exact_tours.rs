//! Held-Karp against brute force and the 2-opt upper bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtour_gap::exact::{brute_force, held_karp, two_opt_tour};
use subtour_gap::{Instance, NormSpec};

fn main() -> subtour_gap::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [6, 9, 11, 14] {
        let pts = (0..n).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        let inst = Instance::new(2, pts, NormSpec::euclidean())?;
        let hk = held_karp(&inst)?;
        let (_, upper) = two_opt_tour(&inst)?;
        let bf = if n <= 11 { format!("{:.9}", brute_force(&inst)?.length) } else { "-".into() };
        println!("n = {n:>2}  held-karp {:.9}  brute force {bf:>11}  2-opt {upper:.9}", hk.length);
    }
    Ok(())
}
