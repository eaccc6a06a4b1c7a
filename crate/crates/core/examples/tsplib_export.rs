//! Instance files: native text round trip and TSPLIB export of a benchmark prism.

use subtour_gap::cli::format::{parse_instance, write_instance};
use subtour_gap::cli::tsplib::{parse_tsplib, write_tsplib};
use subtour_gap::families::{benchmark_prism, gen_i3};

fn main() -> subtour_gap::Result<()> {
    let p = benchmark_prism(15)?;
    let inst = gen_i3(p);
    let text = write_instance(&inst);
    assert_eq!(parse_instance(&text)?, inst);
    print!("{text}");
    let tsp = write_tsplib(&inst, &format!("i3_{}_{}_{}", p.i, p.j, p.k));
    let m = parse_tsplib(&tsp)?;
    println!("TSPLIB {}: {} cities, w(0,1) = {}", m.name, m.n, m.weight(0, 1));
    Ok(())
}
