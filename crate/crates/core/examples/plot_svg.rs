//! SVG of a planar instance with its fractional tour and one shortcut tour.

use subtour_gap::cli::plot::{render_svg, PlotOptions};
use subtour_gap::families::{fractional_xijk, gen_i2, pseudo_tour, shortcut_tour, Ijk, PseudoTourTag};

fn main() -> subtour_gap::Result<()> {
    let p = Ijk::new(1, 2, 1);
    let inst = gen_i2(p);
    let tour = shortcut_tour(&pseudo_tour(p, PseudoTourTag::Up(1))?, &inst)?;
    let opts = PlotOptions { tour: Some(tour), fractional: Some(fractional_xijk(p)), labels: true };
    let out = std::env::args().nth(1).unwrap_or_else(|| "i2_1_2_1.svg".into());
    std::fs::write(&out, render_svg(&inst, &opts))?;
    println!("wrote {out}");
    Ok(())
}
