//! Limit ratio bounds of subdivided graphs from minimum T-joins.

use subtour_gap::families::{hexagon_spec, tetrahedron_spec, tjoin_ratio_bound};

fn main() -> subtour_gap::Result<()> {
    let b = tjoin_ratio_bound(&tetrahedron_spec(0, 0))?;
    println!("tetrahedron: c(E) = {:.6}, c(J) = {:.6}, bound {:.12}", b.edge_cost, b.tjoin_cost, b.bound);
    for (rows, cols) in [(1, 1), (2, 2), (3, 3)] {
        let b = tjoin_ratio_bound(&hexagon_spec(rows, cols, 0)?)?;
        println!("hexagon grid {rows}x{cols}: {} odd vertices, bound {:.9}", b.odd_vertices.len(), b.bound);
    }
    Ok(())
}
