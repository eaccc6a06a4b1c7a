//! The ratio report the command-line tool prints, built in process.

use subtour_gap::cli::report::ratio_report;
use subtour_gap::families::{gen_i3, Ijk};

fn main() -> subtour_gap::Result<()> {
    let rep = ratio_report(&gen_i3(Ijk::new(1, 0, 2)), vec!["example".into()])?;
    print!("{}", rep.to_json());
    Ok(())
}
