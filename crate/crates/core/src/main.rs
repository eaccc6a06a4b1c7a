fn main() {
    std::process::exit(subtour_gap::cli::run_from(std::env::args_os()));
}
