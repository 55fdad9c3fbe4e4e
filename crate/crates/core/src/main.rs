use std::process::exit;

fn main() {
    exit(disc_diffeo::cli::run(std::env::args_os()))
}
