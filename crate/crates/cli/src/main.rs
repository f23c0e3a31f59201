fn main() {
    let capacity = std::env::var(evaplab_cli::CAPACITY_ENV).ok();
    std::process::exit(evaplab_cli::run_from(std::env::args_os(), capacity.as_deref()));
}
