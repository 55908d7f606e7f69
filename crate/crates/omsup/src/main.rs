fn main() -> std::process::ExitCode {
    omsup::cli::run()
}
