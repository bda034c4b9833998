fn main() -> std::process::ExitCode {
    easc::cli::main_entry()
}
