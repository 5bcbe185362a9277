fn main() -> std::process::ExitCode {
    qreuse::cli::main()
}
