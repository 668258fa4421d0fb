fn main() -> std::process::ExitCode {
    cyclic_operads::cli::main()
}
