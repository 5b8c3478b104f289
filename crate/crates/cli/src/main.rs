use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_max_nodes = std::env::var(passnim_cli::MAX_NODES_ENV).ok();
    let code = passnim_cli::main_with(std::env::args_os(), env_max_nodes, &mut io::stdout().lock(), &mut io::stderr());
    ExitCode::from(code as u8)
}
