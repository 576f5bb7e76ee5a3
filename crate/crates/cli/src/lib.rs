//! The `lpvv` command-line driver.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use args::{parse_cli, Parsed, RunConfig, SubcommandKind};
pub use config::{load_config, RawConfig};
pub use error::{CliError, EXIT_AUDIT_FAIL, EXIT_IO, EXIT_PASS, EXIT_USAGE};
pub use output::write_report;

/// Parse `argv`, run the subcommand and map the outcome to an exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let out_env = std::env::var(args::OUT_ENV).ok();
    let rc = match parse_cli(argv, out_env.as_deref()) {
        Ok(Parsed::Run(rc)) => rc,
        Ok(Parsed::Display(text)) => {
            print!("{text}");
            return EXIT_PASS;
        }
        Err(e) => {
            eprint!("{e}");
            return e.exit_code();
        }
    };
    match commands::run(&rc) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_AUDIT_FAIL,
        Err(e) => {
            eprintln!("lpvv {}: {e}", rc.subcommand.name());
            e.exit_code()
        }
    }
}
