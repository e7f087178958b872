use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semistable_audit::audit::{
    check_ids, cmd_audit, cmd_check, resolve_fixture_path, AuditOptions, AuditReport, CheckArgs, EXIT_CONFIG,
    FIXTURES_ENV,
};

/// Exact replay of the non-existence argument for semistable abelian
/// varieties over Z[1/6] and Z[1/10].
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay every claim for N = 6 or N = 10.
    Audit {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["6", "10"]))]
        n: String,
        #[command(flatten)]
        common: Common,
        /// Use only unconditional discriminant bounds.
        #[arg(long)]
        without_grh: bool,
    },
    /// Run one verifier; an unknown id lists the available ones.
    Check {
        id: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        power: Option<u64>,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        dual: Option<u64>,
        #[arg(long)]
        branch: Option<String>,
    },
    /// List the ids accepted by `check`.
    List,
}

#[derive(Args)]
struct Common {
    /// Field fixtures (JSON); falls back to $AUDIT_FIXTURES, then the shipped copy.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Root-discriminant table, one `degree bound` pair per line.
    #[arg(long)]
    odlyzko: Option<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Only print the overall line.
    #[arg(long)]
    quiet: bool,
}

impl Common {
    fn options(&self, without_grh: bool) -> AuditOptions {
        AuditOptions {
            fixtures: resolve_fixture_path(self.fixtures.clone(), std::env::var_os(FIXTURES_ENV)),
            odlyzko: self.odlyzko.clone(),
            without_grh,
        }
    }
}

fn emit(report: &AuditReport, common: &Common) -> Result<(), String> {
    let text = report.render();
    if common.quiet {
        print!("{}", text.lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
    } else {
        print!("{text}");
    }
    match &common.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => std::fs::write(p, report.to_json() + "\n").map_err(|e| format!("{}: {e}", p.display()))?,
        None => {}
    }
    Ok(())
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { code(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let (result, common) = match &cli.command {
        Command::List => {
            for id in check_ids() {
                println!("{id}");
            }
            return ExitCode::SUCCESS;
        }
        Command::Audit { n, common, without_grh } => {
            let n: u64 = n.parse().expect("validated by clap");
            (cmd_audit(n, &common.options(*without_grh)), common)
        }
        Command::Check { id, common, n, l, q, power, g, k, d, dual, branch } => {
            let args = CheckArgs { n: *n, l: *l, q: *q, power: *power, g: *g, k: *k, d: *d, dual: *dual, branch: branch.clone() };
            (cmd_check(id, &args, &common.options(false)), common)
        }
    };
    match result.map_err(|e| e.to_string()).and_then(|r| emit(&r, common).map(|_| r)) {
        Ok(report) => code(report.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            code(EXIT_CONFIG)
        }
    }
}
