//! Full replay at N = 6 and N = 10 with the JSON report and exit code.

use semistable_audit::audit::{cmd_audit, AuditOptions};

fn main() -> semistable_audit::Result<()> {
    for n in [6, 10] {
        let report = cmd_audit(n, &AuditOptions::default())?;
        print!("{}", report.render());
        println!("exit code {}", report.exit_code());
    }
    let report = cmd_audit(10, &AuditOptions::default())?;
    println!("{}…", report.to_json().chars().take(400).collect::<String>());
    Ok(())
}
