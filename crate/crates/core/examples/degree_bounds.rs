//! Degree bounds from the GRH root-discriminant table, including the tame
//! case and the unconditional fallback.

use semistable_audit::audit::{cmd_check, AuditOptions, CheckArgs};

fn main() -> semistable_audit::Result<()> {
    for n in [6, 10] {
        let args = CheckArgs { n: Some(n), ..Default::default() };
        for id in ["degree-bound", "tame-degree-bound"] {
            for claim in cmd_check(id, &args, &AuditOptions::default())?.claims {
                println!("N = {n}: {claim}");
            }
        }
    }
    let unconditional = AuditOptions { without_grh: true, ..Default::default() };
    let report = semistable_audit::audit::cmd_audit(6, &unconditional)?;
    println!("without GRH: {}", report.claim("degree-bound").expect("always present"));
    Ok(())
}
