//! The two-sided discriminant window for a wild cubic step at N = 10 and
//! the case split on the ramification index.

use semistable_audit::audit::{cmd_check, AuditOptions, CheckArgs};

fn main() -> semistable_audit::Result<()> {
    let opts = AuditOptions::default();
    for id in ["wild-group-orders", "order12-abelianization", "disc-window", "conductor-cap"] {
        let report = cmd_check(id, &CheckArgs::default(), &opts)?;
        println!("{}", report.claims[0]);
    }
    let window = cmd_check("disc-window", &CheckArgs::default(), &opts)?;
    println!("{}", serde_json::to_string_pretty(&window.claims[0].quantities["report"]["cases"])?);
    Ok(())
}
