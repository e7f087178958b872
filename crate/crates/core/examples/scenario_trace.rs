//! The isogeny chase for a hypothetical variety, step by step.

use semistable_audit::galmod::{run_scenario, Branch, ScenarioOptions};

fn main() -> semistable_audit::Result<()> {
    for (n, branch, d) in [(6, Branch::Toric, 1), (10, Branch::Toric, 1), (6, Branch::Mixed, 2)] {
        let trace = run_scenario(n, branch, d, &ScenarioOptions::default())?;
        println!("N = {n}, {branch:?}, d = {d}: ends in {:?}", trace.marker);
        for step in &trace.steps {
            println!("  [{:?}] {}", step.status, step.claim);
        }
    }
    Ok(())
}
