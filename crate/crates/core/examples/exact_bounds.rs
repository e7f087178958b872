//! Fontaine caps for N = 6 and N = 10 decided by integer comparison.

use semistable_audit::discbound::fontaine_cap;
use semistable_audit::exactnum::rat;

fn main() -> semistable_audit::Result<()> {
    for (l, bad, threshold) in [(5, [2, 3], rat(31645, 1000)), (3, [2, 5], rat(24258, 1000))] {
        let cap = fontaine_cap(l, &bad)?;
        let cmp = cap.compare_rat(&threshold);
        println!("l = {l}, bad primes {bad:?}: cap {cap} = {}…", cap.decimal(6));
        println!("  raised to the power {}: {} vs {} ({:?})", cmp.power, cmp.lhs, cmp.rhs, cmp.ordering);
    }
    Ok(())
}
