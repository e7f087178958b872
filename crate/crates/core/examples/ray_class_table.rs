//! Ray class orders of the Kummer fields from the shipped fixtures.

use semistable_audit::cft::{ray_class_order, table_replicate, FixtureSet, Modulus};

fn main() -> semistable_audit::Result<()> {
    let set = FixtureSet::shipped()?;
    for fix in &set.fields {
        let r = ray_class_order(fix, &Modulus::of_fixture(fix))?;
        println!("{:<28} h = {:<3} |(O/f)^*| = {:<6} ray class order {:?}", fix.label, r.h, r.residue_order, r.order);
    }
    for v in table_replicate(&set).verdicts() {
        println!("{v}");
    }
    Ok(())
}
