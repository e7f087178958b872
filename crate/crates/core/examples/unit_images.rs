//! Images of global units in residue rings, and the Kummer criterion for
//! being unramified above l.

use semistable_audit::cft::{
    golden_unit_image, sextic_unit_images, unit_image_subgroup, unramified_survey, FixtureSet, Modulus,
};

fn main() -> semistable_audit::Result<()> {
    let set = FixtureSet::shipped()?;
    println!("{}", golden_unit_image(&set));
    println!("{}", sextic_unit_images(&set));
    let sextic = set.get("Q(sqrt(-3), 10^(1/3))")?;
    let image = unit_image_subgroup(sextic, &Modulus::all_primes(sextic, 1))?;
    println!("units {:?} have image of order {} in a group of order {}", image.labels, image.order, image.group_order);
    for (l, candidates) in [(5, vec![2, 3, 6, 12, 18, 24, 48, 576]), (3, vec![2, 5, 10, 20, 50, 100])] {
        println!("l = {l}: {:?}", unramified_survey(l, &candidates)?);
    }
    Ok(())
}
