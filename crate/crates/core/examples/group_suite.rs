//! Finite group facts checked by exhaustive enumeration of small groups.

use semistable_audit::groupcheck::{
    automorphism_count, catalog, extension_commutator, order125_survey, order12_abelianization, order27_derived,
    order50_extensions, small_aut_coprime, unipotent_pair,
};

fn main() -> semistable_audit::Result<()> {
    for g in catalog(12)? {
        println!("{:<12} |Aut| = {:<4} abelianization {:?}", g.label(), automorphism_count(&g), g.abelianization());
    }
    for v in [small_aut_coprime(), extension_commutator(), order50_extensions(), order27_derived(), order12_abelianization().0, unipotent_pair(3)?] {
        println!("{v}");
    }
    let survey = order125_survey();
    for e in &survey.entries {
        println!("{:<10} surjects onto C5×C5: {}", e.group, e.surjects_onto_c5xc5);
    }
    Ok(())
}
