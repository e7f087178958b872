//! Submodule generation, unipotent closures and component-group changes
//! on a small module over F_5.

use std::collections::BTreeMap;

use semistable_audit::galmod::{
    block_generation_analyze, component_delta, generated_submodule, unipotent_closure, unit, Filtration, FlMatrix,
    GaloisModule, Subspace,
};

fn main() -> semistable_audit::Result<()> {
    let l = 5;
    let sigma = FlMatrix::square(l, 4, &[1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1])?;
    let module = GaloisModule::new(l, 4, vec![("σ", sigma.clone())], vec![], BTreeMap::new())?;
    let p = vec![unit(4, 2)];
    println!("generated by e3: dim {}", generated_submodule(&p, &module).dim());
    println!("unipotent closure of e3: {:?}", unipotent_closure(&p, &sigma, &module)?.basis());

    let filt = Filtration::new(Subspace::coordinate(l, 4, [0]), Subspace::coordinate(l, 4, 0..3), 1, 1)?;
    let kappa = Subspace::span(l, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 1]]);
    println!("{:?}", component_delta(&kappa, &filt));

    let n = FlMatrix::square(l, 2, &[1, 2, 0, 3])?;
    let (analysis, verdict) = block_generation_analyze(&n, &FlMatrix::identity(l, 2), 2)?;
    println!("{analysis:?}\n{verdict}");
    Ok(())
}
