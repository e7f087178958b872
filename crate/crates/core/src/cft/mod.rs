//! Class field theory checks built on fixture class numbers and units.

mod fixture;
mod splitting;
mod table;
mod units;

pub use fixture::{coordinate_bits, FieldFixture, FixtureSet, SHIPPED_FIELDS};
pub use splitting::{decompose, kummer_tower_shape, splitting_check, valuations, Decomposition, SplitShape};
pub use table::{
    golden_unit_image, two_splits_in_k, kummer_conductor_exponent, prime_display_checks, root_discriminant, sextic_unit_images,
    table_replicate, unramified_survey, unramified_verdict, TableReport, TableRow, PRINTED_TABLE,
};
pub use units::{
    fixture_units, image_of, invariant_factors, ray_class_order, ray_class_verdict, unit_image_subgroup, Modulus,
    RayClassOrder, RayClassReport, ResidueUnitGroup, UnitImage,
};

use crate::exactnum::kummer_unramified_at_l;
use crate::Result;

/// `Q(ζ_l, m^(1/l)) / Q(ζ_l)` is unramified above `l` iff
/// `m^(l−1) ≡ 1 mod l²`.
pub fn unramified_criterion(m: u64, l: u64) -> Result<bool> {
    kummer_unramified_at_l(m, l)
}
