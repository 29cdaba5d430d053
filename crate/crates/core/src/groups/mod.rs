//! Group elements and Lie-algebra certificates for the chain of
//! automorphism, isometry and invariance groups.

mod generators;
mod lie;

pub use generators::{
    calibrate_translation, cyclic_symmetry, exp_nilpotent, gen_isometry, isometry_product, nilpotency_index,
    opposite_translation_generator, opposite_translation_map, reconstruct_from_ef, translate_with,
    translation_candidates, translation_generator, translation_map, translation_map_with, unit_norm_element,
    TranslationFamily, TranslationSigns, TRANSLATION_SIGNS,
};
pub use lie::{lie_defect, lie_dim, ConstraintMode, LieCertificate, LieTarget};
