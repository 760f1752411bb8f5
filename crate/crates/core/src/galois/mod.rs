//! Finite subgroups of GL_2(F_p), their normalizers, and symplectic criteria.

mod matrix;
mod subgroup;
mod symplectic;

pub use matrix::MatGL2;
pub use subgroup::{
    det_pattern, dic12_from, embed_dic12, embed_h8, generate, h8_from, normalizer_and_centralizer, DetPattern, IsoTag,
    NormalizerData, SubgroupGL2, ENUMERATION_BOUND,
};
pub use symplectic::{
    isogeny_symplectic_sign, iso_symplectic_type, ko_symplectic, maincrit2, maincrit3, symplectic_type_of_matrix,
    tate_equivariance_check, tate_module_matrix, SymplecticType, TateParams,
};
