//! Finite-group computation over dense multiplication tables: central
//! series, restricted automorphism subgroups, Hom-groups of finite abelian
//! groups, and n-isoclinism search with the automorphism transport it
//! induces.
//!
//! Groups are validated Cayley tables capped at order 512 — small enough
//! that every question here is answered by exhaustive computation, large
//! enough for the interesting examples (dihedral/quaternion families,
//! extraspecial p-groups, and their products).

pub mod abelian;
pub mod aut;
pub mod catalog;
pub mod error;
pub mod group;
pub mod hom;
pub mod isoclinism;
pub mod quotient;
pub mod search;
pub mod series;
pub mod subgroup;
pub mod verify;

pub use abelian::{cyclic_decomposition, hom_group, is_cyclic, maly_criterion, AbelianDecomposition, HomGroup};
pub use aut::{
    aut_subgroup, automorphism_group, inner_automorphism_group, nth_class_preserving,
    t2_alpha, t2_inverse, AutomorphismGroup,
};
pub use catalog::{catalog, load_group, resolve, save_group, CatalogEntry};
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, MAX_ORDER};
pub use hom::{Automorphism, Homomorphism};
pub use isoclinism::{
    find_all_n_isoclinisms, find_n_isoclinism, hekster_invariant_check, is_n_homoclinism, psi,
    t5_verdict, theta_f, HeksterReport, Isoclinism, IsoclinismSide, PsiReport, T5Verdict,
};
pub use quotient::{abelianization, quotient, QuotientData};
pub use search::are_isomorphic;
pub use series::{
    gamma_map_eval, lower_central, nilpotency_class, upper_central, CentralSeries, Nilpotency,
};
pub use subgroup::{Subgroup, SubgroupGroup};
