//! Finite twisted quandles: tables, morphisms, classification, extensions,
//! cohomology and enveloping groups.

pub mod classify;
pub mod cohomology;
pub mod construct;
pub mod envelope;
pub mod error;
pub mod extension;
pub mod group;
pub mod linalg;
pub mod morphism;
pub mod reference;
pub mod table;

pub use classify::{classify, classify_with_cap, enumerate_all, enumerate_all_with_cap, filter_no_quandle, Catalog, ClassInfo};
pub use construct::{
    make_alexander, make_conjugation, make_f_dihedral, make_trivial, translation_classes, translation_crossed_set,
    ConjugationVariant,
};
pub use envelope::{enveloping_presentation, quotient_crossed_set, CrossedQuotient, Presentation};
pub use error::{Error, Result};
pub use extension::{
    build_extension, check_constant_cocycle, check_dynamical_cocycle, check_generalized_2cocycle, check_module,
    extension_structure_map, import_group_2cocycle, DynamicalCocycle, FiberMap, GroupCocycleData, ImportedCocycle,
    ModuleData, TwoCocycleReport,
};
pub use group::{is_abelian_group_table, GroupTable};
pub use morphism::{
    automorphism_group, canonical_form, canonical_form_with_labelling, find_isomorphism, is_homomorphism, twist,
    twisted_isomorphic, Morphism,
};
pub use reference::{compare_reference, reference_instances, ReferenceComparison, ReferenceInstance};
pub use table::{validate, validate_exhaustive, validate_with_map, AxiomReport, Condition, FTable, Level, Violation};
pub use cohomology::{
    boundary_matrix, boundary_matrix_with, bracket, brute_force_kernel, cohomology, rack_homology_boundary,
    verify_complex, BoundaryMatrix, CohomologyResult, Convention, PairCoefficients, ScalarModule,
};
pub use linalg::{smith_normal_form, Matrix, Scalar};

/// Exact integer scalar used by the lattice computations.
pub type Int = num_bigint::BigInt;
/// Exact integer matrix.
pub type IntMatrix = Matrix<Int>;
/// Machine-word integer matrix, used for homology boundaries.
pub type SmallMatrix = Matrix<i64>;
