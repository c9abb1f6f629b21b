//! Exact toric calculus for log Calabi–Yau pairs of complexity zero.
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`] and
//! rationals are [`num_rational::BigRational`].

pub mod arrangement;
pub mod bott;
pub mod fan;
pub mod fibration;
pub mod io;
pub mod lattice;
pub mod pair;
pub mod rational;
pub mod simplex;

pub use arrangement::{ArrangementError, IncidencePoint, LambdaReport, PlanePair, Triangle};
pub use bott::{
    build_bott_tower, build_index_example, recognize_bott_tower, BottError, BottStage,
    BottTowerSpec, TowerReport,
};
pub use fan::standard::{product, proj_bundle, projective_space, weighted_projective};
pub use fan::{
    orbit_strata, standard_fan, star_subdivision, validate_fan, Cone, Fan, FanError, RawFan,
    StandardFan,
};
pub use fibration::{
    cbf_pushforward, extract_line_bundles, fiber_type, is_locally_trivial, split_fan,
    BundleExtraction, CbfResult, FanMorphism, FiberType, FibrationError, SplitResult,
};
pub use io::{parse_document, write_document, Document, IoError, Kind};
pub use lattice::{
    lattice_membership, smith_normal_form, IntMatrix, IntVector, LatticeError, SmithForm,
};
pub use pair::{
    classes_equal, divisor_sections, Equivalence, NumericalComponent, NumericalPair, PairError,
    PairReport, ToricPair, Verdict,
};
pub use rational::{format_rational, parse_rational, Rational};
