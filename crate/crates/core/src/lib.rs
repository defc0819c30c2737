//! Second Chern character positivity for smooth toric Fano varieties.
//!
//! Fans are rebuilt from reflexive polytopes (or the builtin projective and
//! pseudo-symmetric families), torus-invariant surfaces of Picard number two
//! are enumerated from the codimension-two cones, and `2 ch_2(X) . S` is
//! computed exactly from the two wall relations around each surface.
//!
//! All arithmetic is exact and generic over an integer ring (see
//! [`Scalar`]); the unparameterised type names default to [`BigInt`].

pub mod ch2;
pub mod classifier;
pub mod error;
pub mod fan;
pub mod generators;
pub mod ingest;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod scalar;

pub use num_bigint::BigInt;

pub use ch2::{
    build_star, build_star_with, ch2_value, scan_surfaces, surface_value, surface_value_with, wall_coefficients,
    wall_residuals, StarChoice, SurfaceStar, SurfaceValue, WallCoefficients,
};
pub use classifier::{
    batch_classify, classify, classify_with, detect_projective_space, detect_tilde_vd_pattern, detect_vd_pattern,
    BatchItem, ClassificationRecord, ClassifyOptions, Fingerprint, Report, Status,
};
pub use error::{Error, Result};
pub use fan::{Codim2Face, Fan};
pub use generators::{gen_fan, gen_rays, v_d_closed_form, BuiltinFamily, Family};
pub use ingest::{InputFormat, InputKind, InputRecord, Payload};
pub use linalg::{determinant, solve_linear, LatticeVector, RationalMatrix};
pub use polytope::{
    facet_enumeration, fan_from_dual, fan_from_fan_polytope, is_reflexive, polar_dual_vertices, Facet, FacetList,
    LatticePolytope,
};
pub use scalar::Scalar;

/// Exact rational over the default ring.
pub type Rational = num_rational::Ratio<BigInt>;

/// Machine-integer instantiations for callers that know their data is small.
pub type LatticeVectorI64 = LatticeVector<i64>;
pub type FanI64 = Fan<i64>;
pub type LatticePolytopeI64 = LatticePolytope<i64>;
pub type RationalMatrixI64 = RationalMatrix<i64>;
