//! Seifert fibred 2-knot groups: the presentations of torsion-free
//! `Z^2`-extensions of orbifold groups with their abelianization conditions,
//! and a family of 2-knot groups built from a Nil-lattice `G` and a
//! meridianal automorphism, modelled exactly as `G x| Z`.
//!
//! `G = <x, z | x^3 = (x^{3e-1} z^-1)^3 = z^3>` is modelled by normal forms
//! `u^m v^n x^rho h^c` with `u = z^-1 x`, `v = x z^-1` and `h = x^3`. The
//! model is a central extension of `p3` by `<h>`; `G` maps onto it, `h` is
//! central in `G`, `G/<h>` is the `(3,3,3)` triangle group, which the model
//! also has as quotient, and `h` has infinite order in the model, so the map
//! is an isomorphism.

mod model;
mod p3;
mod theorem10;
mod theorem9;

use thiserror::Error;

pub use model::{g_relators, solve_model, NilElem, NilModel, PiElem, PiModel};
pub use p3::{rotate, GroupModel, P3Element, P3};
pub use theorem10::{
    alternative_central_candidate, build_theorem10_group, central_candidate, centrality_check, centrality_of, p3_quotient_images, theorem10_report,
    weight_orbit_report, CentralityReport, NilKnotGroup, Theorem10Report, WeightOrbitReport,
};
pub use theorem9::{
    build_theorem9_presentation, check_theorem9_conditions, random_instance, sphere_minors, theorem9_sweep, Confusion,
    Disagreement, Reading, ReadingTally, Theorem9Case, Theorem9Check, Theorem9Instance, Theorem9Sweep,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("the parameter e must be even, got {0}")]
    OddParameter(i64),
    #[error("p3 model validation failed: {0}")]
    ModelValidationFailed(String),
    #[error("normal form engine is inconsistent: {0}")]
    NormalFormIncomplete(String),
}
