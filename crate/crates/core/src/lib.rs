//! Delsarte-type extremal problems on finite abelian groups.
//!
//! For a finite abelian group `G`, a set `W ⊆ G` containing `0` and a set of
//! characters `Q ⊆ Ĝ`, the class `𝒢(W,Q)` consists of real positive definite
//! functions with `f(0) = 1`, `f ≤ 0` off `W` and Fourier support inside `Q`.
//! The extremal quantity `𝒟(W,Q)` is the largest `Σ_g f(g)` over that class.
//!
//! The crate computes `𝒟(W,Q)` and an extremal function by linear programming
//! over Fourier coefficients, certifies the result by LP duality, and provides
//! the supporting harmonic analysis (characters, transforms, positive
//! definiteness, subgroup reduction and ε-nets of the class).

pub mod campaign;
pub mod delsarte;
pub mod error;
pub mod fourier;
pub mod group;
pub mod net;
pub mod posdef;
pub mod random;
pub mod reduction;
pub mod simplex;
pub mod snf;
pub mod subgroup;
pub mod vertex;

pub use delsarte::{
    build_lp, build_orbit_basis, feasibility_check, solve_delsarte, verify_certificate, vertex_enum_oracle,
    DelsarteInstance, DelsarteSolution, DualCertificate, MembershipReport, OracleOutcome, OrbitBasis, SolveStatus,
    Tolerances,
};
pub use error::{Error, Result};
pub use fourier::{bump_theta, conj_fourier, conv_square, convolve, dft, FunctionOnG, Spectrum};
pub use group::{CharacterTable, DualElement, GroupElement, GroupSpec};
pub use net::{build_net, net_approximation_error, project_coeffs, quantize, EpsilonNet};
pub use posdef::{gram_oracle, is_positive_definite, restrict_function, trivial_extension, PosDefReport};
pub use reduction::{lift_solution, q_star, q_zero, reduce_instance, verify_equivalence, ReducedInstance};
pub use subgroup::{difference_set, generated_subgroup, Subgroup};
