//! Verification laboratory for order-statistic identities of the exponential
//! distribution: exact Stirling-number identity sweeps, analytic density
//! comparison through numerical convolution, and Monte Carlo two-sample
//! equality tests, plus a goodness-of-fit test for exponentiality built on
//! the same characterization.

pub mod combinatorics;
pub mod convolution;
pub mod dist;
pub mod error;
pub mod identities;
pub mod mc;
pub mod quad;
pub mod special;
pub mod stream;

mod interp;

pub use combinatorics::{
    base_identity_residual, binomial, composition_count, factorial, falling_factorial,
    for_each_composition, multinomial, stirling2, BaseIdentity, Int, Nat, StirlingTable,
};
pub use convolution::{
    compare_densities, convolve_on_halfline, lhs_pdf, scaled_pdf, DensityComparison,
    EqualityStatement, LhsDensity, TheoremForm,
};
pub use dist::{a_m, DistributionSpec, OrderStatisticSpec};
pub use error::{Error, Result};
pub use identities::{
    am_coefficient_closed_form, am_derivative_coefficient, check_case, complete_homogeneous_sum,
    lemma1_sides, lemma2_sides, lemma3_sides, lemma4_sides, lemma_sides, maclaurin_residual,
    sweep, DerivativeCase, IdentityCase, IdentityResult, LemmaId, SweepBounds, VerificationReport,
};
pub use mc::{
    asymptotic_p_value, equality_mc_test, gof_from_data, parse_positive_data,
    permutation_p_value, sample_lhs, two_sample_statistic, McConfig, PValueMode, StatisticKind,
    TestReport,
};
pub use quad::{integrate, integrate_segmented, QuadConfig};
pub use stream::RandomStream;
