//! Discrete models in cumulative-distribution coordinates.
//!
//! For random variables with state spaces `[r_1] x ... x [r_n]`, the cdf
//! coordinate `q_i` is the probability that `X <= i` componentwise; pinning
//! `i_l = r_l` marginalizes variable `l`. A model given by a split-closed
//! ideal is cut out by binomials `q_i = prod_l q_(j_l)` and is toric, with an
//! explicit monomial parametrization.

mod connectivity;
mod equations;
mod param;
mod sampling;
mod tensor;

pub use connectivity::{disconnected_sets, max_connected_decomposition, Connectivity};
pub use equations::{
    marginal_value, maximal_equations, minor_equations, minor_equations_prob, CdfMinor,
    FactorEquation, FactorEquationJson, MarginalIndex, Minor, ProbMinor,
};
pub use param::{
    binomial_in_kernel, evaluate_parametrization, param_matrix, ParamMatrix, ParamRow,
};
pub use sampling::{
    minimal_non_members, random_parameters, sample_model_point, verify_model, ModelPoint,
    VerificationReport, MAX_RETRIES,
};
pub use tensor::{cdf_to_prob, prob_to_cdf, IndexVector, Rational, RationalTensor, StateShape};
