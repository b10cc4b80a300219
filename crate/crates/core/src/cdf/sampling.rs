//! Random points of a model and the exactness check: a generic parameter
//! point is a genuine distribution satisfying every equation of the model
//! and violating every statement outside it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::equations::{maximal_equations, minor_equations};
use super::param::{evaluate_parametrization, param_matrix, ParamMatrix, ParamRow};
use super::tensor::{cdf_to_prob, Rational, RationalTensor, StateShape};
use crate::closure::SplitClosedIdeal;
use crate::partition::{enumerate, PartialSetPartition};

/// Number of fresh draws allowed when a witness minor vanishes by accident.
pub const MAX_RETRIES: usize = 16;

fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(lo..=hi)), BigInt::from(den))
}

/// A parameter vector with its cdf and probability tensors.
#[derive(Clone, Debug)]
pub struct ModelPoint {
    pub theta: Vec<Rational>,
    pub cdf: RationalTensor,
    pub prob: RationalTensor,
}

/// Uniformly random rationals in `[1/8, 1]`-ish per row with `t = 1`.
/// Positive, but not necessarily a distribution.
pub fn random_parameters<R: Rng>(a: &ParamMatrix, rng: &mut R) -> Vec<Rational> {
    a.rows()
        .iter()
        .map(|row| match row {
            ParamRow::T => Rational::one(),
            ParamRow::Theta { .. } => small_rational(rng, 1, 16, 16),
        })
        .collect()
}

/// Draws a strictly positive distribution in the model: random positive
/// marginals give an independence point, and every parameter of a
/// connected set with two or more variables is scaled by `1 + eps * delta`
/// for a random `delta` in `[-1, 1]`. `eps` halves until every probability
/// is positive.
pub fn sample_model_point<R: Rng>(a: &ParamMatrix, rng: &mut R) -> ModelPoint {
    let shape = a.shape().clone();
    // marginal cdfs F_v(s), s = 1..=r_v, with F_v(r_v) = 1
    let marginals: Vec<Vec<Rational>> = shape
        .sizes()
        .iter()
        .map(|&r| {
            let weights: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=9)).collect();
            let total: i64 = weights.iter().sum();
            let mut acc = 0;
            weights
                .iter()
                .map(|w| {
                    acc += w;
                    Rational::new(BigInt::from(acc), BigInt::from(total))
                })
                .collect()
        })
        .collect();
    let deltas: Vec<Rational> = a
        .rows()
        .iter()
        .map(|_| small_rational(rng, -8, 8, 8))
        .collect();

    let mut eps = Rational::new(BigInt::from(1), BigInt::from(2));
    loop {
        let theta: Vec<Rational> = a
            .rows()
            .iter()
            .zip(&deltas)
            .map(|(row, delta)| match row {
                ParamRow::T => Rational::one(),
                ParamRow::Theta { set, state } => {
                    let base = set.iter().fold(Rational::one(), |acc, v| {
                        acc * &marginals[v - 1][state.values()[v - 1] - 1]
                    });
                    if set.len() >= 2 {
                        base * (Rational::one() + &eps * delta)
                    } else {
                        base
                    }
                }
            })
            .collect();
        let cdf = evaluate_parametrization(a, &theta).expect("positive parameters");
        let prob = cdf_to_prob(&cdf);
        if prob.is_interior_distribution() {
            return ModelPoint { theta, cdf, prob };
        }
        eps /= Rational::from_integer(BigInt::from(2));
    }
}

/// Minimal statements outside the ideal.
pub fn minimal_non_members(ideal: &SplitClosedIdeal) -> Vec<PartialSetPartition> {
    let outside: Vec<PartialSetPartition> = enumerate(ideal.n(), 2)
        .into_iter()
        .filter(|pi| !ideal.contains(pi))
        .collect();
    outside
        .iter()
        .filter(|pi| !outside.iter().any(|x| x != *pi && x.leq(pi)))
        .cloned()
        .collect()
}

/// Outcome of [`verify_model`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    /// Parameter draws evaluated against the model equations.
    pub points_checked: usize,
    /// Equations (factorizations and minors) that failed to vanish.
    pub nonvanishing: Vec<String>,
    /// Whether every generic point was a strictly positive distribution.
    pub valid_distribution: bool,
    /// Minimal non-members with a nonzero witness minor.
    pub witnessed: Vec<PartialSetPartition>,
    /// Minimal non-members whose minors vanished on every draw.
    pub unwitnessed: Vec<PartialSetPartition>,
    /// Generic draws used for the witness search.
    pub draws: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.valid_distribution && self.unwitnessed.is_empty()
    }
}

/// Checks that (1) `vanishing_draws` random parameter points satisfy every
/// factorization equation and every flattening minor of every statement in
/// the ideal, and (2) a generic positive point is a distribution on which
/// each minimal statement outside the ideal fails.
pub fn verify_model<R: Rng>(
    ideal: &SplitClosedIdeal,
    shape: &StateShape,
    vanishing_draws: usize,
    rng: &mut R,
) -> VerificationReport {
    let a = param_matrix(ideal, shape);
    let equations = maximal_equations(ideal, shape);
    let minors: Vec<_> = ideal
        .iter()
        .flat_map(|pi| minor_equations(pi, shape))
        .collect();
    let mut report = VerificationReport {
        valid_distribution: true,
        ..Default::default()
    };

    for _ in 0..vanishing_draws {
        let theta = random_parameters(&a, rng);
        let q = evaluate_parametrization(&a, &theta).expect("positive parameters");
        report.points_checked += 1;
        for f in &equations {
            if !f.evaluate(&q).is_zero() {
                report.nonvanishing.push(f.render(shape));
            }
        }
        for m in &minors {
            if !m.evaluate(&q).is_zero() {
                report.nonvanishing.push(m.render(shape));
            }
        }
    }

    let mut pending = minimal_non_members(ideal);
    let witness_minors: Vec<_> = pending
        .iter()
        .map(|pi| minor_equations(pi, shape))
        .collect();
    let mut minors_for: Vec<(PartialSetPartition, Vec<_>)> =
        pending.drain(..).zip(witness_minors).collect();
    while !minors_for.is_empty() && report.draws < MAX_RETRIES {
        let point = sample_model_point(&a, rng);
        report.draws += 1;
        if !point.prob.is_distribution() {
            report.valid_distribution = false;
        }
        minors_for.retain(|(pi, ms)| {
            let hit = ms.iter().any(|m| !m.evaluate(&point.cdf).is_zero());
            if hit {
                report.witnessed.push(pi.clone());
            }
            !hit
        });
    }
    if report.draws == 0 {
        let point = sample_model_point(&a, rng);
        report.draws = 1;
        report.valid_distribution = point.prob.is_distribution();
    }
    report.unwitnessed = minors_for.into_iter().map(|(pi, _)| pi).collect();
    report.witnessed.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{closure, StatementSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minimal_non_members_of_small_ideal() {
        let i = closure(&StatementSet::parse("1|23", 3).unwrap());
        let texts: Vec<String> = minimal_non_members(&i)
            .iter()
            .map(|p| p.to_text())
            .collect();
        assert_eq!(texts, ["2|3"]);
    }

    #[test]
    fn sampled_point_is_a_distribution_in_the_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let i = closure(&StatementSet::parse("12|3", 3).unwrap());
        let shape = StateShape::binary(3);
        let a = param_matrix(&i, &shape);
        let point = sample_model_point(&a, &mut rng);
        assert!(point.prob.is_interior_distribution());
        for f in maximal_equations(&i, &shape) {
            assert!(f.evaluate(&point.cdf).is_zero());
        }
    }

    #[test]
    fn verify_passes_on_ternary_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let i = closure(&StatementSet::parse("1|2", 3).unwrap());
        let report = verify_model(&i, &StateShape::parse("2,3,2").unwrap(), 3, &mut rng);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.points_checked, 3);
    }
}
