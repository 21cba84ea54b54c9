//! Constructive transformations that turn known solutions into new ones:
//! weaving several solutions of one recursion into a solution of the
//! scaled recursion, order-multiplying interleaving, parameter
//! perturbation, and the shift that manufactures ever more
//! `(alpha,0)`-Conolly recursions.

use crate::engine::{self, EvalError};
use crate::notation::{RecursionSpec, RecursionTerm};

/// Several sets of initial conditions for one shared recursion. Any
/// initial conditions carried by `spec` itself are ignored; each entry of
/// `inits` seeds one solution.
#[derive(Clone, Debug)]
pub struct WeaveInput {
    pub spec: RecursionSpec,
    pub inits: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("weaving needs at least two sets of initial conditions")]
    TooFewSolutions,
    #[error("initial-condition vectors must share one length")]
    UnevenInitLengths,
    #[error("weave horizon {horizon} is shorter than the {needed} woven initial conditions")]
    HorizonTooShort { horizon: usize, needed: usize },
    #[error("input solution {which} died at index {index}")]
    InputDied { which: usize, index: usize },
    #[error("woven sequence fails its recursion at index {index}")]
    WeaveCheckFailed { index: usize },
    #[error("expected a 2-ary order-1 recursion")]
    NotOrderOneBinary,
    #[error("interleaving multiplicity must be at least 2")]
    MultiplicityTooSmall,
    #[error("perturbation {which}[{i}] = {value} outside [i - m, i)")]
    PerturbationOutOfRange { which: &'static str, i: usize, value: i64 },
    #[error("shift step alpha must be positive")]
    NonpositiveAlpha,
    #[error(transparent)]
    Engine(#[from] EvalError),
}

fn scaled_terms(terms: &[RecursionTerm], m: i64) -> Vec<RecursionTerm> {
    terms
        .iter()
        .map(|t| RecursionTerm::new(t.shift * m, t.offsets.iter().map(|&a| a * m).collect()))
        .collect()
}

/// Weave `m >= 2` solutions of one recursion into a single solution of the
/// recursion with all parameters multiplied by `m`: with solutions
/// `A_1..A_m`, the woven sequence is `C(m(n-1)+q) = m * A_q(n)`. The
/// returned spec carries the woven seed; the woven values are verified to
/// satisfy it by direct substitution up to the horizon, so a bad input is
/// caught rather than propagated.
pub fn weave_fixed_order(
    input: &WeaveInput,
    horizon: usize,
) -> Result<(RecursionSpec, Vec<i64>), TransformError> {
    let m = input.inits.len();
    if m < 2 {
        return Err(TransformError::TooFewSolutions);
    }
    let r = input.inits[0].len();
    if input.inits.iter().any(|v| v.len() != r) || r == 0 {
        return Err(TransformError::UnevenInitLengths);
    }
    if horizon < m * r {
        return Err(TransformError::HorizonTooShort { horizon, needed: m * r });
    }
    let mut solutions = Vec::with_capacity(m);
    for (q, init) in input.inits.iter().enumerate() {
        // Solution q covers woven indices q+1, q+1+m, ...
        let needed = if horizon > q { (horizon - q - 1) / m + 1 } else { 0 };
        let run = engine::evaluate(&input.spec.with_initial(init.clone()), needed)?;
        if let Some(death) = run.death {
            return Err(TransformError::InputDied { which: q + 1, index: death.index });
        }
        solutions.push(run.values);
    }
    let mut woven = Vec::with_capacity(horizon);
    for idx in 1..=horizon {
        let q = (idx - 1) % m;
        let n = (idx - 1) / m;
        woven.push(m as i64 * solutions[q][n]);
    }
    let scaled = RecursionSpec::new(scaled_terms(&input.spec.terms, m as i64), woven[..m * r].to_vec());
    verify_satisfies(&scaled, &woven, m * r)?;
    Ok((scaled, woven))
}

/// Substitute `values` into `spec`'s defining equation at every index past
/// `seeded`.
fn verify_satisfies(
    spec: &RecursionSpec,
    values: &[i64],
    seeded: usize,
) -> Result<(), TransformError> {
    for n in (seeded + 1)..=values.len() {
        let nn = n as i64;
        let mut total = 0i64;
        for term in &spec.terms {
            let mut inner = 0i64;
            for &a in &term.offsets {
                let idx = nn - a;
                if idx < 1 || idx >= nn {
                    return Err(TransformError::WeaveCheckFailed { index: n });
                }
                inner += values[(idx - 1) as usize];
            }
            let arg = nn - term.shift - inner;
            if arg < 1 || arg >= nn {
                return Err(TransformError::WeaveCheckFailed { index: n });
            }
            total += values[(arg - 1) as usize];
        }
        if total != values[n - 1] {
            return Err(TransformError::WeaveCheckFailed { index: n });
        }
    }
    Ok(())
}

fn order_one_binary(spec: &RecursionSpec) -> Result<(i64, i64, i64, i64), TransformError> {
    if spec.terms.len() != 2 || spec.terms.iter().any(|t| t.order() != 1) {
        return Err(TransformError::NotOrderOneBinary);
    }
    Ok((
        spec.terms[0].shift,
        spec.terms[0].offsets[0],
        spec.terms[1].shift,
        spec.terms[1].offsets[0],
    ))
}

fn repeat_each(values: &[i64], m: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(values.len() * m);
    for &v in values {
        out.extend(std::iter::repeat_n(v, m));
    }
    out
}

/// The `m`-interleaving of an order-1 recursion `<s;a:t;b>`:
/// `<ms;(ma)^m : mt;(mb)^m>` with every initial condition repeated `m`
/// times. Its solution repeats each term of the input's solution `m`
/// times, turning an `(alpha,beta)`-Conolly solution into the
/// `(m alpha, m beta)` one.
pub fn interleave_order_multiplying(
    spec: &RecursionSpec,
    m: usize,
) -> Result<RecursionSpec, TransformError> {
    if m < 2 {
        return Err(TransformError::MultiplicityTooSmall);
    }
    perturbed_interleaving(spec, m, &vec![0; m], &vec![0; m])
}

/// Interleave and then perturb each copied offset: term offsets become
/// `ma - alphas[i]` and `mb - betas[i]`, legal whenever each perturbation
/// lies in `[i - m, i)` (1-based `i`). The zero perturbation is exactly
/// `interleave_order_multiplying`. Whether the result is well defined is
/// for the caller to confirm by evaluation; the construction itself only
/// enforces the stated parameter constraints.
pub fn perturb(
    spec: &RecursionSpec,
    m: usize,
    alphas: &[i64],
    betas: &[i64],
) -> Result<RecursionSpec, TransformError> {
    if m < 1 || alphas.len() != m || betas.len() != m {
        return Err(TransformError::MultiplicityTooSmall);
    }
    for (name, list) in [("alpha", alphas), ("beta", betas)] {
        for (i0, &v) in list.iter().enumerate() {
            let i = i0 as i64 + 1;
            if v < i - m as i64 || v >= i {
                return Err(TransformError::PerturbationOutOfRange {
                    which: name,
                    i: i0 + 1,
                    value: v,
                });
            }
        }
    }
    perturbed_interleaving(spec, m, alphas, betas)
}

fn perturbed_interleaving(
    spec: &RecursionSpec,
    m: usize,
    alphas: &[i64],
    betas: &[i64],
) -> Result<RecursionSpec, TransformError> {
    let (s, a, t, b) = order_one_binary(spec)?;
    let mm = m as i64;
    let mut first: Vec<i64> = alphas.iter().map(|&x| mm * a - x).collect();
    let mut second: Vec<i64> = betas.iter().map(|&x| mm * b - x).collect();
    first.sort_unstable();
    second.sort_unstable();
    Ok(RecursionSpec::new(
        vec![RecursionTerm::new(mm * s, first), RecursionTerm::new(mm * t, second)],
        repeat_each(&spec.initial, m),
    ))
}

/// Starting from a recursion with an `(alpha,0)`-Conolly solution, produce
/// another: every shift grows by that term's order, every offset by
/// `alpha`, and the seed extends to `c + alpha` values of `ceil(v/alpha)`.
/// Iterating walks an infinite family of `(alpha,0)`-Conolly recursions.
pub fn shift_alpha_zero(spec: &RecursionSpec, alpha: i64) -> Result<RecursionSpec, TransformError> {
    if alpha < 1 {
        return Err(TransformError::NonpositiveAlpha);
    }
    let terms = spec
        .terms
        .iter()
        .map(|t| {
            RecursionTerm::new(
                t.shift + t.order() as i64,
                t.offsets.iter().map(|&a| a + alpha).collect(),
            )
        })
        .collect();
    let c = spec.initial.len() as i64 + alpha;
    let initial = (1..=c).map(|v| crate::ceiling::ceil_div(v, alpha)).collect();
    Ok(RecursionSpec::new(terms, initial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{fit_conolly, frequency, ratio_estimate};
    use crate::ceiling::{check_conditions, formal_satisfy_oracle};
    use crate::engine::evaluate;
    use crate::reference::definitional_sequence;

    fn parse(text: &str) -> RecursionSpec {
        RecursionSpec::parse(text).unwrap()
    }

    #[test]
    fn weave_zero_and_power_of_two_solutions() {
        let input = WeaveInput {
            spec: parse("<1;1:3;3>"),
            inits: vec![vec![0, 0, 0, 0], vec![1, 1, 1, 2]],
        };
        let (spec, woven) = weave_fixed_order(&input, 5000).unwrap();
        assert_eq!(spec.bare().to_string(), "<2;2:6;6>");
        assert_eq!(&woven[..10], &[0, 2, 0, 2, 0, 2, 0, 4, 0, 4]);
        // The ratio oscillates: limsup 1/2 on even indices, liminf 0 on odd.
        let report = ratio_estimate(&woven);
        assert!((report.even_estimate.to_f64() - 0.5).abs() < 0.01);
        assert_eq!(report.odd_estimate.to_f64(), 0.0);
    }

    #[test]
    fn weave_conolly_with_itself() {
        let input = WeaveInput {
            spec: parse("<0;1:1;2>"),
            inits: vec![vec![1, 2], vec![1, 2]],
        };
        let (spec, woven) = weave_fixed_order(&input, 200).unwrap();
        assert_eq!(spec.bare().to_string(), "<0;2:2;4>");
        let conolly = evaluate(&parse("<0;1:1;2>[1,2]"), 100).unwrap().values;
        for (idx, &v) in woven.iter().enumerate() {
            assert_eq!(v, 2 * conolly[idx / 2]);
        }
    }

    #[test]
    fn weave_three_zero_solutions() {
        let input = WeaveInput {
            spec: parse("<1;1:3;3>"),
            inits: vec![vec![0; 4]; 3],
        };
        let (spec, woven) = weave_fixed_order(&input, 300).unwrap();
        assert_eq!(spec.bare().to_string(), "<3;3:9;9>");
        assert!(woven.iter().all(|&v| v == 0));
    }

    #[test]
    fn weave_rejects_single_solution() {
        let input = WeaveInput { spec: parse("<0;1:1;2>"), inits: vec![vec![1, 2]] };
        assert_eq!(weave_fixed_order(&input, 100), Err(TransformError::TooFewSolutions));
    }

    #[test]
    fn weave_rejects_dead_input() {
        let input = WeaveInput {
            spec: parse("<0;1:0;1>"),
            inits: vec![vec![2], vec![2]],
        };
        assert!(matches!(
            weave_fixed_order(&input, 100),
            Err(TransformError::InputDied { .. })
        ));
    }

    #[test]
    fn interleave_conolly() {
        let doubled = interleave_order_multiplying(&parse("<0;1:1;2>[1,2]"), 2).unwrap();
        assert_eq!(doubled.to_string(), "<0;2,2:2;4,4>[1,1,2,2]");
        let run = evaluate(&doubled, 2000).unwrap();
        assert!(run.is_alive());
        assert_eq!(run.values, definitional_sequence(0, 2, 2000).unwrap());

        let tripled = interleave_order_multiplying(&parse("<0;1:1;2>[1,2]"), 3).unwrap();
        let run = evaluate(&tripled, 1500).unwrap();
        let fit = fit_conolly(&frequency(&run.values).unwrap()).unwrap();
        assert_eq!((fit.alpha, fit.beta), (0, 3));
    }

    #[test]
    fn interleaving_the_second_conolly_form() {
        let h = parse("<0;2:3;5>[1,2,2,3,4]");
        let doubled = interleave_order_multiplying(&h, 2).unwrap();
        assert_eq!(doubled.to_string(), "<0;4,4:6;10,10>[1,1,2,2,2,2,3,3,4,4]");
        let run = evaluate(&doubled, 2000).unwrap();
        assert!(run.is_alive());
        assert_eq!(run.values, definitional_sequence(0, 2, 2000).unwrap());
    }

    #[test]
    fn interleave_rejects_m_one() {
        assert_eq!(
            interleave_order_multiplying(&parse("<0;1:1;2>[1,2]"), 1),
            Err(TransformError::MultiplicityTooSmall)
        );
    }

    #[test]
    fn interleaving_repeats_the_base_solution() {
        let base = parse("<0;1:1;2>[1,2]");
        for m in [2usize, 3] {
            let lifted = interleave_order_multiplying(&base, m).unwrap();
            let n = 400;
            let base_run = evaluate(&base, n).unwrap().values;
            let lifted_run = evaluate(&lifted, n * m).unwrap();
            assert!(lifted_run.is_alive());
            assert_eq!(lifted_run.values, repeat_each(&base_run, m));
        }
    }

    #[test]
    fn perturbed_conolly_interleaving() {
        let spec = perturb(&parse("<0;1:1;2>[1,2]"), 2, &[-1, 0], &[0, 1]).unwrap();
        assert_eq!(spec.to_string(), "<0;2,3:2;3,4>[1,1,2,2]");
        let run = evaluate(&spec, 2000).unwrap();
        assert!(run.is_alive());
        assert_eq!(run.values, definitional_sequence(0, 2, 2000).unwrap());
    }

    #[test]
    fn zero_perturbation_is_plain_interleaving() {
        let base = parse("<0;1:1;2>[1,2]");
        assert_eq!(
            perturb(&base, 2, &[0, 0], &[0, 0]).unwrap(),
            interleave_order_multiplying(&base, 2).unwrap()
        );
    }

    #[test]
    fn perturbation_constraints_are_enforced() {
        let base = parse("<0;1:1;2>[1,2]");
        assert_eq!(
            perturb(&base, 2, &[1, 0], &[0, 0]),
            Err(TransformError::PerturbationOutOfRange { which: "alpha", i: 1, value: 1 })
        );
        assert_eq!(
            perturb(&base, 2, &[0, 0], &[0, -2]),
            Err(TransformError::PerturbationOutOfRange { which: "beta", i: 2, value: -2 })
        );
    }

    #[test]
    fn alpha_shift_walks_the_known_family() {
        let mut spec = parse("<0;1:2;3>");
        spec = shift_alpha_zero(&spec, 2).unwrap();
        assert_eq!(spec.bare().to_string(), "<1;3:3;5>");
        spec = shift_alpha_zero(&spec, 2).unwrap();
        assert_eq!(spec.bare().to_string(), "<2;5:4;7>");

        let mut spec = parse("<0;1:2;3>");
        for x in 1..=10i64 {
            spec = shift_alpha_zero(&spec, 2).unwrap();
            let expected = format!("<{};{}:{};{}>", x, 2 * x + 1, x + 2, 2 * x + 3);
            assert_eq!(spec.bare().to_string(), expected);
            assert!(formal_satisfy_oracle(&spec, 1, 0).unwrap());
            assert!(check_conditions(&spec, 1).unwrap().satisfied);
        }
    }

    #[test]
    fn alpha_shift_extends_the_seed() {
        let spec = shift_alpha_zero(&parse("<0;1:2;3>"), 2).unwrap();
        assert_eq!(spec.initial, vec![1, 1]);
        let again = shift_alpha_zero(&spec, 2).unwrap();
        assert_eq!(again.initial, vec![1, 1, 2, 2]);
    }
}
