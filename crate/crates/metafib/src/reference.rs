//! Reference material everything else is judged against: the definitional
//! `(alpha,beta)`-Conolly sequences built by slot enumeration, the table of
//! admissible pairs per order, and the canonical 2-ary recursion family
//! that realizes every admissible pair.

use crate::analysis::ruler;
use crate::notation::{RecursionSpec, RecursionTerm};
use serde::Serialize;

/// An `(alpha, beta)` pair satisfying `alpha + 2 beta = 2p`, `alpha + beta > 0`,
/// `beta >= 0` for some order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub alpha: i64,
    pub beta: i64,
    pub order_p: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReferenceError {
    #[error("({alpha},{beta}) is not a valid pair: need beta >= 0 and alpha + beta > 0")]
    InvalidPair { alpha: i64, beta: i64 },
    #[error("alpha = {alpha} is odd, so no integral order exists")]
    AlphaOdd { alpha: i64 },
}

/// The `2p` admissible pairs for order `p`: `(2p - 2b, b)` for `b = 0..2p-1`.
pub fn admissible_pairs(p: usize) -> Vec<AdmissiblePair> {
    assert!(p >= 1);
    (0..2 * p as i64)
        .map(|beta| AdmissiblePair { alpha: 2 * p as i64 - 2 * beta, beta, order_p: p })
        .collect()
}

/// The `(alpha,beta)`-Conolly sequence by definition: value `m` occupies
/// exactly `alpha + beta * r_m` slots. This is the oracle for every other
/// route to these sequences.
pub fn definitional_sequence(
    alpha: i64,
    beta: i64,
    horizon: usize,
) -> Result<Vec<i64>, ReferenceError> {
    if beta < 0 || alpha + beta <= 0 {
        return Err(ReferenceError::InvalidPair { alpha, beta });
    }
    let mut values = Vec::with_capacity(horizon);
    let mut m = 1i64;
    while values.len() < horizon {
        let reps = alpha + beta * ruler(m as u64) as i64;
        for _ in 0..reps {
            if values.len() == horizon {
                break;
            }
            values.push(m);
        }
        m += 1;
    }
    Ok(values)
}

/// The canonical order-`p` recursion with an `(alpha,beta)`-Conolly
/// solution: `<0; 1,3,..,2p-1 : g; g+1,g+3,..,g+2p-1>` with `g = alpha + beta`,
/// seeded with definitional terms through the fourth leaf of its tree model
/// (`4 alpha + 5 beta` values, floored at the largest offset plus one).
pub fn canonical_recursion(alpha: i64, beta: i64) -> Result<RecursionSpec, ReferenceError> {
    if alpha % 2 != 0 {
        return Err(ReferenceError::AlphaOdd { alpha });
    }
    if beta < 0 || alpha + beta <= 0 || alpha / 2 + beta < 1 {
        return Err(ReferenceError::InvalidPair { alpha, beta });
    }
    let p = alpha / 2 + beta;
    let gamma = alpha + beta;
    let first: Vec<i64> = (0..p).map(|i| 2 * i + 1).collect();
    let second: Vec<i64> = (0..p).map(|i| gamma + 2 * i + 1).collect();
    let seed_len = (4 * alpha + 5 * beta).max(gamma + 2 * p) as usize;
    let initial = definitional_sequence(alpha, beta, seed_len)?;
    Ok(RecursionSpec::new(
        vec![RecursionTerm::new(0, first), RecursionTerm::new(gamma, second)],
        initial,
    ))
}
