//! Forward evaluation of nested recursions with death detection.
//!
//! Indices are 1-based to match the usual convention for these sequences;
//! `values[i]` holds `A(i + 1)`. Evaluation of `A(n)` walks the terms left
//! to right; the first argument that falls outside `[1, n-1]` kills the
//! sequence at that point. A future reference (`argument >= n`, possible
//! with relaxed parameters) is death too: forward evaluation cannot use a
//! value that has not been produced yet.

use crate::notation::RecursionSpec;
use serde::Serialize;

/// Where and why an evaluation died: the index being computed, the term
/// (0-based) whose argument went bad, and the offending argument, which is
/// either nonpositive or at least `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Death {
    pub index: usize,
    pub term: usize,
    pub argument: i64,
}

/// Result of evaluating a spec to a requested horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalResult {
    /// `A(1)..A(len)`; runs to `horizon` when alive, to `death.index - 1`
    /// otherwise.
    pub values: Vec<i64>,
    pub death: Option<Death>,
    pub horizon: usize,
}

impl EvalResult {
    pub fn is_alive(&self) -> bool {
        self.death.is_none()
    }

    /// `A(n)` for 1-based `n`, if computed.
    pub fn value(&self, n: usize) -> Option<i64> {
        if n == 0 {
            return None;
        }
        self.values.get(n - 1).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("the spec has no initial conditions")]
    NoInitialConditions,
    #[error("value overflow at index {index}")]
    Overflow { index: usize },
}

/// Evaluate `spec` forward from its initial conditions up to `horizon`.
///
/// Death is reported in the result, not as an error; only a missing seed
/// or 64-bit overflow is an error.
pub fn evaluate(spec: &RecursionSpec, horizon: usize) -> Result<EvalResult, EvalError> {
    let c = spec.initial.len();
    if c == 0 {
        return Err(EvalError::NoInitialConditions);
    }
    let mut values: Vec<i64> = Vec::with_capacity(horizon);
    values.extend(spec.initial.iter().take(horizon));
    for n in (c + 1)..=horizon {
        match step(spec, &values, n)? {
            Ok(v) => values.push(v),
            Err(death) => {
                return Ok(EvalResult { values, death: Some(death), horizon });
            }
        }
    }
    Ok(EvalResult { values, death: None, horizon })
}

/// Compute `A(n)` from the already-known prefix, or report where it dies.
fn step(spec: &RecursionSpec, values: &[i64], n: usize) -> Result<Result<i64, Death>, EvalError> {
    let nn = n as i64;
    let overflow = EvalError::Overflow { index: n };
    let mut total: i64 = 0;
    for (ti, term) in spec.terms.iter().enumerate() {
        let mut inner_sum: i64 = 0;
        for &a in &term.offsets {
            let idx = nn - a;
            if idx < 1 || idx >= nn {
                return Ok(Err(Death { index: n, term: ti, argument: idx }));
            }
            inner_sum = inner_sum.checked_add(values[(idx - 1) as usize]).ok_or(overflow)?;
        }
        let arg = nn
            .checked_sub(term.shift)
            .and_then(|v| v.checked_sub(inner_sum))
            .ok_or(overflow)?;
        if arg < 1 || arg >= nn {
            return Ok(Err(Death { index: n, term: ti, argument: arg }));
        }
        total = total.checked_add(values[(arg - 1) as usize]).ok_or(overflow)?;
    }
    Ok(Ok(total))
}
