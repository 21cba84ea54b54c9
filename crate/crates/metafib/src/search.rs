//! Exhaustive search over parameter boxes for recursions whose solution,
//! seeded with a definitional prefix, reproduces a target Conolly-like
//! sequence. Candidates are evaluated with early abort on death or first
//! mismatch, in parallel, with hits reported in the enumeration order no
//! matter how the work was scheduled.

use crate::analysis::ConollySignature;
use crate::ceiling::sorted_tuples;
use crate::notation::{RecursionSpec, RecursionTerm};
use crate::reference::{self, ReferenceError};
use rayon::prelude::*;
use serde::Serialize;
use std::ops::RangeInclusive;

/// Parameter ranges: shifts from `s` and `t`, per-term offset tuples drawn
/// nondecreasing from `a` (first term) and `b` (second term).
#[derive(Clone, Debug)]
pub struct SearchBox {
    pub s: RangeInclusive<i64>,
    pub t: RangeInclusive<i64>,
    pub a: RangeInclusive<i64>,
    pub b: RangeInclusive<i64>,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub order_p: usize,
    pub alpha: i64,
    pub beta: i64,
    pub bounds: SearchBox,
    /// How many definitional terms seed each candidate.
    pub seed_len: usize,
    /// How far the solution must match the definitional sequence.
    pub compare_len: usize,
    /// When the two shifts coincide, keep only candidates whose first
    /// offset tuple is lexicographically at most the second, since the two
    /// summands commute.
    pub dedup: bool,
    /// Record where discarded candidates died.
    pub log_deaths: bool,
}

impl SearchConfig {
    pub fn new(order_p: usize, alpha: i64, beta: i64, bounds: SearchBox) -> Self {
        SearchConfig {
            order_p,
            alpha,
            beta,
            bounds,
            seed_len: 20,
            compare_len: 1000,
            dedup: true,
            log_deaths: false,
        }
    }
}

/// A spec whose seeded evaluation is alive and equal to the target for the
/// whole comparison window. The stored spec carries its seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub spec: RecursionSpec,
    pub matched_len: usize,
    pub signature: ConollySignature,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    pub examined: u64,
    pub died: u64,
    pub mismatched: u64,
    /// `(bare spec, death index)` for every dead candidate, when requested.
    pub death_log: Vec<(RecursionSpec, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("target ({alpha},{beta}) is not admissible for order {p}: need alpha + 2 beta = 2p, beta >= 0, alpha + beta > 0")]
    TargetNotAdmissible { alpha: i64, beta: i64, p: usize },
    #[error("beta = 0 targets have infinitely many hits; use the ceiling condition sweep instead")]
    BetaZeroTarget,
    #[error("seed length {seed} exceeds comparison length {compare}")]
    SeedBeyondCompare { seed: usize, compare: usize },
    #[error(transparent)]
    Reference(#[from] ReferenceError),
}

/// Every candidate spec in the box, in lexicographic `(s, t, a, b)` order,
/// without initial conditions.
pub fn enumerate_box(config: &SearchConfig) -> impl Iterator<Item = RecursionSpec> + '_ {
    let a_tuples = sorted_tuples(&config.bounds.a, config.order_p);
    let b_tuples = sorted_tuples(&config.bounds.b, config.order_p);
    let dedup = config.dedup;
    config.bounds.s.clone().flat_map(move |s| {
        let a_tuples = a_tuples.clone();
        let b_tuples = b_tuples.clone();
        config.bounds.t.clone().flat_map(move |t| {
            let a_tuples = a_tuples.clone();
            let b_tuples = b_tuples.clone();
            a_tuples.into_iter().flat_map(move |a| {
                let b_tuples = b_tuples.clone();
                b_tuples
                    .into_iter()
                    .filter_map(move |b| {
                        if dedup && s == t && a.as_slice() > b.as_slice() {
                            return None;
                        }
                        Some(RecursionSpec::new(
                            vec![RecursionTerm::new(s, a.clone()), RecursionTerm::new(t, b)],
                            Vec::new(),
                        ))
                    })
            })
        })
    })
}

enum Probe {
    Hit,
    Died { at: usize },
    Mismatched,
}

/// Evaluate one candidate against the target prefix, reusing `buffer`, and
/// stop at the first divergence.
fn probe(
    s: i64,
    a: &[i64],
    t: i64,
    b: &[i64],
    seed_len: usize,
    target: &[i64],
    buffer: &mut Vec<i64>,
) -> Probe {
    buffer.clear();
    buffer.extend_from_slice(&target[..seed_len]);
    for n in (seed_len + 1)..=target.len() {
        let nn = n as i64;
        let mut total: i64 = 0;
        for (shift, offsets) in [(s, a), (t, b)] {
            let mut inner: i64 = 0;
            for &offset in offsets {
                let idx = nn - offset;
                if idx < 1 || idx >= nn {
                    return Probe::Died { at: n };
                }
                inner = match inner.checked_add(buffer[(idx - 1) as usize]) {
                    Some(v) => v,
                    None => return Probe::Died { at: n },
                };
            }
            let arg = nn - shift - inner;
            if arg < 1 || arg >= nn {
                return Probe::Died { at: n };
            }
            total = match total.checked_add(buffer[(arg - 1) as usize]) {
                Some(v) => v,
                None => return Probe::Died { at: n },
            };
        }
        if total != target[n - 1] {
            return Probe::Mismatched;
        }
        buffer.push(total);
    }
    Probe::Hit
}

/// Run the search protocol: every box candidate is seeded with the first
/// `seed_len` definitional terms and must stay alive and equal to the
/// definitional sequence through `compare_len` values.
pub fn run_search(config: &SearchConfig) -> Result<SearchReport, SearchError> {
    let p = config.order_p;
    if config.beta == 0 {
        return Err(SearchError::BetaZeroTarget);
    }
    if config.beta < 0
        || config.alpha + config.beta <= 0
        || config.alpha + 2 * config.beta != 2 * p as i64
    {
        return Err(SearchError::TargetNotAdmissible {
            alpha: config.alpha,
            beta: config.beta,
            p,
        });
    }
    if config.seed_len > config.compare_len || config.seed_len == 0 {
        return Err(SearchError::SeedBeyondCompare {
            seed: config.seed_len,
            compare: config.compare_len,
        });
    }
    let target = reference::definitional_sequence(config.alpha, config.beta, config.compare_len)?;
    let a_tuples = sorted_tuples(&config.bounds.a, p);
    let b_tuples = sorted_tuples(&config.bounds.b, p);

    let mut report = SearchReport::default();
    for s in config.bounds.s.clone() {
        for t in config.bounds.t.clone() {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for (ai, a) in a_tuples.iter().enumerate() {
                for (bi, b) in b_tuples.iter().enumerate() {
                    if config.dedup && s == t && a.as_slice() > b.as_slice() {
                        continue;
                    }
                    pairs.push((ai, bi));
                }
            }
            report.examined += pairs.len() as u64;
            let outcomes: Vec<(usize, usize, Probe)> = pairs
                .into_par_iter()
                .map_with(Vec::with_capacity(config.compare_len), |buffer, (ai, bi)| {
                    let outcome = probe(
                        s,
                        &a_tuples[ai],
                        t,
                        &b_tuples[bi],
                        config.seed_len,
                        &target,
                        buffer,
                    );
                    (ai, bi, outcome)
                })
                .collect();
            for (ai, bi, outcome) in outcomes {
                let bare = || {
                    RecursionSpec::new(
                        vec![
                            RecursionTerm::new(s, a_tuples[ai].clone()),
                            RecursionTerm::new(t, b_tuples[bi].clone()),
                        ],
                        Vec::new(),
                    )
                };
                match outcome {
                    Probe::Hit => report.hits.push(SearchHit {
                        spec: bare().with_initial(target[..config.seed_len].to_vec()),
                        matched_len: config.compare_len,
                        signature: ConollySignature::new(config.alpha, config.beta),
                    }),
                    Probe::Died { at } => {
                        report.died += 1;
                        if config.log_deaths {
                            report.death_log.push((bare(), at));
                        }
                    }
                    Probe::Mismatched => report.mismatched += 1,
                }
            }
        }
    }
    Ok(report)
}
