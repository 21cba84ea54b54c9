//! Machinery around the ceiling-function identity for `(2p,0)`-Conolly
//! recursions: quotient/remainder decomposition mod `2p`, the
//! three-condition characterization of formal satisfaction by `ceil(n/2p)`,
//! a brute-force oracle for the same property, the specialized order-1 and
//! order-2 tests, and the initial-condition count that upgrades formal
//! satisfaction to forward generation.
//!
//! Formal satisfaction (the defining equation holds at every integer `n`)
//! and forward generation (the recursion actually produces the sequence)
//! are distinct: `<-1;-1:2;3>` is formally satisfied by `ceil(n/2)` but can
//! never generate it, since evaluating `n` needs the term at `n+1`. The two
//! notions are never conflated here.

use crate::notation::{RecursionSpec, RecursionTerm};
use rayon::prelude::*;
use serde::Serialize;

/// Quotient and remainder mod `2p` using floor division, so the remainder
/// lies in `[0, 2p)` even for negative inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuoRem {
    pub quo: i64,
    pub rem: i64,
    pub modulus: i64,
}

impl QuoRem {
    pub fn decompose(z: i64, modulus: i64) -> Self {
        assert!(modulus > 0);
        QuoRem { quo: z.div_euclid(modulus), rem: z.rem_euclid(modulus), modulus }
    }
}

/// Mathematical ceiling of `num / den` for `den > 0`, valid for any integer
/// numerator.
pub fn ceil_div(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    num.div_euclid(den) + (num.rem_euclid(den) != 0) as i64
}

/// Which of the three conditions failed, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConditionFailure {
    /// Too many first-term offset remainders at or below `j`, or at or
    /// above `2p - j`.
    FirstTermResidues { j: i64 },
    /// The same for the second term.
    SecondTermResidues { j: i64 },
    /// No integer `d` balances the shifted quotient sums in either term
    /// order.
    NoBalancingInteger,
}

impl std::fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConditionFailure::FirstTermResidues { j } => write!(f, "condition 1 at j={j}"),
            ConditionFailure::SecondTermResidues { j } => write!(f, "condition 2 at j={j}"),
            ConditionFailure::NoBalancingInteger => write!(f, "condition 3: no integer d"),
        }
    }
}

/// Outcome of the three-condition check. When satisfied via the first
/// branch of condition 3, `-s + sum(quo(a_i)) = 2pd` and
/// `-t + sum(quo(b_i)) = -2pd - p`; `swapped` records that the terms had to
/// be exchanged to reach that form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CeilingVerdict {
    pub satisfied: bool,
    pub failed_condition: Option<ConditionFailure>,
    pub d: Option<i64>,
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CeilingError {
    #[error("expected a 2-ary recursion, got arity {got}")]
    Arity { got: usize },
    #[error("term {term} has order {got}, expected {want}")]
    Order { term: usize, got: usize, want: usize },
    #[error("conditions not satisfied, so no seeding count exists")]
    NotSatisfied,
    #[error("negative parameters cannot seed a forward evaluation")]
    NegativeParameters,
}

/// `(s, a-offsets, t, b-offsets)` of a 2-ary uniform-order spec.
type TwoTermParts<'a> = (i64, &'a [i64], i64, &'a [i64]);

fn two_term_parts(spec: &RecursionSpec, p: usize) -> Result<TwoTermParts<'_>, CeilingError> {
    if spec.terms.len() != 2 {
        return Err(CeilingError::Arity { got: spec.terms.len() });
    }
    for (i, term) in spec.terms.iter().enumerate() {
        if term.order() != p {
            return Err(CeilingError::Order { term: i + 1, got: term.order(), want: p });
        }
    }
    Ok((
        spec.terms[0].shift,
        &spec.terms[0].offsets,
        spec.terms[1].shift,
        &spec.terms[1].offsets,
    ))
}

/// First `j` in `0..p` violating "at most j remainders <= j and at most j
/// remainders >= 2p - j".
fn residue_violation(rems: &[i64], p: i64) -> Option<i64> {
    (0..p).find(|&j| {
        let low = rems.iter().filter(|&&r| r <= j).count() as i64;
        let high = rems.iter().filter(|&&r| r >= 2 * p - j).count() as i64;
        low > j || high > j
    })
}

/// Decide whether `ceil(n/2p)` formally satisfies the recursion, via the
/// arithmetic conditions on the parameters. Works for arbitrary (also
/// negative) integer parameters.
pub fn check_conditions(spec: &RecursionSpec, p: usize) -> Result<CeilingVerdict, CeilingError> {
    let (s, a, t, b) = two_term_parts(spec, p)?;
    let p = p as i64;
    let two_p = 2 * p;
    let rems_a: Vec<i64> = a.iter().map(|&x| x.rem_euclid(two_p)).collect();
    let rems_b: Vec<i64> = b.iter().map(|&x| x.rem_euclid(two_p)).collect();
    if let Some(j) = residue_violation(&rems_a, p) {
        return Ok(CeilingVerdict {
            satisfied: false,
            failed_condition: Some(ConditionFailure::FirstTermResidues { j }),
            d: None,
            swapped: false,
        });
    }
    if let Some(j) = residue_violation(&rems_b, p) {
        return Ok(CeilingVerdict {
            satisfied: false,
            failed_condition: Some(ConditionFailure::SecondTermResidues { j }),
            d: None,
            swapped: false,
        });
    }
    let sum_quo_a: i64 = a.iter().map(|&x| x.div_euclid(two_p)).sum();
    let sum_quo_b: i64 = b.iter().map(|&x| x.div_euclid(two_p)).sum();
    let first = -s + sum_quo_a;
    let second = -t + sum_quo_b;
    // Either the first term carries 2pd and the second -2pd - p, or the
    // roles are switched.
    for (lead, tail, swapped) in [(first, second, false), (second, first, true)] {
        if lead.rem_euclid(two_p) == 0 && tail == -lead - p {
            return Ok(CeilingVerdict {
                satisfied: true,
                failed_condition: None,
                d: Some(lead / two_p),
                swapped,
            });
        }
    }
    Ok(CeilingVerdict {
        satisfied: false,
        failed_condition: Some(ConditionFailure::NoBalancingInteger),
        d: None,
        swapped: false,
    })
}

/// One half of the defining equation: `ceil((n - shift - sum_i
/// ceil((n - offs_i)/2p)) / 2p)`.
fn half(n: i64, shift: i64, offsets: &[i64], two_p: i64) -> i64 {
    let inner: i64 = offsets.iter().map(|&a| ceil_div(n - a, two_p)).sum();
    ceil_div(n - shift - inner, two_p)
}

/// Brute-force check that `ceil(n/2p)` satisfies the defining equation for
/// every `n` in `[-W, W]`, where `W` is at least `4p + max |parameter|`
/// (smaller requested windows are widened to that floor). Since every side
/// of the identity shifts by a constant under `n -> n + 4p`, such a window
/// decides formal satisfaction for all integers.
pub fn formal_satisfy_oracle(
    spec: &RecursionSpec,
    p: usize,
    window: usize,
) -> Result<bool, CeilingError> {
    let (s, a, t, b) = two_term_parts(spec, p)?;
    let two_p = 2 * p as i64;
    let max_abs = a
        .iter()
        .chain(b.iter())
        .chain([&s, &t])
        .map(|x| x.unsigned_abs())
        .max()
        .unwrap_or(0);
    let w = (window as u64).max(4 * p as u64 + max_abs) as i64;
    for n in -w..=w {
        if ceil_div(n, two_p) != half(n, s, a, two_p) + half(n, t, b, two_p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order-1 special case: `a` and `b` odd with `2(s + t) = a + b`.
pub fn check_p1(spec: &RecursionSpec) -> Result<bool, CeilingError> {
    let (s, a, t, b) = two_term_parts(spec, 1)?;
    let (a, b) = (a[0], b[0]);
    Ok(a.rem_euclid(2) == 1 && b.rem_euclid(2) == 1 && 2 * (s + t) == a + b)
}

/// Order-2 special case: `Some(kappa)` for the unique odd `kappa` with
/// `a+b` within one of `4(s+kappa)`, `c+d` within one of `4(t-kappa)`, and
/// no offset divisible by 4.
pub fn check_p2_kappa(spec: &RecursionSpec) -> Result<Option<i64>, CeilingError> {
    let (s, ab, t, cd) = two_term_parts(spec, 2)?;
    if ab.iter().chain(cd.iter()).any(|&x| x.rem_euclid(4) == 0) {
        return Ok(None);
    }
    // The unique multiple of 4 within distance 1 of x, if any.
    let near_multiple = |x: i64| (x - 1..=x + 1).find(|v| v.rem_euclid(4) == 0).map(|v| v / 4);
    let from_first = near_multiple(ab[0] + ab[1] - 4 * s);
    let from_second = near_multiple(-(cd[0] + cd[1] - 4 * t));
    match (from_first, from_second) {
        (Some(k1), Some(k2)) if k1 == k2 && k1.rem_euclid(2) == 1 => Ok(Some(k1)),
        _ => Ok(None),
    }
}

/// How many `ceil(v/2p)` seed values guarantee that forward evaluation of a
/// condition-satisfying recursion generates `ceil(n/2p)` forever:
/// `max(2p + 2s, 2p + 2t, a_1..a_p, b_1..b_p)`.
pub fn min_initial_conditions(spec: &RecursionSpec, p: usize) -> Result<usize, CeilingError> {
    let (s, a, t, b) = two_term_parts(spec, p)?;
    if s < 0 || t < 0 || a.iter().chain(b.iter()).any(|&x| x < 1) {
        return Err(CeilingError::NegativeParameters);
    }
    if !check_conditions(spec, p)?.satisfied {
        return Err(CeilingError::NotSatisfied);
    }
    let two_p = 2 * p as i64;
    let c = a
        .iter()
        .chain(b.iter())
        .copied()
        .chain([two_p + 2 * s, two_p + 2 * t])
        .max()
        .unwrap();
    Ok(c as usize)
}

/// The spec re-seeded with `count` ceiling values `ceil(v/2p)`.
pub fn ceiling_seeded(spec: &RecursionSpec, p: usize, count: usize) -> RecursionSpec {
    let two_p = 2 * p as i64;
    spec.with_initial((1..=count as i64).map(|v| ceil_div(v, two_p)).collect())
}

/// Parameter box for condition sweeps; offsets are drawn as nondecreasing
/// tuples from the `a`/`b` ranges.
#[derive(Clone, Debug)]
pub struct CeilingBox {
    pub s: std::ops::RangeInclusive<i64>,
    pub t: std::ops::RangeInclusive<i64>,
    pub a: std::ops::RangeInclusive<i64>,
    pub b: std::ops::RangeInclusive<i64>,
}

/// One row of a sweep: the spec, its verdict, and for order 2 the odd
/// `kappa` from the specialized test.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub spec: RecursionSpec,
    pub verdict: CeilingVerdict,
    pub kappa: Option<i64>,
}

/// Nondecreasing `p`-tuples over `range`, lexicographically ordered.
pub(crate) fn sorted_tuples(range: &std::ops::RangeInclusive<i64>, p: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p);
    fn rec(
        lo: i64,
        hi: i64,
        p: usize,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for v in lo..=hi {
            current.push(v);
            rec(v, hi, p, current, out);
            current.pop();
        }
    }
    if range.is_empty() {
        return out;
    }
    rec(*range.start(), *range.end(), p, &mut current, &mut out);
    out
}

/// Check the conditions over every spec in the box, in deterministic
/// lexicographic order. Tuples are checked in parallel.
pub fn sweep(p: usize, bounds: &CeilingBox) -> Vec<SweepRow> {
    let a_tuples = sorted_tuples(&bounds.a, p);
    let b_tuples = sorted_tuples(&bounds.b, p);
    let mut specs = Vec::new();
    for s in bounds.s.clone() {
        for t in bounds.t.clone() {
            for a in &a_tuples {
                for b in &b_tuples {
                    specs.push(RecursionSpec::new(
                        vec![
                            RecursionTerm::new(s, a.clone()),
                            RecursionTerm::new(t, b.clone()),
                        ],
                        Vec::new(),
                    ));
                }
            }
        }
    }
    specs
        .into_par_iter()
        .map(|spec| {
            let verdict = check_conditions(&spec, p).expect("box specs are well-shaped");
            let kappa =
                if p == 2 { check_p2_kappa(&spec).expect("box specs are well-shaped") } else { None };
            SweepRow { spec, verdict, kappa }
        })
        .collect()
}
