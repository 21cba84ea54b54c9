//! Classification of computed sequences: slow growth, frequency profiles,
//! ruler-function fits, asymptotic ratio estimates, and the product
//! generating function for Conolly-like sequences.

use serde::Serialize;

/// The ruler function `r_m`: one plus the 2-adic valuation of `m`, so
/// `1,2,1,3,1,2,1,4,...`.
pub fn ruler(m: u64) -> u64 {
    assert!(m >= 1, "ruler function is defined for m >= 1");
    m.trailing_zeros() as u64 + 1
}

/// True iff every successive difference is 0 or 1. Whether the sequence
/// also tends to infinity is a trend question left to the caller.
pub fn is_slow(values: &[i64]) -> bool {
    values.windows(2).all(|w| {
        let d = w[1] - w[0];
        d == 0 || d == 1
    })
}

/// Exact rational, reduced, with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Occurrence counts of a nondecreasing sequence. `phi(m)` is defined for
/// `1 <= m <= complete_upto`; the horizon stops one short of the last
/// value seen, since that value may still be growing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrequencyProfile {
    counts: Vec<u64>,
    complete_upto: usize,
}

impl FrequencyProfile {
    pub fn phi(&self, m: usize) -> Option<u64> {
        if m >= 1 && m <= self.complete_upto {
            Some(self.counts[m - 1])
        } else {
            None
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn complete_upto(&self) -> usize {
        self.complete_upto
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("sequence decreases at index {index}")]
    NotNondecreasing { index: usize },
}

/// Count how often each value occurs in a nondecreasing sequence.
pub fn frequency(values: &[i64]) -> Result<FrequencyProfile, AnalysisError> {
    if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
        return Err(AnalysisError::NotNondecreasing { index: i + 1 });
    }
    let last = values.last().copied().unwrap_or(0);
    let complete_upto = if last > 0 { (last - 1) as usize } else { 0 };
    let mut counts = vec![0u64; complete_upto];
    for &v in values {
        if v >= 1 && (v as usize) <= complete_upto {
            counts[(v - 1) as usize] += 1;
        }
    }
    Ok(FrequencyProfile { counts, complete_upto })
}

/// An `(alpha, beta)` pair describing a frequency profile of the form
/// `phi(m) = alpha + beta * r_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConollySignature {
    pub alpha: i64,
    pub beta: i64,
}

impl ConollySignature {
    pub fn new(alpha: i64, beta: i64) -> Self {
        ConollySignature { alpha, beta }
    }

    /// `beta >= 0`, `alpha + beta > 0`, and not the excluded
    /// `-alpha = beta > 0` case.
    pub fn is_admissible(&self) -> bool {
        self.beta >= 0 && self.alpha + self.beta > 0 && !self.is_degenerate()
    }

    /// The excluded case `-alpha = beta > 0`: such a profile fits no slow
    /// sequence (odd values would never occur). Reported rather than
    /// suppressed so callers can warn.
    pub fn is_degenerate(&self) -> bool {
        self.beta > 0 && self.alpha == -self.beta
    }

    /// Order `p = alpha/2 + beta` implied by the pair.
    pub fn order_p(&self) -> Rational {
        Rational::new(self.alpha + 2 * self.beta, 2)
    }

    /// Asymptotic slope `1/(alpha + 2 beta)` of the sequence.
    pub fn slope(&self) -> Rational {
        Rational::new(1, self.alpha + 2 * self.beta)
    }
}

impl std::fmt::Display for ConollySignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Fit `phi(m) = alpha + beta * r_m` against a profile: alpha + beta from
/// phi(1) (ruler 1) and beta from phi(2) (ruler 2), then verified on every
/// complete value. `None` means not Conolly-like at this horizon (or the
/// horizon is shorter than 4).
pub fn fit_conolly(profile: &FrequencyProfile) -> Option<ConollySignature> {
    if profile.complete_upto() < 4 {
        return None;
    }
    let phi1 = profile.counts[0] as i64;
    let phi2 = profile.counts[1] as i64;
    let beta = phi2 - phi1;
    let alpha = phi1 - beta;
    for (i, &count) in profile.counts.iter().enumerate() {
        let expected = alpha + beta * ruler(i as u64 + 1) as i64;
        if expected != count as i64 {
            return None;
        }
    }
    Some(ConollySignature { alpha, beta })
}

/// `A(n)/n` at assorted checkpoints. No limit is asserted: some solution
/// sequences provably have none, so the caller reads the trend.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub horizon: usize,
    pub at_horizon: Rational,
    /// `(n, A(n)/n)` at n = N, N/2, N/4, ...
    pub checkpoints: Vec<(usize, Rational)>,
    /// Estimate over the largest even index; separates woven sequences.
    pub even_estimate: Rational,
    /// Estimate over the largest odd index.
    pub odd_estimate: Rational,
}

pub fn ratio_estimate(values: &[i64]) -> RatioReport {
    assert!(!values.is_empty(), "ratio estimate needs a nonempty sequence");
    let n = values.len();
    let ratio_at = |i: usize| Rational::new(values[i - 1], i as i64);
    let mut checkpoints = Vec::new();
    let mut k = n;
    while k >= 1 {
        checkpoints.push((k, ratio_at(k)));
        if k == 1 {
            break;
        }
        k /= 2;
    }
    let even = if n >= 2 { n - n % 2 } else { n };
    let odd = if n >= 2 { n - 1 + n % 2 } else { n };
    RatioReport {
        horizon: n,
        at_horizon: ratio_at(n),
        checkpoints,
        even_estimate: ratio_at(even),
        odd_estimate: ratio_at(odd),
    }
}

/// First `degree` coefficients of
/// `z/(1-z) * prod_{n>=0} (1 + z^(2^n alpha + (2^(n+1)-1) beta))`,
/// the generating function of the `(alpha,beta)`-Conolly sequence. The
/// product is truncated once exponents exceed `degree`.
pub fn gf_coefficients(sig: &ConollySignature, degree: usize) -> Vec<i64> {
    let (alpha, beta) = (sig.alpha, sig.beta);
    assert!(sig.beta >= 0 && alpha + beta > 0, "invalid signature {sig}");
    // Truncated product.
    let mut product = vec![0i64; degree + 1];
    product[0] = 1;
    let mut pow = 1i64; // 2^n
    while let Some(exponent) = pow
        .checked_mul(alpha)
        .and_then(|x| (2 * pow - 1).checked_mul(beta).and_then(|y| x.checked_add(y)))
    {
        if exponent <= 0 || exponent as usize > degree {
            break;
        }
        let e = exponent as usize;
        for j in (e..=degree).rev() {
            product[j] += product[j - e];
        }
        match pow.checked_mul(2) {
            Some(next) => pow = next,
            None => break,
        }
    }
    // Multiply by z/(1-z): coefficient m is the sum of product[0..m].
    let mut out = Vec::with_capacity(degree);
    let mut acc = 0i64;
    for coefficient in product.iter().take(degree) {
        acc += coefficient;
        out.push(acc);
    }
    out
}
