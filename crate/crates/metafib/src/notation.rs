//! Angle-bracket notation for nested recurrences.
//!
//! A recursion `A(n) = sum_i A(n - s_i - sum_j A(n - a_ij))` together with
//! optional initial conditions is written
//! `<s_1;a_11,..,a_1p : ... : s_k;a_k1,..,a_kp>[x_1,..,x_c]`, e.g. the
//! Conolly recursion is `<0;1:1;2>[1,2]`. Whitespace is insignificant;
//! the canonical printed form has none.

use serde::Serialize;
use std::fmt;

/// One summand of a nested recursion: the shift `s_i` plus the inner
/// offsets `a_i1..a_ip`. The offsets list is never empty; its length is
/// the order `p_i` of the term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RecursionTerm {
    pub shift: i64,
    pub offsets: Vec<i64>,
}

impl RecursionTerm {
    pub fn new(shift: i64, offsets: Vec<i64>) -> Self {
        assert!(!offsets.is_empty(), "a recursion term needs at least one offset");
        RecursionTerm { shift, offsets }
    }

    /// The order `p_i` of this term.
    pub fn order(&self) -> usize {
        self.offsets.len()
    }
}

/// A nested recursion plus its (possibly empty) initial conditions.
///
/// A recursion is often written without initial conditions, even when it
/// is unknown whether any make it solvable; that is represented by an
/// empty `initial` list, not a distinct type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RecursionSpec {
    pub terms: Vec<RecursionTerm>,
    pub initial: Vec<i64>,
}

impl RecursionSpec {
    pub fn new(terms: Vec<RecursionTerm>, initial: Vec<i64>) -> Self {
        assert!(!terms.is_empty(), "a recursion needs at least one term");
        RecursionSpec { terms, initial }
    }

    /// The arity `k`, i.e. the number of summands.
    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    /// The order vector `(p_1, .., p_k)`.
    pub fn order_vector(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    /// `Some(p)` when every term has the same order `p`.
    pub fn uniform_order(&self) -> Option<usize> {
        let p = self.terms[0].order();
        self.terms.iter().all(|t| t.order() == p).then_some(p)
    }

    /// Number of initial conditions `c`.
    pub fn initial_len(&self) -> usize {
        self.initial.len()
    }

    /// The same recursion with the initial conditions stripped.
    pub fn bare(&self) -> RecursionSpec {
        RecursionSpec { terms: self.terms.clone(), initial: Vec::new() }
    }

    /// The same recursion with `initial` as its initial conditions.
    pub fn with_initial(&self, initial: Vec<i64>) -> RecursionSpec {
        RecursionSpec { terms: self.terms.clone(), initial }
    }

    /// Parse the canonical notation. Strict mode: shifts must be
    /// nonnegative, offsets positive, initial conditions nonnegative.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text, ParseMode::Strict).parse()
    }

    /// Parse accepting arbitrary integers everywhere. Needed to express
    /// recursions like `<-1;-1:2;3>` that only make sense for formal
    /// satisfaction checks, never for forward evaluation.
    pub fn parse_relaxed(text: &str) -> Result<Self, ParseError> {
        Parser::new(text, ParseMode::Relaxed).parse()
    }
}

impl fmt::Display for RecursionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{};", term.shift)?;
            for (j, a) in term.offsets.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
        }
        f.write_str(">")?;
        if !self.initial.is_empty() {
            f.write_str("[")?;
            for (i, x) in self.initial.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ParseMode {
    Strict,
    Relaxed,
}

/// Parse failure with the byte offset of the offending input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("expected {expected} at byte {offset}")]
    Expected { expected: &'static str, offset: usize },
    #[error("empty offset list at byte {offset}")]
    EmptyOffsets { offset: usize },
    #[error("integer out of range at byte {offset}")]
    IntegerOverflow { offset: usize },
    #[error("negative {what} at byte {offset} (only allowed in relaxed mode)")]
    NegativeParameter { what: &'static str, offset: usize },
    #[error("nonpositive offset at byte {offset} (only allowed in relaxed mode)")]
    NonpositiveOffset { offset: usize },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
}

impl ParseError {
    /// Byte offset the error points at; always within `0..=input.len()`.
    pub fn offset(&self) -> usize {
        match *self {
            ParseError::Expected { offset, .. }
            | ParseError::EmptyOffsets { offset }
            | ParseError::IntegerOverflow { offset }
            | ParseError::NegativeParameter { offset, .. }
            | ParseError::NonpositiveOffset { offset }
            | ParseError::TrailingInput { offset } => offset,
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    mode: ParseMode,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, mode: ParseMode) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0, mode }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Expected { expected, offset: self.pos })
        }
    }

    fn integer(&mut self) -> Result<(i64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.bytes.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::Expected { expected: "integer", offset: start });
        }
        let mut value: i64 = 0;
        for &b in &self.bytes[digits_start..self.pos] {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as i64))
                .ok_or(ParseError::IntegerOverflow { offset: start })?;
        }
        if negative {
            value = -value;
        }
        Ok((value, start))
    }

    fn term(&mut self) -> Result<RecursionTerm, ParseError> {
        let (shift, shift_at) = self.integer()?;
        if self.mode == ParseMode::Strict && shift < 0 {
            return Err(ParseError::NegativeParameter { what: "shift", offset: shift_at });
        }
        self.eat(b';', "';'")?;
        // An immediately following ':' '>' or ',' means the offset list is empty.
        match self.peek() {
            Some(b':') | Some(b'>') => {
                return Err(ParseError::EmptyOffsets { offset: self.pos });
            }
            _ => {}
        }
        let mut offsets = Vec::new();
        loop {
            let (a, a_at) = self.integer()?;
            if self.mode == ParseMode::Strict && a < 1 {
                return Err(ParseError::NonpositiveOffset { offset: a_at });
            }
            offsets.push(a);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(RecursionTerm { shift, offsets })
    }

    fn parse(mut self) -> Result<RecursionSpec, ParseError> {
        self.eat(b'<', "'<'")?;
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b':') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        self.eat(b'>', "'>'")?;
        let mut initial = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            loop {
                let (x, x_at) = self.integer()?;
                if self.mode == ParseMode::Strict && x < 0 {
                    return Err(ParseError::NegativeParameter {
                        what: "initial condition",
                        offset: x_at,
                    });
                }
                initial.push(x);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(ParseError::Expected { expected: "',' or ']'", offset: self.pos }),
                }
            }
        }
        if self.peek().is_some() {
            return Err(ParseError::TrailingInput { offset: self.pos });
        }
        Ok(RecursionSpec { terms, initial })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(shift: i64, offsets: &[i64]) -> RecursionTerm {
        RecursionTerm::new(shift, offsets.to_vec())
    }

    #[test]
    fn parses_conolly() {
        let spec = RecursionSpec::parse("<0;1:1;2>[1,2]").unwrap();
        assert_eq!(spec.terms, vec![term(0, &[1]), term(1, &[2])]);
        assert_eq!(spec.initial, vec![1, 2]);
        assert_eq!(spec.arity(), 2);
        assert_eq!(spec.uniform_order(), Some(1));
    }

    #[test]
    fn parses_order_two_without_initial() {
        let spec = RecursionSpec::parse("<0;1,3:4;5,7>").unwrap();
        assert_eq!(spec.arity(), 2);
        assert_eq!(spec.order_vector(), vec![2, 2]);
        assert!(spec.initial.is_empty());
    }

    #[test]
    fn parses_hofstadter_q() {
        let spec = RecursionSpec::parse("<0;1:0;2>[1,1]").unwrap();
        assert_eq!(spec.terms, vec![term(0, &[1]), term(0, &[2])]);
        assert_eq!(spec.initial, vec![1, 1]);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let spec = RecursionSpec::parse("< 0 ; 1 : 1 ; 2 >").unwrap();
        assert_eq!(spec.to_string(), "<0;1:1;2>");
    }

    #[test]
    fn zero_initial_conditions_round_trip() {
        let text = "<1;1:3;3>[0,0,0,0]";
        let spec = RecursionSpec::parse(text).unwrap();
        assert_eq!(spec.to_string(), text);
    }

    #[test]
    fn canonical_form_round_trips() {
        for text in ["<0;1:1;2>[1,2]", "<0;1,3:4;5,7>", "<0;2:3;5>[1,2,2,3,4]"] {
            let spec = RecursionSpec::parse(text).unwrap();
            assert_eq!(RecursionSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn rejects_empty_offsets() {
        let err = RecursionSpec::parse("<0;>").unwrap_err();
        assert_eq!(err, ParseError::EmptyOffsets { offset: 3 });
    }

    #[test]
    fn rejects_non_integer_token() {
        let err = RecursionSpec::parse("<0;x>").unwrap_err();
        assert_eq!(err, ParseError::Expected { expected: "integer", offset: 3 });
    }

    #[test]
    fn rejects_trailing_input() {
        let err = RecursionSpec::parse("<0;1:1;2> junk").unwrap_err();
        assert_eq!(err, ParseError::TrailingInput { offset: 10 });
    }

    #[test]
    fn negative_parameters_need_relaxed_mode() {
        assert!(matches!(
            RecursionSpec::parse("<-1;-1:2;3>"),
            Err(ParseError::NegativeParameter { what: "shift", .. })
        ));
        let spec = RecursionSpec::parse_relaxed("<-1;-1:2;3>").unwrap();
        assert_eq!(spec.terms, vec![term(-1, &[-1]), term(2, &[3])]);
    }

    #[test]
    fn error_offsets_point_inside_input() {
        for text in ["", "<", "<0", "<0;", "<0;1", "<0;1:", "<0;1>[", "<0;1>[1,", "<0;1>[]"] {
            if let Err(err) = RecursionSpec::parse(text) {
                assert!(err.offset() <= text.len(), "{text:?} gave offset {}", err.offset());
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_term() -> impl Strategy<Value = RecursionTerm> {
            (0i64..50, proptest::collection::vec(1i64..50, 1..4))
                .prop_map(|(shift, offsets)| RecursionTerm { shift, offsets })
        }

        fn arb_spec() -> impl Strategy<Value = RecursionSpec> {
            (
                proptest::collection::vec(arb_term(), 1..4),
                proptest::collection::vec(0i64..50, 0..6),
            )
                .prop_map(|(terms, initial)| RecursionSpec { terms, initial })
        }

        proptest! {
            #[test]
            fn print_parse_round_trip(spec in arb_spec()) {
                let printed = spec.to_string();
                let reparsed = RecursionSpec::parse(&printed).unwrap();
                prop_assert_eq!(reparsed, spec);
            }

            #[test]
            fn parse_never_panics_and_offsets_stay_in_bounds(text in "\\PC*") {
                match RecursionSpec::parse(&text) {
                    Ok(spec) => {
                        let printed = spec.to_string();
                        prop_assert_eq!(RecursionSpec::parse(&printed).unwrap(), spec);
                    }
                    Err(err) => prop_assert!(err.offset() <= text.len()),
                }
            }
        }
    }
}
