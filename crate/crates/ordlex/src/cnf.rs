//! Ordinals below `w^w` in Cantor normal form.
//!
//! Every ordinal `a < w^w` has a unique normal form
//! `w^{n_0}*m_0 + w^{n_1}*m_1 + ... + w^{n_k}*m_k` with strictly decreasing
//! natural exponents `n_0 > n_1 > ... > n_k` and positive integer
//! coefficients. [`Cnf`] stores exactly that term list ([`Cnf::ZERO`] is the
//! empty list). Exponents are machine-sized; coefficients are
//! arbitrary-precision.
//!
//! The text syntax, used by [`Cnf::parse`] and [`Display`](std::fmt::Display):
//!
//! ```text
//! cnf  := "0" | term ("+" term)*
//! term := "w" ("^" nat)? ("*" pos)? | pos
//! ```
//!
//! `w` denotes the first infinite ordinal, `w^3*2` denotes `w^3 + w^3`, and a
//! bare positive integer is a finite ordinal. Whitespace between tokens is
//! ignored. Sums need not be in normal form: `w + w^2` parses and normalizes
//! to `w^2` by left-to-right addition.

use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An ordinal below `w^w` in Cantor normal form.
///
/// The representation is the list of `(exponent, coefficient)` pairs with
/// strictly decreasing exponents and positive coefficients; the ordinal `0`
/// is the empty list. Comparison ([`Ord`]) is the ordinal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cnf {
    terms: Vec<(usize, BigUint)>,
}

impl Cnf {
    /// The ordinal `0`.
    pub const ZERO: Cnf = Cnf { terms: Vec::new() };

    /// The finite ordinal `n`.
    pub fn from_nat(n: impl Into<BigUint>) -> Cnf {
        let n = n.into();
        if n.is_zero() {
            Cnf::ZERO
        } else {
            Cnf { terms: vec![(0, n)] }
        }
    }

    /// The ordinal `w^exp`.
    pub fn omega_power(exp: usize) -> Cnf {
        Cnf { terms: vec![(exp, BigUint::one())] }
    }

    /// Builds an ordinal as the left-to-right sum of arbitrary terms
    /// `w^exp * coeff`. Terms with coefficient `0` are ignored; the terms
    /// need not be sorted.
    pub fn from_terms<C: Into<BigUint>>(terms: impl IntoIterator<Item = (usize, C)>) -> Cnf {
        let mut acc = Cnf::ZERO;
        for (exp, coeff) in terms {
            let coeff = coeff.into();
            if !coeff.is_zero() {
                acc = acc.add(&Cnf { terms: vec![(exp, coeff)] });
            }
        }
        acc
    }

    /// The normal-form term list, exponents strictly decreasing.
    pub fn terms(&self) -> &[(usize, BigUint)] {
        &self.terms
    }

    /// Whether this is the ordinal `0`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree (leading exponent). The degree of `0` is undefined and
    /// reported as [`Error::ZeroDegree`].
    pub fn degree(&self) -> Result<usize> {
        self.terms.first().map(|(e, _)| *e).ok_or(Error::ZeroDegree)
    }

    /// Ordinal addition.
    ///
    /// Writing `self = A + w^{n_i}*m_i + R` where `n_i` is the last exponent
    /// of `self` that is at least the degree `d` of `other`, the sum is:
    /// `A + w^{n_i}*(m_i + m'_0) + R'` when `n_i = d` (coefficients merge),
    /// and otherwise all terms of `self` with exponent greater than `d`
    /// followed by all terms of `other` (the rest of `self` is absorbed).
    pub fn add(&self, other: &Cnf) -> Cnf {
        let Some((d, first_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(usize, BigUint)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e > d)
            .cloned()
            .collect();
        let mut first_coeff = first_coeff.clone();
        if let Some((e, c)) = self.terms.get(terms.len()) {
            if e == d {
                first_coeff += c;
            }
        }
        terms.push((*d, first_coeff));
        terms.extend(other.terms[1..].iter().cloned());
        Cnf { terms }
    }

    /// Ordinal multiplication by `w` on the right: `0 * w = 0` and otherwise
    /// `a * w = w^{degree(a) + 1}` (everything below the leading term is
    /// absorbed).
    pub fn mul_omega(&self) -> Cnf {
        match self.terms.first() {
            None => Cnf::ZERO,
            Some((d, _)) => Cnf::omega_power(d + 1),
        }
    }

    /// Parses the textual syntax described in the module documentation.
    pub fn parse(input: &str) -> Result<Cnf> {
        Parser { input: input.as_bytes(), pos: 0 }.parse()
    }
}

impl Ord for Cnf {
    /// The ordinal order: term lists compare lexicographically by
    /// `(exponent, coefficient)`, and a proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let by_term = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if by_term != Ordering::Equal {
                return by_term;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Cnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match exp {
                0 => write!(f, "{coeff}")?,
                1 => f.write_str("w")?,
                _ => write!(f, "w^{exp}")?,
            }
            if *exp > 0 && !coeff.is_one() {
                write!(f, "*{coeff}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Cnf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cnf> {
        Cnf::parse(s)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<Cnf> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            let zero_pos = self.pos;
            self.pos += 1;
            self.skip_ws();
            return if self.pos == self.input.len() {
                Ok(Cnf::ZERO)
            } else if self.input[zero_pos..].iter().take_while(|b| b.is_ascii_digit()).count() > 1 {
                // A multi-digit number with a leading zero such as "01".
                Err(self.err(zero_pos, "numbers must not have leading zeros"))
            } else {
                Err(self.err(self.pos, "\"0\" cannot be part of a sum"))
            };
        }
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let next = self.term()?;
                    acc = acc.add(&next);
                }
                Some(c) => {
                    return Err(self.err(self.pos, format!("expected '+' or end, found '{}'", c as char)))
                }
            }
        }
    }

    fn term(&mut self) -> Result<Cnf> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                self.skip_ws();
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    self.exponent()?
                } else {
                    1
                };
                self.skip_ws();
                let coeff = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    self.coefficient()?
                } else {
                    BigUint::one()
                };
                Ok(Cnf { terms: vec![(exp, coeff)] })
            }
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coefficient()?;
                Ok(Cnf { terms: vec![(0, coeff)] })
            }
            Some(c) => Err(self.err(self.pos, format!("expected a term, found '{}'", c as char))),
            None => Err(self.err(self.pos, "expected a term, found end of input")),
        }
    }

    fn digits(&mut self) -> Result<&[u8]> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.err(start, format!("expected a number, found '{}'", c as char)),
                None => self.err(start, "expected a number, found end of input"),
            });
        }
        let digits = &self.input[start..self.pos];
        if digits.len() > 1 && digits[0] == b'0' {
            return Err(self.err(start, "numbers must not have leading zeros"));
        }
        Ok(digits)
    }

    fn exponent(&mut self) -> Result<usize> {
        let start = self.pos;
        let digits = self.digits()?;
        std::str::from_utf8(digits)
            .unwrap()
            .parse::<usize>()
            .map_err(|_| self.err(start, "exponent is too large"))
    }

    fn coefficient(&mut self) -> Result<BigUint> {
        let start = self.pos;
        let digits = self.digits()?;
        let value = BigUint::parse_bytes(digits, 10).unwrap();
        if value.is_zero() {
            return Err(self.err(start, "coefficient must be positive"));
        }
        Ok(value)
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::CnfParse { pos, msg: msg.into() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cnf(s: &str) -> Cnf {
        Cnf::parse(s).unwrap()
    }

    #[test]
    fn parse_normal_forms() {
        assert_eq!(cnf("0"), Cnf::ZERO);
        assert_eq!(cnf("5"), Cnf::from_nat(5u32));
        assert_eq!(cnf("w"), Cnf::omega_power(1));
        assert_eq!(cnf("w^3*2 + w").terms(), &[(3, 2u32.into()), (1, 1u32.into())]);
        assert_eq!(
            cnf(" w^2*7 + w*3 + 11 ").terms(),
            &[(2, 7u32.into()), (1, 3u32.into()), (0, 11u32.into())]
        );
    }

    #[test]
    fn parse_normalizes_unsorted_sums() {
        // Left-to-right addition absorbs the smaller leading term.
        assert_eq!(cnf("w + w^2"), cnf("w^2"));
        assert_eq!(cnf("1 + w"), cnf("w"));
        assert_eq!(cnf("w + 1 + w"), cnf("w*2"));
        assert_eq!(cnf("w^2 + w^2"), cnf("w^2*2"));
        assert_eq!(cnf("w^0*4"), cnf("4"));
    }

    #[test]
    fn parse_rejects_bad_syntax() {
        for bad in ["", "w^", "w*", "w^*2", "+ w", "w +", "w^2*0", "0 + w", "w - 1", "w2", "01", "x"] {
            assert!(
                matches!(Cnf::parse(bad), Err(Error::CnfParse { .. })),
                "expected parse failure for {bad:?}"
            );
        }
        // Positions point at the offending character.
        match Cnf::parse("w^3*2 + w^") {
            Err(Error::CnfParse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("unexpected result {other:?}"),
        }
        match Cnf::parse("w^3*0") {
            Err(Error::CnfParse { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains("positive"));
            }
            other => panic!("unexpected result {other:?}"),
        }
    }

    #[test]
    fn format_canonical() {
        assert_eq!(Cnf::ZERO.to_string(), "0");
        assert_eq!(cnf("7").to_string(), "7");
        assert_eq!(cnf("w").to_string(), "w");
        assert_eq!(cnf("w*2").to_string(), "w*2");
        assert_eq!(cnf("w^1*1").to_string(), "w");
        assert_eq!(cnf("w^3*2+w").to_string(), "w^3*2 + w");
        assert_eq!(cnf("w^2+w*4+9").to_string(), "w^2 + w*4 + 9");
    }

    #[test]
    fn addition_cases() {
        // Merge at equal exponent: the coefficients add.
        assert_eq!(cnf("w^2 + w*2").add(&cnf("w*3 + 1")), cnf("w^2 + w*5 + 1"));
        // Absorption: a strictly larger degree on the right erases the tail.
        assert_eq!(cnf("w + 3").add(&cnf("w^2")), cnf("w^2"));
        assert_eq!(cnf("w^3 + w").add(&cnf("w^2*2 + 1")), cnf("w^3 + w^2*2 + 1"));
        // Identity on either side.
        assert_eq!(cnf("w*5").add(&Cnf::ZERO), cnf("w*5"));
        assert_eq!(Cnf::ZERO.add(&cnf("w*5")), cnf("w*5"));
        // Finite arithmetic embeds.
        assert_eq!(cnf("3").add(&cnf("4")), cnf("7"));
    }

    #[test]
    fn left_absorption() {
        for m in 0..4usize {
            for n in (m + 1)..5usize {
                let lhs = Cnf::omega_power(m).add(&Cnf::omega_power(n));
                assert_eq!(lhs, Cnf::omega_power(n), "w^{m} + w^{n}");
            }
        }
    }

    #[test]
    fn mul_omega_cases() {
        assert_eq!(Cnf::ZERO.mul_omega(), Cnf::ZERO);
        assert_eq!(cnf("5").mul_omega(), cnf("w"));
        assert_eq!(cnf("w^3*2 + w").mul_omega(), cnf("w^4"));
        assert_eq!(cnf("w^2*9 + w*3 + 4").mul_omega(), cnf("w^3"));
    }

    #[test]
    fn comparison_cases() {
        assert!(cnf("0") < cnf("1"));
        assert!(cnf("41") < cnf("42"));
        assert!(cnf("1000000") < cnf("w"));
        assert!(cnf("w") < cnf("w + 1"));
        assert!(cnf("w + 1") < cnf("w*2"));
        assert!(cnf("w*2") < cnf("w^2"));
        assert!(cnf("w^2 + w") < cnf("w^2 + w + 1"));
        assert!(cnf("w^3*2 + w") < cnf("w^3*3"));
        assert_eq!(cnf("w^3*2 + w").cmp(&cnf("w^3*2 + w")), Ordering::Equal);
    }

    #[test]
    fn degree_reports() {
        assert_eq!(cnf("w^3*2 + w").degree().unwrap(), 3);
        assert_eq!(cnf("17").degree().unwrap(), 0);
        assert!(matches!(Cnf::ZERO.degree(), Err(Error::ZeroDegree)));
    }

    #[test]
    fn big_coefficients_round_trip() {
        let big = (BigUint::one() << 40u32) + BigUint::from(123u32);
        let a = Cnf::from_terms([(2usize, big.clone()), (0usize, big.clone())]);
        let text = a.to_string();
        assert_eq!(text, format!("w^2*{big} + {big}"));
        assert_eq!(cnf(&text), a);
    }

    fn arb_cnf() -> impl Strategy<Value = Cnf> {
        proptest::collection::vec((0usize..7, 1u64..200), 0..6)
            .prop_map(|terms| Cnf::from_terms(terms.into_iter().map(|(e, c)| (e, BigUint::from(c)))))
    }

    proptest! {
        #[test]
        fn prop_normal_form_invariant(a in arb_cnf()) {
            let terms = a.terms();
            for pair in terms.windows(2) {
                prop_assert!(pair[0].0 > pair[1].0);
            }
            for (_, coeff) in terms {
                prop_assert!(!coeff.is_zero());
            }
        }

        #[test]
        fn prop_parse_format_round_trip(a in arb_cnf()) {
            prop_assert_eq!(Cnf::parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn prop_add_associative(a in arb_cnf(), b in arb_cnf(), c in arb_cnf()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn prop_add_monotone_in_second_argument(a in arb_cnf(), b in arb_cnf(), c in arb_cnf()) {
            let (lo, hi) = if b <= c { (&b, &c) } else { (&c, &b) };
            prop_assert!(a.add(lo) <= a.add(hi));
        }

        #[test]
        fn prop_add_weakly_increasing(a in arb_cnf(), b in arb_cnf()) {
            prop_assert!(a.add(&b) >= b);
            if !b.is_zero() {
                prop_assert!(a.add(&b) > a.clone());
            }
        }

        #[test]
        fn prop_degree_of_sum_is_max(a in arb_cnf(), b in arb_cnf()) {
            if let (Ok(da), Ok(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!(a.add(&b).degree().unwrap(), da.max(db));
            }
        }

        #[test]
        fn prop_mul_omega_only_sees_degree(a in arb_cnf(), b in arb_cnf()) {
            if let (Ok(da), Ok(db)) = (a.degree(), b.degree()) {
                if da == db {
                    prop_assert_eq!(a.mul_omega(), b.mul_omega());
                }
            }
        }

        #[test]
        fn prop_total_order(a in arb_cnf(), b in arb_cnf()) {
            match a.cmp(&b) {
                Ordering::Equal => prop_assert_eq!(&a, &b),
                Ordering::Less => prop_assert_eq!(b.cmp(&a), Ordering::Greater),
                Ordering::Greater => prop_assert_eq!(b.cmp(&a), Ordering::Less),
            }
        }
    }
}
