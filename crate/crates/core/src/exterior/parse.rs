//! Textual form syntax: a signed sum of `c*eI` terms such as
//! `2*e12 + 2*e34 - 4*e56`.
//!
//! Coefficients are integers, decimals (`0.5`) or rationals (`1/3`); the `*`
//! is optional and a missing coefficient means 1. `eI` lists generator
//! indices 1..7 in any order, e.g. `e21` is read as `-e12`. A bare number is
//! a degree-0 term. The literal `0` denotes the zero form.

use alloc::vec::Vec;

use super::form::KForm;
use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::text::Cursor;
use crate::DIM;

/// Parses a form, inferring the degree from its terms (degree 0 if the
/// input denotes zero).
pub fn parse_form<S: Scalar>(text: &str) -> Result<KForm<S>> {
    parse_impl(text, None)
}

/// Parses a form that must have the given degree; `0` yields the zero form
/// of that degree.
pub fn parse_form_of_degree<S: Scalar>(text: &str, degree: usize) -> Result<KForm<S>> {
    parse_impl(text, Some(degree))
}

struct Term {
    pos: usize,
    coeff: Rational,
    indices: Option<Vec<usize>>,
}

fn parse_impl<S: Scalar>(text: &str, degree: Option<usize>) -> Result<KForm<S>> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    if cur.at_end() {
        return Err(cur.error("empty form"));
    }
    let mut first = true;
    while !cur.at_end() {
        let negative = match cur.sign() {
            Some(neg) => neg,
            None if first => false,
            None => return Err(cur.error("expected '+' or '-'")),
        };
        first = false;
        let mut term = parse_term(&mut cur)?;
        if negative {
            term.coeff = -term.coeff;
        }
        terms.push(term);
    }

    let mut inferred = degree;
    for t in &terms {
        let d = match &t.indices {
            Some(ix) => ix.len(),
            None if Scalar::is_zero(&t.coeff) => continue,
            None => 0,
        };
        match inferred {
            None => inferred = Some(d),
            Some(expected) if expected != d => {
                return Err(Error::Parse {
                    pos: t.pos,
                    msg: alloc::format!("term of degree {d} in a form of degree {expected}"),
                })
            }
            Some(_) => {}
        }
    }
    let degree = inferred.unwrap_or(0);
    if degree > DIM {
        return Err(Error::Degree { op: "parse", degree });
    }

    let mut form = KForm::zero(degree);
    for t in terms {
        let c = S::from_rational(&t.coeff);
        match t.indices {
            Some(ix) => match MultiIndex::canonicalize(&ix) {
                Some((m, sign)) => form.accumulate(m, if sign > 0 { c } else { -c }),
                None => {
                    return Err(Error::Parse { pos: t.pos, msg: "repeated generator index".into() })
                }
            },
            None if degree == 0 => form.accumulate(MultiIndex::EMPTY, c),
            None => {}
        }
    }
    Ok(form)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Term> {
    cur.skip_ws();
    let pos = cur.pos();
    let mut coeff = None;
    if matches!(cur.peek(), Some(b'0'..=b'9')) {
        coeff = Some(cur.number()?);
        cur.eat(b'*');
    }
    cur.skip_ws();
    if cur.peek() == Some(b'e') {
        cur.set_pos(cur.pos() + 1);
        let start = cur.pos();
        if !matches!(cur.peek(), Some(b'0'..=b'9')) {
            return Err(cur.error("expected generator indices after 'e'"));
        }
        let digits = cur.digits();
        let mut indices = Vec::with_capacity(digits.len());
        for (k, b) in digits.bytes().enumerate() {
            let i = (b - b'0') as usize;
            if !(1..=DIM).contains(&i) {
                return Err(Error::Parse { pos: start + k, msg: alloc::format!("generator index {i} outside 1..7") });
            }
            indices.push(i - 1);
        }
        return Ok(Term { pos, coeff: coeff.unwrap_or_else(<Rational as Scalar>::one), indices: Some(indices) });
    }
    match coeff {
        Some(c) => Ok(Term { pos, coeff: c, indices: None }),
        None => Err(cur.error("expected a coefficient or a monomial 'eI'")),
    }
}
