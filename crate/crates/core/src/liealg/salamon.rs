//! Extended Salamon notation.
//!
//! ```text
//! algebra := '(' entry (',' entry)* ')'
//! entry   := '0' | ['+'|'-'] term (('+'|'-') term)*
//! term    := [coeff '*'] ['e'] digit digit
//! coeff   := integer | integer '/' integer | integer '.' digits
//! ```
//!
//! Entry `k` lists `de^k`; a pair `ij` stands for `e^i ∧ e^j`. The number
//! of entries is the dimension, so `(0,0,0,12,13)` is 5-dimensional and
//! `(0,0,-37,47,2*14+57,-2*24+67,0)` has `de^5 = 2e^{14} + e^{57}`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{LieAlgebra, StructureEquationSet};
use crate::error::{Error, Result};
use crate::exterior::{KForm, MultiIndex};
use crate::scalar::{Rational, Scalar};
use crate::text::Cursor;
use crate::DIM;

/// Parses the notation into structure equations without checking Jacobi.
pub fn parse_structure_equations<S: Scalar>(text: &str) -> Result<StructureEquationSet<S>> {
    let mut cur = Cursor::new(text);
    cur.expect(b'(')?;
    let mut raw: Vec<Vec<(usize, Rational, usize, usize)>> = Vec::new();
    loop {
        raw.push(parse_entry(&mut cur)?);
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b')')?;
        break;
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after ')'"));
    }
    let dim = raw.len();
    if dim > DIM {
        return Err(Error::Parse { pos: 0, msg: alloc::format!("{dim} entries; at most {DIM} supported") });
    }
    let mut differentials = Vec::with_capacity(dim);
    for entry in raw {
        let mut f = KForm::zero(2);
        for (pos, c, i, j) in entry {
            if i > dim || j > dim {
                return Err(Error::Parse { pos, msg: alloc::format!("index exceeds dimension {dim}") });
            }
            let (m, sign) = MultiIndex::canonicalize(&[i - 1, j - 1])
                .ok_or(Error::Parse { pos, msg: "repeated index in pair".into() })?;
            let c = S::from_rational(&c);
            f.accumulate(m, if sign > 0 { c } else { -c });
        }
        differentials.push(f);
    }
    Ok(StructureEquationSet { differentials })
}

/// Parses the notation and validates the resulting brackets.
pub fn parse_salamon<S: Scalar>(text: &str) -> Result<LieAlgebra<S>> {
    let eqs = parse_structure_equations(text)?;
    LieAlgebra::from_structure_equations(&eqs)
}

fn parse_entry(cur: &mut Cursor<'_>) -> Result<Vec<(usize, Rational, usize, usize)>> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if matches!(cur.peek(), Some(b',') | Some(b')') | None) {
            if first {
                return Err(cur.error("empty entry"));
            }
            break;
        }
        let negative = match cur.sign() {
            Some(n) => n,
            None if first => false,
            None => return Err(cur.error("expected '+', '-', ',' or ')'")),
        };
        cur.skip_ws();
        let pos = cur.pos();
        let start = cur.pos();
        let digits = cur.digits();
        let next = cur.peek_past_ws();
        let (coeff, pair_pos, pair) = if matches!(next, Some(b'*') | Some(b'/') | Some(b'.')) {
            cur.set_pos(start);
            let c = cur.number()?;
            cur.expect(b'*')?;
            cur.skip_ws();
            if cur.peek() == Some(b'e') {
                cur.set_pos(cur.pos() + 1);
            }
            let p = cur.pos();
            (c, p, cur.digits())
        } else if digits.is_empty() && cur.peek() == Some(b'e') {
            cur.set_pos(cur.pos() + 1);
            let p = cur.pos();
            (<Rational as Scalar>::one(), p, cur.digits())
        } else {
            (<Rational as Scalar>::one(), start, digits)
        };
        if pair == "0" && first && !negative {
            cur.skip_ws();
            if matches!(cur.peek(), Some(b',') | Some(b')')) {
                return Ok(terms);
            }
            return Err(cur.error("'0' must stand alone"));
        }
        if pair.len() != 2 {
            return Err(Error::Parse { pos: pair_pos, msg: alloc::format!("expected an index pair, found '{pair}'") });
        }
        let b = pair.as_bytes();
        let (i, j) = ((b[0] - b'0') as usize, (b[1] - b'0') as usize);
        if i == 0 || j == 0 {
            return Err(Error::Parse { pos: pair_pos, msg: "indices start at 1".into() });
        }
        let coeff = if negative { -coeff } else { coeff };
        terms.push((pos, coeff, i, j));
        first = false;
    }
    Ok(terms)
}

pub(super) fn format_salamon<S: Scalar>(eqs: &StructureEquationSet<S>) -> String {
    let mut out = String::from("(");
    for (k, f) in eqs.differentials.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        if f.is_zero() {
            out.push('0');
            continue;
        }
        for (n, (m, c)) in f.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if negative {
                out.push('-');
            } else if n > 0 {
                out.push('+');
            }
            if magnitude != S::one() {
                let _ = write!(out, "{magnitude}*");
            }
            for i in m.iter() {
                let _ = write!(out, "{}", i + 1);
            }
        }
    }
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;

    type Q = Rational;

    #[test]
    fn parses_nilpotent_example() {
        let eqs: StructureEquationSet<Q> = parse_structure_equations("(0,0,0,12,13)").unwrap();
        assert_eq!(eqs.dim(), 5);
        assert_eq!(eqs.differentials[3], parse_form("e12").unwrap());
        assert_eq!(eqs.differentials[4], parse_form("e13").unwrap());
        assert!(eqs.differentials[0].is_zero());
    }

    #[test]
    fn parses_coefficients_and_signs() {
        let eqs: StructureEquationSet<Q> =
            parse_structure_equations("(0, 0, -37, 47, 2*14+57, -2*24 + 67, 0)").unwrap();
        assert_eq!(eqs.differentials[4], parse_form("2*e14 + e57").unwrap());
        assert_eq!(eqs.differentials[5], parse_form("-2*e24 + e67").unwrap());
        assert_eq!(eqs.differentials[2], parse_form("-e37").unwrap());
    }

    #[test]
    fn rational_coefficients_and_reversed_pairs() {
        let eqs: StructureEquationSet<Q> = parse_structure_equations("(0,0,1/2*21)").unwrap();
        assert_eq!(eqs.differentials[2], parse_form("-1/2*e12").unwrap());
        assert_eq!(eqs.to_salamon(), "(0,0,-1/2*12)");
    }

    #[test]
    fn print_parse_round_trip() {
        for text in ["(0,0,0,12,13)", "(0,0,-37,47,2*14+57,-2*24+67,0)", "(0,0,0,0,0,0,0)", "(0,-13,12)"] {
            let eqs: StructureEquationSet<Q> = parse_structure_equations(text).unwrap();
            assert_eq!(eqs.to_salamon(), text);
            let again: StructureEquationSet<Q> = parse_structure_equations(&eqs.to_salamon()).unwrap();
            assert_eq!(again, eqs);
        }
    }

    #[test]
    fn syntax_errors() {
        let e = parse_structure_equations::<Q>("(0,0,123)").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 5, .. }), "{e:?}");
        assert!(matches!(parse_structure_equations::<Q>("(0,0,14)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_structure_equations::<Q>("0,0"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_structure_equations::<Q>("(0,,0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_structure_equations::<Q>("(0,0,11)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_structure_equations::<Q>("(0,0,12) x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn jacobi_violation_surfaces() {
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1
        let err = parse_salamon::<Q>("(-13-23,0,-12)").unwrap_err();
        assert!(matches!(err, Error::NotALieAlgebra { .. }), "{err:?}");
    }
}
