//! The `.lie` fixture format.
//!
//! ```text
//! # comment
//! 7
//! (0,0,-37,47,2*14+57,-2*24+67,0)
//! phi: e127 + e347 + e567 + e135 - e146 - e236 - e245
//! note: almost nilpotent
//! ```
//!
//! Line one is the dimension, line two the structure equations in Salamon
//! notation. `phi:` and `note:` lines are optional. Blank lines and `#`
//! comments are ignored.

use std::fmt;
use std::path::Path;

use g2forge_core::exterior::{parse_form_of_degree, KForm};
use g2forge_core::liealg::{parse_salamon, parse_structure_equations, LieAlgebra, StructureEquationSet};
use g2forge_core::{Rational, Scalar};

#[derive(Debug)]
pub enum FixtureError {
    Io(std::io::Error),
    Format { line: usize, msg: String },
    Algebra(g2forge_core::Error),
    Phi(g2forge_core::Error),
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "{e}"),
            Self::Format { line, msg } => write!(f, "line {line}: {msg}"),
            Self::Algebra(e) => write!(f, "algebra: {e}"),
            Self::Phi(e) => write!(f, "phi: {e}"),
        }
    }
}

impl std::error::Error for FixtureError {}

/// A named algebra, optionally with a 3-form, validated at load time.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub salamon: String,
    pub phi_text: Option<String>,
    pub notes: Vec<String>,
    algebra: LieAlgebra<Rational>,
    phi: Option<KForm<Rational>>,
}

impl Fixture {
    pub fn new(name: &str, salamon: &str, phi: Option<&str>, notes: Vec<String>) -> Result<Self, FixtureError> {
        let algebra = parse_salamon::<Rational>(salamon).map_err(FixtureError::Algebra)?;
        let phi_form = phi.map(|p| parse_form_of_degree::<Rational>(p, 3)).transpose().map_err(FixtureError::Phi)?;
        Ok(Self {
            name: name.to_string(),
            salamon: salamon.trim().to_string(),
            phi_text: phi.map(|p| p.trim().to_string()),
            notes,
            algebra,
            phi: phi_form,
        })
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, FixtureError> {
        let mut content = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (n, dim_line) = content.next().ok_or(FixtureError::Format { line: 1, msg: "missing dimension".into() })?;
        let dim: usize =
            dim_line.parse().map_err(|_| FixtureError::Format { line: n, msg: format!("bad dimension {dim_line:?}") })?;
        let (n, salamon) =
            content.next().ok_or(FixtureError::Format { line: n + 1, msg: "missing structure equations".into() })?;
        let eqs: StructureEquationSet<Rational> = parse_structure_equations(salamon).map_err(FixtureError::Algebra)?;
        if eqs.dim() != dim {
            return Err(FixtureError::Format {
                line: n,
                msg: format!("{} equations for declared dimension {dim}", eqs.dim()),
            });
        }
        let mut phi = None;
        let mut notes = Vec::new();
        for (n, line) in content {
            if let Some(p) = line.strip_prefix("phi:") {
                if phi.replace(p.trim()).is_some() {
                    return Err(FixtureError::Format { line: n, msg: "duplicate phi".into() });
                }
            } else if let Some(note) = line.strip_prefix("note:") {
                notes.push(note.trim().to_string());
            } else {
                return Err(FixtureError::Format { line: n, msg: format!("unexpected {line:?}") });
            }
        }
        Self::new(name, salamon, phi, notes)
    }

    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let text = std::fs::read_to_string(path).map_err(FixtureError::Io)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Self::parse(&name, &text)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra_exact(&self) -> &LieAlgebra<Rational> {
        &self.algebra
    }

    pub fn phi_exact(&self) -> Option<&KForm<Rational>> {
        self.phi.as_ref()
    }

    pub fn algebra<S: Scalar>(&self) -> LieAlgebra<S> {
        parse_salamon(&self.salamon).expect("validated at load")
    }

    pub fn phi<S: Scalar>(&self) -> Option<KForm<S>> {
        self.phi_text.as_deref().map(|p| parse_form_of_degree(p, 3).expect("validated at load"))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim())?;
        writeln!(f, "{}", self.salamon)?;
        if let Some(p) = &self.phi_text {
            writeln!(f, "phi: {p}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# c\n7\n(0,0,-37,47,2*14+57,-2*24+67,0)\nphi: e127 + e347\n\nnote: a\nnote: b # trailing\n";
        let f = Fixture::parse("h", text).unwrap();
        assert_eq!(f.notes, ["a", "b"]);
        assert_eq!(Fixture::parse("h", &f.to_string()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(Fixture::parse("x", ""), Err(FixtureError::Format { line: 1, .. })));
        assert!(matches!(Fixture::parse("x", "6\n(0,0,0,12,13)"), Err(FixtureError::Format { line: 2, .. })));
        assert!(matches!(Fixture::parse("x", "5\n(0,0,0,12,34)"), Err(FixtureError::Algebra(_))));
        assert!(matches!(Fixture::parse("x", "7\n(0,0,0,0,0,0,0)\nphi: e12"), Err(FixtureError::Phi(_))));
        assert!(matches!(Fixture::parse("x", "7\n(0,0,0,0,0,0,0)\nfoo"), Err(FixtureError::Format { line: 3, .. })));
    }
}
