//! Named fixtures: the built-in set, overridden by `*.lie` files in the
//! directory named by `G2FORGE_FIXTURES`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::fixture::{Fixture, FixtureError};

pub const ENV_VAR: &str = "G2FORGE_FIXTURES";

const BUILT_IN: [(&str, &str); 3] = [
    ("h", include_str!("../fixtures/h.lie")),
    ("abelian", include_str!("../fixtures/abelian.lie")),
    ("n52", include_str!("../fixtures/n52.lie")),
];

#[derive(Clone, Debug)]
pub struct Registry {
    fixtures: BTreeMap<String, Fixture>,
}

impl Registry {
    pub fn built_in() -> Self {
        let fixtures = BUILT_IN
            .iter()
            .map(|(name, text)| (name.to_string(), Fixture::parse(name, text).expect("built-in fixture")))
            .collect();
        Self { fixtures }
    }

    /// Built-ins plus every `*.lie` file in `dir`; files win on name clashes.
    pub fn with_dir(dir: &Path) -> Result<Self, (PathBuf, FixtureError)> {
        let mut reg = Self::built_in();
        let entries = std::fs::read_dir(dir).map_err(|e| (dir.to_path_buf(), FixtureError::Io(e)))?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "lie"))
            .collect();
        paths.sort();
        for p in paths {
            let f = Fixture::load(&p).map_err(|e| (p.clone(), e))?;
            reg.fixtures.insert(f.name.clone(), f);
        }
        Ok(reg)
    }

    pub fn from_env() -> Result<Self, (PathBuf, FixtureError)> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Self::with_dir(Path::new(&dir)),
            _ => Ok(Self::built_in()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.fixtures.keys().map(String::as_str)
    }

    /// An existing file path is loaded directly; otherwise the name, with any
    /// `.lie` suffix removed, is looked up.
    pub fn resolve(&self, arg: &str) -> Result<Fixture, String> {
        let path = Path::new(arg);
        if path.is_file() {
            return Fixture::load(path).map_err(|e| format!("{arg}: {e}"));
        }
        let name = arg.strip_suffix(".lie").unwrap_or(arg);
        let name = Path::new(name).file_name().and_then(|n| n.to_str()).unwrap_or(name);
        self.get(name).cloned().ok_or_else(|| {
            let known: Vec<&str> = self.names().collect();
            format!("no file or fixture named {arg:?} (known: {})", known.join(", "))
        })
    }
}
