//! Built-in prime lattices plus user entries loaded from a directory.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::{FinitePrimePoset, SpecError};

/// How a catalog entry is usually decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeHint {
    Plain,
    /// Components may share the cone point (stable module categories).
    Punctured,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub poset: Arc<FinitePrimePoset>,
    pub mode_hint: ModeHint,
}

fn entry(
    name: &str,
    description: &str,
    elements: &[&str],
    relations: &[(&str, &str)],
    cone: Option<&str>,
    mode_hint: ModeHint,
) -> CatalogEntry {
    let poset = FinitePrimePoset::new(elements, relations, cone)
        .unwrap_or_else(|e| panic!("built-in catalog entry {name} is invalid: {e}"));
    CatalogEntry {
        name: name.to_owned(),
        description: description.to_owned(),
        poset: Arc::new(poset),
        mode_hint,
    }
}

fn builtin_entries() -> Vec<CatalogEntry> {
    vec![
        entry(
            "A0",
            "bihomogeneous primes of Ext over A(0): (0) < (h0)",
            &["(0)", "(h0)"],
            &[("(0)", "(h0)")],
            Some("(h0)"),
            ModeHint::Punctured,
        ),
        entry(
            "A1",
            "bihomogeneous primes of Ext over A(1): (h1) < p0, p1 < m",
            &["(h1)", "p0", "p1", "m"],
            &[("(h1)", "p0"), ("(h1)", "p1"), ("p0", "m"), ("p1", "m")],
            Some("m"),
            ModeHint::Punctured,
        ),
        entry(
            "artinian3",
            "three maximal ideals, no containments (Artinian ring)",
            &["m1", "m2", "m3"],
            &[],
            None,
            ModeHint::Plain,
        ),
        entry(
            "pid-fan",
            "generic point (0) under the maximal ideals (2), (3), (5) (PID)",
            &["(0)", "(2)", "(3)", "(5)"],
            &[("(0)", "(2)"), ("(0)", "(3)"), ("(0)", "(5)")],
            None,
            ModeHint::Plain,
        ),
    ]
}

/// Looks up a built-in entry by name.
pub fn builtin(name: &str) -> Option<CatalogEntry> {
    builtin_entries().into_iter().find(|e| e.name == name)
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog { entries: builtin_entries().into_iter().map(|e| (e.name.clone(), e)).collect() }
    }

    /// Adds every `*.json` poset in `dir`, named by file stem. User entries
    /// replace built-ins of the same name. An entry with a cone point gets the
    /// punctured hint.
    pub fn load_dir(&mut self, dir: &Path) -> Result<(), SpecError> {
        let read = std::fs::read_dir(dir)
            .map_err(|e| SpecError::Format(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<_> = read
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| SpecError::Format(format!("{}: {e}", path.display())))?;
            let poset = FinitePrimePoset::from_json_str(&text)?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let mode_hint =
                if poset.cone_point().is_some() { ModeHint::Punctured } else { ModeHint::Plain };
            self.entries.insert(
                name.clone(),
                CatalogEntry {
                    name,
                    description: format!("user entry from {}", path.display()),
                    poset: Arc::new(poset),
                    mode_hint,
                },
            );
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, SpecError> {
        self.entries.get(name).ok_or_else(|| SpecError::UnknownModel(name.to_owned()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        let cat = Catalog::builtin();
        let names: Vec<&str> = cat.entries().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["A0", "A1", "artinian3", "pid-fan"]);
        for e in cat.entries() {
            if let Some(c) = e.poset.cone_point() {
                assert!(e.poset.is_greatest(c));
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(Catalog::builtin().get("A7").unwrap_err().name(), "UnknownModel");
    }

    #[test]
    fn user_directory_entries() {
        let dir = std::env::temp_dir().join(format!("thickset-catalog-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("chain3.json"),
            r#"{"elements": ["a","b","c"], "relations": [["a","b"],["b","c"]], "cone_point": "c"}"#,
        )
        .unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let mut cat = Catalog::builtin();
        cat.load_dir(&dir).unwrap();
        let e = cat.get("chain3").unwrap();
        assert_eq!(e.poset.len(), 3);
        assert_eq!(e.mode_hint, ModeHint::Punctured);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
