use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed instance of a law, localized to the indices involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    /// Arrow or object indices (meaning depends on the law).
    pub indices: Vec<usize>,
    pub description: String,
}

/// Outcome of an exhaustive law check.
///
/// A report passes exactly when it carries no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport {
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, law: &str, indices: Vec<usize>, description: impl Into<String>) {
        self.violations.push(Violation {
            law: law.to_string(),
            indices,
            description: description.into(),
        });
        self.passed = false;
    }

    /// Folds another report in, prefixing its law names with `scope`.
    pub fn absorb(&mut self, scope: &str, other: LawReport) {
        for mut v in other.violations {
            v.law = format!("{scope}/{}", v.law);
            self.violations.push(v);
            self.passed = false;
        }
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations
            .iter()
            .any(|v| v.law == law || v.law.ends_with(&format!("/{law}")))
    }

    pub fn violations_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations
            .iter()
            .filter(move |v| v.law == law || v.law.ends_with(&format!("/{law}")))
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return writeln!(f, "passed: all laws hold");
        }
        writeln!(f, "failed: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  [{}] at {:?}: {}", v.law, v.indices, v.description)?;
        }
        Ok(())
    }
}
