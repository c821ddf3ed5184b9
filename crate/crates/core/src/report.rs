use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed law, with the cells that witness the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    /// Item number of the unpacked operadic-category conditions, when the
    /// violated rule is one of them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item: Option<u8>,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.into(),
            item: None,
            witness: witness.into(),
        });
    }

    pub fn push_item(&mut self, item: u8, rule: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.into(),
            item: Some(item),
            witness: witness.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Distinct item numbers cited, ascending.
    pub fn items(&self) -> Vec<u8> {
        let mut items: Vec<u8> = self.violations.iter().filter_map(|v| v.item).collect();
        items.sort_unstable();
        items.dedup();
        items
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.violations
            .iter()
            .any(|v| v.rule.contains(needle) || v.witness.contains(needle))
    }

    /// `Ok` when valid, otherwise [`crate::Error::Invalid`] carrying the report.
    pub fn into_result(self, kind: &'static str) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid { kind, report: self })
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            match v.item {
                Some(item) => write!(f, "({item}) {}: {}", v.rule, v.witness)?,
                None => write!(f, "{}: {}", v.rule, v.witness)?,
            }
        }
        Ok(())
    }
}
