use serde::Serialize;

/// One verified statement. `witness` carries the offending normal form (or a
/// short numeric summary) and is empty on success.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn new(id: impl Into<String>, statement: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        let witness = if pass { String::new() } else { witness.into() };
        Check {
            id: id.into(),
            statement: statement.into(),
            pass,
            witness,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct CheckList {
    pub checks: Vec<Check>,
    /// Informational mismatches between printed formulas and derived values.
    pub notes: Vec<String>,
}

impl CheckList {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
