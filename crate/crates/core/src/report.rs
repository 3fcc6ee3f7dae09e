//! Verification reports shared by every checker.
//!
//! A report counts the identities it evaluated and records each mismatch with both
//! sides rendered as strings. Failures are data: checkers never error on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub condition: String,
    pub indices: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub params: BTreeMap<String, String>,
    pub window: Value,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            theorem: None,
            params: BTreeMap::new(),
            window: Value::Null,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_window(mut self, window: Value) -> Self {
        self.window = window;
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one evaluated identity.
    pub fn check<T: PartialEq + fmt::Display>(
        &mut self,
        condition: &str,
        indices: &[String],
        lhs: &T,
        rhs: &T,
    ) -> bool {
        self.checked += 1;
        let ok = lhs == rhs;
        if !ok {
            self.failures.push(Failure {
                condition: condition.to_string(),
                indices: indices.to_vec(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }

    pub fn fail(&mut self, condition: &str, indices: &[String], lhs: String, rhs: String) {
        self.checked += 1;
        self.failures.push(Failure {
            condition: condition.to_string(),
            indices: indices.to_vec(),
            lhs,
            rhs,
        });
    }

    /// Folds in the outcome of a sub-check, keeping failure order.
    pub fn absorb(&mut self, outcome: Outcome) {
        self.checked += outcome.checked;
        self.failures.extend(outcome.failures);
    }

    /// Merges another report's counts and failures (parameters are kept from `self`).
    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn failures_for<'a>(&'a self, condition: &'a str) -> impl Iterator<Item = &'a Failure> {
        self.failures.iter().filter(move |f| f.condition == condition)
    }
}

/// Partial result of a parallel sub-check; merged into a [`Report`] in input order.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Outcome {
    pub fn check<T: PartialEq + fmt::Display>(
        &mut self,
        condition: &str,
        indices: &[String],
        lhs: &T,
        rhs: &T,
    ) -> bool {
        self.checked += 1;
        let ok = lhs == rhs;
        if !ok {
            self.failures.push(Failure {
                condition: condition.to_string(),
                indices: indices.to_vec(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} checked, {} failures",
            self.suite,
            self.checked,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(5) {
            write!(
                f,
                "\n  [{}] ({}) lhs = {} ; rhs = {}",
                fail.condition,
                fail.indices.join(", "),
                fail.lhs,
                fail.rhs
            )?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n  ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

/// Runs `f` on every item in parallel and concatenates the outcomes in input order.
pub fn par_outcome<T: Sync>(items: &[T], f: impl Fn(&T, &mut Outcome) + Sync + Send) -> Outcome {
    use rayon::prelude::*;
    let parts: Vec<Outcome> = items
        .par_iter()
        .map(|item| {
            let mut o = Outcome::default();
            f(item, &mut o);
            o
        })
        .collect();
    let mut out = Outcome::default();
    for p in parts {
        out.checked += p.checked;
        out.failures.extend(p.failures);
    }
    out
}

/// All ordered pairs of the window.
pub fn pairs<E: Clone>(window: &[E]) -> Vec<(E, E)> {
    window
        .iter()
        .flat_map(|n| window.iter().map(move |m| (n.clone(), m.clone())))
        .collect()
}

/// All ordered triples of the window.
pub fn triples<E: Clone>(window: &[E]) -> Vec<(E, E, E)> {
    window
        .iter()
        .flat_map(|n| {
            window
                .iter()
                .flat_map(move |m| window.iter().map(move |l| (n.clone(), m.clone(), l.clone())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_failures_with_both_sides() {
        let mut r = Report::new("demo").with_param("s", 1);
        assert!(r.check("eq", &["1".into()], &2, &2));
        assert!(!r.check("eq", &["2".into()], &2, &3));
        assert_eq!(r.checked, 2);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].lhs, "2");
        assert_eq!(r.failures[0].rhs, "3");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["params"]["s"], "1");
        assert!(json.get("theorem").is_none());
    }
}
