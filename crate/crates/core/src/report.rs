//! Pass/fail reports. Each line names the identity it checks through a
//! short anchor tag; reports carry no timings so identical runs render
//! identical text.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub anchor: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, anchor: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { anchor: anchor.into(), name: name.into(), passed, detail: detail.into() });
    }

    /// Records `Ok(detail)` as a pass and `Err(reason)` as a failure.
    pub fn record(&mut self, anchor: &str, name: impl Into<String>, outcome: std::result::Result<String, String>) {
        match outcome {
            Ok(d) => self.push(anchor, name, true, d),
            Err(d) => self.push(anchor, name, false, d),
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} [{}] {}", c.anchor, c.name)?;
            } else {
                writeln!(f, "{tag} [{}] {}: {}", c.anchor, c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_counts() {
        let mut r = Report::new("demo");
        r.push("unit", "one is one", true, "");
        r.record("sum", "two plus two", Err("got 5".into()));
        assert!(!r.passed());
        assert_eq!(r.failures(), 1);
        assert_eq!(r.to_string(), "# demo\nPASS [unit] one is one\nFAIL [sum] two plus two: got 5\n");
    }
}
