use std::fmt;

/// A failed law instance: the law tag and the ids that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LAW {} FAIL witness=({})", self.law, self.witness.join(","))
    }
}

/// Outcome of an exhaustive law check.
///
/// Violations are kept sorted by `(law, witness)` so identical inputs give
/// identical reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub checked: usize,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
        self.violations.sort();
    }

    /// Laws that failed at least once, deduplicated.
    pub fn failed_laws(&self) -> Vec<&str> {
        let mut laws: Vec<&str> = self.violations.iter().map(|v| v.law.as_str()).collect();
        laws.dedup();
        laws
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        write!(f, "SUMMARY ok={} checked={}", self.ok(), self.checked)
    }
}

/// Accumulates equation outcomes inside a check.
#[derive(Default)]
pub(crate) struct Tally {
    pub violations: Vec<Violation>,
    pub checked: usize,
}

impl Tally {
    pub fn check<F>(&mut self, holds: bool, law: &str, witness: F)
    where
        F: FnOnce() -> Vec<String>,
    {
        self.checked += 1;
        if !holds {
            self.violations.push(Violation { law: law.to_string(), witness: witness() });
        }
    }

    pub fn absorb(&mut self, other: Tally) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
    }

    pub fn finish(mut self) -> CheckReport {
        self.violations.sort();
        self.violations.dedup();
        CheckReport { violations: self.violations, checked: self.checked }
    }
}

/// Join per-chunk tallies in order.
pub(crate) fn collect(tallies: Vec<Tally>) -> CheckReport {
    let mut all = Tally::default();
    for t in tallies {
        all.absorb(t);
    }
    all.finish()
}

pub(crate) fn w<I, S>(items: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}
