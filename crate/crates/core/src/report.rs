//! Check reports: per-law instance counts and failure witnesses.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::structure::Structure;

/// Witnesses kept per law; further failures are only counted.
pub const MAX_WITNESSES: usize = 5;

/// One failed law instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub instances: u64,
    pub failures: u64,
    pub witnesses: Vec<Violation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub laws: BTreeMap<String, LawTally>,
}

fn show(side: &Result<Structure>) -> String {
    match side {
        Ok(s) => s.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            laws: BTreeMap::new(),
        }
    }

    /// Makes a law show up in the report even if no instance exists.
    pub fn touch(&mut self, law: &str) {
        self.laws.entry(law.to_string()).or_default();
    }

    /// Records one instance of `law`; it passes when both sides evaluate and agree.
    pub fn check_eq(
        &mut self,
        law: &str,
        lhs: Result<Structure>,
        rhs: Result<Structure>,
        witness: impl FnOnce() -> String,
    ) -> bool {
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        self.record(law, ok, || (witness(), show(&lhs), show(&rhs)));
        ok
    }

    /// Records one instance of `law` with an arbitrary verdict.
    pub fn record(
        &mut self,
        law: &str,
        ok: bool,
        details: impl FnOnce() -> (String, String, String),
    ) {
        let tally = match self.laws.get_mut(law) {
            Some(t) => t,
            None => self.laws.entry(law.to_string()).or_default(),
        };
        tally.instances += 1;
        if !ok {
            tally.failures += 1;
            if tally.witnesses.len() < MAX_WITNESSES {
                let (witness, lhs, rhs) = details();
                tally.witnesses.push(Violation {
                    law: law.to_string(),
                    witness,
                    lhs,
                    rhs,
                });
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        for (law, tally) in other.laws {
            let mine = self.laws.entry(law).or_default();
            mine.instances += tally.instances;
            mine.failures += tally.failures;
            for w in tally.witnesses {
                if mine.witnesses.len() < MAX_WITNESSES {
                    mine.witnesses.push(w);
                }
            }
        }
    }

    /// Merges `other` with every law name prefixed by `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        let mut renamed = Report::default();
        for (law, mut tally) in other.laws {
            let name = format!("{prefix}: {law}");
            for w in &mut tally.witnesses {
                w.law = name.clone();
            }
            renamed.laws.insert(name, tally);
        }
        self.merge(renamed);
    }

    /// Runs `body` on every item in parallel and merges the partial reports.
    pub fn fan_out<T: Sync>(
        subject: impl Into<String>,
        items: &[T],
        body: impl Fn(&T, &mut Report) + Sync + Send,
    ) -> Report {
        let mut report = items
            .par_iter()
            .map(|item| {
                let mut partial = Report::default();
                body(item, &mut partial);
                partial
            })
            .reduce(Report::default, |mut a, b| {
                a.merge(b);
                a
            });
        report.subject = subject.into();
        report
    }

    pub fn passed(&self) -> bool {
        self.laws.values().all(|t| t.failures == 0)
    }

    pub fn failures(&self) -> u64 {
        self.laws.values().map(|t| t.failures).sum()
    }

    pub fn instances(&self, law: &str) -> u64 {
        self.laws.get(law).map_or(0, |t| t.instances)
    }

    pub fn failures_of(&self, law: &str) -> u64 {
        self.laws.get(law).map_or(0, |t| t.failures)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.laws.values().flat_map(|t| t.witnesses.iter())
    }

    /// Laws that recorded at least one failure.
    pub fn failing_laws(&self) -> Vec<&str> {
        self.laws
            .iter()
            .filter(|(_, t)| t.failures > 0)
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        writeln!(f, "{} ... {verdict}", self.subject)?;
        for (law, tally) in &self.laws {
            if tally.failures == 0 {
                writeln!(f, "  {law:<12} {:>9} instances  ok", tally.instances)?;
            } else {
                writeln!(
                    f,
                    "  {law:<12} {:>9} instances  {} FAILED",
                    tally.instances, tally.failures
                )?;
                for v in &tally.witnesses {
                    writeln!(f, "    witness: {}", v.witness)?;
                    writeln!(f, "      lhs: {}", v.lhs)?;
                    writeln!(f, "      rhs: {}", v.rhs)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::FiniteSet;

    #[test]
    fn counts_and_witness_cap() {
        let mut r = Report::new("demo");
        let a = Structure::Whole(FiniteSet::empty());
        r.check_eq("law", Ok(a.clone()), Ok(a.clone()), String::new);
        assert!(r.passed());
        for i in 0..10 {
            r.check_eq(
                "law",
                Ok(a.clone()),
                Err(crate::error::Error::Semantic("boom".into())),
                || format!("case {i}"),
            );
        }
        assert!(!r.passed());
        assert_eq!(r.instances("law"), 11);
        assert_eq!(r.failures(), 10);
        assert_eq!(r.violations().count(), MAX_WITNESSES);
        assert_eq!(r.failing_laws(), vec!["law"]);
    }
}
