use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use crate::family::AlgebraId;

/// How a sweep covers its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl Mode {
    /// Exhaustive up to level 2, sampled above.
    pub fn default_for(level: u32, samples: u64, seed: u64) -> Mode {
        if level <= 2 {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples, seed }
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Mode::Exhaustive)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { samples, seed } => write!(f, "sampled(samples={samples}, seed={seed})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub algebra: Option<AlgebraId>,
    pub mode: Mode,
    pub checks: u64,
    /// Failures by check id.
    pub failure_counts: BTreeMap<String, u64>,
    /// First failure per check id (lowest sweep position).
    pub failures: Vec<Failure>,
    /// Expected Jacobi violations, which are findings rather than failures.
    pub expected: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>, algebra: Option<AlgebraId>, mode: Mode) -> Self {
        VerifyReport {
            suite: suite.into(),
            algebra,
            mode,
            checks: 0,
            failure_counts: BTreeMap::new(),
            failures: Vec::new(),
            expected: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        let check = check.into();
        let count = self.failure_counts.entry(check.clone()).or_insert(0);
        *count += 1;
        if *count == 1 {
            self.failures.push(Failure { check, witness: witness.into() });
        }
    }

    /// Records `ok` as one check, failing with a lazily built witness.
    pub fn expect(&mut self, check: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(check, witness());
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn absorb(&mut self, outcome: crate::sweep::Outcome) {
        self.checks += outcome.checks;
        for (check, (count, witness)) in outcome.failures {
            *self.failure_counts.entry(check.to_string()).or_insert(0) += count;
            if !self.failures.iter().any(|f| f.check == check) {
                self.failures.push(Failure { check: check.to_string(), witness: witness.1 });
            }
        }
    }

    /// Merges another report's findings under this one.
    pub fn merge(&mut self, other: VerifyReport) {
        self.checks += other.checks;
        for (k, v) in other.failure_counts {
            *self.failure_counts.entry(k).or_insert(0) += v;
        }
        for f in other.failures {
            if !self.failures.iter().any(|g| g.check == f.check) {
                self.failures.push(f);
            }
        }
        self.expected.extend(other.expected);
        self.notes.extend(other.notes);
        self.elapsed += other.elapsed;
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Deterministic rendering; elapsed time is left out on purpose so that the
/// text is reproducible. See [`VerifyReport::elapsed`].
impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = match self.algebra {
            Some(id) => format!("{} n={}", id.family(), id.level()),
            None => "-".to_string(),
        };
        writeln!(
            f,
            "[{}] suite={} algebra={} mode={} checks={} failures={}",
            self.status(),
            self.suite,
            alg,
            self.mode,
            self.checks,
            self.failure_counts.values().sum::<u64>()
        )?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for e in &self.expected {
            writeln!(f, "  expected: {e}")?;
        }
        for fl in &self.failures {
            let count = self.failure_counts.get(&fl.check).copied().unwrap_or(1);
            writeln!(f, "  FAIL {} (x{}): {}", fl.check, count, fl.witness)?;
        }
        Ok(())
    }
}
