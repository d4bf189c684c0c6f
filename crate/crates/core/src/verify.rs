//! Named verification suites and a runner that builds each structure once.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::algebra::MagicStarAlgebra;
use crate::error::Result;
use crate::family::{AlgebraId, Family};
use crate::lattice::RootSystem;
use crate::report::{Mode, VerifyReport};
use crate::simple::SimpleBasis;
use crate::{epsilon, jacobi, props, star};

/// Random lattice pairs drawn by the epsilon suite on top of its root sweeps.
pub const LATTICE_SAMPLES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Weyl,
    Simple,
    Sums,
    Epsilon,
    Tables,
    Nested,
    Grading,
    Derivations,
    TwoSums,
    JacobiN1,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Weyl,
        Suite::Simple,
        Suite::Sums,
        Suite::Epsilon,
        Suite::Tables,
        Suite::Nested,
        Suite::Grading,
        Suite::Derivations,
        Suite::TwoSums,
        Suite::JacobiN1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Simple => "simple",
            Suite::Sums => "sums",
            Suite::Epsilon => "epsilon",
            Suite::Tables => "tables",
            Suite::Nested => "nested",
            Suite::Grading => "grading",
            Suite::Derivations => "derivations",
            Suite::TwoSums => "two-sums",
            Suite::JacobiN1 => "jacobi-n1",
        }
    }

    /// Parses `all` or a comma-separated list, keeping the canonical order.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<Suite>, String> {
        if s.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let suite: Suite = part.parse()?;
            if !out.contains(&suite) {
                out.push(suite);
            }
        }
        if out.is_empty() {
            return Err("no suite given".into());
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Holds the structures shared by the suites of one run.
pub struct Runner {
    id: AlgebraId,
    mode: Mode,
    seed: u64,
    system: Option<RootSystem>,
    algebra: Option<MagicStarAlgebra>,
}

impl Runner {
    pub fn new(id: AlgebraId, mode: Mode, seed: u64) -> Runner {
        Runner { id, mode, seed, system: None, algebra: None }
    }

    fn system(&mut self) -> Result<&RootSystem> {
        if self.system.is_none() {
            self.system = Some(RootSystem::generate(self.id)?);
        }
        Ok(self.system.as_ref().unwrap())
    }

    fn algebra(&mut self) -> Result<&MagicStarAlgebra> {
        if self.algebra.is_none() {
            self.algebra = Some(MagicStarAlgebra::new(self.id)?);
        }
        Ok(self.algebra.as_ref().unwrap())
    }

    fn skipped(&self, suite: Suite, why: &str) -> VerifyReport {
        let mut r = VerifyReport::new(suite.name(), Some(self.id), self.mode);
        r.note(format!("skipped: {why}"));
        r
    }

    pub fn run(&mut self, suite: Suite) -> Result<VerifyReport> {
        let start = Instant::now();
        let mut report = self.run_inner(suite)?;
        report.suite = suite.name().to_string();
        report.elapsed = start.elapsed();
        Ok(report)
    }

    fn run_inner(&mut self, suite: Suite) -> Result<VerifyReport> {
        let (mode, seed) = (self.mode, self.seed);
        let has_algebra = self.id.family().has_algebra();
        Ok(match suite {
            Suite::Weyl => props::check_weyl(self.system()?, mode),
            Suite::Simple if has_algebra => {
                let sys = self.system()?;
                props::check_simple(sys, &SimpleBasis::new(sys.id())?, mode)
            }
            Suite::Sums => props::check_sums(self.system()?, mode),
            Suite::Tables => star::verify_tables(self.system()?),
            Suite::Nested => {
                let mut r = star::verify_nested_star(self.id.level())?;
                r.merge(star::verify_e7_decomposition(self.id.level())?);
                r.algebra = Some(AlgebraId::new(Family::E8, self.id.level())?);
                r.mode = Mode::Exhaustive;
                r
            }
            Suite::Grading if has_algebra => star::check_gradings(self.system()?, mode),
            Suite::Epsilon if has_algebra => {
                let alg = self.algebra()?;
                let mut r = epsilon::check_sign_properties(alg, mode, LATTICE_SAMPLES, seed);
                r.merge(epsilon::check_root_sign_identities(alg, mode));
                r
            }
            Suite::Derivations if has_algebra => jacobi::check_derivations(self.algebra()?, mode),
            Suite::TwoSums if has_algebra => jacobi::check_two_sums(self.algebra()?, mode),
            Suite::JacobiN1 if has_algebra => {
                let id = AlgebraId::new(self.id.family(), 1)?;
                let alg = if self.id.level() == 1 { self.algebra()?.clone() } else { MagicStarAlgebra::new(id)? };
                let mut r = jacobi::check_full_jacobi(&alg);
                if self.id.level() != 1 {
                    r.note(format!("runs at n=1 regardless of the requested level {}", self.id.level()));
                }
                r
            }
            _ => self.skipped(suite, "the algebra structure is defined for e6, e7 and e8 only"),
        })
    }
}

/// Runs `suites` in order, building the root system and algebra at most once.
pub fn run(id: AlgebraId, suites: &[Suite], mode: Mode, seed: u64) -> Result<Vec<VerifyReport>> {
    let mut runner = Runner::new(id, mode, seed);
    suites.iter().map(|&s| runner.run(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_suites() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 10);
        assert_eq!(Suite::parse_list("two-sums, weyl,weyl").unwrap(), vec![Suite::Weyl, Suite::TwoSums]);
        assert!(Suite::parse_list("bogus").is_err());
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn f4_skips_algebra_suites() {
        let id = AlgebraId::new(Family::F4, 1).unwrap();
        let reports = run(id, &[Suite::Tables, Suite::Derivations], Mode::Exhaustive, 0).unwrap();
        assert!(reports.iter().all(VerifyReport::passed));
        assert!(reports[1].notes[0].starts_with("skipped"));
    }

    #[test]
    fn e6_level_one_light_suites() {
        let id = AlgebraId::new(Family::E6, 1).unwrap();
        let suites = [Suite::Weyl, Suite::Simple, Suite::Sums, Suite::Tables, Suite::Grading, Suite::Epsilon];
        for r in run(id, &suites, Mode::Exhaustive, 0).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}
