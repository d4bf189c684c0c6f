use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ambient dimension: spinor sign masks live in a `u64`.
pub const MAX_COORDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8];

    /// Families that carry the full algebra structure.
    pub const EXCEPTIONAL: [Family; 3] = [Family::E6, Family::E7, Family::E8];

    pub fn name(self) -> &'static str {
        match self {
            Family::G2 => "g2",
            Family::F4 => "f4",
            Family::E6 => "e6",
            Family::E7 => "e7",
            Family::E8 => "e8",
        }
    }

    pub fn has_algebra(self) -> bool {
        matches!(self, Family::E6 | Family::E7 | Family::E8)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(Family::G2),
            "f4" => Ok(Family::F4),
            "e6" => Ok(Family::E6),
            "e7" => Ok(Family::E7),
            "e8" => Ok(Family::E8),
            other => Err(format!("unknown algebra family `{other}`")),
        }
    }
}

/// A family together with its level `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraId {
    family: Family,
    level: u32,
}

impl AlgebraId {
    pub fn new(family: Family, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidLevel(level));
        }
        let id = AlgebraId { family, level };
        let dim = id.dim();
        if dim > MAX_COORDS {
            return Err(Error::Capacity { level, dim, limit: MAX_COORDS });
        }
        Ok(id)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `N = 4(n + 1)`, the level's reference dimension.
    pub fn big_n(&self) -> usize {
        4 * (self.level as usize + 1)
    }

    /// Number of coordinates stored per root. Equal to `N` except for `g2`,
    /// which lives in three coordinates at every level.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::G2 => 3,
            _ => self.big_n(),
        }
    }

    pub fn rank(&self) -> usize {
        let n = self.big_n();
        match self.family {
            Family::G2 => 2,
            Family::F4 => n - 4,
            Family::E6 => n - 2,
            Family::E7 => n - 1,
            Family::E8 => n,
        }
    }

    /// Stored coordinate = `scale × coefficient of k_i`.
    pub fn coord_scale(&self) -> i32 {
        match self.family {
            Family::G2 => 6,
            _ => 2,
        }
    }

    /// Expected `(|Φ_O|, |Φ_S|)`; for `f4` the short roots `±k_i` are counted
    /// with the orthogonal sector and for `g2` the ⅓-roots with the spinorial one.
    pub fn expected_sector_counts(&self) -> (u64, u64) {
        let n = self.big_n() as u64;
        match self.family {
            Family::G2 => (6, 6),
            Family::F4 => (2 * (n - 4) + 2 * (n - 4) * (n - 5), 1 << (n - 4)),
            Family::E6 => (2 * (n - 3) * (n - 4), 1 << (n - 3)),
            Family::E7 => (2 + 2 * (n - 2) * (n - 3), 1 << (n - 2)),
            Family::E8 => (2 * n * (n - 1), 1 << (n - 1)),
        }
    }

    pub fn expected_count(&self) -> u64 {
        let (o, s) = self.expected_sector_counts();
        o + s
    }

    /// Zero-based coordinates of the tied block (`u` for `e6`, `v` for `e7`).
    pub fn tied_block(&self) -> std::ops::Range<usize> {
        let n = self.big_n();
        match self.family {
            Family::E6 => n - 3..n,
            Family::E7 => n - 2..n,
            _ => n..n,
        }
    }

    /// Coordinates on which orthogonal roots `±k_i ± k_j` may be supported.
    pub fn free_coords(&self) -> usize {
        let n = self.big_n();
        match self.family {
            Family::G2 => 3,
            Family::F4 => n - 4,
            Family::E6 => n - 3,
            Family::E7 => n - 2,
            Family::E8 => n,
        }
    }

    pub(crate) fn require_algebra(&self) -> Result<()> {
        if self.family.has_algebra() {
            Ok(())
        } else {
            Err(Error::Unsupported {
                family: self.family,
                reason: "algebra structure out of scope (built for e6, e7 and e8 only)",
            })
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.family, self.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let e8 = AlgebraId::new(Family::E8, 2).unwrap();
        assert_eq!(e8.big_n(), 12);
        assert_eq!(e8.rank(), 12);
        let e6 = AlgebraId::new(Family::E6, 1).unwrap();
        assert_eq!(e6.rank(), 6);
        assert_eq!(AlgebraId::new(Family::E7, 1).unwrap().rank(), 7);
        assert_eq!(AlgebraId::new(Family::F4, 3).unwrap().rank(), 12);
        assert_eq!(AlgebraId::new(Family::G2, 9).unwrap().rank(), 2);
    }

    #[test]
    fn level_bounds() {
        assert!(matches!(AlgebraId::new(Family::E8, 0), Err(Error::InvalidLevel(0))));
        assert!(AlgebraId::new(Family::E8, 15).is_ok());
        assert!(matches!(AlgebraId::new(Family::E8, 16), Err(Error::Capacity { .. })));
        assert!(matches!(AlgebraId::new(Family::E8, 99), Err(Error::Capacity { .. })));
    }

    #[test]
    fn classical_counts() {
        let count = |f, n| AlgebraId::new(f, n).unwrap().expected_count();
        assert_eq!(count(Family::E8, 1), 240);
        assert_eq!(count(Family::E7, 1), 126);
        assert_eq!(count(Family::E6, 1), 72);
        assert_eq!(count(Family::F4, 1), 48);
        assert_eq!(count(Family::G2, 1), 12);
        assert_eq!(count(Family::E8, 2), 2312);
    }
}
