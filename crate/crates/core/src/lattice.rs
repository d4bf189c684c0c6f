//! Generalized roots: exact representation, generation and membership.
//!
//! Coordinates are stored as integers, `coords[i] = scale · (coefficient of
//! k_{i+1})` with `scale = 2` for every family but `g2` (`scale = 6`).
//! For the scale-2 families every root also has a [`Packed`] form, two sign
//! bitmasks plus a magnitude flag, which is what the pair and triple sweeps
//! operate on.

use std::fmt;
use std::io::{BufRead, Write};

use num_rational::Rational64;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::family::{AlgebraId, Family};

/// Refuse to materialize root systems larger than this; membership tests via
/// [`admits`] work at every supported level without generation.
pub const GENERATION_LIMIT: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    /// `±k_i ± k_j` (and `±v` for `e7`).
    Orthogonal,
    /// `½(±k_1 ± … ± k_N)`, with tied blocks where the family has them.
    Spinorial,
    /// `±k_i`, only in `f4`.
    Short,
    /// `±⅓(−2k_i + k_{i+1} + k_{i+2})`, only in `g2`.
    Projected,
}

impl Sector {
    pub fn name(self) -> &'static str {
        match self {
            Sector::Orthogonal => "orthogonal",
            Sector::Spinorial => "spinorial",
            Sector::Short => "short",
            Sector::Projected => "projected",
        }
    }

    /// Sectors grouped with `Φ_O` in counts and star cells.
    pub fn is_orthogonal_like(self) -> bool {
        matches!(self, Sector::Orthogonal | Sector::Short)
    }

    pub fn from_name(s: &str) -> Option<Sector> {
        match s {
            "orthogonal" => Some(Sector::Orthogonal),
            "spinorial" => Some(Sector::Spinorial),
            "short" => Some(Sector::Short),
            "projected" => Some(Sector::Projected),
            _ => None,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generalized root in scaled integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVector {
    coords: Vec<i32>,
    sector: Sector,
}

impl RootVector {
    pub fn new(coords: Vec<i32>, sector: Sector) -> Self {
        RootVector { coords, sector }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Spinor sign mask: bit `i` set iff the `k_{i+1}` coefficient is positive.
    pub fn sign_mask(&self) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn negated(&self) -> RootVector {
        RootVector { coords: self.coords.iter().map(|c| -c).collect(), sector: self.sector }
    }
}

/// Raw coordinate dot product.
pub fn dot(a: &[i32], b: &[i32]) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum())
}

/// Exact scalar product of two vectors stored with coordinate scale `scale`.
pub fn inner_scaled(a: &[i32], b: &[i32], scale: i32) -> Result<Rational64> {
    let d = dot(a, b)?;
    Ok(Rational64::new(d, (scale as i64) * (scale as i64)))
}

/// Exact `(a, b)` for doubled coordinates.
pub fn inner(a: &RootVector, b: &RootVector) -> Result<Rational64> {
    inner_scaled(&a.coords, &b.coords, 2)
}

/// `w_ρ(x) = x − 2 (x,ρ)/(ρ,ρ) ρ`, computed exactly. The result is expressed
/// in the same scaled coordinates as the inputs and need not be integral.
pub fn weyl_reflect(x: &[i32], rho: &[i32]) -> Result<Vec<Rational64>> {
    let xr = dot(x, rho)?;
    let rr = dot(rho, rho)?;
    if rr == 0 {
        return Err(Error::Construction("reflection in the zero vector".into()));
    }
    let c = Rational64::new(2 * xr, rr);
    Ok(x.iter().zip(rho).map(|(&xi, &ri)| Rational64::from(xi as i64) - c * ri as i64).collect())
}

/// Integer coordinates of a rational vector, if it has any.
pub fn integral(v: &[Rational64]) -> Option<Vec<i32>> {
    v.iter()
        .map(|q| if q.is_integer() { i32::try_from(q.to_integer()).ok() } else { None })
        .collect()
}

/// Bit-packed root: sign masks plus the common magnitude of the nonzero
/// entries (`wide` ⇒ ±2, otherwise ±1, in doubled coordinates).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packed {
    pub pos: u64,
    pub neg: u64,
    pub wide: bool,
}

/// Result of adding two packed vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackedSum {
    Zero,
    Vector(Packed),
    /// The sum has an entry of magnitude 3 or 4, or mixes magnitudes; no root
    /// of a scale-2 family looks like that.
    Outside,
}

impl Packed {
    pub fn from_coords(coords: &[i32]) -> Option<Packed> {
        if coords.len() > 64 {
            return None;
        }
        let (mut pos, mut neg, mut mag) = (0u64, 0u64, 0i32);
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a = c.abs();
            if a > 2 || (mag != 0 && a != mag) {
                return None;
            }
            mag = a;
            if c > 0 {
                pos |= 1 << i;
            } else {
                neg |= 1 << i;
            }
        }
        (mag != 0).then_some(Packed { pos, neg, wide: mag == 2 })
    }

    pub fn to_coords(self, dim: usize) -> Vec<i32> {
        let m = self.magnitude();
        (0..dim)
            .map(|i| {
                if self.pos >> i & 1 == 1 {
                    m
                } else if self.neg >> i & 1 == 1 {
                    -m
                } else {
                    0
                }
            })
            .collect()
    }

    #[inline]
    pub fn magnitude(self) -> i32 {
        if self.wide {
            2
        } else {
            1
        }
    }

    #[inline]
    pub fn support(self) -> u64 {
        self.pos | self.neg
    }

    #[inline]
    pub fn negate(self) -> Packed {
        Packed { pos: self.neg, neg: self.pos, wide: self.wide }
    }

    /// Raw dot product of the doubled coordinates.
    #[inline]
    pub fn dot(self, other: Packed) -> i32 {
        let agree = (self.pos & other.pos).count_ones() + (self.neg & other.neg).count_ones();
        let disagree = (self.pos & other.neg).count_ones() + (self.neg & other.pos).count_ones();
        self.magnitude() * other.magnitude() * (agree as i32 - disagree as i32)
    }

    #[inline]
    pub fn add(self, other: Packed) -> PackedSum {
        match (self.wide, other.wide) {
            (false, false) => {
                let two_pos = self.pos & other.pos;
                let two_neg = self.neg & other.neg;
                let one_pos = (self.pos & !other.support()) | (other.pos & !self.support());
                let one_neg = (self.neg & !other.support()) | (other.neg & !self.support());
                let twos = two_pos | two_neg;
                let ones = one_pos | one_neg;
                match (twos != 0, ones != 0) {
                    (false, false) => PackedSum::Zero,
                    (true, false) => PackedSum::Vector(Packed { pos: two_pos, neg: two_neg, wide: true }),
                    (false, true) => PackedSum::Vector(Packed { pos: one_pos, neg: one_neg, wide: false }),
                    (true, true) => PackedSum::Outside,
                }
            }
            (true, true) => {
                if (self.pos & other.pos) | (self.neg & other.neg) != 0 {
                    return PackedSum::Outside;
                }
                let pos = (self.pos | other.pos) & !(self.neg | other.neg);
                let neg = (self.neg | other.neg) & !(self.pos | other.pos);
                if pos | neg == 0 {
                    PackedSum::Zero
                } else {
                    PackedSum::Vector(Packed { pos, neg, wide: true })
                }
            }
            (true, false) => wide_plus_narrow(self, other),
            (false, true) => wide_plus_narrow(other, self),
        }
    }

    #[inline]
    pub fn sub(self, other: Packed) -> PackedSum {
        self.add(other.negate())
    }
}

#[inline]
fn wide_plus_narrow(w: Packed, s: Packed) -> PackedSum {
    if (w.pos & s.pos) | (w.neg & s.neg) != 0 {
        return PackedSum::Outside;
    }
    let twos = w.support() & !s.support();
    let pos = (w.pos & s.neg) | (s.pos & !w.support());
    let neg = (w.neg & s.pos) | (s.neg & !w.support());
    match (twos != 0, pos | neg != 0) {
        (true, true) => PackedSum::Outside,
        (true, false) => PackedSum::Vector(Packed { pos: w.pos & twos, neg: w.neg & twos, wide: true }),
        (false, true) => PackedSum::Vector(Packed { pos, neg, wide: false }),
        (false, false) => PackedSum::Zero,
    }
}

/// Structural membership test, independent of any generated [`RootSystem`].
pub fn admits(id: AlgebraId, coords: &[i32]) -> bool {
    if coords.len() != id.dim() {
        return false;
    }
    if id.family() == Family::G2 {
        return g2_roots().iter().any(|(c, _)| c.as_slice() == coords);
    }
    let n = id.big_n();
    let nz: Vec<usize> = (0..n).filter(|&i| coords[i] != 0).collect();
    let all_mag = |m: i32| nz.iter().all(|&i| coords[i].abs() == m);
    let free = id.free_coords();
    let plus_even = || coords.iter().filter(|&&c| c > 0).count() % 2 == 0;
    match nz.len() {
        0 => false,
        1 => id.family() == Family::F4 && all_mag(2) && nz[0] < free,
        2 if all_mag(2) => {
            if nz[1] < free {
                return true;
            }
            // ±v for e7
            id.family() == Family::E7 && nz == [n - 2, n - 1] && coords[n - 2] == coords[n - 1]
        }
        len => {
            if !all_mag(1) {
                return false;
            }
            match id.family() {
                Family::F4 => len == n - 4 && nz[len - 1] == n - 5,
                Family::E8 => len == n && plus_even(),
                Family::E7 | Family::E6 => {
                    let tied = id.tied_block();
                    len == n && coords[tied.clone()].iter().all(|&c| c == coords[tied.start]) && plus_even()
                }
                Family::G2 => unreachable!(),
            }
        }
    }
}

fn g2_roots() -> Vec<(Vec<i32>, Sector)> {
    let mut out = Vec::with_capacity(12);
    for i in 0..3 {
        for j in i + 1..3 {
            let mut v = vec![0; 3];
            v[i] = 6;
            v[j] = -6;
            out.push((v.iter().map(|c| -c).collect(), Sector::Orthogonal));
            out.push((v, Sector::Orthogonal));
        }
    }
    for i in 0..3 {
        // ⅓(−2k_i + k_{i+1} + k_{i+2}) scaled by 6
        let mut v = vec![2; 3];
        v[i] = -4;
        out.push((v.iter().map(|c| -c).collect(), Sector::Projected));
        out.push((v, Sector::Projected));
    }
    out
}

/// The complete, canonically ordered set Φ of one algebra.
///
/// Order: orthogonal-like roots sorted lexicographically by coordinates, then
/// the remaining sector sorted by sign mask (lexicographically for `g2`).
#[derive(Clone, Debug)]
pub struct RootSystem {
    id: AlgebraId,
    roots: Vec<RootVector>,
    packed: Vec<Packed>,
    index: FxHashMap<Packed, u32>,
    negation: Vec<u32>,
    orthogonal: usize,
}

impl RootSystem {
    pub fn generate(id: AlgebraId) -> Result<RootSystem> {
        let expected = id.expected_count();
        if expected > GENERATION_LIMIT {
            return Err(Error::Capacity { level: id.level(), dim: id.dim(), limit: crate::family::MAX_COORDS });
        }
        let (mut orth, mut spin) = match id.family() {
            Family::G2 => {
                let (o, s): (Vec<_>, Vec<_>) =
                    g2_roots().into_iter().partition(|(_, s)| *s == Sector::Orthogonal);
                (o, s)
            }
            _ => (orthogonal_roots(id), spinorial_roots(id)),
        };
        orth.sort_by(|a, b| a.0.cmp(&b.0));
        if id.family() == Family::G2 {
            spin.sort_by(|a, b| a.0.cmp(&b.0));
        }
        // spinors are produced in ascending mask order already
        let orthogonal = orth.len();
        let roots: Vec<RootVector> =
            orth.into_iter().chain(spin).map(|(c, s)| RootVector::new(c, s)).collect();
        Self::from_roots(id, roots, orthogonal)
    }

    fn from_roots(id: AlgebraId, roots: Vec<RootVector>, orthogonal: usize) -> Result<RootSystem> {
        let packed: Vec<Packed> = if id.coord_scale() == 2 {
            roots
                .iter()
                .map(|r| Packed::from_coords(r.coords()).ok_or_else(|| Error::Construction("unpackable root".into())))
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let mut index = FxHashMap::default();
        index.reserve(packed.len());
        for (i, p) in packed.iter().enumerate() {
            if index.insert(*p, i as u32).is_some() {
                return Err(Error::Construction("duplicate root".into()));
            }
        }
        let mut sys = RootSystem { id, roots, packed, index, negation: Vec::new(), orthogonal };
        let negation = (0..sys.len())
            .map(|i| {
                sys.index_of(&sys.roots[i].negated().coords).map(|j| j as u32)
                    .ok_or_else(|| Error::Construction("root set is not closed under negation".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        sys.negation = negation;
        Ok(sys)
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &RootVector {
        &self.roots[i]
    }

    pub fn sector(&self, i: usize) -> Sector {
        self.roots[i].sector
    }

    pub fn is_orthogonal(&self, i: usize) -> bool {
        i < self.orthogonal
    }

    /// Index range of the orthogonal-like sector.
    pub fn orthogonal_range(&self) -> std::ops::Range<usize> {
        0..self.orthogonal
    }

    pub fn spinorial_range(&self) -> std::ops::Range<usize> {
        self.orthogonal..self.roots.len()
    }

    /// Packed forms (empty for `g2`).
    pub fn packed(&self) -> &[Packed] {
        &self.packed
    }

    #[inline]
    pub fn packed_at(&self, i: usize) -> Packed {
        self.packed[i]
    }

    #[inline]
    pub fn negation(&self, i: usize) -> usize {
        self.negation[i] as usize
    }

    #[inline]
    pub fn lookup(&self, p: Packed) -> Option<usize> {
        self.index.get(&p).map(|&i| i as usize)
    }

    /// Index of the root with these coordinates.
    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        if coords.len() != self.id.dim() {
            return None;
        }
        if self.packed.is_empty() {
            return self.roots.iter().position(|r| r.coords == coords);
        }
        Packed::from_coords(coords).and_then(|p| self.lookup(p))
    }

    pub fn is_root(&self, coords: &[i32]) -> bool {
        self.index_of(coords).is_some()
    }

    /// Raw dot product of the stored coordinates.
    #[inline]
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        if self.packed.is_empty() {
            dot(&self.roots[i].coords, &self.roots[j].coords).expect("same system")
        } else {
            self.packed[i].dot(self.packed[j]) as i64
        }
    }

    pub fn inner(&self, i: usize, j: usize) -> Rational64 {
        let s = self.id.coord_scale() as i64;
        Rational64::new(self.dot(i, j), s * s)
    }

    /// `(α_i, α_j)` for the scale-2 families, where it is always a multiple of ¼.
    /// Returns the integer value when it is one.
    #[inline]
    pub fn inner_int(&self, i: usize, j: usize) -> Option<i32> {
        let d = self.packed[i].dot(self.packed[j]);
        (d % 4 == 0).then_some(d / 4)
    }

    fn combine(&self, i: usize, j: usize, sign: i32) -> Option<usize> {
        if self.packed.is_empty() {
            let v: Vec<i32> = self.roots[i].coords.iter().zip(&self.roots[j].coords).map(|(a, b)| a + sign * b).collect();
            return self.index_of(&v);
        }
        let (a, b) = (self.packed[i], self.packed[j]);
        let s = if sign > 0 { a.add(b) } else { a.sub(b) };
        match s {
            PackedSum::Vector(p) => self.lookup(p),
            _ => None,
        }
    }

    /// Index of `α_i + α_j` when it is a root.
    #[inline]
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.combine(i, j, 1)
    }

    #[inline]
    pub fn diff_index(&self, i: usize, j: usize) -> Option<usize> {
        self.combine(i, j, -1)
    }

    pub fn count_by_sector(&self) -> (usize, usize) {
        (self.orthogonal, self.roots.len() - self.orthogonal)
    }

    pub fn tsv_header(&self) -> String {
        format!(
            "#algebra={} n={} N={} R={} count={}",
            self.id.family(),
            self.id.level(),
            self.id.dim(),
            self.id.rank(),
            self.len()
        )
    }

    /// Root list in the `index<TAB>sector<TAB>c_1 ... c_N` format.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.tsv_header())?;
        let mut line = String::new();
        for (i, r) in self.roots.iter().enumerate() {
            line.clear();
            use std::fmt::Write as _;
            let _ = write!(line, "{i}\t{}\t", r.sector);
            for (k, c) in r.coords.iter().enumerate() {
                if k > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{c}");
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }
}

/// Parsed root TSV: header fields and roots in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTable {
    pub family: Family,
    pub level: u32,
    pub dim: usize,
    pub rank: usize,
    pub roots: Vec<RootVector>,
}

pub fn read_tsv<R: BufRead>(r: R) -> Result<RootTable> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let header = header?;
    let field = |key: &str| -> Result<String> {
        header
            .trim_start_matches('#')
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')).map(str::to_string))
            .ok_or(Error::Parse { line: 1, msg: format!("missing `{key}`") })
    };
    let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let family: Family = field("algebra")?.parse().map_err(|e: String| bad(1, &e))?;
    let level: u32 = field("n")?.parse().map_err(|_| bad(1, "bad level"))?;
    let dim: usize = field("N")?.parse().map_err(|_| bad(1, "bad N"))?;
    let rank: usize = field("R")?.parse().map_err(|_| bad(1, "bad R"))?;
    let count: usize = field("count")?.parse().map_err(|_| bad(1, "bad count"))?;
    let mut roots = Vec::with_capacity(count);
    for (ln, line) in lines {
        let line = line?;
        let mut parts = line.split('\t');
        let idx: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad(ln + 1, "bad index"))?;
        if idx != roots.len() {
            return Err(bad(ln + 1, "indices out of order"));
        }
        let sector = parts.next().and_then(Sector::from_name).ok_or_else(|| bad(ln + 1, "bad sector"))?;
        let coords: Vec<i32> = parts
            .next()
            .ok_or_else(|| bad(ln + 1, "missing coordinates"))?
            .split(' ')
            .map(|c| c.parse().map_err(|_| bad(ln + 1, "bad coordinate")))
            .collect::<Result<_>>()?;
        if coords.len() != dim {
            return Err(bad(ln + 1, "wrong coordinate count"));
        }
        roots.push(RootVector::new(coords, sector));
    }
    if roots.len() != count {
        return Err(bad(0, "count does not match header"));
    }
    Ok(RootTable { family, level, dim, rank, roots })
}

fn orthogonal_roots(id: AlgebraId) -> Vec<(Vec<i32>, Sector)> {
    let n = id.big_n();
    let free = id.free_coords();
    let mut out = Vec::new();
    for i in 0..free {
        for j in i + 1..free {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = vec![0; n];
                v[i] = si;
                v[j] = sj;
                out.push((v, Sector::Orthogonal));
            }
        }
    }
    match id.family() {
        Family::E7 => {
            for s in [2, -2] {
                let mut v = vec![0; n];
                v[n - 2] = s;
                v[n - 1] = s;
                out.push((v, Sector::Orthogonal));
            }
        }
        Family::F4 => {
            for i in 0..free {
                for s in [2, -2] {
                    let mut v = vec![0; n];
                    v[i] = s;
                    out.push((v, Sector::Short));
                }
            }
        }
        _ => {}
    }
    out
}

/// Spinorial roots in ascending sign-mask order.
fn spinorial_roots(id: AlgebraId) -> Vec<(Vec<i32>, Sector)> {
    let n = id.big_n();
    let mut out = Vec::with_capacity(id.expected_sector_counts().1 as usize);
    let emit = |mask: u64, len: usize, out: &mut Vec<(Vec<i32>, Sector)>| {
        let mut v = vec![0; n];
        for (i, c) in v.iter_mut().enumerate().take(len) {
            *c = if mask >> i & 1 == 1 { 1 } else { -1 };
        }
        out.push((v, Sector::Spinorial));
    };
    match id.family() {
        Family::F4 => {
            for mask in 0..1u64 << (n - 4) {
                emit(mask, n - 4, &mut out);
            }
        }
        Family::E8 | Family::E7 | Family::E6 => {
            let tied = id.tied_block();
            let tie_mask: u64 = tied.clone().fold(0, |m, i| m | 1 << i);
            let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut mask = 0u64;
            loop {
                let tied_ok = tie_mask == 0 || mask & tie_mask == 0 || mask & tie_mask == tie_mask;
                if tied_ok && mask.count_ones() % 2 == 0 {
                    emit(mask, n, &mut out);
                }
                if mask == limit {
                    break;
                }
                mask += 1;
            }
        }
        Family::G2 => unreachable!(),
    }
    out
}

/// Quick check that `v` is nonzero.
pub fn is_zero(v: &[Rational64]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::generate(AlgebraId::new(f, n).unwrap()).unwrap()
    }

    fn unit(n: usize, entries: &[(usize, i32)]) -> Vec<i32> {
        let mut v = vec![0; n];
        for &(i, c) in entries {
            v[i] = c;
        }
        v
    }

    #[test]
    fn classical_counts() {
        assert_eq!(sys(Family::E8, 1).len(), 240);
        assert_eq!(sys(Family::E7, 1).len(), 126);
        assert_eq!(sys(Family::E6, 1).len(), 72);
        assert_eq!(sys(Family::F4, 1).len(), 48);
        assert_eq!(sys(Family::G2, 1).len(), 12);
        assert_eq!(sys(Family::G2, 5).len(), 12);
    }

    #[test]
    fn e8_level_two_count_matches_enumeration() {
        let s = sys(Family::E8, 2);
        assert_eq!(s.len(), 2 * 12 * 11 + (1 << 11));
        assert_eq!(s.len(), 2312);
        assert_eq!(s.count_by_sector(), (264, 2048));
    }

    #[test]
    fn inner_examples() {
        let a = RootVector::new(unit(8, &[(0, 2), (1, -2)]), Sector::Orthogonal);
        let b = RootVector::new(unit(8, &[(1, 2), (2, 2)]), Sector::Orthogonal);
        assert_eq!(inner(&a, &b).unwrap(), Rational64::from(-1));
        // spinors differing in 2m signs: n + 1 − m
        let s = sys(Family::E8, 2);
        let x = s.root(s.spinorial_range().start);
        for m in 0..=6usize {
            let mut c = x.coords().to_vec();
            for v in c.iter_mut().take(2 * m) {
                *v = -*v;
            }
            let y = RootVector::new(c, Sector::Spinorial);
            assert_eq!(inner(x, &y).unwrap(), Rational64::from(3 - m as i64));
        }
        assert_eq!(inner(x, x).unwrap(), Rational64::from(3));
        assert!(inner(&a, &RootVector::new(vec![0; 3], Sector::Orthogonal)).is_err());
    }

    #[test]
    fn membership_examples() {
        let s = sys(Family::E8, 1);
        assert!(s.is_root(&unit(8, &[(0, 2), (1, -2)])));
        assert!(!s.is_root(&[3, 1, 1, 1, 1, 1, 1, 1]));
        let s2 = sys(Family::E8, 2);
        let mut odd = vec![-1; 12];
        odd[0] = 1;
        assert!(!s2.is_root(&odd));
        assert!(!admits(s2.id(), &odd));
        odd[1] = 1;
        assert!(s2.is_root(&odd));
    }

    #[test]
    fn reflection_examples() {
        let x = unit(8, &[(1, 2), (2, 2)]);
        let rho = unit(8, &[(0, 2), (1, -2)]);
        let w = weyl_reflect(&x, &rho).unwrap();
        assert_eq!(integral(&w).unwrap(), unit(8, &[(0, 2), (2, 2)]));
        let fixed = unit(8, &[(4, 2), (5, 2)]);
        assert_eq!(integral(&weyl_reflect(&fixed, &rho).unwrap()).unwrap(), fixed);
        assert!(weyl_reflect(&x, &[0; 8]).is_err());
    }

    #[test]
    fn spinor_reflection_leaves_the_set_at_level_two() {
        let n = 2i64;
        let s = sys(Family::E8, 2);
        let rho = vec![1; 12];
        // agree at two indices, opposite elsewhere: (x, ρ) = −n
        let mut x = vec![-1; 12];
        x[0] = 1;
        x[1] = 1;
        assert!(s.is_root(&x) && s.is_root(&rho));
        let w = weyl_reflect(&x, &rho).unwrap();
        assert_eq!(w[0].abs(), Rational64::new(3 * n + 1, n + 1));
        assert!(integral(&w).is_none());
    }

    #[test]
    fn sum_examples() {
        let s = sys(Family::E8, 1);
        let a = s.index_of(&unit(8, &[(0, 2), (1, -2)])).unwrap();
        let b = s.index_of(&unit(8, &[(1, 2), (2, -2)])).unwrap();
        let c = s.sum_index(a, b).unwrap();
        assert_eq!(s.root(c).coords(), unit(8, &[(0, 2), (2, -2)]).as_slice());
        assert_eq!(s.sum_index(a, a), None);
        assert_eq!(s.sum_index(a, s.negation(a)), None);
    }

    #[test]
    fn canonical_order() {
        let s = sys(Family::E7, 2);
        let orth = &s.roots()[s.orthogonal_range()];
        assert!(orth.windows(2).all(|w| w[0].coords() < w[1].coords()));
        let spin = &s.roots()[s.spinorial_range()];
        assert!(spin.windows(2).all(|w| w[0].sign_mask() < w[1].sign_mask()));
    }

    #[test]
    fn f4_spinors_have_no_parity_constraint() {
        let s = sys(Family::F4, 2);
        let (_, spin) = s.count_by_sector();
        assert_eq!(spin, 1 << 8);
        assert!(s.spinorial_range().any(|i| s.root(i).sign_mask().count_ones() % 2 == 1));
    }

    #[test]
    fn g2_layout() {
        let s = sys(Family::G2, 3);
        assert_eq!(s.count_by_sector(), (6, 6));
        assert!(s.is_root(&[-4, 2, 2]));
        assert!(s.is_root(&[6, -6, 0]));
        assert_eq!(s.inner(s.index_of(&[6, -6, 0]).unwrap(), s.index_of(&[-4, 2, 2]).unwrap()), Rational64::from(-1));
        for i in 0..s.len() {
            assert_eq!(s.root(s.negation(i)).coords(), s.root(i).negated().coords());
        }
    }

    #[test]
    fn tsv_round_trip() {
        let s = sys(Family::E6, 1);
        let text = s.to_tsv();
        assert!(text.starts_with("#algebra=e6 n=1 N=8 R=6 count=72\n"));
        let t = read_tsv(text.as_bytes()).unwrap();
        assert_eq!(t.roots, s.roots());
        assert_eq!((t.family, t.level, t.dim, t.rank), (Family::E6, 1, 8, 6));
    }

    #[test]
    fn generation_limit() {
        let id = AlgebraId::new(Family::E8, 15).unwrap();
        assert!(matches!(RootSystem::generate(id), Err(Error::Capacity { .. })));
        // structural membership still works there
        let mut v = vec![0; 64];
        v[0] = 2;
        v[63] = -2;
        assert!(admits(id, &v));
    }
}
