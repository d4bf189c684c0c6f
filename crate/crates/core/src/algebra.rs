//! The algebra `H ⊕ ⊕_α L_α` and its bracket.
//!
//! Brackets on basis elements go through [`MagicStarAlgebra::bracket_basis`],
//! an integer kernel. [`AlgebraElement`] is the general sparse rational
//! element; its bracket is the bilinear extension of the same kernel.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::epsilon::{sign, EpsilonTable};
use crate::error::{Error, Result};
use crate::family::AlgebraId;
use crate::lattice::{Packed, RootSystem};
use crate::simple::{Decomposition, SimpleBasis};

/// Largest root system for which the algebra tables are built.
pub const ALGEBRA_LIMIT: usize = 1 << 16;

/// Cartan generators come first, then root generators in root order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    /// `h_{i+1}`
    Cartan(usize),
    /// `x_α` for root index `α`
    Root(usize),
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Cartan(i) => write!(f, "h{}", i + 1),
            BasisIndex::Root(a) => write!(f, "x[{a}]"),
        }
    }
}

/// Result of bracketing two basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisBracket {
    Zero,
    /// `coeff · x_root`
    Root { coeff: i64, root: usize },
    /// `coeff · h_root`, with `h_α = Σ c_i h_i` over the decomposition of `α`
    Coroot { coeff: i64, root: usize },
}

impl BasisBracket {
    fn scale(self, k: i64) -> BasisBracket {
        match self {
            BasisBracket::Root { coeff, root } if coeff * k != 0 => BasisBracket::Root { coeff: coeff * k, root },
            BasisBracket::Coroot { coeff, root } if coeff * k != 0 => BasisBracket::Coroot { coeff: coeff * k, root },
            _ => BasisBracket::Zero,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BasisBracket::Zero)
    }
}

/// Sparse combination of basis elements with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    id: AlgebraId,
    terms: BTreeMap<BasisIndex, Rational64>,
}

impl AlgebraElement {
    pub fn zero(id: AlgebraId) -> Self {
        AlgebraElement { id, terms: BTreeMap::new() }
    }

    pub fn basis(id: AlgebraId, b: BasisIndex) -> Self {
        let mut e = Self::zero(id);
        e.add_term(b, Rational64::from(1));
        e
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn terms(&self) -> &BTreeMap<BasisIndex, Rational64> {
        &self.terms
    }

    pub fn coeff(&self, b: BasisIndex) -> Rational64 {
        self.terms.get(&b).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: BasisIndex, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(Rational64::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.id != other.id {
            return Err(Error::MixedAlgebra);
        }
        let mut out = self.clone();
        for (&b, &c) in &other.terms {
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: Rational64) -> AlgebraElement {
        let mut out = Self::zero(self.id);
        for (&b, &c) in &self.terms {
            out.add_term(b, c * k);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(Rational64::from(-1))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a != Rational64::from(1) {
                write!(f, "{a}·")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Value of a Jacobiator on basis elements: at most three root terms and a
/// Cartan part built from coroots.
#[derive(Clone, Debug, Default)]
pub struct JacobiValue {
    terms: [BasisBracket; 3],
}

impl Default for BasisBracket {
    fn default() -> Self {
        BasisBracket::Zero
    }
}

impl JacobiValue {
    pub fn terms(&self) -> &[BasisBracket; 3] {
        &self.terms
    }
}

/// The algebra of one family and level, with every table the bracket needs.
#[derive(Clone, Debug)]
pub struct MagicStarAlgebra {
    system: RootSystem,
    basis: SimpleBasis,
    eps: EpsilonTable,
    decomp: Vec<Decomposition>,
    parity: Vec<u64>,
    row: Vec<u64>,
    /// `cartan[α·R + i] = (α, α_i)`
    cartan: Vec<i32>,
    partner_start: Vec<u32>,
    /// `(β, α+β)` for each `α`, sorted by `β`
    partners: Vec<(u32, u32)>,
}

impl MagicStarAlgebra {
    pub fn new(id: AlgebraId) -> Result<MagicStarAlgebra> {
        id.require_algebra()?;
        if id.expected_count() > ALGEBRA_LIMIT as u64 {
            return Err(Error::Capacity { level: id.level(), dim: id.dim(), limit: crate::family::MAX_COORDS });
        }
        let system = RootSystem::generate(id)?;
        Self::from_system(system)
    }

    pub fn from_system(system: RootSystem) -> Result<MagicStarAlgebra> {
        let id = system.id();
        id.require_algebra()?;
        let basis = SimpleBasis::new(id)?;
        let eps = EpsilonTable::new(&basis, &system);
        let decomp = system.roots().iter().map(|r| basis.decompose(r.coords())).collect::<Result<Vec<_>>>()?;
        let parity: Vec<u64> = decomp.iter().map(Decomposition::parity_mask).collect();
        let row: Vec<u64> = parity.iter().map(|&m| eps.row_mix(m)).collect();
        let r = id.rank();
        let simple: Vec<Packed> = basis
            .alphas()
            .iter()
            .map(|a| Packed::from_coords(a.coords()).expect("simple roots pack"))
            .collect();
        let mut cartan = Vec::with_capacity(system.len() * r);
        for a in 0..system.len() {
            let p = system.packed_at(a);
            for s in &simple {
                cartan.push(p.dot(*s) / 4);
            }
        }
        let (partner_start, partners) = build_partners(&system);
        Ok(MagicStarAlgebra { system, basis, eps, decomp, parity, row, cartan, partner_start, partners })
    }

    pub fn id(&self) -> AlgebraId {
        self.system.id()
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn basis(&self) -> &SimpleBasis {
        &self.basis
    }

    pub fn epsilon_table(&self) -> &EpsilonTable {
        &self.eps
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `R + |Φ|`
    pub fn dim(&self) -> usize {
        self.rank() + self.system.len()
    }

    /// Basis element by position: Cartan generators first.
    pub fn basis_at(&self, k: usize) -> BasisIndex {
        let r = self.rank();
        if k < r {
            BasisIndex::Cartan(k)
        } else {
            BasisIndex::Root(k - r)
        }
    }

    pub fn decomposition(&self, a: usize) -> &Decomposition {
        &self.decomp[a]
    }

    #[inline]
    pub fn parity(&self, a: usize) -> u64 {
        self.parity[a]
    }

    /// Row combination of the parity matrix selected by root `a`.
    #[inline]
    pub fn row(&self, a: usize) -> u64 {
        self.row[a]
    }

    /// `ε(α, β)` for root indices.
    #[inline]
    pub fn eps(&self, a: usize, b: usize) -> i32 {
        sign(self.row[a], self.parity[b])
    }

    /// `(α, α_i)`
    #[inline]
    pub fn cartan_action(&self, i: usize, a: usize) -> i64 {
        self.cartan[a * self.rank() + i] as i64
    }

    /// `[h_δ, x_γ] = Σ c_i (γ, α_i) x_γ` with `c = decompose(δ)`.
    #[inline]
    pub fn coroot_action(&self, delta: usize, gamma: usize) -> i64 {
        let r = self.rank();
        let row = &self.cartan[gamma * r..(gamma + 1) * r];
        self.decomp[delta].coeffs.iter().zip(row).map(|(c, &x)| c * x as i64).sum()
    }

    /// All `(β, α+β)` with `α + β ∈ Φ`.
    #[inline]
    pub fn partners(&self, a: usize) -> &[(u32, u32)] {
        &self.partners[self.partner_start[a] as usize..self.partner_start[a + 1] as usize]
    }

    pub fn partner_pair_count(&self) -> usize {
        self.partners.len()
    }

    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.system.sum_index(a, b)
    }

    pub fn bracket_basis(&self, x: BasisIndex, y: BasisIndex) -> BasisBracket {
        use BasisIndex::*;
        match (x, y) {
            (Cartan(_), Cartan(_)) => BasisBracket::Zero,
            (Cartan(i), Root(a)) => BasisBracket::Root { coeff: self.cartan_action(i, a), root: a }.scale(1),
            (Root(a), Cartan(i)) => BasisBracket::Root { coeff: -self.cartan_action(i, a), root: a }.scale(1),
            (Root(a), Root(b)) => {
                if self.system.negation(a) == b {
                    BasisBracket::Coroot { coeff: -1, root: a }
                } else if let Some(s) = self.sum(a, b) {
                    BasisBracket::Root { coeff: self.eps(a, b) as i64, root: s }
                } else {
                    BasisBracket::Zero
                }
            }
        }
    }

    /// `[t, z]` for a bracket value `t` and a basis element `z`.
    pub fn bracket_value(&self, t: BasisBracket, z: BasisIndex) -> BasisBracket {
        match (t, z) {
            (BasisBracket::Zero, _) => BasisBracket::Zero,
            (BasisBracket::Root { coeff, root }, z) => self.bracket_basis(BasisIndex::Root(root), z).scale(coeff),
            (BasisBracket::Coroot { .. }, BasisIndex::Cartan(_)) => BasisBracket::Zero,
            (BasisBracket::Coroot { coeff, root }, BasisIndex::Root(g)) => {
                BasisBracket::Root { coeff: coeff * self.coroot_action(root, g), root: g }.scale(1)
            }
        }
    }

    pub fn jacobi_basis(&self, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> JacobiValue {
        JacobiValue {
            terms: [
                self.bracket_value(self.bracket_basis(x, y), z),
                self.bracket_value(self.bracket_basis(y, z), x),
                self.bracket_value(self.bracket_basis(z, x), y),
            ],
        }
    }

    /// Whether a basis Jacobiator vanishes, comparing coefficients exactly.
    pub fn jacobi_vanishes(&self, j: &JacobiValue) -> bool {
        let t = &j.terms;
        if t.iter().all(BasisBracket::is_zero) {
            return true;
        }
        let mut cartan: Option<Vec<i64>> = None;
        let mut roots: [(usize, i64); 3] = [(usize::MAX, 0); 3];
        let mut nroots = 0;
        for term in t {
            match *term {
                BasisBracket::Zero => {}
                BasisBracket::Root { coeff, root } => {
                    if let Some(slot) = roots[..nroots].iter_mut().find(|s| s.0 == root) {
                        slot.1 += coeff;
                    } else {
                        roots[nroots] = (root, coeff);
                        nroots += 1;
                    }
                }
                BasisBracket::Coroot { coeff, root } => {
                    let acc = cartan.get_or_insert_with(|| vec![0; self.rank()]);
                    for (a, c) in acc.iter_mut().zip(&self.decomp[root].coeffs) {
                        *a += coeff * c;
                    }
                }
            }
        }
        roots[..nroots].iter().all(|s| s.1 == 0) && cartan.is_none_or(|c| c.iter().all(|&x| x == 0))
    }

    pub fn value_to_element(&self, t: BasisBracket) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.id());
        self.accumulate(&mut out, t, Rational64::from(1));
        out
    }

    pub fn jacobi_to_element(&self, j: &JacobiValue) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.id());
        for t in &j.terms {
            self.accumulate(&mut out, *t, Rational64::from(1));
        }
        out
    }

    fn accumulate(&self, out: &mut AlgebraElement, t: BasisBracket, k: Rational64) {
        match t {
            BasisBracket::Zero => {}
            BasisBracket::Root { coeff, root } => out.add_term(BasisIndex::Root(root), k * coeff),
            BasisBracket::Coroot { coeff, root } => {
                for (i, &c) in self.decomp[root].coeffs.iter().enumerate() {
                    out.add_term(BasisIndex::Cartan(i), k * coeff * c);
                }
            }
        }
    }

    pub fn element(&self, b: BasisIndex) -> AlgebraElement {
        AlgebraElement::basis(self.id(), b)
    }

    /// Basis element `x_α` from doubled coordinates.
    pub fn root_element(&self, coords: &[i32]) -> Result<AlgebraElement> {
        let a = self.system.index_of(coords).ok_or_else(|| Error::NotARoot(format!("{coords:?}")))?;
        Ok(self.element(BasisIndex::Root(a)))
    }

    fn check_id(&self, x: &AlgebraElement) -> Result<()> {
        if x.id() != self.id() {
            return Err(Error::MixedAlgebra);
        }
        if let Some((b, _)) = x.terms.iter().next_back() {
            let ok = match *b {
                BasisIndex::Cartan(i) => i < self.rank(),
                BasisIndex::Root(a) => a < self.system.len(),
            };
            if !ok {
                return Err(Error::Construction(format!("basis index {b} out of range")));
            }
        }
        Ok(())
    }

    /// Bilinear bracket of general elements.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_id(x)?;
        self.check_id(y)?;
        let mut out = AlgebraElement::zero(self.id());
        for (&a, &ca) in &x.terms {
            for (&b, &cb) in &y.terms {
                self.accumulate(&mut out, self.bracket_basis(a, b), ca * cb);
            }
        }
        Ok(out)
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`
    pub fn jacobiator(&self, x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> Result<AlgebraElement> {
        let j0 = self.bracket(&self.bracket(x, y)?, z)?;
        let j1 = self.bracket(&self.bracket(y, z)?, x)?;
        let j2 = self.bracket(&self.bracket(z, x)?, y)?;
        j0.add(&j1)?.add(&j2)
    }

    /// The spinorial Jacobi violation built from `α` and six distinct
    /// zero-based coordinate indices `(j, ℓ, m, r, s, t)`.
    pub fn jacobi_witness(&self, alpha: usize, indices: [usize; 6]) -> Result<JacobiWitness> {
        let id = self.id();
        let sys = &self.system;
        if id.level() < 2 {
            return Err(Error::Construction("the witness needs n ≥ 2".into()));
        }
        if alpha >= sys.len() || sys.is_orthogonal(alpha) {
            return Err(Error::Construction(format!("root {alpha} is not spinorial")));
        }
        let n = id.big_n();
        let mut seen = 0u64;
        for &i in &indices {
            if i >= n || seen >> i & 1 == 1 {
                return Err(Error::Construction("witness indices must be six distinct coordinates".into()));
            }
            seen |= 1 << i;
        }
        let a = sys.root(alpha).coords();
        let lam = |i: usize| a[i].signum();
        let mut beta: Vec<i32> = a.iter().map(|c| -c).collect();
        let mut gamma: Vec<i32> = a.to_vec();
        for &i in &indices[..2] {
            beta[i] += 2 * lam(i);
        }
        for &i in &indices {
            gamma[i] -= 2 * lam(i);
        }
        let find = |v: &[i32], what: &str| {
            sys.index_of(v).ok_or_else(|| Error::Construction(format!("{what} = {v:?} is not a root")))
        };
        let b = find(&beta, "beta")?;
        let g = find(&gamma, "gamma")?;
        let ab = sys.sum_index(alpha, b).ok_or_else(|| Error::Construction("alpha+beta is not a root".into()))?;
        let abg = sys.sum_index(ab, g).ok_or_else(|| Error::Construction("alpha+beta+gamma is not a root".into()))?;
        let zero_or_root = |x: usize, y: usize| sys.negation(x) == y || sys.sum_index(x, y).is_some();
        if zero_or_root(b, g) {
            return Err(Error::Construction("beta+gamma lies in Φ ∪ {0}".into()));
        }
        if zero_or_root(g, alpha) {
            return Err(Error::Construction("gamma+alpha lies in Φ ∪ {0}".into()));
        }
        let j = self.jacobi_basis(BasisIndex::Root(alpha), BasisIndex::Root(b), BasisIndex::Root(g));
        let value = self.jacobi_to_element(&j);
        let expected = (self.eps(alpha, b) * self.eps(ab, g)) as i64;
        Ok(JacobiWitness { alpha, beta: b, gamma: g, sum: abg, expected_sign: expected, value })
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let id = self.id();
        let r = self.rank();
        let len = self.system.len();
        let mut cartan = Vec::new();
        for i in 0..r {
            for a in 0..len {
                let v = self.cartan_action(i, a);
                if v != 0 {
                    cartan.push((i, a, v));
                }
            }
        }
        let mut roots = Vec::with_capacity(self.partners.len());
        for a in 0..len {
            for &(b, _) in self.partners(a) {
                roots.push((a, b as usize, self.eps(a, b as usize)));
            }
        }
        let opposite = (0..len).map(|a| (a, self.decomp[a].coeffs.clone())).collect();
        StructureConstants { id, dim: self.dim(), cartan, roots, opposite, sums: None }
    }
}

/// Output of [`MagicStarAlgebra::jacobi_witness`].
#[derive(Clone, Debug)]
pub struct JacobiWitness {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    /// index of `α + β + γ`
    pub sum: usize,
    /// `ε(α,β) ε(α+β,γ)`
    pub expected_sign: i64,
    pub value: AlgebraElement,
}

impl JacobiWitness {
    /// The Jacobiator equals `expected_sign · x_{α+β+γ}` and nothing else.
    pub fn is_expected(&self) -> bool {
        self.value.terms().len() == 1 && self.value.coeff(BasisIndex::Root(self.sum)) == Rational64::from(self.expected_sign)
    }
}

fn build_partners(sys: &RootSystem) -> (Vec<u32>, Vec<(u32, u32)>) {
    let n = sys.id().big_n();
    let mut start = Vec::with_capacity(sys.len() + 1);
    let mut out: Vec<(u32, u32)> = Vec::new();
    let mut local: Vec<(u32, u32)> = Vec::new();
    let push = |local: &mut Vec<(u32, u32)>, a: usize, b: usize| {
        if let Some(s) = sys.sum_index(a, b) {
            local.push((b as u32, s as u32));
        }
    };
    for a in 0..sys.len() {
        start.push(out.len() as u32);
        local.clear();
        let p = sys.packed_at(a);
        if p.wide {
            for b in sys.orthogonal_range() {
                push(&mut local, a, b);
            }
            for b in sys.spinorial_range() {
                let q = sys.packed_at(b);
                if (p.pos & q.pos) | (p.neg & q.neg) == 0 {
                    push(&mut local, a, b);
                }
            }
        } else {
            for i in 0..n {
                for j in i + 1..n {
                    let m = (1u64 << i) | (1u64 << j);
                    // spinor agreeing with `a` exactly on {i, j}
                    let s = Packed { pos: (p.neg & !m) | (p.pos & m), neg: (p.pos & !m) | (p.neg & m), wide: false };
                    // orthogonal root opposite to `a` on {i, j}
                    let o = Packed { pos: p.neg & m, neg: p.pos & m, wide: true };
                    for q in [s, o] {
                        if let Some(b) = sys.lookup(q) {
                            push(&mut local, a, b);
                        }
                    }
                }
            }
        }
        local.sort_unstable();
        out.extend_from_slice(&local);
    }
    start.push(out.len() as u32);
    (start, out)
}

/// Serializable bracket table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub id: AlgebraId,
    pub dim: usize,
    /// `(i, α, (α, α_i))`, nonzero entries only, `i` zero-based
    pub cartan: Vec<(usize, usize, i64)>,
    /// `(α, β, ε(α, β))` for every ordered pair with `α + β ∈ Φ`
    pub roots: Vec<(usize, usize, i32)>,
    /// `(α, h_α coefficients)`
    pub opposite: Vec<(usize, Vec<i64>)>,
    /// Sum lookup built on demand for [`StructureConstants::bracket_basis`].
    sums: Option<Lookup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Lookup {
    roots: BTreeMap<(usize, usize), i32>,
    cartan: BTreeMap<(usize, usize), i64>,
    system: Vec<Vec<i32>>,
}

impl StructureConstants {
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "#algebra={} n={} dim={}", self.id.family(), self.id.level(), self.dim)?;
        for &(i, a, v) in &self.cartan {
            writeln!(w, "C\t{}\t{a}\t{v}", i + 1)?;
        }
        for &(a, b, s) in &self.roots {
            writeln!(w, "R\t{a}\t{b}\t{s}")?;
        }
        for (a, c) in &self.opposite {
            let cs: Vec<String> = c.iter().map(i64::to_string).collect();
            writeln!(w, "O\t{a}\t{}", cs.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn read<R: BufRead>(r: R) -> Result<StructureConstants> {
        let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| bad(1, "empty file"))??;
        let field = |key: &str| -> Result<String> {
            header
                .trim_start_matches('#')
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')).map(str::to_string))
                .ok_or_else(|| bad(1, &format!("missing `{key}`")))
        };
        let family = field("algebra")?.parse().map_err(|e: String| bad(1, &e))?;
        let level = field("n")?.parse().map_err(|_| bad(1, "bad level"))?;
        let dim = field("dim")?.parse().map_err(|_| bad(1, "bad dim"))?;
        let id = AlgebraId::new(family, level)?;
        let (mut cartan, mut roots, mut opposite) = (Vec::new(), Vec::new(), Vec::new());
        for (k, line) in lines.enumerate() {
            let ln = k + 2;
            let line = line?;
            let parts: Vec<&str> = line.split('\t').collect();
            let num = |s: &str| s.parse::<i64>().map_err(|_| bad(ln, "bad number"));
            match parts.as_slice() {
                ["C", i, a, v] => {
                    let i = num(i)?;
                    if i < 1 {
                        return Err(bad(ln, "Cartan index starts at 1"));
                    }
                    cartan.push((i as usize - 1, num(a)? as usize, num(v)?));
                }
                ["R", a, b, s] => roots.push((num(a)? as usize, num(b)? as usize, num(s)? as i32)),
                ["O", a, cs] => {
                    let c = cs.split(' ').map(num).collect::<Result<Vec<_>>>()?;
                    opposite.push((num(a)? as usize, c));
                }
                _ => return Err(bad(ln, "unrecognized line")),
            }
        }
        Ok(StructureConstants { id, dim, cartan, roots, opposite, sums: None })
    }

    /// Prepares [`StructureConstants::bracket_basis`]; needs the root
    /// coordinates to locate `α + β`.
    pub fn index(&mut self, system: &RootSystem) {
        let roots = self.roots.iter().map(|&(a, b, s)| ((a, b), s)).collect();
        let cartan = self.cartan.iter().map(|&(i, a, v)| ((i, a), v)).collect();
        let coords = system.roots().iter().map(|r| r.coords().to_vec()).collect();
        self.sums = Some(Lookup { roots, cartan, system: coords });
    }

    /// Basis bracket read back from the table. Requires [`StructureConstants::index`].
    pub fn bracket_basis(&self, x: BasisIndex, y: BasisIndex) -> BasisBracket {
        use BasisIndex::*;
        let l = self.sums.as_ref().expect("call index() first");
        let cart = |i: usize, a: usize| l.cartan.get(&(i, a)).copied().unwrap_or(0);
        let r = match (x, y) {
            (Cartan(_), Cartan(_)) => BasisBracket::Zero,
            (Cartan(i), Root(a)) => BasisBracket::Root { coeff: cart(i, a), root: a },
            (Root(a), Cartan(i)) => BasisBracket::Root { coeff: -cart(i, a), root: a },
            (Root(a), Root(b)) => {
                let neg: Vec<i32> = l.system[a].iter().map(|c| -c).collect();
                if l.system[b] == neg {
                    BasisBracket::Coroot { coeff: -1, root: a }
                } else if let Some(&s) = l.roots.get(&(a, b)) {
                    let sum: Vec<i32> = l.system[a].iter().zip(&l.system[b]).map(|(p, q)| p + q).collect();
                    let root = l.system.iter().position(|v| *v == sum).expect("table sum is a root");
                    BasisBracket::Root { coeff: s as i64, root }
                } else {
                    BasisBracket::Zero
                }
            }
        };
        match r {
            BasisBracket::Root { coeff: 0, .. } => BasisBracket::Zero,
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;

    fn alg(f: Family, n: u32) -> MagicStarAlgebra {
        MagicStarAlgebra::new(AlgebraId::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn dimensions_at_level_one() {
        assert_eq!(alg(Family::E6, 1).dim(), 78);
        assert_eq!(alg(Family::E7, 1).dim(), 133);
        assert_eq!(alg(Family::E8, 1).dim(), 248);
    }

    #[test]
    fn rejects_families_without_algebra() {
        assert!(MagicStarAlgebra::new(AlgebraId::new(Family::F4, 1).unwrap()).is_err());
        assert!(MagicStarAlgebra::new(AlgebraId::new(Family::G2, 1).unwrap()).is_err());
    }

    #[test]
    fn partners_match_brute_force() {
        for (f, n) in [(Family::E6, 1), (Family::E7, 1), (Family::E8, 1), (Family::E6, 2), (Family::E7, 2), (Family::E8, 2)] {
            let a = alg(f, n);
            let sys = a.system();
            for x in 0..sys.len() {
                let brute: Vec<(u32, u32)> =
                    (0..sys.len()).filter_map(|y| sys.sum_index(x, y).map(|s| (y as u32, s as u32))).collect();
                assert_eq!(a.partners(x), brute.as_slice(), "{f} n={n} root {x}");
            }
        }
    }

    #[test]
    fn comrel_examples() {
        let a = alg(Family::E8, 2);
        let h = |i| a.element(BasisIndex::Cartan(i));
        assert!(a.bracket(&h(0), &h(1)).unwrap().is_zero());
        let alpha1 = a.system().index_of(a.basis().alpha(0).coords()).unwrap();
        let neg = a.system().negation(alpha1);
        let x = a.element(BasisIndex::Root(alpha1));
        let y = a.element(BasisIndex::Root(neg));
        assert_eq!(a.bracket(&x, &y).unwrap(), h(0).neg());
        // k1+k2 and k3+k4: orthogonal, sum not a root
        let mut p = vec![0; 12];
        p[0] = 2;
        p[1] = 2;
        let mut q = vec![0; 12];
        q[2] = 2;
        q[3] = 2;
        let (xp, xq) = (a.root_element(&p).unwrap(), a.root_element(&q).unwrap());
        assert!(a.bracket(&xp, &xq).unwrap().is_zero());
    }

    #[test]
    fn cartan_action_matches_inner() {
        let a = alg(Family::E7, 2);
        for r in 0..a.system().len() {
            for i in 0..a.rank() {
                let want = crate::lattice::inner(a.system().root(r), a.basis().alpha(i)).unwrap();
                assert_eq!(Rational64::from(a.cartan_action(i, r)), want);
            }
        }
    }

    #[test]
    fn fast_and_generic_brackets_agree() {
        let a = alg(Family::E6, 1);
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let (bx, by) = (a.basis_at(x), a.basis_at(y));
                let fast = a.value_to_element(a.bracket_basis(bx, by));
                let slow = a.bracket(&a.element(bx), &a.element(by)).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = alg(Family::E6, 1);
        let b = alg(Family::E7, 1);
        let x = b.element(BasisIndex::Cartan(0));
        assert!(matches!(a.bracket(&x, &x), Err(Error::MixedAlgebra)));
    }

    #[test]
    fn witness_at_level_two() {
        let a = alg(Family::E8, 2);
        let all_plus = a.system().index_of(&[1; 12]).unwrap();
        let w = a.jacobi_witness(all_plus, [0, 1, 2, 3, 4, 5]).unwrap();
        assert!(w.is_expected());
        assert!(!w.value.is_zero());
        let generic = a
            .jacobiator(
                &a.element(BasisIndex::Root(w.alpha)),
                &a.element(BasisIndex::Root(w.beta)),
                &a.element(BasisIndex::Root(w.gamma)),
            )
            .unwrap();
        assert_eq!(generic, w.value);
    }

    #[test]
    fn witness_rejected_at_level_one() {
        let a = alg(Family::E8, 1);
        let s = a.system().spinorial_range().start;
        assert!(a.jacobi_witness(s, [0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn structure_constants_round_trip() {
        let a = alg(Family::E6, 1);
        let sc = a.structure_constants();
        let text = sc.to_text();
        assert!(text.starts_with("#algebra=e6 n=1 dim=78\n"));
        let mut back = StructureConstants::read(text.as_bytes()).unwrap();
        assert_eq!(back, sc);
        back.index(a.system());
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let (bx, by) = (a.basis_at(x), a.basis_at(y));
                assert_eq!(back.bracket_basis(bx, by), a.bracket_basis(bx, by));
            }
        }
    }

    #[test]
    fn element_display() {
        let a = alg(Family::E6, 1);
        let mut e = a.element(BasisIndex::Cartan(0)).scale(Rational64::from(2));
        e.add_term(BasisIndex::Root(3), Rational64::from(-1));
        assert_eq!(e.to_string(), "2·h1 - x[3]");
    }
}
