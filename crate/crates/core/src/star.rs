//! The Magic Star projection, its cell tables, the nested star, the `e7`
//! decomposition and the gradings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::family::{AlgebraId, Family};
use crate::lattice::{self, RootSystem};
use crate::report::{Mode, VerifyReport};

/// Projection planes: `(k1−k2, k1+k2−2k3)` or `(k4−k5, k4+k5−2k6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axes {
    K123,
    K456,
}

impl Axes {
    /// Doubled coordinates of the two axis vectors.
    pub fn vectors(self, id: AlgebraId) -> (Vec<i32>, Vec<i32>) {
        let scale = id.coord_scale();
        let o = match self {
            Axes::K123 => 0,
            Axes::K456 => 3,
        };
        let mut a = vec![0; id.dim()];
        let mut b = vec![0; id.dim()];
        if o + 3 <= id.dim() {
            a[o] = scale;
            a[o + 1] = -scale;
            b[o] = scale;
            b[o + 1] = scale;
            b[o + 2] = -2 * scale;
        }
        (a, b)
    }

    pub fn name(self) -> &'static str {
        match self {
            Axes::K123 => "123",
            Axes::K456 => "456",
        }
    }
}

impl std::str::FromStr for Axes {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "123" => Ok(Axes::K123),
            "456" => Ok(Axes::K456),
            other => Err(format!("unknown axes `{other}` (expected 123 or 456)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCell {
    pub r: i64,
    pub s: i64,
    pub roots: Vec<usize>,
    /// orthogonal-like roots (including the short `f4` roots)
    pub orth: usize,
    pub spin: usize,
}

impl StarCell {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub type Star = BTreeMap<(i64, i64), StarCell>;

/// The 13 admissible positions.
pub const POSITIONS: [(i64, i64); 13] =
    [(0, 0), (2, 0), (-2, 0), (-1, 3), (1, -3), (-1, -3), (1, 3), (0, 2), (0, -2), (1, 1), (-1, -1), (-1, 1), (1, -1)];

pub const OUTER: [(i64, i64); 6] = [(2, 0), (-2, 0), (-1, 3), (1, -3), (-1, -3), (1, 3)];

pub const TIPS: [(i64, i64); 6] = [(0, 2), (0, -2), (1, 1), (-1, -1), (-1, 1), (1, -1)];

fn independent(a: &[i32], b: &[i32]) -> bool {
    let (aa, bb, ab) = (
        lattice::dot(a, a).unwrap_or(0) as i128,
        lattice::dot(b, b).unwrap_or(0) as i128,
        lattice::dot(a, b).unwrap_or(0) as i128,
    );
    aa != 0 && bb != 0 && aa * bb != ab * ab
}

/// Partitions `Φ` by the exact inner products with two axis vectors.
pub fn project(sys: &RootSystem, axis1: &[i32], axis2: &[i32]) -> Result<Star> {
    let id = sys.id();
    if axis1.len() != id.dim() || axis2.len() != id.dim() {
        return Err(Error::DimensionMismatch { expected: id.dim(), got: axis1.len().min(axis2.len()) });
    }
    if !independent(axis1, axis2) {
        return Err(Error::DegenerateAxes);
    }
    let sc = id.coord_scale() as i64;
    let mut star = Star::new();
    for (i, root) in sys.roots().iter().enumerate() {
        let d1 = lattice::dot(root.coords(), axis1)?;
        let d2 = lattice::dot(root.coords(), axis2)?;
        if d1 % (sc * sc) != 0 || d2 % (sc * sc) != 0 {
            return Err(Error::Construction(format!("root {i} projects to a non-integer point")));
        }
        let (r, s) = (d1 / (sc * sc), d2 / (sc * sc));
        let cell = star.entry((r, s)).or_insert_with(|| StarCell { r, s, roots: Vec::new(), orth: 0, spin: 0 });
        cell.roots.push(i);
        if root.sector().is_orthogonal_like() {
            cell.orth += 1;
        } else {
            cell.spin += 1;
        }
    }
    Ok(star)
}

pub fn project_axes(sys: &RootSystem, axes: Axes) -> Result<Star> {
    let (a, b) = axes.vectors(sys.id());
    project(sys, &a, &b)
}

/// Closed-form `(orth, spin)` counts of the center and of each tip.
pub fn table_counts(id: AlgebraId) -> Option<((u64, u64), (u64, u64))> {
    let n = id.big_n() as i64;
    let p = |e: i64| 1u64 << e;
    let (center, tip) = match id.family() {
        Family::F4 => ((2 * (n - 7) * (n - 7), p(n - 6)), (2 * n - 12, p(n - 7))),
        Family::E6 => ((2 * (n - 6) * (n - 7), p(n - 5)), (2 * n - 11, p(n - 6))),
        Family::E7 => ((2 * (n * n - 11 * n + 31), p(n - 4)), (2 * n - 9, p(n - 5))),
        Family::E8 => ((2 * (n - 3) * (n - 4), p(n - 3)), (2 * n - 5, p(n - 4))),
        Family::G2 => return None,
    };
    Some(((center.0 as u64, center.1), (tip.0 as u64, tip.1)))
}

fn counts(star: &Star, at: (i64, i64)) -> (u64, u64) {
    star.get(&at).map_or((0, 0), |c| (c.orth as u64, c.spin as u64))
}

/// Compares the star of `sys` against the table closed forms.
pub fn verify_tables(sys: &RootSystem) -> VerifyReport {
    let id = sys.id();
    let mut report = VerifyReport::new("tables", Some(id), Mode::Exhaustive);
    let star = match project_axes(sys, Axes::K123) {
        Ok(s) => s,
        Err(e) => {
            report.fail("projection", e.to_string());
            return report;
        }
    };
    let total: usize = star.values().map(StarCell::len).sum();
    report.expect("partition", total == sys.len(), || format!("cells hold {total} of {} roots", sys.len()));
    report.expect("total-count", sys.len() as u64 == id.expected_count(), || {
        format!("{} roots, closed form {}", sys.len(), id.expected_count())
    });
    for key in star.keys() {
        report.expect("positions", POSITIONS.contains(key), || format!("cell at {key:?}"));
    }
    for p in OUTER {
        let c = counts(&star, p);
        report.expect("outer", c == (1, 0), || format!("outer point {p:?} holds {c:?}"));
    }
    for p in OUTER.iter().filter(|p| p.0 > 0) {
        let pair = counts(&star, *p).0 + counts(&star, (-p.0, -p.1)).0;
        report.expect("outer-pair", pair == 2, || format!("± pair at {p:?} holds {pair}"));
    }
    report.note("outer points: 1 root per signed point (signed convention), 2 per ± pair (pair convention)");
    let Some((center, tip)) = table_counts(id) else {
        report.note("g2: no closed-form table; partition and positions only");
        return report;
    };
    let c = counts(&star, (0, 0));
    report.expect("center", c == center, || format!("center {c:?}, closed form {center:?}"));
    for p in TIPS {
        let c = counts(&star, p);
        report.expect("tip", c == tip, || format!("tip {p:?} {c:?}, closed form {tip:?}"));
    }
    report.note(format!(
        "center {}+{}, each tip {}+{}",
        center.0, center.1, tip.0, tip.1
    ));
    report
}

/// The center cell of the `123` star projected on the `456` axes.
pub fn project_nested(sys: &RootSystem) -> Result<Star> {
    let outer = project_axes(sys, Axes::K123)?;
    let center: BTreeSet<usize> = outer.get(&(0, 0)).map(|c| c.roots.iter().copied().collect()).unwrap_or_default();
    let mut star = Star::new();
    for (&p, cell) in &project_axes(sys, Axes::K456)? {
        let roots: Vec<usize> = cell.roots.iter().copied().filter(|i| center.contains(i)).collect();
        if roots.is_empty() {
            continue;
        }
        let orth = roots.iter().filter(|&&i| sys.sector(i).is_orthogonal_like()).count();
        let spin = roots.len() - orth;
        star.insert(p, StarCell { r: p.0, s: p.1, roots, orth, spin });
    }
    Ok(star)
}

/// `(c_4, …, c_N, c_1, c_2, c_3)`: moves the tied triple to the end.
fn nest_map(c: &[i32]) -> Vec<i32> {
    c[3..].iter().chain(&c[..3]).copied().collect()
}

/// The `e8` center cell, relabeled, is exactly the generated `e6` root set.
pub fn verify_nested_star(level: u32) -> Result<VerifyReport> {
    let e8 = RootSystem::generate(AlgebraId::new(Family::E8, level)?)?;
    let e6 = RootSystem::generate(AlgebraId::new(Family::E6, level)?)?;
    let mut report = VerifyReport::new("nested", Some(e8.id()), Mode::Exhaustive);
    let star = project_axes(&e8, Axes::K123)?;
    let center = star.get(&(0, 0)).map(|c| c.roots.clone()).unwrap_or_default();
    let mut image = BTreeSet::new();
    for &i in &center {
        let mapped = nest_map(e8.root(i).coords());
        match e6.index_of(&mapped) {
            Some(j) => {
                report.expect("injective", image.insert(j), || format!("two center roots map to e6 root {j}"));
                let neg = nest_map(e8.root(e8.negation(i)).coords());
                report.expect("negation", e6.index_of(&neg) == Some(e6.negation(j)), || format!("root {i}"));
                report.expect("sector", e6.sector(j) == e8.sector(i), || format!("root {i}"));
            }
            None => report.fail("onto-e6", format!("center root {i} = {:?} maps outside e6", e8.root(i).coords())),
        }
    }
    report.expect("bijection", image.len() == e6.len() && center.len() == e6.len(), || {
        format!("{} center roots, {} images, {} e6 roots", center.len(), image.len(), e6.len())
    });

    // parity transport over all sign choices of N−3 free coordinates and the tied sign
    let n = e8.id().big_n();
    if n - 2 <= 20 {
        for mask in 0u64..1 << (n - 2) {
            let free = mask & ((1 << (n - 3)) - 1);
            let tied = mask >> (n - 3) & 1;
            let expanded_plus = free.count_ones() + 3 * tied as u32;
            let short_plus = mask.count_ones();
            report.expect("parity-transport", expanded_plus % 2 == short_plus % 2, || format!("mask {mask:b}"));
        }
    } else {
        report.note("parity transport checked structurally only above n = 4");
    }

    // sub-star of the center
    let nn = n as i64;
    let ortho_identity = 6 + 2 * (nn - 6) * (nn - 7) + 6 * (2 * nn - 11) == 2 * (nn - 3) * (nn - 4);
    report.expect("orthogonal-identity", ortho_identity, || format!("N = {n}"));
    let mut cells: BTreeMap<(i64, i64), (u64, u64)> = BTreeMap::new();
    for (&p, c) in &project_nested(&e8)? {
        cells.insert(p, (c.orth as u64, c.spin as u64));
    }
    let tip = ((2 * nn - 11) as u64, 1u64 << (nn - 6));
    let mid = ((2 * (nn - 6) * (nn - 7)) as u64, 1u64 << (nn - 5));
    for p in TIPS {
        let c = cells.get(&p).copied().unwrap_or_default();
        report.expect("sub-star-tip", c == tip, || format!("tip {p:?} {c:?}, closed form {tip:?}"));
    }
    let c = cells.get(&(0, 0)).copied().unwrap_or_default();
    report.expect("sub-star-center", c == mid, || format!("center {c:?}, closed form {mid:?}"));
    for p in OUTER {
        let c = cells.get(&p).copied().unwrap_or_default();
        report.expect("sub-star-outer", c == (1, 0), || format!("outer {p:?} {c:?}"));
    }
    report.note(format!("{} center roots relabeled onto e6 (n={level})", center.len()));
    Ok(report)
}

/// Admissible tip pairs and the coordinate pair `{i, j}` whose difference
/// `k_i − k_j` is orthogonal to the corresponding three cells.
pub const E7_CHOICES: [((i64, i64), (usize, usize)); 3] = [((1, 1), (1, 2)), ((-1, 1), (0, 2)), ((0, -2), (0, 1))];

/// Moves the coordinate pair `{i, j}` to the `v` block, keeping the order of
/// the rest.
fn e7_map(c: &[i32], pair: (usize, usize)) -> Vec<i32> {
    let mut out: Vec<i32> = (0..c.len()).filter(|&k| k != pair.0 && k != pair.1).map(|k| c[k]).collect();
    out.push(c[pair.0]);
    out.push(c[pair.1]);
    out
}

/// `e7 = e6 ⊕ T_(r,s) ⊕ T_(−r,−s)` for each admissible `(r, s)`: counts, and
/// an explicit bijection onto the generated `e7` roots.
pub fn verify_e7_decomposition(level: u32) -> Result<VerifyReport> {
    let e8 = RootSystem::generate(AlgebraId::new(Family::E8, level)?)?;
    let e7 = RootSystem::generate(AlgebraId::new(Family::E7, level)?)?;
    let mut report = VerifyReport::new("e7-decomposition", Some(e7.id()), Mode::Exhaustive);
    let star = project_axes(&e8, Axes::K123)?;
    let size = |p: (i64, i64)| star.get(&p).map_or(0, StarCell::len);
    let center = size((0, 0));
    for ((r, s), pair) in E7_CHOICES {
        let (t, tn) = (size((r, s)), size((-r, -s)));
        report.expect("count", center + t + tn == e7.len(), || {
            format!("(r,s)=({r},{s}): {center} + {t} + {tn} != {}", e7.len())
        });
        report.expect("closed-form", e7.len() as u64 == e7.id().expected_count(), || {
            format!("{} e7 roots, closed form {}", e7.len(), e7.id().expected_count())
        });
        let union: BTreeSet<usize> = [(0, 0), (r, s), (-r, -s)]
            .iter()
            .filter_map(|p| star.get(p))
            .flat_map(|c| c.roots.iter().copied())
            .collect();
        let perp: BTreeSet<usize> =
            (0..e8.len()).filter(|&i| e8.root(i).coords()[pair.0] == e8.root(i).coords()[pair.1]).collect();
        report.expect("orthogonal-complement", union == perp, || {
            format!("(r,s)=({r},{s}): union differs from the roots orthogonal to k{}-k{}", pair.0 + 1, pair.1 + 1)
        });
        let mut image = BTreeSet::new();
        for &i in &union {
            match e7.index_of(&e7_map(e8.root(i).coords(), pair)) {
                Some(j) => {
                    report.expect("injective", image.insert(j), || format!("(r,s)=({r},{s}) root {i}"));
                }
                None => report.fail("onto-e7", format!("(r,s)=({r},{s}): e8 root {i} maps outside e7")),
            }
        }
        report.expect("bijection", image.len() == e7.len(), || {
            format!("(r,s)=({r},{s}): {} of {} e7 roots reached", image.len(), e7.len())
        });
        report.note(format!("(r,s)=({r},{s}): {center} + {t} + {tn} = {}", e7.len()));
    }
    Ok(report)
}

/// Grade of a root under the gradings of `e6`, `e7` and `e8`.
///
/// `e8`: `2(x, k_N)`; `e7`: `−(x, v)` with `v = k_{N−1} + k_N`, so `±v` has
/// grade `∓2`; `e6`: `⅔(x, u)` with `u = k_{N−2} + k_{N−1} + k_N`.
pub fn grade(id: AlgebraId, coords: &[i32]) -> Result<i32> {
    if !lattice::admits(id, coords) {
        return Err(Error::NotARoot(format!("{coords:?}")));
    }
    let n = id.big_n();
    match id.family() {
        Family::E8 => Ok(coords[n - 1]),
        Family::E7 => Ok(-(coords[n - 2] + coords[n - 1]) / 2),
        Family::E6 => {
            let s = coords[n - 3] + coords[n - 2] + coords[n - 1];
            if s % 3 != 0 {
                return Err(Error::Construction("e6 grade is not integral".into()));
            }
            Ok(s / 3)
        }
        f => Err(Error::Unsupported { family: f, reason: "gradings are defined for e6, e7 and e8" }),
    }
}

/// Expected number of roots in each grade `−2..=2`.
pub fn grade_sizes(id: AlgebraId) -> Option<[u64; 5]> {
    let n = id.big_n() as u64;
    let lvl = id.level() as u64;
    Some(match id.family() {
        Family::E8 => {
            let (two, one) = (8 * lvl + 6, 1u64 << (4 * lvl + 2));
            [two, one, 2 * (n - 1) * (n - 2), one, two]
        }
        Family::E7 => {
            let one = 1u64 << (4 * lvl + 1);
            [1, one, 2 * (n - 2) * (n - 3), one, 1]
        }
        Family::E6 => {
            let one = 1u64 << (4 * lvl);
            [0, one, 2 * (n - 3) * (n - 4), one, 0]
        }
        _ => return None,
    })
}

/// Piece sizes, `grade(−x) = −grade(x)` and additivity on pairs whose sum is
/// a root.
pub fn check_gradings(sys: &RootSystem, mode: Mode) -> VerifyReport {
    let id = sys.id();
    let mut report = VerifyReport::new("grading", Some(id), mode);
    let Some(expected) = grade_sizes(id) else {
        report.note(format!("{}: no grading", id.family()));
        return report;
    };
    let grades: Vec<i32> = match sys.roots().iter().map(|r| grade(id, r.coords())).collect::<Result<Vec<_>>>() {
        Ok(g) => g,
        Err(e) => {
            report.fail("grade", e.to_string());
            return report;
        }
    };
    let mut sizes = [0u64; 5];
    for &g in &grades {
        sizes[(g + 2) as usize] += 1;
    }
    report.expect("sizes", sizes == expected, || format!("grades -2..2 hold {sizes:?}, expected {expected:?}"));
    for i in 0..sys.len() {
        report.expect("odd", grades[sys.negation(i)] == -grades[i], || format!("root {i}"));
    }
    if id.family() == Family::E7 {
        report.note("convention: grade = -(x, v), so +v sits in grade -2 and -v in grade +2");
    }
    let len = sys.len();
    let pair = |a: usize, b: usize, out: &mut crate::sweep::Outcome| {
        if let Some(s) = sys.sum_index(a, b) {
            out.check("additive", grades[s] == grades[a] + grades[b], (a as u64, b as u64, 0), || {
                format!("roots {a} + {b} = {s}")
            });
        }
    };
    let out = match mode {
        Mode::Exhaustive => crate::sweep::over_range(len, |a, out| {
            for b in 0..len {
                pair(a, b, out);
            }
        }),
        Mode::Sampled { samples, seed } => crate::sweep::sampled(samples, seed, |_, rng, out| {
            pair(crate::sweep::pick(rng, len), crate::sweep::pick(rng, len), out);
        }),
    };
    report.absorb(out);
    report.note(format!("sizes -2..2: {sizes:?}"));
    report
}

/// Cell table as `r  s  orth  spin  indices`.
pub fn cells_tsv(id: AlgebraId, axes: Axes, star: &Star) -> String {
    let mut s = format!("#algebra={} n={} axes={}\n", id.family(), id.level(), axes.name());
    for c in star.values() {
        let idx: Vec<String> = c.roots.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", c.r, c.s, c.orth, c.spin, idx.join(" "));
    }
    s
}

const SVG_SIZE: f64 = 480.0;
const SVG_UNIT: f64 = 70.0;

/// Deterministic SVG of the star: axes plus one labeled node per cell.
pub fn star_svg(title: &str, star: &Star) -> String {
    let c = SVG_SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_SIZE:.0}\" height=\"{SVG_SIZE:.0}\" viewBox=\"0 0 {SVG_SIZE:.0} {SVG_SIZE:.0}\">"
    );
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(s, "<line x1=\"20\" y1=\"{c:.3}\" x2=\"{:.3}\" y2=\"{c:.3}\" stroke=\"#999\"/>", SVG_SIZE - 20.0);
    let _ = writeln!(s, "<line x1=\"{c:.3}\" y1=\"20\" x2=\"{c:.3}\" y2=\"{:.3}\" stroke=\"#999\"/>", SVG_SIZE - 20.0);
    for cell in star.values() {
        let x = c + SVG_UNIT * cell.r as f64 / 2f64.sqrt();
        let y = c - SVG_UNIT * cell.s as f64 / 6f64.sqrt();
        let _ = writeln!(s, "<g class=\"cell\" data-r=\"{}\" data-s=\"{}\">", cell.r, cell.s);
        let _ = writeln!(s, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"16\" fill=\"#dde8f6\" stroke=\"#335\"/>");
        let _ = writeln!(
            s,
            "  <text x=\"{x:.3}\" y=\"{:.3}\" font-size=\"10\" text-anchor=\"middle\">{}+{}</text>",
            y + 3.5,
            cell.orth,
            cell.spin
        );
        let _ = writeln!(
            s,
            "  <text x=\"{x:.3}\" y=\"{:.3}\" font-size=\"8\" text-anchor=\"middle\" fill=\"#666\">({},{})</text>",
            y + 27.0,
            cell.r,
            cell.s
        );
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}

pub fn emit_star_svg<W: Write>(title: &str, star: &Star, mut w: W) -> Result<()> {
    w.write_all(star_svg(title, star).as_bytes())?;
    Ok(())
}
