//! Root-level propositions: reflection closure, simple-root decomposition and
//! the inner-product criteria for sums and differences.

use num_rational::Rational64;
use num_traits::Signed;

use crate::family::{AlgebraId, Family};
use crate::lattice::{self, RootSystem, Sector};
use crate::report::{Mode, VerifyReport};
use crate::simple::{Decomposition, SimpleBasis};
use crate::sweep::{self, Outcome};

/// A spinorial reflection that leaves `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionWitness {
    pub rho: usize,
    pub x: usize,
    /// `w_ρ(x)` in doubled coordinates
    pub image: Vec<Rational64>,
}

impl ReflectionWitness {
    /// Largest `|ν_j|` among the doubled coordinates of the image.
    pub fn max_coordinate(&self) -> Rational64 {
        self.image.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

fn reflect_index(sys: &RootSystem, x: usize, rho: usize) -> (Vec<Rational64>, Option<usize>) {
    let image = lattice::weyl_reflect(sys.root(x).coords(), sys.root(rho).coords()).expect("same dimension");
    let idx = lattice::integral(&image).and_then(|v| sys.index_of(&v));
    (image, idx)
}

fn cartan_integer(sys: &RootSystem, x: usize, rho: usize) -> bool {
    let d = sys.dot(x, rho);
    let rr = sys.dot(rho, rho);
    (2 * d) % rr == 0
}

/// The spinor pair agreeing on exactly the first two coordinates. Exists for
/// the `e` families; its reflection leaves `Φ` for `n ≥ 2`.
pub fn weyl_witness(sys: &RootSystem) -> Option<ReflectionWitness> {
    let id = sys.id();
    if !matches!(id.family(), Family::E6 | Family::E7 | Family::E8) {
        return None;
    }
    let spin = sys.spinorial_range();
    let rho = spin.start;
    let r = sys.root(rho).coords();
    let mut x: Vec<i32> = r.iter().map(|c| -c).collect();
    x[0] = r[0];
    x[1] = r[1];
    let x = sys.index_of(&x)?;
    let (image, idx) = reflect_index(sys, x, rho);
    idx.is_none().then_some(ReflectionWitness { rho, x, image })
}

/// Reflection closure under every orthogonal root; at level one (and for
/// `g2`) under every root; plus the spinorial counterexample for `n ≥ 2`.
pub fn check_weyl(sys: &RootSystem, mode: Mode) -> VerifyReport {
    let id = sys.id();
    let mut report = VerifyReport::new("weyl", Some(id), mode);
    let len = sys.len();
    let full = id.level() == 1 || id.family() == Family::G2;
    let mirrors: Vec<usize> = if full {
        (0..len).collect()
    } else {
        (0..len).filter(|&i| sys.sector(i) == Sector::Orthogonal).collect()
    };
    let pair = |rho: usize, x: usize, out: &mut Outcome| {
        let key = (rho as u64, x as u64, 0);
        out.check("cartan-integer", cartan_integer(sys, x, rho), key, || format!("x={x} rho={rho}"));
        let (image, idx) = reflect_index(sys, x, rho);
        out.check("closure", idx.is_some(), key, || format!("w_{rho}({x}) = {image:?} is not a root"));
    };
    let out = match mode {
        Mode::Exhaustive => sweep::over_range(mirrors.len(), |k, out| {
            for x in 0..len {
                pair(mirrors[k], x, out);
            }
        }),
        Mode::Sampled { samples, seed } => sweep::sampled(samples, seed, |_, rng, out| {
            let rho = mirrors[sweep::pick(rng, mirrors.len())];
            pair(rho, sweep::pick(rng, len), out);
        }),
    };
    report.absorb(out);
    report.note(if full {
        "mirrors: every root".to_string()
    } else {
        format!("mirrors: the {} roots ±k_i±k_j", mirrors.len())
    });

    if id.level() >= 2 && id.family() != Family::G2 && id.family() != Family::F4 {
        let w = weyl_witness(sys);
        report.expect("spinor-witness", w.is_some(), || "no spinorial reflection leaves Φ".to_string());
        if let Some(w) = w {
            let n = id.level() as i64;
            let expect = Rational64::new(3 * n + 1, n + 1);
            report.expect("spinor-witness-coordinate", w.image[0].abs() == expect, || {
                format!("|ν_1| = {} instead of {expect}", w.image[0].abs())
            });
            let shown: Vec<String> = w.image.iter().map(|c| c.to_string()).collect();
            report.note(format!(
                "spinor reflection leaves Φ: rho={} x={} w(x)=({}) with |ν_1|={}",
                w.rho,
                w.x,
                shown.join(" "),
                w.image[0].abs()
            ));
        }
    }
    report
}

/// The closed-form expansion of a positive orthogonal root when one of the
/// explicit formulas covers it. Coordinates are one-based as in `k_1 … k_N`.
pub fn positive_root_formula(id: AlgebraId, coords: &[i32]) -> Option<Decomposition> {
    let r = id.rank();
    let n = id.level() as i64;
    let big = id.big_n();
    let nz: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] != 0).collect();
    if nz.len() != 2 || coords[nz[0]].abs() != 2 || coords[nz[1]].abs() != 2 {
        return None;
    }
    let mut c = vec![0i64; r];
    // one-based helpers
    let add_range = |c: &mut Vec<i64>, from: usize, to: usize, w: &dyn Fn(usize) -> i64| {
        for l in from..=to {
            if l >= 1 && l <= r {
                c[l - 1] += w(l);
            }
        }
    };
    let (i, j) = (nz[0] + 1, nz[1] + 1);
    let (si, sj) = (coords[nz[0]].signum(), coords[nz[1]].signum());
    if j <= r - 1 {
        match (si, sj) {
            (1, 1) => {
                if r >= 3 {
                    add_range(&mut c, i, r - 3, &|_| 1);
                }
                add_range(&mut c, j, r - 2, &|_| 1);
                c[r - 2] += 1;
            }
            (1, -1) => add_range(&mut c, i, j - 1, &|_| 1),
            _ => return None,
        }
        return Some(Decomposition { coeffs: c });
    }
    match id.family() {
        Family::E7 if (i, j) == (big - 1, big) && si == -1 && sj == -1 => {
            c[r - 1] = 2;
            add_range(&mut c, 1, r - 3, &|l| l as i64);
            c[r - 3] += 2 * n;
            c[r - 2] += 2 * n + 1;
            Some(Decomposition { coeffs: c })
        }
        Family::E8 if j == big && sj == -1 => {
            let pm = si as i64;
            let half = |x: i64| (1 + x) / 2;
            c[r - 1] = 2;
            if i <= big - 2 {
                add_range(&mut c, 1, i - 1, &|l| l as i64);
                add_range(&mut c, i, big - 3, &|l| l as i64 + pm);
                c[big - 3] += 2 * n + half(pm);
                c[big - 2] += 2 * n + 1 + half(pm);
            } else {
                add_range(&mut c, 1, big - 3, &|l| l as i64);
                c[big - 3] += 2 * n + half(-pm);
                c[big - 2] += 2 * n + 1 + half(pm);
            }
            Some(Decomposition { coeffs: c })
        }
        _ => None,
    }
}

/// Integer, uniform-sign decomposition of every root with the `m_R` pattern,
/// round trips, and agreement with the explicit positive-root formulas.
pub fn check_simple(sys: &RootSystem, basis: &SimpleBasis, mode: Mode) -> VerifyReport {
    let id = sys.id();
    let mut report = VerifyReport::new("simple", Some(id), mode);
    let len = sys.len();
    let one = |a: usize, key: (u64, u64, u64), out: &mut Outcome| {
        let root = sys.root(a);
        match basis.decompose(root.coords()) {
            Ok(d) => {
                out.check("uniform-sign", d.has_uniform_sign(), key, || format!("root {a}: {:?}", d.coeffs));
                let m = d.last();
                let ok = match root.sector() {
                    Sector::Spinorial => m.abs() == 1,
                    _ => matches!(m, 0 | 2 | -2),
                };
                out.check("m_R", ok, key, || format!("root {a} ({}) has m_R = {m}", root.sector()));
                out.check("round-trip", basis.lattice_element(&d) == root.coords(), key, || format!("root {a}"));
                if let Some(f) = positive_root_formula(id, root.coords()) {
                    out.check("formula", f == d, key, || format!("root {a}: solver {:?}, formula {:?}", d.coeffs, f.coeffs));
                    out.bump("formula-covered", 1);
                }
            }
            Err(e) => out.record("integral", key, || format!("root {a}: {e}")),
        }
    };
    let out = match mode {
        Mode::Exhaustive => sweep::over_range(len, |a, out| one(a, (a as u64, 0, 0), out)),
        Mode::Sampled { samples, seed } => sweep::sampled(samples, seed, |k, rng, out| {
            let a = sweep::pick(rng, len);
            one(a, (k, a as u64, 0), out)
        }),
    };
    let covered = out.counter("formula-covered");
    report.absorb(out);
    report.note(format!("{covered} positive orthogonal roots compared against the explicit formulas"));

    // round trip on unit coefficient vectors
    let r = basis.rank();
    for i in 0..r {
        let u = Decomposition::unit(r, i);
        let v = basis.lattice_element(&u);
        report.expect("unit-round-trip", basis.decompose(&v).ok() == Some(u), || format!("alpha_{}", i + 1));
    }
    report
}

/// Inner-product ranges and the sum/difference criteria on root pairs, with
/// the popcount formula as an oracle for spinor inner products.
pub fn check_sums(sys: &RootSystem, mode: Mode) -> VerifyReport {
    let id = sys.id();
    let mut report = VerifyReport::new("sums", Some(id), mode);
    if !id.family().has_algebra() {
        report.note(format!("{}: the criteria assume one root length; skipped", id.family()));
        return report;
    }
    let n = id.level() as i64;
    let big = id.big_n() as i64;
    let len = sys.len();
    let pair = |a: usize, b: usize, out: &mut Outcome| {
        let key = (a as u64, b as u64, 0);
        let ip = sys.inner(a, b);
        let w = || format!("roots {a}, {b}: (a,b) = {ip}");
        if !ip.is_integer() {
            out.record("integral", key, w);
            return;
        }
        let ip = ip.to_integer();
        let plus = sys.sum_index(a, b).is_some();
        let minus = sys.diff_index(a, b).is_some();
        out.check("not-both", !(plus && minus), key, w);
        let (ao, bo) = (sys.is_orthogonal(a), sys.is_orthogonal(b));
        if ao || bo {
            out.check("range-orthogonal", (-2..=2).contains(&ip), key, w);
            out.check("sum-iff", plus == (ip == -1), key, w);
            out.check("difference-iff", minus == (ip == 1), key, w);
            let zero_or_root = |x: bool, is_zero: bool| x || is_zero;
            let neither = !zero_or_root(plus, sys.negation(a) == b) && !zero_or_root(minus, a == b);
            if neither {
                out.check("orthogonal-when-neither", ip == 0, key, w);
            }
        } else {
            out.check("range-spinorial", ip.abs() <= n + 1, key, w);
            out.check("sum-iff", plus == (ip == -n), key, w);
            out.check("difference-iff", minus == (ip == n), key, w);
            let (ma, mb) = (sys.root(a).sign_mask(), sys.root(b).sign_mask());
            let pop = (ma ^ mb).count_ones() as i64;
            out.check("popcount-oracle", Rational64::new(big - 2 * pop, 4) == Rational64::from(ip), key, w);
        }
    };
    let out = match mode {
        Mode::Exhaustive => sweep::over_range(len, |a, out| {
            for b in 0..len {
                pair(a, b, out);
            }
        }),
        Mode::Sampled { samples, seed } => sweep::sampled(samples, seed, |_, rng, out| {
            pair(sweep::pick(rng, len), sweep::pick(rng, len), out);
        }),
    };
    report.absorb(out);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: u32) -> RootSystem {
        RootSystem::generate(AlgebraId::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn closure_at_level_one() {
        for f in Family::ALL {
            let r = check_weyl(&sys(f, 1), Mode::Exhaustive);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn witness_leaves_the_set() {
        for n in 2..=4 {
            let s = sys(Family::E8, n);
            let w = weyl_witness(&s).expect("witness");
            let n = n as i64;
            assert_eq!(w.max_coordinate(), Rational64::new(3 * n + 1, n + 1));
        }
        assert!(weyl_witness(&sys(Family::E8, 1)).is_none());
    }

    #[test]
    fn formulas_cover_half_the_orthogonal_roots() {
        let s = sys(Family::E8, 2);
        let covered = s.roots().iter().filter(|r| positive_root_formula(s.id(), r.coords()).is_some()).count();
        assert_eq!(covered, s.orthogonal_range().len() / 2);
    }

    #[test]
    fn simple_and_sums_at_level_one() {
        for f in [Family::E6, Family::E7, Family::E8] {
            let s = sys(f, 1);
            let b = SimpleBasis::new(s.id()).unwrap();
            let r = check_simple(&s, &b, Mode::Exhaustive);
            assert!(r.passed(), "{r}");
            let r = check_sums(&s, Mode::Exhaustive);
            assert!(r.passed(), "{r}");
        }
    }
}
