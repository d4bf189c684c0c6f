//! The asymmetry function `ε: 𝕃 × 𝕃 → {±1}`.
//!
//! `ε` is bimultiplicative and fixed on `Δ × Δ` by the parity matrix, so
//! `ε(a, b) = (−1)^(aᵀ P b)` with `a`, `b` read mod 2. Row combinations of `P`
//! are cached per root by [`crate::MagicStarAlgebra`], which turns every
//! evaluation into one `AND` and a popcount.

use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::MagicStarAlgebra;
use crate::lattice::{PackedSum, RootSystem};
use crate::report::{Mode, VerifyReport};
use crate::simple::{Decomposition, SimpleBasis};
use crate::sweep::{self, Outcome};
use crate::family::AlgebraId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    id: AlgebraId,
    /// `rows[i]` has bit `j` set iff `ε(α_i, α_j) = −1`.
    rows: Vec<u64>,
}

impl EpsilonTable {
    pub fn new(basis: &SimpleBasis, system: &RootSystem) -> EpsilonTable {
        let r = basis.rank();
        let mut rows = vec![0u64; r];
        for i in 0..r {
            rows[i] |= 1 << i;
            for j in i + 1..r {
                let sum: Vec<i32> =
                    basis.alpha(i).coords().iter().zip(basis.alpha(j).coords()).map(|(a, b)| a + b).collect();
                if system.is_root(&sum) {
                    rows[i] |= 1 << j;
                }
            }
        }
        EpsilonTable { id: basis.id(), rows }
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `parity[i][j]`, zero-based.
    pub fn parity(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// XOR of the rows selected by `mask`; `ε(a, b) = (−1)^popcount(row_mix(a) & b)`.
    pub fn row_mix(&self, mask: u64) -> u64 {
        let mut q = 0;
        let mut m = mask;
        while m != 0 {
            q ^= self.rows[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        q
    }

    pub fn epsilon_masks(&self, a: u64, b: u64) -> i32 {
        sign(self.row_mix(a), b)
    }

    pub fn epsilon(&self, a: &Decomposition, b: &Decomposition) -> i32 {
        self.epsilon_masks(a.parity_mask(), b.parity_mask())
    }
}

/// `(−1)^popcount(q & b)`.
#[inline]
pub fn sign(q: u64, b: u64) -> i32 {
    1 - 2 * ((q & b).count_ones() & 1) as i32
}

#[inline]
fn pow_neg1(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn gram_form(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai != 0 {
            for (j, &bj) in b.iter().enumerate() {
                s += ai * g[i][j] * bj;
            }
        }
    }
    s
}

/// `½(a,a) − m_R²(n−1)/2` as an exact rational.
pub fn self_exponent(g: &[Vec<i64>], level: u32, a: &Decomposition) -> Rational64 {
    let n = level as i64;
    let m = a.last();
    Rational64::new(gram_form(g, &a.coeffs, &a.coeffs), 2) - Rational64::new(m * m * (n - 1), 2)
}

/// `(a,b) − m_R n_R (n−1)`.
pub fn swap_exponent(g: &[Vec<i64>], level: u32, a: &Decomposition, b: &Decomposition) -> i64 {
    gram_form(g, &a.coeffs, &b.coeffs) - a.last() * b.last() * (level as i64 - 1)
}

fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> Decomposition {
    Decomposition { coeffs: (0..rank).map(|_| rng.random_range(-3..=3)).collect() }
}

fn show(d: &Decomposition) -> String {
    format!("{:?}", d.coeffs)
}

/// Properties i–vii of the bimultiplicative structure, on seeded random
/// lattice elements and on roots.
pub fn check_sign_properties(alg: &MagicStarAlgebra, mode: Mode, lattice_samples: u64, seed: u64) -> VerifyReport {
    let id = alg.id();
    let mut report = VerifyReport::new("epsilon/properties", Some(id), mode);
    let eps = alg.epsilon_table();
    let g = alg.basis().gram();
    let level = id.level();
    let r = id.rank();

    // random lattice elements
    let out = sweep::sampled(lattice_samples, seed, |k, rng, out| {
        let a = random_element(rng, r);
        let b = random_element(rng, r);
        let c = random_element(rng, r);
        let e = |x: &Decomposition, y: &Decomposition| eps.epsilon(x, y);
        let key = (k, 0, 0);
        let w = || format!("a={} b={} c={}", show(&a), show(&b), show(&c));
        out.check("i", e(&a.add(&b), &c) == e(&a, &c) * e(&b, &c), key, w);
        out.check("ii", e(&a, &b.add(&c)) == e(&a, &b) * e(&a, &c), key, w);
        let x = self_exponent(&g, level, &a);
        out.check("iii-integral", x.is_integer(), key, w);
        if x.is_integer() {
            out.check("iii", e(&a, &a) == pow_neg1(x.to_integer()), key, w);
        }
        out.check("iv", e(&a, &b) * e(&b, &a) == pow_neg1(swap_exponent(&g, level, &a, &b)), key, w);
        let z = Decomposition::zero(r);
        out.check("v", e(&z, &b) == 1 && e(&a, &z) == 1, key, w);
        out.check("vi", e(&a.neg(), &b) == e(&a, &b), key, w);
        out.check("vii", e(&a, &b.neg()) == e(&a, &b), key, w);
    });
    report.absorb(out);
    report.note(format!("{lattice_samples} random lattice triples, coefficients in [-3,3], seed {seed}"));

    // roots
    let sys = alg.system();
    let len = sys.len();
    let per_root = sweep::over_range(len, |a, out| {
        let x = self_exponent(&g, level, alg.decomposition(a));
        out.check("iii-integral", x.is_integer(), (a as u64, 0, 0), || format!("root {a}"));
        out.check("iii", alg.eps(a, a) == pow_neg1(x.to_integer()), (a as u64, 0, 0), || format!("root {a}"));
    });
    report.absorb(per_root);

    let pairs = |a: usize, b: usize, out: &mut Outcome| {
        let key = (a as u64, b as u64, 0);
        let w = || format!("roots {a}, {b}");
        let (da, db) = (alg.decomposition(a), alg.decomposition(b));
        let e_ab = alg.eps(a, b);
        out.check("iv", e_ab * alg.eps(b, a) == pow_neg1(swap_exponent(&g, level, da, db)), key, w);
        out.check("vi", alg.eps(sys.negation(a), b) == e_ab, key, w);
        out.check("vii", alg.eps(a, sys.negation(b)) == e_ab, key, w);
    };
    let triples = |a: usize, b: usize, s: usize, out: &mut Outcome| {
        // qualifying triple: a + b = s ∈ Φ, third argument ranges over Φ
        let mut bad_i = None;
        let mut bad_ii = None;
        for c in 0..len {
            if bad_i.is_none() && alg.eps(s, c) != alg.eps(a, c) * alg.eps(b, c) {
                bad_i = Some(c);
            }
            if bad_ii.is_none() && alg.eps(c, s) != alg.eps(c, a) * alg.eps(c, b) {
                bad_ii = Some(c);
            }
        }
        out.checks += 2 * len as u64 - 2;
        let key = (a as u64, b as u64, 0);
        out.check("i", bad_i.is_none(), key, || format!("roots {a}+{b}={s}, third {bad_i:?}"));
        out.check("ii", bad_ii.is_none(), key, || format!("roots {a}+{b}={s}, first {bad_ii:?}"));
    };
    let out = match mode {
        Mode::Exhaustive => sweep::over_range(len, |a, out| {
            for b in 0..len {
                pairs(a, b, out);
            }
            for &(b, s) in alg.partners(a) {
                triples(a, b as usize, s as usize, out);
            }
        }),
        Mode::Sampled { samples, seed } => sweep::sampled(samples, seed, |_, rng, out| {
            let a = sweep::pick(rng, len);
            let b = sweep::pick(rng, len);
            pairs(a, b, out);
            let p = alg.partners(a);
            let (b, s) = p[sweep::pick(rng, p.len())];
            let c = sweep::pick(rng, len);
            let key = (a as u64, b as u64, c as u64);
            let (b, s) = (b as usize, s as usize);
            out.check("i", alg.eps(s, c) == alg.eps(a, c) * alg.eps(b, c), key, || format!("{a}+{b}, {c}"));
            out.check("ii", alg.eps(c, s) == alg.eps(c, a) * alg.eps(c, b), key, || format!("{c}, {a}+{b}"));
        }),
    };
    report.absorb(out);
    report
}

/// `ε(α,α) = −1`, antisymmetry and the two shift identities.
pub fn check_root_sign_identities(alg: &MagicStarAlgebra, mode: Mode) -> VerifyReport {
    let id = alg.id();
    let mut report = VerifyReport::new("epsilon/root-identities", Some(id), mode);
    let sys = alg.system();
    let len = sys.len();

    let diag = sweep::over_range(len, |a, out| {
        out.check("i", alg.eps(a, a) == -1, (a as u64, 0, 0), || format!("root {a}"));
    });
    report.absorb(diag);

    // a, d ∈ Φ; b = d − a for iii and b = a − d for iv
    let pair = |a: usize, d: usize, out: &mut Outcome| {
        let key = (a as u64, d as u64, 0);
        let (pa, qa) = (alg.parity(a), alg.row(a));
        let (pd, qd) = (alg.parity(d), alg.row(d));
        // b = ±(d − a) has the same parity mask and row either way
        let (pb, qb) = (pa ^ pd, qa ^ qd);
        let shift = sign(qa, pb) == sign(qb, pd);
        // iii: ε(a, d−a) = ε(d−a, d); iv: ε(a, a−d) = ε(a−d, d). Mod 2 both read the same.
        out.check("iii", shift, key, || format!("alpha={a} alpha+beta={d}"));
        out.check("iv", shift, key, || format!("alpha={a} alpha-beta={d}"));
        if let PackedSum::Vector(p) = sys.packed_at(d).sub(sys.packed_at(a)) {
            if let Some(b) = sys.lookup(p) {
                out.check("ii", alg.eps(a, b) == -alg.eps(b, a), key, || format!("alpha={a} beta={b}"));
            }
        }
    };
    let out = match mode {
        Mode::Exhaustive => sweep::over_range(len, |a, out| {
            for d in 0..len {
                pair(a, d, out);
            }
        }),
        Mode::Sampled { samples, seed } => sweep::sampled(samples, seed, |_, rng, out| {
            let a = sweep::pick(rng, len);
            let d = sweep::pick(rng, len);
            pair(a, d, out);
            let p = alg.partners(a);
            let (_, s) = p[sweep::pick(rng, p.len())];
            pair(a, s as usize, out);
        }),
    };
    report.absorb(out);
    report
}

/// Reference evaluation straight from the defining product, for tests.
pub fn epsilon_by_definition(table: &EpsilonTable, a: &Decomposition, b: &Decomposition) -> i32 {
    let r = table.rank();
    let mut value = 1i32;
    for i in 0..r {
        for j in 0..r {
            let base = if i == j || (i < j && table.parity(i, j)) { -1i32 } else { 1 };
            let e = a.coeffs[i] * b.coeffs[j];
            if base == -1 && e.rem_euclid(2) == 1 {
                value = -value;
            }
        }
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use proptest::prelude::*;

    fn setup(f: Family, n: u32) -> (SimpleBasis, EpsilonTable) {
        let id = AlgebraId::new(f, n).unwrap();
        let sys = RootSystem::generate(id).unwrap();
        let b = SimpleBasis::new(id).unwrap();
        let t = EpsilonTable::new(&b, &sys);
        (b, t)
    }

    #[test]
    fn parity_shape() {
        let (_, t) = setup(Family::E8, 2);
        for i in 0..t.rank() {
            assert!(t.parity(i, i));
            for j in 0..i {
                assert!(!t.parity(i, j));
            }
        }
        // α_1 + α_2 = k_1 − k_3
        assert!(t.parity(0, 1));
        assert!(!t.parity(0, 2));
    }

    #[test]
    fn simple_values() {
        let (b, t) = setup(Family::E7, 2);
        let r = b.rank();
        for i in 0..r {
            let u = Decomposition::unit(r, i);
            assert_eq!(t.epsilon(&u, &u), -1);
            assert_eq!(t.epsilon(&Decomposition::zero(r), &u), 1);
        }
        assert_eq!(t.epsilon(&Decomposition::unit(r, 0), &Decomposition::unit(r, 1)), -1);
        assert_eq!(t.epsilon(&Decomposition::unit(r, 1), &Decomposition::unit(r, 0)), 1);
    }

    proptest! {
        #[test]
        fn fast_path_matches_definition(
            a in proptest::collection::vec(-5i64..=5, 12),
            b in proptest::collection::vec(-5i64..=5, 12),
        ) {
            let (_, t) = setup(Family::E8, 2);
            let a = Decomposition { coeffs: a };
            let b = Decomposition { coeffs: b };
            prop_assert_eq!(t.epsilon(&a, &b), epsilon_by_definition(&t, &a, &b));
        }
    }

    #[test]
    fn exponent_is_integral_on_lattice() {
        let (b, _) = setup(Family::E6, 3);
        let g = b.gram();
        for m in -3..=3 {
            let mut d = Decomposition::zero(b.rank());
            d.coeffs[b.rank() - 1] = m;
            d.coeffs[0] = 1;
            assert!(self_exponent(&g, 3, &d).is_integer());
        }
    }
}
