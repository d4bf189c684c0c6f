//! The ordered simple basis `Δ = {α_1 < … < α_R}` and exact decomposition
//! of lattice vectors over it.
//!
//! `α_i = k_i − k_{i+1}` for `i ≤ R−2`, `α_{R−1} = k_{R−2} + k_{R−1}` and
//! `α_R = −½(k_1 + … + k_N)`. Decomposition goes through one exact rational
//! inversion per basis, stored as an integer matrix over a common denominator.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::AlgebraId;
use crate::lattice::{RootVector, Sector};

/// Integer coefficients `(m_1, …, m_R)` over `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub coeffs: Vec<i64>,
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Decomposition {
    pub fn zero(rank: usize) -> Self {
        Decomposition { coeffs: vec![0; rank] }
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Decomposition { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `α_R`.
    pub fn last(&self) -> i64 {
        *self.coeffs.last().expect("rank ≥ 1")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.coeffs.iter().all(|&c| c <= 0)
    }

    pub fn has_uniform_sign(&self) -> bool {
        self.is_nonnegative() || self.is_nonpositive()
    }

    pub fn add(&self, other: &Decomposition) -> Decomposition {
        Decomposition { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Decomposition) -> Decomposition {
        Decomposition { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Decomposition {
        Decomposition { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// Coefficients reduced mod 2 as a bitmask (bit `i` ↔ `α_{i+1}`).
    pub fn parity_mask(&self) -> u64 {
        self.coeffs.iter().enumerate().filter(|(_, c)| *c % 2 != 0).fold(0, |m, (i, _)| m | 1 << i)
    }
}

#[derive(Clone, Debug)]
pub struct SimpleBasis {
    id: AlgebraId,
    alphas: Vec<RootVector>,
    /// Pivot columns of the `R × N` coordinate matrix.
    pivots: Vec<usize>,
    /// `inverse[p][i]`: integer inverse of the pivot block, scaled by `denom`.
    inverse: Vec<Vec<i64>>,
    denom: i64,
}

impl SimpleBasis {
    pub fn new(id: AlgebraId) -> Result<SimpleBasis> {
        id.require_algebra()?;
        let n = id.big_n();
        let r = id.rank();
        let mut alphas = Vec::with_capacity(r);
        for i in 0..r - 2 {
            let mut v = vec![0; n];
            v[i] = 2;
            v[i + 1] = -2;
            alphas.push(RootVector::new(v, Sector::Orthogonal));
        }
        let mut v = vec![0; n];
        v[r - 3] = 2;
        v[r - 2] = 2;
        alphas.push(RootVector::new(v, Sector::Orthogonal));
        alphas.push(RootVector::new(vec![-1; n], Sector::Spinorial));

        let (pivots, inverse, denom) = invert_pivot_block(&alphas, n)?;
        Ok(SimpleBasis { id, alphas, pivots, inverse, denom })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[RootVector] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &RootVector {
        &self.alphas[i]
    }

    /// Exact coefficients of `v` over `Δ`, possibly fractional.
    pub fn solve(&self, v: &[i32]) -> Result<Vec<Rational64>> {
        let n = self.id.big_n();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let r = self.rank();
        let mut num = vec![0i64; r];
        for (p, &col) in self.pivots.iter().enumerate() {
            let x = v[col] as i64;
            if x != 0 {
                for (acc, &m) in num.iter_mut().zip(&self.inverse[p]) {
                    *acc += x * m;
                }
            }
        }
        let coeffs: Vec<Rational64> = num.iter().map(|&c| Rational64::new(c, self.denom)).collect();
        // span check on every column
        for col in 0..n {
            let mut s = Rational64::zero();
            for (c, a) in coeffs.iter().zip(&self.alphas) {
                s += *c * a.coords()[col] as i64;
            }
            if s != Rational64::from(v[col] as i64) {
                return Err(Error::NotInSpan);
            }
        }
        Ok(coeffs)
    }

    /// Integer decomposition of a lattice vector.
    pub fn decompose(&self, v: &[i32]) -> Result<Decomposition> {
        let r = self.rank();
        let n = self.id.big_n();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let mut num = vec![0i64; r];
        for (p, &col) in self.pivots.iter().enumerate() {
            let x = v[col] as i64;
            if x != 0 {
                for (acc, &m) in num.iter_mut().zip(&self.inverse[p]) {
                    *acc += x * m;
                }
            }
        }
        if num.iter().any(|c| c % self.denom != 0) {
            // fall back to the exact path for a precise error
            let coeffs = self.solve(v)?;
            return Err(Error::NonLattice { coeffs });
        }
        let coeffs: Vec<i64> = num.iter().map(|c| c / self.denom).collect();
        let d = Decomposition { coeffs };
        if self.lattice_element(&d) != v {
            return Err(Error::NotInSpan);
        }
        Ok(d)
    }

    /// `Σ c_i α_i` in doubled coordinates.
    pub fn lattice_element(&self, d: &Decomposition) -> Vec<i32> {
        let n = self.id.big_n();
        let mut out = vec![0i64; n];
        for (c, a) in d.coeffs.iter().zip(&self.alphas) {
            if *c != 0 {
                for (o, &x) in out.iter_mut().zip(a.coords()) {
                    *o += c * x as i64;
                }
            }
        }
        out.into_iter().map(|x| i32::try_from(x).expect("lattice coordinate overflow")).collect()
    }

    /// `(α_i, α_j)` Gram matrix.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.alphas
            .iter()
            .map(|a| {
                self.alphas
                    .iter()
                    .map(|b| crate::lattice::dot(a.coords(), b.coords()).expect("same dim") / 4)
                    .collect()
            })
            .collect()
    }
}

/// Picks `R` independent columns and inverts that block exactly.
fn invert_pivot_block(alphas: &[RootVector], n: usize) -> Result<(Vec<usize>, Vec<Vec<i64>>, i64)> {
    let r = alphas.len();
    let q = |x: i32| BigRational::from_integer(BigInt::from(x));

    // column echelon pass to choose pivots
    let mut rows: Vec<Vec<BigRational>> = alphas.iter().map(|a| a.coords().iter().map(|&x| q(x)).collect()).collect();
    let mut pivots = Vec::with_capacity(r);
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..r).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == r {
            break;
        }
    }
    if rank < r {
        return Err(Error::Construction("simple roots are linearly dependent".into()));
    }

    // B[i][p] = alphas[i][pivots[p]]; want c with c·B = v_P, so c = v_P · B⁻¹.
    let mut aug: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> = pivots.iter().map(|&c| q(alphas[i].coords()[c])).collect();
            row.extend((0..r).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..r {
        let p = (col..r).find(|&i| !aug[i][col].is_zero()).expect("full rank");
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[col].clone();
                for (x, y) in aug[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    // inv_b[i][p] = (B⁻¹)[i][p]
    let inv_b: Vec<Vec<BigRational>> = aug.into_iter().map(|row| row[r..].to_vec()).collect();
    let mut denom = BigInt::one();
    for x in inv_b.iter().flatten() {
        let d = x.denom();
        denom = lcm(&denom, d);
    }
    let to_i64 = |x: &BigRational| -> Result<i64> {
        (x * BigRational::from_integer(denom.clone()))
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Construction("inverse entry overflow".into()))
    };
    // inverse[p][i] = (B⁻¹)[p][i] · denom
    let inverse = (0..r).map(|p| (0..r).map(|i| to_i64(&inv_b[p][i])).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let denom = denom.to_i64().ok_or_else(|| Error::Construction("denominator overflow".into()))?;
    Ok((pivots, inverse, denom))
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.abs(), b.abs());
    (a * b).abs() / g
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}
