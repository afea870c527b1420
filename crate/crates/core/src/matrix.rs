//! Dense exact linear algebra over any of the library's coefficient fields.
//!
//! [`Mat`] is generic over [`Coeff`], so the same elimination, nullspace and
//! intertwiner code serves GF(p^n) and Q(ζ_n). Pivoting always takes the
//! first nonzero candidate, so results (in particular nullspace bases, which
//! downstream cocycle scalars depend on) are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::Rng64;

/// Field operations needed by the generic linear algebra.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
}

/// A coefficient field with a finite abelian group of automorphisms acting on
/// it. `self` doubles as the carrier of the field context for the
/// constructors that need one.
pub trait GaloisCoeff: Coeff {
    type Aut: Clone + PartialEq + Eq + Ord + fmt::Debug;

    fn aut_identity(&self) -> Self::Aut;
    fn aut_compose(&self, a: &Self::Aut, b: &Self::Aut) -> Self::Aut;
    /// Order of `a` in the acting group.
    fn aut_order(&self, a: &Self::Aut) -> u64;
    /// Image of `self` under `a`.
    fn apply(&self, a: &Self::Aut) -> Self;
    /// A deterministic spanning set of E over the fixed field; a linear map
    /// vanishing on it vanishes everywhere.
    fn scan_basis(&self) -> Vec<Self>;
    fn random_like(&self, rng: &mut Rng64) -> Self;
    /// Whether the field characteristic divides `order` (always false in
    /// characteristic zero).
    fn char_divides(&self, order: u64) -> bool;
    fn integer_like(&self, v: i64) -> Self;
}

/// Dense matrix. Square for all the exposed algebra; rectangular shapes are
/// allowed for rank and nullspace computations.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<K: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
}

impl<K: Coeff> fmt::Debug for Mat<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<K: Coeff> Mat<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        Mat {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        assert!(d >= 1);
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows: d,
            cols: d,
            entries,
        }
    }

    pub fn identity(d: usize, proto: &K) -> Self {
        Mat::from_fn(d, |r, c| {
            if r == c {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        })
    }

    pub fn zero(d: usize, proto: &K) -> Self {
        Mat::from_fn(d, |_, _| proto.zero_like())
    }

    pub fn scalar(d: usize, lambda: &K) -> Self {
        Mat::from_fn(d, |r, c| {
            if r == c {
                lambda.clone()
            } else {
                lambda.zero_like()
            }
        })
    }

    pub fn random(d: usize, proto: &K, rng: &mut Rng64) -> Self
    where
        K: GaloisCoeff,
    {
        Mat::from_fn(d, |_, _| proto.random_like(rng))
    }

    /// Uniformly random invertible matrix, by rejection.
    pub fn random_invertible(d: usize, proto: &K, rng: &mut Rng64) -> Self
    where
        K: GaloisCoeff,
    {
        loop {
            let m = Mat::random(d, proto, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn proto(&self) -> &K {
        &self.entries[0]
    }

    pub fn rows_vec(&self) -> Vec<Vec<K>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).clone()).collect())
            .collect()
    }

    pub fn col(&self, c: usize) -> Vec<K> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&K) -> K) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let proto = self.proto();
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = proto.zero_like();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(rhs.at(k, c)));
                }
                out.push(acc);
            }
        }
        Mat {
            rows: self.rows,
            cols: rhs.cols,
            entries: out,
        }
    }

    pub fn mul_scalar(&self, k: &K) -> Self {
        self.map(|e| e.mul(k))
    }

    pub fn mul_col(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.proto().zero_like();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Mat::identity(self.dim(), self.proto());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        *self.at(r, c) == self.proto().one_like()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    /// True iff the matrix is λI for some scalar λ; returns the scalar.
    pub fn as_scalar(&self) -> Option<K> {
        if self.rows != self.cols {
            return None;
        }
        let lambda = self.at(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r == c {
                    if *self.at(r, c) != lambda {
                        return None;
                    }
                } else if !self.at(r, c).is_zero() {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    /// Determinant by Gaussian elimination with first-nonzero pivoting.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let d = self.rows;
        let mut m = self.clone();
        let mut det = self.proto().one_like();
        let mut negate = false;
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !m.at(r, col).is_zero()) else {
                return self.proto().zero_like();
            };
            if piv != col {
                for c in 0..d {
                    let a = m.at(col, c).clone();
                    let b = m.at(piv, c).clone();
                    m.set(col, c, b);
                    m.set(piv, c, a);
                }
                negate = !negate;
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let pinv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..d {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).mul(&pinv);
                for c in col..d {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        if negate {
            det.neg()
        } else {
            det
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    /// Inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn invert(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let d = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::identity(d, self.proto());
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !m.at(r, col).is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            if piv != col {
                for c in 0..d {
                    let a = m.at(col, c).clone();
                    m.set(col, c, m.at(piv, c).clone());
                    m.set(piv, c, a);
                    let a = inv.at(col, c).clone();
                    inv.set(col, c, inv.at(piv, c).clone());
                    inv.set(piv, c, a);
                }
            }
            let pinv = m.at(col, col).inv()?;
            for c in 0..d {
                m.set(col, c, m.at(col, c).mul(&pinv));
                inv.set(col, c, inv.at(col, c).mul(&pinv));
            }
            for r in 0..d {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in 0..d {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    m.set(r, c, v);
                    let v = inv.at(r, c).sub(&f.mul(inv.at(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for c in 0..m.cols {
                    let a = m.at(rank, c).clone();
                    m.set(rank, c, m.at(piv, c).clone());
                    m.set(piv, c, a);
                }
            }
            let pinv = m.at(rank, col).inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).mul(&pinv);
                for c in col..m.cols {
                    let v = m.at(r, c).sub(&f.mul(m.at(rank, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right nullspace {x : Mx = 0}. Reduced row echelon with
    /// first-nonzero pivots, free columns in ascending order, so the basis is
    /// deterministic.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let proto = self.proto();
        let mut m = self.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for c in 0..m.cols {
                    let a = m.at(rank, c).clone();
                    m.set(rank, c, m.at(piv, c).clone());
                    m.set(piv, c, a);
                }
            }
            let pinv = m.at(rank, col).inv().expect("nonzero pivot");
            for c in 0..m.cols {
                m.set(rank, c, m.at(rank, c).mul(&pinv));
            }
            for r in 0..m.rows {
                if r == rank || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in 0..m.cols {
                    let v = m.at(r, c).sub(&f.mul(m.at(rank, c)));
                    m.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![proto.zero_like(); m.cols];
            v[free] = proto.one_like();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Entrywise image of a matrix under an automorphism; multiplicative because
/// the automorphism is a ring map.
pub fn apply_aut_mat<K: GaloisCoeff>(a: &K::Aut, m: &Mat<K>) -> Mat<K> {
    m.map(|e| e.apply(a))
}

/// A d×1 column of field elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColVec<K: Coeff> {
    pub entries: Vec<K>,
}

impl<K: Coeff> ColVec<K> {
    pub fn new(entries: Vec<K>) -> Self {
        assert!(!entries.is_empty());
        ColVec { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ColVec::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ColVec::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, k: &K) -> Self {
        ColVec::new(self.entries.iter().map(|e| e.mul(k)).collect())
    }
}

pub fn apply_aut_col<K: GaloisCoeff>(a: &K::Aut, v: &ColVec<K>) -> ColVec<K> {
    ColVec::new(v.entries.iter().map(|e| e.apply(a)).collect())
}

/// Basis of the intertwiner space {D : ρ(g_i) D = D ρ'(g_i) for all i},
/// computed by flattening each condition into d² linear equations in the d²
/// unknown entries of D and taking the nullspace.
pub fn solve_sylvester_like<K: Coeff>(
    rho_gens: &[Mat<K>],
    twisted_gens: &[Mat<K>],
) -> Vec<Mat<K>> {
    assert_eq!(rho_gens.len(), twisted_gens.len());
    assert!(!rho_gens.is_empty());
    let d = rho_gens[0].dim();
    let proto = rho_gens[0].proto();
    let mut rows: Vec<Vec<K>> = Vec::with_capacity(rho_gens.len() * d * d);
    for (g, h) in rho_gens.iter().zip(twisted_gens) {
        assert_eq!(g.dim(), d);
        assert_eq!(h.dim(), d);
        // equation (r, c): Σ_a g[r,a] D[a,c] − Σ_b D[r,b] h[b,c] = 0
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![proto.zero_like(); d * d];
                for a in 0..d {
                    row[a * d + c] = row[a * d + c].add(g.at(r, a));
                }
                for b in 0..d {
                    row[r * d + b] = row[r * d + b].sub(h.at(b, c));
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(rows);
    system
        .nullspace()
        .into_iter()
        .map(|flat| Mat::from_fn(d, |r, c| flat[r * d + c].clone()))
        .collect()
}

/// Burnside spanning test for absolute irreducibility: true iff products of
/// the generators span the full d²-dimensional matrix algebra over E.
pub fn burnside_spans<K: Coeff>(gens: &[Mat<K>]) -> bool {
    assert!(!gens.is_empty());
    let d = gens[0].dim();
    let proto = gens[0].proto().clone();
    let target = d * d;

    // Echelon basis of flattened matrices; each entry keeps its pivot column.
    let mut basis: Vec<(usize, Vec<K>)> = Vec::new();
    let insert = |basis: &mut Vec<(usize, Vec<K>)>, mut v: Vec<K>| -> Option<Vec<K>> {
        for (piv, b) in basis.iter() {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (x, y) in v.iter_mut().zip(b.iter()) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        let piv = v.iter().position(|e| !e.is_zero())?;
        let inv = v[piv].inv().expect("nonzero entry");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        basis.push((piv, v.clone()));
        Some(v)
    };

    let flat = |m: &Mat<K>| -> Vec<K> { m.rows_vec().into_iter().flatten().collect() };

    let mut worklist: Vec<Mat<K>> = Vec::new();
    let id = Mat::identity(d, &proto);
    if insert(&mut basis, flat(&id)).is_some() {
        worklist.push(id);
    }
    for g in gens {
        if insert(&mut basis, flat(g)).is_some() {
            worklist.push(g.clone());
        }
    }
    while let Some(w) = worklist.pop() {
        if basis.len() == target {
            return true;
        }
        for g in gens {
            let prod = w.mul(g);
            if insert(&mut basis, flat(&prod)).is_some() {
                worklist.push(prod);
            }
        }
    }
    basis.len() == target
}
