//! Exact arithmetic in finite-field towers GF(p) ⊆ F = GF(p^d0) ⊆ E = GF(p^n).
//!
//! A [`FieldCtx`] pins down the ambient field E = GF(p)[x]/(modulus) together
//! with the subfield degree d0 | n. The Galois group G = Gal(E/F) is cyclic of
//! order m = n/d0, generated by the relative Frobenius φ: x ↦ x^q with
//! q = p^d0. Elements of F are recognized by φ(λ) = λ, never by coordinate
//! shape, so nothing depends on a choice of F-basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::{self, is_prime_u64, pow_mod};
use crate::error::{Error, Result};
use crate::rng::Rng64;

/// A power φ^k of the relative Frobenius φ: x ↦ x^q, with k reduced mod m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutPower(pub u64);

#[derive(Debug)]
pub(crate) struct FieldCtxData {
    pub p: u64,
    pub n: usize,
    pub d0: usize,
    /// Monic irreducible modulus over GF(p), length n + 1, little-endian.
    pub modulus: Vec<u64>,
    /// q = p^d0, cached.
    pub q: u128,
    /// Images of the power basis under φ^k for k in 0..m, as column tables
    /// over GF(p): frob[k][j] = coordinates of (x^j)^(q^k).
    frob: Vec<Vec<Vec<u64>>>,
}

/// Description of a field tower; cheap to clone and share across threads.
#[derive(Clone)]
pub struct FieldCtx(pub(crate) Arc<FieldCtxData>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(p={}, n={}, d0={}, modulus={:?})",
            self.0.p, self.0.n, self.0.d0, self.0.modulus
        )
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.n == other.0.n
                && self.0.d0 == other.0.d0
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldCtx {}

/// An element of E as a length-n coefficient vector in the power basis.
#[derive(Clone)]
pub struct FieldElem {
    pub(crate) ctx: FieldCtx,
    pub(crate) coeffs: Vec<u64>,
}

impl FieldElem {
    fn fmt_coeffs(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_coeffs(f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_coeffs(f)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElem {}

// ---------------------------------------------------------------------------
// polynomial arithmetic over GF(p), used for context construction
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let idx = shift + i;
                let sub = (lead as u128 * m[i] as u128) % p as u128;
                r[idx] = ((r[idx] as u128 + p as u128 - sub % p as u128) % p as u128) as u64;
            }
        }
        r.pop();
    }
    r.resize(dm.max(1), 0);
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    out
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let lead = *b.last().unwrap();
        let inv = pow_mod(lead as u128, (p - 2) as u128, p as u128) as u64;
        let monic: Vec<u64> = b
            .iter()
            .map(|&c| ((c as u128 * inv as u128) % p as u128) as u64)
            .collect();
        let mut r = if a.len() >= monic.len() {
            poly_rem(&a, &monic, p)
        } else {
            a.clone()
        };
        poly_trim(&mut r);
        a = b;
        b = r;
    }
    poly_trim(&mut a);
    a
}

/// x^exp mod m by square-and-multiply.
fn poly_pow_x(exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut base = if dm >= 2 {
        let mut v = vec![0u64; dm];
        v[1] = 1;
        v
    } else {
        poly_rem(&[0, 1], m, p)
    };
    let mut result = vec![0u64; dm.max(1)];
    result[0] = 1;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &base, p), m, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), m, p);
        e >>= 1;
    }
    result
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) ≡ x mod m, and gcd(x^(p^(n/ℓ)) − x, m) = 1 for primes ℓ | n.
    let xpn = poly_pow_x((p as u128).pow(n as u32), m, p);
    let mut x_poly = vec![0u64; n];
    x_poly[1] = 1;
    if xpn != x_poly {
        return false;
    }
    for (l, _) in arith::factor(n as u128) {
        let sub = n / l as usize;
        let mut diff = poly_pow_x((p as u128).pow(sub as u32), m, p);
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// context construction
// ---------------------------------------------------------------------------

/// Build a field tower context.
///
/// If `modulus` is omitted, a monic irreducible of degree n is found by seeded
/// random sampling plus irreducibility testing; the chosen modulus is part of
/// the context, so every downstream output can reproduce the run.
pub fn make_field(p: u64, n: usize, d0: usize, modulus: Option<Vec<u64>>) -> Result<FieldCtx> {
    make_field_seeded(p, n, d0, modulus, 0)
}

pub fn make_field_seeded(
    p: u64,
    n: usize,
    d0: usize,
    modulus: Option<Vec<u64>>,
    seed: u64,
) -> Result<FieldCtx> {
    if !is_prime_u64(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    if n == 0 || d0 == 0 || n % d0 != 0 {
        return Err(Error::DegreeMismatch(format!(
            "subfield degree {d0} must divide extension degree {n}"
        )));
    }
    if n as u32 * (64 - p.leading_zeros()) > 63 {
        return Err(Error::BadParameters(format!(
            "field GF({p}^{n}) exceeds the supported size"
        )));
    }
    let modulus = match modulus {
        Some(mut m) => {
            for c in m.iter_mut() {
                *c %= p;
            }
            if m.len() != n + 1 || m[n] != 1 {
                return Err(Error::DegreeMismatch(format!(
                    "modulus must be monic of degree {n}"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus { p });
            }
            m
        }
        None => {
            let mut rng = Rng64::derive(seed, 0x6d6f64);
            loop {
                let mut m: Vec<u64> = (0..n).map(|_| rng.below(p)).collect();
                m.push(1);
                if is_irreducible(&m, p) {
                    break m;
                }
            }
        }
    };
    let q = (p as u128).pow(d0 as u32);
    let m_rel = n / d0;
    // Precompute the action of φ^k on the power basis.
    let mut frob: Vec<Vec<Vec<u64>>> = Vec::with_capacity(m_rel);
    frob.push(
        (0..n)
            .map(|j| {
                let mut v = vec![0u64; n];
                v[j] = 1;
                v
            })
            .collect(),
    );
    if m_rel > 1 {
        let xq = poly_pow_x(q, &modulus, p);
        let mut phi1: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut pow = vec![0u64; n];
        pow[0] = 1;
        for _ in 0..n {
            phi1.push(pow.clone());
            pow = poly_rem(&poly_mul(&pow, &xq, p), &modulus, p);
        }
        frob.push(phi1);
        for k in 2..m_rel {
            let next: Vec<Vec<u64>> = (0..n)
                .map(|j| {
                    let mut acc = vec![0u64; n];
                    for (i, &c) in frob[k - 1][j].iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (t, &s) in frob[1][i].iter().enumerate() {
                            acc[t] = ((acc[t] as u128 + c as u128 * s as u128) % p as u128) as u64;
                        }
                    }
                    acc
                })
                .collect();
            frob.push(next);
        }
    }
    Ok(FieldCtx(Arc::new(FieldCtxData {
        p,
        n,
        d0,
        modulus,
        q,
        frob,
    })))
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn n(&self) -> usize {
        self.0.n
    }
    pub fn d0(&self) -> usize {
        self.0.d0
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    /// Order q = p^d0 of the fixed subfield F.
    pub fn q(&self) -> u128 {
        self.0.q
    }
    /// Order m = n/d0 of the Galois group Gal(E/F).
    pub fn group_order(&self) -> u64 {
        (self.0.n / self.0.d0) as u64
    }
    /// |E| = p^n.
    pub fn field_size(&self) -> u128 {
        (self.0.p as u128).pow(self.0.n as u32)
    }
    /// |E^×| = p^n − 1.
    pub fn unit_order(&self) -> u128 {
        self.field_size() - 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            coeffs: vec![0; self.0.n],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.integer(1)
    }

    /// The image of an integer in E.
    pub fn integer(&self, v: i64) -> FieldElem {
        let mut coeffs = vec![0; self.0.n];
        coeffs[0] = v.rem_euclid(self.0.p as i64) as u64;
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// The power-basis generator x.
    pub fn gen(&self) -> FieldElem {
        let mut coeffs = vec![0; self.0.n];
        if self.0.n > 1 {
            coeffs[1] = 1;
        } else {
            coeffs[0] = (self.0.p - self.0.modulus[0] % self.0.p) % self.0.p;
        }
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.n {
            return Err(Error::DegreeMismatch(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.0.n
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(self.0.n, 0);
        for v in c.iter_mut() {
            *v %= self.0.p;
        }
        Ok(FieldElem {
            ctx: self.clone(),
            coeffs: c,
        })
    }

    /// Enumerate all p^n elements, for exhaustive checks on small fields.
    pub fn all_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let n = self.0.n;
        let p = self.0.p;
        (0..self.field_size()).map(move |mut idx| {
            let mut coeffs = vec![0u64; n];
            for c in coeffs.iter_mut() {
                *c = (idx % p as u128) as u64;
                idx /= p as u128;
            }
            FieldElem {
                ctx: self.clone(),
                coeffs,
            }
        })
    }

    /// Uniform random element.
    pub fn random(&self, rng: &mut Rng64) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            coeffs: (0..self.0.n).map(|_| rng.below(self.0.p)).collect(),
        }
    }

    /// Uniform random nonzero element.
    pub fn random_nonzero(&self, rng: &mut Rng64) -> FieldElem {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// GF(p)-power basis 1, x, …, x^(n−1) of E. This spans E over every
    /// intermediate field, which is all the deterministic basis scans need.
    pub fn span_basis(&self) -> Vec<FieldElem> {
        (0..self.0.n)
            .map(|j| {
                let mut coeffs = vec![0; self.0.n];
                coeffs[j] = 1;
                FieldElem {
                    ctx: self.clone(),
                    coeffs,
                }
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// element arithmetic
// ---------------------------------------------------------------------------

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn assert_same_ctx(&self, other: &FieldElem) {
        assert!(
            self.ctx == other.ctx,
            "field elements from different contexts"
        );
    }

    pub fn add_ref(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_ctx(other);
        let p = self.ctx.0.p;
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_ctx(other);
        let p = self.ctx.0.p;
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        }
    }

    pub fn neg_ref(&self) -> FieldElem {
        let p = self.ctx.0.p;
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn mul_ref(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_ctx(other);
        let p = self.ctx.0.p;
        let prod = poly_mul(&self.coeffs, &other.coeffs, p);
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: poly_rem(&prod, &self.ctx.0.modulus, p),
        }
    }

    pub fn pow(&self, mut e: u128) -> FieldElem {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via λ^(p^n − 2).
    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.pow(self.ctx.unit_order() - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::BadParameters("order of zero".into()));
        }
        let e = self.ctx.unit_order();
        Ok(arith::order_from_exponent(e, |d| self.pow(d).is_one()))
    }

    /// Membership in the fixed subfield F: λ^q = λ.
    pub fn in_subfield(&self) -> bool {
        apply_aut(AutPower(1), self) == *self
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.add_ref(rhs)
    }
}
impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.sub_ref(rhs)
    }
}
impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.mul_ref(rhs)
    }
}
impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

// ---------------------------------------------------------------------------
// Galois action, trace, norm
// ---------------------------------------------------------------------------

/// Apply φ^k: λ ↦ λ^(q^k). Linear over F, fixes F pointwise.
pub fn apply_aut(a: AutPower, lambda: &FieldElem) -> FieldElem {
    let ctx = &lambda.ctx;
    let m = ctx.group_order();
    let k = (a.0 % m) as usize;
    if k == 0 {
        return lambda.clone();
    }
    let table = &ctx.0.frob[k];
    let p = ctx.0.p;
    let mut out = vec![0u64; ctx.0.n];
    for (j, &c) in lambda.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (t, &s) in table[j].iter().enumerate() {
            out[t] = ((out[t] as u128 + c as u128 * s as u128) % p as u128) as u64;
        }
    }
    FieldElem {
        ctx: ctx.clone(),
        coeffs: out,
    }
}

impl AutPower {
    pub fn compose(self, other: AutPower, group_order: u64) -> AutPower {
        AutPower((self.0 + other.0) % group_order)
    }

    pub fn order_in(self, group_order: u64) -> u64 {
        let k = self.0 % group_order;
        if k == 0 {
            1
        } else {
            group_order / arith::gcd_u64(k, group_order)
        }
    }
}

/// Trace over the unique subgroup A ≤ G of the given order:
/// Σ_{α ∈ A} α(λ). The result is fixed by A.
pub fn trace(lambda: &FieldElem, subgroup_order: u64) -> Result<FieldElem> {
    let m = lambda.ctx.group_order();
    if subgroup_order == 0 || m % subgroup_order != 0 {
        return Err(Error::NonDivisorOrder(subgroup_order, m));
    }
    let step = m / subgroup_order;
    let mut acc = lambda.ctx.zero();
    for j in 0..subgroup_order {
        acc = acc.add_ref(&apply_aut(AutPower(step * j), lambda));
    }
    Ok(acc)
}

/// Norm over the unique subgroup A of the given order: ∏_{α ∈ A} α(λ).
pub fn norm(lambda: &FieldElem, subgroup_order: u64) -> Result<FieldElem> {
    let m = lambda.ctx.group_order();
    if subgroup_order == 0 || m % subgroup_order != 0 {
        return Err(Error::NonDivisorOrder(subgroup_order, m));
    }
    let step = m / subgroup_order;
    let mut acc = lambda.ctx.one();
    for j in 0..subgroup_order {
        acc = acc.mul_ref(&apply_aut(AutPower(step * j), lambda));
    }
    Ok(acc)
}

/// Trace over the full group.
pub fn trace_full(lambda: &FieldElem) -> FieldElem {
    trace(lambda, lambda.ctx.group_order()).expect("full group order divides itself")
}

/// Norm over the full group.
pub fn norm_full(lambda: &FieldElem) -> FieldElem {
    norm(lambda, lambda.ctx.group_order()).expect("full group order divides itself")
}

/// A θ with Tr_A(θ) = 1, found by scanning the power basis for an element of
/// nonzero trace and scaling by the inverse trace (which lies in E^A, so the
/// scaled element still has trace one). Deterministic.
pub fn trace_one_element(ctx: &FieldCtx, subgroup_order: u64) -> Result<FieldElem> {
    for b in ctx.span_basis() {
        let t = trace(&b, subgroup_order)?;
        if !t.is_zero() {
            return Ok(t.inverse()?.mul_ref(&b));
        }
    }
    unreachable!("trace is surjective, some basis element has nonzero trace")
}

/// True iff the Galois orbit {φ^j(λ) : j < m} is an F-basis of E, tested by
/// invertibility of the m×m orbit matrix (φ^(i+j)(λ)) over E.
pub fn is_normal_element(lambda: &FieldElem) -> bool {
    use crate::matrix::Mat;
    let m = lambda.ctx.group_order() as usize;
    let mut orbit = Vec::with_capacity(m);
    for j in 0..m {
        orbit.push(apply_aut(AutPower(j as u64), lambda));
    }
    let mat = Mat::from_fn(m, |i, j| orbit[(i + j) % m].clone());
    !mat.det().is_zero()
}

/// GF(p)-coordinates of a basis of the fixed subfield F inside E, computed as
/// the nullspace of φ − id. Dimension is always d0.
pub fn subfield_basis(ctx: &FieldCtx) -> Vec<FieldElem> {
    let n = ctx.0.n;
    let p = ctx.0.p;
    if ctx.group_order() == 1 {
        return ctx.span_basis();
    }
    // Equations (φ − I)c = 0; row t, column j holds the t-th coordinate of
    // φ(x^j) minus δ_{t,j}.
    let table = &ctx.0.frob[1];
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; n]; n];
    for j in 0..n {
        for t in 0..n {
            let mut v = table[j][t] % p;
            if t == j {
                v = (v + p - 1) % p;
            }
            rows[t][j] = v;
        }
    }
    gf_p_nullspace(&rows, p)
        .into_iter()
        .map(|coeffs| FieldElem {
            ctx: ctx.clone(),
            coeffs,
        })
        .collect()
}

/// Nullspace basis of a matrix over GF(p), rows given as coefficient vectors.
pub(crate) fn gf_p_nullspace(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] % p != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col] as u128, (p - 2) as u128, p as u128) as u64;
        for c in 0..ncols {
            m[rank][c] = ((m[rank][c] as u128 * inv as u128) % p as u128) as u64;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] % p != 0 {
                let f = m[r][col] % p;
                for c in 0..ncols {
                    let sub = (f as u128 * m[rank][c] as u128) % p as u128;
                    m[r][c] = ((m[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for col in 0..ncols {
        if pivot_cols.contains(&col) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[col] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][col] % p) % p;
        }
        basis.push(v);
    }
    basis
}

impl crate::matrix::Coeff for FieldElem {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl crate::matrix::GaloisCoeff for FieldElem {
    type Aut = AutPower;

    fn aut_identity(&self) -> AutPower {
        AutPower(0)
    }
    fn aut_compose(&self, a: &AutPower, b: &AutPower) -> AutPower {
        a.compose(*b, self.ctx.group_order())
    }
    fn aut_order(&self, a: &AutPower) -> u64 {
        a.order_in(self.ctx.group_order())
    }
    fn apply(&self, a: &AutPower) -> Self {
        apply_aut(*a, self)
    }
    fn scan_basis(&self) -> Vec<Self> {
        self.ctx.span_basis()
    }
    fn random_like(&self, rng: &mut Rng64) -> Self {
        self.ctx.random(rng)
    }
    fn char_divides(&self, order: u64) -> bool {
        order % self.ctx.0.p == 0
    }
    fn integer_like(&self, v: i64) -> Self {
        self.ctx.integer(v)
    }
}

/// Rank over GF(p) of a list of E-coefficient vectors, each E-entry expanded
/// into its n prime-field coordinates. Used for F-independence checks via
/// scalar extension by a GF(p)-basis of F.
pub(crate) fn gf_p_rank(vectors: &[Vec<FieldElem>], p: u64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| {
            let mut row = Vec::new();
            for e in v {
                row.extend_from_slice(&e.coeffs);
            }
            row
        })
        .collect();
    let ncols = rows[0].len();
    // rank = #rows − nullity of the transpose system
    let mut cols = vec![vec![0u64; rows.len()]; ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            cols[c][r] = v;
        }
    }
    rows.len() - gf_p_nullspace(&cols, p).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfields::{gf4, gf9};

    #[test]
    fn make_field_validates() {
        assert!(gf4().p() == 2);
        assert!(gf9().q() == 3);
        assert_eq!(
            make_field(2, 2, 1, Some(vec![1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus { p: 2 }
        );
        assert_eq!(
            make_field(4, 2, 1, None).unwrap_err(),
            Error::NonPrimeModulus(4)
        );
        assert!(matches!(
            make_field(2, 3, 2, None).unwrap_err(),
            Error::DegreeMismatch(_)
        ));
    }

    #[test]
    fn generated_modulus_is_reproducible() {
        let a = make_field(2, 6, 1, None).unwrap();
        let b = make_field(2, 6, 1, None).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert!(is_irreducible(a.modulus(), 2));
    }

    #[test]
    fn gf4_frobenius_table() {
        // ω ↦ ω² = ω + 1, exhaustive over the four elements
        let ctx = gf4();
        let w = ctx.gen();
        let w2 = apply_aut(AutPower(1), &w);
        assert_eq!(w2, ctx.from_coeffs(&[1, 1]).unwrap());
        for e in ctx.all_elements() {
            assert_eq!(apply_aut(AutPower(0), &e), e);
            assert_eq!(apply_aut(AutPower(1), &e), e.pow(2));
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let ctx = gf9();
        for v in 0..3 {
            let e = ctx.integer(v);
            assert_eq!(apply_aut(AutPower(1), &e), e);
        }
    }

    #[test]
    fn aut_composition_adds_exponents() {
        let ctx = make_field(2, 6, 1, None).unwrap();
        let m = ctx.group_order();
        let mut rng = Rng64::new(3);
        for _ in 0..50 {
            let e = ctx.random(&mut rng);
            let k = rng.below(m);
            let j = rng.below(m);
            let lhs = apply_aut(AutPower(k), &apply_aut(AutPower(j), &e));
            let rhs = apply_aut(AutPower(k).compose(AutPower(j), m), &e);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gf4_trace_and_norm_tables() {
        let ctx = gf4();
        let w = ctx.gen();
        // Tr(ω) = ω + ω² = 1, N(ω) = ω·ω² = ω³ = 1
        assert!(trace_full(&w).is_one());
        assert!(norm_full(&w).is_one());
        assert!(trace_full(&ctx.zero()).is_zero());
        assert!(norm_full(&ctx.one()).is_one());
    }

    #[test]
    fn trace_is_surjective_onto_subfield() {
        let ctx = gf9();
        let mut image: Vec<FieldElem> = Vec::new();
        for e in ctx.all_elements() {
            let t = trace_full(&e);
            assert!(t.in_subfield());
            if !image.contains(&t) {
                image.push(t);
            }
        }
        assert_eq!(image.len(), 3);
    }

    #[test]
    fn norm_hits_generator_fourth_power() {
        // N(g) = g⁴ = −1 = 2 in GF(9) for a generator g.
        let ctx = gf9();
        let g = ctx
            .all_elements()
            .find(|e| !e.is_zero() && e.mult_order().unwrap() == 8)
            .unwrap();
        assert_eq!(norm_full(&g), g.pow(4));
        assert_eq!(norm_full(&g), ctx.integer(2));
    }

    #[test]
    fn norm_is_multiplicative_trace_additive() {
        let ctx = make_field(2, 3, 1, None).unwrap();
        let all: Vec<FieldElem> = ctx.all_elements().collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    trace_full(&a.add_ref(b)),
                    trace_full(a).add_ref(&trace_full(b))
                );
                assert_eq!(norm_full(&a.mul_ref(b)), norm_full(a).mul_ref(&norm_full(b)));
            }
        }
    }

    #[test]
    fn full_norm_is_power_map() {
        let ctx = gf9();
        let q = ctx.q();
        let m = ctx.group_order() as u32;
        let exp = (q.pow(m) - 1) / (q - 1);
        for e in ctx.all_elements().filter(|e| !e.is_zero()) {
            assert_eq!(norm_full(&e), e.pow(exp));
        }
    }

    #[test]
    fn trace_one_element_examples() {
        // GF(4): θ = ω since Tr(1) = 0 and Tr(ω) = 1.
        let ctx = gf4();
        let th = trace_one_element(&ctx, 2).unwrap();
        assert_eq!(th, ctx.gen());
        assert!(trace_full(&th).is_one());
        // GF(9): Tr(1) = 2, so θ = 2⁻¹·1 = 2.
        let ctx = gf9();
        let th = trace_one_element(&ctx, 2).unwrap();
        assert_eq!(th, ctx.integer(2));
        assert!(trace_full(&th).is_one());
    }

    #[test]
    fn trace_one_when_group_order_coprime_to_char() {
        // Tr(1) = m, so θ = m⁻¹ whenever p ∤ m.
        let ctx = make_field(2, 3, 1, None).unwrap();
        let th = trace_one_element(&ctx, 3).unwrap();
        assert_eq!(th, ctx.one()); // m = 3 is odd, 3⁻¹ = 1 in GF(2)
    }

    #[test]
    fn normal_elements_gf4() {
        let ctx = gf4();
        assert!(is_normal_element(&ctx.gen()));
        assert!(!is_normal_element(&ctx.one()));
        assert!(!is_normal_element(&ctx.zero()));
    }

    #[test]
    fn normal_element_count_gf9() {
        // Brute force over GF(9): exactly the four elements a+bi with ab ≠ 0
        // have independent orbits {λ, λ³}.
        let ctx = gf9();
        let count = ctx.all_elements().filter(is_normal_element).count();
        assert_eq!(count, 4);
        for e in ctx.all_elements() {
            let expected = e.coeffs()[0] != 0 && e.coeffs()[1] != 0;
            assert_eq!(is_normal_element(&e), expected);
        }
    }

    #[test]
    fn subfield_membership_is_basis_independent() {
        let ctx = make_field(2, 4, 2, None).unwrap();
        let count = ctx.all_elements().filter(|e| e.in_subfield()).count();
        assert_eq!(count, 4); // |GF(4)| inside GF(16)
    }

    #[test]
    fn subfield_basis_has_dimension_d0() {
        let ctx = make_field(2, 6, 2, None).unwrap();
        let basis = subfield_basis(&ctx);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b.in_subfield());
        }
        assert_eq!(gf_p_rank(&basis.iter().map(|b| vec![b.clone()]).collect::<Vec<_>>(), 2), 2);
    }

    #[test]
    fn dedekind_independence_small_fields() {
        // No nonzero (λ_i) with Σ λ_i φ^i(x) = 0 for all x: the m×n matrix
        // (φ^i(b_j)) over the power basis has full row rank over E.
        use crate::matrix::Mat;
        for ctx in [gf4(), gf9(), make_field(2, 3, 1, None).unwrap()] {
            let m = ctx.group_order() as usize;
            let basis = ctx.span_basis();
            let rows: Vec<Vec<FieldElem>> = (0..m)
                .map(|i| {
                    basis
                        .iter()
                        .map(|b| apply_aut(AutPower(i as u64), b))
                        .collect()
                })
                .collect();
            let mat = Mat::from_rows(rows);
            assert_eq!(mat.rank(), m);
        }
    }

    #[test]
    fn contexts_and_elements_are_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FieldCtx>();
        assert_send_sync::<FieldElem>();
    }

    #[test]
    fn degree_one_tower() {
        let ctx = make_field(7, 1, 1, None).unwrap();
        assert_eq!(ctx.group_order(), 1);
        let six = ctx.integer(6);
        assert_eq!(six.pow(2), ctx.one());
        assert!(six.in_subfield());
    }
}
