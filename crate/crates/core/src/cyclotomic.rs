//! Exact arithmetic in Q(ζ_n) and the characteristic-zero descent pipeline.
//!
//! Elements are rational-coefficient vectors in the power basis of ζ modulo
//! the n-th cyclotomic polynomial; automorphisms are σ_k: ζ ↦ ζ^k for k
//! coprime to n. Norm equations are deliberately semi-decidable here: a
//! bounded search over roots of unity plus one sound obstruction criterion
//! (norms over complex conjugation are nonnegative reals in every embedding,
//! certified by interval arithmetic). No floating point enters any decision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::gcd_u64;
use crate::cocycle::{pi_c, solve_h90, twisted_power, Cocycle, H90Strategy, Presentation};
use crate::descent::{
    check_absolutely_irreducible, intertwiner, DescentCertificate, DescentOutcome, Obstruction,
    Relation, Representation,
};
use crate::error::{Error, Result};
use crate::matrix::{apply_aut_mat, Coeff, GaloisCoeff, Mat};
use crate::rng::Rng64;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials
// ---------------------------------------------------------------------------

/// The n-th cyclotomic polynomial by recursive division of x^n − 1 by the
/// Φ_d for proper divisors d | n. Little-endian integer coefficients.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in crate::arith::divisors(n) {
        if d == n {
            continue;
        }
        num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact division of integer polynomials (the divisor is monic up to sign of
/// the constant case Φ_1).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

// ---------------------------------------------------------------------------
// context and elements
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct CycloCtxData {
    n: u64,
    phi: usize,
    /// Monic Φ_n, little-endian rational coefficients, length φ(n) + 1.
    modulus: Vec<BigRational>,
    /// ζ^j reduced mod Φ_n, for j in 0..n.
    zeta_pows: Vec<Vec<BigRational>>,
    /// The acting automorphism subgroup, sorted, closed under multiplication
    /// mod n, containing 1.
    subgroup: Vec<u64>,
    sub_gens: Vec<u64>,
}

/// Q(ζ_n) together with a chosen subgroup of Gal(Q(ζ_n)/Q).
#[derive(Clone)]
pub struct CycloCtx(Arc<CycloCtxData>);

impl fmt::Debug for CycloCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CycloCtx(n={}, subgroup={:?})",
            self.0.n, self.0.subgroup
        )
    }
}

impl PartialEq for CycloCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n && self.0.subgroup == other.0.subgroup)
    }
}
impl Eq for CycloCtx {}

/// An element of Q(ζ_n): length-φ(n) rational coordinates in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElem {
    ctx: CycloCtx,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl CycloCtx {
    /// Build Q(ζ_n) with the subgroup generated by the given k's (each
    /// coprime to n); the closure is computed and recorded.
    pub fn new(n: u64, subgroup_gens: &[u64]) -> Result<CycloCtx> {
        if n == 0 {
            return Err(Error::BadParameters("conductor must be positive".into()));
        }
        for &k in subgroup_gens {
            if gcd_u64(k % n, n) != 1 {
                return Err(Error::NotCoprime(k, n));
            }
        }
        let phi_poly = cyclotomic_polynomial(n);
        let phi = phi_poly.len() - 1;
        let modulus: Vec<BigRational> = phi_poly
            .into_iter()
            .map(|c| BigRational::from_integer(c))
            .collect();
        // ζ^j tables.
        let mut zeta_pows: Vec<Vec<BigRational>> = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..n {
            zeta_pows.push(cur.clone());
            // multiply by ζ: shift and reduce by the monic modulus
            let mut next = vec![BigRational::zero(); phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let lead = next[phi].clone();
            if !lead.is_zero() {
                for i in 0..phi {
                    let sub = &lead * &modulus[i];
                    next[i] -= sub;
                }
            }
            next.pop();
            cur = next;
        }
        // subgroup closure
        let mut subgroup: Vec<u64> = vec![1];
        let mut frontier = vec![1u64];
        while let Some(x) = frontier.pop() {
            for &g in subgroup_gens {
                let y = (x * (g % n)) % n;
                if !subgroup.contains(&y) {
                    subgroup.push(y);
                    frontier.push(y);
                }
            }
        }
        subgroup.sort();
        Ok(CycloCtx(Arc::new(CycloCtxData {
            n,
            phi,
            modulus,
            zeta_pows,
            subgroup,
            sub_gens: subgroup_gens.to_vec(),
        })))
    }

    pub fn conductor(&self) -> u64 {
        self.0.n
    }

    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.0.subgroup
    }

    pub fn subgroup_gens(&self) -> &[u64] {
        &self.0.sub_gens
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.0.modulus
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem {
            ctx: self.clone(),
            coeffs: vec![BigRational::zero(); self.0.phi],
        }
    }

    pub fn one(&self) -> CycloElem {
        self.integer(1)
    }

    pub fn integer(&self, v: i64) -> CycloElem {
        let mut coeffs = vec![BigRational::zero(); self.0.phi];
        coeffs[0] = rat(v, 1);
        CycloElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> CycloElem {
        let mut coeffs = vec![BigRational::zero(); self.0.phi];
        coeffs[0] = rat(num, den);
        CycloElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// ζ^k (k arbitrary, reduced mod n).
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let idx = k.rem_euclid(self.0.n as i64) as usize;
        CycloElem {
            ctx: self.clone(),
            coeffs: self.0.zeta_pows[idx].clone(),
        }
    }

    pub fn zeta(&self) -> CycloElem {
        self.zeta_pow(1)
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> Result<CycloElem> {
        if coeffs.len() > self.0.phi {
            return Err(Error::DegreeMismatch(format!(
                "{} coefficients for degree {}",
                coeffs.len(),
                self.0.phi
            )));
        }
        let mut c = coeffs;
        c.resize(self.0.phi, BigRational::zero());
        Ok(CycloElem {
            ctx: self.clone(),
            coeffs: c,
        })
    }
}

impl CycloElem {
    pub fn ctx(&self) -> &CycloCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn add_ref(&self, other: &CycloElem) -> CycloElem {
        assert!(self.ctx == other.ctx);
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &CycloElem) -> CycloElem {
        assert!(self.ctx == other.ctx);
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg_ref(&self) -> CycloElem {
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul_ref(&self, other: &CycloElem) -> CycloElem {
        assert!(self.ctx == other.ctx);
        let phi = self.ctx.0.phi;
        let modulus = &self.ctx.0.modulus;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        for i in (phi..prod.len()).rev() {
            let lead = prod[i].clone();
            if lead.is_zero() {
                continue;
            }
            prod[i] = BigRational::zero();
            for j in 0..phi {
                let sub = &lead * &modulus[j];
                prod[i - phi + j] -= sub;
            }
        }
        prod.truncate(phi);
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs: prod,
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycloElem {
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse by extended Euclid against Φ_n.
    pub fn inverse(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::SingularMatrix);
        }
        // Extended gcd of self (as polynomial) and the modulus.
        let modulus = &self.ctx.0.modulus;
        let mut r0: Vec<BigRational> = modulus.clone();
        let mut r1: Vec<BigRational> = self.coeffs.clone();
        trim(&mut r1);
        let phi = self.ctx.0.phi;
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = rat_poly_divmod(&r0, &r1);
            let s_next = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_next;
            trim(&mut r1);
        }
        // r0 = gcd; Φ_n is irreducible so gcd is a nonzero constant.
        if r0.len() != 1 || r0[0].is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv_c = BigRational::one() / r0[0].clone();
        // s0 / r0 is the inverse of self modulo Φ_n. s0 has degree < φ.
        let mut coeffs: Vec<BigRational> = s0.iter().map(|c| c * &inv_c).collect();
        coeffs.resize(phi, BigRational::zero());
        let out = CycloElem {
            ctx: self.ctx.clone(),
            coeffs,
        };
        debug_assert!(out.mul_ref(self).is_one());
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> CycloElem {
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
}

fn trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![BigRational::zero()], rem);
    }
    let lead_inv = BigRational::one() / den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] * &lead_inv;
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let sub = &c * dc;
            rem[i + j] -= sub;
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

// ---------------------------------------------------------------------------
// Galois action
// ---------------------------------------------------------------------------

/// σ_k: ζ ↦ ζ^k, a ring automorphism for gcd(k, n) = 1.
pub fn cyclo_aut(k: u64, x: &CycloElem) -> Result<CycloElem> {
    let n = x.ctx.0.n;
    if gcd_u64(k % n, n) != 1 {
        return Err(Error::NotCoprime(k, n));
    }
    let mut out = x.ctx.zero();
    for (i, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let img = x.ctx.zeta_pow(((i as u64 * (k % n)) % n) as i64);
        out = out.add_ref(&img.scale(c));
    }
    Ok(out)
}

/// Whether x is fixed by every element of the context's subgroup.
pub fn fixed_by(x: &CycloElem) -> bool {
    x.ctx
        .0
        .subgroup
        .iter()
        .all(|&k| cyclo_aut(k, x).expect("subgroup is coprime") == *x)
}

/// Trace over the context's subgroup: Σ_k σ_k(x).
pub fn cyclo_trace(x: &CycloElem) -> CycloElem {
    let mut acc = x.ctx.zero();
    for &k in &x.ctx.0.subgroup {
        acc = acc.add_ref(&cyclo_aut(k, x).expect("subgroup is coprime"));
    }
    acc
}

/// Norm over the context's subgroup: ∏_k σ_k(x).
pub fn cyclo_norm(x: &CycloElem) -> CycloElem {
    let mut acc = x.ctx.one();
    for &k in &x.ctx.0.subgroup {
        acc = acc.mul_ref(&cyclo_aut(k, x).expect("subgroup is coprime"));
    }
    acc
}

impl Coeff for CycloElem {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
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

impl GaloisCoeff for CycloElem {
    type Aut = u64;

    fn aut_identity(&self) -> u64 {
        1
    }
    fn aut_compose(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.ctx.0.n
    }
    fn aut_order(&self, a: &u64) -> u64 {
        let n = self.ctx.0.n;
        let mut x = a % n;
        let mut ord = 1;
        while x != 1 % n {
            x = (x * (a % n)) % n;
            ord += 1;
            assert!(ord <= n, "not a unit mod n");
        }
        ord
    }
    fn apply(&self, a: &u64) -> Self {
        cyclo_aut(*a, self).expect("automorphism index coprime to conductor")
    }
    fn scan_basis(&self) -> Vec<Self> {
        (0..self.ctx.0.phi)
            .map(|i| self.ctx.zeta_pow(i as i64))
            .collect()
    }
    fn random_like(&self, rng: &mut Rng64) -> Self {
        // Small rationals keep Π_C values printable; used only as fallback
        // Hilbert-90 candidates.
        let coeffs = (0..self.ctx.0.phi)
            .map(|_| {
                let num = rng.below(9) as i64 - 4;
                let den = 1 + rng.below(2) as i64;
                rat(num, den)
            })
            .collect();
        CycloElem {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
    fn char_divides(&self, _order: u64) -> bool {
        false
    }
    fn integer_like(&self, v: i64) -> Self {
        self.ctx.integer(v)
    }
}

// ---------------------------------------------------------------------------
// certified embeddings (interval arithmetic)
// ---------------------------------------------------------------------------

pub mod embed {
    //! Rational interval arithmetic for the complex embeddings
    //! ζ ↦ e^(2πij/n). Only signs of real algebraic numbers are ever
    //! decided, and only with certified enclosures.

    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    pub struct Interval {
        pub lo: BigRational,
        pub hi: BigRational,
    }

    impl Interval {
        pub fn point(r: BigRational) -> Self {
            Interval {
                lo: r.clone(),
                hi: r,
            }
        }

        pub fn add(&self, o: &Interval) -> Interval {
            Interval {
                lo: &self.lo + &o.lo,
                hi: &self.hi + &o.hi,
            }
        }

        pub fn sub(&self, o: &Interval) -> Interval {
            Interval {
                lo: &self.lo - &o.hi,
                hi: &self.hi - &o.lo,
            }
        }

        pub fn mul(&self, o: &Interval) -> Interval {
            let cands = [
                &self.lo * &o.lo,
                &self.lo * &o.hi,
                &self.hi * &o.lo,
                &self.hi * &o.hi,
            ];
            let mut lo = cands[0].clone();
            let mut hi = cands[0].clone();
            for c in &cands[1..] {
                if *c < lo {
                    lo = c.clone();
                }
                if *c > hi {
                    hi = c.clone();
                }
            }
            Interval { lo, hi }
        }

        pub fn scale(&self, r: &BigRational) -> Interval {
            if r.is_negative() {
                Interval {
                    lo: &self.hi * r,
                    hi: &self.lo * r,
                }
            } else {
                Interval {
                    lo: &self.lo * r,
                    hi: &self.hi * r,
                }
            }
        }

        pub fn widen(&self, eps: &BigRational) -> Interval {
            Interval {
                lo: &self.lo - eps,
                hi: &self.hi + eps,
            }
        }

        pub fn is_negative(&self) -> bool {
            self.hi.is_negative()
        }

        pub fn is_positive(&self) -> bool {
            self.lo.is_positive()
        }

        pub fn contains_zero(&self) -> bool {
            !self.is_negative() && !self.is_positive()
        }

        /// Round outward to denominators 2^prec, keeping numbers small.
        pub fn round_out(&self, prec: u32) -> Interval {
            let scale = BigInt::from(1) << prec;
            let lo = (&self.lo * BigRational::from_integer(scale.clone())).floor();
            let hi = (&self.hi * BigRational::from_integer(scale.clone())).ceil();
            Interval {
                lo: lo / BigRational::from_integer(scale.clone()),
                hi: hi / BigRational::from_integer(scale),
            }
        }
    }

    fn two_pow_neg(prec: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << prec)
    }

    /// Enclosure of arctan(1/x) by its alternating series.
    fn arctan_inv(x: i64, prec: u32) -> Interval {
        let xr = BigRational::from_integer(BigInt::from(x));
        let x2 = &xr * &xr;
        let mut term = BigRational::one() / xr; // 1/x
        let mut sum = BigRational::zero();
        let mut k = 0u32;
        let eps = two_pow_neg(prec + 8);
        loop {
            let contrib = &term / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
            if k % 2 == 0 {
                sum += &contrib;
            } else {
                sum -= &contrib;
            }
            term = term / &x2;
            k += 1;
            let next = &term / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
            if next < eps {
                // Alternating: the truncation error is within the next term.
                return if k % 2 == 0 {
                    Interval {
                        lo: sum.clone(),
                        hi: sum + next,
                    }
                } else {
                    Interval {
                        lo: &sum - &next,
                        hi: sum,
                    }
                }
                .round_out(prec + 4);
            }
        }
    }

    /// Machin's formula: π = 16·arctan(1/5) − 4·arctan(1/239).
    pub fn pi_interval(prec: u32) -> Interval {
        let a = arctan_inv(5, prec + 6);
        let b = arctan_inv(239, prec + 6);
        let sixteen = BigRational::from_integer(BigInt::from(16));
        let four = BigRational::from_integer(BigInt::from(4));
        a.scale(&sixteen).sub(&b.scale(&four)).round_out(prec)
    }

    /// cos on an interval: Taylor expansion at the midpoint, widened by the
    /// radius (cos is 1-Lipschitz) and the series remainder.
    fn cos_interval(x: &Interval, prec: u32) -> Interval {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&x.lo + &x.hi) / &two;
        let radius = (&x.hi - &x.lo) / &two;
        let (value, err) = taylor_even(&mid, prec, true);
        Interval {
            lo: &value - &err,
            hi: &value + &err,
        }
        .widen(&radius)
        .round_out(prec)
    }

    /// sin on an interval, same scheme (sin is 1-Lipschitz).
    fn sin_interval(x: &Interval, prec: u32) -> Interval {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&x.lo + &x.hi) / &two;
        let radius = (&x.hi - &x.lo) / &two;
        let (value, err) = taylor_even(&mid, prec, false);
        Interval {
            lo: &value - &err,
            hi: &value + &err,
        }
        .widen(&radius)
        .round_out(prec)
    }

    /// Partial Taylor sum of cos (even = true) or sin at a rational point,
    /// with a rigorous remainder bound: once consecutive term ratios drop
    /// below 1/2 the tail is at most twice the next term.
    fn taylor_even(c: &BigRational, prec: u32, cos: bool) -> (BigRational, BigRational) {
        let eps = two_pow_neg(prec + 8);
        let c2 = c * c;
        let mut term = if cos {
            BigRational::one()
        } else {
            c.clone()
        };
        let mut sum = BigRational::zero();
        let mut k: i64 = 0;
        loop {
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            // next |term| = |term|·c²/((m+1)(m+2)) with m = 2k (+1 for sin)
            let m = if cos { 2 * k } else { 2 * k + 1 };
            let denom = BigRational::from_integer(BigInt::from((m + 1) * (m + 2)));
            term = &term * &c2 / denom;
            k += 1;
            let ratio_small = {
                let m2 = if cos { 2 * k } else { 2 * k + 1 };
                let next_denom = BigInt::from((m2 + 1) * (m2 + 2));
                &c2 * BigRational::from_integer(BigInt::from(2))
                    < BigRational::from_integer(next_denom)
            };
            if term.abs() < eps && ratio_small {
                let bound = term.abs() * BigRational::from_integer(BigInt::from(2));
                return (sum, bound);
            }
        }
    }

    /// Enclosures of the real and imaginary parts of x under the embedding
    /// ζ ↦ e^(2πij/n).
    pub fn embed_complex(x: &CycloElem, j: u64, prec: u32) -> (Interval, Interval) {
        let n = x.ctx().conductor();
        let pi = pi_interval(prec + 8);
        let two = BigRational::from_integer(BigInt::from(2));
        let base = pi.scale(&(&two / BigRational::from_integer(BigInt::from(n as i64))));
        let mut re = Interval::point(BigRational::zero());
        let mut im = Interval::point(BigRational::zero());
        for (i, coeff) in x.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let angle_steps = (i as u64 * (j % n)) % n;
            let theta = base.scale(&BigRational::from_integer(BigInt::from(angle_steps as i64)));
            re = re.add(&cos_interval(&theta, prec + 8).scale(coeff));
            im = im.add(&sin_interval(&theta, prec + 8).scale(coeff));
        }
        (re.round_out(prec), im.round_out(prec))
    }

    /// Certified sign of a real embedded value, doubling precision from 64
    /// to 1024 bits.
    pub fn certify_real_sign(x: &CycloElem, j: u64) -> Option<std::cmp::Ordering> {
        let mut prec = 64u32;
        while prec <= 1024 {
            let (re, _) = embed_complex(x, j, prec);
            if re.is_negative() {
                return Some(std::cmp::Ordering::Less);
            }
            if re.is_positive() {
                return Some(std::cmp::Ordering::Greater);
            }
            prec *= 2;
        }
        None
    }
}

// ---------------------------------------------------------------------------
// obstruction test and bounded norm search
// ---------------------------------------------------------------------------

/// Verdict of the conjugation obstruction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// λ is real and certified negative under the listed embedding, so
    /// N(μ) = μ·conj(μ) = λ is unsolvable.
    Unsolvable { embedding: u64 },
    Unknown,
}

/// Sound unsolvability test for N(μ) = λ over the conjugation subgroup
/// ⟨σ_{n−1}⟩: norms are |μ|² ≥ 0 in every complex embedding, so a λ that is
/// real and negative under some embedding has no preimage.
pub fn conjugation_obstruction(ctx: &CycloCtx, lambda: &CycloElem) -> Result<ObstructionVerdict> {
    let n = ctx.conductor();
    if ctx.subgroup() != [1 % n, (n - 1) % n]
        && !(n <= 2 && ctx.subgroup() == [1 % n])
    {
        return Err(Error::NotConjugationSubgroup);
    }
    // Realness is exact: λ fixed by conjugation.
    if cyclo_aut(n - 1, lambda)? != *lambda {
        return Ok(ObstructionVerdict::Unknown);
    }
    for j in 1..n.max(2) {
        if gcd_u64(j, n) != 1 {
            continue;
        }
        if j > n - j {
            continue; // conjugate embedding, same real value
        }
        match embed::certify_real_sign(lambda, j) {
            Some(std::cmp::Ordering::Less) => {
                return Ok(ObstructionVerdict::Unsolvable { embedding: j })
            }
            Some(_) => {}
            None => {
                return Err(Error::NormSearchInconclusive(format!(
                    "sign of embedding {j} not certified at 1024 bits"
                )))
            }
        }
    }
    Ok(ObstructionVerdict::Unknown)
}

/// Exact search for N(μ) = target over the context subgroup, scanning the
/// hint list and then ±ζ^k in ascending k. A hit is certified by exact
/// arithmetic; `None` proves nothing.
pub fn bounded_norm_search(
    ctx: &CycloCtx,
    target: &CycloElem,
    hints: &[CycloElem],
) -> Option<CycloElem> {
    let n = ctx.conductor();
    let mut candidates: Vec<CycloElem> = hints.to_vec();
    for k in 0..n {
        let z = ctx.zeta_pow(k as i64);
        candidates.push(z.clone());
        candidates.push(z.neg_ref());
    }
    candidates
        .into_iter()
        .find(|mu| !mu.is_zero() && cyclo_norm(mu) == *target)
}

// ---------------------------------------------------------------------------
// the characteristic-zero rewrite pipeline
// ---------------------------------------------------------------------------

/// Extra inputs for the cyclotomic pipeline: norm-equation hints μ and
/// Hilbert-90 scalar candidates λ.
#[derive(Debug, Clone, Default)]
pub struct CycloHints {
    pub mu: Vec<CycloElem>,
    pub lambda: Vec<CycloElem>,
}

/// Decide writability of an absolutely irreducible representation over the
/// fixed field of the context subgroup (which must be cyclic), mirroring the
/// finite-field pipeline with norm equations routed through the bounded
/// search plus the conjugation obstruction test.
pub fn cyclo_rewrite(
    ctx: &CycloCtx,
    rep: &Representation<CycloElem>,
    hints: &CycloHints,
    seed: u64,
) -> Result<DescentCertificate<CycloElem>> {
    if !check_absolutely_irreducible(rep) {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let gens = ctx.subgroup_gens();
    if gens.len() != 1 {
        return Err(Error::BadParameters(
            "the cyclotomic pipeline handles cyclic subgroups".into(),
        ));
    }
    let proto = ctx.one();
    let k = gens[0] % ctx.conductor();
    let order = proto.aut_order(&k);
    let pres = Presentation::new(vec![k], vec![order]);

    let mut certificate = DescentCertificate {
        outcome: DescentOutcome::Obstructed {
            obstruction: Obstruction::NoIntertwiner { aut: k },
        },
        intertwiners: Vec::new(),
        power_scalars: Vec::new(),
        commutator_scalar: None,
        cocycle: None,
        strategy: "scalar-candidates".to_string(),
        seed,
    };

    let Some(d_mat) = intertwiner(rep, &k)? else {
        return Ok(certificate);
    };
    certificate.intertwiners.push((k, d_mat.clone()));

    let prod = twisted_power(&proto, &k, &d_mat, order);
    let lambda = prod
        .as_scalar()
        .ok_or_else(|| Error::NotScalar(format!("{prod:?}")))?;
    if cyclo_aut(k, &lambda)? != lambda {
        return Err(Error::NotScalar(
            "power scalar is not fixed by its generator".into(),
        ));
    }
    certificate.power_scalars.push((k, lambda.clone()));

    let target = lambda.inverse()?;
    let mu = match bounded_norm_search(ctx, &target, &hints.mu) {
        Some(mu) => mu,
        None => {
            // Try to upgrade the failed search to a certified obstruction.
            if k == ctx.conductor() - 1 {
                match conjugation_obstruction(ctx, &target)? {
                    ObstructionVerdict::Unsolvable { .. } => {
                        certificate.outcome = DescentOutcome::Obstructed {
                            obstruction: Obstruction::NormUnsolvable {
                                aut: k,
                                lambda: target,
                            },
                        };
                        return Ok(certificate);
                    }
                    ObstructionVerdict::Unknown => {
                        return Err(Error::NormSearchInconclusive(
                            "bounded norm search failed and no obstruction applies".into(),
                        ))
                    }
                }
            }
            return Err(Error::NormSearchInconclusive(
                "bounded norm search failed and no obstruction applies".into(),
            ));
        }
    };

    let c_mat = d_mat.mul_scalar(&mu);
    let cocycle = Cocycle::validate_and_close(pres, vec![c_mat])?;

    // Hilbert-90 candidates: hints, then (1+ζ)/2, then ±(1±ζ^j)/2, then
    // seeded small rationals, then the deterministic solver.
    let half = ctx.rational(1, 2);
    let mut candidates: Vec<CycloElem> = hints.lambda.to_vec();
    candidates.push(ctx.one().add_ref(&ctx.zeta()).mul_ref(&half));
    for j in 1..ctx.conductor() {
        let zj = ctx.zeta_pow(j as i64);
        let plus = ctx.one().add_ref(&zj).mul_ref(&half);
        let minus = ctx.one().sub_ref(&zj).mul_ref(&half);
        candidates.push(plus.clone());
        candidates.push(minus.clone());
        candidates.push(plus.neg_ref());
        candidates.push(minus.neg_ref());
    }
    let mut rng = Rng64::derive(seed, 0x637963);
    for _ in 0..32 {
        candidates.push(proto.random_like(&mut rng));
    }
    let d = rep.dim();
    let mut a = None;
    for cand in candidates {
        let trial = pi_c(&cocycle, &Mat::scalar(d, &cand));
        if trial.is_invertible() && cocycle.is_solved_by(&trial) {
            a = Some(trial);
            break;
        }
    }
    let a = match a {
        Some(a) => a,
        None => solve_h90(&cocycle, H90Strategy::Deterministic, seed, 1)?,
    };

    let a_inv = a.invert()?;
    let rewritten: Vec<Mat<CycloElem>> = rep.gens().iter().map(|g| a_inv.mul(g).mul(&a)).collect();
    for r in &rewritten {
        for row in r.rows_vec() {
            for entry in row {
                if !fixed_by(&entry) {
                    return Err(Error::BadParameters(
                        "rewritten entries escaped the fixed field".into(),
                    ));
                }
            }
        }
    }
    certificate.cocycle = Some(cocycle);
    certificate.outcome = DescentOutcome::Written { a, rewritten };
    Ok(certificate)
}

/// Re-check a cyclotomic certificate from scratch.
pub fn verify_cyclo_certificate(
    ctx: &CycloCtx,
    rep: &Representation<CycloElem>,
    cert: &DescentCertificate<CycloElem>,
) -> Result<()> {
    let fail = |msg: &str| Err(Error::BadParameters(format!("certificate check failed: {msg}")));
    for (aut, d) in &cert.intertwiners {
        for g in rep.gens() {
            if g.mul(d) != d.mul(&apply_aut_mat(aut, g)) {
                return fail("intertwiner equation fails");
            }
        }
    }
    let proto = ctx.one();
    for ((aut, d), (aut2, lambda)) in cert.intertwiners.iter().zip(&cert.power_scalars) {
        if aut != aut2 {
            return fail("scalar/intertwiner generator mismatch");
        }
        let order = proto.aut_order(aut);
        let prod = twisted_power(&proto, aut, d, order);
        match prod.as_scalar() {
            Some(l) if &l == lambda => {}
            _ => return fail("power scalar does not match the twisted product"),
        }
    }
    match &cert.outcome {
        DescentOutcome::Written { a, rewritten } => {
            if !a.is_invertible() {
                return fail("conjugator is singular");
            }
            let a_inv = a.invert()?;
            for (g, r) in rep.gens().iter().zip(rewritten) {
                if &a_inv.mul(g).mul(a) != r {
                    return fail("rewritten matrix is not the conjugate");
                }
                for row in r.rows_vec() {
                    for entry in row {
                        if !fixed_by(&entry) {
                            return fail("rewritten entries are not fixed");
                        }
                    }
                }
            }
            if let Some(c) = &cert.cocycle {
                if !c.is_solved_by(a) {
                    return fail("conjugator does not solve the certificate cocycle");
                }
            }
            Ok(())
        }
        DescentOutcome::Obstructed { obstruction } => match obstruction {
            Obstruction::NoIntertwiner { aut } => match intertwiner(rep, aut)? {
                None => Ok(()),
                Some(_) => fail("claimed missing intertwiner exists"),
            },
            Obstruction::NormUnsolvable { lambda, .. } => {
                match conjugation_obstruction(ctx, lambda)? {
                    ObstructionVerdict::Unsolvable { .. } => Ok(()),
                    ObstructionVerdict::Unknown => {
                        fail("claimed norm obstruction is not certified")
                    }
                }
            }
            Obstruction::KernelIntersection { .. } => {
                fail("kernel-intersection obstructions do not arise in the cyclic pipeline")
            }
        },
    }
}

// ---------------------------------------------------------------------------
// example builders
// ---------------------------------------------------------------------------

/// The worked representation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleFamily {
    /// Dicyclic group of order 8n over Q(ζ_4n) with conjugation descent;
    /// always obstructed.
    Dicyclic,
    /// Order-8n two-generator group over Q(ζ_8n) with σ_{1+4n}; always
    /// writable, with a closed-form conjugator.
    SemidihedralLike,
    /// Metacyclic ⟨a,b | a^m = b^n = 1, a⁻¹ba = b^r⟩ over Q(ζ_n) with σ_r of
    /// order m.
    Metacyclic { m: u64 },
}

/// Emit the exact generator matrices of the chosen family at parameter n,
/// with the group relations verified on the matrices.
pub fn example_builder(
    family: ExampleFamily,
    n: u64,
) -> Result<(CycloCtx, Representation<CycloElem>)> {
    if n == 0 {
        return Err(Error::BadParameters("n must be at least 1".into()));
    }
    match family {
        ExampleFamily::Dicyclic => {
            let conductor = 4 * n;
            let ctx = CycloCtx::new(conductor, &[conductor - 1])?;
            let rho_a = Mat::from_rows(vec![
                vec![ctx.integer(0), ctx.integer(1)],
                vec![ctx.integer(-1), ctx.integer(0)],
            ]);
            let rho_b = Mat::from_rows(vec![
                vec![ctx.zeta(), ctx.integer(0)],
                vec![ctx.integer(0), ctx.zeta_pow(-1)],
            ]);
            // a² = b^{2n}, b^{4n} = 1, a⁻¹ba = b⁻¹
            let relations = vec![
                Relation {
                    lhs: vec![(0, 2)],
                    rhs: vec![(1, 2 * n as i64)],
                },
                Relation {
                    lhs: vec![(1, 4 * n as i64)],
                    rhs: vec![],
                },
                Relation {
                    lhs: vec![(0, -1), (1, 1), (0, 1)],
                    rhs: vec![(1, -1)],
                },
            ];
            let rep = Representation::new(vec![rho_a, rho_b], relations)?;
            Ok((ctx, rep))
        }
        ExampleFamily::SemidihedralLike => {
            let conductor = 8 * n;
            let k = (1 + 4 * n) % conductor;
            let ctx = CycloCtx::new(conductor, &[k])?;
            let rho_a = Mat::from_rows(vec![
                vec![ctx.integer(0), ctx.integer(1)],
                vec![ctx.integer(-1), ctx.integer(0)],
            ]);
            let rho_b = Mat::from_rows(vec![
                vec![ctx.zeta(), ctx.integer(0)],
                vec![ctx.integer(0), ctx.zeta_pow(k as i64)],
            ]);
            // a² = b^{4n}, b^{8n} = 1, a⁻¹ba = b^{1+4n}
            let relations = vec![
                Relation {
                    lhs: vec![(0, 2)],
                    rhs: vec![(1, 4 * n as i64)],
                },
                Relation {
                    lhs: vec![(1, 8 * n as i64)],
                    rhs: vec![],
                },
                Relation {
                    lhs: vec![(0, -1), (1, 1), (0, 1)],
                    rhs: vec![(1, k as i64)],
                },
            ];
            let rep = Representation::new(vec![rho_a, rho_b], relations)?;
            Ok((ctx, rep))
        }
        ExampleFamily::Metacyclic { m } => {
            if m < 1 || n < 2 {
                return Err(Error::BadParameters(
                    "metacyclic family needs m ≥ 1 and n ≥ 2".into(),
                ));
            }
            // Smallest r ≥ 2 whose multiplicative order mod n is m.
            let r = (2..n)
                .find(|&r| {
                    gcd_u64(r, n) == 1 && {
                        let mut x = r % n;
                        let mut ord = 1;
                        while x != 1 {
                            x = (x * r) % n;
                            ord += 1;
                        }
                        ord == m
                    }
                })
                .ok_or_else(|| {
                    Error::BadParameters(format!("no residue of order {m} modulo {n}"))
                })?;
            let ctx = CycloCtx::new(n, &[r])?;
            let md = m as usize;
            // Cycle permutation oriented so that conjugation shifts the
            // diagonal of ρ(b) forward: P⁻¹·diag(d_i)·P = diag(d_{i+1}).
            let rho_a = Mat::from_fn(md, |row, col| {
                if row == (col + 1) % md {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            });
            let mut rho_b = Mat::zero(md, &ctx.one());
            let mut rk = 1i64;
            for i in 0..md {
                rho_b.set(i, i, ctx.zeta_pow(rk));
                rk = (rk * r as i64).rem_euclid(n as i64);
            }
            let relations = vec![
                Relation {
                    lhs: vec![(0, m as i64)],
                    rhs: vec![],
                },
                Relation {
                    lhs: vec![(1, n as i64)],
                    rhs: vec![],
                },
                Relation {
                    lhs: vec![(0, -1), (1, 1), (0, 1)],
                    rhs: vec![(1, r as i64)],
                },
            ];
            let rep = Representation::new(vec![rho_a, rho_b], relations)?;
            Ok((ctx, rep))
        }
    }
}
