//! Quantitative reproduction of the invertibility probabilities: the exact
//! rational f(d,q) with its bounds, Monte Carlo (or exhaustive) invertibility
//! frequencies of Π_C candidates, and the normal-element densities behind the
//! regular-representation cocycle.
//!
//! Two densities are deliberately kept separate. `full_degree_density` is the
//! Möbius sum q⁻ⁿ·Σ_{d|n} μ(n/d)·q^d counting elements of full degree n,
//! which satisfies the bound ≥ 1 − q^(−n/2). `normal_basis_density` is the
//! exact density of normal elements, computed from the factorization type of
//! xⁿ − 1 over GF(q); it is the number the exhaustive counts and the
//! scalar-candidate success rate of the regular-representation cocycle
//! actually equal. The two agree only in special cases (for instance q even,
//! n = 2, or n = 1 they differ).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, factor, moebius};
use crate::cocycle::{full_cyclic, pi_c, Cocycle};
use crate::error::{Error, Result};
use crate::fftower::{is_normal_element, FieldCtx, FieldElem};
use crate::matrix::Mat;
use crate::rng::Rng64;

fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

fn check_prime_power(q: u128) -> Result<(u64, u32)> {
    let f = factor(q);
    if f.len() != 1 {
        return Err(Error::BadParameters(format!("{q} is not a prime power")));
    }
    Ok((f[0].0 as u64, f[0].1))
}

/// f(d, q) = |GL_d(q)| / q^(d²) = ∏_{i=1..d} (1 − q^(−i)), the probability
/// that a uniformly random d×d matrix over GF(q) is invertible.
pub fn f_dq(d: usize, q: u128) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::BadParameters("dimension must be positive".into()));
    }
    check_prime_power(q)?;
    let mut acc = BigRational::one();
    let mut qi = BigInt::one();
    for _ in 0..d {
        qi *= big(q);
        acc *= BigRational::one() - BigRational::new(BigInt::one(), qi.clone());
    }
    Ok(acc)
}

/// A certified lower bound for the infinite product f(∞, q), via the partial
/// product to `terms` factors and the tail bound
/// ∏_{i>D}(1 − q^(−i)) ≥ 1 − q^(−D)/(q − 1).
pub fn f_inf_lower_bound(q: u128, terms: usize) -> Result<BigRational> {
    let partial = f_dq(terms, q)?;
    let tail = BigRational::new(BigInt::one(), big(q).pow(terms as u32) * (big(q) - 1));
    Ok(partial * (BigRational::one() - tail))
}

/// The printed bounds: 1 − q⁻¹ ≥ f(d,q) > 1 − (q−1)⁻¹ (meaningful for
/// q > 2), and for q = 2 the sharper f(d,2) > 2/7.
pub fn f_bounds_hold(d: usize, q: u128) -> Result<bool> {
    let f = f_dq(d, q)?;
    let upper = BigRational::one() - BigRational::new(BigInt::one(), big(q));
    if f > upper {
        return Ok(false);
    }
    if q > 2 {
        let lower = BigRational::one() - BigRational::new(BigInt::one(), big(q) - 1);
        Ok(f > lower)
    } else {
        Ok(f > BigRational::new(big(2), big(7)))
    }
}

/// Density of elements of GF(qⁿ) of full degree n over GF(q):
/// q⁻ⁿ·Σ_{d|n} μ(n/d)·q^d.
pub fn full_degree_density(q: u128, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::BadParameters("degree must be positive".into()));
    }
    check_prime_power(q)?;
    let mut sum = BigInt::zero();
    for d in divisors(n) {
        sum += big(q).pow(d as u32) * BigInt::from(moebius(n / d));
    }
    Ok(BigRational::new(sum, big(q).pow(n as u32)))
}

/// Exact check of the closing inequality q⁻ⁿ·Σ μ(n/d)q^d ≥ 1 − q^(−n/2),
/// squared to stay in the integers: (qⁿ − Σ)² ≤ qⁿ.
pub fn full_degree_bound_holds(q: u128, n: u64) -> Result<bool> {
    let density = full_degree_density(q, n)?;
    let qn = big(q).pow(n as u32);
    let sum = (density * BigRational::from_integer(qn.clone()))
        .to_integer();
    let deficit = &qn - &sum;
    if deficit.is_negative() {
        return Ok(true);
    }
    Ok(&deficit * &deficit <= qn)
}

/// Exact density of normal elements of GF(qⁿ) over GF(q): with n = n'·p^v,
/// p the characteristic and p ∤ n', the count is
/// qⁿ·∏_{d|n'} (1 − q^(−e_d))^(φ(d)/e_d) where e_d is the multiplicative
/// order of q modulo d (the degree of the irreducible factors of the d-th
/// cyclotomic polynomial over GF(q)).
pub fn normal_basis_density(q: u128, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::BadParameters("degree must be positive".into()));
    }
    let (p, _) = check_prime_power(q)?;
    let mut n_prime = n;
    while n_prime % p as u64 == 0 {
        n_prime /= p as u64;
    }
    let mut acc = BigRational::one();
    for d in divisors(n_prime) {
        // multiplicative order of q mod d
        let mut e = 1u32;
        let mut x = q % d as u128;
        while x != 1 % d as u128 {
            x = (x * (q % d as u128)) % d as u128;
            e += 1;
        }
        let count = euler_phi(d) / e as u64;
        let factor_term =
            BigRational::one() - BigRational::new(BigInt::one(), big(q).pow(e));
        for _ in 0..count {
            acc *= factor_term.clone();
        }
    }
    Ok(acc)
}

fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n as u128) {
        out = out / p as u64 * (p as u64 - 1);
    }
    out
}

/// Exhaustive normal-element count, the oracle behind
/// [`normal_basis_density`].
pub fn count_normal_exhaustive(ctx: &FieldCtx) -> usize {
    ctx.all_elements().filter(is_normal_element).count()
}

/// The permutation-matrix cocycle of the left regular representation of
/// Gal(E/F): d = |G| and C_φ is the cycle matrix, so Π_C(λI) is the orbit
/// matrix (φ^(i−j)(λ)) and is invertible exactly when λ is normal.
pub fn regular_rep_cocycle(ctx: &FieldCtx) -> Result<Cocycle<FieldElem>> {
    let m = ctx.group_order() as usize;
    let perm = Mat::from_fn(m, |i, j| {
        if i == (j + 1) % m {
            ctx.one()
        } else {
            ctx.zero()
        }
    });
    Cocycle::validate_and_close(full_cyclic(ctx), vec![perm])
}

/// How Π_C candidates are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    /// Uniform X ∈ E^{d×d}; invertibility probability is exactly f(d, |F|).
    RandomX,
    /// X = λI for uniform λ ∈ E; the classical default expectation is
    /// "close to f(d, |F|)" but no exact claim is made.
    ScalarLambda,
    /// X = λ·Dⁱ with D the d-cycle permutation matrix.
    Structured,
}

impl CandidateKind {
    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::RandomX => "random-x",
            CandidateKind::ScalarLambda => "scalar-lambda",
            CandidateKind::Structured => "structured",
        }
    }
}

/// One sampled or exhaustive frequency measurement together with the theory
/// value it is compared against.
#[derive(Debug, Clone)]
pub struct TrialReport {
    pub kind: &'static str,
    pub d: usize,
    pub q: u128,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub theory: BigRational,
    /// Half-width of the 3σ binomial band around the theory value.
    pub sigma3: f64,
    /// Whether the counts are exhaustive rather than sampled.
    pub exhaustive: bool,
}

impl TrialReport {
    pub fn theory_f64(&self) -> f64 {
        rational_to_f64(&self.theory)
    }

    pub fn within_band(&self) -> bool {
        (self.estimate - self.theory_f64()).abs() <= self.sigma3
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Desk-scale rationals: convert through i128 when possible.
    match (i128::try_from(num.clone()), i128::try_from(den.clone())) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let digits = 1_000_000_000i128;
            let scaled = (r * BigRational::from_integer(BigInt::from(digits))).to_integer();
            i128::try_from(scaled).map(|s| s as f64 / digits as f64).unwrap_or(f64::NAN)
        }
    }
}

/// Measure the invertibility frequency of Π_C over sampled candidates; when
/// the candidate space is small enough to exhaust (|E|^(d²) ≤ 2²⁰ for
/// random-X, always for scalars), exact counting replaces sampling.
pub fn mc_invertibility(
    ctx: &FieldCtx,
    c: &Cocycle<FieldElem>,
    kind: CandidateKind,
    trials: u64,
    seed: u64,
) -> TrialReport {
    let d = c.dim();
    let theory = f_dq(d, ctx.q()).expect("q is a prime power");
    let exhaust = match kind {
        CandidateKind::RandomX => {
            let bits = (128 - ctx.field_size().leading_zeros()) as usize * d * d;
            bits <= 20
        }
        CandidateKind::ScalarLambda | CandidateKind::Structured => ctx.field_size() <= 1 << 20,
    };
    let (trials, successes, exhaustive) = if exhaust {
        let (s, t) = exhaustive_counts(ctx, c, kind);
        (t, s, true)
    } else {
        let mut rng = Rng64::derive(seed, 0x6d63);
        let mut s = 0u64;
        for _ in 0..trials {
            let x = sample_candidate(ctx, d, kind, &mut rng);
            if pi_c(c, &x).is_invertible() {
                s += 1;
            }
        }
        (trials, s, false)
    };
    let p = rational_to_f64(&theory);
    let sigma3 = 3.0 * (p * (1.0 - p) / trials as f64).sqrt();
    TrialReport {
        kind: kind.name(),
        d,
        q: ctx.q(),
        trials,
        successes,
        estimate: successes as f64 / trials as f64,
        theory,
        sigma3,
        exhaustive,
    }
}

fn sample_candidate(
    ctx: &FieldCtx,
    d: usize,
    kind: CandidateKind,
    rng: &mut Rng64,
) -> Mat<FieldElem> {
    match kind {
        CandidateKind::RandomX => Mat::random(d, &ctx.one(), rng),
        CandidateKind::ScalarLambda => Mat::scalar(d, &ctx.random(rng)),
        CandidateKind::Structured => {
            let cycle = Mat::from_fn(d, |r, c| {
                if (r + 1) % d == c {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            });
            cycle.pow(rng.below(d as u64)).mul_scalar(&ctx.random(rng))
        }
    }
}

/// Exhaustive (successes, total) over the full candidate space.
pub fn exhaustive_counts(
    ctx: &FieldCtx,
    c: &Cocycle<FieldElem>,
    kind: CandidateKind,
) -> (u64, u64) {
    let d = c.dim();
    match kind {
        CandidateKind::RandomX => {
            let entries = d * d;
            let size = ctx.field_size();
            let total = size.pow(entries as u32);
            assert!(total <= 1 << 20, "exhaustive random-X space too large");
            let elems: Vec<FieldElem> = ctx.all_elements().collect();
            let mut successes = 0u64;
            for idx in 0..total {
                let mut rem = idx;
                let x = Mat::from_fn(d, |_, _| {
                    let e = elems[(rem % size) as usize].clone();
                    rem /= size;
                    e
                });
                if pi_c(c, &x).is_invertible() {
                    successes += 1;
                }
            }
            (successes, total as u64)
        }
        CandidateKind::ScalarLambda => {
            let mut successes = 0u64;
            let mut total = 0u64;
            for lam in ctx.all_elements() {
                total += 1;
                if pi_c(c, &Mat::scalar(d, &lam)).is_invertible() {
                    successes += 1;
                }
            }
            (successes, total)
        }
        CandidateKind::Structured => {
            let cycle = Mat::from_fn(d, |r, cc| {
                if (r + 1) % d == cc {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            });
            let mut successes = 0u64;
            let mut total = 0u64;
            for i in 0..d as u64 {
                let di = cycle.pow(i);
                for lam in ctx.all_elements() {
                    total += 1;
                    if pi_c(c, &di.mul_scalar(&lam)).is_invertible() {
                        successes += 1;
                    }
                }
            }
            (successes, total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::scalar_singular_cocycle;
    use crate::fftower::make_field;
    use crate::testfields::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f_dq_values() {
        assert_eq!(f_dq(1, 2).unwrap(), r(1, 2));
        // |GL_2(3)| = 48 out of 81 matrices
        assert_eq!(f_dq(2, 3).unwrap(), r(16, 27));
        assert_eq!(f_dq(2, 3).unwrap(), r(48, 81));
        // |GL_2(2)| = 6 out of 16
        assert_eq!(f_dq(2, 2).unwrap(), r(3, 8));
        assert!(f_dq(2, 6).is_err());
        assert!(f_dq(0, 2).is_err());
    }

    #[test]
    fn f_dq_matches_exhaustive_gl_count() {
        // Count invertible 2×2 matrices over GF(2) directly.
        let ctx = make_field(2, 1, 1, None).unwrap();
        let elems: Vec<FieldElem> = ctx.all_elements().collect();
        let mut invertible = 0u64;
        let mut total = 0u64;
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        total += 1;
                        let m = Mat::from_rows(vec![
                            vec![a.clone(), b.clone()],
                            vec![c.clone(), d.clone()],
                        ]);
                        if m.is_invertible() {
                            invertible += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(total, 16);
        assert_eq!(invertible, 6);
        assert_eq!(f_dq(2, 2).unwrap(), r(invertible as i64, total as i64));
    }

    #[test]
    fn f_bounds_and_monotonicity() {
        for q in [2u128, 3, 4, 5, 8, 9] {
            for d in 1..=6 {
                assert!(f_bounds_hold(d, q).unwrap(), "d={d} q={q}");
                if d > 1 {
                    assert!(f_dq(d, q).unwrap() < f_dq(d - 1, q).unwrap());
                }
            }
        }
        for d in 1..=5 {
            assert!(f_dq(d, 3).unwrap() > f_dq(d, 2).unwrap());
        }
    }

    #[test]
    fn f_infinity_bound_at_two() {
        // f(∞, 2) = 0.288788… > 2/7; certify via partial product with tail.
        let lower = f_inf_lower_bound(2, 30).unwrap();
        assert!(lower > r(2, 7));
        assert!(lower < r(28879, 100000));
        assert!(lower > r(28878, 100000));
    }

    #[test]
    fn degree_density_values_and_bound() {
        assert_eq!(full_degree_density(3, 2).unwrap(), r(2, 3));
        assert_eq!(full_degree_density(2, 6).unwrap(), r(54, 64));
        assert_eq!(full_degree_density(2, 1).unwrap(), r(1, 1));
        // The 1 − q^(−n/2) lower bound holds exactly when n is a prime power
        // (the degree count is then q^n − q^(n/p) on the nose); for n with a
        // second prime factor the union of maximal subfields is larger and
        // the bound fails, e.g. 54/64 < 56/64 at (q, n) = (2, 6).
        for q in [2u128, 3, 4, 5] {
            for n in 1u64..=12 {
                let prime_power = factor(n as u128).len() <= 1;
                assert_eq!(
                    full_degree_bound_holds(q, n).unwrap(),
                    prime_power,
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn normal_density_matches_exhaustive_counts() {
        let cases: Vec<(FieldCtx, u128, u64)> = vec![
            (gf4(), 2, 2),
            (gf8(), 2, 3),
            (gf9(), 3, 2),
            (gf16_over_gf2(), 2, 4),
            (gf16_over_gf4(), 4, 2),
            (gf64_over_gf2(), 2, 6),
            (make_field(2, 1, 1, None).unwrap(), 2, 1),
        ];
        for (ctx, q, n) in cases {
            let density = normal_basis_density(q, n).unwrap();
            let count = count_normal_exhaustive(&ctx) as i64;
            let size = ctx.field_size() as i64;
            assert_eq!(density, r(count, size), "q={q} n={n} count={count}");
        }
    }

    #[test]
    fn normal_density_closed_values() {
        assert_eq!(normal_basis_density(3, 2).unwrap(), r(4, 9));
        assert_eq!(normal_basis_density(2, 1).unwrap(), r(1, 2));
        assert_eq!(normal_basis_density(2, 6).unwrap(), r(24, 64));
        assert_eq!(normal_basis_density(4, 3).unwrap(), r(27, 64));
    }

    #[test]
    fn regular_rep_scalar_density_equals_normal_density() {
        for (ctx, q, n) in [
            (gf4(), 2u128, 2u64),
            (gf9(), 3, 2),
            (gf8(), 2, 3),
            (gf16_over_gf4(), 4, 2),
        ] {
            let c = regular_rep_cocycle(&ctx).unwrap();
            let (succ, total) = exhaustive_counts(&ctx, &c, CandidateKind::ScalarLambda);
            assert_eq!(
                r(succ as i64, total as i64),
                normal_basis_density(q, n).unwrap()
            );
            // And candidate-by-candidate: invertible ⟺ normal.
            for lam in ctx.all_elements() {
                let inv = pi_c(&c, &Mat::scalar(c.dim(), &lam)).is_invertible();
                assert_eq!(inv, is_normal_element(&lam));
            }
        }
    }

    #[test]
    fn random_x_exhaustive_matches_f_exactly() {
        // Over GF(4), d = 2: all 4⁴ = 256 matrices X, for several cocycles.
        let ctx = gf4();
        let mut rng = Rng64::new(77);
        for _ in 0..5 {
            let a0 = Mat::random_invertible(2, &ctx.one(), &mut rng);
            let c = Cocycle::coboundary(full_cyclic(&ctx), &a0).unwrap();
            let (succ, total) = exhaustive_counts(&ctx, &c, CandidateKind::RandomX);
            assert_eq!(total, 256);
            assert_eq!(r(succ as i64, total as i64), f_dq(2, 2).unwrap());
        }
    }

    #[test]
    fn trivial_cocycle_scalar_density_gf4() {
        // d = 1, trivial cocycle: Π_C(λ) = Tr(λ), nonzero for half of GF(4).
        let ctx = gf4();
        let c = Cocycle::trivial(full_cyclic(&ctx), 1, &ctx.one()).unwrap();
        let (succ, total) = exhaustive_counts(&ctx, &c, CandidateKind::ScalarLambda);
        assert_eq!((succ, total), (2, 4));
    }

    #[test]
    fn counterexample_scalar_density_is_zero() {
        let ctx = gf4();
        let c = scalar_singular_cocycle(&ctx, 3).unwrap();
        let (succ, _) = exhaustive_counts(&ctx, &c, CandidateKind::ScalarLambda);
        assert_eq!(succ, 0);
        let report = mc_invertibility(&ctx, &c, CandidateKind::ScalarLambda, 100, 0);
        assert!(report.exhaustive);
        assert_eq!(report.successes, 0);
    }

    #[test]
    fn mc_report_random_x_within_band() {
        let ctx = gf9();
        let mut rng = Rng64::new(5);
        let a0 = Mat::random_invertible(3, &ctx.one(), &mut rng);
        let c = Cocycle::coboundary(full_cyclic(&ctx), &a0).unwrap();
        let report = mc_invertibility(&ctx, &c, CandidateKind::RandomX, 4000, 9);
        assert!(!report.exhaustive); // 9^9 > 2^20
        assert!(report.within_band(), "estimate {}", report.estimate);
    }
}
