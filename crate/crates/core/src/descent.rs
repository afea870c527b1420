//! The end-to-end descent pipeline over finite fields: decide whether an
//! absolutely irreducible representation given by generator matrices over E
//! can be conjugated into the fixed field F, and construct the conjugating
//! matrix when it can.
//!
//! Stages: intertwiners D_α per Galois generator (unique up to scalar by
//! Schur), power-relation normalization through a norm equation, commutator
//! normalization for the coprime two-generator presentation, cocycle closure,
//! Hilbert 90, and a final entrywise fixedness verification. Obstructions are
//! reported with the exact stage and witness so a standalone verifier can
//! re-check them from scratch.

use crate::cocycle::{
    full_cyclic, solve_h90, twisted_power, Cocycle, H90Strategy, Presentation, DEFAULT_MAX_TRIES,
};
use crate::error::{Error, Result};
use crate::fftower::{apply_aut, AutPower, FieldCtx, FieldElem};
use crate::matrix::{
    apply_aut_mat, burnside_spans, solve_sylvester_like, Coeff, GaloisCoeff, Mat,
};
use crate::normsolve::{commutator_solve, norm_solve_gcd, NormEquation};

/// A group relation written as two words in the generators; exponents may be
/// negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<(usize, i64)>,
    pub rhs: Vec<(usize, i64)>,
}

/// A representation by invertible generator matrices, with optional relations
/// used purely as an input sanity gate: the pipeline itself only consumes the
/// generator images.
#[derive(Debug, Clone)]
pub struct Representation<K: Coeff> {
    gens: Vec<Mat<K>>,
    relations: Vec<Relation>,
}

impl<K: Coeff> Representation<K> {
    pub fn new(gens: Vec<Mat<K>>, relations: Vec<Relation>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::BadParameters("representation needs generators".into()));
        }
        let d = gens[0].dim();
        for g in &gens {
            if g.dim() != d {
                return Err(Error::BadParameters("mixed generator dimensions".into()));
            }
            if !g.is_invertible() {
                return Err(Error::BadParameters("generator matrix is singular".into()));
            }
        }
        let rep = Representation { gens, relations };
        for (i, rel) in rep.relations.iter().enumerate() {
            if rep.eval_word(&rel.lhs)? != rep.eval_word(&rel.rhs)? {
                return Err(Error::BadParameters(format!("relation {i} fails on the generators")));
            }
        }
        Ok(rep)
    }

    pub fn gens(&self) -> &[Mat<K>] {
        &self.gens
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn eval_word(&self, word: &[(usize, i64)]) -> Result<Mat<K>> {
        let mut acc = Mat::identity(self.dim(), self.gens[0].proto());
        for &(idx, exp) in word {
            let g = self
                .gens
                .get(idx)
                .ok_or_else(|| Error::BadParameters(format!("generator index {idx} out of range")))?;
            let power = if exp >= 0 {
                g.pow(exp as u64)
            } else {
                g.invert()?.pow((-exp) as u64)
            };
            acc = acc.mul(&power);
        }
        Ok(acc)
    }
}

/// Burnside criterion: products of the generators span the full matrix
/// algebra over E.
pub fn check_absolutely_irreducible<K: Coeff>(rep: &Representation<K>) -> bool {
    burnside_spans(rep.gens())
}

/// The intertwiner D_α with ρ(g)·D = D·α(ρ(g)) for all generators, unique up
/// to scalar for absolutely irreducible ρ. Returned `None` when only D = 0
/// intertwines (the twisted representation is inequivalent). The scalar gauge
/// is fixed by normalizing the first nonzero entry, row-major, to 1.
pub fn intertwiner<K: GaloisCoeff>(
    rep: &Representation<K>,
    aut: &K::Aut,
) -> Result<Option<Mat<K>>> {
    let twisted: Vec<Mat<K>> = rep.gens().iter().map(|g| apply_aut_mat(aut, g)).collect();
    let basis = solve_sylvester_like(rep.gens(), &twisted);
    match basis.len() {
        0 => Ok(None),
        1 => {
            let d = basis[0].dim();
            let mut pivot = None;
            'outer: for r in 0..d {
                for c in 0..d {
                    if !basis[0].at(r, c).is_zero() {
                        pivot = Some(basis[0].at(r, c).clone());
                        break 'outer;
                    }
                }
            }
            let pivot = pivot.expect("nullspace basis vector is nonzero");
            Ok(Some(basis[0].mul_scalar(&pivot.inv()?)))
        }
        n => Err(Error::SchurViolation(n)),
    }
}

/// Result of normalizing one power relation α^m = 1.
#[derive(Debug, Clone)]
pub struct PowerNormalization {
    /// C_α = μ_α·D_α, whose twisted power product is the identity.
    pub c_mat: Mat<FieldElem>,
    /// Scalar λ_α with D_α·α(D_α)⋯α^(m−1)(D_α) = λ_α·I.
    pub lambda: FieldElem,
    /// Solution of N_⟨α⟩(μ_α) = λ_α⁻¹.
    pub mu: FieldElem,
}

/// Normalize the power relation of one Galois generator: the twisted power
/// product of D_α must be a scalar λ_α fixed by α; the norm equation
/// N_⟨α⟩(μ) = λ_α⁻¹ (always solvable over finite fields) rescales D_α into a
/// cocycle candidate.
pub fn normalize_power(
    ctx: &FieldCtx,
    aut: AutPower,
    d_mat: &Mat<FieldElem>,
    seed: u64,
    max_tries: u64,
) -> Result<PowerNormalization> {
    let order = aut.order_in(ctx.group_order());
    let prod = twisted_power(&ctx.one(), &aut, d_mat, order);
    let lambda = prod
        .as_scalar()
        .ok_or_else(|| Error::NotScalar(format!("{prod:?}")))?;
    if apply_aut(aut, &lambda) != lambda {
        return Err(Error::NotScalar(format!(
            "power scalar {lambda:?} is not fixed by its generator"
        )));
    }
    let eq = NormEquation {
        subgroup_order: order,
        target: lambda.inverse()?,
    };
    let mu = norm_solve_gcd(ctx, &eq, seed, max_tries)?;
    Ok(PowerNormalization {
        c_mat: d_mat.mul_scalar(&mu),
        lambda,
        mu,
    })
}

/// Result of normalizing the commutator relation of a coprime pair.
#[derive(Debug, Clone)]
pub struct CommutatorNormalization {
    pub c_a: Mat<FieldElem>,
    pub c_b: Mat<FieldElem>,
    /// Scalar λ_{α,β} with α(C_β)⁻¹·C_α⁻¹·C_β·β(C_α) = λ_{α,β}·I.
    pub lambda: FieldElem,
    pub nu_a: FieldElem,
    pub nu_b: FieldElem,
}

/// Normalize the commutator of two power-normalized candidates C_α, C_β for
/// the coprime pair A = ⟨α⟩ (order m), B = ⟨β⟩ (order n): the commutator
/// defect is a scalar λ_{α,β} that must lie in K_A ∩ K_B; the two-sided
/// (q−1)-th root construction then rescales both candidates.
pub fn normalize_commutators(
    ctx: &FieldCtx,
    aut_a: AutPower,
    c_a: &Mat<FieldElem>,
    aut_b: AutPower,
    c_b: &Mat<FieldElem>,
    seed: u64,
    max_tries: u64,
) -> Result<CommutatorNormalization> {
    let defect = apply_aut_mat(&aut_a, c_b)
        .invert()?
        .mul(&c_a.invert()?)
        .mul(c_b)
        .mul(&apply_aut_mat(&aut_b, c_a));
    let lambda = defect
        .as_scalar()
        .ok_or_else(|| Error::NotScalar(format!("{defect:?}")))?;
    let a_order = aut_a.order_in(ctx.group_order());
    let (nu_a, nu_b) = commutator_solve(ctx, a_order, &lambda, seed, max_tries)?;
    Ok(CommutatorNormalization {
        c_a: c_a.mul_scalar(&nu_a),
        c_b: c_b.mul_scalar(&nu_b),
        lambda,
        nu_a,
        nu_b,
    })
}

/// Which presentation of the Galois group drives the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PresentationChoice {
    /// G = ⟨φ⟩, one power relation, one norm equation.
    #[default]
    SingleGenerator,
    /// G = ⟨α⟩×⟨β⟩ with coprime orders: two power relations plus the
    /// commutator equation. Requires [E:F] to have at least two prime
    /// factors.
    CoprimePair,
}

impl PresentationChoice {
    pub fn build(self, ctx: &FieldCtx) -> Result<Presentation<AutPower>> {
        let m_total = ctx.group_order();
        match self {
            PresentationChoice::SingleGenerator => Ok(full_cyclic(ctx)),
            PresentationChoice::CoprimePair => {
                let (p0, _) = crate::arith::factor(m_total as u128)
                    .first()
                    .copied()
                    .ok_or_else(|| {
                        Error::BadParameters("trivial group has no coprime pair".into())
                    })?;
                let mut a_order = 1u64;
                let mut rest = m_total;
                while rest % p0 as u64 == 0 {
                    a_order *= p0 as u64;
                    rest /= p0 as u64;
                }
                if rest == 1 {
                    return Err(Error::BadParameters(format!(
                        "[E:F] = {m_total} is a prime power; no coprime pair presentation"
                    )));
                }
                let b_order = m_total / a_order;
                Ok(Presentation::new(
                    vec![AutPower(b_order), AutPower(a_order)],
                    vec![a_order, b_order],
                ))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RewriteOptions {
    pub strategy: H90Strategy,
    pub seed: u64,
    pub max_tries: u64,
    pub presentation: PresentationChoice,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions {
            strategy: H90Strategy::Scalar,
            seed: 0,
            max_tries: DEFAULT_MAX_TRIES,
            presentation: PresentationChoice::SingleGenerator,
        }
    }
}

/// Why a representation cannot be written over the fixed field (or why the
/// pipeline stopped), with enough data to re-check the claim independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction<K: GaloisCoeff> {
    /// The α-twist of ρ is not equivalent to ρ: the intertwiner space is 0.
    NoIntertwiner { aut: K::Aut },
    /// The norm equation N(μ) = lambda has no solution (characteristic-zero
    /// fields only; certified by the embedding sign test).
    NormUnsolvable { aut: K::Aut, lambda: K },
    /// The commutator scalar is outside K_A ∩ K_B.
    KernelIntersection { lambda: K },
}

#[derive(Debug, Clone)]
pub enum DescentOutcome<K: GaloisCoeff> {
    Written {
        a: Mat<K>,
        rewritten: Vec<Mat<K>>,
    },
    Obstructed {
        obstruction: Obstruction<K>,
    },
}

/// Full record of a descent run: outcome plus every intermediate the
/// verifier needs (intertwiners, power scalars, commutator scalar, the
/// cocycle) and the randomness provenance.
#[derive(Debug, Clone)]
pub struct DescentCertificate<K: GaloisCoeff> {
    pub outcome: DescentOutcome<K>,
    pub intertwiners: Vec<(K::Aut, Mat<K>)>,
    pub power_scalars: Vec<(K::Aut, K)>,
    pub commutator_scalar: Option<K>,
    pub cocycle: Option<Cocycle<K>>,
    pub strategy: String,
    pub seed: u64,
}

impl<K: GaloisCoeff> DescentCertificate<K> {
    pub fn is_written(&self) -> bool {
        matches!(self.outcome, DescentOutcome::Written { .. })
    }
}

/// Run the full pipeline. Hard failures (not absolutely irreducible,
/// exhausted Las Vegas tries) surface as errors; mathematical obstructions
/// come back as `Obstructed` certificates.
pub fn rewrite(
    ctx: &FieldCtx,
    rep: &Representation<FieldElem>,
    opts: &RewriteOptions,
) -> Result<DescentCertificate<FieldElem>> {
    if !check_absolutely_irreducible(rep) {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let pres = opts.presentation.build(ctx)?;
    let mut intertwiners = Vec::new();
    let mut certificate = DescentCertificate {
        outcome: DescentOutcome::Obstructed {
            obstruction: Obstruction::NoIntertwiner { aut: AutPower(0) },
        },
        intertwiners: Vec::new(),
        power_scalars: Vec::new(),
        commutator_scalar: None,
        cocycle: None,
        strategy: opts.strategy.name().to_string(),
        seed: opts.seed,
    };
    for aut in &pres.gens {
        match intertwiner(rep, aut)? {
            Some(d) => intertwiners.push((*aut, d)),
            None => {
                certificate.intertwiners = intertwiners;
                certificate.outcome = DescentOutcome::Obstructed {
                    obstruction: Obstruction::NoIntertwiner { aut: *aut },
                };
                return Ok(certificate);
            }
        }
    }
    certificate.intertwiners = intertwiners.clone();

    let mut c_mats = Vec::new();
    for (i, (aut, d)) in intertwiners.iter().enumerate() {
        let norm = normalize_power(ctx, *aut, d, opts.seed ^ (i as u64 + 1), opts.max_tries)?;
        certificate.power_scalars.push((*aut, norm.lambda.clone()));
        c_mats.push(norm.c_mat);
    }

    if pres.gens.len() == 2 {
        match normalize_commutators(
            ctx,
            pres.gens[0],
            &c_mats[0],
            pres.gens[1],
            &c_mats[1],
            opts.seed ^ 0xc0,
            opts.max_tries,
        ) {
            Ok(normalized) => {
                certificate.commutator_scalar = Some(normalized.lambda.clone());
                c_mats = vec![normalized.c_a, normalized.c_b];
            }
            Err(Error::NotInKernelIntersection) => {
                // Recompute the scalar for the witness.
                let defect = apply_aut_mat(&pres.gens[0], &c_mats[1])
                    .invert()?
                    .mul(&c_mats[0].invert()?)
                    .mul(&c_mats[1])
                    .mul(&apply_aut_mat(&pres.gens[1], &c_mats[0]));
                let lambda = defect
                    .as_scalar()
                    .ok_or_else(|| Error::NotScalar(format!("{defect:?}")))?;
                certificate.commutator_scalar = Some(lambda.clone());
                certificate.outcome = DescentOutcome::Obstructed {
                    obstruction: Obstruction::KernelIntersection { lambda },
                };
                return Ok(certificate);
            }
            Err(e) => return Err(e),
        }
    }

    let cocycle = Cocycle::validate_and_close(pres.clone(), c_mats)?;
    let a = solve_h90(&cocycle, opts.strategy, opts.seed, opts.max_tries)?;
    let a_inv = a.invert()?;
    let rewritten: Vec<Mat<FieldElem>> = rep.gens().iter().map(|g| a_inv.mul(g).mul(&a)).collect();
    for r in &rewritten {
        for row in r.rows_vec() {
            for entry in row {
                if !entry.in_subfield() {
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

/// Re-check every field of a certificate from scratch, independently of how
/// it was constructed.
pub fn verify_certificate(
    ctx: &FieldCtx,
    rep: &Representation<FieldElem>,
    cert: &DescentCertificate<FieldElem>,
) -> Result<()> {
    let fail = |msg: &str| Err(Error::BadParameters(format!("certificate check failed: {msg}")));
    // Intertwiner property of every recorded D_α.
    for (aut, d) in &cert.intertwiners {
        if !d.is_invertible() {
            return fail("intertwiner is singular");
        }
        for g in rep.gens() {
            if g.mul(d) != d.mul(&apply_aut_mat(aut, g)) {
                return fail("intertwiner equation fails");
            }
        }
    }
    // Power scalars match the recorded intertwiners.
    for ((aut, d), (aut2, lambda)) in cert.intertwiners.iter().zip(&cert.power_scalars) {
        if aut != aut2 {
            return fail("scalar/intertviner generator mismatch");
        }
        let order = aut.order_in(ctx.group_order());
        let prod = twisted_power(&ctx.one(), aut, d, order);
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
            if rewritten.len() != rep.gens().len() {
                return fail("rewritten generator count mismatch");
            }
            for (g, r) in rep.gens().iter().zip(rewritten) {
                if &a_inv.mul(g).mul(a) != r {
                    return fail("rewritten matrix is not the conjugate");
                }
                if !r
                    .rows_vec()
                    .iter()
                    .flatten()
                    .all(|entry| entry.in_subfield())
                {
                    return fail("rewritten entries are not fixed by the Galois group");
                }
            }
            if let Some(c) = &cert.cocycle {
                if !c.is_solved_by(a) {
                    return fail("conjugator does not solve the certificate cocycle");
                }
                // Reconstruct to confirm closure and relations.
                Cocycle::validate_and_close(c.presentation().clone(), c.gen_mats())?;
            }
            Ok(())
        }
        DescentOutcome::Obstructed { obstruction } => match obstruction {
            Obstruction::NoIntertwiner { aut } => match intertwiner(rep, aut)? {
                None => Ok(()),
                Some(_) => fail("claimed missing intertwiner exists"),
            },
            Obstruction::KernelIntersection { lambda } => {
                let m = ctx.group_order();
                let in_kernel = crate::fftower::norm(lambda, m)?.is_one();
                // The pair presentation splits m = a·b; reject only if λ is
                // genuinely outside one of the subgroup kernels.
                let pres = PresentationChoice::CoprimePair.build(ctx)?;
                let a_ord = pres.orders[0];
                let b_ord = pres.orders[1];
                let bad_a = !crate::fftower::norm(lambda, a_ord)?.is_one();
                let bad_b = !crate::fftower::norm(lambda, b_ord)?.is_one();
                if bad_a || bad_b || !in_kernel {
                    Ok(())
                } else {
                    fail("kernel-intersection witness is actually in the intersection")
                }
            }
            Obstruction::NormUnsolvable { .. } => {
                fail("norm equations are always solvable over finite fields")
            }
        },
    }
}

/// An invertible simultaneous conjugator Y with a_i·Y = Y·b_i, if one
/// exists; used to confirm that rewritten generators stay equivalent to the
/// original representation.
pub fn simultaneous_conjugator<K: Coeff>(
    a_gens: &[Mat<K>],
    b_gens: &[Mat<K>],
) -> Option<Mat<K>> {
    let basis = solve_sylvester_like(a_gens, b_gens);
    basis.into_iter().find(|y| y.is_invertible())
}
