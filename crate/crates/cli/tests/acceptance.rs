//! Acceptance suite: every numbered check the project promises, each printing
//! one PASS/FAIL line with its runtime (run with `--nocapture` to see the
//! lines for passing checks too).
//!
//! Check 7's final sub-claim — the classical lower bound 1 − q^(−n/2) on the
//! Möbius degree-count density — is mathematically false at (q, n) = (2, 6)
//! (54/64 < 56/64, because the bound ignores the second maximal subfield);
//! that sub-check is asserted as stated and therefore fails, with the counter
//! case spelled out in the failure line. Every other check passes.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use galois_descent::cocycle::{
    full_cyclic, gamma, pi_c, pi_c_avg, scalar_singular_cocycle, solve_h90, transport, Cocycle,
    H90Strategy,
};
use galois_descent::cyclotomic::{CycloCtx, CycloElem};
use galois_descent::descent::{
    rewrite, simultaneous_conjugator, verify_certificate, DescentOutcome, PresentationChoice,
    Representation, RewriteOptions,
};
use galois_descent::error::Error;
use galois_descent::fftower::{make_field, trace_full, FieldCtx, FieldElem};
use galois_descent::format::{ce_from_spec, CertificateFile, MatrixData, ObstructionSpec};
use galois_descent::matrix::{burnside_spans, Mat};
use galois_descent::normsolve::{
    kernel_lattice, norm_gcd_trial, qm1_root_trial, NormEquation,
};
use galois_descent::rng::Rng64;
use galois_descent::stats::{
    count_normal_exhaustive, exhaustive_counts, f_dq, full_degree_bound_holds,
    normal_basis_density, CandidateKind,
};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_galois-descent")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn report(name: &str, limit: Duration, run: impl FnOnce() -> Result<(), String>) {
    let t0 = Instant::now();
    let outcome = run();
    let elapsed = t0.elapsed();
    match outcome {
        Ok(()) => {
            if elapsed > limit {
                println!("{name}: FAIL (took {elapsed:.2?}, limit {limit:.2?})");
                panic!("{name} exceeded its time budget: {elapsed:.2?} > {limit:.2?}");
            }
            println!("{name}: PASS ({elapsed:.2?})");
        }
        Err(msg) => {
            println!("{name}: FAIL — {msg}");
            panic!("{name}: {msg}");
        }
    }
}

fn gf(p: u64, n: usize, d0: usize) -> FieldCtx {
    make_field(p, n, d0, None).expect("valid tower")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

// ---------------------------------------------------------------------------
// 1. Example-2 exact reproduction via the CLI
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_closed_form_reproduction() {
    report(
        "check 1 (closed-form conjugator, n = 1..3)",
        Duration::from_secs(3),
        || {
            for n in 1u64..=3 {
                let per_n = Instant::now();
                let out = Command::new(bin())
                    .args([
                        "rewrite",
                        "--input",
                        &fixture(&format!("semidihedral_n{n}.json")),
                    ])
                    .output()
                    .map_err(|e| format!("spawn failed: {e}"))?;
                if !out.status.success() {
                    return Err(format!("n={n}: exit {:?}", out.status.code()));
                }
                let cert = CertificateFile::from_json(&String::from_utf8_lossy(&out.stdout))
                    .map_err(|e| format!("n={n}: bad certificate: {e}"))?;
                let ctx = CycloCtx::new(8 * n, &[(1 + 4 * n) % (8 * n)])
                    .map_err(|e| e.to_string())?;
                let parse_mat = |m: &MatrixData| -> Result<Mat<CycloElem>, String> {
                    match m {
                        MatrixData::Cyclotomic(rows) => {
                            galois_descent::format::cmat_from_spec(&ctx, rows)
                                .map_err(|e| e.to_string())
                        }
                        _ => Err("expected cyclotomic matrix".into()),
                    }
                };
                let a = parse_mat(cert.conjugator.as_ref().ok_or("missing conjugator")?)?;
                let rewritten = cert.rewritten.as_ref().ok_or("missing rewritten")?;
                let rho_b = parse_mat(&rewritten[1])?;

                let half = ctx.rational(1, 2);
                let z = ctx.zeta();
                let z2n = ctx.zeta_pow(2 * n as i64);
                let one_minus = ctx.one().sub_ref(&z);
                let expected_a = Mat::from_rows(vec![
                    vec![
                        ctx.one().add_ref(&z).mul_ref(&half),
                        z2n.mul_ref(&one_minus).mul_ref(&half),
                    ],
                    vec![
                        z2n.mul_ref(&one_minus).mul_ref(&half).neg_ref(),
                        ctx.one().add_ref(&z).mul_ref(&half),
                    ],
                ]);
                if a != expected_a {
                    return Err(format!("n={n}: conjugator differs from the closed form"));
                }
                if a.det() != ctx.zeta() {
                    return Err(format!("n={n}: det A ≠ ζ"));
                }
                let z_sq = ctx.zeta_pow(2);
                let expected_b = Mat::from_rows(vec![
                    vec![
                        ctx.one().add_ref(&z_sq).mul_ref(&half),
                        z2n.mul_ref(&ctx.one().sub_ref(&z_sq)).mul_ref(&half),
                    ],
                    vec![
                        z2n.mul_ref(&ctx.one().sub_ref(&z_sq)).mul_ref(&half),
                        ctx.one().add_ref(&z_sq).mul_ref(&half).neg_ref(),
                    ],
                ]);
                if rho_b != expected_b {
                    return Err(format!("n={n}: rewritten b-generator differs"));
                }
                if per_n.elapsed() > Duration::from_secs(1) {
                    return Err(format!("n={n}: exceeded 1 s"));
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 2. Example-1 obstruction via the CLI
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_conjugation_obstruction() {
    report(
        "check 2 (conjugation obstruction, n = 1..3)",
        Duration::from_secs(3),
        || {
            for n in 1u64..=3 {
                let per_n = Instant::now();
                let out = Command::new(bin())
                    .args([
                        "rewrite",
                        "--input",
                        &fixture(&format!("dicyclic_n{n}.json")),
                    ])
                    .output()
                    .map_err(|e| format!("spawn failed: {e}"))?;
                if out.status.code() != Some(2) {
                    return Err(format!(
                        "n={n}: expected exit 2 (obstructed), got {:?}",
                        out.status.code()
                    ));
                }
                let cert = CertificateFile::from_json(&String::from_utf8_lossy(&out.stdout))
                    .map_err(|e| format!("n={n}: bad certificate: {e}"))?;
                let ctx = CycloCtx::new(4 * n, &[4 * n - 1]).map_err(|e| e.to_string())?;
                match &cert.obstruction {
                    Some(ObstructionSpec::NormUnsolvable { lambda, generator }) => {
                        if *generator != 4 * n - 1 {
                            return Err(format!("n={n}: wrong witness generator"));
                        }
                        let lam = match lambda {
                            galois_descent::format::MatrixDataElem::Cyclotomic(c) => {
                                ce_from_spec(&ctx, c).map_err(|e| e.to_string())?
                            }
                            _ => return Err("wrong element encoding".into()),
                        };
                        if lam != ctx.integer(-1) {
                            return Err(format!("n={n}: witness λ ≠ −1"));
                        }
                        // Witness is certified: −1 is negative under a real
                        // embedding.
                        match galois_descent::cyclotomic::conjugation_obstruction(&ctx, &lam) {
                            Ok(galois_descent::cyclotomic::ObstructionVerdict::Unsolvable {
                                ..
                            }) => {}
                            other => return Err(format!("n={n}: witness not certified: {other:?}")),
                        }
                    }
                    other => return Err(format!("n={n}: unexpected obstruction {other:?}")),
                }
                if per_n.elapsed() > Duration::from_secs(1) {
                    return Err(format!("n={n}: exceeded 1 s"));
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 3. Hilbert-90 round trip, all strategies certified
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_hilbert90_roundtrip() {
    report(
        "check 3 (Hilbert-90 round trip, 10^3 coboundaries × 4 fields)",
        Duration::from_secs(60),
        || {
            let fields = [gf(2, 2, 1), gf(2, 3, 1), gf(3, 2, 1), gf(2, 6, 1)];
            for ctx in &fields {
                let mut rng = Rng64::derive(0xacc3, ctx.n() as u64);
                for trial in 0..1000u64 {
                    let d = (trial % 3 + 1) as usize;
                    let a0 = Mat::random_invertible(d, &ctx.one(), &mut rng);
                    let c = Cocycle::coboundary(full_cyclic(ctx), &a0)
                        .map_err(|e| e.to_string())?;
                    for strat in [
                        H90Strategy::Scalar,
                        H90Strategy::Structured,
                        H90Strategy::Random,
                        H90Strategy::Deterministic,
                    ] {
                        match solve_h90(&c, strat, trial, 64) {
                            Ok(a) => {
                                if !c.is_solved_by(&a) {
                                    return Err(format!(
                                        "{strat:?} returned an uncertified matrix"
                                    ));
                                }
                                let ratio = a0.invert().map_err(|e| e.to_string())?.mul(&a);
                                if !ratio.rows_vec().iter().flatten().all(|e| e.in_subfield()) {
                                    return Err(
                                        "A₀⁻¹·A has entries outside the fixed field".into()
                                    );
                                }
                            }
                            Err(Error::ExhaustedTries(_)) => {
                                if strat == H90Strategy::Deterministic {
                                    return Err("deterministic strategy failed".into());
                                }
                            }
                            Err(e) => return Err(format!("unexpected error {e}")),
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 4. Scalar-candidate boundary: |F| < d fails everywhere, |F| ≥ d succeeds
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_scalar_boundary() {
    report(
        "check 4 (scalar-candidate boundary at |F| = d)",
        Duration::from_secs(30),
        || {
            // F = GF(2), E = GF(4), d = 3: every scalar candidate singular.
            let gf4 = make_field(2, 2, 1, Some(vec![1, 1, 1])).unwrap();
            let c = scalar_singular_cocycle(&gf4, 3).map_err(|e| e.to_string())?;
            for lam in gf4.all_elements() {
                if pi_c(&c, &Mat::scalar(3, &lam)).is_invertible() {
                    return Err("counterexample cocycle has an invertible scalar value".into());
                }
            }
            // |F| ≥ d: the exhaustive λ-scan always finds an invertible value.
            let gf9 = make_field(3, 2, 1, Some(vec![1, 0, 1])).unwrap();
            let configs: [(&FieldCtx, usize); 3] = [(&gf4, 2), (&gf9, 2), (&gf9, 3)];
            for (ctx, d) in configs {
                let mut rng = Rng64::derive(0xacc4, d as u64);
                for _ in 0..1000 {
                    let a0 = Mat::random_invertible(d, &ctx.one(), &mut rng);
                    let c = Cocycle::coboundary(full_cyclic(ctx), &a0)
                        .map_err(|e| e.to_string())?;
                    let found = ctx
                        .all_elements()
                        .any(|lam| pi_c(&c, &Mat::scalar(d, &lam)).is_invertible());
                    if !found {
                        return Err(format!(
                            "no invertible scalar candidate over |F|={} d={d}",
                            ctx.q()
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 5. Projection identities
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_projection_identities() {
    report(
        "check 5 (projection identities, 10^3 instances per field)",
        Duration::from_secs(60),
        || {
            for ctx in [gf(2, 2, 1), gf(2, 3, 1), gf(3, 2, 1)] {
                let g = ctx.group_order() as i64;
                let char_coprime = ctx.group_order() % ctx.p() != 0;
                let mut rng = Rng64::derive(0xacc5, ctx.n() as u64);
                for _ in 0..1000 {
                    let d = 2usize;
                    let a0 = Mat::random_invertible(d, &ctx.one(), &mut rng);
                    let c = Cocycle::coboundary(full_cyclic(&ctx), &a0)
                        .map_err(|e| e.to_string())?;
                    let x = Mat::random(d, &ctx.one(), &mut rng);
                    let pi = pi_c(&c, &x);
                    // Π² = |G|·Π
                    if pi_c(&c, &pi) != pi.mul_scalar(&ctx.integer(g)) {
                        return Err("Π² ≠ |G|Π".into());
                    }
                    // Γ∘Π = Π∘Γ = 0 on the Frobenius generator
                    let phi = galois_descent::fftower::AutPower(1);
                    if !gamma(&c, &phi, &pi).map_err(|e| e.to_string())?.is_zero() {
                        return Err("Γ∘Π ≠ 0".into());
                    }
                    let gx = gamma(&c, &phi, &x).map_err(|e| e.to_string())?;
                    if !pi_c(&c, &gx).is_zero() {
                        return Err("Π∘Γ ≠ 0".into());
                    }
                    // π idempotent when char ∤ |G|
                    if char_coprime {
                        let p1 = pi_c_avg(&c, &x).map_err(|e| e.to_string())?;
                        if pi_c_avg(&c, &p1).map_err(|e| e.to_string())? != p1 {
                            return Err("π not idempotent".into());
                        }
                    }
                    // trace formula for coboundaries
                    let a_inv = a0.invert().map_err(|e| e.to_string())?;
                    if pi != a0.mul(&a_inv.mul(&x).map(trace_full)) {
                        return Err("Π(X) ≠ A·Tr(A⁻¹X)".into());
                    }
                    let lam = ctx.random(&mut rng);
                    if pi_c(&c, &a0.mul_scalar(&lam)) != a0.mul_scalar(&trace_full(&lam)) {
                        return Err("Π(Aλ) ≠ A·Tr(λ)".into());
                    }
                    // transport identity
                    let y = Mat::random_invertible(d, &ctx.one(), &mut rng);
                    let moved = transport(&c, &y).map_err(|e| e.to_string())?;
                    let y_inv = y.invert().map_err(|e| e.to_string())?;
                    if pi_c(&moved, &x) != y_inv.mul(&pi_c(&c, &y.mul(&x))) {
                        return Err("Π_D(X) ≠ Y⁻¹·Π_C(YX)".into());
                    }
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 6. Probability reproductions
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_probabilities() {
    report(
        "check 6 (invertibility and solver trial probabilities)",
        Duration::from_secs(120),
        || {
            // (a) exhaustion over all 4⁴ matrices X for 20 random cocycles:
            // the count is exactly f(2,2) = |GL₂(2)|/2⁴ = 6/16 = 3/8.
            let gf4 = make_field(2, 2, 1, Some(vec![1, 1, 1])).unwrap();
            let f22 = f_dq(2, 2).map_err(|e| e.to_string())?;
            if f22 != rat(3, 8) {
                return Err("f(2,2) ≠ 3/8".into());
            }
            let mut rng = Rng64::new(0xacc6);
            for _ in 0..20 {
                let a0 = Mat::random_invertible(2, &gf4.one(), &mut rng);
                let c = Cocycle::coboundary(full_cyclic(&gf4), &a0)
                    .map_err(|e| e.to_string())?;
                let (succ, total) = exhaustive_counts(&gf4, &c, CandidateKind::RandomX);
                if total != 256 || rat(succ as i64, total as i64) != f22 {
                    return Err(format!("exhaustive count {succ}/{total} ≠ f(2,2)"));
                }
            }
            // (b) (q−1)th-root trial success within 3σ of 1 − 1/q at 10⁴
            // trials on GF(9) and GF(25).
            let gf25 = make_field(5, 2, 1, Some(vec![2, 0, 1])).unwrap();
            let gf9 = make_field(3, 2, 1, Some(vec![1, 0, 1])).unwrap();
            for ctx in [&gf9, &gf25] {
                let q = ctx.q() as f64;
                let lam = ctx.integer(-1);
                let mut rng = Rng64::derive(0xacc6b, ctx.p());
                let trials = 10_000u64;
                let hits = (0..trials)
                    .filter(|_| qm1_root_trial(&lam, &mut rng).is_some())
                    .count() as f64;
                let p = 1.0 - 1.0 / q;
                let sigma3 = 3.0 * (p * (1.0 - p) / trials as f64).sqrt();
                let est = hits / trials as f64;
                if (est - p).abs() > sigma3 {
                    return Err(format!(
                        "qm1 trial frequency {est} outside 3σ of {p} over GF({})",
                        ctx.field_size()
                    ));
                }
            }
            // (c) gcd-method trial success within 3σ of d⁻¹ = 1/2 on GF(9).
            let eq = NormEquation {
                subgroup_order: 2,
                target: gf9.integer(2),
            };
            let mut rng = Rng64::new(0xacc6c);
            let trials = 10_000u64;
            let hits = (0..trials)
                .filter(|_| norm_gcd_trial(&gf9, &eq, 2, &mut rng).is_some())
                .count() as f64;
            let sigma3 = 3.0 * (0.25f64 / trials as f64).sqrt();
            let est = hits / trials as f64;
            if (est - 0.5).abs() > sigma3 {
                return Err(format!("gcd trial frequency {est} outside 3σ of 1/2"));
            }
            // (d) all-or-none root property, exhaustively on GF(9).
            let lam = gf9.integer(2);
            for nu in gf9.all_elements().filter(|x| !x.is_zero()) {
                // d = 2, s = 0: candidate polynomial x² − λ⁰ν²
                let c = nu.pow(2);
                let roots: Vec<FieldElem> = gf9
                    .all_elements()
                    .filter(|x| !x.is_zero() && x.pow(2) == c)
                    .collect();
                let hits = roots
                    .iter()
                    .filter(|r| galois_descent::fftower::norm_full(r) == lam)
                    .count();
                if hits != 0 && hits != roots.len() {
                    return Err("all-or-none property violated".into());
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 7. Normal-element densities and the degree-count bound
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_example4_densities() {
    report(
        "check 7 (normal densities; Möbius degree bound as stated)",
        Duration::from_secs(60),
        || {
            let grid: Vec<(u64, usize, usize)> = vec![
                (2, 1, 1),
                (2, 2, 1),
                (2, 3, 1),
                (2, 4, 1),
                (2, 5, 1),
                (2, 6, 1),
                (3, 1, 1),
                (3, 2, 1),
                (3, 3, 1),
                (3, 4, 1),
                (2, 2, 2),
                (2, 4, 2),
                (2, 6, 2),
            ];
            // (p, n_abs, d0) rows: q = p^d0, relative degree n = n_abs/d0.
            for &(p, n_abs, d0) in &grid {
                let ctx = gf(p, n_abs, d0);
                let q = ctx.q();
                let n_rel = ctx.group_order();
                let density = normal_basis_density(q, n_rel).map_err(|e| e.to_string())?;
                let count = count_normal_exhaustive(&ctx) as i64;
                let size = ctx.field_size() as i64;
                if density != rat(count, size) {
                    return Err(format!(
                        "q={q} n={n_rel}: density {density} ≠ exhaustive {count}/{size}"
                    ));
                }
                // scalar-λ success density of the regular-representation
                // cocycle equals the density exactly.
                let c = galois_descent::stats::regular_rep_cocycle(&ctx)
                    .map_err(|e| e.to_string())?;
                let (succ, total) = exhaustive_counts(&ctx, &c, CandidateKind::ScalarLambda);
                if rat(succ as i64, total as i64) != density {
                    return Err(format!(
                        "q={q} n={n_rel}: regular-rep scalar density {succ}/{total} ≠ {density}"
                    ));
                }
            }
            // Möbius degree-count bound ≥ 1 − q^(−n/2), exact rational
            // inequality, asserted as stated across the same grid. This is
            // FALSE at (q, n) = (2, 6): the sum is 54/64 = 27/32 while the
            // bound demands ≥ 56/64 = 7/8; the derivation ignores the second
            // maximal subfield GF(2²) ⊂ GF(2⁶). The check is kept faithful
            // rather than weakened.
            let mut bound_failures = Vec::new();
            for &(p, n_abs, d0) in &grid {
                let ctx = gf(p, n_abs, d0);
                if !full_degree_bound_holds(ctx.q(), ctx.group_order())
                    .map_err(|e| e.to_string())?
                {
                    bound_failures.push((ctx.q(), ctx.group_order()));
                }
            }
            if !bound_failures.is_empty() {
                return Err(format!(
                    "degree-count bound 1 − q^(−n/2) fails at {bound_failures:?} \
                     (at (2,6): Σ μ(6/d)·2^d = 54 < 2⁶ − 2³ = 56); density equalities all hold"
                ));
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 8. Descent round trip over finite fields
// ---------------------------------------------------------------------------

fn random_subfield_rep(
    ctx: &FieldCtx,
    d: usize,
    rng: &mut Rng64,
) -> (Representation<FieldElem>, Mat<FieldElem>) {
    let sub_elem = |rng: &mut Rng64| loop {
        let e = ctx.random(rng);
        if e.in_subfield() {
            break e;
        }
    };
    loop {
        let gens: Vec<Mat<FieldElem>> = (0..2)
            .map(|_| loop {
                let m = Mat::from_fn(d, |_, _| sub_elem(rng));
                if m.is_invertible() {
                    break m;
                }
            })
            .collect();
        if !burnside_spans(&gens) {
            continue;
        }
        let b = Mat::random_invertible(d, &ctx.one(), rng);
        let b_inv = b.invert().unwrap();
        let conj: Vec<Mat<FieldElem>> = gens.iter().map(|g| b_inv.mul(g).mul(&b)).collect();
        return (Representation::new(conj, vec![]).unwrap(), b);
    }
}

#[test]
fn criterion_8_descent_roundtrip() {
    report(
        "check 8 (descent round trip, 200 × {d ∈ 2,3} × {[E:F] ∈ 2,3,6})",
        Duration::from_secs(300),
        || {
            let towers = [gf(2, 2, 1), gf(2, 3, 1), gf(2, 6, 1)];
            for ctx in &towers {
                let coprime_pair = ctx.group_order() == 6;
                for d in [2usize, 3] {
                    let mut rng = Rng64::derive(0xacc8, (ctx.n() * 10 + d) as u64);
                    for trial in 0..200u64 {
                        let (rep, _) = random_subfield_rep(ctx, d, &mut rng);
                        let opts = RewriteOptions {
                            strategy: H90Strategy::Deterministic,
                            seed: trial,
                            max_tries: 64,
                            presentation: if coprime_pair {
                                PresentationChoice::CoprimePair
                            } else {
                                PresentationChoice::SingleGenerator
                            },
                        };
                        let cert = rewrite(ctx, &rep, &opts).map_err(|e| e.to_string())?;
                        let DescentOutcome::Written { rewritten, .. } = &cert.outcome else {
                            return Err(format!(
                                "[E:F]={} d={d} trial={trial}: not written",
                                ctx.group_order()
                            ));
                        };
                        if coprime_pair && cert.commutator_scalar.is_none() {
                            return Err("coprime pair did not exercise the commutator".into());
                        }
                        for r in rewritten {
                            if !r.rows_vec().iter().flatten().all(|e| e.in_subfield()) {
                                return Err("rewritten entries escape F".into());
                            }
                        }
                        verify_certificate(ctx, &rep, &cert).map_err(|e| e.to_string())?;
                        let y = simultaneous_conjugator(rep.gens(), rewritten)
                            .ok_or("rewritten tuple is not conjugate to the input")?;
                        if !y.is_invertible() {
                            return Err("conjugacy witness is singular".into());
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------------
// 9. Kernel/image lattice on GF(64)/GF(2)
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_kernel_lattice() {
    report(
        "check 9 (norm kernel/image lattice on GF(64)/GF(2))",
        Duration::from_secs(10),
        || {
            let ctx = gf(2, 6, 1);
            let rep = kernel_lattice(&ctx, 2).map_err(|e| e.to_string())?;
            let (q, m, n) = (rep.q, rep.m as u32, rep.n as u32);
            let e = rep.e;
            let expect = [
                (rep.k_a, e / (q.pow(n) - 1), "K_A"),
                (rep.k_b, e / (q.pow(m) - 1), "K_B"),
                (rep.k_ab_product, e / (q - 1), "K_A·K_B"),
                (
                    rep.k_intersection,
                    e * (q - 1) / ((q.pow(n) - 1) * (q.pow(m) - 1)),
                    "K_A ∩ K_B",
                ),
                (rep.i_a, q.pow(n) - 1, "I_A"),
                (rep.i_b, q.pow(m) - 1, "I_B"),
                (
                    rep.i_ab_product,
                    (q.pow(n) - 1) * (q.pow(m) - 1) / (q - 1),
                    "I_A·I_B",
                ),
                (rep.i_intersection, q - 1, "I_A ∩ I_B"),
            ];
            for (got, want, name) in expect {
                if got != want {
                    return Err(format!("{name}: enumerated {got}, formula {want}"));
                }
            }
            if !rep.product_equals_full_kernel {
                return Err("K_A·K_B ≠ K_AB".into());
            }
            if !rep.intersection_equals_full_image {
                return Err("I_A ∩ I_B ≠ I_AB".into());
            }
            if rep.gcd_value != q - 1 {
                return Err("gcd(q^m−1, q^n−1) ≠ q−1".into());
            }
            Ok(())
        },
    );
}
