//! Batch front end for the descent library.
//!
//! Every subcommand reads and writes the documented UTF-8 JSON formats, takes
//! an explicit seed, and echoes its inputs in its outputs so runs replay bit
//! for bit. Exit codes: 0 success/written, 1 malformed input, 2 mathematical
//! obstruction (including invalid certificates under `verify`), 3 Las Vegas
//! or search inconclusiveness.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use galois_descent::cocycle::{solve_h90, H90Strategy, DEFAULT_MAX_TRIES};
use galois_descent::cyclotomic::{
    cyclo_rewrite, example_builder, verify_cyclo_certificate, CycloHints, ExampleFamily,
};
use galois_descent::descent::{
    rewrite, verify_certificate, PresentationChoice, RewriteOptions,
};
use galois_descent::error::Error;
use galois_descent::fftower::{norm, FieldCtx};
use galois_descent::format::{
    ce_from_spec, certificate_from_file_cyclo, certificate_from_file_finite,
    certificate_to_file_cyclo, certificate_to_file_finite, fe_from_spec, fe_to_spec,
    fmat_to_spec, CertificateFile, CocycleSpec, FieldSpec, FiniteFieldSpec, JobFile, JobOptions,
    MatrixData, PayloadSpec, RepresentationSpec, FORMAT_VERSION,
};
use galois_descent::normsolve::{dth_root, norm_solve_gcd, norm_solve_order, qm1_root, NormEquation};
use galois_descent::stats::{
    f_dq, full_degree_density, mc_invertibility, normal_basis_density, regular_rep_cocycle,
    CandidateKind,
};

#[derive(Parser)]
#[command(
    name = "galois-descent",
    about = "Exact Galois descent of matrix representations over finite and cyclotomic fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide writability over the fixed field and emit a full certificate.
    Rewrite(RewriteArgs),
    /// Solve the coboundary equation C_α = A·α(A)⁻¹ for a given cocycle.
    Hilbert90(Hilbert90Args),
    /// Solve a norm equation N_A(μ) = λ over a finite-field tower.
    Normsolve(NormsolveArgs),
    /// Extract a d-th root in a finite field.
    Root(RootArgs),
    /// Emit probability measurements as CSV.
    Stats(StatsArgs),
    /// Emit the worked example fixtures as job files.
    Examples(ExamplesArgs),
    /// Re-check a certificate against its job, from scratch.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonRunArgs {
    /// Seed for all randomized stages (overrides the job file).
    #[arg(long)]
    seed: Option<u64>,
    /// Bound on Las Vegas trials per stage (overrides the job file).
    #[arg(long)]
    max_tries: Option<u64>,
}

#[derive(Args)]
struct RewriteArgs {
    /// Job file(s); several inputs are processed as a batch.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Certificate destination (single input only; defaults to stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Hilbert-90 strategy: scalar, structured, random, deterministic.
    #[arg(long)]
    strategy: Option<String>,
    /// Galois presentation: single-generator or coprime-pair.
    #[arg(long)]
    presentation: Option<String>,
    /// Worker threads for batch inputs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: CommonRunArgs,
}

#[derive(Args)]
struct Hilbert90Args {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<String>,
    #[command(flatten)]
    common: CommonRunArgs,
}

#[derive(Args)]
struct FieldArgs {
    /// Prime characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree of E over GF(p).
    #[arg(long)]
    n: usize,
    /// Subfield degree: F = GF(p^d0).
    #[arg(long, default_value_t = 1)]
    d0: usize,
    /// Monic irreducible modulus as a JSON list, e.g. "[1,1,1]"; generated
    /// (and echoed) when omitted.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldCtx, Error> {
        let modulus = self
            .modulus
            .as_deref()
            .map(parse_u64_list)
            .transpose()?;
        galois_descent::fftower::make_field(self.p, self.n, self.d0, modulus)
    }
}

#[derive(Args)]
struct NormsolveArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Target element as a JSON coefficient list, e.g. "[2]".
    #[arg(long)]
    target: String,
    /// Order of the norm subgroup (default: the full Galois group).
    #[arg(long)]
    subgroup_order: Option<u64>,
    /// order | gcd | qm1
    #[arg(long, default_value = "gcd")]
    method: String,
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: CommonRunArgs,
}

#[derive(Args)]
struct RootArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Element whose root is wanted, as a JSON coefficient list.
    #[arg(long)]
    target: String,
    /// Root degree d in μ^d = target.
    #[arg(long)]
    degree: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatsKind {
    RandomX,
    ScalarLambda,
    Structured,
    F,
    NormalDensity,
    DegreeDensity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatsCocycle {
    Trivial,
    Coboundary,
    Regular,
    Counterexample,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum)]
    kind: StatsKind,
    /// Matrix dimension for invertibility measurements.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Cocycle under measurement.
    #[arg(long, value_enum, default_value_t = StatsCocycle::Coboundary)]
    cocycle: StatsCocycle,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the CSV header line.
    #[arg(long)]
    no_header: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Dicyclic,
    Semidihedral,
    Metacyclic,
}

#[derive(Args)]
struct ExamplesArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Family parameter n.
    #[arg(long)]
    n: u64,
    /// Cycle length m (metacyclic family only).
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// The job the certificate claims to answer.
    #[arg(long)]
    job: PathBuf,
    /// The certificate to re-check.
    #[arg(long)]
    certificate: PathBuf,
}

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_OBSTRUCTED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Rewrite(args) => cmd_rewrite(&args),
        Command::Hilbert90(args) => cmd_hilbert90(&args),
        Command::Normsolve(args) => cmd_normsolve(&args),
        Command::Root(args) => cmd_root(&args),
        Command::Stats(args) => cmd_stats(&args),
        Command::Examples(args) => cmd_examples(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ExhaustedTries(_) | Error::NormSearchInconclusive(_) => EXIT_INCONCLUSIVE,
        Error::RelationDefect { .. }
        | Error::NotNormOne
        | Error::NoRootExists { .. }
        | Error::NotInKernelIntersection
        | Error::NormUnsolvable(_) => EXIT_OBSTRUCTED,
        _ => EXIT_INPUT,
    }
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, Error> {
    serde_json::from_str(s)
        .map_err(|e| Error::BadParameters(format!("expected a JSON list of integers: {e}")))
}

fn read_job(path: &Path) -> Result<JobFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadParameters(format!("cannot read {}: {e}", path.display())))?;
    let job = JobFile::from_json(&text)?;
    job.validate_version()?;
    Ok(job)
}

fn emit(output: Option<&Path>, contents: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, contents)
            .map_err(|e| Error::BadParameters(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// rewrite
// ---------------------------------------------------------------------------

fn rewrite_one(args: &RewriteArgs, path: &Path) -> Result<(u8, String), Error> {
    let job = read_job(path)?;
    let seed = args.common.seed.or(job.options.seed).unwrap_or(0);
    let max_tries = args
        .common
        .max_tries
        .or(job.options.max_tries)
        .unwrap_or(DEFAULT_MAX_TRIES);
    let PayloadSpec::Representation(rep_spec) = &job.payload else {
        return Err(Error::BadParameters(
            "rewrite expects a representation payload".into(),
        ));
    };
    match &job.field {
        FieldSpec::Finite(fspec) => {
            let ctx = fspec.build()?;
            let rep = rep_spec.build_finite(&ctx)?;
            let strategy = args
                .strategy
                .as_deref()
                .or(job.options.strategy.as_deref())
                .unwrap_or("scalar");
            let presentation = match args
                .presentation
                .as_deref()
                .or(job.options.presentation.as_deref())
                .unwrap_or("single-generator")
            {
                "single-generator" => PresentationChoice::SingleGenerator,
                "coprime-pair" => PresentationChoice::CoprimePair,
                other => {
                    return Err(Error::BadParameters(format!(
                        "unknown presentation {other:?}"
                    )))
                }
            };
            let opts = RewriteOptions {
                strategy: H90Strategy::from_str(strategy)?,
                seed,
                max_tries,
                presentation,
            };
            let cert = rewrite(&ctx, &rep, &opts)?;
            let code = if cert.is_written() {
                EXIT_OK
            } else {
                EXIT_OBSTRUCTED
            };
            let file = certificate_to_file_finite(&ctx, &rep, &cert);
            Ok((code, file.to_json()))
        }
        FieldSpec::Cyclotomic(cspec) => {
            let ctx = cspec.build()?;
            let rep = rep_spec.build_cyclo(&ctx)?;
            let mut hints = CycloHints::default();
            for h in &job.options.lambda_hints {
                hints.lambda.push(ce_from_spec(&ctx, h)?);
            }
            for h in &job.options.mu_hints {
                hints.mu.push(ce_from_spec(&ctx, h)?);
            }
            let cert = cyclo_rewrite(&ctx, &rep, &hints, seed)?;
            let code = if cert.is_written() {
                EXIT_OK
            } else {
                EXIT_OBSTRUCTED
            };
            let file = certificate_to_file_cyclo(&ctx, &rep, &cert);
            Ok((code, file.to_json()))
        }
    }
}

fn cmd_rewrite(args: &RewriteArgs) -> Result<u8, Error> {
    if args.input.len() == 1 {
        let (code, json) = rewrite_one(args, &args.input[0])?;
        emit(args.output.as_deref(), &json)?;
        return Ok(code);
    }
    if args.output.is_some() {
        return Err(Error::BadParameters(
            "--output needs a single --input; batch mode writes <input>.cert.json".into(),
        ));
    }
    // Batch: independent jobs, worker threads, first-listed order of report.
    let jobs = args.jobs.max(1);
    let mut worst = EXIT_OK;
    let results: Vec<(PathBuf, Result<(u8, String), Error>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in args.input.chunks(args.input.len().div_ceil(jobs)) {
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .map(|p| (p.clone(), rewrite_one(args, p)))
                    .collect::<Vec<_>>()
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread"))
            .collect()
    });
    for (path, result) in results {
        match result {
            Ok((code, json)) => {
                let out = path.with_extension("cert.json");
                std::fs::write(&out, &json).map_err(|e| {
                    Error::BadParameters(format!("cannot write {}: {e}", out.display()))
                })?;
                println!(
                    "{}: {} -> {}",
                    path.display(),
                    if code == EXIT_OK { "written" } else { "obstructed" },
                    out.display()
                );
                worst = worst.max(code);
            }
            Err(e) => {
                println!("{}: error: {e}", path.display());
                worst = worst.max(exit_code_for(&e));
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// hilbert90
// ---------------------------------------------------------------------------

fn cmd_hilbert90(args: &Hilbert90Args) -> Result<u8, Error> {
    let job = read_job(&args.input)?;
    let seed = args.common.seed.or(job.options.seed).unwrap_or(0);
    let max_tries = args
        .common
        .max_tries
        .or(job.options.max_tries)
        .unwrap_or(DEFAULT_MAX_TRIES);
    let strategy = H90Strategy::from_str(
        args.strategy
            .as_deref()
            .or(job.options.strategy.as_deref())
            .unwrap_or("scalar"),
    )?;
    let PayloadSpec::Cocycle(cspec) = &job.payload else {
        return Err(Error::BadParameters(
            "hilbert90 expects a cocycle payload".into(),
        ));
    };
    match &job.field {
        FieldSpec::Finite(fspec) => {
            let ctx = fspec.build()?;
            let cocycle = cspec.build_finite(&ctx)?;
            let a = solve_h90(&cocycle, strategy, seed, max_tries)?;
            let result = serde_json::json!({
                "version": FORMAT_VERSION,
                "field": FieldSpec::Finite(FiniteFieldSpec::canonical(&ctx)),
                "cocycle": CocycleSpec::from_finite(&cocycle),
                "seed": seed,
                "strategy": strategy.name(),
                "a": MatrixData::Finite(fmat_to_spec(&a)),
                "certificate": "C_g = A·g(A)^(-1) re-checked on every generator",
                "verified": cocycle.is_solved_by(&a),
            });
            emit(
                args.output.as_deref(),
                &serde_json::to_string_pretty(&result).expect("serializes"),
            )?;
            Ok(EXIT_OK)
        }
        FieldSpec::Cyclotomic(cyspec) => {
            let ctx = cyspec.build()?;
            let cocycle = cspec.build_cyclo(&ctx)?;
            let a = solve_h90(&cocycle, strategy, seed, max_tries)?;
            let result = serde_json::json!({
                "version": FORMAT_VERSION,
                "field": FieldSpec::Cyclotomic(cyspec.clone()),
                "cocycle": CocycleSpec::from_cyclo(&cocycle),
                "seed": seed,
                "strategy": strategy.name(),
                "a": MatrixData::Cyclotomic(galois_descent::format::cmat_to_spec(&a)),
                "certificate": "C_g = A·g(A)^(-1) re-checked on every generator",
                "verified": cocycle.is_solved_by(&a),
            });
            emit(
                args.output.as_deref(),
                &serde_json::to_string_pretty(&result).expect("serializes"),
            )?;
            Ok(EXIT_OK)
        }
    }
}

// ---------------------------------------------------------------------------
// normsolve / root
// ---------------------------------------------------------------------------

fn cmd_normsolve(args: &NormsolveArgs) -> Result<u8, Error> {
    let ctx = args.field.build()?;
    let target = fe_from_spec(&ctx, &parse_u64_list(&args.target)?)?;
    let seed = args.common.seed.unwrap_or(0);
    let max_tries = args.common.max_tries.unwrap_or(DEFAULT_MAX_TRIES);
    let subgroup_order = args.subgroup_order.unwrap_or(ctx.group_order());
    let (mu, equation) = match args.method.as_str() {
        "order" => {
            let eq = NormEquation {
                subgroup_order,
                target: target.clone(),
            };
            let mu = norm_solve_order(&ctx, &eq, seed, max_tries)?;
            (mu, format!("norm(mu, subgroup_order={subgroup_order}) == target"))
        }
        "gcd" => {
            let eq = NormEquation {
                subgroup_order,
                target: target.clone(),
            };
            let mu = norm_solve_gcd(&ctx, &eq, seed, max_tries)?;
            (mu, format!("norm(mu, subgroup_order={subgroup_order}) == target"))
        }
        "qm1" => {
            let mu = qm1_root(&target, seed, max_tries)?;
            let q = ctx.q();
            (mu, format!("mu^{} * target == 1", q - 1))
        }
        other => {
            return Err(Error::BadParameters(format!(
                "unknown method {other:?} (order | gcd | qm1)"
            )))
        }
    };
    let verified = match args.method.as_str() {
        "qm1" => mu.pow(ctx.q() - 1).mul_ref(&target).is_one(),
        _ => norm(&mu, subgroup_order)? == target,
    };
    assert!(verified, "solver outputs are certified");
    let result = serde_json::json!({
        "version": FORMAT_VERSION,
        "field": FieldSpec::Finite(FiniteFieldSpec::canonical(&ctx)),
        "method": args.method,
        "subgroup_order": subgroup_order,
        "target": fe_to_spec(&target),
        "seed": seed,
        "mu": fe_to_spec(&mu),
        "certificate": equation,
        "verified": verified,
    });
    emit(
        args.output.as_deref(),
        &serde_json::to_string_pretty(&result).expect("serializes"),
    )?;
    Ok(EXIT_OK)
}

fn cmd_root(args: &RootArgs) -> Result<u8, Error> {
    let ctx = args.field.build()?;
    let target = fe_from_spec(&ctx, &parse_u64_list(&args.target)?)?;
    let mu = dth_root(&target, args.degree as u128)?;
    let verified = mu.pow(args.degree as u128) == target;
    assert!(verified, "root extraction is certified");
    let result = serde_json::json!({
        "version": FORMAT_VERSION,
        "field": FieldSpec::Finite(FiniteFieldSpec::canonical(&ctx)),
        "degree": args.degree,
        "target": fe_to_spec(&target),
        "mu": fe_to_spec(&mu),
        "certificate": format!("mu^{} == target", args.degree),
        "verified": verified,
    });
    emit(
        args.output.as_deref(),
        &serde_json::to_string_pretty(&result).expect("serializes"),
    )?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

fn cmd_stats(args: &StatsArgs) -> Result<u8, Error> {
    let ctx = args.field.build()?;
    let q = ctx.q();
    let n = ctx.group_order();
    let mut lines = Vec::new();
    if !args.no_header {
        lines.push("kind,d,q,n,trials,successes,estimate,theory,sigma3".to_string());
    }
    match args.kind {
        StatsKind::F => {
            let theory = f_dq(args.d, q)?;
            lines.push(format!(
                "f,{},{},{},0,0,,{},0",
                args.d, q, n, theory
            ));
        }
        StatsKind::NormalDensity => {
            let theory = normal_basis_density(q, n)?;
            lines.push(format!(
                "normal-density,{},{},{},0,0,,{},0",
                n, q, n, theory
            ));
        }
        StatsKind::DegreeDensity => {
            let theory = full_degree_density(q, n)?;
            lines.push(format!(
                "degree-density,{},{},{},0,0,,{},0",
                n, q, n, theory
            ));
        }
        StatsKind::RandomX | StatsKind::ScalarLambda | StatsKind::Structured => {
            let kind = match args.kind {
                StatsKind::RandomX => CandidateKind::RandomX,
                StatsKind::ScalarLambda => CandidateKind::ScalarLambda,
                _ => CandidateKind::Structured,
            };
            let cocycle = match args.cocycle {
                StatsCocycle::Trivial => galois_descent::cocycle::Cocycle::trivial(
                    galois_descent::cocycle::full_cyclic(&ctx),
                    args.d,
                    &ctx.one(),
                )?,
                StatsCocycle::Coboundary => {
                    let mut rng = galois_descent::rng::Rng64::derive(args.seed, 0xc0b);
                    let a = galois_descent::matrix::Mat::random_invertible(
                        args.d,
                        &ctx.one(),
                        &mut rng,
                    );
                    galois_descent::cocycle::Cocycle::coboundary(
                        galois_descent::cocycle::full_cyclic(&ctx),
                        &a,
                    )?
                }
                StatsCocycle::Regular => regular_rep_cocycle(&ctx)?,
                StatsCocycle::Counterexample => {
                    galois_descent::cocycle::scalar_singular_cocycle(&ctx, args.d)?
                }
            };
            let report = mc_invertibility(&ctx, &cocycle, kind, args.trials, args.seed);
            lines.push(format!(
                "{},{},{},{},{},{},{},{},{}",
                report.kind,
                report.d,
                report.q,
                n,
                report.trials,
                report.successes,
                report.estimate,
                report.theory,
                report.sigma3,
            ));
        }
    }
    println!("{}", lines.join("\n"));
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// examples / verify
// ---------------------------------------------------------------------------

fn cmd_examples(args: &ExamplesArgs) -> Result<u8, Error> {
    let family = match args.family {
        FamilyArg::Dicyclic => ExampleFamily::Dicyclic,
        FamilyArg::Semidihedral => ExampleFamily::SemidihedralLike,
        FamilyArg::Metacyclic => ExampleFamily::Metacyclic {
            m: args.m.ok_or_else(|| {
                Error::BadParameters("metacyclic family needs --m".into())
            })?,
        },
    };
    let (ctx, rep) = example_builder(family, args.n)?;
    let job = JobFile {
        version: FORMAT_VERSION,
        field: FieldSpec::Cyclotomic(galois_descent::format::CycloFieldSpec::canonical(&ctx)),
        payload: PayloadSpec::Representation(RepresentationSpec::from_cyclo(&rep)),
        options: JobOptions::default(),
    };
    emit(args.output.as_deref(), &job.to_json())?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let job = read_job(&args.job)?;
    let text = std::fs::read_to_string(&args.certificate).map_err(|e| {
        Error::BadParameters(format!("cannot read {}: {e}", args.certificate.display()))
    })?;
    let file = CertificateFile::from_json(&text)?;
    let PayloadSpec::Representation(rep_spec) = &job.payload else {
        return Err(Error::BadParameters(
            "verify expects a representation job".into(),
        ));
    };
    // A certificate whose data cannot even be rebuilt against the job's
    // field is invalid, not a malformed invocation.
    let valid = match (&job.field, &file.field) {
        (FieldSpec::Finite(fspec), FieldSpec::Finite(_)) => {
            let ctx = fspec.build()?;
            let rep = rep_spec.build_finite(&ctx)?;
            match certificate_from_file_finite(&ctx, &file) {
                Ok(cert) => {
                    file.input == RepresentationSpec::from_finite(&rep)
                        && verify_certificate(&ctx, &rep, &cert).is_ok()
                }
                Err(_) => false,
            }
        }
        (FieldSpec::Cyclotomic(cspec), FieldSpec::Cyclotomic(_)) => {
            let ctx = cspec.build()?;
            let rep = rep_spec.build_cyclo(&ctx)?;
            match certificate_from_file_cyclo(&ctx, &file) {
                Ok(cert) => {
                    file.input == RepresentationSpec::from_cyclo(&rep)
                        && verify_cyclo_certificate(&ctx, &rep, &cert).is_ok()
                }
                Err(_) => false,
            }
        }
        _ => false,
    };
    if valid {
        println!("certificate: VALID ({})", file.outcome);
        Ok(EXIT_OK)
    } else {
        println!("certificate: INVALID");
        Ok(EXIT_OBSTRUCTED)
    }
}
