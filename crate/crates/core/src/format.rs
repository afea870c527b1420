//! Serialized forms of the library's objects: UTF-8, JSON-compatible, exact.
//!
//! Finite-field elements are little-endian coefficient lists (`[1,1]` is
//! 1 + x); matrices are row-major lists of entry lists; cyclotomic
//! coefficients are exact rational strings (`"-3/4"`). Every output format
//! round-trips bit for bit, and job files carry the seed so any run can be
//! replayed.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cocycle::{Cocycle, Presentation};
use crate::cyclotomic::{CycloCtx, CycloElem};
use crate::descent::{Relation, Representation};
use crate::error::{Error, Result};
use crate::fftower::{make_field, AutPower, FieldCtx, FieldElem};
use crate::matrix::Mat;

pub const FORMAT_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// field contexts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FiniteFieldSpec {
    pub p: u64,
    pub n: usize,
    pub d0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FiniteFieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        make_field(self.p, self.n, self.d0, self.modulus.clone())
    }

    /// The canonical echo of a context: the modulus is always present so the
    /// run is reproducible even when it was generated.
    pub fn canonical(ctx: &FieldCtx) -> Self {
        FiniteFieldSpec {
            p: ctx.p(),
            n: ctx.n(),
            d0: ctx.d0(),
            modulus: Some(ctx.modulus().to_vec()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycloFieldSpec {
    pub conductor: u64,
    pub subgroup: Vec<u64>,
}

impl CycloFieldSpec {
    pub fn build(&self) -> Result<CycloCtx> {
        CycloCtx::new(self.conductor, &self.subgroup)
    }

    pub fn canonical(ctx: &CycloCtx) -> Self {
        CycloFieldSpec {
            conductor: ctx.conductor(),
            subgroup: ctx.subgroup_gens().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Finite(FiniteFieldSpec),
    Cyclotomic(CycloFieldSpec),
}

// ---------------------------------------------------------------------------
// elements and matrices
// ---------------------------------------------------------------------------

pub fn fe_to_spec(x: &FieldElem) -> Vec<u64> {
    x.coeffs().to_vec()
}

pub fn fe_from_spec(ctx: &FieldCtx, coeffs: &[u64]) -> Result<FieldElem> {
    ctx.from_coeffs(coeffs)
}

pub fn fmat_to_spec(m: &Mat<FieldElem>) -> Vec<Vec<Vec<u64>>> {
    m.rows_vec()
        .into_iter()
        .map(|row| row.into_iter().map(|e| fe_to_spec(&e)).collect())
        .collect()
}

pub fn fmat_from_spec(ctx: &FieldCtx, rows: &[Vec<Vec<u64>>]) -> Result<Mat<FieldElem>> {
    mat_from_rows(rows.len(), rows.iter().map(|r| r.len()).collect(), || {
        let mut out = Vec::new();
        for row in rows {
            let mut r = Vec::new();
            for entry in row {
                r.push(fe_from_spec(ctx, entry)?);
            }
            out.push(r);
        }
        Ok(out)
    })
}

pub fn ce_to_spec(x: &CycloElem) -> Vec<String> {
    x.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn ce_from_spec(ctx: &CycloCtx, coeffs: &[String]) -> Result<CycloElem> {
    let mut parsed = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let r = BigRational::from_str(c)
            .map_err(|e| Error::BadParameters(format!("bad rational {c:?}: {e}")))?;
        parsed.push(r);
    }
    ctx.from_coeffs(parsed)
}

pub fn cmat_to_spec(m: &Mat<CycloElem>) -> Vec<Vec<Vec<String>>> {
    m.rows_vec()
        .into_iter()
        .map(|row| row.into_iter().map(|e| ce_to_spec(&e)).collect())
        .collect()
}

pub fn cmat_from_spec(ctx: &CycloCtx, rows: &[Vec<Vec<String>>]) -> Result<Mat<CycloElem>> {
    mat_from_rows(rows.len(), rows.iter().map(|r| r.len()).collect(), || {
        let mut out = Vec::new();
        for row in rows {
            let mut r = Vec::new();
            for entry in row {
                r.push(ce_from_spec(ctx, entry)?);
            }
            out.push(r);
        }
        Ok(out)
    })
}

fn mat_from_rows<K: crate::matrix::Coeff>(
    nrows: usize,
    widths: Vec<usize>,
    rows: impl FnOnce() -> Result<Vec<Vec<K>>>,
) -> Result<Mat<K>> {
    if nrows == 0 || widths.iter().any(|&w| w != nrows) {
        return Err(Error::BadParameters(format!(
            "matrix must be square and nonempty, got {nrows} rows of widths {widths:?}"
        )));
    }
    Ok(Mat::from_rows(rows()?))
}

// ---------------------------------------------------------------------------
// representations, cocycles, jobs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationSpec {
    pub lhs: Vec<(usize, i64)>,
    pub rhs: Vec<(usize, i64)>,
}

impl From<&Relation> for RelationSpec {
    fn from(r: &Relation) -> Self {
        RelationSpec {
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
        }
    }
}

impl RelationSpec {
    pub fn to_relation(&self) -> Relation {
        Relation {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MatrixData {
    Finite(Vec<Vec<Vec<u64>>>),
    Cyclotomic(Vec<Vec<Vec<String>>>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentationSpec {
    pub generators: Vec<MatrixData>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
}

impl RepresentationSpec {
    pub fn from_finite(rep: &Representation<FieldElem>) -> Self {
        RepresentationSpec {
            generators: rep
                .gens()
                .iter()
                .map(|g| MatrixData::Finite(fmat_to_spec(g)))
                .collect(),
            relations: rep.relations().iter().map(RelationSpec::from).collect(),
        }
    }

    pub fn from_cyclo(rep: &Representation<CycloElem>) -> Self {
        RepresentationSpec {
            generators: rep
                .gens()
                .iter()
                .map(|g| MatrixData::Cyclotomic(cmat_to_spec(g)))
                .collect(),
            relations: rep.relations().iter().map(RelationSpec::from).collect(),
        }
    }

    pub fn build_finite(&self, ctx: &FieldCtx) -> Result<Representation<FieldElem>> {
        let mut gens = Vec::new();
        for g in &self.generators {
            match g {
                MatrixData::Finite(rows) => gens.push(fmat_from_spec(ctx, rows)?),
                MatrixData::Cyclotomic(_) => {
                    return Err(Error::BadParameters(
                        "cyclotomic matrix in a finite-field job".into(),
                    ))
                }
            }
        }
        Representation::new(gens, self.relations.iter().map(|r| r.to_relation()).collect())
    }

    pub fn build_cyclo(&self, ctx: &CycloCtx) -> Result<Representation<CycloElem>> {
        let mut gens = Vec::new();
        for g in &self.generators {
            match g {
                MatrixData::Cyclotomic(rows) => gens.push(cmat_from_spec(ctx, rows)?),
                MatrixData::Finite(_) => {
                    return Err(Error::BadParameters(
                        "finite-field matrix in a cyclotomic job".into(),
                    ))
                }
            }
        }
        Representation::new(gens, self.relations.iter().map(|r| r.to_relation()).collect())
    }
}

/// A cocycle as presentation plus generator matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CocycleSpec {
    /// Frobenius powers (finite fields) or residues mod n (cyclotomic).
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
    pub matrices: Vec<MatrixData>,
}

impl CocycleSpec {
    pub fn from_finite(c: &Cocycle<FieldElem>) -> Self {
        CocycleSpec {
            generators: c.presentation().gens.iter().map(|a| a.0).collect(),
            orders: c.presentation().orders.clone(),
            matrices: c
                .gen_mats()
                .iter()
                .map(|m| MatrixData::Finite(fmat_to_spec(m)))
                .collect(),
        }
    }

    pub fn from_cyclo(c: &Cocycle<CycloElem>) -> Self {
        CocycleSpec {
            generators: c.presentation().gens.clone(),
            orders: c.presentation().orders.clone(),
            matrices: c
                .gen_mats()
                .iter()
                .map(|m| MatrixData::Cyclotomic(cmat_to_spec(m)))
                .collect(),
        }
    }

    pub fn build_finite(&self, ctx: &FieldCtx) -> Result<Cocycle<FieldElem>> {
        let gens: Vec<AutPower> = self.generators.iter().map(|&k| AutPower(k)).collect();
        let mut mats = Vec::new();
        for m in &self.matrices {
            match m {
                MatrixData::Finite(rows) => mats.push(fmat_from_spec(ctx, rows)?),
                MatrixData::Cyclotomic(_) => {
                    return Err(Error::BadParameters(
                        "cyclotomic matrix in a finite-field cocycle".into(),
                    ))
                }
            }
        }
        Cocycle::validate_and_close(Presentation::new(gens, self.orders.clone()), mats)
    }

    pub fn build_cyclo(&self, ctx: &CycloCtx) -> Result<Cocycle<CycloElem>> {
        let n = ctx.conductor();
        for &g in &self.generators {
            if crate::arith::gcd_u64(g % n, n) != 1 {
                return Err(Error::NotCoprime(g, n));
            }
        }
        let mut mats = Vec::new();
        for m in &self.matrices {
            match m {
                MatrixData::Cyclotomic(rows) => mats.push(cmat_from_spec(ctx, rows)?),
                MatrixData::Finite(_) => {
                    return Err(Error::BadParameters(
                        "finite-field matrix in a cyclotomic cocycle".into(),
                    ))
                }
            }
        }
        Cocycle::validate_and_close(
            Presentation::new(self.generators.clone(), self.orders.clone()),
            mats,
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum PayloadSpec {
    Representation(RepresentationSpec),
    Cocycle(CocycleSpec),
    NormEquation {
        subgroup_order: u64,
        target: Vec<u64>,
        method: String,
    },
    Root {
        target: Vec<u64>,
        degree: u64,
    },
    Qm1Root {
        target: Vec<u64>,
    },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tries: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    /// Hilbert-90 scalar hints (cyclotomic jobs), as rational coefficient
    /// lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda_hints: Vec<Vec<String>>,
    /// Norm-equation hints μ (cyclotomic jobs).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mu_hints: Vec<Vec<String>>,
}

/// One self-contained unit of work for the CLI.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JobFile {
    pub version: u32,
    pub field: FieldSpec,
    pub payload: PayloadSpec,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobFile {
    pub fn validate_version(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::BadParameters(format!(
                "unsupported job version {} (expected {FORMAT_VERSION})",
                self.version
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job files serialize")
    }

    pub fn from_json(s: &str) -> Result<JobFile> {
        serde_json::from_str(s).map_err(|e| Error::BadParameters(format!("malformed job: {e}")))
    }
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "stage", rename_all = "kebab-case")]
pub enum ObstructionSpec {
    NoIntertwiner {
        generator: u64,
    },
    NormUnsolvable {
        generator: u64,
        lambda: MatrixDataElem,
    },
    KernelIntersection {
        lambda: MatrixDataElem,
    },
}

/// A single element in either encoding.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MatrixDataElem {
    Finite(Vec<u64>),
    Cyclotomic(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateFile {
    pub version: u32,
    pub field: FieldSpec,
    /// Canonical echo of the input representation.
    pub input: RepresentationSpec,
    pub seed: u64,
    pub strategy: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rewritten: Option<Vec<MatrixData>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionSpec>,
    pub intertwiners: Vec<(u64, MatrixData)>,
    pub power_scalars: Vec<(u64, MatrixDataElem)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutator_scalar: Option<MatrixDataElem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<CertificateFile> {
        serde_json::from_str(s)
            .map_err(|e| Error::BadParameters(format!("malformed certificate: {e}")))
    }
}

use crate::descent::{DescentCertificate, DescentOutcome, Obstruction};

pub fn certificate_to_file_finite(
    ctx: &FieldCtx,
    rep: &Representation<FieldElem>,
    cert: &DescentCertificate<FieldElem>,
) -> CertificateFile {
    let (outcome, conjugator, rewritten, obstruction) = match &cert.outcome {
        DescentOutcome::Written { a, rewritten } => (
            "written".to_string(),
            Some(MatrixData::Finite(fmat_to_spec(a))),
            Some(
                rewritten
                    .iter()
                    .map(|m| MatrixData::Finite(fmat_to_spec(m)))
                    .collect(),
            ),
            None,
        ),
        DescentOutcome::Obstructed { obstruction } => {
            let spec = match obstruction {
                Obstruction::NoIntertwiner { aut } => ObstructionSpec::NoIntertwiner {
                    generator: aut.0,
                },
                Obstruction::NormUnsolvable { aut, lambda } => ObstructionSpec::NormUnsolvable {
                    generator: aut.0,
                    lambda: MatrixDataElem::Finite(fe_to_spec(lambda)),
                },
                Obstruction::KernelIntersection { lambda } => {
                    ObstructionSpec::KernelIntersection {
                        lambda: MatrixDataElem::Finite(fe_to_spec(lambda)),
                    }
                }
            };
            ("obstructed".to_string(), None, None, Some(spec))
        }
    };
    CertificateFile {
        version: FORMAT_VERSION,
        field: FieldSpec::Finite(FiniteFieldSpec::canonical(ctx)),
        input: RepresentationSpec::from_finite(rep),
        seed: cert.seed,
        strategy: cert.strategy.clone(),
        outcome,
        conjugator,
        rewritten,
        obstruction,
        intertwiners: cert
            .intertwiners
            .iter()
            .map(|(a, m)| (a.0, MatrixData::Finite(fmat_to_spec(m))))
            .collect(),
        power_scalars: cert
            .power_scalars
            .iter()
            .map(|(a, l)| (a.0, MatrixDataElem::Finite(fe_to_spec(l))))
            .collect(),
        commutator_scalar: cert
            .commutator_scalar
            .as_ref()
            .map(|l| MatrixDataElem::Finite(fe_to_spec(l))),
        cocycle: cert.cocycle.as_ref().map(CocycleSpec::from_finite),
    }
}

pub fn certificate_to_file_cyclo(
    ctx: &CycloCtx,
    rep: &Representation<CycloElem>,
    cert: &DescentCertificate<CycloElem>,
) -> CertificateFile {
    let (outcome, conjugator, rewritten, obstruction) = match &cert.outcome {
        DescentOutcome::Written { a, rewritten } => (
            "written".to_string(),
            Some(MatrixData::Cyclotomic(cmat_to_spec(a))),
            Some(
                rewritten
                    .iter()
                    .map(|m| MatrixData::Cyclotomic(cmat_to_spec(m)))
                    .collect(),
            ),
            None,
        ),
        DescentOutcome::Obstructed { obstruction } => {
            let spec = match obstruction {
                Obstruction::NoIntertwiner { aut } => {
                    ObstructionSpec::NoIntertwiner { generator: *aut }
                }
                Obstruction::NormUnsolvable { aut, lambda } => ObstructionSpec::NormUnsolvable {
                    generator: *aut,
                    lambda: MatrixDataElem::Cyclotomic(ce_to_spec(lambda)),
                },
                Obstruction::KernelIntersection { lambda } => {
                    ObstructionSpec::KernelIntersection {
                        lambda: MatrixDataElem::Cyclotomic(ce_to_spec(lambda)),
                    }
                }
            };
            ("obstructed".to_string(), None, None, Some(spec))
        }
    };
    CertificateFile {
        version: FORMAT_VERSION,
        field: FieldSpec::Cyclotomic(CycloFieldSpec::canonical(ctx)),
        input: RepresentationSpec::from_cyclo(rep),
        seed: cert.seed,
        strategy: cert.strategy.clone(),
        outcome,
        conjugator,
        rewritten,
        obstruction,
        intertwiners: cert
            .intertwiners
            .iter()
            .map(|(a, m)| (*a, MatrixData::Cyclotomic(cmat_to_spec(m))))
            .collect(),
        power_scalars: cert
            .power_scalars
            .iter()
            .map(|(a, l)| (*a, MatrixDataElem::Cyclotomic(ce_to_spec(l))))
            .collect(),
        commutator_scalar: cert
            .commutator_scalar
            .as_ref()
            .map(|l| MatrixDataElem::Cyclotomic(ce_to_spec(l))),
        cocycle: cert.cocycle.as_ref().map(CocycleSpec::from_cyclo),
    }
}

/// Rebuild a typed finite-field certificate from its file form.
pub fn certificate_from_file_finite(
    ctx: &FieldCtx,
    file: &CertificateFile,
) -> Result<DescentCertificate<FieldElem>> {
    let as_fmat = |m: &MatrixData| -> Result<Mat<FieldElem>> {
        match m {
            MatrixData::Finite(rows) => fmat_from_spec(ctx, rows),
            _ => Err(Error::BadParameters("expected finite matrix".into())),
        }
    };
    let as_felem = |e: &MatrixDataElem| -> Result<FieldElem> {
        match e {
            MatrixDataElem::Finite(c) => fe_from_spec(ctx, c),
            _ => Err(Error::BadParameters("expected finite element".into())),
        }
    };
    let outcome = match file.outcome.as_str() {
        "written" => {
            let a = as_fmat(
                file.conjugator
                    .as_ref()
                    .ok_or_else(|| Error::BadParameters("missing conjugator".into()))?,
            )?;
            let rewritten = file
                .rewritten
                .as_ref()
                .ok_or_else(|| Error::BadParameters("missing rewritten generators".into()))?
                .iter()
                .map(&as_fmat)
                .collect::<Result<Vec<_>>>()?;
            DescentOutcome::Written { a, rewritten }
        }
        "obstructed" => {
            let spec = file
                .obstruction
                .as_ref()
                .ok_or_else(|| Error::BadParameters("missing obstruction".into()))?;
            let obstruction = match spec {
                ObstructionSpec::NoIntertwiner { generator } => Obstruction::NoIntertwiner {
                    aut: AutPower(*generator),
                },
                ObstructionSpec::NormUnsolvable { generator, lambda } => {
                    Obstruction::NormUnsolvable {
                        aut: AutPower(*generator),
                        lambda: as_felem(lambda)?,
                    }
                }
                ObstructionSpec::KernelIntersection { lambda } => {
                    Obstruction::KernelIntersection {
                        lambda: as_felem(lambda)?,
                    }
                }
            };
            DescentOutcome::Obstructed { obstruction }
        }
        other => {
            return Err(Error::BadParameters(format!("unknown outcome {other:?}")));
        }
    };
    Ok(DescentCertificate {
        outcome,
        intertwiners: file
            .intertwiners
            .iter()
            .map(|(a, m)| Ok((AutPower(*a), as_fmat(m)?)))
            .collect::<Result<Vec<_>>>()?,
        power_scalars: file
            .power_scalars
            .iter()
            .map(|(a, l)| Ok((AutPower(*a), as_felem(l)?)))
            .collect::<Result<Vec<_>>>()?,
        commutator_scalar: file.commutator_scalar.as_ref().map(&as_felem).transpose()?,
        cocycle: file
            .cocycle
            .as_ref()
            .map(|c| c.build_finite(ctx))
            .transpose()?,
        strategy: file.strategy.clone(),
        seed: file.seed,
    })
}

/// Rebuild a typed cyclotomic certificate from its file form.
pub fn certificate_from_file_cyclo(
    ctx: &CycloCtx,
    file: &CertificateFile,
) -> Result<DescentCertificate<CycloElem>> {
    let as_cmat = |m: &MatrixData| -> Result<Mat<CycloElem>> {
        match m {
            MatrixData::Cyclotomic(rows) => cmat_from_spec(ctx, rows),
            _ => Err(Error::BadParameters("expected cyclotomic matrix".into())),
        }
    };
    let as_celem = |e: &MatrixDataElem| -> Result<CycloElem> {
        match e {
            MatrixDataElem::Cyclotomic(c) => ce_from_spec(ctx, c),
            _ => Err(Error::BadParameters("expected cyclotomic element".into())),
        }
    };
    let outcome = match file.outcome.as_str() {
        "written" => {
            let a = as_cmat(
                file.conjugator
                    .as_ref()
                    .ok_or_else(|| Error::BadParameters("missing conjugator".into()))?,
            )?;
            let rewritten = file
                .rewritten
                .as_ref()
                .ok_or_else(|| Error::BadParameters("missing rewritten generators".into()))?
                .iter()
                .map(&as_cmat)
                .collect::<Result<Vec<_>>>()?;
            DescentOutcome::Written { a, rewritten }
        }
        "obstructed" => {
            let spec = file
                .obstruction
                .as_ref()
                .ok_or_else(|| Error::BadParameters("missing obstruction".into()))?;
            let obstruction = match spec {
                ObstructionSpec::NoIntertwiner { generator } => {
                    Obstruction::NoIntertwiner { aut: *generator }
                }
                ObstructionSpec::NormUnsolvable { generator, lambda } => {
                    Obstruction::NormUnsolvable {
                        aut: *generator,
                        lambda: as_celem(lambda)?,
                    }
                }
                ObstructionSpec::KernelIntersection { lambda } => {
                    Obstruction::KernelIntersection {
                        lambda: as_celem(lambda)?,
                    }
                }
            };
            DescentOutcome::Obstructed { obstruction }
        }
        other => {
            return Err(Error::BadParameters(format!("unknown outcome {other:?}")));
        }
    };
    Ok(DescentCertificate {
        outcome,
        intertwiners: file
            .intertwiners
            .iter()
            .map(|(a, m)| Ok((*a, as_cmat(m)?)))
            .collect::<Result<Vec<_>>>()?,
        power_scalars: file
            .power_scalars
            .iter()
            .map(|(a, l)| Ok((*a, as_celem(l)?)))
            .collect::<Result<Vec<_>>>()?,
        commutator_scalar: file.commutator_scalar.as_ref().map(&as_celem).transpose()?,
        cocycle: file
            .cocycle
            .as_ref()
            .map(|c| c.build_cyclo(ctx))
            .transpose()?,
        strategy: file.strategy.clone(),
        seed: file.seed,
    })
}
