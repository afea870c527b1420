//! Python bindings: the field tower type plus the job-level operations
//! (rewrite, hilbert90, norm solving, root extraction, densities), all
//! exchanging the same JSON formats as the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use galois_descent::cocycle::{solve_h90, H90Strategy, DEFAULT_MAX_TRIES};
use galois_descent::cyclotomic::{cyclo_rewrite, example_builder, CycloHints, ExampleFamily};
use galois_descent::descent::{
    rewrite as rewrite_rs, verify_certificate, PresentationChoice, RewriteOptions,
};
use galois_descent::error::Error;
use galois_descent::fftower::{
    apply_aut, is_normal_element, make_field, norm, trace, trace_one_element, AutPower, FieldCtx,
};
use galois_descent::format::{
    ce_from_spec, certificate_from_file_cyclo, certificate_from_file_finite,
    certificate_to_file_cyclo, certificate_to_file_finite, fe_from_spec, fe_to_spec,
    fmat_to_spec, CertificateFile, CycloFieldSpec, FieldSpec,
    JobFile, JobOptions, MatrixData, PayloadSpec, RepresentationSpec, FORMAT_VERSION,
};
use galois_descent::normsolve::{
    dth_root as dth_root_rs, norm_solve_gcd, norm_solve_order, qm1_root as qm1_root_rs,
    NormEquation,
};
use galois_descent::stats::{f_dq, full_degree_density, normal_basis_density};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite-field tower GF(p) ⊆ GF(p^d0) ⊆ GF(p^n) with exact arithmetic.
#[pyclass(name = "FieldTower")]
struct PyFieldTower {
    ctx: FieldCtx,
}

#[pymethods]
impl PyFieldTower {
    #[new]
    #[pyo3(signature = (p, n, d0 = 1, modulus = None))]
    fn new(p: u64, n: usize, d0: usize, modulus: Option<Vec<u64>>) -> PyResult<Self> {
        Ok(PyFieldTower {
            ctx: make_field(p, n, d0, modulus).map_err(py_err)?,
        })
    }

    /// The modulus polynomial actually in use (generated ones included).
    fn modulus(&self) -> Vec<u64> {
        self.ctx.modulus().to_vec()
    }

    fn group_order(&self) -> u64 {
        self.ctx.group_order()
    }

    fn field_size(&self) -> u128 {
        self.ctx.field_size()
    }

    fn add(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        let y = fe_from_spec(&self.ctx, &b).map_err(py_err)?;
        Ok(fe_to_spec(&x.add_ref(&y)))
    }

    fn mul(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        let y = fe_from_spec(&self.ctx, &b).map_err(py_err)?;
        Ok(fe_to_spec(&x.mul_ref(&y)))
    }

    fn inverse(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        Ok(fe_to_spec(&x.inverse().map_err(py_err)?))
    }

    /// Apply the Frobenius power φ^k (φ: x ↦ x^q).
    fn apply_aut(&self, k: u64, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        Ok(fe_to_spec(&apply_aut(AutPower(k), &x)))
    }

    #[pyo3(signature = (a, subgroup_order = None))]
    fn trace(&self, a: Vec<u64>, subgroup_order: Option<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        let o = subgroup_order.unwrap_or(self.ctx.group_order());
        Ok(fe_to_spec(&trace(&x, o).map_err(py_err)?))
    }

    #[pyo3(signature = (a, subgroup_order = None))]
    fn norm(&self, a: Vec<u64>, subgroup_order: Option<u64>) -> PyResult<Vec<u64>> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        let o = subgroup_order.unwrap_or(self.ctx.group_order());
        Ok(fe_to_spec(&norm(&x, o).map_err(py_err)?))
    }

    #[pyo3(signature = (subgroup_order = None))]
    fn trace_one_element(&self, subgroup_order: Option<u64>) -> PyResult<Vec<u64>> {
        let o = subgroup_order.unwrap_or(self.ctx.group_order());
        Ok(fe_to_spec(&trace_one_element(&self.ctx, o).map_err(py_err)?))
    }

    fn is_normal_element(&self, a: Vec<u64>) -> PyResult<bool> {
        let x = fe_from_spec(&self.ctx, &a).map_err(py_err)?;
        Ok(is_normal_element(&x))
    }

    #[pyo3(signature = (target, subgroup_order = None, method = "gcd", seed = 0, max_tries = DEFAULT_MAX_TRIES))]
    fn norm_solve(
        &self,
        target: Vec<u64>,
        subgroup_order: Option<u64>,
        method: &str,
        seed: u64,
        max_tries: u64,
    ) -> PyResult<Vec<u64>> {
        let t = fe_from_spec(&self.ctx, &target).map_err(py_err)?;
        let eq = NormEquation {
            subgroup_order: subgroup_order.unwrap_or(self.ctx.group_order()),
            target: t,
        };
        let mu = match method {
            "order" => norm_solve_order(&self.ctx, &eq, seed, max_tries),
            "gcd" => norm_solve_gcd(&self.ctx, &eq, seed, max_tries),
            other => Err(Error::BadParameters(format!("unknown method {other:?}"))),
        }
        .map_err(py_err)?;
        Ok(fe_to_spec(&mu))
    }

    #[pyo3(signature = (target, seed = 0, max_tries = DEFAULT_MAX_TRIES))]
    fn qm1_root(&self, target: Vec<u64>, seed: u64, max_tries: u64) -> PyResult<Vec<u64>> {
        let t = fe_from_spec(&self.ctx, &target).map_err(py_err)?;
        Ok(fe_to_spec(&qm1_root_rs(&t, seed, max_tries).map_err(py_err)?))
    }

    fn dth_root(&self, target: Vec<u64>, degree: u64) -> PyResult<Vec<u64>> {
        let t = fe_from_spec(&self.ctx, &target).map_err(py_err)?;
        Ok(fe_to_spec(&dth_root_rs(&t, degree as u128).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "FieldTower(p={}, n={}, d0={}, modulus={:?})",
            self.ctx.p(),
            self.ctx.n(),
            self.ctx.d0(),
            self.ctx.modulus()
        )
    }
}

/// Run the descent pipeline on a JSON job; returns (outcome, certificate
/// JSON). Outcome is "written" or "obstructed".
#[pyfunction]
#[pyo3(signature = (job_json, seed = None))]
fn rewrite(job_json: &str, seed: Option<u64>) -> PyResult<(String, String)> {
    let job = JobFile::from_json(job_json).map_err(py_err)?;
    job.validate_version().map_err(py_err)?;
    let seed = seed.or(job.options.seed).unwrap_or(0);
    let max_tries = job.options.max_tries.unwrap_or(DEFAULT_MAX_TRIES);
    let PayloadSpec::Representation(rep_spec) = &job.payload else {
        return Err(PyValueError::new_err("rewrite expects a representation payload"));
    };
    match &job.field {
        FieldSpec::Finite(fspec) => {
            let ctx = fspec.build().map_err(py_err)?;
            let rep = rep_spec.build_finite(&ctx).map_err(py_err)?;
            let strategy = job.options.strategy.as_deref().unwrap_or("scalar");
            let presentation = match job.options.presentation.as_deref() {
                Some("coprime-pair") => PresentationChoice::CoprimePair,
                _ => PresentationChoice::SingleGenerator,
            };
            let opts = RewriteOptions {
                strategy: strategy.parse().map_err(py_err)?,
                seed,
                max_tries,
                presentation,
            };
            let cert = rewrite_rs(&ctx, &rep, &opts).map_err(py_err)?;
            let file = certificate_to_file_finite(&ctx, &rep, &cert);
            Ok((file.outcome.clone(), file.to_json()))
        }
        FieldSpec::Cyclotomic(cspec) => {
            let ctx = cspec.build().map_err(py_err)?;
            let rep = rep_spec.build_cyclo(&ctx).map_err(py_err)?;
            let mut hints = CycloHints::default();
            for h in &job.options.lambda_hints {
                hints.lambda.push(ce_from_spec(&ctx, h).map_err(py_err)?);
            }
            for h in &job.options.mu_hints {
                hints.mu.push(ce_from_spec(&ctx, h).map_err(py_err)?);
            }
            let cert = cyclo_rewrite(&ctx, &rep, &hints, seed).map_err(py_err)?;
            let file = certificate_to_file_cyclo(&ctx, &rep, &cert);
            Ok((file.outcome.clone(), file.to_json()))
        }
    }
}

/// Solve the coboundary equation for a cocycle job; returns the conjugating
/// matrix as JSON.
#[pyfunction]
#[pyo3(signature = (job_json, strategy = "scalar", seed = 0, max_tries = DEFAULT_MAX_TRIES))]
fn hilbert90(job_json: &str, strategy: &str, seed: u64, max_tries: u64) -> PyResult<String> {
    let job = JobFile::from_json(job_json).map_err(py_err)?;
    job.validate_version().map_err(py_err)?;
    let strategy: H90Strategy = strategy.parse().map_err(py_err)?;
    let PayloadSpec::Cocycle(cspec) = &job.payload else {
        return Err(PyValueError::new_err("hilbert90 expects a cocycle payload"));
    };
    match &job.field {
        FieldSpec::Finite(fspec) => {
            let ctx = fspec.build().map_err(py_err)?;
            let cocycle = cspec.build_finite(&ctx).map_err(py_err)?;
            let a = solve_h90(&cocycle, strategy, seed, max_tries).map_err(py_err)?;
            Ok(serde_json::to_string_pretty(&MatrixData::Finite(fmat_to_spec(&a)))
                .expect("serializes"))
        }
        FieldSpec::Cyclotomic(cyspec) => {
            let ctx = cyspec.build().map_err(py_err)?;
            let cocycle = cspec.build_cyclo(&ctx).map_err(py_err)?;
            let a = solve_h90(&cocycle, strategy, seed, max_tries).map_err(py_err)?;
            Ok(serde_json::to_string_pretty(&MatrixData::Cyclotomic(
                galois_descent::format::cmat_to_spec(&a),
            ))
            .expect("serializes"))
        }
    }
}

/// Re-check a certificate against its job from scratch.
#[pyfunction]
fn verify(job_json: &str, certificate_json: &str) -> PyResult<bool> {
    let job = JobFile::from_json(job_json).map_err(py_err)?;
    let file = CertificateFile::from_json(certificate_json).map_err(py_err)?;
    let PayloadSpec::Representation(rep_spec) = &job.payload else {
        return Err(PyValueError::new_err("verify expects a representation job"));
    };
    match &job.field {
        FieldSpec::Finite(fspec) => {
            let ctx = fspec.build().map_err(py_err)?;
            let rep = rep_spec.build_finite(&ctx).map_err(py_err)?;
            let cert = match certificate_from_file_finite(&ctx, &file) {
                Ok(c) => c,
                Err(_) => return Ok(false),
            };
            Ok(file.input == RepresentationSpec::from_finite(&rep)
                && verify_certificate(&ctx, &rep, &cert).is_ok())
        }
        FieldSpec::Cyclotomic(cspec) => {
            let ctx = cspec.build().map_err(py_err)?;
            let rep = rep_spec.build_cyclo(&ctx).map_err(py_err)?;
            let cert = match certificate_from_file_cyclo(&ctx, &file) {
                Ok(c) => c,
                Err(_) => return Ok(false),
            };
            Ok(file.input == RepresentationSpec::from_cyclo(&rep)
                && galois_descent::cyclotomic::verify_cyclo_certificate(&ctx, &rep, &cert).is_ok())
        }
    }
}

/// Emit one of the worked example fixtures as a JSON job.
#[pyfunction]
#[pyo3(signature = (family, n, m = None))]
fn example_job(family: &str, n: u64, m: Option<u64>) -> PyResult<String> {
    let family = match family {
        "dicyclic" => ExampleFamily::Dicyclic,
        "semidihedral" => ExampleFamily::SemidihedralLike,
        "metacyclic" => ExampleFamily::Metacyclic {
            m: m.ok_or_else(|| PyValueError::new_err("metacyclic family needs m"))?,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown family {other:?} (dicyclic | semidihedral | metacyclic)"
            )))
        }
    };
    let (ctx, rep) = example_builder(family, n).map_err(py_err)?;
    let job = JobFile {
        version: FORMAT_VERSION,
        field: FieldSpec::Cyclotomic(CycloFieldSpec::canonical(&ctx)),
        payload: PayloadSpec::Representation(RepresentationSpec::from_cyclo(&rep)),
        options: JobOptions::default(),
    };
    Ok(job.to_json())
}

/// f(d, q) = ∏(1 − q^(−i)) as an exact rational string.
#[pyfunction(name = "f_dq")]
fn f_dq_py(d: usize, q: u128) -> PyResult<String> {
    Ok(f_dq(d, q).map_err(py_err)?.to_string())
}

/// Exact density of normal elements of GF(q^n)/GF(q), as a rational string.
#[pyfunction(name = "normal_basis_density")]
fn normal_basis_density_py(q: u128, n: u64) -> PyResult<String> {
    Ok(normal_basis_density(q, n).map_err(py_err)?.to_string())
}

/// Möbius-sum density of degree-n elements, as a rational string.
#[pyfunction(name = "full_degree_density")]
fn full_degree_density_py(q: u128, n: u64) -> PyResult<String> {
    Ok(full_degree_density(q, n).map_err(py_err)?.to_string())
}

#[pymodule]
fn galois_descent_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFieldTower>()?;
    m.add_function(wrap_pyfunction!(rewrite, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert90, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(example_job, m)?)?;
    m.add_function(wrap_pyfunction!(f_dq_py, m)?)?;
    m.add_function(wrap_pyfunction!(normal_basis_density_py, m)?)?;
    m.add_function(wrap_pyfunction!(full_degree_density_py, m)?)?;
    m.add("FORMAT_VERSION", FORMAT_VERSION)?;
    Ok(())
}
