//! 1-cocycles C: G → GL_d(E) and the constructive Hilbert-90 machinery.
//!
//! A cocycle is stored as a finitely presented abelian group of automorphisms
//! together with one invertible matrix per generator; construction closes the
//! assignment over the whole group along the multiplicative compatibility
//! rule C_{αβ} = C_α·α(C_β) and checks every defining relation, so a value of
//! type [`Cocycle`] is always a genuine cocycle.
//!
//! The central operator is the average Π_C(X) = Σ_{α∈G} C_α·α(X); whenever
//! Π_C lands on an invertible matrix A, that A solves the coboundary equation
//! C_α = A·α(A)⁻¹. The solvers differ only in how they hunt for an X that
//! makes Π_C(X) invertible; the `deterministic` strategy instead runs an
//! induction on the dimension and never fails.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fftower::{subfield_basis, trace_full, AutPower, FieldCtx, FieldElem};
use crate::matrix::{apply_aut_col, apply_aut_mat, ColVec, GaloisCoeff, Mat};
use crate::rng::Rng64;

/// Generators of a finite abelian automorphism group with their orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<A> {
    pub gens: Vec<A>,
    pub orders: Vec<u64>,
}

impl<A: Clone> Presentation<A> {
    pub fn new(gens: Vec<A>, orders: Vec<u64>) -> Self {
        assert_eq!(gens.len(), orders.len());
        assert!(!gens.is_empty());
        Presentation { gens, orders }
    }

    pub fn group_size(&self) -> u64 {
        self.orders.iter().product()
    }
}

/// Single-generator presentation of the full cyclic Gal(E/F).
pub fn full_cyclic(ctx: &FieldCtx) -> Presentation<AutPower> {
    let m = ctx.group_order();
    Presentation::new(vec![AutPower(1 % m)], vec![m])
}

#[derive(Debug, Clone)]
struct GroupPoint<K: GaloisCoeff> {
    exps: Vec<u64>,
    aut: K::Aut,
    mat: Mat<K>,
}

/// A validated, closed 1-cocycle.
#[derive(Debug, Clone)]
pub struct Cocycle<K: GaloisCoeff> {
    pres: Presentation<K::Aut>,
    dim: usize,
    table: Vec<GroupPoint<K>>,
    index: BTreeMap<K::Aut, usize>,
}

/// Enumerate exponent tuples in mixed radix, first generator most
/// significant; the fixed order keeps closure and relation defects
/// reproducible.
pub(crate) fn exponent_tuples(orders: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; orders.len()];
    loop {
        out.push(cur.clone());
        let mut k = orders.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < orders[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Validate a presentation against the actual automorphism orders and check
/// that the exponent tuples enumerate ∏ mᵢ distinct group elements.
fn validate_presentation<K: GaloisCoeff>(
    pres: &Presentation<K::Aut>,
    proto: &K,
) -> Result<Vec<(Vec<u64>, K::Aut)>> {
    for (g, &m) in pres.gens.iter().zip(&pres.orders) {
        let actual = proto.aut_order(g);
        if actual != m {
            return Err(Error::BadParameters(format!(
                "generator {g:?} has order {actual}, presentation claims {m}"
            )));
        }
    }
    let tuples = exponent_tuples(&pres.orders);
    let mut seen: BTreeMap<K::Aut, Vec<u64>> = BTreeMap::new();
    let mut out = Vec::with_capacity(tuples.len());
    for exps in tuples {
        let mut aut = proto.aut_identity();
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                aut = proto.aut_compose(&aut, &pres.gens[k]);
            }
        }
        if let Some(prev) = seen.insert(aut.clone(), exps.clone()) {
            return Err(Error::BadParameters(format!(
                "presentation is not free: exponents {prev:?} and {exps:?} give the same automorphism"
            )));
        }
        out.push((exps, aut));
    }
    Ok(out)
}

impl<K: GaloisCoeff> Cocycle<K> {
    /// Extend a generator assignment to the whole group along the cocycle
    /// rule and check every defining relation; an assignment that fails a
    /// relation is rejected with the offending defect.
    pub fn validate_and_close(
        pres: Presentation<K::Aut>,
        assignment: Vec<Mat<K>>,
    ) -> Result<Self> {
        if assignment.len() != pres.gens.len() {
            return Err(Error::BadParameters(format!(
                "{} generators but {} matrices",
                pres.gens.len(),
                assignment.len()
            )));
        }
        let dim = assignment[0].dim();
        let proto = assignment[0].proto().clone();
        for mat in &assignment {
            if mat.dim() != dim {
                return Err(Error::BadParameters("mixed matrix dimensions".into()));
            }
            if !mat.is_invertible() {
                return Err(Error::BadParameters(
                    "cocycle generator matrix is singular".into(),
                ));
            }
        }
        let elements = validate_presentation(&pres, &proto)?;

        // Power relations: C_g · g(C_g) ⋯ g^(m−1)(C_g) = I.
        for (k, (g, &m)) in pres.gens.iter().zip(&pres.orders).enumerate() {
            let prod = twisted_power(&proto, g, &assignment[k], m);
            if !prod.is_identity() {
                return Err(Error::RelationDefect {
                    relation: format!("g{k}^{m} = 1"),
                    defect: format!("{prod:?}"),
                });
            }
        }
        // Commutator relations: C_a·a(C_b) = C_b·b(C_a).
        for i in 0..pres.gens.len() {
            for j in i + 1..pres.gens.len() {
                let lhs = assignment[i].mul(&apply_aut_mat(&pres.gens[i], &assignment[j]));
                let rhs = assignment[j].mul(&apply_aut_mat(&pres.gens[j], &assignment[i]));
                if lhs != rhs {
                    let defect = lhs.mul(&rhs.invert()?);
                    return Err(Error::RelationDefect {
                        relation: format!("[g{j}, g{i}] = 1"),
                        defect: format!("{defect:?}"),
                    });
                }
            }
        }

        // Close along normal-form words g0^e0 · g1^e1 ⋯ .
        let mut pow_tables: Vec<Vec<Mat<K>>> = Vec::new();
        for (k, &m) in pres.orders.iter().enumerate() {
            let mut tab = vec![Mat::identity(dim, &proto)];
            let mut aut = proto.aut_identity();
            for _ in 1..m {
                let next = tab
                    .last()
                    .unwrap()
                    .mul(&apply_aut_mat(&aut, &assignment[k]));
                tab.push(next);
                aut = proto.aut_compose(&aut, &pres.gens[k]);
            }
            pow_tables.push(tab);
        }
        let mut table = Vec::with_capacity(elements.len());
        let mut index = BTreeMap::new();
        for (exps, aut) in elements {
            let mut mat = Mat::identity(dim, &proto);
            let mut prefix_aut = proto.aut_identity();
            for (k, &e) in exps.iter().enumerate() {
                mat = mat.mul(&apply_aut_mat(&prefix_aut, &pow_tables[k][e as usize]));
                for _ in 0..e {
                    prefix_aut = proto.aut_compose(&prefix_aut, &pres.gens[k]);
                }
            }
            index.insert(aut.clone(), table.len());
            table.push(GroupPoint { exps, aut, mat });
        }
        let c = Cocycle {
            pres,
            dim,
            table,
            index,
        };
        // The abelian relations make the closure well defined; check the full
        // cocycle identity anyway while the groups are this small.
        for a in &c.table {
            for b in &c.table {
                let ab = proto.aut_compose(&a.aut, &b.aut);
                let expect = a.mat.mul(&apply_aut_mat(&a.aut, &b.mat));
                if c.lookup(&ab).expect("closed group") != &expect {
                    return Err(Error::RelationDefect {
                        relation: format!("C({:?}·{:?})", a.aut, b.aut),
                        defect: "closure violates the cocycle identity".into(),
                    });
                }
            }
        }
        Ok(c)
    }

    /// The coboundary α ↦ A·α(A)⁻¹ of an invertible A.
    pub fn coboundary(pres: Presentation<K::Aut>, a: &Mat<K>) -> Result<Self> {
        let a_inv = a.invert()?;
        let assignment = pres
            .gens
            .iter()
            .map(|g| a.mul(&apply_aut_mat(g, &a_inv)))
            .collect();
        Cocycle::validate_and_close(pres, assignment)
    }

    /// The trivial cocycle (every matrix the identity).
    pub fn trivial(pres: Presentation<K::Aut>, dim: usize, proto: &K) -> Result<Self> {
        let id = Mat::identity(dim, proto);
        let assignment = vec![id; pres.gens.len()];
        Cocycle::validate_and_close(pres, assignment)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn presentation(&self) -> &Presentation<K::Aut> {
        &self.pres
    }

    pub fn group_size(&self) -> usize {
        self.table.len()
    }

    pub fn proto(&self) -> &K {
        self.table[0].mat.proto()
    }

    /// Generator matrices in presentation order.
    pub fn gen_mats(&self) -> Vec<Mat<K>> {
        self.pres
            .gens
            .iter()
            .map(|g| self.lookup(g).expect("generator in closure").clone())
            .collect()
    }

    pub fn lookup(&self, aut: &K::Aut) -> Option<&Mat<K>> {
        self.index.get(aut).map(|&i| &self.table[i].mat)
    }

    /// Iterate over (automorphism, matrix) pairs in closure order.
    pub fn iter(&self) -> impl Iterator<Item = (&K::Aut, &Mat<K>)> {
        self.table.iter().map(|p| (&p.aut, &p.mat))
    }

    /// Iterate with exponent tuples included.
    pub fn iter_full(&self) -> impl Iterator<Item = (&[u64], &K::Aut, &Mat<K>)> {
        self.table.iter().map(|p| (&p.exps[..], &p.aut, &p.mat))
    }

    /// Check the coboundary property C_α = A·α(A)⁻¹ on every generator.
    pub fn is_solved_by(&self, a: &Mat<K>) -> bool {
        if !a.is_invertible() {
            return false;
        }
        let a_inv = a.invert().expect("checked invertible");
        self.pres.gens.iter().all(|g| {
            let rhs = a.mul(&apply_aut_mat(g, &a_inv));
            self.lookup(g).expect("generator in closure") == &rhs
        })
    }
}

/// The twisted power C·g(C)·g²(C)⋯g^(count−1)(C).
pub(crate) fn twisted_power<K: GaloisCoeff>(
    proto: &K,
    g: &K::Aut,
    c: &Mat<K>,
    count: u64,
) -> Mat<K> {
    let mut acc = Mat::identity(c.dim(), c.proto());
    let mut aut = proto.aut_identity();
    for _ in 0..count {
        acc = acc.mul(&apply_aut_mat(&aut, c));
        aut = proto.aut_compose(&aut, g);
    }
    acc
}

// ---------------------------------------------------------------------------
// averaging operators
// ---------------------------------------------------------------------------

/// Π_C(X) = Σ_{α∈G} C_α·α(X). Its image consists of fixed points:
/// C_α·α(Π_C(X)) = Π_C(X) for every α.
pub fn pi_c<K: GaloisCoeff>(c: &Cocycle<K>, x: &Mat<K>) -> Mat<K> {
    let mut acc = Mat::zero(c.dim(), c.proto());
    for (aut, mat) in c.iter() {
        acc = acc.add(&mat.mul(&apply_aut_mat(aut, x)));
    }
    acc
}

/// π_C = |G|⁻¹·Π_C, defined only when the characteristic does not divide |G|.
pub fn pi_c_avg<K: GaloisCoeff>(c: &Cocycle<K>, x: &Mat<K>) -> Result<Mat<K>> {
    let n = c.group_size() as u64;
    let proto = c.proto();
    if proto.char_divides(n) {
        return Err(Error::PCharDividesG(n));
    }
    let inv = proto.integer_like(n as i64).inv()?;
    Ok(pi_c(c, x).mul_scalar(&inv))
}

/// Γ_α(X) = C_α·α(X) − X; vanishes on the image of Π_C.
pub fn gamma<K: GaloisCoeff>(c: &Cocycle<K>, a: &K::Aut, x: &Mat<K>) -> Result<Mat<K>> {
    let ca = c
        .lookup(a)
        .ok_or_else(|| Error::BadParameters(format!("automorphism {a:?} not in the group")))?;
    Ok(ca.mul(&apply_aut_mat(a, x)).sub(x))
}

/// Column variant Π̂_C(x) = Σ C_α·α(x).
pub fn pi_hat<K: GaloisCoeff>(c: &Cocycle<K>, x: &ColVec<K>) -> ColVec<K> {
    let proto = c.proto();
    let mut acc = ColVec::new(vec![proto.zero_like(); x.dim()]);
    for (aut, mat) in c.iter() {
        let img = apply_aut_col(aut, x);
        acc = acc.add(&ColVec::new(mat.mul_col(&img.entries)));
    }
    acc
}

/// Column variant Γ̂_α(x) = C_α·α(x) − x.
pub fn gamma_hat<K: GaloisCoeff>(c: &Cocycle<K>, a: &K::Aut, x: &ColVec<K>) -> Result<ColVec<K>> {
    let ca = c
        .lookup(a)
        .ok_or_else(|| Error::BadParameters(format!("automorphism {a:?} not in the group")))?;
    let img = apply_aut_col(a, x);
    Ok(ColVec::new(ca.mul_col(&img.entries)).sub(x))
}

/// The cohomologous cocycle D_α = Y⁻¹·C_α·α(Y); satisfies
/// Π_D(X) = Y⁻¹·Π_C(YX).
pub fn transport<K: GaloisCoeff>(c: &Cocycle<K>, y: &Mat<K>) -> Result<Cocycle<K>> {
    let y_inv = y.invert()?;
    let assignment = c
        .pres
        .gens
        .iter()
        .map(|g| {
            let cg = c.lookup(g).expect("generator in closure");
            y_inv.mul(&cg.mul(&apply_aut_mat(g, y)))
        })
        .collect();
    Cocycle::validate_and_close(c.pres.clone(), assignment)
}

// ---------------------------------------------------------------------------
// Hilbert 90 solvers
// ---------------------------------------------------------------------------

/// Candidate-hunting strategy for the multiplicative solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H90Strategy {
    /// A = Π_C(λI), λ over a basis scan then random; guaranteed to succeed
    /// when |F| ≥ d.
    Scalar,
    /// A = Π_C(λ·Dⁱ) with D the d-cycle permutation matrix.
    Structured,
    /// A = Π_C(X) for uniformly random X.
    Random,
    /// Dimension induction; never fails on a validated cocycle.
    Deterministic,
}

impl std::str::FromStr for H90Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(H90Strategy::Scalar),
            "structured" => Ok(H90Strategy::Structured),
            "random" => Ok(H90Strategy::Random),
            "deterministic" => Ok(H90Strategy::Deterministic),
            other => Err(Error::BadParameters(format!("unknown strategy {other}"))),
        }
    }
}

impl H90Strategy {
    pub fn name(self) -> &'static str {
        match self {
            H90Strategy::Scalar => "scalar",
            H90Strategy::Structured => "structured",
            H90Strategy::Random => "random",
            H90Strategy::Deterministic => "deterministic",
        }
    }
}

/// With per-trial failure probability at most max(1 − f(d,q), 5/7), 64 trials
/// leave a failure probability below (5/7)^64 ≈ 4·10⁻¹⁰.
pub const DEFAULT_MAX_TRIES: u64 = 64;

/// Solve C_α = A·α(A)⁻¹ for invertible A. Whatever the strategy, the
/// returned matrix has been verified against every generator.
pub fn solve_h90<K: GaloisCoeff>(
    c: &Cocycle<K>,
    strategy: H90Strategy,
    seed: u64,
    max_tries: u64,
) -> Result<Mat<K>> {
    let d = c.dim();
    let proto = c.proto();
    let accept = |a: Mat<K>| -> Option<Mat<K>> {
        if a.is_invertible() && c.is_solved_by(&a) {
            Some(a)
        } else {
            None
        }
    };
    match strategy {
        H90Strategy::Scalar => {
            for lam in proto.scan_basis() {
                if let Some(a) = accept(pi_c(c, &Mat::scalar(d, &lam))) {
                    return Ok(a);
                }
            }
            let mut rng = Rng64::derive(seed, 0x73636c);
            for _ in 0..max_tries {
                let lam = proto.random_like(&mut rng);
                if let Some(a) = accept(pi_c(c, &Mat::scalar(d, &lam))) {
                    return Ok(a);
                }
            }
            Err(Error::ExhaustedTries(max_tries))
        }
        H90Strategy::Structured => {
            let cycle = Mat::from_fn(d, |r, cidx| {
                if (r + 1) % d == cidx {
                    proto.one_like()
                } else {
                    proto.zero_like()
                }
            });
            for i in 0..d as u64 {
                let di = cycle.pow(i);
                for lam in proto.scan_basis() {
                    if let Some(a) = accept(pi_c(c, &di.mul_scalar(&lam))) {
                        return Ok(a);
                    }
                }
            }
            let mut rng = Rng64::derive(seed, 0x737472);
            for _ in 0..max_tries {
                let i = rng.below(d as u64);
                let lam = proto.random_like(&mut rng);
                if let Some(a) = accept(pi_c(c, &cycle.pow(i).mul_scalar(&lam))) {
                    return Ok(a);
                }
            }
            Err(Error::ExhaustedTries(max_tries))
        }
        H90Strategy::Random => {
            let mut rng = Rng64::derive(seed, 0x726e64);
            for _ in 0..max_tries {
                let x = Mat::random(d, proto, &mut rng);
                if let Some(a) = accept(pi_c(c, &x)) {
                    return Ok(a);
                }
            }
            Err(Error::ExhaustedTries(max_tries))
        }
        H90Strategy::Deterministic => {
            let a = solve_deterministic(c);
            if c.is_solved_by(&a) {
                Ok(a)
            } else {
                Err(Error::BadParameters(
                    "deterministic solver produced an unverified matrix".into(),
                ))
            }
        }
    }
}

/// A trace-one element for the acting group: scan the spanning basis for one
/// with invertible group trace and rescale.
fn group_trace_one<K: GaloisCoeff>(c: &Cocycle<K>) -> K {
    let proto = c.proto();
    for b in proto.scan_basis() {
        let mut t = proto.zero_like();
        for (aut, _) in c.iter() {
            t = t.add(&b.apply(aut));
        }
        if !t.is_zero() {
            return t.inv().expect("nonzero trace").mul(&b);
        }
    }
    unreachable!("group trace is surjective onto the fixed field")
}

/// Dimension-induction solver: find a fixed column of Π_C, split off a
/// (d−1)-dimensional cocycle, recurse, and repair the top row with the
/// additive solver. Ties break deterministically: first basis λ with a
/// nonzero column, lexicographically first completion to an invertible Y.
fn solve_deterministic<K: GaloisCoeff>(c: &Cocycle<K>) -> Mat<K> {
    let d = c.dim();
    let proto = c.proto();

    // First basis λ whose Π_C(λI) has a nonzero first column; one exists
    // because distinct automorphisms are linearly independent over E.
    let mut x: Option<ColVec<K>> = None;
    for lam in proto.scan_basis() {
        let mut col = vec![proto.zero_like(); d];
        for (aut, mat) in c.iter() {
            let w = lam.apply(aut);
            for (r, entry) in col.iter_mut().enumerate() {
                *entry = entry.add(&mat.at(r, 0).mul(&w));
            }
        }
        let cand = ColVec::new(col);
        if !cand.is_zero() {
            x = Some(cand);
            break;
        }
    }
    let x = x.expect("some basis element yields a nonzero fixed column");

    if d == 1 {
        return Mat::from_rows(vec![vec![x.entries[0].clone()]]);
    }

    // Lexicographically first completion of x to an invertible Y.
    let mut cols: Vec<Vec<K>> = vec![x.entries.clone()];
    for j in 0..d {
        if cols.len() == d {
            break;
        }
        let mut e = vec![proto.zero_like(); d];
        e[j] = proto.one_like();
        cols.push(e);
        if Mat::from_rows(cols.clone()).rank() < cols.len() {
            cols.pop();
        }
    }
    assert_eq!(cols.len(), d, "standard vectors complete any nonzero column");
    let y = Mat::from_fn(d, |r, cidx| cols[cidx][r].clone());
    let y_inv = y.invert().expect("completion is invertible");

    // Transport by Y: every B_α = Y⁻¹·C_α·α(Y) fixes e₁, so its first column
    // is e₁ and the lower-right block is a (d−1)-dimensional cocycle.
    let mut sub_assignment = Vec::new();
    for g in &c.pres.gens {
        let cg = c.lookup(g).expect("generator");
        let b = y_inv.mul(&cg.mul(&apply_aut_mat(g, &y)));
        let block = Mat::from_fn(d - 1, |r, cidx| b.at(r + 1, cidx + 1).clone());
        sub_assignment.push(block);
    }
    let sub = Cocycle::validate_and_close(c.pres.clone(), sub_assignment)
        .expect("transported block inherits the cocycle identity");
    let a_sub = solve_deterministic(&sub);
    let a_sub_inv = a_sub.invert().expect("inductive solution invertible");

    // With Z = diag(1, A'), the residue C''_α = Z⁻¹·Y⁻¹·C_α·α(YZ) is
    // unitriangular with top row (1, z_α); z is an additive cocycle, solved
    // by the trace-weighted average w = Σ_β z_β·β(θ), Tr(θ) = 1.
    let embed = |m: &Mat<K>| {
        Mat::from_fn(d, |r, cidx| {
            if r == 0 && cidx == 0 {
                proto.one_like()
            } else if r == 0 || cidx == 0 {
                proto.zero_like()
            } else {
                m.at(r - 1, cidx - 1).clone()
            }
        })
    };
    let z_full = embed(&a_sub);
    let z_full_inv = embed(&a_sub_inv);
    let theta = group_trace_one(c);
    let mut w_row = vec![proto.zero_like(); d - 1];
    for (aut, mat) in c.iter() {
        let residue = z_full_inv.mul(&y_inv.mul(&mat.mul(&apply_aut_mat(aut, &y.mul(&z_full)))));
        let th = theta.apply(aut);
        for (j, w) in w_row.iter_mut().enumerate() {
            *w = w.add(&residue.at(0, j + 1).mul(&th));
        }
    }
    let corr = Mat::from_fn(d, |r, cidx| {
        if r == cidx {
            proto.one_like()
        } else if r == 0 {
            w_row[cidx - 1].clone()
        } else {
            proto.zero_like()
        }
    });
    y.mul(&z_full).mul(&corr)
}

// ---------------------------------------------------------------------------
// additive Hilbert 90
// ---------------------------------------------------------------------------

/// Solve z_α = w − α(w) for row vectors, given an additive cocycle
/// z_{αβ} = z_α + α(z_β) specified on the presentation's generators.
///
/// The solution is the trace-weighted average w = Σ_{β∈G} z_β·β(θ) with
/// Tr(θ) = 1, which works in every characteristic because the group trace is
/// surjective onto the fixed field.
pub fn solve_h90_additive<K: GaloisCoeff>(
    pres: &Presentation<K::Aut>,
    assignment: &[Vec<K>],
    proto: &K,
) -> Result<Vec<K>> {
    if assignment.len() != pres.gens.len() || assignment.is_empty() {
        return Err(Error::BadParameters(
            "one row vector per generator required".into(),
        ));
    }
    let width = assignment[0].len();
    if width == 0 || assignment.iter().any(|z| z.len() != width) {
        return Err(Error::BadParameters("row vectors of mixed width".into()));
    }
    let elements = validate_presentation(pres, proto)?;

    let add_rows = |a: &[K], b: &[K]| -> Vec<K> { a.iter().zip(b).map(|(x, y)| x.add(y)).collect() };
    let apply_row = |aut: &K::Aut, a: &[K]| -> Vec<K> { a.iter().map(|x| x.apply(aut)).collect() };

    // Power relations: Σ_{i<m} g^i(z_g) = 0.
    for (k, (g, &m)) in pres.gens.iter().zip(&pres.orders).enumerate() {
        let mut acc = vec![proto.zero_like(); width];
        let mut aut = proto.aut_identity();
        for _ in 0..m {
            acc = add_rows(&acc, &apply_row(&aut, &assignment[k]));
            aut = proto.aut_compose(&aut, g);
        }
        if acc.iter().any(|e| !e.is_zero()) {
            return Err(Error::NotAdditiveCocycle(format!("g{k}^{m} = 1")));
        }
    }
    // Commutators: z_a + a(z_b) = z_b + b(z_a).
    for i in 0..pres.gens.len() {
        for j in i + 1..pres.gens.len() {
            let lhs = add_rows(&assignment[i], &apply_row(&pres.gens[i], &assignment[j]));
            let rhs = add_rows(&assignment[j], &apply_row(&pres.gens[j], &assignment[i]));
            if lhs != rhs {
                return Err(Error::NotAdditiveCocycle(format!("[g{j}, g{i}] = 1")));
            }
        }
    }

    // Close additively over the group and average against a trace-one θ.
    let mut theta = None;
    for b in proto.scan_basis() {
        let mut t = proto.zero_like();
        for (_, aut) in &elements {
            t = t.add(&b.apply(aut));
        }
        if !t.is_zero() {
            theta = Some(t.inv()?.mul(&b));
            break;
        }
    }
    let theta = theta.expect("group trace is surjective");

    let mut pow_tables: Vec<Vec<Vec<K>>> = Vec::new();
    for (k, &m) in pres.orders.iter().enumerate() {
        let mut tab = vec![vec![proto.zero_like(); width]];
        let mut aut = proto.aut_identity();
        for _ in 1..m {
            let next = add_rows(tab.last().unwrap(), &apply_row(&aut, &assignment[k]));
            tab.push(next);
            aut = proto.aut_compose(&aut, &pres.gens[k]);
        }
        pow_tables.push(tab);
    }
    let mut w = vec![proto.zero_like(); width];
    for (exps, aut) in &elements {
        let mut z = vec![proto.zero_like(); width];
        let mut prefix = proto.aut_identity();
        for (k, &e) in exps.iter().enumerate() {
            z = add_rows(&z, &apply_row(&prefix, &pow_tables[k][e as usize]));
            for _ in 0..e {
                prefix = proto.aut_compose(&prefix, &pres.gens[k]);
            }
        }
        let th = theta.apply(aut);
        for (acc, zi) in w.iter_mut().zip(&z) {
            *acc = acc.add(&zi.mul(&th));
        }
    }
    // Verify z_g = w − g(w) on every generator before returning.
    for (k, g) in pres.gens.iter().enumerate() {
        let diff: Vec<K> = w
            .iter()
            .zip(apply_row(g, &w))
            .map(|(a, b)| a.sub(&b))
            .collect();
        if diff != assignment[k] {
            return Err(Error::NotAdditiveCocycle(format!(
                "verification failed on generator {k}"
            )));
        }
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// counterexample builder: singular scalar candidates when |F| < d
// ---------------------------------------------------------------------------

/// Build an upper-triangular coboundary cocycle over E/F for which Π_C(λI)
/// is singular for every scalar λ. Possible exactly when |F| < d, because E
/// is then a union of |F| + 1 trace-form kernels, one per diagonal entry.
pub fn scalar_singular_cocycle(ctx: &FieldCtx, d: usize) -> Result<Cocycle<FieldElem>> {
    let q = ctx.q();
    if q >= d as u128 {
        return Err(Error::PreconditionViolated(format!(
            "|F| = {q} must be smaller than d = {d}"
        )));
    }
    let m = ctx.group_order() as usize;
    if m < 2 {
        return Err(Error::PreconditionViolated(
            "extension degree [E:F] must be at least 2".into(),
        ));
    }
    let p = ctx.p();

    // Greedy F-basis b_1..b_m of E out of the power basis.
    let f_basis = subfield_basis(ctx);
    let f_dim = |set: &[FieldElem]| -> usize {
        let vecs: Vec<Vec<FieldElem>> = set
            .iter()
            .flat_map(|b| f_basis.iter().map(move |f| vec![f.mul_ref(b)]))
            .collect();
        crate::fftower::gf_p_rank(&vecs, p) / ctx.d0()
    };
    let mut basis: Vec<FieldElem> = Vec::new();
    for cand in ctx.span_basis() {
        if basis.len() == m {
            break;
        }
        basis.push(cand);
        if f_dim(&basis) < basis.len() {
            basis.pop();
        }
    }
    assert_eq!(basis.len(), m);

    // The |F| + 1 covering hyperplanes in these coordinates: x₁ = 0 and
    // c·x₁ + x₂ = 0 for c ∈ F.
    let mut subfield_elems: Vec<FieldElem> = Vec::new();
    for t in exponent_tuples(&vec![p; f_basis.len()]) {
        let mut acc = ctx.zero();
        for (c, f) in t.iter().zip(&f_basis) {
            acc = acc.add_ref(&ctx.integer(*c as i64).mul_ref(f));
        }
        subfield_elems.push(acc);
    }
    let mut hyperplanes: Vec<Vec<FieldElem>> = Vec::new();
    hyperplanes.push(basis[1..].to_vec());
    for cf in &subfield_elems {
        let mut h = vec![basis[0].sub_ref(&cf.mul_ref(&basis[1]))];
        h.extend_from_slice(&basis[2..]);
        hyperplanes.push(h);
    }

    // Dual vector of each hyperplane under the (nondegenerate) trace form:
    // a ≠ 0 with Tr(a·h) = 0 across the hyperplane's basis.
    let n = ctx.n();
    let power_basis = ctx.span_basis();
    let mut diag: Vec<FieldElem> = Vec::new();
    for h in hyperplanes.iter().take(d) {
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for hj in h {
            for t in 0..n {
                let row: Vec<u64> = power_basis
                    .iter()
                    .map(|xi| trace_full(&xi.mul_ref(hj)).coeffs()[t])
                    .collect();
                rows.push(row);
            }
        }
        let null = crate::fftower::gf_p_nullspace(&rows, p);
        let a = ctx.from_coeffs(&null[0])?;
        debug_assert!(!a.is_zero());
        diag.push(a.inverse()?);
    }
    while diag.len() < d {
        diag.push(diag[0].clone());
    }

    let a_mat = Mat::from_fn(d, |r, c| if r == c { diag[r].clone() } else { ctx.zero() });
    Cocycle::coboundary(full_cyclic(ctx), &a_mat)
}

// ---------------------------------------------------------------------------
// coset evaluation of Π_C
// ---------------------------------------------------------------------------

/// Evaluate Π_C(X) through a chain of subgroups |G| = c₀ > c₁ > … > 1 of the
/// cyclic group G, nesting the coset sums. Returns the value (always equal to
/// the direct sum) and the number of group-element applications performed,
/// which is Σ cᵢ₋₁/cᵢ instead of |G|.
pub fn coset_pi<K: GaloisCoeff>(
    c: &Cocycle<K>,
    chain: &[u64],
    x: &Mat<K>,
) -> Result<(Mat<K>, usize)> {
    let n = c.group_size() as u64;
    if chain.first() != Some(&n) || chain.last() != Some(&1) {
        return Err(Error::InvalidChain(format!(
            "chain must run from |G| = {n} down to 1"
        )));
    }
    for w in chain.windows(2) {
        if w[1] == 0 || w[1] >= w[0] || w[0] % w[1] != 0 {
            return Err(Error::InvalidChain(format!(
                "{} does not properly divide {}",
                w[1], w[0]
            )));
        }
    }
    let proto = c.proto().clone();
    let gen = c
        .iter()
        .map(|(aut, _)| aut.clone())
        .find(|aut| proto.aut_order(aut) == n)
        .ok_or_else(|| Error::InvalidChain("group is not cyclic".into()))?;
    let aut_pow = |k: u64| -> K::Aut {
        let mut aut = proto.aut_identity();
        for _ in 0..k {
            aut = proto.aut_compose(&aut, &gen);
        }
        aut
    };
    let mut ops = 0usize;
    let mut acc = x.clone();
    // Innermost level first: the sum over the trivial subgroup is X itself.
    for w in chain.windows(2).rev() {
        let (outer, inner) = (w[0], w[1]);
        let reps = outer / inner;
        let step = n / outer;
        let mut level = Mat::zero(c.dim(), &proto);
        for j in 0..reps {
            let aut = aut_pow(step * j);
            let cm = c.lookup(&aut).expect("cyclic closure");
            level = level.add(&cm.mul(&apply_aut_mat(&aut, &acc)));
            ops += 1;
        }
        acc = level;
    }
    Ok((acc, ops))
}
