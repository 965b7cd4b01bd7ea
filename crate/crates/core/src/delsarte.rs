//! The extremal problem `𝒟(W,Q)` as a linear program over Fourier coefficients.
//!
//! A real positive definite `f` with spectrum in `Q` has `f̂ ≥ 0` and
//! `f̂(χ̄) = f̂(χ)`, so it is a nonnegative combination of the real functions
//! `χ + χ̄` (and `χ` for real characters) over conjugation orbits of
//! `Q ∩ conj(Q)`. With coefficients `a_o = f̂(χ)/|G|` the problem becomes
//!
//! ```text
//! maximize   |G| · a_trivial
//! subject to Σ_o |o| · a_o = 1                 (f(0) = 1)
//!            Σ_o a_o · basis_o(g) ≤ 0   for g ∉ W
//!            a ≥ 0
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fourier::{dft, FunctionOnG};
use crate::group::{CharacterTable, DualElement, GroupElement, GroupSpec};
use crate::posdef::is_positive_definite;
use crate::simplex::{simplex_solve, LinearProgram, LpOutcome, Relation, SimplexOptions};
use crate::vertex::best_vertex;

/// Groups up to this size get an exact rational re-check of the optimum.
pub const EXACT_RECHECK_MAX_SIZE: usize = 64;

/// A triple `(G, W, Q)` with `0 ∈ W`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelsarteInstance {
    group: GroupSpec,
    w: Vec<GroupElement>,
    q: Vec<DualElement>,
    w_mask: Vec<bool>,
    q_mask: Vec<bool>,
}

impl DelsarteInstance {
    pub fn new(group: &GroupSpec, w: &[GroupElement], q: &[DualElement]) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptySet("W"));
        }
        if q.is_empty() {
            return Err(Error::EmptySet("Q"));
        }
        let mut w_mask = vec![false; group.size()];
        for x in w {
            w_mask[group.index_of(x)?] = true;
        }
        if !w_mask[0] {
            return Err(Error::ZeroNotInW);
        }
        let mut q_mask = vec![false; group.size()];
        for y in q {
            q_mask[group.char_index_of(y)?] = true;
        }
        let w = (0..group.size()).filter(|&i| w_mask[i]).map(|i| group.element_at(i)).collect();
        let q = (0..group.size()).filter(|&i| q_mask[i]).map(|i| group.character_at(i)).collect();
        Ok(Self { group: group.clone(), w, q, w_mask, q_mask })
    }

    /// Instance with `Q = Ĝ`.
    pub fn with_full_dual(group: &GroupSpec, w: &[GroupElement]) -> Result<Self> {
        let q: Vec<_> = group.characters().collect();
        Self::new(group, w, &q)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `W`, sorted by enumeration index.
    pub fn w(&self) -> &[GroupElement] {
        &self.w
    }

    /// `Q`, sorted by enumeration index.
    pub fn q(&self) -> &[DualElement] {
        &self.q
    }

    pub(crate) fn in_q(&self, i: usize) -> bool {
        self.q_mask[i]
    }

    /// Enumeration indices of `G \ W`.
    pub fn off_w_indices(&self) -> Vec<usize> {
        (0..self.group.size()).filter(|&i| !self.w_mask[i]).collect()
    }

    /// Whether `Q` is closed under conjugation.
    pub fn q_is_symmetric(&self) -> bool {
        (0..self.group.size()).all(|i| !self.q_mask[i] || self.q_mask[self.group.neg_index(i)])
    }
}

/// A conjugation orbit `{χ, χ̄}` (or `{χ}` for a real character).
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub members: Vec<DualElement>,
}

impl Orbit {
    pub fn weight_at_zero(&self) -> f64 {
        self.members.len() as f64
    }

    pub fn representative(&self) -> &DualElement {
        &self.members[0]
    }
}

/// Real basis functions for the symmetrized support `Q_eff = Q ∩ conj(Q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitBasis {
    spec: GroupSpec,
    orbits: Vec<Orbit>,
    values: Vec<Vec<f64>>,
    trivial: Option<usize>,
    dropped: Vec<DualElement>,
}

impl OrbitBasis {
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// `basis_o(g)` by element index.
    pub fn value(&self, orbit: usize, g: usize) -> f64 {
        self.values[orbit][g]
    }

    pub fn has_trivial(&self) -> bool {
        self.trivial.is_some()
    }

    /// Position of the orbit of the trivial character, if present.
    pub fn trivial_orbit(&self) -> Option<usize> {
        self.trivial
    }

    /// Members of `Q` whose conjugate is missing from `Q`.
    pub fn dropped(&self) -> &[DualElement] {
        &self.dropped
    }

    /// `Σ_o a_o basis_o`, summed in orbit order (so the result is exactly even).
    pub fn combine(&self, coeffs: &[f64]) -> FunctionOnG {
        let values = (0..self.spec.size())
            .map(|g| coeffs.iter().enumerate().map(|(o, a)| a * self.values[o][g]).sum())
            .collect();
        FunctionOnG::new(&self.spec, values).expect("finite coefficients")
    }
}

/// Orbits of conjugation on `Q ∩ conj(Q)`, ordered by their least character index.
pub fn build_orbit_basis(spec: &GroupSpec, q: &[DualElement]) -> Result<OrbitBasis> {
    let mut mask = vec![false; spec.size()];
    for y in q {
        mask[spec.char_index_of(y)?] = true;
    }
    let table = CharacterTable::new(spec);
    let mut seen = vec![false; spec.size()];
    let (mut orbits, mut values, mut dropped) = (Vec::new(), Vec::new(), Vec::new());
    let mut trivial = None;
    for y in 0..spec.size() {
        if !mask[y] || seen[y] {
            continue;
        }
        let c = spec.neg_index(y);
        if !mask[c] {
            dropped.push(spec.character_at(y));
            continue;
        }
        seen[y] = true;
        seen[c] = true;
        let indices = if c == y { vec![y] } else { vec![y, c] };
        let weight = indices.len() as f64;
        if y == 0 {
            trivial = Some(orbits.len());
        }
        // χ(g) + χ̄(g) = 2 Re χ(g); a real character is its own cosine
        values.push((0..spec.size()).map(|g| weight * table.cos(y, g)).collect());
        orbits.push(Orbit { members: indices.iter().map(|&i| spec.character_at(i)).collect() });
    }
    if orbits.is_empty() {
        return Err(Error::EmptyEffectiveSupport);
    }
    Ok(OrbitBasis { spec: spec.clone(), orbits, values, trivial, dropped })
}

/// The LP for an instance together with the data needed to interpret it.
#[derive(Debug, Clone)]
pub struct DelsarteLp {
    pub lp: LinearProgram,
    pub basis: OrbitBasis,
    /// Element index of each inequality row (row `k + 1` of `lp`).
    pub off_w: Vec<usize>,
}

/// Row 0 is the normalization `f(0) = 1`; rows `1..` are `f(g) ≤ 0` for `g ∉ W`.
pub fn build_lp(inst: &DelsarteInstance) -> Result<DelsarteLp> {
    let basis = build_orbit_basis(&inst.group, &inst.q)?;
    let n = inst.group.size() as f64;
    let objective = (0..basis.len()).map(|o| if Some(o) == basis.trivial { n } else { 0.0 }).collect();
    let mut lp = LinearProgram::new(objective);
    lp.add(basis.orbits.iter().map(Orbit::weight_at_zero).collect(), Relation::Eq, 1.0);
    let off_w = inst.off_w_indices();
    for &g in &off_w {
        lp.add((0..basis.len()).map(|o| basis.values[o][g]).collect(), Relation::Le, 0.0);
    }
    Ok(DelsarteLp { lp, basis, off_w })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Simplex pivot tolerance.
    pub pivot: f64,
    /// Membership tolerance used when checking the extremal function.
    pub feasibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { pivot: 1e-9, feasibility: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
}

/// Result of checking `f ∈ 𝒢(W,Q)`, condition by condition.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub tol: f64,
    pub min_spectrum: f64,
    pub max_imag: f64,
    pub positive_definite: bool,
    /// `|f(0) - 1|`.
    pub normalization_error: f64,
    pub normalized: bool,
    /// `max_{g ∉ W} f_+(g)`.
    pub max_positive_off_w: f64,
    pub support_in_w: bool,
    /// `max_{χ ∉ Q} |f̂(χ)|`.
    pub max_spectrum_off_q: f64,
    pub spectrum_in_q: bool,
    pub is_member: bool,
}

/// Checks the four defining conditions of `𝒢(W,Q)` at tolerance `tol`.
pub fn feasibility_check(f: &FunctionOnG, inst: &DelsarteInstance, tol: f64) -> Result<MembershipReport> {
    if f.spec() != &inst.group {
        return Err(Error::GroupMismatch("function and instance live on different groups".into()));
    }
    let pd = is_positive_definite(f, tol);
    let normalization_error = (f.at_zero() - 1.0).abs();
    let max_positive_off_w = inst.off_w_indices().into_iter().map(|g| f.values()[g].max(0.0)).fold(0.0, f64::max);
    let spectrum = dft(f);
    let max_spectrum_off_q =
        (0..inst.group.size()).filter(|&y| !inst.in_q(y)).map(|y| spectrum.values()[y].norm()).fold(0.0, f64::max);
    let normalized = normalization_error <= tol;
    let support_in_w = max_positive_off_w <= tol;
    let spectrum_in_q = max_spectrum_off_q <= tol;
    Ok(MembershipReport {
        tol,
        min_spectrum: pd.min_spectrum,
        max_imag: pd.max_imag,
        positive_definite: pd.is_posdef,
        normalization_error,
        normalized,
        max_positive_off_w,
        support_in_w,
        max_spectrum_off_q,
        spectrum_in_q,
        is_member: pd.is_posdef && normalized && support_in_w && spectrum_in_q,
    })
}

/// LP dual solution: `y` for `f(0) = 1` and `z_g ≥ 0` for each `f(g) ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub eq_multiplier: f64,
    pub off_w: Vec<GroupElement>,
    pub ineq_multipliers: Vec<f64>,
    /// `y · 1`: every member of the class has `Σ f ≤` this bound when the
    /// certificate is dual feasible.
    pub certified_upper_bound: f64,
}

/// Residuals of the optimum recomputed in exact rational arithmetic on the
/// (floating-point) LP data.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecheck {
    pub eq_residual: f64,
    pub max_row_value: f64,
    pub min_coeff: f64,
    pub min_reduced_cost: f64,
    pub min_multiplier: f64,
    pub gap: f64,
    pub max_complementarity: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelsarteSolution {
    pub status: SolveStatus,
    /// `|G| · a_trivial`, which is `Σ_g f(g)` for the extremal `f`.
    pub value: Option<f64>,
    pub f: Option<FunctionOnG>,
    pub basis: Option<OrbitBasis>,
    /// `a_o ≥ 0` per orbit of `basis`.
    pub fourier_coeffs: Vec<f64>,
    pub dual: Option<DualCertificate>,
    pub residuals: Option<MembershipReport>,
    pub exact: Option<ExactRecheck>,
    pub message: Option<String>,
}

impl DelsarteSolution {
    pub(crate) fn failed(status: SolveStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            value: None,
            f: None,
            basis: None,
            fourier_coeffs: Vec::new(),
            dual: None,
            residuals: None,
            exact: None,
            message: Some(message.into()),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Computes `𝒟(W,Q)` and an extremal function.
pub fn solve_delsarte(inst: &DelsarteInstance, tol: &Tolerances) -> DelsarteSolution {
    let prepared = match build_lp(inst) {
        Ok(p) => p,
        Err(Error::EmptyEffectiveSupport) => {
            return DelsarteSolution::failed(SolveStatus::Infeasible, "Q ∩ conj(Q) is empty")
        }
        Err(e) => return DelsarteSolution::failed(SolveStatus::NumericalFailure, e.to_string()),
    };
    let opts = SimplexOptions { pivot_tol: tol.pivot, ..Default::default() };
    let lp_sol = match simplex_solve(&prepared.lp, &opts) {
        Ok(LpOutcome::Optimal(s)) => s,
        Ok(LpOutcome::Infeasible) => {
            return DelsarteSolution::failed(SolveStatus::Infeasible, "no positive definite f meets the constraints")
        }
        Ok(LpOutcome::Unbounded) => {
            return DelsarteSolution::failed(SolveStatus::NumericalFailure, "LP reported unbounded")
        }
        Err(e) => return DelsarteSolution::failed(SolveStatus::NumericalFailure, e.to_string()),
    };

    let DelsarteLp { lp, basis, off_w } = prepared;
    let coeffs = lp_sol.x;
    let f = basis.combine(&coeffs);
    // |G| a_trivial: equal to Σ f up to rounding, and exactly 0 without the trivial orbit
    let value: f64 = lp.objective.iter().zip(&coeffs).map(|(c, a)| c * a).sum();
    let g = &inst.group;
    let dual = DualCertificate {
        eq_multiplier: lp_sol.duals[0],
        off_w: off_w.iter().map(|&i| g.element_at(i)).collect(),
        ineq_multipliers: lp_sol.duals[1..].iter().map(|z| z.max(0.0)).collect(),
        certified_upper_bound: lp_sol.duals[0],
    };
    let residuals = match feasibility_check(&f, inst, tol.feasibility) {
        Ok(r) => r,
        Err(e) => return DelsarteSolution::failed(SolveStatus::NumericalFailure, e.to_string()),
    };
    let exact = (g.size() <= EXACT_RECHECK_MAX_SIZE).then(|| exact_recheck(&lp, &coeffs, &dual, value));

    let mut status = SolveStatus::Optimal;
    let mut message = None;
    if !residuals.is_member {
        status = SolveStatus::NumericalFailure;
        message = Some("extremal candidate failed the membership check".to_string());
    } else if exact.as_ref().is_some_and(|e| !e.passed) {
        status = SolveStatus::NumericalFailure;
        message = Some("exact re-check of the optimal basis failed".to_string());
    }
    DelsarteSolution {
        status,
        value: Some(value),
        f: Some(f),
        basis: Some(basis),
        fourier_coeffs: coeffs,
        dual: Some(dual),
        residuals: Some(residuals),
        exact,
        message,
    }
}

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn exact_recheck(lp: &LinearProgram, a: &[f64], dual: &DualCertificate, value: f64) -> ExactRecheck {
    let a: Vec<BigRational> = a.iter().map(|&v| rational(v)).collect();
    let y = rational(dual.eq_multiplier);
    let z: Vec<BigRational> = dual.ineq_multipliers.iter().map(|&v| rational(v)).collect();
    let rows: Vec<Vec<BigRational>> =
        lp.constraints.iter().map(|c| c.coeffs.iter().map(|&v| rational(v)).collect()).collect();
    let c: Vec<BigRational> = lp.objective.iter().map(|&v| rational(v)).collect();
    let dot = |r: &[BigRational], x: &[BigRational]| -> BigRational {
        r.iter().zip(x).fold(BigRational::zero(), |s, (p, q)| s + p * q)
    };

    let one = BigRational::from_integer(BigInt::from(1));
    let eq_residual = (dot(&rows[0], &a) - &one).abs();
    let row_values: Vec<BigRational> = rows[1..].iter().map(|r| dot(r, &a)).collect();
    let max_row_value = row_values.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let min_coeff = a.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let reduced: Vec<BigRational> = (0..a.len())
        .map(|o| {
            let mut s = &y * &rows[0][o] - &c[o];
            for (k, zk) in z.iter().enumerate() {
                s += zk * &rows[k + 1][o];
            }
            s
        })
        .collect();
    let min_reduced_cost = reduced.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let min_multiplier = z.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let primal = dot(&c, &a);
    let gap = &y - &primal;
    let comp = a
        .iter()
        .zip(&reduced)
        .map(|(x, r)| (x * r).abs())
        .chain(z.iter().zip(&row_values).map(|(zk, rv)| (zk * rv).abs()))
        .max()
        .unwrap_or_else(BigRational::zero);

    let tol = 1e-9 * (1.0 + value.abs());
    let r = ExactRecheck {
        eq_residual: to_f64(&eq_residual),
        max_row_value: to_f64(&max_row_value),
        min_coeff: to_f64(&min_coeff),
        min_reduced_cost: to_f64(&min_reduced_cost),
        min_multiplier: to_f64(&min_multiplier),
        gap: to_f64(&gap),
        max_complementarity: to_f64(&comp),
        passed: false,
    };
    let passed = r.eq_residual <= tol
        && r.max_row_value <= tol
        && r.min_coeff >= -tol
        && r.min_reduced_cost >= -tol
        && r.min_multiplier >= -tol
        && r.gap.abs() <= tol
        && r.max_complementarity <= tol;
    ExactRecheck { passed, ..r }
}

/// Outcome of the independent checks performed by [`verify_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub tol: f64,
    /// Most negative reduced cost `y·|o| + Σ z_g basis_o(g) - c_o` (or multiplier).
    pub max_dual_violation: f64,
    pub dual_feasible: bool,
    /// `certified_upper_bound - value`.
    pub gap: f64,
    pub gap_ok: bool,
    pub max_complementarity: f64,
    pub complementary: bool,
    pub ok: bool,
}

/// Rebuilds the LP data from the instance and checks the certificate against
/// the reported primal value: dual feasibility, duality gap and
/// complementary slackness, each at `1e-7`.
pub fn verify_certificate(sol: &DelsarteSolution, inst: &DelsarteInstance) -> Result<CertificateReport> {
    if !sol.is_optimal() {
        return Err(Error::NotOptimal);
    }
    let (Some(dual), Some(value)) = (&sol.dual, sol.value) else {
        return Err(Error::Precondition("solution carries no certificate".into()));
    };
    let data = build_lp(inst)?;
    if data.basis.len() != sol.fourier_coeffs.len() || data.off_w.len() != dual.ineq_multipliers.len() {
        return Err(Error::GroupMismatch("certificate does not match the instance".into()));
    }
    let tol = 1e-7;
    let a = &sol.fourier_coeffs;
    let z = &dual.ineq_multipliers;
    let mut violation: f64 = z.iter().fold(0.0, |m, &v| m.max(-v));
    let mut comp: f64 = 0.0;
    for o in 0..a.len() {
        let mut s = dual.eq_multiplier * data.lp.constraints[0].coeffs[o] - data.lp.objective[o];
        for (k, zk) in z.iter().enumerate() {
            s += zk * data.lp.constraints[k + 1].coeffs[o];
        }
        violation = violation.max(-s);
        comp = comp.max((a[o] * s).abs());
    }
    for (k, zk) in z.iter().enumerate() {
        let row: f64 = data.lp.constraints[k + 1].coeffs.iter().zip(a).map(|(p, q)| p * q).sum();
        comp = comp.max((zk * row).abs());
    }
    let gap = dual.certified_upper_bound - value;
    let dual_feasible = violation <= tol;
    let gap_ok = gap.abs() <= tol * (1.0 + value.abs());
    let complementary = comp <= tol;
    Ok(CertificateReport {
        tol,
        max_dual_violation: violation,
        dual_feasible,
        gap,
        gap_ok,
        max_complementarity: comp,
        complementary,
        ok: dual_feasible && gap_ok && complementary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleOutcome {
    Optimal(f64),
    Infeasible,
}

impl OracleOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            OracleOutcome::Optimal(v) => Some(*v),
            OracleOutcome::Infeasible => None,
        }
    }
}

pub const ORACLE_MAX_ORBITS: usize = 8;
pub const ORACLE_MAX_ROWS: usize = 24;

/// `𝒟(W,Q)` by enumerating every basic solution of the Fourier-side LP.
///
/// The constraint data is assembled here directly from character values,
/// independently of [`build_orbit_basis`] and [`build_lp`].
pub fn vertex_enum_oracle(inst: &DelsarteInstance) -> Result<OracleOutcome> {
    let g = &inst.group;
    let size = g.size();
    let mut reps: Vec<(DualElement, usize)> = Vec::new();
    let mut taken = vec![false; size];
    for y in inst.q() {
        let yi = g.char_index_of(y)?;
        let conj = g.conj_character(y)?;
        let ci = g.char_index_of(&conj)?;
        if taken[yi] || !inst.in_q(ci) {
            continue;
        }
        taken[yi] = true;
        taken[ci] = true;
        reps.push((y.clone(), if yi == ci { 1 } else { 2 }));
    }
    let off_w: Vec<GroupElement> = g.elements().filter(|x| !inst.w().contains(x)).collect();
    if reps.len() > ORACLE_MAX_ORBITS || off_w.len() + 1 > ORACLE_MAX_ROWS {
        return Err(Error::OracleTooLarge(format!(
            "{} orbits, {} rows (limits {ORACLE_MAX_ORBITS}, {ORACLE_MAX_ROWS})",
            reps.len(),
            off_w.len() + 1
        )));
    }
    if reps.is_empty() {
        return Ok(OracleOutcome::Infeasible);
    }
    let trivial = g.trivial_character();
    let c: Vec<f64> = reps.iter().map(|(y, _)| if *y == trivial { size as f64 } else { 0.0 }).collect();
    let eq = vec![reps.iter().map(|&(_, m)| m as f64).collect::<Vec<_>>()];
    let mut le = Vec::with_capacity(off_w.len());
    for x in &off_w {
        let mut row = Vec::with_capacity(reps.len());
        for (y, m) in &reps {
            row.push(*m as f64 * g.char_eval(y, x)?.re);
        }
        le.push(row);
    }
    let zeros = vec![0.0; le.len()];
    Ok(match best_vertex(&c, &eq, &[1.0], &le, &zeros, 1e-9) {
        Some((v, _)) => OracleOutcome::Optimal(v),
        None => OracleOutcome::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn z(n: i64) -> GroupSpec {
        GroupSpec::new(&[n]).unwrap()
    }

    fn els(g: &GroupSpec, xs: &[i64]) -> Vec<GroupElement> {
        xs.iter().map(|&x| g.element(&[x]).unwrap()).collect()
    }

    fn chars(g: &GroupSpec, ys: &[i64]) -> Vec<DualElement> {
        ys.iter().map(|&y| g.character(&[y]).unwrap()).collect()
    }

    fn interval(n: i64, k: i64) -> DelsarteInstance {
        let g = z(n);
        let w: Vec<i64> = (-k..=k).collect();
        DelsarteInstance::with_full_dual(&g, &els(&g, &w)).unwrap()
    }

    #[test]
    fn instance_validation() {
        let g = z(4);
        assert_eq!(DelsarteInstance::new(&g, &[], &chars(&g, &[0])).unwrap_err(), Error::EmptySet("W"));
        assert_eq!(DelsarteInstance::new(&g, &els(&g, &[1]), &chars(&g, &[0])).unwrap_err(), Error::ZeroNotInW);
        assert_eq!(DelsarteInstance::new(&g, &els(&g, &[0]), &[]).unwrap_err(), Error::EmptySet("Q"));
        let inst = DelsarteInstance::new(&g, &els(&g, &[1, 0, 3, 1]), &chars(&g, &[1])).unwrap();
        assert_eq!(inst.w(), els(&g, &[0, 1, 3]).as_slice());
        assert!(!inst.q_is_symmetric());
    }

    #[test]
    fn feasibility_examples() {
        let g = z(4);
        let inst = interval(4, 1);
        let f = FunctionOnG::new(&g, vec![1.0, 0.5, 0.0, 0.5]).unwrap();
        assert!(feasibility_check(&f, &inst, 1e-9).unwrap().is_member);

        let r = feasibility_check(&FunctionOnG::new(&g, vec![1.0; 4]).unwrap(), &inst, 1e-9).unwrap();
        assert!(!r.is_member && !r.support_in_w && r.positive_definite);
        assert_eq!(r.max_positive_off_w, 1.0);

        let r = feasibility_check(&FunctionOnG::new(&g, vec![1.0, 0.9, 0.0, 0.9]).unwrap(), &inst, 1e-9).unwrap();
        assert!(!r.is_member && !r.positive_definite);

        let narrow = DelsarteInstance::new(&g, &els(&g, &[0, 1, 3]), &chars(&g, &[0, 1, 3])).unwrap();
        let r = feasibility_check(&FunctionOnG::new(&g, vec![1.0, 0.5, 0.0, 0.5]).unwrap(), &narrow, 1e-9).unwrap();
        assert!(r.spectrum_in_q, "f̂(2) = 0, so Q = {{0,1,3}} is enough");
    }

    #[test]
    fn orbit_basis_examples() {
        let g = z(4);
        let b = build_orbit_basis(&g, &g.characters().collect::<Vec<_>>()).unwrap();
        let members: Vec<Vec<DualElement>> = b.orbits().iter().map(|o| o.members.clone()).collect();
        assert_eq!(members, vec![chars(&g, &[0]), chars(&g, &[1, 3]), chars(&g, &[2])]);
        let weights: Vec<f64> = b.orbits().iter().map(Orbit::weight_at_zero).collect();
        assert_eq!(weights, vec![1.0, 2.0, 1.0]);
        for o in 0..b.len() {
            assert_eq!(b.value(o, 0), b.orbits()[o].weight_at_zero());
        }
        assert_eq!(build_orbit_basis(&g, &chars(&g, &[1])).unwrap_err(), Error::EmptyEffectiveSupport);
        let z2 = z(2);
        let b = build_orbit_basis(&z2, &chars(&z2, &[0, 1])).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.orbits().iter().all(|o| o.members.len() == 1));
    }

    #[test]
    fn lp_shape() {
        let data = build_lp(&interval(4, 1)).unwrap();
        assert_eq!(data.lp.num_vars(), 3);
        assert_eq!(data.lp.count(Relation::Eq), 1);
        assert_eq!(data.lp.count(Relation::Le), 1);
        assert_eq!(build_lp(&interval(5, 2)).unwrap().lp.count(Relation::Le), 0);

        let g = z(5);
        let inst = DelsarteInstance::new(&g, &els(&g, &[0, 1]), &chars(&g, &[0])).unwrap();
        let data = build_lp(&inst).unwrap();
        assert_eq!(data.lp.num_vars(), 1);
        assert_eq!(solve_delsarte(&inst, &Tolerances::default()).status, SolveStatus::Infeasible);
    }

    fn assert_value(inst: &DelsarteInstance, expected: f64) -> DelsarteSolution {
        let sol = solve_delsarte(inst, &Tolerances::default());
        assert_eq!(sol.status, SolveStatus::Optimal, "{:?}", sol.message);
        assert_abs_diff_eq!(sol.value.unwrap(), expected, epsilon = 1e-9);
        sol
    }

    #[test]
    fn golden_values() {
        let sol = assert_value(&interval(4, 1), 2.0);
        let f = sol.f.as_ref().unwrap();
        for (a, b) in f.values().iter().zip([1.0, 0.5, 0.0, 0.5]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        // the optimum on Z_6 is not unique; (1, 1/2, 0, 0, 0, 1/2) is one extremal function
        let inst = interval(6, 1);
        assert_value(&inst, 2.0);
        let f = FunctionOnG::new(inst.group(), vec![1.0, 0.5, 0.0, 0.0, 0.0, 0.5]).unwrap();
        assert!(feasibility_check(&f, &inst, 1e-9).unwrap().is_member);
        assert_abs_diff_eq!(f.integral(), 2.0, epsilon = 1e-12);
        for n in 1..9 {
            assert_value(&interval(n, 0), 1.0);
            let g = z(n);
            let all: Vec<_> = g.elements().collect();
            let sol = assert_value(&DelsarteInstance::with_full_dual(&g, &all).unwrap(), n as f64);
            assert!(sol.f.unwrap().values().iter().all(|&v| (v - 1.0).abs() < 1e-12));
        }
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let all: Vec<_> = g.elements().collect();
        assert_value(&DelsarteInstance::new(&g, &all, &[g.trivial_character()]).unwrap(), 6.0);
    }

    #[test]
    fn certificates_of_golden_instances() {
        let inst = interval(4, 1);
        let sol = solve_delsarte(&inst, &Tolerances::default());
        let rep = verify_certificate(&sol, &inst).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert!(rep.gap.abs() < 1e-9);
        assert!(sol.exact.as_ref().unwrap().passed);

        let g = z(5);
        let all: Vec<_> = g.elements().collect();
        let inst = DelsarteInstance::with_full_dual(&g, &all).unwrap();
        let sol = solve_delsarte(&inst, &Tolerances::default());
        assert!(sol.dual.as_ref().unwrap().ineq_multipliers.is_empty());
        assert!(verify_certificate(&sol, &inst).unwrap().ok);

        let inst = interval(4, 1);
        let mut tampered = solve_delsarte(&inst, &Tolerances::default());
        tampered.value = tampered.value.map(|v| v + 0.1);
        let rep = verify_certificate(&tampered, &inst).unwrap();
        assert!(!rep.gap_ok && !rep.ok);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(vertex_enum_oracle(&interval(4, 1)).unwrap(), OracleOutcome::Optimal(2.0));
        let v = vertex_enum_oracle(&interval(2, 0)).unwrap().value().unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        let v = vertex_enum_oracle(&interval(6, 1)).unwrap().value().unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-9);
        for n in 1..8 {
            let g = z(n);
            let all: Vec<_> = g.elements().collect();
            let v = vertex_enum_oracle(&DelsarteInstance::with_full_dual(&g, &all).unwrap()).unwrap();
            assert_abs_diff_eq!(v.value().unwrap(), n as f64, epsilon = 1e-9);
        }
        let g = z(5);
        let inst = DelsarteInstance::new(&g, &els(&g, &[0, 1]), &chars(&g, &[0])).unwrap();
        assert_eq!(vertex_enum_oracle(&inst).unwrap(), OracleOutcome::Infeasible);
        let big = interval(40, 1);
        assert!(matches!(vertex_enum_oracle(&big), Err(Error::OracleTooLarge(_))));
    }

    #[test]
    fn asymmetric_q_is_symmetrized() {
        let g = z(6);
        let inst = DelsarteInstance::new(&g, &els(&g, &[0, 1, 5]), &chars(&g, &[0, 1, 2, 5])).unwrap();
        let sol = solve_delsarte(&inst, &Tolerances::default());
        assert!(sol.is_optimal());
        assert_eq!(sol.basis.as_ref().unwrap().dropped(), chars(&g, &[2]).as_slice());
        let v = vertex_enum_oracle(&inst).unwrap().value().unwrap();
        assert_abs_diff_eq!(sol.value.unwrap(), v, epsilon = 1e-9);
    }

    #[test]
    fn extremal_function_is_exactly_even() {
        let g = GroupSpec::new(&[3, 5]).unwrap();
        let w: Vec<_> = [[0, 0], [0, 1], [0, 4], [1, 0], [2, 0]].iter().map(|c| g.element(c).unwrap()).collect();
        let sol = solve_delsarte(&DelsarteInstance::with_full_dual(&g, &w).unwrap(), &Tolerances::default());
        let f = sol.f.unwrap();
        assert_eq!(f, f.reflected());
    }
}
