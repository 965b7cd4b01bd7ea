//! Passing from `G` to the subgroup `G₀ = ⟨W⟩`.
//!
//! Functions on `G₀` extend by zero to `G`, and the spectrum of the extension
//! is `f̂₀(χ|_{G₀})`. Hence the extension of `f₀` lies in `𝒢(W,Q)_G` exactly
//! when `f₀ ∈ 𝒢(W,Q*)_{G₀}`, where `Q*` holds the characters of `G₀` all of
//! whose extensions lie in `Q`. Restricting `f ∈ 𝒢(W,Q)_G` to `G₀` lands in
//! `𝒢(W,Q₀)_{G₀}` with `Q₀` the image of `Q` under restriction, so
//!
//! ```text
//! 𝒟(W,Q*)_{G₀} ≤ 𝒟(W,Q)_G ≤ 𝒟(W,Q₀)_{G₀}
//! ```
//!
//! with equality throughout when `Q` is a union of restriction fibers
//! (`Q* = Q₀`). [`verify_equivalence`] measures both sides numerically.

use rand::Rng;

use crate::delsarte::{
    build_lp, feasibility_check, solve_delsarte, DelsarteInstance, DelsarteSolution, MembershipReport, SolveStatus,
    Tolerances,
};
use crate::error::{Error, Result};
use crate::fourier::FunctionOnG;
use crate::group::{DualElement, GroupElement, GroupSpec};
use crate::posdef::trivial_extension;
use crate::random::{random_posdef, random_posdef_with_spectrum, rng};
use crate::simplex::{simplex_solve, LinearProgram, LpOutcome, SimplexOptions};
use crate::subgroup::{generated_subgroup, Subgroup};

/// Absolute-plus-relative tolerance for comparing extremal values.
pub const VALUE_TOL: f64 = 1e-8;

/// Number of functions sampled per instance when testing the extension criterion.
pub const EXTENSION_SAMPLES: usize = 20;

/// Characters `γ` of `G₀` all of whose extensions to `G` lie in `Q`, in
/// canonical coordinates of `G₀`.
pub fn q_star(g0: &Subgroup, q: &[DualElement]) -> Result<Vec<DualElement>> {
    let parent = g0.parent();
    let mut in_q = vec![false; parent.size()];
    for y in q {
        in_q[parent.char_index_of(y)?] = true;
    }
    let c = g0.canonical_group();
    let mut out = Vec::new();
    for gamma in c.characters() {
        let ext = g0.character_extensions(&gamma)?;
        if ext.iter().all(|chi| in_q[parent.char_index_of(chi).expect("parent character")]) {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// Restrictions `χ|_{G₀}` of members of `Q`, deduplicated and sorted.
pub fn q_zero(g0: &Subgroup, q: &[DualElement]) -> Result<Vec<DualElement>> {
    let c = g0.canonical_group();
    let mut hit = vec![false; c.size()];
    for chi in q {
        hit[c.char_index_of(&g0.restrict_character(chi)?)?] = true;
    }
    Ok(c.characters().enumerate().filter(|&(i, _)| hit[i]).map(|(_, y)| y).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    pub original: DelsarteInstance,
    pub g0: Subgroup,
    /// `W` in canonical coordinates of `G₀`.
    pub w0: Vec<GroupElement>,
    pub q_star: Vec<DualElement>,
    pub q_zero: Vec<DualElement>,
    /// `(G₀, W, Q*)`, or `None` when `Q*` is empty (the class is then empty).
    pub reduced: Option<DelsarteInstance>,
}

impl ReducedInstance {
    /// `Q* = Q₀`, i.e. `Q` is a union of restriction fibers.
    pub fn is_fiber_saturated(&self) -> bool {
        self.q_star == self.q_zero
    }

    /// `(G₀, W, Q₀)`; never empty since `Q` is nonempty.
    pub fn upper_instance(&self) -> DelsarteInstance {
        DelsarteInstance::new(self.g0.canonical_group(), &self.w0, &self.q_zero).expect("Q₀ is nonempty")
    }
}

pub fn reduce_instance(inst: &DelsarteInstance) -> Result<ReducedInstance> {
    let g0 = generated_subgroup(inst.group(), inst.w())?;
    let w0 = inst.w().iter().map(|x| g0.iso_to_canonical(x)).collect::<Result<Vec<_>>>()?;
    let qs = q_star(&g0, inst.q())?;
    let q0 = q_zero(&g0, inst.q())?;
    let reduced = if qs.is_empty() { None } else { Some(DelsarteInstance::new(g0.canonical_group(), &w0, &qs)?) };
    Ok(ReducedInstance { original: inst.clone(), g0, w0, q_star: qs, q_zero: q0, reduced })
}

/// The trivial extension of a reduced optimum, checked against the original instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSolution {
    pub f: FunctionOnG,
    /// `Σ_G f̃`, equal to the reduced value.
    pub value: f64,
    pub reduced_value: f64,
    pub residuals: MembershipReport,
}

pub fn lift_solution(sol: &DelsarteSolution, red: &ReducedInstance, tol: f64) -> Result<LiftedSolution> {
    if sol.status != SolveStatus::Optimal {
        return Err(Error::NotOptimal);
    }
    let (Some(f0), Some(reduced_value)) = (&sol.f, sol.value) else {
        return Err(Error::NotOptimal);
    };
    let f = trivial_extension(f0, &red.g0)?;
    let residuals = feasibility_check(&f, &red.original, tol)?;
    Ok(LiftedSolution { value: f.integral(), f, reduced_value, residuals })
}

/// Outcome of the numerical comparison between `G` and `G₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub q_star_size: usize,
    pub q_zero_size: usize,
    pub fiber_saturated: bool,
    pub status_g: SolveStatus,
    pub value_g: Option<f64>,
    pub status_g0: SolveStatus,
    pub value_g0: Option<f64>,
    /// `𝒟(W,Q₀)_{G₀}`.
    pub value_upper: Option<f64>,
    /// `𝒟(W,Q)_G - 𝒟(W,Q*)_{G₀}` when both are finite.
    pub gap: Option<f64>,
    /// Same verdict and, if optimal, values within [`VALUE_TOL`].
    pub values_equal: bool,
    /// `𝒟(W,Q*)_{G₀} ≤ 𝒟(W,Q)_G ≤ 𝒟(W,Q₀)_{G₀}`.
    pub sandwich_holds: bool,
    pub q_star_in_q_zero: bool,
    /// The lifted reduced optimum is a member on `G` with the same integral.
    pub lift_ok: bool,
    pub extension_samples: usize,
    pub extension_mismatches: usize,
}

impl EquivalenceReport {
    /// Every check other than value equality passed.
    pub fn structural_ok(&self) -> bool {
        self.sandwich_holds && self.q_star_in_q_zero && self.lift_ok && self.extension_mismatches == 0
    }
}

fn optimal_value(s: &DelsarteSolution) -> Option<f64> {
    (s.status == SolveStatus::Optimal).then_some(s.value).flatten()
}

fn le_with_slack(a: Option<f64>, b: Option<f64>) -> bool {
    // an empty class has value -∞
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x <= y + VALUE_TOL * (1.0 + y.abs()),
    }
}

/// Solves on `G` and on `G₀`, compares the values and samples functions on
/// `G₀` to test that membership for `Q*` matches membership of the extension.
pub fn verify_equivalence(inst: &DelsarteInstance, seed: u64, tol: &Tolerances) -> Result<EquivalenceReport> {
    let red = reduce_instance(inst)?;
    let upper_inst = red.upper_instance();
    let sol_g = solve_delsarte(inst, tol);
    let sol_g0 = match &red.reduced {
        Some(r) => solve_delsarte(r, tol),
        None => DelsarteSolution::failed(SolveStatus::Infeasible, "Q* is empty"),
    };
    let sol_upper = solve_delsarte(&upper_inst, tol);
    for s in [&sol_g, &sol_g0, &sol_upper] {
        if s.status == SolveStatus::NumericalFailure {
            return Err(Error::NumericalFailure(s.message.clone().unwrap_or_default()));
        }
    }
    let (vg, vg0, vup) = (optimal_value(&sol_g), optimal_value(&sol_g0), optimal_value(&sol_upper));
    let gap = vg.zip(vg0).map(|(a, b)| a - b);
    let values_equal = match (vg, vg0) {
        (None, None) => true,
        (Some(a), Some(b)) => (a - b).abs() <= VALUE_TOL * (1.0 + a.abs()),
        _ => false,
    };
    let sandwich_holds = le_with_slack(vg0, vg) && le_with_slack(vg, vup);

    let lift_ok = match &red.reduced {
        Some(_) if sol_g0.status == SolveStatus::Optimal => {
            let lifted = lift_solution(&sol_g0, &red, tol.feasibility)?;
            lifted.residuals.is_member
                && (lifted.value - lifted.reduced_value).abs() <= 1e-12 * (1.0 + lifted.value.abs())
        }
        _ => true,
    };

    let samples = extension_samples(&red, &upper_inst, seed)?;
    let mut mismatches = 0;
    for f0 in &samples {
        let on_g0 = match &red.reduced {
            Some(r) => feasibility_check(f0, r, tol.feasibility)?.is_member,
            None => false,
        };
        let on_g = feasibility_check(&trivial_extension(f0, &red.g0)?, inst, tol.feasibility)?.is_member;
        if on_g0 != on_g {
            mismatches += 1;
        }
    }

    let q_star_in_q_zero = red.q_star.iter().all(|y| red.q_zero.contains(y));
    Ok(EquivalenceReport {
        group_order: inst.group().size(),
        subgroup_order: red.g0.order(),
        q_star_size: red.q_star.len(),
        q_zero_size: red.q_zero.len(),
        fiber_saturated: red.is_fiber_saturated(),
        status_g: sol_g.status,
        value_g: vg,
        status_g0: sol_g0.status,
        value_g0: vg0,
        value_upper: vup,
        gap,
        values_equal,
        sandwich_holds,
        q_star_in_q_zero,
        lift_ok,
        extension_samples: samples.len(),
        extension_mismatches: mismatches,
    })
}

/// Vertices of the `Q₀` and `Q*` polytopes under random objectives, random
/// mixtures of them, and random positive definite functions on `G₀`.
fn extension_samples(red: &ReducedInstance, upper: &DelsarteInstance, seed: u64) -> Result<Vec<FunctionOnG>> {
    let mut r = rng(seed);
    let c = red.g0.canonical_group();
    let mut vertices = Vec::new();
    let mut polytopes = vec![upper];
    if let Some(low) = &red.reduced {
        polytopes.push(low);
    }
    for _ in 0..EXTENSION_SAMPLES / 4 {
        for p in &polytopes {
            if let Some(f) = random_vertex(&mut r, p)? {
                vertices.push(f);
            }
        }
    }
    let mut out = vertices.clone();
    while out.len() < EXTENSION_SAMPLES && vertices.len() >= 2 {
        let a = &vertices[r.gen_range(0..vertices.len())];
        let b = &vertices[r.gen_range(0..vertices.len())];
        let t: f64 = r.gen();
        let v = a.values().iter().zip(b.values()).map(|(x, y)| t * x + (1.0 - t) * y).collect();
        out.push(FunctionOnG::new(c, v)?);
        if out.len() < EXTENSION_SAMPLES {
            out.push(random_posdef(&mut r, c));
        }
    }
    while out.len() < EXTENSION_SAMPLES {
        let f = random_posdef_with_spectrum(&mut r, c, &red.q_zero).unwrap_or_else(|| random_posdef(&mut r, c));
        out.push(f);
    }
    out.truncate(EXTENSION_SAMPLES);
    Ok(out)
}

fn random_vertex<R: Rng>(r: &mut R, inst: &DelsarteInstance) -> Result<Option<FunctionOnG>> {
    let data = match build_lp(inst) {
        Ok(d) => d,
        Err(Error::EmptyEffectiveSupport) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut lp = LinearProgram::new((0..data.basis.len()).map(|_| r.gen_range(-1.0..1.0)).collect());
    lp.constraints = data.lp.constraints;
    Ok(match simplex_solve(&lp, &SimplexOptions::default())? {
        LpOutcome::Optimal(s) => Some(data.basis.combine(&s.x)),
        _ => None,
    })
}

/// Convenience for callers holding only a group and raw sets.
pub fn reduce(g: &GroupSpec, w: &[GroupElement], q: &[DualElement]) -> Result<ReducedInstance> {
    reduce_instance(&DelsarteInstance::new(g, w, q)?)
}
