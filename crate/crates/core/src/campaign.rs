//! Seeded property campaigns.
//!
//! Case `i` of a run with seed `s` draws everything from `rng(s + i)`, so a
//! failing case is reproduced by a run with seed `s + i` and count 1.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::delsarte::{feasibility_check, solve_delsarte, vertex_enum_oracle, SolveStatus, Tolerances};
use crate::error::{Error, Result};
use crate::group::{DualElement, GroupElement};
use crate::net::{approximate, build_net};
use crate::posdef::{gram_oracle, is_positive_definite, trivial_extension, DEFAULT_POSDEF_TOL};
use crate::random::{
    random_conv_square, random_even_function, random_group, random_instance, random_instance_in_proper_subgroup,
    random_posdef, random_subgroup, random_w, rng,
};
use crate::reduction::{verify_equivalence, VALUE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Posdef,
    Extension,
    Net,
    Oracle,
    Reduction,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Posdef, Suite::Extension, Suite::Net, Suite::Oracle, Suite::Reduction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Posdef => "posdef",
            Suite::Extension => "extension",
            Suite::Net => "net",
            Suite::Oracle => "oracle",
            Suite::Reduction => "reduction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseFailure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub failures: Vec<CaseFailure>,
    /// Largest value discrepancy observed, for suites that compare values.
    pub max_gap: Option<f64>,
    /// Cases that were skipped as not applicable (e.g. an infeasible instance
    /// offers no extremal function to approximate).
    pub skipped: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type CaseResult = std::result::Result<CaseOutcome, String>;

#[derive(Default)]
struct CaseOutcome {
    gap: Option<f64>,
    skipped: bool,
}

pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport { suite, seed, count, failures: Vec::new(), max_gap: None, skipped: 0 };
    for i in 0..count {
        let case_seed = seed.wrapping_add(i as u64);
        let outcome = match suite {
            Suite::Posdef => posdef_case(case_seed),
            Suite::Extension => extension_case(case_seed),
            Suite::Net => net_case(case_seed),
            Suite::Oracle => oracle_case(case_seed),
            Suite::Reduction => reduction_case(case_seed),
        };
        match outcome {
            Ok(o) => {
                if let Some(g) = o.gap {
                    report.max_gap = Some(report.max_gap.map_or(g, |m: f64| m.max(g)));
                }
                if o.skipped {
                    report.skipped += 1;
                }
            }
            Err(detail) => report.failures.push(CaseFailure { seed: case_seed, detail }),
        }
    }
    report
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Convolution squares are positive definite, positive definite functions
/// obey `|f| ≤ f(0)` and `Σ f ≥ 0`, and the spectral and Gram tests agree.
fn posdef_case(seed: u64) -> CaseResult {
    let mut r = rng(seed);
    let g = random_group(&mut r, 16);
    let sq = random_conv_square(&mut r, &g);
    if !is_positive_definite(&sq, DEFAULT_POSDEF_TOL).is_posdef {
        return Err(format!("convolution square on {:?} failed the spectral test", g.orders()));
    }
    let f = random_posdef(&mut r, &g).scaled(r.gen_range(0.1..10.0));
    let norm = f.sup_norm();
    if norm > f.at_zero() + 1e-12 {
        return Err(format!("max |f| = {norm} exceeds f(0) = {}", f.at_zero()));
    }
    if f.integral() < -1e-10 * g.size() as f64 * norm {
        return Err(format!("Σ f = {} is negative", f.integral()));
    }
    let h = random_even_function(&mut r, &g);
    let (spectral, gram) = (is_positive_definite(&h, DEFAULT_POSDEF_TOL).is_posdef, gram_oracle(&h));
    if spectral != gram {
        return Err(format!("spectral test says {spectral}, Gram test says {gram}"));
    }
    Ok(CaseOutcome::default())
}

/// The trivial extension of a positive definite function on a subgroup is
/// positive definite on the whole group.
fn extension_case(seed: u64) -> CaseResult {
    let mut r = rng(seed);
    let g = random_group(&mut r, 24);
    let h = random_subgroup(&mut r, &g);
    let f = random_posdef(&mut r, h.canonical_group());
    let ext = trivial_extension(&f, &h).map_err(err)?;
    let spectral = is_positive_definite(&ext, DEFAULT_POSDEF_TOL).is_posdef;
    let gram = gram_oracle(&ext);
    if !(spectral && gram) {
        return Err(format!(
            "extension from {:?} into {:?}: spectral {spectral}, Gram {gram}",
            h.canonical_orders(),
            g.orders()
        ));
    }
    Ok(CaseOutcome::default())
}

pub const NET_EPSILONS: [f64; 3] = [0.05, 0.2, 1.0];

/// Extremal functions are approximated on `K` within `2ε` by the quantized net.
fn net_case(seed: u64) -> CaseResult {
    let mut r = rng(seed);
    let g = random_group(&mut r, 12);
    let inst = random_instance(&mut r, &g);
    let sol = solve_delsarte(&inst, &Tolerances::default());
    let Some(f) = sol.f.filter(|_| sol.status == SolveStatus::Optimal) else {
        return Ok(CaseOutcome { skipped: true, ..Default::default() });
    };
    let k: Vec<GroupElement> = if r.gen_bool(0.5) { g.elements().collect() } else { random_w(&mut r, &g, 0.5) };
    let q: Vec<DualElement> = g.characters().collect();
    for eps in NET_EPSILONS {
        let net = build_net(&g, &q, &k, eps).map_err(err)?;
        let a = approximate(&f, &net, 1e-9).map_err(err)?;
        if a.error >= 2.0 * eps {
            return Err(format!("ε = {eps}: error {} ≥ 2ε", a.error));
        }
        if a.quantization_residual >= 1.0 / net.m as f64 {
            return Err(format!("ε = {eps}: quantization residual {} ≥ 1/m", a.quantization_residual));
        }
    }
    Ok(CaseOutcome::default())
}

/// The simplex value matches vertex enumeration, and every optimum is a
/// member of the class whose integral is the reported value.
fn oracle_case(seed: u64) -> CaseResult {
    let mut r = rng(seed);
    let g = random_group(&mut r, 12);
    let inst = random_instance(&mut r, &g);
    let sol = solve_delsarte(&inst, &Tolerances::default());
    let oracle = vertex_enum_oracle(&inst).map_err(err)?;
    match (sol.status, oracle.value()) {
        (SolveStatus::Infeasible, None) => Ok(CaseOutcome::default()),
        (SolveStatus::Optimal, Some(v)) => {
            let value = sol.value.expect("optimal solutions carry a value");
            let gap = (value - v).abs();
            if gap > VALUE_TOL * (1.0 + v.abs()) {
                return Err(format!("solver {value} vs oracle {v}"));
            }
            let f = sol.f.as_ref().expect("optimal solutions carry f");
            let m = feasibility_check(f, &inst, 1e-9).map_err(err)?;
            if !m.is_member {
                return Err(format!("extremal f fails membership: {m:?}"));
            }
            if (f.integral() - value).abs() > 1e-12 * (1.0 + value.abs()) {
                return Err(format!("Σ f = {} differs from the value {value}", f.integral()));
            }
            Ok(CaseOutcome { gap: Some(gap), ..Default::default() })
        }
        (status, v) => Err(format!("solver {status:?} vs oracle {v:?}")),
    }
}

/// `𝒟(W,Q)_G` equals `𝒟(W,Q*)_{G₀}`, alongside the structural checks.
fn reduction_case(seed: u64) -> CaseResult {
    let mut r = rng(seed);
    let inst = random_instance_in_proper_subgroup(&mut r, 16);
    let rep = verify_equivalence(&inst, seed, &Tolerances::default()).map_err(err)?;
    let gap = rep.gap.map(f64::abs);
    if !rep.structural_ok() {
        return Err(format!("structural check failed: {rep:?}"));
    }
    if !rep.values_equal {
        return Err(format!(
            "G = {:?}, |G₀| = {}: value {:?} on G vs {:?} on G₀ (|Q*| = {}, |Q₀| = {}, upper bound {:?})",
            inst.group().orders(),
            rep.subgroup_order,
            rep.value_g,
            rep.value_g0,
            rep.q_star_size,
            rep.q_zero_size,
            rep.value_upper
        ));
    }
    Ok(CaseOutcome { gap, ..Default::default() })
}
