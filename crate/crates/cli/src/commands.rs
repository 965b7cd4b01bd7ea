//! Subcommand implementations. Each returns the text to emit and the exit code.

use std::time::Instant;

use anyhow::{bail, Context};
use delsarte_core::campaign::{run_suite, Suite, SuiteReport};
use delsarte_core::net::{approximate, build_net};
use delsarte_core::reduction::{reduce_instance, verify_equivalence, EquivalenceReport, VALUE_TOL};
use delsarte_core::{solve_delsarte, vertex_enum_oracle, DualElement, Error, GroupElement, SolveStatus};
use serde::Serialize;

use crate::instance::{DualSet, InstanceFile, FORMAT_VERSION};
use crate::record::{digest, OracleCheck, ResultRecord, Status};
use crate::sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

fn coords<T: AsRef<[u64]>>(c: T) -> Vec<i64> {
    c.as_ref().iter().map(|&x| x as i64).collect()
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub struct SolveArgs {
    pub tolerance: Option<f64>,
    pub oracle: bool,
    pub timing: bool,
    pub format: Format,
}

pub fn solve(file: &InstanceFile, args: &SolveArgs) -> anyhow::Result<Output> {
    let inst = file.to_instance()?;
    let tol = file.tolerances(args.tolerance)?;
    let start = Instant::now();
    let sol = solve_delsarte(&inst, &tol);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut record = ResultRecord::new(file, &inst, &sol);
    let mut code = record.status.exit_code();
    if args.oracle {
        match vertex_enum_oracle(&inst) {
            Ok(o) => {
                let agrees = match (sol.status, o.value(), sol.value) {
                    (SolveStatus::Optimal, Some(v), Some(s)) => (v - s).abs() <= VALUE_TOL * (1.0 + v.abs()),
                    (SolveStatus::Infeasible, None, _) => true,
                    _ => false,
                };
                if !agrees {
                    code = EXIT_MISMATCH;
                }
                record.oracle = Some(OracleCheck { value: o.value(), agrees });
            }
            // the oracle only covers small instances; larger ones are left unchecked
            Err(Error::OracleTooLarge(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    if args.timing {
        record.timing_ms = Some(elapsed);
    }
    let text = match args.format {
        Format::Json => format!("{}\n", record.to_json()),
        Format::Csv => {
            let value = record.value.map(|v| v.to_string()).unwrap_or_default();
            let bound = record.dual.as_ref().map(|d| d.certified_upper_bound.to_string()).unwrap_or_default();
            let member = record.residuals.as_ref().map(|r| r.is_member.to_string()).unwrap_or_default();
            format!(
                "instance_digest,status,value,certified_upper_bound,is_member\n{},{},{value},{bound},{member}\n",
                record.instance_digest,
                serde_json::to_value(record.status)?.as_str().unwrap_or_default()
            )
        }
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct SubgroupSummary {
    order: usize,
    index: usize,
    generators: Vec<Vec<i64>>,
    canonical_orders: Vec<u64>,
    /// Parent coordinates of the canonical basis images, one per canonical factor.
    embedding: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct EquivalenceSummary {
    value_g: Option<f64>,
    value_g0: Option<f64>,
    value_upper: Option<f64>,
    gap: Option<f64>,
    values_equal: bool,
    sandwich_holds: bool,
    lift_ok: bool,
    extension_samples: usize,
    extension_mismatches: usize,
}

impl From<&EquivalenceReport> for EquivalenceSummary {
    fn from(r: &EquivalenceReport) -> Self {
        EquivalenceSummary {
            value_g: r.value_g,
            value_g0: r.value_g0,
            value_upper: r.value_upper,
            gap: r.gap,
            values_equal: r.values_equal,
            sandwich_holds: r.sandwich_holds,
            lift_ok: r.lift_ok,
            extension_samples: r.extension_samples,
            extension_mismatches: r.extension_mismatches,
        }
    }
}

#[derive(Serialize)]
struct ReduceRecord {
    version: u32,
    instance_digest: String,
    subgroup: SubgroupSummary,
    #[serde(rename = "Qstar")]
    q_star: Vec<Vec<i64>>,
    #[serde(rename = "Q0")]
    q_zero: Vec<Vec<i64>>,
    fiber_saturated: bool,
    /// `null` when `Q*` is empty and the reduced class is empty.
    reduced: Option<InstanceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalence: Option<EquivalenceSummary>,
}

pub fn reduce(file: &InstanceFile, tolerance: Option<f64>, verify: bool, seed: u64) -> anyhow::Result<Output> {
    let inst = file.to_instance()?;
    let tol = file.tolerances(tolerance)?;
    let red = reduce_instance(&inst)?;
    let c = red.g0.canonical_group();
    let embedding = (0..red.g0.canonical_orders().len())
        .map(|i| {
            let unit: Vec<i64> = (0..c.rank()).map(|j| i64::from(i == j)).collect();
            red.g0.iso_from_canonical(&c.element(&unit)?).map(|p| coords(p.coords()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let to_list = |ys: &[DualElement]| ys.iter().map(|y| coords(y.coords())).collect::<Vec<_>>();
    let reduced = red.reduced.as_ref().map(|r| {
        let mut f = InstanceFile::from_instance(r, false);
        if red.q_star.len() == c.size() {
            f.q = DualSet::All;
        }
        f.tolerance = file.tolerance;
        f
    });
    let equivalence = if verify { Some(verify_equivalence(&inst, seed, &tol)?) } else { None };
    let code = match &equivalence {
        Some(r) if !(r.values_equal && r.structural_ok()) => EXIT_MISMATCH,
        _ => EXIT_OK,
    };
    let rec = ReduceRecord {
        version: FORMAT_VERSION,
        instance_digest: digest(file),
        subgroup: SubgroupSummary {
            order: red.g0.order(),
            index: red.g0.index(),
            generators: red.g0.generators().iter().map(|x| coords(x.coords())).collect(),
            canonical_orders: red.g0.canonical_orders().to_vec(),
            embedding,
        },
        q_star: to_list(&red.q_star),
        q_zero: to_list(&red.q_zero),
        fiber_saturated: red.is_fiber_saturated(),
        reduced,
        equivalence: equivalence.as_ref().map(EquivalenceSummary::from),
    };
    Ok(Output { text: json(&rec), code })
}

#[derive(Serialize)]
struct FailureLine {
    seed: u64,
    detail: String,
}

#[derive(Serialize)]
struct VerifyRecord {
    suite: String,
    seed: u64,
    count: usize,
    passed: bool,
    failed: usize,
    skipped: usize,
    max_gap: Option<f64>,
    failures: Vec<FailureLine>,
}

pub fn default_count(suite: Suite) -> usize {
    match suite {
        Suite::Posdef => 200,
        Suite::Extension => 100,
        Suite::Net => 50,
        Suite::Oracle => 100,
        Suite::Reduction => 50,
    }
}

pub fn verify(suite: &str, seed: u64, count: Option<usize>, format: Option<Format>) -> anyhow::Result<Output> {
    let suite: Suite = suite.parse()?;
    let report: SuiteReport = run_suite(suite, seed, count.unwrap_or_else(|| default_count(suite)));
    let code = if report.passed() { EXIT_OK } else { EXIT_MISMATCH };
    let text = match format {
        Some(Format::Json) => json(&VerifyRecord {
            suite: suite.to_string(),
            seed,
            count: report.count,
            passed: report.passed(),
            failed: report.failures.len(),
            skipped: report.skipped,
            max_gap: report.max_gap,
            failures: report.failures.iter().map(|f| FailureLine { seed: f.seed, detail: f.detail.clone() }).collect(),
        }),
        Some(Format::Csv) => {
            let mut s = String::from("suite,seed,status,detail\n");
            for f in &report.failures {
                s += &format!("{suite},{},fail,\"{}\"\n", f.seed, f.detail.replace('"', "'"));
            }
            s
        }
        None => {
            let mut s = format!(
                "{} {suite}: {} cases, {} failed, {} skipped",
                if report.passed() { "PASS" } else { "FAIL" },
                report.count,
                report.failures.len(),
                report.skipped
            );
            if let Some(g) = report.max_gap {
                s += &format!(", max gap {g:.3e}");
            }
            s.push('\n');
            for f in &report.failures {
                s += &format!("  seed {}: {}\n", f.seed, f.detail);
            }
            s
        }
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct NetRecord {
    version: u32,
    instance_digest: String,
    epsilon: f64,
    m: u64,
    /// `(m+1)^n` as a decimal string, or `null` past 128 bits.
    cardinality: Option<String>,
    #[serde(rename = "K")]
    k: Vec<Vec<i64>>,
    centers: Vec<Vec<i64>>,
    partition: Vec<Vec<Vec<i64>>>,
    coeffs: Vec<f64>,
    quantized: Vec<f64>,
    quantization_residual: f64,
    error: f64,
    bound: f64,
    within_bound: bool,
}

pub fn net(file: &InstanceFile, epsilon: f64, k: Option<&str>, tolerance: Option<f64>) -> anyhow::Result<Output> {
    let inst = file.to_instance()?;
    let tol = file.tolerances(tolerance)?;
    let g = inst.group();
    let k: Vec<GroupElement> = match k {
        None => g.elements().collect(),
        Some(text) => {
            let list: Vec<Vec<i64>> =
                serde_json::from_str(text).context("--k expects a JSON list of coordinate tuples")?;
            list.iter().map(|c| g.element(c)).collect::<Result<_, _>>()?
        }
    };
    let sol = solve_delsarte(&inst, &tol);
    match sol.status {
        SolveStatus::Optimal => {}
        s => {
            let status = Status::from(s);
            return Ok(Output {
                text: format!("no extremal function: {}\n", sol.message.unwrap_or_default()),
                code: status.exit_code(),
            });
        }
    }
    let f = sol.f.expect("optimal solutions carry f");
    let net = build_net(g, inst.q(), &k, epsilon)?;
    let a = approximate(&f, &net, tol.feasibility)?;
    let within = a.error < 2.0 * epsilon;
    let rec = NetRecord {
        version: FORMAT_VERSION,
        instance_digest: digest(file),
        epsilon,
        m: net.m,
        cardinality: net.cardinality().map(|c| c.to_string()),
        k: net.k.iter().map(|x| coords(x.coords())).collect(),
        centers: net.centers.iter().map(|y| coords(y.coords())).collect(),
        partition: net.partition.iter().map(|cell| cell.iter().map(|y| coords(y.coords())).collect()).collect(),
        coeffs: a.coeffs,
        quantized: a.quantized,
        quantization_residual: a.quantization_residual,
        error: a.error,
        bound: 2.0 * epsilon,
        within_bound: within,
    };
    Ok(Output { text: json(&rec), code: if within { EXIT_OK } else { EXIT_NUMERICAL } })
}

pub fn sweep(family: &str, tolerance: Option<f64>, format: Format) -> anyhow::Result<Output> {
    let fam = sweep::parse_family(family)?;
    let mut tol = delsarte_core::Tolerances::default();
    if let Some(t) = tolerance {
        if !(t > 0.0 && t.is_finite()) {
            bail!("tolerance must be positive");
        }
        tol.feasibility = t;
    }
    let rows = sweep::run(&fam, &tol)?;
    let text = match format {
        Format::Csv => sweep::to_csv(&rows),
        Format::Json => json(&rows),
    };
    Ok(Output { text, code: EXIT_OK })
}
