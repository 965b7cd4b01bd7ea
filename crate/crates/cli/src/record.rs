//! Result records written by `solve`.

use anyhow::{bail, Context};
use delsarte_core::delsarte::{CertificateReport, ExactRecheck};
use delsarte_core::{
    feasibility_check, verify_certificate, DelsarteInstance, DelsarteSolution, FunctionOnG, MembershipReport,
    SolveStatus,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::instance::{InstanceFile, FORMAT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    Infeasible,
    NumericalFailure,
}

impl From<SolveStatus> for Status {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Optimal => Status::Optimal,
            SolveStatus::Infeasible => Status::Infeasible,
            SolveStatus::NumericalFailure => Status::NumericalFailure,
        }
    }
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Optimal => 0,
            Status::Infeasible => 2,
            Status::NumericalFailure => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FEntry {
    pub g: Vec<u64>,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub orbit: Vec<Vec<u64>>,
    pub a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Multiplier {
    pub g: Vec<u64>,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSummary {
    pub eq_multiplier: f64,
    pub certified_upper_bound: f64,
    pub multipliers: Vec<Multiplier>,
    pub gap: f64,
    pub max_dual_violation: f64,
    pub max_complementarity: f64,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub tol: f64,
    pub min_spectrum: f64,
    pub max_imag: f64,
    pub positive_definite: bool,
    pub normalization_error: f64,
    pub normalized: bool,
    pub max_positive_off_w: f64,
    pub support_in_w: bool,
    pub max_spectrum_off_q: f64,
    pub spectrum_in_q: bool,
    pub is_member: bool,
}

impl From<&MembershipReport> for Residuals {
    fn from(m: &MembershipReport) -> Self {
        Residuals {
            tol: m.tol,
            min_spectrum: m.min_spectrum,
            max_imag: m.max_imag,
            positive_definite: m.positive_definite,
            normalization_error: m.normalization_error,
            normalized: m.normalized,
            max_positive_off_w: m.max_positive_off_w,
            support_in_w: m.support_in_w,
            max_spectrum_off_q: m.max_spectrum_off_q,
            spectrum_in_q: m.spectrum_in_q,
            is_member: m.is_member,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub passed: bool,
    pub eq_residual: f64,
    pub max_row_value: f64,
    pub min_coeff: f64,
    pub min_reduced_cost: f64,
    pub gap: f64,
    pub max_complementarity: f64,
}

impl From<&ExactRecheck> for ExactSummary {
    fn from(e: &ExactRecheck) -> Self {
        ExactSummary {
            passed: e.passed,
            eq_residual: e.eq_residual,
            max_row_value: e.max_row_value,
            min_coeff: e.min_coeff,
            min_reduced_cost: e.min_reduced_cost,
            gap: e.gap,
            max_complementarity: e.max_complementarity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// `None` when the oracle finds no feasible vertex.
    pub value: Option<f64>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub version: u32,
    pub instance_digest: String,
    pub instance: InstanceFile,
    pub status: Status,
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub f: Option<Vec<FEntry>>,
    pub fourier_coeffs: Vec<CoeffEntry>,
    pub dual: Option<DualSummary>,
    pub residuals: Option<Residuals>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_recheck: Option<ExactSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn digest(file: &InstanceFile) -> String {
    hex::encode(Sha256::digest(file.canonical_bytes()))
}

impl ResultRecord {
    pub fn new(file: &InstanceFile, inst: &DelsarteInstance, sol: &DelsarteSolution) -> Self {
        let g = inst.group();
        let f = sol
            .f
            .as_ref()
            .map(|f| g.elements().zip(f.values()).map(|(x, &v)| FEntry { g: x.coords().to_vec(), f: v }).collect());
        let fourier_coeffs = match &sol.basis {
            Some(b) => b
                .orbits()
                .iter()
                .zip(&sol.fourier_coeffs)
                .map(|(o, &a)| CoeffEntry { orbit: o.members.iter().map(|y| y.coords().to_vec()).collect(), a })
                .collect(),
            None => Vec::new(),
        };
        let cert: Option<CertificateReport> = verify_certificate(sol, inst).ok();
        let dual = sol.dual.as_ref().zip(cert).map(|(d, c)| DualSummary {
            eq_multiplier: d.eq_multiplier,
            certified_upper_bound: d.certified_upper_bound,
            multipliers: d
                .off_w
                .iter()
                .zip(&d.ineq_multipliers)
                .map(|(x, &z)| Multiplier { g: x.coords().to_vec(), z })
                .collect(),
            gap: c.gap,
            max_dual_violation: c.max_dual_violation,
            max_complementarity: c.max_complementarity,
            verified: c.ok,
        });
        ResultRecord {
            version: FORMAT_VERSION,
            instance_digest: digest(file),
            instance: file.clone(),
            status: sol.status.into(),
            value: sol.value,
            message: sol.message.clone(),
            f,
            fourier_coeffs,
            dual,
            residuals: sol.residuals.as_ref().map(Residuals::from),
            exact_recheck: sol.exact.as_ref().map(ExactSummary::from),
            oracle: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).context("parsing result record")
    }

    /// Re-runs the membership check on the recorded `f` with the recorded tolerance.
    pub fn recheck(&self) -> anyhow::Result<Option<Residuals>> {
        let (Some(table), Some(res)) = (&self.f, &self.residuals) else {
            return Ok(None);
        };
        if digest(&self.instance) != self.instance_digest {
            bail!("instance digest does not match the embedded instance");
        }
        let inst = self.instance.to_instance()?;
        let g = inst.group();
        let mut values = vec![0.0; g.size()];
        for e in table {
            let coords: Vec<i64> = e.g.iter().map(|&c| c as i64).collect();
            values[g.index_of(&g.element(&coords)?)?] = e.f;
        }
        let f = FunctionOnG::new(g, values)?;
        Ok(Some(Residuals::from(&feasibility_check(&f, &inst, res.tol)?)))
    }
}
