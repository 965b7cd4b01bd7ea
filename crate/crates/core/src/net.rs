//! Finite ε-nets for the class `𝒢(W,Q)`.
//!
//! Characters are compared in the uniform distance over a set `K ⊆ G`,
//! `d_K(γ,χ) = max_{g∈K} |γ(g) - χ(g)|`. A greedy cover of `Q` by balls of
//! radius `ε` is made disjoint, and each `f` is approximated on `K` by
//! `Σ_j d_j χ_j`, where `d_j` rounds the spectral mass of the `j`-th cell
//! down to the grid `{0, 1/m, ..., 1}` with `m > n/ε`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{dft, FunctionOnG};
use crate::group::{CharacterTable, DualElement, GroupElement, GroupSpec};
use crate::posdef::is_positive_definite;

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonNet {
    spec: GroupSpec,
    pub k: Vec<GroupElement>,
    pub epsilon: f64,
    pub centers: Vec<DualElement>,
    /// Disjoint cells covering `Q`; cell `j` contains `centers[j]`.
    pub partition: Vec<Vec<DualElement>>,
    /// Quantization grid size, `floor(n/ε) + 1`.
    pub m: u64,
}

impl EpsilonNet {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// `(m+1)^n`, the number of candidate functions `Σ r_j χ_j` with `r_j` on the grid.
    pub fn cardinality(&self) -> Option<u128> {
        net_cardinality(self.m, self.len())
    }
}

pub fn net_cardinality(m: u64, n: usize) -> Option<u128> {
    (m as u128 + 1).checked_pow(u32::try_from(n).ok()?)
}

/// `d_K(γ, χ)` by character indices.
fn distance(table: &CharacterTable, k: &[usize], a: usize, b: usize) -> f64 {
    k.iter().map(|&g| (table.value(a, g) - table.value(b, g)).norm()).fold(0.0, f64::max)
}

/// Greedy net: the first character of `Q` (in enumeration order) not yet
/// covered becomes a center, and its cell takes every uncovered member of
/// `Q` within distance `< ε`.
pub fn build_net(g: &GroupSpec, q: &[DualElement], k: &[GroupElement], epsilon: f64) -> Result<EpsilonNet> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    if q.is_empty() {
        return Err(Error::EmptySet("Q"));
    }
    if k.is_empty() {
        return Err(Error::EmptySet("K"));
    }
    let mut qi: Vec<usize> = q.iter().map(|y| g.char_index_of(y)).collect::<Result<_>>()?;
    qi.sort_unstable();
    qi.dedup();
    let mut ki: Vec<usize> = k.iter().map(|x| g.index_of(x)).collect::<Result<_>>()?;
    ki.sort_unstable();
    ki.dedup();

    let table = CharacterTable::new(g);
    let mut covered = vec![false; qi.len()];
    let (mut centers, mut partition) = (Vec::new(), Vec::new());
    for a in 0..qi.len() {
        if covered[a] {
            continue;
        }
        let mut cell = Vec::new();
        for b in a..qi.len() {
            if !covered[b] && distance(&table, &ki, qi[a], qi[b]) < epsilon {
                covered[b] = true;
                cell.push(g.character_at(qi[b]));
            }
        }
        centers.push(g.character_at(qi[a]));
        partition.push(cell);
    }
    let m = (centers.len() as f64 / epsilon).floor() as u64 + 1;
    Ok(EpsilonNet {
        spec: g.clone(),
        k: ki.into_iter().map(|i| g.element_at(i)).collect(),
        epsilon,
        centers,
        partition,
        m,
    })
}

/// `c_j = (1/|G|) Σ_{χ ∈ Q_j} f̂(χ)` for `f ∈ 𝒢(G, Q)` (checked at `tol`).
pub fn project_coeffs(f: &FunctionOnG, net: &EpsilonNet, tol: f64) -> Result<Vec<f64>> {
    let g = &net.spec;
    if f.spec() != g {
        return Err(Error::GroupMismatch("function and net live on different groups".into()));
    }
    if !is_positive_definite(f, tol).is_posdef {
        return Err(Error::Precondition("f is not positive definite".into()));
    }
    if (f.at_zero() - 1.0).abs() > tol {
        return Err(Error::Precondition(format!("f(0) = {} is not 1", f.at_zero())));
    }
    let spectrum = dft(f);
    let mut in_q = vec![false; g.size()];
    for y in net.partition.iter().flatten() {
        in_q[g.char_index_of(y)?] = true;
    }
    if let Some(y) = (0..g.size()).find(|&y| !in_q[y] && spectrum.values()[y].norm() > tol) {
        return Err(Error::Precondition(format!("f̂ is nonzero at {} outside Q", g.character_at(y))));
    }
    let n = g.size() as f64;
    net.partition
        .iter()
        .map(|cell| {
            let s: f64 = cell.iter().map(|y| Ok(spectrum.values()[g.char_index_of(y)?].re)).sum::<Result<f64>>()?;
            Ok((s / n).max(0.0))
        })
        .collect()
}

/// `d_j = floor(m c_j) / m`.
pub fn quantize(c: &[f64], m: u64) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let mf = m as f64;
    c.iter()
        .map(|&x| {
            if !(0.0..=1.0 + 1e-12).contains(&x) {
                return Err(Error::Precondition(format!("coefficient {x} outside [0, 1]")));
            }
            Ok(((mf * x).floor() / mf).min(1.0))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetApproximation {
    pub coeffs: Vec<f64>,
    pub quantized: Vec<f64>,
    /// `max_j (c_j - d_j)`.
    pub quantization_residual: f64,
    /// `max_{g∈K} |f(g) - Σ_j d_j χ_j(g)|`.
    pub error: f64,
}

pub fn approximate(f: &FunctionOnG, net: &EpsilonNet, tol: f64) -> Result<NetApproximation> {
    let coeffs = project_coeffs(f, net, tol)?;
    let quantized = quantize(&coeffs, net.m)?;
    let g = &net.spec;
    let quantization_residual = coeffs.iter().zip(&quantized).map(|(c, d)| c - d).fold(0.0, f64::max);
    let mut error: f64 = 0.0;
    for x in &net.k {
        let mut s = Complex64::new(0.0, 0.0);
        for (d, y) in quantized.iter().zip(&net.centers) {
            s += g.char_eval(y, x)? * *d;
        }
        error = error.max((Complex64::new(f.at(x)?, 0.0) - s).norm());
    }
    Ok(NetApproximation { coeffs, quantized, quantization_residual, error })
}

pub fn net_approximation_error(f: &FunctionOnG, net: &EpsilonNet, tol: f64) -> Result<f64> {
    Ok(approximate(f, net, tol)?.error)
}
