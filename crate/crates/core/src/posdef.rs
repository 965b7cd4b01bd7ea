//! Positive definiteness of real functions on a finite abelian group.
//!
//! Two independent routes: the spectral test (`f̂ ≥ 0`, Bochner) and the Gram
//! matrix `M[j,k] = f(g_j - g_k)` being positive semidefinite.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fourier::{dft, FunctionOnG};
use crate::group::{DualElement, GroupSpec};
use crate::subgroup::Subgroup;

/// Default relative tolerance of the spectral test.
pub const DEFAULT_POSDEF_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PosDefReport {
    pub is_posdef: bool,
    /// `min_χ Re f̂(χ)`.
    pub min_spectrum: f64,
    /// Offending character: the argmin of the spectrum, or the character with
    /// the largest imaginary part when `f` is not even.
    pub witness: Option<DualElement>,
    pub max_imag: f64,
    pub tol: f64,
    pub scale: f64,
}

impl PosDefReport {
    pub fn threshold(&self) -> f64 {
        self.tol * self.scale
    }
}

/// Spectral test with threshold `tol · (1 + ‖f‖_∞) · |G|`.
pub fn is_positive_definite(f: &FunctionOnG, tol: f64) -> PosDefReport {
    let scale = (1.0 + f.sup_norm()) * f.spec().size() as f64;
    is_positive_definite_scaled(f, tol, scale)
}

/// Spectral test with an explicit scale: passes iff every `|Im f̂| ≤ tol·scale`
/// and every `Re f̂ ≥ -tol·scale`.
pub fn is_positive_definite_scaled(f: &FunctionOnG, tol: f64, scale: f64) -> PosDefReport {
    let spectrum = dft(f);
    let g = f.spec();
    let threshold = tol * scale;
    let (mut min_i, mut imag_i) = (0usize, 0usize);
    for (i, v) in spectrum.values().iter().enumerate() {
        if v.re < spectrum.values()[min_i].re {
            min_i = i;
        }
        if v.im.abs() > spectrum.values()[imag_i].im.abs() {
            imag_i = i;
        }
    }
    let min_spectrum = spectrum.values()[min_i].re;
    let max_imag = spectrum.values()[imag_i].im.abs();
    let (is_posdef, witness) = if max_imag > threshold {
        (false, Some(g.character_at(imag_i)))
    } else if min_spectrum < -threshold {
        (false, Some(g.character_at(min_i)))
    } else {
        (true, Some(g.character_at(min_i)))
    };
    PosDefReport { is_posdef, min_spectrum, witness, max_imag, tol, scale }
}

/// Gram-matrix test: `f` is even and `[f(g_j - g_k)]` has no eigenvalue below
/// `-1e-9 · ‖f‖_∞ · |G|`.
pub fn gram_oracle(f: &FunctionOnG) -> bool {
    let g = f.spec();
    let n = g.size();
    let v = f.values();
    let norm = f.sup_norm();
    if (0..n).any(|i| (v[i] - v[g.neg_index(i)]).abs() > 1e-12 * (1.0 + norm)) {
        return false;
    }
    let m = DMatrix::from_fn(n, n, |j, k| v[g.sub_index(j, k)]);
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    min >= -1e-9 * norm * n as f64
}

/// `f_+ = max(f, 0)`.
pub fn positive_part(f: &FunctionOnG) -> FunctionOnG {
    FunctionOnG::new(f.spec(), f.values().iter().map(|v| v.max(0.0)).collect()).expect("finite")
}

/// `f_- = max(-f, 0)`.
pub fn negative_part(f: &FunctionOnG) -> FunctionOnG {
    FunctionOnG::new(f.spec(), f.values().iter().map(|v| (-v).max(0.0)).collect()).expect("finite")
}

/// Extends a function on `H` (canonical coordinates) by zero to the parent group.
pub fn trivial_extension(f: &FunctionOnG, h: &Subgroup) -> Result<FunctionOnG> {
    check_spec(f.spec(), h.canonical_group(), "function is not defined on the subgroup")?;
    let g = h.parent();
    let mut values = vec![0.0; g.size()];
    for (ci, &v) in f.values().iter().enumerate() {
        values[h.parent_index_of(ci)] = v;
    }
    FunctionOnG::new(g, values)
}

/// `f|_H` in the canonical coordinates of `H`.
pub fn restrict_function(f: &FunctionOnG, h: &Subgroup) -> Result<FunctionOnG> {
    check_spec(f.spec(), h.parent(), "function is not defined on the parent group")?;
    let c = h.canonical_group();
    let values = (0..c.size()).map(|ci| f.values()[h.parent_index_of(ci)]).collect();
    FunctionOnG::new(c, values)
}

fn check_spec(a: &GroupSpec, b: &GroupSpec, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch(format!("{what}: {:?} vs {:?}", a.orders(), b.orders())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{conj_fourier, conv_square, Spectrum};
    use crate::group::GroupSpec;
    use crate::subgroup::generated_subgroup;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn func(g: &GroupSpec, v: &[f64]) -> FunctionOnG {
        FunctionOnG::new(g, v.to_vec()).unwrap()
    }

    fn z(n: i64) -> GroupSpec {
        GroupSpec::new(&[n]).unwrap()
    }

    fn half_of_z4() -> Subgroup {
        let g = z(4);
        generated_subgroup(&g, &[g.element(&[0]).unwrap(), g.element(&[2]).unwrap()]).unwrap()
    }

    #[test]
    fn spectral_test_examples() {
        let r = is_positive_definite(&FunctionOnG::delta(&z(5)), DEFAULT_POSDEF_TOL);
        assert!(r.is_posdef);
        assert_abs_diff_eq!(r.min_spectrum, 1.0, epsilon = 1e-12);

        let r = is_positive_definite(&func(&z(2), &[1.0, -1.0]), DEFAULT_POSDEF_TOL);
        assert!(r.is_posdef);
        assert_abs_diff_eq!(r.min_spectrum, 0.0, epsilon = 1e-12);

        let r = is_positive_definite(&func(&z(4), &[1.0, 0.9, 0.0, 0.9]), DEFAULT_POSDEF_TOL);
        assert!(!r.is_posdef);
        assert_abs_diff_eq!(r.min_spectrum, -0.8, epsilon = 1e-12);
        assert_eq!(r.witness, Some(z(4).character(&[2]).unwrap()));
    }

    #[test]
    fn non_even_functions_are_rejected() {
        let g = z(3);
        let r = is_positive_definite(&func(&g, &[1.0, 0.2, 0.0]), DEFAULT_POSDEF_TOL);
        assert!(!r.is_posdef);
        assert!(r.max_imag > 0.1);
        assert!(!gram_oracle(&func(&g, &[1.0, 0.2, 0.0])));
    }

    #[test]
    fn gram_oracle_examples() {
        assert!(gram_oracle(&FunctionOnG::delta(&z(6))));
        assert!(gram_oracle(&func(&z(6), &[1.0; 6])));
        assert!(!gram_oracle(&func(&z(4), &[1.0, 0.9, 0.0, 0.9])));
    }

    #[test]
    fn positive_and_negative_parts() {
        let g = z(4);
        let f = func(&g, &[1.0, 0.5, -0.25, 0.5]);
        assert_eq!(positive_part(&f).values(), &[1.0, 0.5, 0.0, 0.5]);
        assert_eq!(negative_part(&f).values(), &[0.0, 0.0, 0.25, 0.0]);
        let f = func(&z(2), &[1.0, -1.0]);
        assert_eq!(positive_part(&f).values(), &[1.0, 0.0]);
        assert_eq!(negative_part(&f).values(), &[0.0, 1.0]);
        let f = func(&g, &[0.0, 2.0, 3.0, 0.0]);
        assert_eq!(positive_part(&f), f);
        assert_eq!(negative_part(&f), FunctionOnG::zeros(&g));
    }

    #[test]
    fn trivial_extension_examples() {
        let h = half_of_z4();
        let c = h.canonical_group();
        let ext = trivial_extension(&func(c, &[1.0, 0.0]), &h).unwrap();
        assert_eq!(ext.values(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(is_positive_definite(&ext, DEFAULT_POSDEF_TOL).is_posdef);

        let ext = trivial_extension(&func(c, &[1.0, 1.0]), &h).unwrap();
        assert_eq!(ext.values(), &[1.0, 0.0, 1.0, 0.0]);
        let r = is_positive_definite(&ext, DEFAULT_POSDEF_TOL);
        assert!(r.is_posdef);
        assert_abs_diff_eq!(r.min_spectrum, 0.0, epsilon = 1e-12);

        let g = z(4);
        let whole = generated_subgroup(&g, &[g.element(&[0]).unwrap(), g.element(&[1]).unwrap()]).unwrap();
        let f = func(&g, &[1.0, 0.5, 0.0, 0.5]);
        assert_eq!(trivial_extension(&f, &whole).unwrap(), f);
        assert!(matches!(trivial_extension(&f, &h), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn restriction_examples() {
        let h = half_of_z4();
        let c = h.canonical_group();
        let f0 = func(c, &[0.7, -0.2]);
        assert_eq!(restrict_function(&trivial_extension(&f0, &h).unwrap(), &h).unwrap(), f0);

        let r = restrict_function(&func(&z(4), &[1.0; 4]), &h).unwrap();
        assert_eq!(r.values(), &[1.0, 1.0]);
        assert!(is_positive_definite(&r, DEFAULT_POSDEF_TOL).is_posdef);

        let r = restrict_function(&func(&z(4), &[1.0, 0.5, 0.0, 0.5]), &h).unwrap();
        assert_eq!(r.values(), &[1.0, 0.0]);
        assert!(is_positive_definite(&r, DEFAULT_POSDEF_TOL).is_posdef);
    }

    fn random_group(rng: &mut ChaCha8Rng, max: usize) -> GroupSpec {
        loop {
            let d = rng.gen_range(1..=3);
            let orders: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=8)).collect();
            if orders.iter().product::<i64>() as usize <= max {
                return GroupSpec::new(&orders).unwrap();
            }
        }
    }

    /// Even spectrum with entries kept away from zero, possibly negative.
    fn random_even_function(rng: &mut ChaCha8Rng, g: &GroupSpec, neg: f64) -> FunctionOnG {
        let mut s = vec![0.0; g.size()];
        for i in 0..g.size() {
            let j = g.neg_index(i);
            if j < i {
                s[i] = s[j];
                continue;
            }
            let mut v: f64 = rng.gen_range(-neg..1.0);
            if v.abs() < 1e-3 {
                v = 1e-3;
            }
            s[i] = v;
        }
        conj_fourier(&Spectrum::from_real(g, s).unwrap()).to_real(1e-9).unwrap()
    }

    #[test]
    fn bochner_equivalence_on_random_even_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (mut yes, mut no) = (0, 0);
        for _ in 0..500 {
            let g = random_group(&mut rng, 16);
            let f = random_even_function(&mut rng, &g, 0.3);
            let spectral = is_positive_definite(&f, DEFAULT_POSDEF_TOL).is_posdef;
            assert_eq!(spectral, gram_oracle(&f), "disagreement on {:?}", f);
            if spectral {
                yes += 1
            } else {
                no += 1
            }
        }
        assert!(yes > 50 && no > 50, "degenerate sample: {yes} / {no}");
    }

    #[test]
    fn positive_definite_functions_obey_basic_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let g = random_group(&mut rng, 32);
            let f = random_even_function(&mut rng, &g, 0.0);
            assert!(is_positive_definite(&f, DEFAULT_POSDEF_TOL).is_posdef);
            assert!(f.sup_norm() <= f.at_zero() + 1e-12);
            assert!(f.integral() >= -1e-10 * g.size() as f64 * f.sup_norm());

            let phi_vals: Vec<f64> = (0..g.size()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let phi = FunctionOnG::new(&g, phi_vals).unwrap();
            let sq = conv_square(&phi);
            let mass: f64 = phi.values().iter().map(|v| v * v).sum();
            assert!(is_positive_definite_scaled(&sq, 1e-10, mass).is_posdef);
            assert_abs_diff_eq!(sq.at_zero(), mass, epsilon = 1e-12 * (1.0 + mass));
        }
    }

    #[test]
    fn extension_and_restriction_preserve_positive_definiteness() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let g = random_group(&mut rng, 48);
            let gens: Vec<_> = (0..rng.gen_range(0..3)).map(|_| g.element_at(rng.gen_range(0..g.size()))).collect();
            let h = Subgroup::generated_by(&g, &gens).unwrap();
            let f0 = random_even_function(&mut rng, h.canonical_group(), 0.0);
            let ext = trivial_extension(&f0, &h).unwrap();
            assert!(is_positive_definite(&ext, DEFAULT_POSDEF_TOL).is_posdef);
            assert!(gram_oracle(&ext));

            let f = random_even_function(&mut rng, &g, 0.0);
            let r = restrict_function(&f, &h).unwrap();
            assert!(is_positive_definite(&r, DEFAULT_POSDEF_TOL).is_posdef);
            assert!(gram_oracle(&r));
        }
    }
}
