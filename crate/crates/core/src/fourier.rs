//! Fourier analysis on a finite abelian group.
//!
//! Haar measure on `G` is counting measure and the dual measure is
//! `(1/|G|)·counting`, so that `f = 𝓕*(f̂)` holds exactly:
//!
//! * `f̂(χ) = Σ_g f(g) conj(χ(g))`
//! * `𝓕*(k)(g) = (1/|G|) Σ_χ k(χ) χ(g)`

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{CharacterTable, DualElement, GroupElement, GroupSpec};

/// A real function on `G`, tabulated in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOnG {
    spec: GroupSpec,
    values: Vec<f64>,
}

/// A complex function on `Ĝ`, tabulated in character enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    spec: GroupSpec,
    values: Vec<Complex64>,
}

/// A complex function on `G`, as produced by [`conj_fourier`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFunction {
    spec: GroupSpec,
    values: Vec<Complex64>,
}

impl FunctionOnG {
    pub fn new(spec: &GroupSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.size() {
            return Err(Error::GroupMismatch(format!("{} values for a group of size {}", values.len(), spec.size())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("function values must be finite".into()));
        }
        Ok(Self { spec: spec.clone(), values })
    }

    pub fn zeros(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), values: vec![0.0; spec.size()] }
    }

    /// Point mass at the identity.
    pub fn delta(spec: &GroupSpec) -> Self {
        let mut f = Self::zeros(spec);
        f.values[0] = 1.0;
        f
    }

    pub fn indicator(spec: &GroupSpec, set: &[GroupElement]) -> Result<Self> {
        let mut f = Self::zeros(spec);
        for x in set {
            f.values[spec.index_of(x)?] = 1.0;
        }
        Ok(f)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, x: &GroupElement) -> Result<f64> {
        Ok(self.values[self.spec.index_of(x)?])
    }

    /// `f(0)`.
    pub fn at_zero(&self) -> f64 {
        self.values[0]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `∫_G f dλ_G`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { spec: self.spec.clone(), values: self.values.iter().map(|v| v * k).collect() }
    }

    /// `g ↦ f(-g)`.
    pub fn reflected(&self) -> Self {
        let values = (0..self.spec.size()).map(|i| self.values[self.spec.neg_index(i)]).collect();
        Self { spec: self.spec.clone(), values }
    }

    pub fn max_abs_diff(&self, other: &FunctionOnG) -> Result<f64> {
        same_spec(&self.spec, &other.spec)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

impl Spectrum {
    pub fn new(spec: &GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.size() {
            return Err(Error::GroupMismatch(format!(
                "{} values for a dual group of size {}",
                values.len(),
                spec.size()
            )));
        }
        Ok(Self { spec: spec.clone(), values })
    }

    pub fn from_real(spec: &GroupSpec, values: Vec<f64>) -> Result<Self> {
        Self::new(spec, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Indicator of a set of characters.
    pub fn indicator(spec: &GroupSpec, set: &[DualElement]) -> Result<Self> {
        let mut values = vec![Complex64::new(0.0, 0.0); spec.size()];
        for y in set {
            values[spec.char_index_of(y)?] = Complex64::new(1.0, 0.0);
        }
        Ok(Self { spec: spec.clone(), values })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, y: &DualElement) -> Result<Complex64> {
        Ok(self.values[self.spec.char_index_of(y)?])
    }

    /// `θ(χ) ↦ θ(χ γ^{-1})`.
    pub fn translated(&self, gamma: &DualElement) -> Result<Self> {
        let gi = self.spec.char_index_of(gamma)?;
        let values = (0..self.spec.size()).map(|c| self.values[self.spec.sub_index(c, gi)]).collect();
        Ok(Self { spec: self.spec.clone(), values })
    }
}

impl ComplexFunction {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.im.abs()))
    }

    /// Real part, provided every imaginary part is within `tol`.
    pub fn to_real(&self, tol: f64) -> Result<FunctionOnG> {
        let im = self.max_imag();
        if im > tol {
            return Err(Error::Precondition(format!("imaginary part {im:e} exceeds {tol:e}")));
        }
        FunctionOnG::new(&self.spec, self.values.iter().map(|v| v.re).collect())
    }
}

fn same_spec(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch(format!("{:?} vs {:?}", a.orders(), b.orders())));
    }
    Ok(())
}

/// `f̂(χ) = Σ_g f(g) conj(χ(g))`, naive `O(|G|²)` summation.
pub fn dft(f: &FunctionOnG) -> Spectrum {
    dft_with(&CharacterTable::new(&f.spec), f)
}

pub(crate) fn dft_with(table: &CharacterTable, f: &FunctionOnG) -> Spectrum {
    let n = f.spec.size();
    let values = (0..n)
        .map(|y| (0..n).filter(|&x| f.values[x] != 0.0).map(|x| table.value(y, x).conj() * f.values[x]).sum())
        .collect();
    Spectrum { spec: f.spec.clone(), values }
}

/// `𝓕*(k)(g) = (1/|G|) Σ_χ k(χ) χ(g)`.
pub fn conj_fourier(k: &Spectrum) -> ComplexFunction {
    let table = CharacterTable::new(&k.spec);
    let n = k.spec.size();
    let scale = 1.0 / n as f64;
    let values = (0..n)
        .map(|x| {
            let s: Complex64 = (0..n)
                .filter(|&y| k.values[y] != Complex64::new(0.0, 0.0))
                .map(|y| k.values[y] * table.value(y, x))
                .sum();
            s * scale
        })
        .collect();
    ComplexFunction { spec: k.spec.clone(), values }
}

/// `(f ⋆ h)(g) = Σ_s f(s) h(g - s)`.
pub fn convolve(f: &FunctionOnG, h: &FunctionOnG) -> Result<FunctionOnG> {
    same_spec(&f.spec, &h.spec)?;
    let g = &f.spec;
    let n = g.size();
    let values = (0..n).map(|x| (0..n).map(|s| f.values[s] * h.values[g.sub_index(x, s)]).sum()).collect();
    Ok(FunctionOnG { spec: g.clone(), values })
}

/// `φ ⋆ φ̃` with `φ̃(g) = φ(-g)` (real `φ`); positive definite by construction.
pub fn conv_square(phi: &FunctionOnG) -> FunctionOnG {
    convolve(phi, &phi.reflected()).expect("same group")
}

/// Convolution on `Ĝ` with the dual measure: `(a ⋆ b)(χ) = (1/|G|) Σ_ψ a(ψ) b(χψ^{-1})`.
pub fn convolve_dual(a: &Spectrum, b: &Spectrum) -> Result<Spectrum> {
    same_spec(&a.spec, &b.spec)?;
    let g = &a.spec;
    let n = g.size();
    let scale = 1.0 / n as f64;
    let values = (0..n)
        .map(|c| {
            let s: Complex64 = (0..n).map(|p| a.values[p] * b.values[g.sub_index(c, p)]).sum();
            s * scale
        })
        .collect();
    Ok(Spectrum { spec: g.clone(), values })
}

/// `θ_γ(χ) = (𝟙_B ⋆ 𝟙_B)(χ γ^{-1})` for a set `B ⊆ Ĝ` closed under conjugation.
///
/// Then `θ_γ(γ) = |B|/|G|` and `𝓕*(θ_γ)(g) = γ(g) · |𝓕*(𝟙_B)(g)|²`.
pub fn bump_theta(spec: &GroupSpec, bump: &[DualElement], gamma: &DualElement) -> Result<Spectrum> {
    let mut member = vec![false; spec.size()];
    for y in bump {
        member[spec.char_index_of(y)?] = true;
    }
    if (0..spec.size()).any(|i| member[i] && !member[spec.neg_index(i)]) {
        return Err(Error::AsymmetricBump);
    }
    let ind = Spectrum::indicator(spec, bump)?;
    convolve_dual(&ind, &ind)?.translated(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn z(n: i64) -> GroupSpec {
        GroupSpec::new(&[n]).unwrap()
    }

    fn func(g: &GroupSpec, v: &[f64]) -> FunctionOnG {
        FunctionOnG::new(g, v.to_vec()).unwrap()
    }

    fn assert_spectrum(s: &Spectrum, expected: &[f64]) {
        for (a, &b) in s.values().iter().zip(expected) {
            assert_abs_diff_eq!(a.re, b, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn dft_examples() {
        for n in 1..7 {
            assert_spectrum(&dft(&FunctionOnG::delta(&z(n))), &vec![1.0; n as usize]);
        }
        assert_spectrum(&dft(&func(&z(4), &[1.0; 4])), &[4.0, 0.0, 0.0, 0.0]);
        assert_spectrum(&dft(&func(&z(4), &[1.0, 0.5, 0.0, 0.5])), &[2.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn conj_fourier_examples() {
        let g = z(5);
        let d = conj_fourier(&Spectrum::from_real(&g, vec![1.0; 5]).unwrap()).to_real(1e-12).unwrap();
        assert!(d.max_abs_diff(&FunctionOnG::delta(&g)).unwrap() < 1e-12);
        let one = conj_fourier(&Spectrum::from_real(&z(4), vec![4.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(one.to_real(1e-12).unwrap().max_abs_diff(&func(&z(4), &[1.0; 4])).unwrap() < 1e-12);
        let f = conj_fourier(&Spectrum::from_real(&z(4), vec![2.0, 1.0, 0.0, 1.0]).unwrap());
        assert!(f.to_real(1e-12).unwrap().max_abs_diff(&func(&z(4), &[1.0, 0.5, 0.0, 0.5])).unwrap() < 1e-12);
    }

    #[test]
    fn convolution_examples() {
        let g = z(6);
        let f = func(&g, &[0.3, -1.0, 2.0, 0.0, 0.5, 4.0]);
        assert_eq!(convolve(&f, &FunctionOnG::delta(&g)).unwrap(), f);
        let z2 = z(2);
        assert_eq!(convolve(&func(&z2, &[1.0, 1.0]), &func(&z2, &[1.0, 1.0])).unwrap().values(), &[2.0, 2.0]);
        let phi = func(&z2, &[1.0, -1.0]);
        assert_eq!(convolve(&phi, &phi.reflected()).unwrap().values(), &[2.0, -2.0]);
        assert!(matches!(convolve(&f, &phi), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn conv_square_examples() {
        assert_eq!(conv_square(&FunctionOnG::delta(&z(3))), FunctionOnG::delta(&z(3)));
        let sq = conv_square(&func(&z(2), &[1.0, -1.0]));
        assert_eq!(sq.values(), &[2.0, -2.0]);
        assert_spectrum(&dft(&sq), &[0.0, 4.0]);
        let sq = conv_square(&func(&z(4), &[1.0, 1.0, 0.0, 0.0]));
        assert_eq!(sq.values(), &[2.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn bump_examples() {
        let g = z(5);
        let unit = g.trivial_character();
        let theta = bump_theta(&g, std::slice::from_ref(&unit), &unit).unwrap();
        assert_spectrum(&theta, &[0.2, 0.0, 0.0, 0.0, 0.0]);

        let z2 = z(2);
        let all: Vec<_> = z2.characters().collect();
        let theta = bump_theta(&z2, &all, &z2.trivial_character()).unwrap();
        assert_spectrum(&theta, &[1.0, 1.0]);

        let g = z(7);
        let b: Vec<_> = [0, 1, 6].iter().map(|&c| g.character(&[c]).unwrap()).collect();
        let base = bump_theta(&g, &b, &unit_of(&g)).unwrap();
        let gamma = g.character(&[3]).unwrap();
        let shifted = bump_theta(&g, &b, &gamma).unwrap();
        for chi in g.characters() {
            let back = g.mul_characters(&chi, &g.conj_character(&gamma).unwrap()).unwrap();
            assert_eq!(shifted.at(&chi).unwrap(), base.at(&back).unwrap());
        }
        assert_abs_diff_eq!(shifted.at(&gamma).unwrap().re, 3.0 / 7.0, epsilon = 1e-15);

        let bad = vec![g.character(&[1]).unwrap()];
        assert_eq!(bump_theta(&g, &bad, &unit_of(&g)).unwrap_err(), Error::AsymmetricBump);
    }

    fn unit_of(g: &GroupSpec) -> DualElement {
        g.trivial_character()
    }

    fn random_function() -> impl Strategy<Value = FunctionOnG> {
        (prop::collection::vec(1i64..6, 1..3), prop::collection::vec(-3.0f64..3.0, 32)).prop_map(|(o, v)| {
            let g = GroupSpec::new(&o).unwrap();
            let n = g.size();
            FunctionOnG::new(&g, v[..n].to_vec()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inversion_and_parseval(f in random_function()) {
            let spec = dft(&f);
            let back = conj_fourier(&spec);
            let err = back.values().iter().zip(f.values()).fold(0.0f64, |m, (a, &b)| m.max((a - b).norm()));
            prop_assert!(err <= 1e-12 * (1.0 + f.sup_norm()));
            let lhs: f64 = f.values().iter().map(|v| v * v).sum();
            let rhs: f64 = spec.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / f.spec().size() as f64;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300));
        }

        #[test]
        fn convolution_theorem(f in random_function(), seed in prop::collection::vec(-3.0f64..3.0, 32)) {
            let h = FunctionOnG::new(f.spec(), seed[..f.spec().size()].to_vec()).unwrap();
            let lhs = dft(&convolve(&f, &h).unwrap());
            let (fa, ha) = (dft(&f), dft(&h));
            let scale = 1.0 + f.sup_norm() * h.sup_norm() * f.spec().size() as f64;
            for i in 0..f.spec().size() {
                prop_assert!((lhs.values()[i] - fa.values()[i] * ha.values()[i]).norm() <= 1e-10 * scale);
            }
        }

        #[test]
        fn real_functions_have_conjugate_symmetric_spectra(f in random_function()) {
            let s = dft(&f);
            let g = f.spec();
            for y in g.characters() {
                let a = s.at(&y).unwrap();
                let b = s.at(&g.conj_character(&y).unwrap()).unwrap();
                prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + f.sup_norm() * g.size() as f64));
            }
        }
    }
}
