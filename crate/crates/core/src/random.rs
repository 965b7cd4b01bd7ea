//! Seeded generators for groups, instances and positive definite functions.
//!
//! Every generator draws from a caller-supplied RNG; [`rng`] gives the
//! reproducible stream used by the verification campaigns.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delsarte::{build_orbit_basis, DelsarteInstance};
use crate::fourier::{conv_square, FunctionOnG};
use crate::group::{DualElement, GroupElement, GroupSpec};
use crate::subgroup::Subgroup;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A group `Z_{n_1} x ... x Z_{n_d}` with `2 ≤ |G| ≤ max_size` and `d ≤ 3`.
pub fn random_group<R: Rng>(rng: &mut R, max_size: usize) -> GroupSpec {
    assert!(max_size >= 2, "max_size must allow a nontrivial group");
    loop {
        let rank = rng.gen_range(1..=3);
        let orders: Vec<i64> =
            (0..rank).map(|i| if i == 0 { rng.gen_range(2..=max_size as i64) } else { rng.gen_range(2..=4) }).collect();
        let size: i64 = orders.iter().product();
        if size as usize <= max_size {
            return GroupSpec::new(&orders).expect("valid orders");
        }
    }
}

/// `{0}` together with each other element independently with probability `p`.
pub fn random_w<R: Rng>(rng: &mut R, g: &GroupSpec, p: f64) -> Vec<GroupElement> {
    g.elements().enumerate().filter(|&(i, _)| i == 0 || rng.gen_bool(p)).map(|(_, x)| x).collect()
}

/// A conjugation-closed set of characters: each orbit `{χ, χ̄}` is kept with
/// probability `p`. The result may be empty.
pub fn random_symmetric_q<R: Rng>(rng: &mut R, g: &GroupSpec, p: f64) -> Vec<DualElement> {
    let mut keep = vec![None; g.size()];
    for (i, y) in g.characters().enumerate() {
        if keep[i].is_none() {
            let k = rng.gen_bool(p);
            keep[i] = Some(k);
            let c = g.char_index_of(&g.conj_character(&y).expect("valid")).expect("valid");
            keep[c] = Some(k);
        }
    }
    g.characters().enumerate().filter(|&(i, _)| keep[i] == Some(true)).map(|(_, y)| y).collect()
}

/// A random instance on `g` with conjugation-closed, nonempty `Q`.
pub fn random_instance<R: Rng>(rng: &mut R, g: &GroupSpec) -> DelsarteInstance {
    let pw = rng.gen_range(0.2..0.8);
    let pq = rng.gen_range(0.3..0.9);
    let w = random_w(rng, g, pw);
    let mut q = random_symmetric_q(rng, g, pq);
    if q.is_empty() {
        q.push(g.trivial_character());
    }
    DelsarteInstance::new(g, &w, &q).expect("0 ∈ W and Q nonempty")
}

/// The subgroup generated by a few random elements; may be trivial or all of `g`.
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &GroupSpec) -> Subgroup {
    let k = rng.gen_range(1..=2);
    let gens: Vec<GroupElement> = (0..k).map(|_| g.element_at(rng.gen_range(0..g.size()))).collect();
    Subgroup::generated_by(g, &gens).expect("generators lie in the group")
}

/// A random proper subgroup of `g` (`|g| ≥ 2`).
pub fn random_proper_subgroup<R: Rng>(rng: &mut R, g: &GroupSpec) -> Subgroup {
    loop {
        let h = random_subgroup(rng, g);
        if h.order() < g.size() {
            return h;
        }
    }
}

/// An instance whose `W` lies inside a proper subgroup of a random group with
/// `|G| ≤ max_size`.
pub fn random_instance_in_proper_subgroup<R: Rng>(rng: &mut R, max_size: usize) -> DelsarteInstance {
    let g = random_group(rng, max_size);
    let h = random_proper_subgroup(rng, &g);
    let p = rng.gen_range(0.3..0.9);
    let mut w: Vec<GroupElement> = h.elements().into_iter().filter(|x| *x == g.zero() || rng.gen_bool(p)).collect();
    w.shuffle(rng);
    let pq = rng.gen_range(0.3..0.9);
    let mut q = random_symmetric_q(rng, &g, pq);
    if q.is_empty() {
        q.push(g.trivial_character());
    }
    DelsarteInstance::new(&g, &w, &q).expect("0 ∈ W and Q nonempty")
}

/// A real even function with values in `[-1, 1]`.
pub fn random_even_function<R: Rng>(rng: &mut R, g: &GroupSpec) -> FunctionOnG {
    let mut v = vec![0.0; g.size()];
    for i in 0..g.size() {
        let j = g.neg_index(i);
        if j >= i {
            let x = rng.gen_range(-1.0..1.0);
            v[i] = x;
            v[j] = x;
        }
    }
    FunctionOnG::new(g, v).expect("finite")
}

/// `φ ⋆ φ̃` for a random `φ` with values in `[-1, 1]`.
pub fn random_conv_square<R: Rng>(rng: &mut R, g: &GroupSpec) -> FunctionOnG {
    let phi = FunctionOnG::new(g, (0..g.size()).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite");
    conv_square(&phi)
}

/// A positive definite `f` with `f(0) = 1` and `f̂` supported in
/// `support ∩ conj(support)`; `None` if that set is empty.
///
/// Built as a random nonnegative combination of the real orbit functions
/// `χ + χ̄`, with some coefficients set to zero so that sparse spectra occur.
pub fn random_posdef_with_spectrum<R: Rng>(rng: &mut R, g: &GroupSpec, support: &[DualElement]) -> Option<FunctionOnG> {
    let basis = build_orbit_basis(g, support).ok()?;
    let mut a: Vec<f64> = (0..basis.len()).map(|_| if rng.gen_bool(0.4) { 0.0 } else { rng.gen::<f64>() }).collect();
    if a.iter().all(|&x| x == 0.0) {
        let i = rng.gen_range(0..a.len());
        a[i] = 1.0;
    }
    let mass: f64 = a.iter().zip(basis.orbits()).map(|(x, o)| x * o.weight_at_zero()).sum();
    a.iter_mut().for_each(|x| *x /= mass);
    Some(basis.combine(&a))
}

/// A positive definite `f` with `f(0) = 1` and arbitrary spectral support.
pub fn random_posdef<R: Rng>(rng: &mut R, g: &GroupSpec) -> FunctionOnG {
    let all: Vec<DualElement> = g.characters().collect();
    random_posdef_with_spectrum(rng, g, &all).expect("full dual is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posdef::{gram_oracle, is_positive_definite};

    #[test]
    fn generators_respect_their_contracts() {
        let mut r = rng(3);
        for _ in 0..200 {
            let g = random_group(&mut r, 12);
            assert!((2..=12).contains(&g.size()));
            let inst = random_instance(&mut r, &g);
            assert!(inst.q_is_symmetric());
            assert_eq!(inst.w()[0], g.zero());
            let f = random_posdef(&mut r, &g);
            assert!((f.at_zero() - 1.0).abs() < 1e-12);
            assert!(is_positive_definite(&f, 1e-9).is_posdef && gram_oracle(&f));
            assert_eq!(f, f.reflected());
            let h = random_proper_subgroup(&mut r, &g);
            assert!(h.order() < g.size());
        }
    }

    #[test]
    fn proper_subgroup_instances_do_not_generate_the_group() {
        let mut r = rng(11);
        for _ in 0..50 {
            let inst = random_instance_in_proper_subgroup(&mut r, 16);
            let h = crate::subgroup::generated_subgroup(inst.group(), inst.w()).unwrap();
            assert!(h.order() < inst.group().size());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = (0..5).map(|_| random_group(&mut rng(9), 30)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }
}
