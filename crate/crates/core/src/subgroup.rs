//! Subgroups of a finite abelian group, their canonical cyclic decomposition,
//! and restriction/extension of characters across the inclusion.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{DualElement, GroupElement, GroupSpec};
use crate::snf::{integer_kernel, smith_normal_form, IntMatrix};

/// An enumerated subgroup `H ≤ G` together with an isomorphism
/// `H ≅ Z_{m_1} x ... x Z_{m_r}`, `m_1 | m_2 | ... | m_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupSpec,
    /// Parent indices of the members, ascending.
    elements: Vec<usize>,
    generators: Vec<GroupElement>,
    canonical_orders: Vec<u64>,
    canonical: GroupSpec,
    /// Parent element index of each canonical generator.
    canonical_generators: Vec<usize>,
    /// parent index -> canonical index, `None` outside `H`.
    to_canonical: Vec<Option<usize>>,
    /// canonical index -> parent index.
    from_canonical: Vec<usize>,
}

/// `{a - b : a, b ∈ W}`, sorted.
pub fn difference_set(g: &GroupSpec, w: &[GroupElement]) -> Result<Vec<GroupElement>> {
    if w.is_empty() {
        return Err(Error::EmptySet("W"));
    }
    let idx: Vec<usize> = w.iter().map(|x| g.index_of(x)).collect::<Result<_>>()?;
    let set: BTreeSet<usize> =
        idx.iter().flat_map(|&a| idx.iter().map(move |&b| (a, b))).map(|(a, b)| g.sub_index(a, b)).collect();
    Ok(set.into_iter().map(|i| g.element_at(i)).collect())
}

/// Closure of `seed ∪ {0}` under addition, iterated to a fixpoint.
fn closure(g: &GroupSpec, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut current: BTreeSet<usize> = seed.clone();
    current.insert(0);
    loop {
        let next: BTreeSet<usize> = current
            .iter()
            .flat_map(|&a| current.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.add_index(a, b))
            .chain(current.iter().copied())
            .collect();
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// The smallest subgroup containing all differences `a - b` of members of `W`.
pub fn generated_subgroup(g: &GroupSpec, w: &[GroupElement]) -> Result<Subgroup> {
    let v = difference_set(g, w)?;
    Subgroup::generated_by(g, &v)
}

impl Subgroup {
    /// The subgroup generated by `gens` (the trivial subgroup when empty).
    pub fn generated_by(parent: &GroupSpec, gens: &[GroupElement]) -> Result<Self> {
        let idx: Vec<usize> = gens.iter().map(|x| parent.index_of(x)).collect::<Result<_>>()?;
        let elements = closure(parent, &idx.iter().copied().collect());

        // Keep a generator only when it enlarges the span of the previous ones.
        let mut span = BTreeSet::from([0usize]);
        let mut kept = Vec::new();
        for &x in &idx {
            if !span.contains(&x) {
                kept.push(x);
                span.insert(x);
                span = closure(parent, &span);
            }
        }
        debug_assert_eq!(span, elements);
        Self::decompose(parent, elements.into_iter().collect(), kept)
    }

    /// Canonical decomposition from the relation lattice of the generators.
    fn decompose(parent: &GroupSpec, elements: Vec<usize>, gens: Vec<usize>) -> Result<Self> {
        let d = parent.rank();
        let k = gens.len();
        let generators: Vec<GroupElement> = gens.iter().map(|&i| parent.element_at(i)).collect();

        let (canonical_orders, canonical_generators) = if k == 0 {
            (Vec::new(), Vec::new())
        } else {
            // [g_1 .. g_k | diag(n)] v = 0  <=>  Σ v_i g_i = 0 in G.
            let mut m = IntMatrix::zeros(d, k + d);
            for (c, x) in generators.iter().enumerate() {
                for r in 0..d {
                    m[(r, c)] = x.coords()[r] as i64;
                }
            }
            for r in 0..d {
                m[(r, k + r)] = parent.orders()[r] as i64;
            }
            let kernel = integer_kernel(&m)?;
            let mut relations = IntMatrix::zeros(k, kernel.cols());
            for r in 0..k {
                for c in 0..kernel.cols() {
                    relations[(r, c)] = kernel[(r, c)];
                }
            }
            let snf = smith_normal_form(&relations)?;
            if snf.rank != k {
                return Err(Error::Internal("relation lattice is not of full rank".into()));
            }
            let mut orders = Vec::new();
            let mut cgens = Vec::new();
            for (i, &s) in snf.diagonal.iter().enumerate() {
                if s == 1 {
                    continue;
                }
                // canonical generator i = Σ_j P^{-1}[j][i] g_j
                let mut acc = 0usize;
                for (j, &gj) in gens.iter().enumerate() {
                    let c = snf.p_inv[(j, i)];
                    let term = parent.index_of(&parent.scale(c, &parent.element_at(gj))?)?;
                    acc = parent.add_index(acc, term);
                }
                orders.push(s as u64);
                cgens.push(acc);
            }
            (orders, cgens)
        };

        let canonical = if canonical_orders.is_empty() {
            GroupSpec::from_orders(vec![1])
        } else {
            GroupSpec::from_orders(canonical_orders.clone())
        };
        if canonical.size() != elements.len() {
            return Err(Error::Internal(format!(
                "invariant factors {canonical_orders:?} do not match |H| = {}",
                elements.len()
            )));
        }

        let mut from_canonical = vec![0usize; canonical.size()];
        for (ci, slot) in from_canonical.iter_mut().enumerate() {
            let w = canonical.decode(ci);
            let mut acc = 0usize;
            for (&wi, &gen) in w.iter().zip(&canonical_generators) {
                let term = parent.index_of(&parent.scale(wi as i64, &parent.element_at(gen))?)?;
                acc = parent.add_index(acc, term);
            }
            *slot = acc;
        }
        let mut to_canonical = vec![None; parent.size()];
        for (ci, &pi) in from_canonical.iter().enumerate() {
            if to_canonical[pi].replace(ci).is_some() {
                return Err(Error::Internal("canonical map is not injective".into()));
            }
        }
        if elements.iter().any(|&e| to_canonical[e].is_none()) {
            return Err(Error::Internal("canonical map is not onto H".into()));
        }

        let h = Self {
            parent: parent.clone(),
            elements,
            generators,
            canonical_orders,
            canonical,
            canonical_generators,
            to_canonical,
            from_canonical,
        };
        h.verify_isomorphism()?;
        Ok(h)
    }

    /// Checks that the coordinate maps are inverse homomorphisms on every element.
    fn verify_isomorphism(&self) -> Result<()> {
        let c = &self.canonical;
        for a in 0..c.size() {
            if self.to_canonical[self.from_canonical[a]] != Some(a) {
                return Err(Error::Internal("canonical maps are not inverse".into()));
            }
            for unit in (0..c.rank()).map(|j| {
                let mut e = vec![0u64; c.rank()];
                e[j] = 1 % c.orders()[j];
                c.encode(&e)
            }) {
                let lhs = self.from_canonical[c.add_index(a, unit)];
                let rhs = self.parent.add_index(self.from_canonical[a], self.from_canonical[unit]);
                if lhs != rhs {
                    return Err(Error::Internal("canonical map is not additive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.parent.size() / self.order()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.elements.iter().map(|&i| self.parent.element_at(i)).collect()
    }

    #[cfg(test)]
    pub(crate) fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Invariant factors `m_1 | ... | m_r` (empty for the trivial subgroup).
    pub fn canonical_orders(&self) -> &[u64] {
        &self.canonical_orders
    }

    /// `Z_{m_1} x ... x Z_{m_r}`, or `Z_1` for the trivial subgroup.
    pub fn canonical_group(&self) -> &GroupSpec {
        &self.canonical
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.parent.index_of(x).is_ok_and(|i| self.to_canonical[i].is_some())
    }

    pub(crate) fn parent_index_of(&self, canonical_index: usize) -> usize {
        self.from_canonical[canonical_index]
    }

    pub fn iso_to_canonical(&self, x: &GroupElement) -> Result<GroupElement> {
        let i = self.parent.index_of(x)?;
        let ci = self.to_canonical[i].ok_or_else(|| Error::GroupMismatch(format!("{x} is not in the subgroup")))?;
        Ok(self.canonical.element_at(ci))
    }

    pub fn iso_from_canonical(&self, w: &GroupElement) -> Result<GroupElement> {
        let ci = self.canonical.index_of(w)?;
        Ok(self.parent.element_at(self.from_canonical[ci]))
    }

    /// Restriction `χ|_H` expressed in the canonical coordinates of `H`.
    pub fn restrict_character(&self, chi: &DualElement) -> Result<DualElement> {
        self.parent.check_character(chi)?;
        Ok(self.canonical.character_at(self.restrict_index(self.parent.encode(chi.coords()))))
    }

    pub(crate) fn restrict_index(&self, chi: usize) -> usize {
        if self.canonical_generators.is_empty() {
            return 0;
        }
        let l = self.parent.exponent();
        let y = self.parent.decode(chi);
        let coords: Vec<u64> = self
            .canonical_generators
            .iter()
            .zip(&self.canonical_orders)
            .map(|(&gen, &m)| {
                let t = self.parent.phase_coords(&y, &self.parent.decode(gen));
                // m * gen = 0 forces t * m ≡ 0 (mod l)
                debug_assert_eq!((t as u128 * m as u128) % l as u128, 0);
                (t as u128 * m as u128 / l as u128) as u64
            })
            .collect();
        self.canonical.encode(&coords)
    }

    /// All characters of the parent restricting to `gamma`; there are `[G:H]` of them.
    pub fn character_extensions(&self, gamma: &DualElement) -> Result<Vec<DualElement>> {
        let target = self.canonical.char_index_of(gamma)?;
        Ok((0..self.parent.size())
            .filter(|&chi| self.restrict_index(chi) == target)
            .map(|chi| self.parent.character_at(chi))
            .collect())
    }
}
