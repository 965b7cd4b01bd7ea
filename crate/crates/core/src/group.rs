//! Finite abelian groups `Z_{n_1} x ... x Z_{n_d}`, their elements and characters.
//!
//! Elements and characters share the same mixed-radix coordinates. The bijection
//! between coordinate tuples and indices `0..|G|` (last coordinate fastest) is the
//! enumeration order used for every function table and LP row in the crate.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest group accepted by [`GroupSpec::new`].
pub const MAX_GROUP_SIZE: usize = 1 << 22;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite abelian group given by its cyclic factor orders, with counting Haar measure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
    exponent: u64,
}

/// An element of a [`GroupSpec`], as reduced residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

/// A character of a [`GroupSpec`]; `y` acts as `x -> exp(2πi Σ y_j x_j / n_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl DualElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{:?}", self.0)
    }
}

impl GroupSpec {
    /// Builds `Z_{n_1} x ... x Z_{n_d}`. Every order must be at least 1.
    pub fn new(orders: &[i64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidSpec("no cyclic factors given".into()));
        }
        let mut checked = Vec::with_capacity(orders.len());
        let mut size: usize = 1;
        for &n in orders {
            if n < 1 {
                return Err(Error::InvalidSpec(format!("cyclic order {n} is not positive")));
            }
            size = size
                .checked_mul(n as usize)
                .filter(|&s| s <= MAX_GROUP_SIZE)
                .ok_or_else(|| Error::InvalidSpec(format!("group larger than {MAX_GROUP_SIZE}")))?;
            checked.push(n as u64);
        }
        Ok(Self::from_orders(checked))
    }

    pub(crate) fn from_orders(orders: Vec<u64>) -> Self {
        let mut strides = vec![1usize; orders.len()];
        for j in (0..orders.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * orders[j + 1] as usize;
        }
        let size = orders.iter().map(|&n| n as usize).product();
        let exponent = orders.iter().fold(1u64, |l, &n| l / gcd(l, n) * n);
        Self { orders, strides, size, exponent }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`, which is also the Haar measure of `G`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> DualElement {
        DualElement(vec![0; self.rank()])
    }

    fn reduce(&self, coords: &[i64]) -> Result<Vec<u64>> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "tuple of length {} for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(coords.iter().zip(&self.orders).map(|(&c, &n)| c.rem_euclid(n as i64) as u64).collect())
    }

    /// Element with the given coordinates, reduced modulo the factor orders.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.reduce(coords).map(GroupElement)
    }

    /// Character with the given coordinates, reduced modulo the factor orders.
    pub fn character(&self, coords: &[i64]) -> Result<DualElement> {
        self.reduce(coords).map(DualElement)
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.rank() || coords.iter().zip(&self.orders).any(|(&c, &n)| c >= n) {
            return Err(Error::GroupMismatch(format!(
                "{coords:?} is not a reduced tuple for orders {:?}",
                self.orders
            )));
        }
        Ok(())
    }

    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        self.check_coords(&x.0)
    }

    pub fn check_character(&self, y: &DualElement) -> Result<()> {
        self.check_coords(&y.0)
    }

    pub(crate) fn encode(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    pub(crate) fn decode(&self, index: usize) -> Vec<u64> {
        self.orders.iter().zip(&self.strides).map(|(&n, &s)| ((index / s) % n as usize) as u64).collect()
    }

    /// Mixed-radix rank of `x`.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check_element(x)?;
        Ok(self.encode(&x.0))
    }

    pub fn char_index_of(&self, y: &DualElement) -> Result<usize> {
        self.check_character(y)?;
        Ok(self.encode(&y.0))
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement(self.decode(index))
    }

    pub fn character_at(&self, index: usize) -> DualElement {
        DualElement(self.decode(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(|i| self.element_at(i))
    }

    pub fn characters(&self) -> impl Iterator<Item = DualElement> + '_ {
        (0..self.size).map(|i| self.character_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(GroupElement(a.0.iter().zip(&b.0).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect()))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        Ok(GroupElement(a.0.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect()))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// `k * a` for an integer multiplier.
    pub fn scale(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((k as i128 * x as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        ))
    }

    pub(crate) fn add_index(&self, a: usize, b: usize) -> usize {
        let (mut out, mut ia, mut ib) = (0, a, b);
        for j in (0..self.rank()).rev() {
            let n = self.orders[j] as usize;
            out += ((ia % n + ib % n) % n) * self.strides[j];
            ia /= n;
            ib /= n;
        }
        out
    }

    pub(crate) fn neg_index(&self, a: usize) -> usize {
        let (mut out, mut ia) = (0, a);
        for j in (0..self.rank()).rev() {
            let n = self.orders[j] as usize;
            out += ((n - ia % n) % n) * self.strides[j];
            ia /= n;
        }
        out
    }

    pub(crate) fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    /// The conjugate character `χ̄`, which is `-y` in coordinates.
    pub fn conj_character(&self, y: &DualElement) -> Result<DualElement> {
        self.check_character(y)?;
        Ok(DualElement(y.0.iter().zip(&self.orders).map(|(&c, &n)| (n - c) % n).collect()))
    }

    pub fn mul_characters(&self, a: &DualElement, b: &DualElement) -> Result<DualElement> {
        self.check_character(a)?;
        self.check_character(b)?;
        Ok(DualElement(a.0.iter().zip(&b.0).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect()))
    }

    /// Exact phase numerator `t` with `χ_y(x) = exp(2πi t / exponent)`.
    pub(crate) fn phase_coords(&self, y: &[u64], x: &[u64]) -> u64 {
        let l = self.exponent as u128;
        let t: u128 = y
            .iter()
            .zip(x)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| (a as u128 * b as u128 % n as u128) * (l / n as u128))
            .sum();
        (t % l) as u64
    }

    /// Evaluates the character `y` at `x`.
    pub fn char_eval(&self, y: &DualElement, x: &GroupElement) -> Result<Complex64> {
        self.check_character(y)?;
        self.check_element(x)?;
        Ok(unit_root(self.phase_coords(&y.0, &x.0), self.exponent))
    }
}

/// `exp(2πi t / l)` evaluated from the reduced rational phase.
pub(crate) fn unit_root(t: u64, l: u64) -> Complex64 {
    let t = t % l;
    if t == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * t == l {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * t == l {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * t == 3 * l {
        return Complex64::new(0.0, -1.0);
    }
    // cos and sin are computed on the folded phase so conjugate pairs are exact mirrors.
    let folded = t.min(l - t);
    let angle = TAU * folded as f64 / l as f64;
    let sign = if folded == t { 1.0 } else { -1.0 };
    Complex64::new(angle.cos(), sign * angle.sin())
}

/// Precomputed coordinates and roots of unity for repeated character evaluation.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    spec: GroupSpec,
    digits: Vec<Vec<u64>>,
    roots: Vec<Complex64>,
}

impl CharacterTable {
    pub fn new(spec: &GroupSpec) -> Self {
        let digits = (0..spec.size()).map(|i| spec.decode(i)).collect();
        let l = spec.exponent();
        let roots = (0..l).map(|t| unit_root(t, l)).collect();
        Self { spec: spec.clone(), digits, roots }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Phase numerator of character index `y` at element index `x`.
    pub fn phase(&self, y: usize, x: usize) -> u64 {
        self.spec.phase_coords(&self.digits[y], &self.digits[x])
    }

    /// `χ_y(x)` by indices.
    pub fn value(&self, y: usize, x: usize) -> Complex64 {
        self.roots[self.phase(y, x) as usize]
    }

    /// Real part `cos(2π t / exponent)`; even in `x` bit for bit.
    pub fn cos(&self, y: usize, x: usize) -> f64 {
        self.roots[self.phase(y, x) as usize].re
    }
}
