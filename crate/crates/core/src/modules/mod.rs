//! Truncated weight modules: finite windows of Verma modules and of
//! intermediate-series modules, with exact generator actions.
//!
//! Leaving the window is always an error, never a silent zero: a zero there
//! would fabricate kernel vectors. Weights that are not in the module at all
//! (off the weight lattice, or above the highest weight of a Verma module)
//! carry the zero space and act trivially.

mod partitions;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;

pub use partitions::partitions;

use crate::lie::{Generator, LieElement, Virasoro};
use crate::linalg::{self, Matrix};
use crate::pbw::{rational_roots_of, OrderSpec, UEAElement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("weight {weight} lies outside the truncation window")]
    OutOfWindow { weight: String },
    #[error("vector at weight {weight} references basis label {label} not in that weight space")]
    NotInModule { weight: String, label: String },
    #[error("operator is not homogeneous; degrees {0:?}")]
    NotHomogeneous(Vec<i64>),
    #[error("scalar overflow while converting {0}")]
    Overflow(String),
}

/// Which module a truncation was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family<S> {
    /// Weight spaces `h - n` for `0 <= n <= depth`.
    Verma { h: S, chi: S, depth: u32 },
    /// Basis `v_k`, `k_min <= k <= k_max`, with `e_n v_k = (a + k + n b) v_{k+n}` and `c = 0`.
    IntermediateSeries { a: S, b: S, k_min: i64, k_max: i64 },
}

/// Basis vector label inside a weight space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    /// `e_{-p_1} ... e_{-p_k} v_hw` with `p_1 >= ... >= p_k >= 1`.
    Partition(Vec<u32>),
    /// `v_k` of the intermediate series.
    Series(i64),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Partition(p) if p.is_empty() => f.write_str("v"),
            BasisLabel::Partition(p) => {
                for part in p {
                    write!(f, "e(-{part})*")?;
                }
                f.write_str("v")
            }
            BasisLabel::Series(k) => write!(f, "v[{k}]"),
        }
    }
}

/// A vector inside a single weight space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector<S> {
    weight: S,
    coords: BTreeMap<BasisLabel, S>,
}

impl<S: Scalar> WeightVector<S> {
    pub fn zero(weight: S) -> Self {
        Self {
            weight,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(weight: S, label: BasisLabel) -> Self {
        let mut v = Self::zero(weight);
        v.add_coord(label, S::one());
        v
    }

    pub fn from_coords(weight: S, coords: impl IntoIterator<Item = (BasisLabel, S)>) -> Self {
        let mut v = Self::zero(weight);
        for (l, s) in coords {
            v.add_coord(l, s);
        }
        v
    }

    fn add_coord(&mut self, label: BasisLabel, s: S) {
        if s.is_zero() {
            return;
        }
        let sum = self.coords.get(&label).cloned().unwrap_or_else(S::zero) + s;
        if sum.is_zero() {
            self.coords.remove(&label);
        } else {
            self.coords.insert(label, sum);
        }
    }

    pub fn weight(&self) -> &S {
        &self.weight
    }

    pub fn coords(&self) -> &BTreeMap<BasisLabel, S> {
        &self.coords
    }

    pub fn coord(&self, label: &BasisLabel) -> S {
        self.coords.get(label).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Panics when the weights differ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight, "adding vectors of different weights");
        let mut out = self.clone();
        for (l, s) in &other.coords {
            out.add_coord(l.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_coords(
            self.weight.clone(),
            self.coords.iter().map(|(l, s)| (l.clone(), s.clone() * k.clone())),
        )
    }

    /// `self = k * other` for some `k`; returns `k` (`None` when not proportional).
    pub fn ratio_to(&self, other: &Self) -> Option<S> {
        if other.is_zero() {
            return self.is_zero().then(S::zero);
        }
        let (l, s) = other.coords.iter().next().expect("nonzero");
        let k = self.coord(l) / s.clone();
        (other.scale(&k) == *self).then_some(k)
    }
}

impl<S: Scalar> fmt::Display for WeightVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0 @ {}", self.weight);
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(l, s)| format!("({s})*{l}"))
            .collect();
        write!(f, "{} @ {}", parts.join(" + "), self.weight)
    }
}

/// Solution of `e_1 x = 0`, `e_{-1} y = 0`, `x = e_{-2} y`, `e_2 x = tau y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalPair<S> {
    pub x: WeightVector<S>,
    pub y: WeightVector<S>,
    pub tau: S,
}

/// Where a weight sits relative to the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Level(i64),
    /// The module's weight space is genuinely zero there.
    Zero,
    Outside,
}

/// A finite window of weight spaces with exact generator actions.
#[derive(Clone, Debug)]
pub struct TruncatedWeightModule<S> {
    family: Family<S>,
    alg: Virasoro<S>,
    // level -> basis, levels ascending
    spaces: BTreeMap<i64, Vec<BasisLabel>>,
    // images of e_{+-1}, e_{+-2} on every basis vector whose image stays in the window
    cache: BTreeMap<(i64, BasisLabel), WeightVector<S>>,
}

const CACHED: [i64; 4] = [-2, -1, 1, 2];

impl<S: Scalar> TruncatedWeightModule<S> {
    pub fn verma(h: S, chi: S, depth: u32) -> Self {
        Self::verma_with(Virasoro::standard(), h, chi, depth)
    }

    /// Verma module of a possibly perturbed algebra.
    pub fn verma_with(alg: Virasoro<S>, h: S, chi: S, depth: u32) -> Self {
        let spaces = (0..=depth)
            .map(|n| {
                let basis = partitions(n).into_iter().map(BasisLabel::Partition).collect();
                (n as i64, basis)
            })
            .collect();
        Self::build(Family::Verma { h, chi, depth }, alg, spaces)
    }

    /// An empty window (`k_min > k_max`) gives the zero module.
    pub fn intermediate_series(a: S, b: S, k_min: i64, k_max: i64) -> Self {
        let spaces = (k_min..=k_max)
            .map(|k| (k, vec![BasisLabel::Series(k)]))
            .collect();
        Self::build(
            Family::IntermediateSeries { a, b, k_min, k_max },
            Virasoro::standard(),
            spaces,
        )
    }

    fn build(family: Family<S>, alg: Virasoro<S>, spaces: BTreeMap<i64, Vec<BasisLabel>>) -> Self {
        let mut m = Self {
            family,
            alg,
            spaces,
            cache: BTreeMap::new(),
        };
        let mut cache = BTreeMap::new();
        for (level, basis) in &m.spaces {
            for label in basis {
                for j in CACHED {
                    if let Ok(img) = m.compute_action(j, *level, label) {
                        cache.insert((j, label.clone()), img);
                    }
                }
            }
        }
        m.cache = cache;
        m
    }

    pub fn family(&self) -> &Family<S> {
        &self.family
    }

    pub fn algebra(&self) -> &Virasoro<S> {
        &self.alg
    }

    /// Scalar by which `c` acts.
    pub fn central_charge(&self) -> S {
        match &self.family {
            Family::Verma { chi, .. } => chi.clone(),
            Family::IntermediateSeries { .. } => S::zero(),
        }
    }

    fn level_weight(&self, level: i64) -> S {
        match &self.family {
            Family::Verma { h, .. } => h.clone() - S::from_int(level),
            Family::IntermediateSeries { a, .. } => a.clone() + S::from_int(level),
        }
    }

    fn slot(&self, weight: &S) -> Slot {
        match &self.family {
            Family::Verma { h, depth, .. } => match (h.clone() - weight.clone()).as_i64() {
                None => Slot::Zero,
                Some(n) if n < 0 => Slot::Zero,
                Some(n) if n > *depth as i64 => Slot::Outside,
                Some(n) => Slot::Level(n),
            },
            Family::IntermediateSeries { a, k_min, k_max, .. } => {
                match (weight.clone() - a.clone()).as_i64() {
                    None => Slot::Zero,
                    Some(k) if k < *k_min || k > *k_max => Slot::Outside,
                    Some(k) => Slot::Level(k),
                }
            }
        }
    }

    fn level_shift(&self, j: i64) -> i64 {
        match self.family {
            Family::Verma { .. } => -j,
            Family::IntermediateSeries { .. } => j,
        }
    }

    fn out_of_window(weight: &S) -> ModuleError {
        ModuleError::OutOfWindow {
            weight: weight.to_string(),
        }
    }

    /// Basis labels of the weight space at `weight` (empty for zero spaces).
    pub fn basis_at(&self, weight: &S) -> Result<Vec<BasisLabel>, ModuleError> {
        match self.slot(weight) {
            Slot::Level(l) => Ok(self.spaces[&l].clone()),
            Slot::Zero => Ok(Vec::new()),
            Slot::Outside => Err(Self::out_of_window(weight)),
        }
    }

    /// Every basis vector in the window, by ascending level.
    pub fn basis_vectors(&self) -> Vec<WeightVector<S>> {
        self.spaces
            .iter()
            .flat_map(|(l, basis)| {
                let w = self.level_weight(*l);
                basis
                    .iter()
                    .map(move |b| WeightVector::basis(w.clone(), b.clone()))
            })
            .collect()
    }

    /// The highest weight vector of a Verma module.
    pub fn highest_weight_vector(&self) -> Option<WeightVector<S>> {
        match &self.family {
            Family::Verma { h, .. } => Some(WeightVector::basis(
                h.clone(),
                BasisLabel::Partition(Vec::new()),
            )),
            Family::IntermediateSeries { .. } => None,
        }
    }

    pub fn weight_dims(&self) -> BTreeMap<S, usize> {
        self.spaces
            .iter()
            .map(|(l, b)| (self.level_weight(*l), b.len()))
            .collect()
    }

    pub fn support(&self) -> BTreeSet<S> {
        self.weight_dims()
            .into_iter()
            .filter(|(_, d)| *d > 0)
            .map(|(w, _)| w)
            .collect()
    }

    // Image of a basis vector under e_j, j != 0.
    fn compute_action(&self, j: i64, level: i64, label: &BasisLabel) -> Result<WeightVector<S>, ModuleError> {
        let target_weight = self.level_weight(level) + S::from_int(j);
        let target = match self.slot(&target_weight) {
            Slot::Outside => return Err(Self::out_of_window(&target_weight)),
            Slot::Zero => return Ok(WeightVector::zero(target_weight)),
            Slot::Level(t) => t,
        };
        debug_assert_eq!(target, level + self.level_shift(j));
        match (&self.family, label) {
            (Family::IntermediateSeries { a, b, .. }, BasisLabel::Series(k)) => {
                let k2 = S::from_int(*k);
                let coeff = a.clone() + k2 + S::from_int(j) * b.clone();
                Ok(WeightVector::from_coords(
                    target_weight,
                    [(BasisLabel::Series(k + j), coeff)],
                ))
            }
            (Family::Verma { h, chi, .. }, BasisLabel::Partition(parts)) => {
                let mut word = vec![j];
                word.extend(parts.iter().map(|&p| -(p as i64)));
                let nf = self
                    .alg
                    .normalize_words([(word, 0, S::one())], &OrderSpec::hw());
                let mut out = WeightVector::zero(target_weight);
                for (m, s) in nf.terms() {
                    // positive generators sit rightmost and kill v_hw
                    if m.indices().any(|i| i > 0) {
                        continue;
                    }
                    let parts: Vec<u32> = m
                        .expanded()
                        .into_iter()
                        .filter(|&i| i < 0)
                        .map(|i| (-i) as u32)
                        .collect();
                    let k = h.pow(m.e0_power()) * chi.pow(m.central_exp());
                    out.add_coord(BasisLabel::Partition(parts), s.clone() * k);
                }
                Ok(out)
            }
            _ => unreachable!("label kind matches family"),
        }
    }

    fn check_vector(&self, v: &WeightVector<S>) -> Result<Slot, ModuleError> {
        let slot = self.slot(&v.weight);
        let allowed: &[BasisLabel] = match slot {
            Slot::Outside => return Err(Self::out_of_window(&v.weight)),
            Slot::Zero => &[],
            Slot::Level(l) => &self.spaces[&l],
        };
        for label in v.coords.keys() {
            if !allowed.contains(label) {
                return Err(ModuleError::NotInModule {
                    weight: v.weight.to_string(),
                    label: label.to_string(),
                });
            }
        }
        Ok(slot)
    }

    /// `g . v`. Fails when the image would leave the window.
    pub fn act(&self, g: Generator, v: &WeightVector<S>) -> Result<WeightVector<S>, ModuleError> {
        let slot = self.check_vector(v)?;
        let j = match g {
            Generator::C => return Ok(v.scale(&self.central_charge())),
            Generator::E(0) => return Ok(v.scale(&v.weight)),
            Generator::E(j) => j,
        };
        let target_weight = v.weight.clone() + S::from_int(j);
        if self.slot(&target_weight) == Slot::Outside {
            return Err(Self::out_of_window(&target_weight));
        }
        let mut out = WeightVector::zero(target_weight);
        let Slot::Level(level) = slot else {
            return Ok(out);
        };
        for (label, s) in &v.coords {
            let img = match self.cache.get(&(j, label.clone())) {
                Some(img) => img.clone(),
                None => self.compute_action(j, level, label)?,
            };
            out = out.add(&img.scale(s));
        }
        Ok(out)
    }

    /// Action of a homogeneous Lie algebra element.
    pub fn act_lie(&self, x: &LieElement<S>, v: &WeightVector<S>) -> Result<WeightVector<S>, ModuleError> {
        let degrees: BTreeSet<i64> = x.terms().map(|(g, _)| g.degree()).collect();
        if degrees.len() > 1 {
            return Err(ModuleError::NotHomogeneous(degrees.into_iter().collect()));
        }
        let d = degrees.into_iter().next().unwrap_or(0);
        let mut out = WeightVector::zero(v.weight.clone() + S::from_int(d));
        for (g, s) in x.terms() {
            out = out.add(&self.act(g, v)?.scale(s));
        }
        Ok(out)
    }

    /// Applies a word of generators right to left.
    pub fn apply_word(&self, word: &[Generator], v: &WeightVector<S>) -> Result<WeightVector<S>, ModuleError> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.act(*g, &cur)?;
        }
        Ok(cur)
    }

    /// Action of a homogeneous element of `U(V)`, monomial by monomial.
    pub fn act_element(&self, u: &UEAElement<S>, v: &WeightVector<S>) -> Result<WeightVector<S>, ModuleError> {
        let degrees: BTreeSet<i64> = u.terms().map(|(m, _)| m.degree()).collect();
        if degrees.len() > 1 {
            return Err(ModuleError::NotHomogeneous(degrees.into_iter().collect()));
        }
        let d = degrees.into_iter().next().unwrap_or(0);
        self.check_vector(v)?;
        let mut out = WeightVector::zero(v.weight.clone() + S::from_int(d));
        for (m, s) in u.terms() {
            let mut word: Vec<Generator> = m.expanded().into_iter().map(Generator::E).collect();
            word.extend(std::iter::repeat(Generator::C).take(m.central_exp() as usize));
            out = out.add(&self.apply_word(&word, v)?.scale(s));
        }
        Ok(out)
    }

    fn to_vector(&self, weight: &S, basis: &[BasisLabel], x: &[BigRational]) -> Result<WeightVector<S>, ModuleError> {
        let mut coords = Vec::with_capacity(basis.len());
        for (l, q) in basis.iter().zip(x) {
            let s = S::from_rational(q).ok_or_else(|| ModuleError::Overflow(q.to_string()))?;
            coords.push((l.clone(), s));
        }
        Ok(WeightVector::from_coords(weight.clone(), coords))
    }

    /// Matrix of a word operator from the space at `weight` to its target space.
    fn word_matrix(&self, word: &[Generator], weight: &S, basis: &[BasisLabel]) -> Result<Matrix, ModuleError> {
        let degree: i64 = word.iter().map(|g| g.degree()).sum();
        let target = weight.clone() + S::from_int(degree);
        let target_basis = self.basis_at(&target)?;
        let mut rows = vec![vec![BigRational::zero(); basis.len()]; target_basis.len()];
        for (col, label) in basis.iter().enumerate() {
            let img = self.apply_word(word, &WeightVector::basis(weight.clone(), label.clone()))?;
            for (row, tl) in target_basis.iter().enumerate() {
                rows[row][col] = img.coord(tl).to_rational();
            }
        }
        Ok(rows)
    }

    /// Joint kernel of several word operators on the space at `weight`.
    pub fn kernel_of_words(&self, weight: &S, words: &[Vec<Generator>]) -> Result<Vec<WeightVector<S>>, ModuleError> {
        let basis = self.basis_at(weight)?;
        let mut rows = Matrix::new();
        for w in words {
            rows.extend(self.word_matrix(w, weight, &basis)?);
        }
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        linalg::nullspace(&rows, basis.len())
            .iter()
            .map(|x| self.to_vector(weight, &basis, x))
            .collect()
    }

    /// Basis of the joint kernel of the probe generators on the weight space at `weight`.
    pub fn kernel(&self, weight: &S, probes: &[Generator]) -> Result<Vec<WeightVector<S>>, ModuleError> {
        let words: Vec<Vec<Generator>> = probes.iter().map(|g| vec![*g]).collect();
        self.kernel_of_words(weight, &words)
    }

    /// Rank of the stacked probe matrix at `weight`.
    pub fn probe_rank(&self, weight: &S, probes: &[Generator]) -> Result<usize, ModuleError> {
        let basis = self.basis_at(weight)?;
        let mut rows = Matrix::new();
        for g in probes {
            rows.extend(self.word_matrix(&[*g], weight, &basis)?);
        }
        Ok(linalg::rank(&rows, basis.len()))
    }

    /// `e_1 v = e_2 v = 0`.
    pub fn hw_detector(&self, v: &WeightVector<S>) -> Result<bool, ModuleError> {
        Ok(self.act(Generator::E(1), v)?.is_zero() && self.act(Generator::E(2), v)?.is_zero())
    }

    /// `e_{-1} v = e_{-2} v = 0`.
    pub fn lw_detector(&self, v: &WeightVector<S>) -> Result<bool, ModuleError> {
        Ok(self.act(Generator::E(-1), v)?.is_zero() && self.act(Generator::E(-2), v)?.is_zero())
    }

    /// All rays `y` at weight `mu + 1` with `e_{-1} y = 0`, `x = e_{-2} y`,
    /// `e_1 x = 0` and `e_2 x = tau y`.
    ///
    /// Eigenvalues of `e_2 e_{-2}` are searched among the rationals only. When
    /// an eigenspace has dimension above one, a basis of it is returned.
    pub fn extremal_pair_search(&self, mu: &S) -> Result<Vec<ExtremalPair<S>>, ModuleError> {
        let one = S::one();
        let y_weight = mu.clone() + one.clone();
        let x_weight = mu.clone() - one.clone();
        for w in [&y_weight, mu, &x_weight] {
            self.basis_at(w)?;
        }
        let (e1, e2, em1, em2) = (
            Generator::E(1),
            Generator::E(2),
            Generator::E(-1),
            Generator::E(-2),
        );
        let conditions = vec![vec![em1], vec![e1, em2]];
        let candidates = self.kernel_of_words(&y_weight, &conditions)?;
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
        let basis = self.basis_at(&y_weight)?;
        let t = self.word_matrix(&[e2, em2], &y_weight, &basis)?;
        let mut pairs = Vec::new();
        for tau in rational_roots_of(&linalg::charpoly(&t)) {
            let mut rows = Matrix::new();
            for w in &conditions {
                rows.extend(self.word_matrix(w, &y_weight, &basis)?);
            }
            rows.extend(t.iter().enumerate().map(|(i, row)| {
                let mut row = row.clone();
                row[i] -= &tau;
                row
            }));
            let tau_s = S::from_rational(&tau).ok_or_else(|| ModuleError::Overflow(tau.to_string()))?;
            for y in linalg::nullspace(&rows, basis.len()) {
                let y = self.to_vector(&y_weight, &basis, &y)?;
                let x = self.act(em2, &y)?;
                pairs.push(ExtremalPair {
                    x,
                    y,
                    tau: tau_s.clone(),
                });
            }
        }
        Ok(pairs)
    }

    /// Checks `[e_i, e_j] v = e_i (e_j v) - e_j (e_i v)` on every basis vector
    /// for `i, j` in `indices`. Cases whose images leave the window are
    /// skipped. Returns the number of comparisons and the first violation.
    pub fn bracket_compatibility(&self, indices: RangeInclusive<i64>) -> (usize, Option<String>) {
        let mut compared = 0;
        for v in self.basis_vectors() {
            for i in indices.clone() {
                for j in indices.clone() {
                    let (x, y) = (Generator::E(i), Generator::E(j));
                    let lhs = self.act_lie(&self.alg.bracket_gen(i, j), &v);
                    let xy = self.act(y, &v).and_then(|w| self.act(x, &w));
                    let yx = self.act(x, &v).and_then(|w| self.act(y, &w));
                    let (lhs, xy, yx) = match (lhs, xy, yx) {
                        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                        (a, b, c) => {
                            let errs = [a.err(), b.err(), c.err()];
                            match errs.into_iter().flatten().find(|e| !matches!(e, ModuleError::OutOfWindow { .. })) {
                                Some(e) => return (compared, Some(e.to_string())),
                                None => continue,
                            }
                        }
                    };
                    compared += 1;
                    let rhs = xy.sub(&yx);
                    if lhs != rhs && !(lhs.is_zero() && rhs.is_zero()) {
                        let msg = format!("[e({i}),e({j})] on {v}: {lhs}, commutator gives {rhs}");
                        return (compared, Some(msg));
                    }
                }
            }
        }
        (compared, None)
    }

    /// First basis vector on which `e_0` is not its weight or `c` is not the
    /// central charge.
    pub fn cartan_defect(&self) -> Option<String> {
        let chi = self.central_charge();
        self.basis_vectors().into_iter().find_map(|v| {
            let e0 = self.act(Generator::E(0), &v);
            let c = self.act(Generator::C, &v);
            match (e0, c) {
                (Ok(a), Ok(b)) if a == v.scale(v.weight()) && b == v.scale(&chi) => None,
                (Ok(a), Ok(b)) => Some(format!("on {v}: e(0) gives {a}, c gives {b}")),
                (Err(e), _) | (_, Err(e)) => Some(format!("on {v}: {e}")),
            }
        })
    }

    /// Re-checks the four relations of a pair by direct action.
    pub fn check_extremal_pair(&self, p: &ExtremalPair<S>) -> Result<bool, ModuleError> {
        Ok(self.act(Generator::E(1), &p.x)?.is_zero()
            && self.act(Generator::E(-1), &p.y)?.is_zero()
            && self.act(Generator::E(-2), &p.y)? == p.x
            && self.act(Generator::E(2), &p.x)? == p.y.scale(&p.tau))
    }
}

#[cfg(test)]
mod tests;
