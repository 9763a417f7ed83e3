//! Dense subsets of Z_p^n and the additive operations on them.

use std::cmp::Ordering;
use std::fmt;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Subgroup};

/// A subset of Z_p^n stored as a membership bitmap over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseSet {
    group: GroupSpec,
    words: Vec<u64>,
    card: usize,
}

impl DenseSet {
    pub fn empty(group: GroupSpec) -> Self {
        DenseSet { group, words: vec![0; group.size().div_ceil(64)], card: 0 }
    }

    pub fn full(group: GroupSpec) -> Self {
        Self::from_indices_unchecked(group, 0..group.size())
    }

    pub fn from_indices(group: GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            group.check_index(i)?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_coords<V: AsRef<[u32]>>(group: GroupSpec, coords: impl IntoIterator<Item = V>) -> Result<Self> {
        let mut s = Self::empty(group);
        for c in coords {
            s.insert(group.encode(c.as_ref())?);
        }
        Ok(s)
    }

    pub fn from_elements<'a>(group: GroupSpec, elems: impl IntoIterator<Item = &'a Element>) -> Result<Self> {
        let mut s = Self::empty(group);
        for e in elems {
            if e.group() != group {
                return Err(Error::GroupMismatch(group, e.group()));
            }
            s.insert(e.index());
        }
        Ok(s)
    }

    pub(crate) fn from_indices_unchecked(group: GroupSpec, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(group);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub(crate) fn from_words(group: GroupSpec, words: Vec<u64>) -> Self {
        let card = words.iter().map(|w| w.count_ones() as usize).sum();
        DenseSet { group, words, card }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.card += 1;
        }
    }

    #[inline]
    pub(crate) fn remove(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.words[w] >> b & 1 == 1 {
            self.words[w] &= !(1 << b);
            self.card -= 1;
        }
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains_idx(&self, i: usize) -> bool {
        i < self.group.size() && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.group() == self.group && self.contains_idx(x.index())
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.iter().map(|i| self.group.element(i).expect("member index in range"))
    }

    pub fn to_coords(&self) -> Vec<Vec<u32>> {
        self.iter().map(|i| self.group.coords(i)).collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn with(&self, i: usize) -> Result<DenseSet> {
        self.group.check_index(i)?;
        let mut s = self.clone();
        s.insert(i);
        Ok(s)
    }

    pub fn without(&self, i: usize) -> DenseSet {
        let mut s = self.clone();
        if i < self.group.size() {
            s.remove(i);
        }
        s
    }

    fn same_group(&self, other: &DenseSet) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.group, other.group))
        }
    }

    fn zip_words(&self, other: &DenseSet, f: impl Fn(u64, u64) -> u64) -> Result<DenseSet> {
        self.same_group(other)?;
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        Ok(DenseSet::from_words(self.group, words))
    }

    pub fn union(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn minus(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> DenseSet {
        let mut out = DenseSet::full(self.group);
        for i in self.iter() {
            out.remove(i);
        }
        out
    }

    pub fn is_disjoint(&self, other: &DenseSet) -> bool {
        self.group == other.group && self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &DenseSet) -> bool {
        self.group == other.group && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `A + B`. Iterates the smaller operand and ORs in translates of the larger.
    pub fn sumset(&self, other: &DenseSet) -> Result<DenseSet> {
        self.same_group(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let g = self.group;
        let mut out = DenseSet::empty(g);
        let large_members: Vec<usize> = large.iter().collect();
        for a in small.iter() {
            for &b in &large_members {
                out.insert(g.add_idx(a, b));
            }
            if out.len() == g.size() {
                break;
            }
        }
        Ok(out)
    }

    /// `2A = A + A`.
    pub fn double(&self) -> DenseSet {
        self.sumset(self).expect("same group")
    }

    /// `A - B`.
    pub fn difference_set(&self, other: &DenseSet) -> Result<DenseSet> {
        self.same_group(other)?;
        self.sumset(&other.negate())
    }

    pub fn translate(&self, g: &Element) -> Result<DenseSet> {
        if g.group() != self.group {
            return Err(Error::GroupMismatch(self.group, g.group()));
        }
        Ok(self.translate_idx(g.index()))
    }

    pub fn translate_idx(&self, g: usize) -> DenseSet {
        DenseSet::from_indices_unchecked(self.group, self.iter().map(|a| self.group.add_idx(a, g)))
    }

    pub fn negate(&self) -> DenseSet {
        DenseSet::from_indices_unchecked(self.group, self.iter().map(|a| self.group.neg_idx(a)))
    }

    /// `cA` for a scalar `c`.
    pub fn scale(&self, c: u32) -> DenseSet {
        DenseSet::from_indices_unchecked(self.group, self.iter().map(|a| self.group.smul_idx(c, a)))
    }

    /// `pi(A) = {g : A + g = A}`. The empty set is stabilized by every `g`.
    pub fn period(&self) -> Subgroup {
        let g = self.group;
        let Some(a0) = self.first() else {
            return Subgroup::whole(g);
        };
        // a stabilizer must move a0 into A
        let stab = self
            .iter()
            .map(|a| g.sub_idx(a, a0))
            .filter(|&t| self.iter().all(|a| self.contains_idx(g.add_idx(a, t))));
        Subgroup::span_indices(g, stab)
    }

    pub fn is_periodic(&self) -> bool {
        self.period().order() > 1
    }

    /// Whether `A` is a union of `H`-cosets.
    pub fn is_h_periodic(&self, h: &Subgroup) -> Result<bool> {
        if h.group() != self.group {
            return Err(Error::GroupMismatch(self.group, h.group()));
        }
        let g = self.group;
        Ok(h.basis().iter().all(|row| {
            let b = g.encode_unchecked(row);
            self.iter().all(|a| self.contains_idx(g.add_idx(a, b)))
        }))
    }

    /// `A + H`.
    pub fn add_subgroup(&self, h: &Subgroup) -> Result<DenseSet> {
        self.sumset(h.members())
    }

    /// `(|A_0|, ..., |A_{p-1}|)` with `A_i = (A - ie) ∩ H`.
    pub fn coset_profile(&self, h: &Subgroup, e: &Element) -> Result<Vec<usize>> {
        if h.group() != self.group {
            return Err(Error::GroupMismatch(self.group, h.group()));
        }
        if e.group() != self.group {
            return Err(Error::GroupMismatch(self.group, e.group()));
        }
        if !h.is_maximal_proper() {
            return Err(Error::NotMaximalSubgroup);
        }
        if h.contains(e) {
            return Err(Error::ElementInSubgroup);
        }
        Ok(self.coset_profile_unchecked(h, e.index()))
    }

    pub(crate) fn coset_profile_unchecked(&self, h: &Subgroup, e: usize) -> Vec<usize> {
        let g = self.group;
        (0..g.p())
            .map(|i| {
                let ie = g.smul_idx(i, e);
                self.iter().filter(|&a| h.contains_idx(g.sub_idx(a, ie))).count()
            })
            .collect()
    }

    /// Ascending-index comparison of member lists: the set whose sorted
    /// element list is lexicographically smaller compares less.
    pub fn cmp_lex(&self, other: &DenseSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for DenseSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DenseSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then_with(|| self.cmp_lex(other))
    }
}

impl fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.group)?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized form: the member coordinate vectors in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SetRecord {
    pub size: usize,
    pub elements: Vec<Vec<u32>>,
}

impl From<&DenseSet> for SetRecord {
    fn from(s: &DenseSet) -> Self {
        SetRecord { size: s.len(), elements: s.to_coords() }
    }
}

/// Both sides of Kneser's bound for `A_1 + ... + A_k`.
#[derive(Debug, Clone)]
pub struct KneserReport {
    pub sets: Vec<DenseSet>,
    pub sum: DenseSet,
    pub period: Subgroup,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct KneserRecord {
    pub set_sizes: Vec<usize>,
    pub sum_size: usize,
    pub period_order: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl KneserReport {
    pub fn record(&self) -> KneserRecord {
        KneserRecord {
            set_sizes: self.sets.iter().map(DenseSet::len).collect(),
            sum_size: self.sum.len(),
            period_order: self.period.order(),
            lhs: self.lhs,
            rhs: self.rhs,
            holds: self.holds,
        }
    }
}

/// Computes `|A_1 + ... + A_k|` against `sum |A_i + H| - (k-1)|H|`,
/// `H` the period of the sum.
pub fn kneser_verify(sets: &[DenseSet]) -> Result<KneserReport> {
    if sets.len() < 2 {
        return Err(Error::TooFewSets(sets.len()));
    }
    let group = sets[0].group();
    for (i, s) in sets.iter().enumerate() {
        if s.group() != group {
            return Err(Error::GroupMismatch(group, s.group()));
        }
        if s.is_empty() {
            return Err(Error::EmptySet(i));
        }
    }
    let mut sum = sets[0].clone();
    for s in &sets[1..] {
        sum = sum.sumset(s)?;
    }
    let period = sum.period();
    let h = period.order() as i64;
    let mut rhs = -((sets.len() as i64 - 1) * h);
    for s in sets {
        rhs += s.add_subgroup(&period)?.len() as i64;
    }
    let lhs = sum.len() as i64;
    Ok(KneserReport { sets: sets.to_vec(), sum, period, lhs, rhs, holds: lhs >= rhs })
}
