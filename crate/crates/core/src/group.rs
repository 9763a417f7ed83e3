//! Arithmetic in the elementary abelian group Z_p^n.
//!
//! Elements are stored as a single index in `[0, p^n)`: the base-p digits of
//! the index are the coordinates, coordinate 0 most significant. Every bitmap,
//! set file and canonical form in the crate uses this encoding.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::DenseSet;

/// Largest group handled by default (Z_5^6).
pub const DEFAULT_SIZE_LIMIT: usize = 15_625;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// The group Z_p^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    p: u32,
    n: u32,
    #[serde(skip)]
    size: usize,
}

impl GroupSpec {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::with_limit(p, n, DEFAULT_SIZE_LIMIT)
    }

    pub fn with_limit(p: u32, n: u32, limit: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 {
            return Err(Error::RankTooSmall(n));
        }
        let mut size: usize = 1;
        for _ in 0..n {
            size = size
                .checked_mul(p as usize)
                .filter(|&s| s <= limit)
                .ok_or(Error::SizeLimit { p, n, limit })?;
        }
        Ok(GroupSpec { p, n, size })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.n as usize
    }

    /// `p^k` as usize.
    pub fn pow(&self, k: u32) -> usize {
        (self.p as usize).pow(k)
    }

    pub fn zero(&self) -> Element {
        Element { group: *self, index: 0 }
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        self.check_index(index)?;
        Ok(Element { group: *self, index })
    }

    pub fn element_from_coords(&self, coords: &[u32]) -> Result<Element> {
        let index = self.encode(coords)?;
        Ok(Element { group: *self, index })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(move |index| Element { group: *self, index })
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size })
        }
    }

    pub fn encode(&self, coords: &[u32]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::WrongLength { got: coords.len(), expected: self.rank() });
        }
        let mut index = 0usize;
        for (position, &value) in coords.iter().enumerate() {
            if value >= self.p {
                return Err(Error::CoordinateOutOfRange { position, value, p: self.p });
            }
            index = index * self.p as usize + value as usize;
        }
        Ok(index)
    }

    pub fn decode(&self, index: usize) -> Result<Vec<u32>> {
        self.check_index(index)?;
        Ok(self.coords(index))
    }

    /// Coordinates of an index already known to be in range.
    pub fn coords(&self, mut index: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut v = vec![0u32; self.rank()];
        for slot in v.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        v
    }

    pub(crate) fn encode_unchecked(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut a = a;
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn smul_idx(&self, c: u32, a: usize) -> usize {
        let p = self.p as usize;
        let c = c as usize % p;
        let mut a = a;
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += (c * (a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    /// The standard bilinear pairing `c . x mod p` between two indices.
    #[inline]
    pub fn dot_idx(&self, c: usize, x: usize) -> u32 {
        let p = self.p as usize;
        let (mut c, mut x) = (c, x);
        let mut acc = 0usize;
        for _ in 0..self.n {
            acc += (c % p) * (x % p);
            c /= p;
            x /= p;
        }
        (acc % p) as u32
    }

    /// |GL(n, p)|.
    pub fn gl_order(&self) -> u128 {
        let q = self.size as u128;
        let mut order = 1u128;
        let mut pk = 1u128;
        for _ in 0..self.n {
            order *= q - pk;
            pk *= self.p as u128;
        }
        order
    }

    /// Lookup table for addition, for the search hot path.
    pub fn add_table(&self) -> AddTable {
        AddTable::new(*self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{}", self.p, self.n)
    }
}

/// Dense addition table when the group is small, digit arithmetic otherwise.
#[derive(Debug, Clone)]
pub struct AddTable {
    group: GroupSpec,
    table: Option<Vec<u16>>,
    neg: Vec<usize>,
}

impl AddTable {
    const MAX_TABLED: usize = 4096;

    fn new(group: GroupSpec) -> Self {
        let n = group.size();
        let table = (n <= Self::MAX_TABLED).then(|| {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = group.add_idx(a, b) as u16;
                }
            }
            t
        });
        let neg = (0..n).map(|a| group.neg_idx(a)).collect();
        AddTable { group, table, neg }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.group.size() + b] as usize,
            None => self.group.add_idx(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }
}

/// An element of a specific group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    group: GroupSpec,
    index: usize,
}

impl Element {
    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> Vec<u32> {
        self.group.coords(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_group(&self, other: &Element) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.group, other.group))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_group(other)?;
        Ok(Element { group: self.group, index: self.group.add_idx(self.index, other.index) })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_group(other)?;
        Ok(Element { group: self.group, index: self.group.sub_idx(self.index, other.index) })
    }

    pub fn neg(&self) -> Element {
        Element { group: self.group, index: self.group.neg_idx(self.index) }
    }

    pub fn smul(&self, c: u32) -> Result<Element> {
        if c >= self.group.p() {
            return Err(Error::ScalarOutOfRange(c));
        }
        Ok(Element { group: self.group, index: self.group.smul_idx(c, self.index) })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Reduced row echelon form of `rows` over GF(p). Returns the nonzero rows
/// and their pivot columns.
pub fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p * p - factor * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A subgroup of Z_p^n, i.e. a GF(p)-subspace.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: GroupSpec,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    members: DenseSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The smallest subgroup containing `gens`.
    pub fn span(group: GroupSpec, gens: &[Element]) -> Result<Subgroup> {
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            if g.group() != group {
                return Err(Error::GroupMismatch(group, g.group()));
            }
            rows.push(g.coords());
        }
        Ok(Self::from_rows(group, rows))
    }

    pub(crate) fn span_indices(group: GroupSpec, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let rows = gens.into_iter().map(|i| group.coords(i)).collect();
        Self::from_rows(group, rows)
    }

    fn from_rows(group: GroupSpec, rows: Vec<Vec<u32>>) -> Subgroup {
        let (basis, pivots) = if rows.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            rref(rows, group.p())
        };
        let mut members = vec![0usize];
        for row in &basis {
            let b = group.encode_unchecked(row);
            let mut next = Vec::with_capacity(members.len() * group.p() as usize);
            for c in 0..group.p() {
                let cb = group.smul_idx(c, b);
                next.extend(members.iter().map(|&m| group.add_idx(m, cb)));
            }
            members = next;
        }
        let members = DenseSet::from_indices_unchecked(group, members);
        Subgroup { group, basis, pivots, members }
    }

    pub fn trivial(group: GroupSpec) -> Subgroup {
        Self::from_rows(group, Vec::new())
    }

    pub fn whole(group: GroupSpec) -> Subgroup {
        let rows = (0..group.rank())
            .map(|i| {
                let mut r = vec![0; group.rank()];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_rows(group, rows)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    /// Basis rows in reduced echelon form.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &DenseSet {
        &self.members
    }

    #[inline]
    pub fn contains_idx(&self, x: usize) -> bool {
        self.members.contains_idx(x)
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.group() == self.group && self.contains_idx(x.index())
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.basis.len() == self.group.rank()
    }

    pub fn is_maximal_proper(&self) -> bool {
        self.basis.len() + 1 == self.group.rank()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.is_subset(&other.members)
    }

    /// Coordinates of `x + H` in the quotient, read off the non-pivot
    /// positions after clearing the pivot positions with the echelon basis.
    pub fn quotient_coords(&self, x: usize) -> Vec<u32> {
        let p = self.group.p();
        let mut v = self.group.coords(x);
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let f = v[piv];
            if f != 0 {
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj = (*vj + p - f * rj % p) % p;
                }
            }
        }
        (0..self.group.rank())
            .filter(|j| !self.pivots.contains(j))
            .map(|j| v[j])
            .collect()
    }

    /// The transversal element with the given quotient coordinates.
    pub fn coset_representative(&self, quotient: &[u32]) -> usize {
        let mut v = vec![0u32; self.group.rank()];
        let free = (0..self.group.rank()).filter(|j| !self.pivots.contains(j));
        for (j, &q) in free.zip(quotient) {
            v[j] = q;
        }
        self.group.encode_unchecked(&v)
    }

    /// Basis of the annihilator `{c : c . h = 0 for all h in H}`.
    pub fn annihilator(&self) -> Vec<Vec<u32>> {
        let p = self.group.p();
        let n = self.group.rank();
        (0..n)
            .filter(|j| !self.pivots.contains(j))
            .map(|free| {
                let mut c = vec![0u32; n];
                c[free] = 1;
                for (row, &piv) in self.basis.iter().zip(&self.pivots) {
                    c[piv] = (p - row[free]) % p;
                }
                c
            })
            .collect()
    }

    /// For a maximal proper subgroup, the defining functional normalized so its
    /// first nonzero coefficient is 1.
    pub fn functional(&self) -> Option<Vec<u32>> {
        if !self.is_maximal_proper() {
            return None;
        }
        let mut c = self.annihilator().pop()?;
        let lead = *c.iter().find(|&&v| v != 0)?;
        let inv = inv_mod(lead, self.group.p());
        for v in c.iter_mut() {
            *v = *v * inv % self.group.p();
        }
        Some(c)
    }
}

/// Kernel of the nonzero functional `c` (given as an index).
pub fn kernel_of_functional(group: GroupSpec, c: usize) -> Subgroup {
    let cv = group.coords(c);
    let p = group.p();
    let lead = cv.iter().position(|&v| v != 0).expect("functional must be nonzero");
    let inv = inv_mod(cv[lead], p);
    let rows = (0..group.rank())
        .filter(|&k| k != lead)
        .map(|k| {
            let mut r = vec![0u32; group.rank()];
            r[k] = 1;
            r[lead] = (p - cv[k] * inv % p) % p;
            r
        })
        .collect::<Vec<_>>();
    if rows.is_empty() {
        Subgroup::trivial(group)
    } else {
        Subgroup::from_rows(group, rows)
    }
}

/// Normalized nonzero functionals (first nonzero coordinate equal to 1) in
/// ascending index order.
pub fn normalized_functionals(group: GroupSpec) -> Vec<usize> {
    (1..group.size())
        .filter(|&c| group.coords(c).into_iter().find(|&v| v != 0) == Some(1))
        .collect()
}

/// All index-p subgroups, ordered by the index of their normalized functional.
pub fn maximal_subgroups(group: GroupSpec) -> Vec<Subgroup> {
    normalized_functionals(group)
        .into_iter()
        .map(|c| kernel_of_functional(group, c))
        .collect()
}

/// An invertible linear map of Z_p^n, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    group: GroupSpec,
    rows: Vec<Vec<u32>>,
}

impl Automorphism {
    pub fn new(group: GroupSpec, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = group.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MatrixShape { expected: n });
        }
        let p = group.p();
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|v| v % p).collect()).collect();
        let (reduced, _) = rref(rows.clone(), p);
        if reduced.len() != n {
            return Err(Error::SingularMatrix);
        }
        Ok(Automorphism { group, rows })
    }

    /// The map sending standard basis vector `j` to `columns[j]`.
    pub fn from_columns(group: GroupSpec, columns: &[usize]) -> Result<Self> {
        let n = group.rank();
        if columns.len() != n {
            return Err(Error::MatrixShape { expected: n });
        }
        let cols: Vec<Vec<u32>> = columns.iter().map(|&c| group.coords(c)).collect();
        let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        Self::new(group, rows)
    }

    pub fn identity(group: GroupSpec) -> Self {
        Self::scalar(group, 1).expect("identity is invertible")
    }

    pub fn scalar(group: GroupSpec, c: u32) -> Result<Self> {
        let n = group.rank();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect())
            .collect();
        Self::new(group, rows)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn apply_idx(&self, x: usize) -> usize {
        let p = self.group.p();
        let v = self.group.coords(x);
        let img: Vec<u32> = self
            .rows
            .iter()
            .map(|r| r.iter().zip(&v).map(|(a, b)| a * b % p).sum::<u32>() % p)
            .collect();
        self.group.encode_unchecked(&img)
    }

    pub fn apply_element(&self, x: &Element) -> Result<Element> {
        if x.group() != self.group {
            return Err(Error::GroupMismatch(self.group, x.group()));
        }
        Ok(Element { group: self.group, index: self.apply_idx(x.index()) })
    }

    /// Image of every element, as an index permutation.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.group.size()).map(|x| self.apply_idx(x)).collect()
    }

    pub fn apply(&self, set: &DenseSet) -> Result<DenseSet> {
        if set.group() != self.group {
            return Err(Error::GroupMismatch(self.group, set.group()));
        }
        Ok(DenseSet::from_indices_unchecked(self.group, set.iter().map(|x| self.apply_idx(x))))
    }

    pub fn apply_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.group() != self.group {
            return Err(Error::GroupMismatch(self.group, h.group()));
        }
        let images = h
            .basis()
            .iter()
            .map(|row| self.apply_idx(self.group.encode_unchecked(row)));
        Ok(Subgroup::span_indices(self.group, images))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let p = self.group.p();
        let n = self.group.rank();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j] % p).sum::<u32>() % p)
                    .collect()
            })
            .collect();
        Automorphism { group: self.group, rows }
    }
}

/// A generating set of GL(n, p): `diag(g, 1, ..., 1)` for a primitive root `g`
/// together with the elementary transvections `I + E_ij`.
pub fn gl_generators(group: GroupSpec) -> Vec<Automorphism> {
    let n = group.rank();
    let p = group.p();
    let mut gens = Vec::new();
    let g = primitive_root(p);
    let mut diag: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    diag[0][0] = g;
    gens.push(Automorphism::new(group, diag).expect("diagonal with nonzero entries"));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let rows = (0..n)
                    .map(|r| (0..n).map(|c| u32::from(r == c || (r == i && c == j))).collect())
                    .collect();
                gens.push(Automorphism::new(group, rows).expect("transvection"));
            }
        }
    }
    gens
}

pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1u32;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .expect("every prime has a primitive root")
}

/// Every element of GL(n, p), produced column by column; `visit` returns
/// `false` to stop early.
pub fn for_each_gl(group: GroupSpec, mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(
        group: GroupSpec,
        cols: &mut Vec<usize>,
        span: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cols.len() == group.rank() {
            return visit(cols);
        }
        let mut in_span = vec![false; group.size()];
        for &s in span.iter() {
            in_span[s] = true;
        }
        for v in 0..group.size() {
            if in_span[v] {
                continue;
            }
            let old = span.len();
            for c in 1..group.p() {
                let cv = group.smul_idx(c, v);
                for k in 0..old {
                    span.push(group.add_idx(span[k], cv));
                }
            }
            cols.push(v);
            let go_on = rec(group, cols, span, visit);
            cols.pop();
            span.truncate(old);
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut span = vec![0usize];
    rec(group, &mut Vec::new(), &mut span, &mut visit);
}

/// Image of index `x` under the map whose columns (images of the standard
/// basis) are `cols`.
#[inline]
pub(crate) fn apply_columns(group: GroupSpec, cols: &[usize], x: usize) -> usize {
    let p = group.p() as usize;
    let mut rest = x;
    let mut out = 0usize;
    for &col in cols.iter().rev() {
        let digit = (rest % p) as u32;
        rest /= p;
        if digit != 0 {
            out = group.add_idx(out, group.smul_idx(digit, col));
        }
    }
    out
}
