//! Canonical forms under GL(n, p).
//!
//! The canonical form of `A` is the member of its orbit whose ascending list
//! of element indices is lexicographically smallest. Prefixes of a canonical
//! list are canonical themselves, which the search relies on.
//!
//! Two independent routes compute it:
//!
//! * [`canonical_by_orbit_scan`] applies every element of GL(n, p).
//! * [`canonical_by_bases`] builds the optimal map column by column. Target
//!   `p^k` (the standard vector `e_{n-1-k}`) is always the next target outside
//!   the span of the targets already assigned, so a partial map is an ordered
//!   list of preimages drawn from `A`, and the targets in `[p^(k-1), p^k)` are
//!   decided once `k` preimages are fixed. Partial maps whose decided block
//!   is worse than the best one are dropped.

use crate::group::{apply_columns, for_each_gl, GroupSpec};
use crate::set::DenseSet;

/// Orbits with at most this many group elements are scanned in full.
pub const ORBIT_SCAN_LIMIT: u128 = 10_000;
pub const DEFAULT_CANON_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub set: DenseSet,
    /// `|Stab(A)|` in GL(n, p).
    pub stabilizer_order: u128,
    /// False when a budget cut the minimization short.
    pub exact: bool,
}

impl CanonicalForm {
    pub fn orbit_size(&self) -> u128 {
        self.set.group().gl_order() / self.stabilizer_order
    }
}

pub fn canonical_by_orbit_scan(a: &DenseSet) -> CanonicalForm {
    let g = a.group();
    let members: Vec<usize> = a.iter().collect();
    let mut best: Option<Vec<usize>> = None;
    let mut hits = 0u128;
    let mut image = Vec::with_capacity(members.len());
    for_each_gl(g, |cols| {
        image.clear();
        image.extend(members.iter().map(|&x| apply_columns(g, cols, x)));
        image.sort_unstable();
        match &best {
            Some(b) if image.as_slice() > b.as_slice() => {}
            Some(b) if image.as_slice() == b.as_slice() => hits += 1,
            _ => {
                best = Some(image.clone());
                hits = 1;
            }
        }
        true
    });
    let set = DenseSet::from_indices_unchecked(g, best.unwrap_or_default());
    CanonicalForm { set, stabilizer_order: hits, exact: true }
}

struct PartialMap {
    /// `span[t]` is the preimage of target `t`, for `t < p^k`.
    span: Vec<usize>,
}

/// Number of invertible extensions of an isomorphism between two
/// `d`-dimensional subspaces.
fn extension_count(g: GroupSpec, d: usize) -> u128 {
    let q = g.size() as u128;
    (d..g.rank()).map(|j| q - (g.p() as u128).pow(j as u32)).product()
}

/// Column-by-column minimization; `budget` caps the number of partial maps
/// generated.
pub fn canonical_by_bases(a: &DenseSet, budget: u64) -> CanonicalForm {
    let g = a.group();
    let p = g.p();
    let members: Vec<usize> = a.iter().filter(|&x| x != 0).collect();
    let mut states = vec![PartialMap { span: vec![0] }];
    let mut generated = 0u64;
    let mut exact = true;
    let mut dim = 0usize;
    let mut in_span = vec![false; g.size()];
    loop {
        let mut best_block: Option<Vec<bool>> = None;
        let mut next: Vec<PartialMap> = Vec::new();
        'states: for st in &states {
            for &x in &st.span {
                in_span[x] = true;
            }
            for &cand in &members {
                if in_span[cand] {
                    continue;
                }
                if generated >= budget {
                    exact = false;
                    for &x in &st.span {
                        in_span[x] = false;
                    }
                    break 'states;
                }
                generated += 1;
                let base = st.span.len();
                let mut span = Vec::with_capacity(base * p as usize);
                span.extend_from_slice(&st.span);
                for c in 1..p {
                    let step = g.smul_idx(c, cand);
                    span.extend(st.span.iter().map(|&y| g.add_idx(y, step)));
                }
                let block: Vec<bool> = span[base..].iter().map(|&x| a.contains_idx(x)).collect();
                // earlier presence wins: a larger bool vector is a smaller list
                match best_block.as_ref().map(|b| block.cmp(b)) {
                    Some(std::cmp::Ordering::Less) => continue,
                    Some(std::cmp::Ordering::Equal) => {}
                    _ => {
                        best_block = Some(block);
                        next.clear();
                    }
                }
                next.push(PartialMap { span });
            }
            for &x in &st.span {
                in_span[x] = false;
            }
        }
        if next.is_empty() {
            break;
        }
        states = next;
        dim += 1;
        if !exact {
            break;
        }
    }
    let survivor = &states[0];
    let set = DenseSet::from_indices_unchecked(
        g,
        survivor.span.iter().enumerate().filter(|&(_, &x)| a.contains_idx(x)).map(|(t, _)| t),
    );
    let stabilizer_order = states.len() as u128 * extension_count(g, dim);
    CanonicalForm { set, stabilizer_order, exact }
}

/// Orbit scan for small GL(n, p), column-by-column minimization otherwise.
pub fn canonical_form(a: &DenseSet) -> CanonicalForm {
    if a.group().gl_order() <= ORBIT_SCAN_LIMIT {
        canonical_by_orbit_scan(a)
    } else {
        canonical_by_bases(a, DEFAULT_CANON_BUDGET)
    }
}

pub fn canonicalize(a: &DenseSet) -> DenseSet {
    canonical_form(a).set
}

pub fn is_canonical(a: &DenseSet) -> bool {
    canonical_by_bases(a, DEFAULT_CANON_BUDGET).set == *a
}
