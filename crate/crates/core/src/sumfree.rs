//! Sum-free predicates, the rank-lifting constructions and the structural
//! detectors (two-coset containment, nonzero-coset containment).

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{maximal_subgroups, Element, GroupSpec, Subgroup};
use crate::set::DenseSet;

/// Some `(x, y, z)` in `A` with `x + y = z`, smallest `x` then `y` first.
pub fn sum_free_violation(a: &DenseSet) -> Option<(usize, usize, usize)> {
    let g = a.group();
    let members: Vec<usize> = a.iter().collect();
    for &x in &members {
        for &y in &members {
            let z = g.add_idx(x, y);
            if a.contains_idx(z) {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// `A ∩ 2A = ∅`.
pub fn is_sum_free(a: &DenseSet) -> bool {
    a.is_disjoint(&a.double())
}

/// The equivalent formulation `A ∩ (A − A) = ∅`.
pub fn is_sum_free_by_differences(a: &DenseSet) -> bool {
    a.is_disjoint(&a.difference_set(a).expect("same group"))
}

/// Elements `u` for which `A ∪ {u}` fails to be sum-free because of a
/// relation involving `u`: `2A ∪ (A − A) ∪ {u : 2u ∈ A} ∪ {0}`.
pub fn blocked_elements(a: &DenseSet) -> DenseSet {
    let g = a.group();
    let mut out = a.double().union(&a.difference_set(a).expect("same group")).expect("same group");
    out.insert(0);
    for u in 0..g.size() {
        if a.contains_idx(g.add_idx(u, u)) {
            out.insert(u);
        }
    }
    out
}

/// First (smallest-index) `u ∉ A` with `A ∪ {u}` sum-free, if any.
pub fn maximal_extension(a: &DenseSet) -> Result<Option<usize>> {
    if !is_sum_free(a) {
        return Err(Error::NotSumFree);
    }
    let blocked = blocked_elements(a);
    Ok((0..a.group().size()).find(|&u| !a.contains_idx(u) && !blocked.contains_idx(u)))
}

pub fn is_maximal_sum_free(a: &DenseSet) -> Result<bool> {
    Ok(maximal_extension(a)?.is_none())
}

/// Greedy completion: scan indices upward and keep every element whose
/// addition leaves the set sum-free.
pub fn complete_to_maximal(a: &DenseSet) -> Result<DenseSet> {
    if !is_sum_free(a) {
        return Err(Error::NotSumFree);
    }
    let mut out = a.clone();
    for u in 0..a.group().size() {
        if out.contains_idx(u) {
            continue;
        }
        let candidate = out.with(u)?;
        if is_sum_free(&candidate) {
            out = candidate;
        }
    }
    Ok(out)
}

/// How to read `e + H \ {h}` in the rank-lifting construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionVariant {
    /// `(e + H) \ {h}`; since `h ∉ e + H` this is all of `e + H`.
    Literal,
    /// `e + (H \ {h})`.
    Shifted,
}

impl ConstructionVariant {
    pub const ALL: [ConstructionVariant; 2] = [ConstructionVariant::Literal, ConstructionVariant::Shifted];
}

#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub variant: ConstructionVariant,
    pub subgroup: Subgroup,
    pub h: Element,
    pub e: Element,
}

/// `{h, -e} ∪ (e + H \ {h})` under the chosen reading. Only constructs; the
/// result is not checked for sum-freeness.
pub fn example1_construct(spec: &ConstructionSpec) -> Result<DenseSet> {
    let g = spec.subgroup.group();
    for x in [&spec.h, &spec.e] {
        if x.group() != g {
            return Err(Error::GroupMismatch(g, x.group()));
        }
    }
    if g.n() < 2 {
        return Err(Error::ConstructionRank);
    }
    if !spec.subgroup.is_maximal_proper() {
        return Err(Error::NotMaximalSubgroup);
    }
    if spec.h.is_zero() {
        return Err(Error::HIsZero);
    }
    if !spec.subgroup.contains(&spec.h) {
        return Err(Error::HNotInSubgroup);
    }
    if spec.subgroup.contains(&spec.e) {
        return Err(Error::EInSubgroup);
    }
    let (h, e) = (spec.h.index(), spec.e.index());
    let coset_part = match spec.variant {
        ConstructionVariant::Literal => spec.subgroup.members().translate_idx(e).without(h),
        ConstructionVariant::Shifted => spec.subgroup.members().without(h).translate_idx(e),
    };
    let mut out = coset_part;
    out.insert(h);
    out.insert(g.neg_idx(e));
    Ok(out)
}

/// The rank-one case `{a, -a}`.
pub fn example1_rank_one(a: &Element) -> Result<DenseSet> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    DenseSet::from_elements(a.group(), [a, &a.neg()])
}

/// `G/H` with elements indexed by the echelon-complement coordinates of `H`.
pub fn quotient_group(h: &Subgroup) -> Result<GroupSpec> {
    if h.is_whole() {
        return Err(Error::TrivialQuotient);
    }
    let g = h.group();
    GroupSpec::new(g.p(), g.n() - h.dim() as u32)
}

/// The inverse image of `quotient_set ⊆ G/H`.
pub fn lift(h: &Subgroup, quotient_set: &DenseSet) -> Result<DenseSet> {
    let q = quotient_group(h)?;
    if quotient_set.group() != q {
        return Err(Error::GroupMismatch(q, quotient_set.group()));
    }
    let mut out = DenseSet::empty(h.group());
    for x in quotient_set.iter() {
        let rep = h.coset_representative(&q.coords(x));
        for m in h.members().iter() {
            out.insert(h.group().add_idx(rep, m));
        }
    }
    Ok(out)
}

/// The image of an `H`-periodic set in `G/H`.
pub fn project(a: &DenseSet, h: &Subgroup) -> Result<DenseSet> {
    let q = quotient_group(h)?;
    if !a.is_h_periodic(h)? {
        return Err(Error::NotPeriodic);
    }
    DenseSet::from_coords(q, a.iter().map(|x| h.quotient_coords(x)))
}

/// `A ⊆ (e + H) ∪ (-e + H)` with `H` maximal proper and `e ∉ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCosetWitness {
    pub subgroup: Subgroup,
    pub e: Element,
}

impl TwoCosetWitness {
    pub fn covers(&self, a: &DenseSet) -> bool {
        let g = a.group();
        if self.subgroup.group() != g || !self.subgroup.is_maximal_proper() || self.subgroup.contains(&self.e) {
            return false;
        }
        let (e, ne) = (self.e.index(), g.neg_idx(self.e.index()));
        a.iter()
            .all(|x| self.subgroup.contains_idx(g.sub_idx(x, e)) || self.subgroup.contains_idx(g.sub_idx(x, ne)))
    }
}

/// Searches every maximal proper subgroup, in `maximal_subgroups` order, for
/// a pair of opposite nonzero cosets covering `A`. For `p = 2` the two cosets
/// coincide and this is single-coset containment.
pub fn is_two_coset(a: &DenseSet) -> Option<TwoCosetWitness> {
    let g = a.group();
    let p = g.p();
    for h in maximal_subgroups(g) {
        let f = g.encode_unchecked(&h.functional().expect("maximal subgroup"));
        let mut values = a.iter().map(|x| g.dot_idx(f, x));
        let v = match values.next() {
            None => 1,
            Some(0) => continue,
            Some(v0) => v0.min(p - v0),
        };
        if a.iter().all(|x| {
            let t = g.dot_idx(f, x);
            t == v || t == (p - v) % p
        }) {
            let e = (0..g.size()).find(|&x| g.dot_idx(f, x) == v).expect("functional is onto");
            return Some(TwoCosetWitness { subgroup: h, e: g.element(e).expect("in range") });
        }
    }
    None
}

/// `A ⊆ g + H` with `H` proper and `g ∉ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetWitness {
    pub subgroup: Subgroup,
    pub g: Element,
}

impl CosetWitness {
    pub fn covers(&self, a: &DenseSet) -> bool {
        let grp = a.group();
        self.subgroup.group() == grp
            && !self.subgroup.is_whole()
            && !self.subgroup.contains(&self.g)
            && a.iter().all(|x| self.subgroup.contains_idx(grp.sub_idx(x, self.g.index())))
    }
}

/// Containment in a nonzero coset of a proper subgroup. Any such coset lies
/// inside a nonzero coset of a maximal proper subgroup, so the search over
/// maximal subgroups (largest first) decides the question.
pub fn in_nonzero_coset(a: &DenseSet) -> Option<CosetWitness> {
    let g = a.group();
    for h in maximal_subgroups(g) {
        let base = match a.first() {
            Some(a0) => a0,
            None => (0..g.size()).find(|&x| !h.contains_idx(x)).expect("proper subgroup"),
        };
        if h.contains_idx(base) {
            continue;
        }
        if a.iter().all(|x| h.contains_idx(g.sub_idx(x, base))) {
            return Some(CosetWitness { subgroup: h, g: g.element(base).expect("in range") });
        }
    }
    None
}

/// `(p + 1) p^(n-1) / 3`, the largest size of a sum-free subset of Z_p^n for
/// `p ≡ 2 (mod 3)`.
pub fn max_sumfree_bound(p: u32, n: u32) -> Result<u64> {
    let g = GroupSpec::with_limit(p, n, usize::MAX)?;
    if p % 3 != 2 {
        return Err(Error::UnsupportedModulus(p));
    }
    Ok((p as u64 + 1) * (p as u64).pow(g.n() - 1) / 3)
}

/// Quantities behind `|A| + |B| + 2|C| ≤ 6·5^(n-1)` for `(A+B) ∩ C = ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LemmaNewReport {
    pub weighted_size: usize,
    pub bound: usize,
    pub holds: bool,
    pub period_order: usize,
    pub abc_size: usize,
    /// `5^n - |H|`
    pub abc_upper: usize,
    /// `|A+H| + |B+H| + |C+H| - 2|H|`
    pub kneser_lower: i64,
    pub chain_holds: bool,
}

pub fn lemma_new_check(a: &DenseSet, b: &DenseSet, c: &DenseSet) -> Result<LemmaNewReport> {
    let g = a.group();
    for s in [b, c] {
        if s.group() != g {
            return Err(Error::GroupMismatch(g, s.group()));
        }
    }
    if g.p() != 5 {
        return Err(Error::WrongPrime { expected: 5, got: g.p() });
    }
    if c.is_empty() {
        return Err(Error::EmptyC);
    }
    let floor = 2 * g.pow(g.n() - 1);
    let min = a.len().min(b.len());
    if min <= floor {
        return Err(Error::SizeFloor { min, floor });
    }
    let ab = a.sumset(b)?;
    if !ab.is_disjoint(c) {
        return Err(Error::NotDisjoint);
    }
    let abc = ab.difference_set(c)?;
    let h = abc.period();
    let ho = h.order();
    let kneser_lower = (a.add_subgroup(&h)?.len() + b.add_subgroup(&h)?.len() + c.add_subgroup(&h)?.len()) as i64
        - 2 * ho as i64;
    let abc_upper = g.size() - ho;
    let weighted_size = a.len() + b.len() + 2 * c.len();
    let bound = 6 * g.pow(g.n() - 1);
    Ok(LemmaNewReport {
        weighted_size,
        bound,
        holds: weighted_size <= bound,
        period_order: ho,
        abc_size: abc.len(),
        abc_upper,
        kneser_lower,
        chain_holds: abc_upper >= abc.len() && abc.len() as i64 >= kneser_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::for_each_gl;

    fn z(p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(p, n).unwrap()
    }

    fn set(g: GroupSpec, idx: &[usize]) -> DenseSet {
        DenseSet::from_indices(g, idx.iter().copied()).unwrap()
    }

    fn two_coset_set(g: GroupSpec) -> (Subgroup, Element, DenseSet) {
        let h = Subgroup::span(g, &[g.element_from_coords(&[1, 0]).unwrap()]).unwrap();
        let e = g.element_from_coords(&[0, 1]).unwrap();
        let a = h.members().translate(&e).unwrap().union(&h.members().translate(&e.neg()).unwrap()).unwrap();
        (h, e, a)
    }

    /// Oracle: tries every `u ∉ A` with the definition directly.
    fn extensions_oracle(a: &DenseSet) -> Vec<usize> {
        (0..a.group().size())
            .filter(|&u| !a.contains_idx(u) && sum_free_violation(&a.with(u).unwrap()).is_none())
            .collect()
    }

    #[test]
    fn sum_free_examples() {
        let g = z(5, 1);
        assert!(is_sum_free(&set(g, &[1, 4])));
        assert_eq!(sum_free_violation(&set(g, &[0, 3])), Some((0, 0, 0)));
        assert_eq!(sum_free_violation(&set(g, &[1, 2])), Some((1, 1, 2)));
        assert!(!is_sum_free(&set(g, &[1, 2])));
        assert!(is_sum_free(&DenseSet::empty(g)));
    }

    #[test]
    fn two_formulations_agree_on_z5_and_z2_4() {
        for (p, n) in [(5, 1), (2, 4)] {
            let g = z(p, n);
            for mask in 0u32..(1 << g.size()) {
                let a = DenseSet::from_indices(g, (0..g.size()).filter(|i| mask >> i & 1 == 1)).unwrap();
                let sf = is_sum_free(&a);
                assert_eq!(sf, is_sum_free_by_differences(&a));
                assert_eq!(sf, sum_free_violation(&a).is_none());
            }
        }
    }

    #[test]
    fn maximality_examples() {
        let g = z(5, 1);
        assert!(is_maximal_sum_free(&set(g, &[1, 4])).unwrap());
        assert!(extensions_oracle(&set(g, &[1, 4])).is_empty());
        assert_eq!(maximal_extension(&set(g, &[1])).unwrap(), Some(4));
        assert_eq!(extensions_oracle(&set(g, &[1])), vec![4]);
        assert_eq!(maximal_extension(&set(g, &[1, 2])).unwrap_err(), Error::NotSumFree);

        let (_, _, a) = two_coset_set(z(5, 2));
        assert!(is_maximal_sum_free(&a).unwrap());
        assert!(extensions_oracle(&a).is_empty());
    }

    #[test]
    fn blocked_set_matches_oracle_on_random_sets() {
        let g = z(5, 2);
        let mut state = 12345u64;
        for _ in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = DenseSet::from_indices(g, (0..25).filter(|i| (state >> (i + 20)) & 7 == 0)).unwrap();
            if !is_sum_free(&a) {
                continue;
            }
            let ext = extensions_oracle(&a);
            let blocked = blocked_elements(&a);
            let ours: Vec<usize> = (0..25).filter(|&u| !a.contains_idx(u) && !blocked.contains_idx(u)).collect();
            assert_eq!(ours, ext);
        }
    }

    #[test]
    fn greedy_completion_examples() {
        let g = z(5, 1);
        assert_eq!(complete_to_maximal(&set(g, &[1])).unwrap(), set(g, &[1, 4]));
        assert_eq!(complete_to_maximal(&set(g, &[2, 3])).unwrap(), set(g, &[2, 3]));
        let from_empty = complete_to_maximal(&DenseSet::empty(g)).unwrap();
        assert_eq!(from_empty.len(), 2);
        assert!(is_maximal_sum_free(&from_empty).unwrap());
    }

    #[test]
    fn construction_examples() {
        let g = z(5, 2);
        let h = Subgroup::span(g, &[g.element_from_coords(&[1, 0]).unwrap()]).unwrap();
        let spec = ConstructionSpec {
            variant: ConstructionVariant::Shifted,
            subgroup: h.clone(),
            h: g.element_from_coords(&[1, 0]).unwrap(),
            e: g.element_from_coords(&[0, 1]).unwrap(),
        };
        let shifted = example1_construct(&spec).unwrap();
        assert_eq!(
            shifted,
            DenseSet::from_coords(g, [[1, 0], [0, 4], [0, 1], [2, 1], [3, 1], [4, 1]]).unwrap()
        );
        let literal = example1_construct(&ConstructionSpec { variant: ConstructionVariant::Literal, ..spec.clone() }).unwrap();
        assert_eq!(literal.len(), 7);

        let bad_h = ConstructionSpec { h: g.element_from_coords(&[0, 2]).unwrap(), ..spec.clone() };
        assert_eq!(example1_construct(&bad_h).unwrap_err(), Error::HNotInSubgroup);
        let zero_h = ConstructionSpec { h: g.zero(), ..spec.clone() };
        assert_eq!(example1_construct(&zero_h).unwrap_err(), Error::HIsZero);
        let bad_e = ConstructionSpec { e: g.element_from_coords(&[3, 0]).unwrap(), ..spec };
        assert_eq!(example1_construct(&bad_e).unwrap_err(), Error::EInSubgroup);

        let g1 = z(5, 1);
        assert_eq!(example1_rank_one(&g1.element(2).unwrap()).unwrap(), set(g1, &[2, 3]));
        assert_eq!(example1_rank_one(&g1.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn lift_and_project() {
        let g = z(5, 2);
        let h = Subgroup::span(g, &[g.element_from_coords(&[1, 0]).unwrap()]).unwrap();
        let q = quotient_group(&h).unwrap();
        assert_eq!(q, z(5, 1));
        let small = set(q, &[1, 4]);
        let big = lift(&h, &small).unwrap();
        assert_eq!(big.len(), 10);
        assert!(big.is_h_periodic(&h).unwrap());
        assert!(is_sum_free(&big));
        assert_eq!(project(&big, &h).unwrap(), small);
        assert_eq!(project(&set(g, &[1]), &h).unwrap_err(), Error::NotPeriodic);
        assert_eq!(quotient_group(&Subgroup::whole(g)).unwrap_err(), Error::TrivialQuotient);
    }

    #[test]
    fn lifting_transfers_sum_freeness_and_maximality() {
        let g = z(5, 2);
        let h = Subgroup::span(g, &[g.element_from_coords(&[1, 2]).unwrap()]).unwrap();
        let q = quotient_group(&h).unwrap();
        for mask in 0u32..32 {
            let s = DenseSet::from_indices(q, (0..5).filter(|i| mask >> i & 1 == 1)).unwrap();
            let l = lift(&h, &s).unwrap();
            assert_eq!(l.len(), s.len() * h.order());
            assert_eq!(is_sum_free(&l), is_sum_free(&s));
            if is_sum_free(&s) {
                assert_eq!(is_maximal_sum_free(&l).unwrap(), is_maximal_sum_free(&s).unwrap());
            }
            assert_eq!(project(&l, &h).unwrap(), s);
        }
    }

    #[test]
    fn two_coset_examples() {
        let g = z(5, 1);
        let w = is_two_coset(&set(g, &[1, 4])).unwrap();
        assert!(w.subgroup.is_trivial());
        assert_eq!(w.e.index(), 1);

        let g2 = z(5, 2);
        let (_, _, a) = two_coset_set(g2);
        let w = is_two_coset(&a).unwrap();
        assert!(w.covers(&a));

        let b = DenseSet::from_coords(g2, [[0, 1], [1, 0], [4, 4]]).unwrap();
        assert!(is_sum_free(&b));
        assert!(is_two_coset(&b).is_none());
        for h in maximal_subgroups(g2) {
            for e in 0..25 {
                let w = TwoCosetWitness { subgroup: h.clone(), e: g2.element(e).unwrap() };
                assert!(!w.covers(&b));
            }
        }
    }

    #[test]
    fn two_coset_detector_is_automorphism_invariant() {
        let g = z(5, 2);
        let (_, _, a) = two_coset_set(g);
        let part = a.without(0).without(6);
        let b = DenseSet::from_coords(g, [[0, 1], [0, 2], [0, 4]]).unwrap();
        for_each_gl(g, |cols| {
            let m = crate::group::Automorphism::from_columns(g, cols).unwrap();
            for s in [&a, &part, &b] {
                let img = m.apply(s).unwrap();
                assert_eq!(is_sum_free(&img), is_sum_free(s));
                match is_two_coset(s) {
                    Some(w) => {
                        let mapped = TwoCosetWitness {
                            subgroup: m.apply_subgroup(&w.subgroup).unwrap(),
                            e: m.apply_element(&w.e).unwrap(),
                        };
                        assert!(mapped.covers(&img));
                        assert!(is_two_coset(&img).is_some());
                    }
                    None => assert!(is_two_coset(&img).is_none()),
                }
            }
            true
        });
    }

    /// Oracle: every proper subgroup (as a span of at most n-1 elements) and
    /// every coset representative outside it.
    fn nonzero_coset_oracle(a: &DenseSet) -> bool {
        let g = a.group();
        let mut subgroups: Vec<Subgroup> = vec![Subgroup::trivial(g)];
        for x in 0..g.size() {
            for y in 0..g.size() {
                let s = Subgroup::span_indices(g, [x, y]);
                if !s.is_whole() && !subgroups.contains(&s) {
                    subgroups.push(s);
                }
            }
        }
        subgroups.iter().any(|h| {
            (0..g.size()).any(|t| !h.contains_idx(t) && a.iter().all(|x| h.contains_idx(g.sub_idx(x, t))))
        })
    }

    #[test]
    fn nonzero_coset_matches_oracle_on_z3_3_samples() {
        let g = z(3, 3);
        let mut state = 7u64;
        for _ in 0..300 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let k = 1 + (state >> 60) as usize % 4;
            let idx: Vec<usize> = (0..k).map(|j| ((state >> (j * 5 + 3)) % 27) as usize).collect();
            let a = set(g, &idx);
            let ours = in_nonzero_coset(&a);
            assert_eq!(ours.is_some(), nonzero_coset_oracle(&a), "{a:?}");
            if let Some(w) = ours {
                assert!(w.covers(&a));
            }
        }
    }

    #[test]
    fn nonzero_coset_examples() {
        let g = z(5, 2);
        let h = Subgroup::span(g, &[g.element_from_coords(&[1, 0]).unwrap()]).unwrap();
        let coset = h.members().translate_idx(1);
        assert!(in_nonzero_coset(&coset).unwrap().covers(&coset));
        assert!(in_nonzero_coset(&set(g, &[0, 1])).is_none());
        assert!(in_nonzero_coset(&set(z(5, 1), &[1, 4])).is_none());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(max_sumfree_bound(5, 1).unwrap(), 2);
        assert_eq!(max_sumfree_bound(5, 2).unwrap(), 10);
        assert_eq!(max_sumfree_bound(2, 4).unwrap(), 8);
        assert_eq!(max_sumfree_bound(3, 2).unwrap_err(), Error::UnsupportedModulus(3));
        assert_eq!(max_sumfree_bound(7, 2).unwrap_err(), Error::UnsupportedModulus(7));
    }

    #[test]
    fn lemma_new_on_tight_instance() {
        let g = z(5, 2);
        // cosets 0 and 1 of H = ker(x_0) plus one point of coset 2
        let a = DenseSet::from_indices(g, (0..25).filter(|&x| g.coords(x)[0] <= 1).chain([10])).unwrap();
        let ab = a.double();
        let c = ab.complement();
        assert_eq!(c.len(), 4);
        let r = lemma_new_check(&a, &a, &c).unwrap();
        assert_eq!(r.weighted_size, 30);
        assert_eq!(r.bound, 30);
        assert!(r.holds && r.chain_holds);
    }

    #[test]
    fn lemma_new_preconditions() {
        let g = z(5, 2);
        let a = DenseSet::from_indices(g, 0..11).unwrap();
        let c = set(g, &[24]);
        assert_eq!(lemma_new_check(&a, &a, &DenseSet::empty(g)).unwrap_err(), Error::EmptyC);
        assert!(matches!(
            lemma_new_check(&set(g, &[1]), &a, &c).unwrap_err(),
            Error::SizeFloor { min: 1, floor: 10 }
        ));
        assert_eq!(lemma_new_check(&a, &a, &set(g, &[0])).unwrap_err(), Error::NotDisjoint);
        let g3 = z(3, 2);
        let s = set(g3, &[1]);
        assert!(matches!(lemma_new_check(&s, &s, &s).unwrap_err(), Error::WrongPrime { .. }));
    }
}
