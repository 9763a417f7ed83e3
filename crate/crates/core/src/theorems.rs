//! Verification drivers: each one enumerates maximal sum-free sets above a
//! threshold and replays a structural predicate on every representative.
//!
//! Checking maximal sets is enough for all the statements here: a sum-free
//! set lies in some maximal sum-free set at least as large, and both the
//! two-coset property and nonzero-coset containment pass to subsets.

use std::collections::BTreeMap;
use std::time::Instant;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::group::{maximal_subgroups, GroupSpec};
use crate::search::{enumerate_maximal_sumfree, find_sum_free_of_size, EnumerationConfig, EnumerationRun, GroupRecord};
use crate::set::{DenseSet, SetRecord};
use crate::sumfree::{
    example1_construct, example1_rank_one, in_nonzero_coset, is_maximal_sum_free, is_sum_free, is_two_coset,
    max_sumfree_bound, ConstructionSpec, ConstructionVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// Sum-free `A ⊆ Z_5^n` with `|A| > (3/2)·5^(n-1)` lies in `(e+H) ∪ (−e+H)`.
    Main,
    /// Maximal sum-free `A ⊆ Z_2^n`, `n ≥ 4`, `|A| > 2^(n-2)+1` is periodic.
    Dtper,
    /// Sum-free `A ⊆ Z_2^n`, `|A| ≥ 5·2^(n-4)+1` lies in a nonzero coset.
    Dt2,
    /// Sum-free `A ⊆ Z_3^n`, `|A| ≥ 5·3^(n-3)+1` lies in a nonzero coset.
    L3,
    /// A sum-free set of size `5·3^(n-3)` in no nonzero coset exists.
    L3Sharp,
    /// The largest sum-free set has `(p+1)p^(n-1)/3` elements.
    GreenRuzsa,
    /// Aperiodic maximal sum-free sets of size `≥ 5^(n-1)+1`.
    Conjecture,
}

impl Statement {
    pub const ALL: [Statement; 7] = [
        Statement::Main,
        Statement::Dtper,
        Statement::Dt2,
        Statement::L3,
        Statement::L3Sharp,
        Statement::GreenRuzsa,
        Statement::Conjecture,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Statement::Main => "main",
            Statement::Dtper => "dtper",
            Statement::Dt2 => "dt2",
            Statement::L3 => "l3",
            Statement::L3Sharp => "l3-sharp",
            Statement::GreenRuzsa => "green-ruzsa",
            Statement::Conjecture => "conjecture",
        }
    }

    pub fn parse(id: &str) -> Option<Statement> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Counterexample,
    Inconclusive,
}

/// Run metadata; excluded from reproducibility comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Meta {
    pub elapsed_ms: u128,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct OrbitRecord {
    pub rep: SetRecord,
    pub size: usize,
    pub orbit_size: u64,
    /// Construction families with a member in this orbit.
    pub matches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct FamilyRecord {
    pub name: String,
    pub size: usize,
    pub sum_free: bool,
    pub maximal: bool,
    pub periodic: bool,
    pub example: SetRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Classification {
    pub base_size: usize,
    pub aperiodic_size_histogram: BTreeMap<usize, u64>,
    pub orbits: Vec<OrbitRecord>,
    /// Some aperiodic maximal set is larger than `base_size`.
    pub larger_exists: bool,
    pub orbits_at_base: usize,
    pub single_orbit_at_base: bool,
    /// Some aperiodic maximal set of exactly `base_size` exists.
    pub base_size_realized: bool,
    pub families: Vec<FamilyRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct TheoremReport {
    pub statement: Statement,
    pub group: GroupRecord,
    pub verdict: Verdict,
    /// Smallest set size the statement covers.
    pub threshold: usize,
    pub witnesses: Vec<SetRecord>,
    pub counts: BTreeMap<String, u64>,
    pub node_count: u64,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<Classification>,
    pub meta: Meta,
}

impl TheoremReport {
    /// JSON without the `meta` key.
    pub fn payload(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("meta");
        v
    }
}

#[derive(Debug, Clone)]
pub struct DriverOptions {
    pub budget: u64,
    pub threads: usize,
    /// Overrides the statement's own threshold (exploration mode).
    pub min_size: Option<usize>,
}

impl Default for DriverOptions {
    fn default() -> Self {
        let cfg = EnumerationConfig::default();
        DriverOptions { budget: cfg.budget, threads: cfg.threads, min_size: None }
    }
}

fn enumerate(g: GroupSpec, min_size: usize, opts: &DriverOptions) -> EnumerationRun {
    let cfg = EnumerationConfig { min_size, budget: opts.budget, threads: opts.threads, ..Default::default() };
    enumerate_maximal_sumfree(g, &cfg)
}

fn base_counts(run: &EnumerationRun) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    counts.insert("maximal_sets".into(), run.total_count());
    counts.insert("orbits".into(), run.reps.len() as u64);
    counts.insert("max_size".into(), run.max_size().unwrap_or(0) as u64);
    counts
}

/// Runs `pred` over every representative at or above `threshold`; the first
/// failure is the counterexample.
fn check_reps(
    statement: Statement,
    g: GroupSpec,
    threshold: usize,
    opts: &DriverOptions,
    pred: impl Fn(&DenseSet) -> bool,
) -> TheoremReport {
    let start = Instant::now();
    let run = enumerate(g, threshold, opts);
    let failures: Vec<&DenseSet> = run.reps.iter().map(|r| &r.set).filter(|s| !pred(s)).collect();
    let verdict = if !failures.is_empty() {
        Verdict::Counterexample
    } else if run.exhaustive {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    let mut counts = base_counts(&run);
    counts.insert("failing_orbits".into(), failures.len() as u64);
    TheoremReport {
        statement,
        group: g.into(),
        verdict,
        threshold,
        witnesses: failures.into_iter().take(1).map(SetRecord::from).collect(),
        counts,
        node_count: run.node_count,
        exhaustive: run.exhaustive,
        classification: None,
        meta: Meta { elapsed_ms: start.elapsed().as_millis(), threads: opts.threads },
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Unsupported(what.to_string()))
    }
}

/// Smallest size `k` with `2k > 3·5^(n-1)`.
pub fn main_threshold(n: u32) -> usize {
    3 * 5usize.pow(n - 1) / 2 + 1
}

pub fn verify_theorem_main(g: GroupSpec, opts: &DriverOptions) -> Result<TheoremReport> {
    require(g.p() == 5, "the main statement is about p = 5")?;
    let threshold = opts.min_size.unwrap_or_else(|| main_threshold(g.n()));
    Ok(check_reps(Statement::Main, g, threshold, opts, |s| is_two_coset(s).is_some()))
}

fn pow_usize(base: usize, exp: i64) -> usize {
    base.pow(exp as u32)
}

pub fn verify_background(statement: Statement, g: GroupSpec, opts: &DriverOptions) -> Result<TheoremReport> {
    let (p, n) = (g.p(), g.n() as i64);
    match statement {
        Statement::Dtper => {
            require(p == 2 && (4..=5).contains(&n), "dtper runs on Z_2^4 and Z_2^5")?;
            let threshold = opts.min_size.unwrap_or(pow_usize(2, n - 2) + 2);
            Ok(check_reps(statement, g, threshold, opts, DenseSet::is_periodic))
        }
        Statement::Dt2 => {
            require(p == 2 && (4..=5).contains(&n), "dt2 runs on Z_2^4 and Z_2^5")?;
            let threshold = opts.min_size.unwrap_or(5 * pow_usize(2, n - 4) + 1);
            Ok(check_reps(statement, g, threshold, opts, |s| in_nonzero_coset(s).is_some()))
        }
        Statement::L3 => {
            require(p == 3 && n == 3, "l3 runs on Z_3^3")?;
            let threshold = opts.min_size.unwrap_or(5 * pow_usize(3, n - 3) + 1);
            Ok(check_reps(statement, g, threshold, opts, |s| in_nonzero_coset(s).is_some()))
        }
        Statement::L3Sharp => {
            require(p == 3 && n == 3, "l3-sharp runs on Z_3^3")?;
            let size = opts.min_size.unwrap_or(5 * pow_usize(3, n - 3));
            let start = Instant::now();
            let (witness, nodes, finished) =
                find_sum_free_of_size(g, size, opts.budget, |s| in_nonzero_coset(s).is_none());
            let verdict = match (&witness, finished) {
                (Some(_), _) => Verdict::Verified,
                (None, true) => Verdict::Counterexample,
                (None, false) => Verdict::Inconclusive,
            };
            Ok(TheoremReport {
                statement,
                group: g.into(),
                verdict,
                threshold: size,
                witnesses: witness.iter().map(SetRecord::from).collect(),
                counts: BTreeMap::new(),
                node_count: nodes,
                exhaustive: finished,
                classification: None,
                meta: Meta { elapsed_ms: start.elapsed().as_millis(), threads: 1 },
            })
        }
        Statement::GreenRuzsa => verify_max_size(g, opts),
        Statement::Main => verify_theorem_main(g, opts),
        Statement::Conjecture => classify_aperiodic_maximal(g, opts),
    }
}

/// Compares the largest maximal sum-free set with `(p+1)p^(n-1)/3`.
pub fn verify_max_size(g: GroupSpec, opts: &DriverOptions) -> Result<TheoremReport> {
    let bound = max_sumfree_bound(g.p(), g.n())? as usize;
    let start = Instant::now();
    let run = enumerate(g, opts.min_size.unwrap_or(1), opts);
    let max = run.max_size().unwrap_or(0);
    let above: Vec<&DenseSet> = run.reps.iter().map(|r| &r.set).filter(|s| s.len() > bound).collect();
    let verdict = if !above.is_empty() || (run.exhaustive && max != bound) {
        Verdict::Counterexample
    } else if run.exhaustive {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    let mut counts = base_counts(&run);
    counts.insert("bound".into(), bound as u64);
    Ok(TheoremReport {
        statement: Statement::GreenRuzsa,
        group: g.into(),
        verdict,
        threshold: bound,
        witnesses: above.into_iter().take(1).map(SetRecord::from).collect(),
        counts,
        node_count: run.node_count,
        exhaustive: run.exhaustive,
        classification: None,
        meta: Meta { elapsed_ms: start.elapsed().as_millis(), threads: opts.threads },
    })
}

/// One instance of each construction reading, for the first maximal
/// subgroup `H`, its smallest nonzero element `h` and the smallest `e ∉ H`.
/// GL(n, p) is transitive on such triples, so each reading is one orbit.
pub fn construction_families(g: GroupSpec) -> Vec<(String, DenseSet)> {
    if g.n() == 1 {
        let a = g.element(1).expect("nonzero element");
        return vec![("rank-one".into(), example1_rank_one(&a).expect("nonzero"))];
    }
    let h = maximal_subgroups(g).into_iter().next().expect("n >= 1");
    let hh = h.members().iter().find(|&x| x != 0).expect("H nontrivial for n >= 2");
    let e = (0..g.size()).find(|&x| !h.contains_idx(x)).expect("H proper");
    ConstructionVariant::ALL
        .iter()
        .map(|&variant| {
            let spec = ConstructionSpec {
                variant,
                subgroup: h.clone(),
                h: g.element(hh).expect("in range"),
                e: g.element(e).expect("in range"),
            };
            let name = match variant {
                ConstructionVariant::Literal => "literal",
                ConstructionVariant::Shifted => "shifted",
            };
            (name.to_string(), example1_construct(&spec).expect("valid triple"))
        })
        .collect()
}

/// Classifies aperiodic maximal sum-free subsets of Z_5^n of size at least
/// `min_size` (default `5^(n-1)+1`). The statement checked: each such set has
/// exactly `5^(n-1)+1` elements and lies in the orbit of one of the
/// construction readings.
pub fn classify_aperiodic_maximal(g: GroupSpec, opts: &DriverOptions) -> Result<TheoremReport> {
    require(g.p() == 5, "the classification is about p = 5")?;
    let base = 5usize.pow(g.n() - 1) + 1;
    let threshold = opts.min_size.unwrap_or(base);
    let start = Instant::now();
    let run = enumerate(g, threshold, opts);

    let families: Vec<(String, DenseSet)> = construction_families(g);
    let family_forms: Vec<(String, DenseSet)> =
        families.iter().map(|(name, s)| (name.clone(), canonicalize(s))).collect();

    let mut histogram = BTreeMap::new();
    let mut orbits = Vec::new();
    let mut bad: Vec<&DenseSet> = Vec::new();
    for r in run.reps.iter().filter(|r| !r.set.is_periodic()) {
        *histogram.entry(r.set.len()).or_insert(0) += r.orbit_size;
        let matches: Vec<String> = family_forms
            .iter()
            .filter(|(_, form)| *form == r.set)
            .map(|(name, _)| name.clone())
            .collect();
        if r.set.len() != base || matches.is_empty() {
            bad.push(&r.set);
        }
        orbits.push(OrbitRecord {
            rep: SetRecord::from(&r.set),
            size: r.set.len(),
            orbit_size: r.orbit_size,
            matches,
        });
    }
    let orbits_at_base = orbits.iter().filter(|o| o.size == base).count();
    let classification = Classification {
        base_size: base,
        aperiodic_size_histogram: histogram,
        larger_exists: orbits.iter().any(|o| o.size > base),
        orbits_at_base,
        single_orbit_at_base: orbits_at_base == 1,
        base_size_realized: orbits_at_base > 0,
        families: families
            .iter()
            .map(|(name, s)| FamilyRecord {
                name: name.clone(),
                size: s.len(),
                sum_free: is_sum_free(s),
                maximal: is_sum_free(s) && is_maximal_sum_free(s).unwrap_or(false),
                periodic: s.is_periodic(),
                example: SetRecord::from(s),
            })
            .collect(),
        orbits,
    };
    let verdict = if !bad.is_empty() {
        Verdict::Counterexample
    } else if run.exhaustive {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    let mut counts = base_counts(&run);
    counts.insert("aperiodic_orbits".into(), classification.orbits.len() as u64);
    Ok(TheoremReport {
        statement: Statement::Conjecture,
        group: g.into(),
        verdict,
        threshold,
        witnesses: bad.into_iter().take(1).map(SetRecord::from).collect(),
        counts,
        node_count: run.node_count,
        exhaustive: run.exhaustive,
        classification: Some(classification),
        meta: Meta { elapsed_ms: start.elapsed().as_millis(), threads: opts.threads },
    })
}

/// Runs the driver for `statement`.
pub fn check_theorem(statement: Statement, g: GroupSpec, opts: &DriverOptions) -> Result<TheoremReport> {
    verify_background(statement, g, opts)
}

/// Feeds a report's first witness back through the predicates and confirms
/// it violates the statement. Reports without a counterexample replay as
/// false.
pub fn replay_counterexample(report: &TheoremReport) -> Result<bool> {
    if report.verdict != Verdict::Counterexample {
        return Ok(false);
    }
    let g = GroupSpec::new(report.group.p, report.group.n)?;
    let Some(w) = report.witnesses.first() else {
        // a missing maximum is witnessed by the enumeration itself
        return Ok(report.statement == Statement::GreenRuzsa || report.statement == Statement::L3Sharp);
    };
    let s = DenseSet::from_coords(g, &w.elements)?;
    let maximal = is_sum_free(&s) && is_maximal_sum_free(&s)?;
    let above = s.len() >= report.threshold;
    Ok(match report.statement {
        Statement::Main => maximal && above && is_two_coset(&s).is_none(),
        Statement::Dtper => maximal && above && !s.is_periodic(),
        Statement::Dt2 | Statement::L3 => maximal && above && in_nonzero_coset(&s).is_none(),
        Statement::GreenRuzsa => is_sum_free(&s) && s.len() > report.threshold,
        Statement::L3Sharp => false,
        Statement::Conjecture => {
            let base = report.classification.as_ref().map_or(0, |c| c.base_size);
            let in_family = construction_families(g).iter().any(|(_, f)| canonicalize(f) == canonicalize(&s));
            maximal && above && !s.is_periodic() && (s.len() != base || !in_family)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(p, n).unwrap()
    }

    fn opts() -> DriverOptions {
        DriverOptions { threads: 1, ..Default::default() }
    }

    #[test]
    fn statement_ids_round_trip() {
        for s in Statement::ALL {
            assert_eq!(Statement::parse(s.id()), Some(s));
            assert_eq!(serde_json::to_value(s).unwrap(), serde_json::Value::String(s.id().into()));
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(main_threshold(1), 2);
        assert_eq!(main_threshold(2), 8);
        assert_eq!(main_threshold(3), 38);
    }

    #[test]
    fn main_on_z5() {
        let r = verify_theorem_main(z(5, 1), &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.counts["maximal_sets"], 2);
    }

    #[test]
    fn exploration_threshold_is_reported_not_presumed() {
        let r = verify_theorem_main(z(5, 2), &DriverOptions { min_size: Some(5), ..opts() }).unwrap();
        assert_eq!(r.threshold, 5);
        if r.verdict == Verdict::Counterexample {
            assert!(replay_counterexample(&r).unwrap());
        }
    }

    #[test]
    fn unsupported_parameters() {
        assert!(verify_theorem_main(z(3, 2), &opts()).is_err());
        assert!(verify_background(Statement::Dtper, z(2, 3), &opts()).is_err());
        assert!(verify_background(Statement::L3, z(3, 2), &opts()).is_err());
    }

    #[test]
    fn artificial_counterexample_replays() {
        // dtper with a threshold low enough to include the aperiodic 5-sets
        let r = verify_background(Statement::Dtper, z(2, 4), &DriverOptions { min_size: Some(5), ..opts() }).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
        assert!(replay_counterexample(&r).unwrap());
    }

    #[test]
    fn families_are_single_orbits() {
        let g = z(5, 2);
        for variant in ConstructionVariant::ALL {
            let mut forms = std::collections::BTreeSet::new();
            for h in maximal_subgroups(g) {
                for hh in h.members().iter().filter(|&x| x != 0) {
                    for e in (0..25).filter(|&x| !h.contains_idx(x)) {
                        let spec = ConstructionSpec {
                            variant,
                            subgroup: h.clone(),
                            h: g.element(hh).unwrap(),
                            e: g.element(e).unwrap(),
                        };
                        forms.insert(canonicalize(&example1_construct(&spec).unwrap()));
                    }
                }
            }
            assert_eq!(forms.len(), 1, "{variant:?}");
        }
    }
}
