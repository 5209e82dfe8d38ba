//! Splitting a tree's facet ideal along a good leaf order.
//!
//! If `t` is the last position whose facet meets `F₀`, then
//! `J = (F₀, ..., F_t)` and `K = (F_{t+1}, ..., F_q)` split `I = J + K`:
//! every minimal generator `L` of `J ∩ K` is `lcm(F_i, F_j)` for exactly one
//! `j > t`, and `φ(L)` picks the lex-smallest matching `F_i`, `i ≤ t`.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::betti::table::BettiTable;
use crate::complex::{minimal_positions, Complex};
use crate::error::{Error, Result};
use crate::order::{verify_good_leaf_order, GoodLeafOrder};
use crate::structure;
use crate::vertex_set::{lcm_facets, VertexSet};

/// Default exhaustive subset size for [`verify_splitting`].
pub const SUBSET_CAP: usize = 6;
/// Random subsets drawn beyond the exhaustive range.
pub const RANDOM_SUBSETS: usize = 1000;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub complex: Complex,
    pub order: Vec<usize>,
    /// Position in the order of the last facet meeting `F₀`.
    pub t: usize,
    /// Facet indices of `J` and `K`, in order.
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    /// Minimal generators of `J ∩ K`, sorted by degree, then lex descending.
    pub intersection_gens: Vec<VertexSet>,
    /// Facet index in `J` (resp. `K`) for each generator.
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

impl SplitResult {
    pub fn j_complex(&self) -> Complex {
        self.complex.subcollection(&self.j).expect("valid indices")
    }

    pub fn k_complex(&self) -> Complex {
        self.complex.subcollection(&self.k).expect("valid indices")
    }

    /// The complex whose facet ideal is `J ∩ K`.
    pub fn intersection_complex(&self) -> Complex {
        Complex::new(self.complex.universe().clone(), self.intersection_gens.clone()).expect("minimal generators")
    }
}

/// Minimal elements of `{g ∪ h : g ∈ J, h ∈ K}`.
pub fn intersection_generators(j: &Complex, k: &Complex) -> Result<Vec<VertexSet>> {
    if !j.same_universe(k) {
        return Err(Error::UniverseMismatch);
    }
    let lcms: BTreeSet<VertexSet> =
        j.facets().iter().flat_map(|g| k.facets().iter().map(move |h| lcm_facets(g, h))).collect();
    let lcms: Vec<VertexSet> = lcms.into_iter().collect();
    let (keep, _) = minimal_positions(&lcms);
    let mut gens: Vec<VertexSet> = keep.into_iter().map(|i| lcms[i].clone()).collect();
    gens.sort_by(|a, b| a.len().cmp(&b.len()).then(b.lex_cmp(a)));
    Ok(gens)
}

pub fn split_by_good_leaf(c: &Complex, o: &GoodLeafOrder) -> Result<SplitResult> {
    let report = verify_good_leaf_order(c, &o.order)?;
    if let Some(p) = report.first_failure() {
        return Err(Error::InvalidOrder(format!(
            "property {} fails at position {}",
            p.property,
            p.position.unwrap_or(0)
        )));
    }
    if c.len() < 2 {
        return Err(Error::SplitInapplicable("fewer than two facets".into()));
    }
    let f0 = &c.facets()[o.order[0]];
    let t = (0..o.len()).rev().find(|&p| !f0.is_disjoint(&c.facets()[o.order[p]])).expect("F₀ meets itself");
    if t + 1 == o.len() {
        return Err(Error::SplitInapplicable("every facet meets the first one".into()));
    }
    let j = o.order[..=t].to_vec();
    let k = o.order[t + 1..].to_vec();
    let gens = intersection_generators(&c.subcollection(&j)?, &c.subcollection(&k)?)?;

    let facets = c.facets();
    let mut phi = Vec::with_capacity(gens.len());
    let mut psi = Vec::with_capacity(gens.len());
    for (n, l) in gens.iter().enumerate() {
        let pairs: Vec<(usize, usize)> = j
            .iter()
            .flat_map(|&a| k.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| lcm_facets(&facets[a], &facets[b]) == *l)
            .collect();
        let ks: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        if ks.len() != 1 {
            return Err(Error::SplitNotUnique { generator: n, candidates: ks.into_iter().collect() });
        }
        let a = pairs.iter().map(|p| p.0).min_by(|&x, &y| facets[x].lex_cmp(&facets[y])).expect("some pair");
        phi.push(a);
        psi.push(pairs[0].1);
    }
    Ok(SplitResult { complex: c.clone(), order: o.order.clone(), t, j, k, intersection_gens: gens, phi, psi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCondition {
    /// `J` and `K` partition the generators, both nonempty.
    Partition,
    /// The listed generators are the minimal generators of `J ∩ K`.
    Generators,
    /// `w = lcm(φ(w), ψ(w))`, with `φ(w) ∈ J` and `ψ(w) ∈ K`.
    Lcm,
    /// `lcm(φ(S))` and `lcm(ψ(S))` strictly divide `lcm(S)`.
    StrictDivision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    pub passed: bool,
    pub failed: Option<SplitCondition>,
    /// Generator indices of the first failing subset.
    pub witness: Option<Vec<usize>>,
    pub exhaustive_subsets: usize,
    pub sampled_subsets: usize,
}

impl SplitVerdict {
    fn fail(condition: SplitCondition, witness: Vec<usize>, exhaustive: usize, sampled: usize) -> Self {
        SplitVerdict {
            passed: false,
            failed: Some(condition),
            witness: Some(witness),
            exhaustive_subsets: exhaustive,
            sampled_subsets: sampled,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Calls `visit` on the `k`-subsets of `0..n` in lexicographic order until
/// it returns `false`.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { return true };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Checks the splitting conditions: the generator partition, the
/// generators of `J ∩ K`, `w = lcm(φ(w), ψ(w))`, and strict division for all
/// generator subsets up to `subset_cap`, plus up to [`RANDOM_SUBSETS`]
/// seeded larger ones (all of them when there are no more than that).
pub fn verify_splitting(s: &SplitResult, subset_cap: usize) -> SplitVerdict {
    let c = &s.complex;
    let facets = c.facets();
    let n = s.intersection_gens.len();

    let mut seen = vec![0u8; c.len()];
    let in_range = s.j.iter().chain(&s.k).all(|&i| i < c.len());
    if in_range {
        s.j.iter().chain(&s.k).for_each(|&i| seen[i] += 1);
    }
    if !in_range || s.j.is_empty() || s.k.is_empty() || seen.iter().any(|&m| m != 1) {
        return SplitVerdict::fail(SplitCondition::Partition, vec![], 0, 0);
    }
    let recomputed = intersection_generators(&c.subcollection(&s.j).unwrap(), &c.subcollection(&s.k).unwrap());
    if recomputed.as_ref() != Ok(&s.intersection_gens) || s.phi.len() != n || s.psi.len() != n {
        return SplitVerdict::fail(SplitCondition::Generators, vec![], 0, 0);
    }
    for w in 0..n {
        let (a, b) = (s.phi[w], s.psi[w]);
        if !s.j.contains(&a) || !s.k.contains(&b) || lcm_facets(&facets[a], &facets[b]) != s.intersection_gens[w] {
            return SplitVerdict::fail(SplitCondition::Lcm, vec![w], 0, 0);
        }
    }

    let strictly_divides = |subset: &[usize]| {
        let union = |map: &[usize], sets: &[VertexSet]| {
            subset.iter().fold(VertexSet::new(), |acc, &w| acc.union(&sets[map[w]]))
        };
        let ids: Vec<usize> = (0..n).collect();
        let lcm = union(&ids, &s.intersection_gens);
        union(&s.phi, facets).is_strict_subset(&lcm) && union(&s.psi, facets).is_strict_subset(&lcm)
    };

    let mut exhaustive = 0;
    let mut witness = None;
    for size in 1..=subset_cap.min(n) {
        let complete = for_each_combination(n, size, |subset| {
            exhaustive += 1;
            if strictly_divides(subset) {
                true
            } else {
                witness = Some(subset.to_vec());
                false
            }
        });
        if !complete {
            return SplitVerdict::fail(SplitCondition::StrictDivision, witness.unwrap(), exhaustive, 0);
        }
    }

    let mut sampled = 0;
    if n > subset_cap {
        let larger: u128 = (subset_cap + 1..=n).map(|k| binomial(n, k)).sum();
        if larger <= RANDOM_SUBSETS as u128 {
            for size in subset_cap + 1..=n {
                let complete = for_each_combination(n, size, |subset| {
                    sampled += 1;
                    if strictly_divides(subset) {
                        true
                    } else {
                        witness = Some(subset.to_vec());
                        false
                    }
                });
                if !complete {
                    return SplitVerdict::fail(SplitCondition::StrictDivision, witness.unwrap(), exhaustive, sampled);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            for _ in 0..RANDOM_SUBSETS {
                let size = rng.gen_range(subset_cap + 1..=n);
                let mut subset = sample(&mut rng, n, size).into_vec();
                subset.sort_unstable();
                sampled += 1;
                if !strictly_divides(&subset) {
                    return SplitVerdict::fail(SplitCondition::StrictDivision, subset, exhaustive, sampled);
                }
            }
        }
    }
    SplitVerdict { passed: true, failed: None, witness: None, exhaustive_subsets: exhaustive, sampled_subsets: sampled }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCell {
    pub i: usize,
    pub j: usize,
    pub whole: u64,
    pub j_part: u64,
    pub k_part: u64,
    /// `β_{i-1,j}(J ∩ K)`.
    pub intersection: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    pub cells: Vec<IdentityCell>,
}

/// `β_{i,j}(I) = β_{i,j}(J) + β_{i,j}(K) + β_{i-1,j}(J ∩ K)` at every `(i, j)`
/// where any of the four terms is nonzero.
pub fn ek_betti_identity_check(i: &BettiTable, j: &BettiTable, k: &BettiTable, jk: &BettiTable) -> IdentityReport {
    let mut keys: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in [i, j, k] {
        keys.extend(t.entries().map(|e| (e.i, e.j)));
    }
    keys.extend(jk.entries().map(|e| (e.i + 1, e.j)));
    let cells: Vec<IdentityCell> = keys
        .into_iter()
        .map(|(a, b)| {
            let (a_s, whole) = (a as isize, i.get(a as isize, b));
            let (j_part, k_part, intersection) = (j.get(a_s, b), k.get(a_s, b), jk.get(a_s - 1, b));
            IdentityCell {
                i: a,
                j: b,
                whole,
                j_part,
                k_part,
                intersection,
                holds: whole == j_part + k_part + intersection,
            }
        })
        .collect();
    IdentityReport { holds: cells.iter().all(|c| c.holds), cells }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCell {
    pub i: usize,
    pub j: usize,
    pub whole: u64,
    pub parts: Vec<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxBound {
    pub whole: usize,
    pub parts: Vec<usize>,
    pub holds: bool,
}

impl MaxBound {
    fn new(whole: usize, parts: Vec<usize>) -> Self {
        let holds = parts.iter().all(|&p| p <= whole);
        MaxBound { whole, parts, holds }
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub cells: Vec<BoundCell>,
    pub projdim: MaxBound,
    /// Diagram regularity; the literal one differs by the same constant.
    pub reg: MaxBound,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.cells.iter().all(|c| c.holds) && self.projdim.holds && self.reg.holds
    }
}

fn hypothesis(clause: u8, detail: String) -> Error {
    Error::PartitionHypothesis { clause, detail }
}

/// Checks that the tree `c` is cut into consecutive trees `Δ₀, ..., Δ_s`
/// (each part listed in its own order, parts in order):
///
/// 1. each part is a tree whose first facet is a good leaf;
/// 2. each part's listing is a good leaf order in which, when there is more
///    than one part, every facet meets the part's first facet;
/// 3. a part's first facet meets no facet of a later part.
///
/// Clause 0 covers the partition itself and `c` being a tree.
pub fn check_partition(c: &Complex, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; c.len()];
    for part in partition {
        if part.is_empty() {
            return Err(hypothesis(0, "empty part".into()));
        }
        for &f in part {
            c.facet(f)?;
            if std::mem::replace(&mut seen[f], true) {
                return Err(Error::DuplicateIndex(f));
            }
        }
    }
    if let Some(f) = seen.iter().position(|&s| !s) {
        return Err(hypothesis(0, format!("F{f} is in no part")));
    }
    if !structure::is_tree(c) {
        return Err(hypothesis(0, "the complex is not a tree".into()));
    }
    let facets = c.facets();
    for (n, part) in partition.iter().enumerate() {
        let sub = c.subcollection(part)?;
        if !structure::is_tree(&sub) {
            return Err(hypothesis(1, format!("part {n} is not a tree")));
        }
        if !structure::is_good_leaf(&sub, 0)? {
            return Err(hypothesis(1, format!("F{} is not a good leaf of part {n}", part[0])));
        }
        let local: Vec<usize> = (0..part.len()).collect();
        if let Some(p) = verify_good_leaf_order(&sub, &local)?.first_failure() {
            return Err(hypothesis(
                2,
                format!(
                    "part {n} is not a good leaf order: property {} fails at position {}",
                    p.property,
                    p.position.unwrap_or(0)
                ),
            ));
        }
        if partition.len() > 1 {
            if let Some(&f) = part.iter().find(|&&f| facets[f].is_disjoint(&facets[part[0]])) {
                return Err(hypothesis(2, format!("F{f} does not meet F{} in part {n}", part[0])));
            }
        }
        for later in &partition[n + 1..] {
            if let Some(&f) = later.iter().find(|&&f| !facets[f].is_disjoint(&facets[part[0]])) {
                return Err(hypothesis(3, format!("F{} meets F{f}", part[0])));
            }
        }
    }
    Ok(())
}

/// Compares the table of `c` against the tables of the parts after checking
/// the partition hypotheses.
pub fn partition_bounds(
    c: &Complex,
    partition: &[Vec<usize>],
    whole: &BettiTable,
    parts: &[BettiTable],
) -> Result<BoundsReport> {
    check_partition(c, partition)?;
    if parts.len() != partition.len() {
        return Err(hypothesis(0, format!("{} tables for {} parts", parts.len(), partition.len())));
    }
    let mut keys: BTreeSet<(usize, usize)> = whole.entries().map(|e| (e.i, e.j)).collect();
    for t in parts {
        keys.extend(t.entries().map(|e| (e.i, e.j)));
    }
    let cells = keys
        .into_iter()
        .map(|(i, j)| {
            let w = whole.get(i as isize, j);
            let ps: Vec<u64> = parts.iter().map(|t| t.get(i as isize, j)).collect();
            BoundCell { i, j, whole: w, holds: ps.iter().sum::<u64>() <= w, parts: ps }
        })
        .collect();
    let projdim = MaxBound::new(whole.projdim()?, parts.iter().map(|t| t.projdim()).collect::<Result<_>>()?);
    let reg =
        MaxBound::new(whole.reg()?.diagram, parts.iter().map(|t| t.reg().map(|r| r.diagram)).collect::<Result<_>>()?);
    Ok(BoundsReport { cells, projdim, reg })
}
