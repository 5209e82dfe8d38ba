//! Combinatorial Betti numbers of simplicial forests.
//!
//! A facet `F` with a free vertex splits the facet ideal as
//! `I = (x_F) + I(Δ ∖ F)`, and the intersection is `x_F` times the ideal of
//! the localization at `F`. That localization is the reduced connected
//! component of `F` plus the (untouched) rest of the complex, two ideals in
//! disjoint variables. Hence
//!
//! ```text
//! β_{i,j}(Δ) = β_{i,j}(Δ∖F)
//!            + Σ β_{p,a}(reduced conn) · β_{q,b}(Δ∖conn(F)),   p+q+2 = i, a+b+|F| = j
//! ```
//!
//! with `β_{-1,0} = 1` for the zero ideal. [`betti_hv`] applies this
//! recursively; [`betti_glo`] unrolls it along a good leaf order, where every
//! prefix is connected and the outside term vanishes.

use std::collections::{BTreeMap, HashMap};

use crate::betti::table::BettiTable;
use crate::complex::{minimal_positions, CanonicalKey, Complex};
use crate::error::{Error, Result};
use crate::order::{verify_good_leaf_order, GoodLeafOrder};
use crate::structure::{self, connected_components, free_vertices, is_leaf_within, outside_component_of, reduced_conn};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    /// Recursion nodes evaluated (memo hits included).
    pub nodes: usize,
    pub memo_hits: usize,
    pub max_depth: usize,
}

#[derive(Default)]
struct Engine {
    memo: HashMap<CanonicalKey, BettiTable>,
    stats: RecursionStats,
}

/// The splitting-facet combination above.
fn combine(size: usize, without: BettiTable, conn: &BettiTable, outside: &BettiTable) -> BettiTable {
    let mut t = without;
    for (p, a, x) in conn.extended() {
        for (q, b, y) in outside.extended() {
            t.add((p + q + 2) as usize, a + b + size, x * y);
        }
    }
    t
}

impl Engine {
    fn enter(&mut self, c: &Complex, depth: usize) -> std::result::Result<CanonicalKey, BettiTable> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let key = c.canonical_key();
        match self.memo.get(&key) {
            Some(t) => {
                self.stats.memo_hits += 1;
                Err(t.clone())
            }
            None => Ok(key),
        }
    }

    fn base(c: &Complex) -> Option<BettiTable> {
        match c.len() {
            0 => Some(BettiTable::zero()),
            1 => Some(BettiTable::single(c.facets()[0].len())),
            _ => None,
        }
    }

    fn split(&mut self, c: &Complex, f: usize, depth: usize, ordered: bool) -> Result<BettiTable> {
        let parts = [c.remove_facet(f)?, reduced_conn(c, f)?, outside_component_of(c, f)?];
        let mut tables = Vec::with_capacity(3);
        for part in &parts {
            tables.push(if ordered { self.ordered(part, depth + 1)? } else { self.hv(part, depth + 1)? });
        }
        let outside = tables.pop().unwrap();
        let conn = tables.pop().unwrap();
        let without = tables.pop().unwrap();
        Ok(combine(c.facets()[f].len(), without, &conn, &outside))
    }

    /// Splits at the lowest-index facet that is a leaf of its component.
    fn hv(&mut self, c: &Complex, depth: usize) -> Result<BettiTable> {
        let key = match self.enter(c, depth) {
            Ok(key) => key,
            Err(hit) => return Ok(hit),
        };
        let table = match Self::base(c) {
            Some(t) => t,
            None => {
                let comps = connected_components(c);
                let leaf = (0..c.len())
                    .find(|&f| {
                        let comp = comps.iter().find(|comp| comp.contains(&f)).expect("covered");
                        is_leaf_within(c.facets(), comp, f)
                    })
                    .ok_or(Error::RecursionStuck)?;
                self.split(c, leaf, depth, false)?
            }
        };
        self.memo.insert(key, table.clone());
        Ok(table)
    }

    /// Splits at the last facet while it has a free vertex, otherwise falls
    /// back to [`Engine::hv`]. Subcomplexes keep the relative facet order.
    fn ordered(&mut self, c: &Complex, depth: usize) -> Result<BettiTable> {
        let key = match self.enter(c, depth) {
            Ok(key) => key,
            Err(hit) => return Ok(hit),
        };
        let table = match Self::base(c) {
            Some(t) => t,
            None => {
                let last = c.len() - 1;
                if free_vertices(c, last)?.is_empty() {
                    // undo the bookkeeping, hv counts this node itself
                    self.stats.nodes -= 1;
                    return self.hv(c, depth);
                }
                self.split(c, last, depth, true)?
            }
        };
        self.memo.insert(key, table.clone());
        Ok(table)
    }
}

/// Graded Betti numbers of the facet ideal of a forest.
pub fn betti_hv(c: &Complex) -> Result<BettiTable> {
    betti_hv_with_stats(c).map(|(t, _)| t)
}

pub fn betti_hv_with_stats(c: &Complex) -> Result<(BettiTable, RecursionStats)> {
    if !structure::is_forest(c).verdict {
        return Err(Error::NotAForest);
    }
    let mut engine = Engine::default();
    let t = engine.hv(c, 0)?;
    Ok((t, engine.stats))
}

/// One term of the good-leaf-order formula: the localization of the prefix
/// `⟨F₀, ..., F_{u-1}⟩` at `F_u`.
#[derive(Clone, Debug)]
pub struct GloStep {
    pub u: usize,
    pub localized: Complex,
    /// Order positions of the surviving facets.
    pub survivors: Vec<usize>,
    pub table: BettiTable,
    /// Checks made for strict orders only.
    pub certificate: Option<StepCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepCertificate {
    /// `F_{u-1} ∖ F_u` is a facet of the localization.
    pub last_survives: bool,
    pub is_tree: bool,
    /// The last localized facet has a free vertex there.
    pub last_has_free_vertex: bool,
}

impl StepCertificate {
    pub fn holds(&self) -> bool {
        self.last_survives && self.is_tree && self.last_has_free_vertex
    }
}

#[derive(Clone, Debug)]
pub struct GloReport {
    pub table: BettiTable,
    pub steps: Vec<GloStep>,
    pub strict: bool,
    pub stats: RecursionStats,
}

fn strict_chain(chain: &[VertexSet]) -> bool {
    chain.windows(2).skip(1).all(|w| w[0] != w[1])
}

/// Orders are re-checked here since their fields are public: the formula
/// needs every facet to be a leaf of its prefix and every prefix connected.
fn check_order(c: &Complex, o: &GoodLeafOrder) -> Result<()> {
    let report = verify_good_leaf_order(c, &o.order)?;
    for n in [2, 4] {
        let p = report.property(n);
        if !p.passed {
            return Err(Error::InvalidOrder(format!("property {n} fails at position {}", p.position.unwrap_or(0))));
        }
    }
    Ok(())
}

fn chain_of(c: &Complex, o: &GoodLeafOrder) -> Vec<VertexSet> {
    let f0 = &c.facets()[o.order[0]];
    o.order.iter().map(|&k| f0.intersection(&c.facets()[k])).collect()
}

pub fn betti_glo(c: &Complex, o: &GoodLeafOrder) -> Result<BettiTable> {
    betti_glo_report(c, o).map(|r| r.table)
}

/// [`betti_glo`] with every localization, its table, and for strict orders
/// the per-step certificates. Sub-tables of strict orders come from the
/// ordered recursion (peel the last facet while it has a free vertex);
/// otherwise from [`betti_hv`].
pub fn betti_glo_report(c: &Complex, o: &GoodLeafOrder) -> Result<GloReport> {
    check_order(c, o)?;
    let mut engine = Engine::default();
    if c.is_empty() {
        return Ok(GloReport { table: BettiTable::zero(), steps: vec![], strict: true, stats: engine.stats });
    }
    let strict = strict_chain(&chain_of(c, o));
    let ordered = c.subcollection(&o.order)?;
    let facets = ordered.facets();
    let mut table = BettiTable::single(facets[0].len());
    let mut steps = Vec::with_capacity(facets.len().saturating_sub(1));
    #[allow(clippy::needless_range_loop)]
    for u in 1..facets.len() {
        let prefix = ordered.subcollection(&(0..u).collect::<Vec<_>>())?;
        let (localized, survivors) = structure::localize_indexed(&prefix, &facets[u]);
        let sub = if strict { engine.ordered(&localized, 1)? } else { engine.hv(&localized, 1)? };
        for (p, d, v) in sub.extended() {
            table.add((p + 1) as usize, d + facets[u].len(), v);
        }
        let certificate = strict.then(|| StepCertificate {
            last_survives: survivors.last() == Some(&(u - 1)),
            is_tree: structure::is_tree(&localized),
            last_has_free_vertex: !localized.is_empty()
                && !free_vertices(&localized, localized.len() - 1).expect("nonempty").is_empty(),
        });
        steps.push(GloStep { u, localized, survivors, table: sub, certificate });
    }
    Ok(GloReport { table, steps, strict, stats: engine.stats })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainCertificates {
    /// Each entry after the first was the largest surviving position.
    pub largest_index_rule: bool,
    /// Intersections of the result's facets with `F₀` strictly decrease.
    pub strict_chain: bool,
    pub is_tree: bool,
    pub last_has_free_vertex: bool,
}

#[derive(Clone, Debug)]
pub struct LocalizationChain {
    pub base: Complex,
    pub order: GoodLeafOrder,
    /// Order positions `u₁ > u₂ > ...`.
    pub chain: Vec<usize>,
    pub result: Complex,
    /// Order position of each facet of `result`.
    pub survivors: Vec<usize>,
    pub certificates: ChainCertificates,
}

/// Iterated localization along a strict good leaf order: first the prefix
/// before position `chain[0]` at `F_{chain[0]}`, then each time the facets
/// before the largest surviving position at that facet.
pub fn localization_chain(c: &Complex, o: &GoodLeafOrder, chain: &[usize]) -> Result<LocalizationChain> {
    check_order(c, o)?;
    if !c.is_empty() && !strict_chain(&chain_of(c, o)) {
        return Err(Error::NonStrictOrder);
    }
    let mut current: Vec<(usize, VertexSet)> =
        o.order.iter().enumerate().map(|(pos, &k)| (pos, c.facets()[k].clone())).collect();
    for (step, &entry) in chain.iter().enumerate() {
        let at = if step == 0 {
            if entry == 0 || entry >= current.len() {
                return Err(Error::ChainEntry { entry, expected: None });
            }
            entry
        } else {
            let expected = current.last().map(|(pos, _)| *pos);
            if expected != Some(entry) {
                return Err(Error::ChainEntry { entry, expected });
            }
            current.len() - 1
        };
        debug_assert_eq!(current[at].0, entry);
        let f = current[at].1.clone();
        let diffs: Vec<(usize, VertexSet)> =
            current[..at].iter().map(|(pos, g)| (*pos, g.difference(&f))).filter(|(_, d)| !d.is_empty()).collect();
        let sets: Vec<VertexSet> = diffs.iter().map(|(_, d)| d.clone()).collect();
        let (keep, _) = minimal_positions(&sets);
        current = keep.into_iter().map(|k| diffs[k].clone()).collect();
    }
    let (survivors, facets): (Vec<usize>, Vec<VertexSet>) = current.into_iter().unzip();
    let result = Complex::new(c.universe().clone(), facets)?;

    let f0 = o.order.first().map(|&k| c.facets()[k].clone()).unwrap_or_default();
    let cuts: Vec<VertexSet> = result.facets().iter().map(|g| f0.intersection(g)).collect();
    let certificates = ChainCertificates {
        largest_index_rule: true,
        strict_chain: cuts.windows(2).all(|w| w[1].is_strict_subset(&w[0])),
        is_tree: structure::is_tree(&result),
        last_has_free_vertex: !result.is_empty()
            && !free_vertices(&result, result.len() - 1).expect("nonempty").is_empty(),
    };
    Ok(LocalizationChain { base: c.clone(), order: o.clone(), chain: chain.to_vec(), result, survivors, certificates })
}

/// `j ↦ β_{0,j}`: the facet degree histogram.
pub fn beta0_formula(c: &Complex, o: &GoodLeafOrder) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for f in o.facets(c) {
        *out.entry(f.len()).or_insert(0) += 1;
    }
    out
}

/// `j ↦ β_{1,j}`: for each `u ≥ 1` and `v < u`, the pair counts at
/// `j = |F_u| + |F_v ∖ F_u|` when `F_v ∖ F_u` is inclusion-minimal among the
/// `F_d ∖ F_u`, `d < u` (the lowest `v` counts among equal differences).
pub fn beta1_formula(c: &Complex, o: &GoodLeafOrder) -> Result<BTreeMap<usize, u64>> {
    check_order(c, o)?;
    let facets: Vec<&VertexSet> = o.facets(c).collect();
    let mut out = BTreeMap::new();
    for u in 1..facets.len() {
        let diffs: Vec<VertexSet> = facets[..u].iter().map(|f| f.difference(facets[u])).collect();
        for (v, d) in diffs.iter().enumerate() {
            let minimal = diffs.iter().enumerate().all(|(w, e)| !(e.is_strict_subset(d) || (w < v && e == d)));
            if minimal {
                *out.entry(facets[u].len() + d.len()).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}
