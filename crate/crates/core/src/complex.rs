//! Simplicial complexes given by their facets, which double as the minimal
//! generators of the facet ideal.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Ordered list of distinct vertex names. Vertex `k` is `names[k]`; all lex
/// comparisons read vertices in this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Universe { names })
    }

    /// `n` single-letter names `a`, `b`, ..., `z`, `A`, ..., then `v52`, `v53`, ...
    pub fn letters(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0..=25 => ((b'a' + k as u8) as char).to_string(),
                26..=51 => ((b'A' + (k - 26) as u8) as char).to_string(),
                _ => format!("v{k}"),
            })
            .collect();
        Universe { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn words(&self) -> usize {
        self.names.len().div_ceil(64).max(1)
    }

    pub fn single_letter(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Renders a vertex set as a monomial: concatenated names when every
    /// name is one character, `*`-joined otherwise.
    pub fn monomial(&self, s: &VertexSet) -> String {
        let sep = if self.single_letter() { "" } else { "*" };
        s.iter().map(|v| self.name(v)).collect::<Vec<_>>().join(sep)
    }
}

/// Order-insensitive, label-sensitive memo key of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A list of pairwise inclusion-incomparable nonempty facets over a shared
/// universe. The list order is kept (it carries candidate orders), but
/// equality compares facet sets.
#[derive(Clone)]
pub struct Complex {
    universe: Arc<Universe>,
    facets: Vec<VertexSet>,
}

impl Complex {
    pub fn new(universe: Arc<Universe>, facets: Vec<VertexSet>) -> Result<Self> {
        for (i, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            if f.bound() > universe.len() {
                return Err(Error::VertexOutOfUniverse(i));
            }
            for (j, g) in facets[..i].iter().enumerate() {
                if f.is_subset(g) || g.is_subset(f) {
                    return Err(Error::ComparableFacets(j, i));
                }
            }
        }
        Ok(Complex { universe, facets })
    }

    pub fn empty(universe: Arc<Universe>) -> Self {
        Complex { universe, facets: Vec::new() }
    }

    /// Builds the complex of the minimal generators among `sets`, keeping
    /// first occurrences in order. Returns the complex and, for every
    /// dropped input position, the position of a kept set dividing it.
    pub fn minimalized(universe: Arc<Universe>, sets: Vec<VertexSet>) -> Result<(Self, Vec<(usize, usize)>)> {
        for (i, f) in sets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            if f.bound() > universe.len() {
                return Err(Error::VertexOutOfUniverse(i));
            }
        }
        let (keep, dropped) = minimal_positions(&sets);
        let facets = keep.iter().map(|&k| sets[k].clone()).collect();
        Ok((Complex { universe, facets }, dropped))
    }

    pub(crate) fn from_parts_unchecked(universe: Arc<Universe>, facets: Vec<VertexSet>) -> Self {
        debug_assert!(Complex::new(universe.clone(), facets.clone()).is_ok());
        Complex { universe, facets }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> Result<&VertexSet> {
        self.facets.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.facets.len() })
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn same_universe(&self, other: &Complex) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    /// Union of all facets.
    pub fn support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f))
    }

    pub fn remove_facet(&self, i: usize) -> Result<Complex> {
        self.facet(i)?;
        let mut facets = self.facets.clone();
        facets.remove(i);
        Ok(Complex { universe: self.universe.clone(), facets })
    }

    /// The complex generated by the facets at `indices`, in the given order.
    pub fn subcollection(&self, indices: &[usize]) -> Result<Complex> {
        let mut facets = Vec::with_capacity(indices.len());
        for (k, &i) in indices.iter().enumerate() {
            if indices[..k].contains(&i) {
                return Err(Error::DuplicateIndex(i));
            }
            facets.push(self.facet(i)?.clone());
        }
        Ok(Complex { universe: self.universe.clone(), facets })
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut sorted: Vec<&VertexSet> = self.facets.iter().collect();
        sorted.sort();
        let words = self.universe.words();
        let mut bytes = Vec::with_capacity(sorted.len() * words * 8);
        for f in sorted {
            f.write_bytes(words, &mut bytes);
        }
        CanonicalKey(bytes)
    }

    /// Facets as sorted lists of vertex names; handy for comparing complexes
    /// across universes.
    pub fn named_facets(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|v| self.universe.name(v).to_owned()).collect()).collect()
    }

    /// Facet set as sorted name lists, independent of list order and universe.
    pub fn facet_name_set(&self) -> std::collections::BTreeSet<Vec<String>> {
        self.named_facets()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect()
    }

    pub fn monomial(&self, i: usize) -> String {
        self.universe.monomial(&self.facets[i])
    }
}

/// Positions of the inclusion-minimal sets (first occurrence among equals),
/// plus `(dropped, witness)` pairs for everything else.
pub(crate) fn minimal_positions(sets: &[VertexSet]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut keep = Vec::new();
    let mut dropped = Vec::new();
    'outer: for (i, s) in sets.iter().enumerate() {
        for (j, t) in sets.iter().enumerate() {
            if j != i && (t.is_strict_subset(s) || (t == s && j < i)) {
                dropped.push((i, j));
                continue 'outer;
            }
        }
        keep.push(i);
    }
    // report a kept witness: follow the chain of divisors down to a kept set
    for d in dropped.iter_mut() {
        let target = &sets[d.0];
        if let Some(&k) = keep.iter().find(|&&k| sets[k].is_subset(target)) {
            d.1 = k;
        }
    }
    (keep, dropped)
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", crate::parse::render_ideal(self))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_ideal(self))
    }
}
