//! Good leaf orders of simplicial trees.
//!
//! Starting from a good leaf `F₀`, the other facets are sorted by how much
//! they share with `F₀` (the intersections form a chain, so sizes decide).
//! Each maximal block of facets with the same intersection is then
//! rearranged by repeatedly pulling a leaf of the current prefix complex out
//! of the block and placing it at the block's right end, so that every facet
//! becomes a leaf of the complex generated by the facets before it.
//!
//! [`verify_good_leaf_order`] re-checks the four properties of such an order
//! using only the structure predicates; it shares nothing with the
//! constructor.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::structure::{self, is_good_leaf, is_leaf_within, joints_within};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodLeafOrder {
    /// Facet indices; `order[0]` is the good leaf.
    pub order: Vec<usize>,
    /// `chain[k]` is `F₀ ∩ F_order[k]` (so `chain[0] = F₀`).
    pub chain: Vec<VertexSet>,
    /// For `k ≥ 1`, the smallest-index joint of `F_order[k]` in the prefix
    /// complex `⟨F_order[0], ..., F_order[k]⟩`.
    pub joints: Vec<Option<usize>>,
    /// `chain[1] ⊋ chain[2] ⊋ ...`
    pub strict: bool,
}

impl GoodLeafOrder {
    /// Wraps an explicit permutation, accepting it only if the verifier
    /// passes all four properties.
    pub fn from_permutation(c: &Complex, order: Vec<usize>) -> Result<Self> {
        let report = verify_good_leaf_order(c, &order)?;
        if let Some(p) = report.first_failure() {
            return Err(Error::InvalidOrder(format!(
                "property {} fails at position {}",
                p.property,
                p.position.unwrap_or(0)
            )));
        }
        Ok(annotate(c, order))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Facets in order.
    pub fn facets<'a>(&'a self, c: &'a Complex) -> impl Iterator<Item = &'a VertexSet> + 'a {
        self.order.iter().map(move |&k| &c.facets()[k])
    }
}

fn annotate(c: &Complex, order: Vec<usize>) -> GoodLeafOrder {
    let facets = c.facets();
    let f0 = &facets[order[0]];
    let chain: Vec<VertexSet> = order.iter().map(|&k| f0.intersection(&facets[k])).collect();
    let joints = (0..order.len())
        .map(|k| if k == 0 { None } else { joints_within(facets, &order[..=k], order[k]).into_iter().min() })
        .collect();
    let strict = chain.windows(2).skip(1).all(|w| w[0] != w[1]);
    GoodLeafOrder { order, chain, joints, strict }
}

/// Builds a good leaf order starting at the good leaf `g` of the tree `c`.
pub fn good_leaf_order(c: &Complex, g: usize) -> Result<GoodLeafOrder> {
    c.facet(g)?;
    if !structure::is_tree(c) {
        return Err(Error::NotATree);
    }
    if !is_good_leaf(c, g)? {
        return Err(Error::NotAGoodLeaf(g));
    }
    let facets = c.facets();
    let f0 = &facets[g];

    let mut rest: Vec<usize> = (0..c.len()).filter(|&k| k != g).collect();
    rest.sort_by_key(|&k| std::cmp::Reverse(f0.intersection(&facets[k]).len()));

    let mut order = vec![g];
    let mut start = 0;
    while start < rest.len() {
        let cut = f0.intersection(&facets[rest[start]]);
        let mut end = start + 1;
        while end < rest.len() && f0.intersection(&facets[rest[end]]).len() == cut.len() {
            // a chain holds at most one set of each size
            assert_eq!(f0.intersection(&facets[rest[end]]), cut, "intersections with a good leaf must form a chain");
            end += 1;
        }
        let mut block: Vec<usize> = rest[start..end].to_vec();
        let mut prefix: Vec<usize> = order.iter().copied().chain(block.iter().copied()).collect();
        let mut placed = vec![0; block.len()];
        for slot in (0..placed.len()).rev() {
            let leaf = leaf_among(facets, &prefix, &block)
                .ok_or_else(|| Error::NoLeafInBlock { prefix_end: order.len() + slot, block: block.clone() })?;
            placed[slot] = leaf;
            block.retain(|&k| k != leaf);
            prefix.retain(|&k| k != leaf);
        }
        order.extend(placed);
        start = end;
    }
    Ok(annotate(c, order))
}

/// Smallest-index member of `candidates` that is a leaf of the
/// subcollection `members`.
fn leaf_among(facets: &[VertexSet], members: &[usize], candidates: &[usize]) -> Option<usize> {
    candidates.iter().copied().filter(|&k| is_leaf_within(facets, members, k)).min()
}

/// The smallest-index facet of `block` that is a leaf of the prefix complex
/// `⟨F₀, ..., F_prefix_end⟩`. The prefix need not be connected.
pub fn find_leaf_in_block(c: &Complex, prefix_end: usize, block: &[usize]) -> Result<usize> {
    c.facet(prefix_end)?;
    for &k in block {
        if k > prefix_end {
            return Err(Error::IndexOutOfRange { index: k, len: prefix_end + 1 });
        }
    }
    let members: Vec<usize> = (0..=prefix_end).collect();
    leaf_among(c.facets(), &members, block).ok_or_else(|| Error::NoLeafInBlock { prefix_end, block: block.to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: u8,
    pub passed: bool,
    /// First failing position in the order.
    pub position: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    /// Properties 1-4: nested intersections with the first facet; each
    /// facet a leaf of its prefix; the previous facet keeps a joint or is the
    /// unique joint of the new one; every prefix connected.
    pub properties: [PropertyCheck; 4],
}

impl OrderReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyCheck> {
        self.properties.iter().find(|p| !p.passed)
    }

    pub fn property(&self, n: u8) -> &PropertyCheck {
        &self.properties[n as usize - 1]
    }
}

fn check(property: u8, position: Option<usize>) -> PropertyCheck {
    PropertyCheck { property, passed: position.is_none(), position }
}

pub fn verify_good_leaf_order(c: &Complex, o: &[usize]) -> Result<OrderReport> {
    let mut seen = vec![false; c.len()];
    if o.len() != c.len() {
        return Err(Error::InvalidPermutation(format!("{} entries for {} facets", o.len(), c.len())));
    }
    for &k in o {
        if k >= c.len() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidPermutation(format!("entry {k}")));
        }
    }
    if o.is_empty() {
        return Ok(OrderReport { properties: [1, 2, 3, 4].map(|p| check(p, None)) });
    }

    let prefix = |k: usize| c.subcollection(&o[..=k]).expect("valid permutation");

    // (1) F₀∩F₁ ⊇ F₀∩F₂ ⊇ ...
    let f0 = c.facet(o[0])?;
    let one = (2..o.len()).find(|&k| {
        let prev = f0.intersection(c.facet(o[k - 1]).unwrap());
        let cur = f0.intersection(c.facet(o[k]).unwrap());
        !cur.is_subset(&prev)
    });

    // (2) F_k is a leaf of Δ_k; the last facet of a prefix sits at index k
    let two = (0..o.len()).find(|&k| structure::leaf_certificate(&prefix(k), k).unwrap().is_none());

    // (3) F_{k-1} is a leaf of Δ_k sharing a joint with its Δ_{k-1} joints,
    //     or it is the unique joint of F_k in Δ_k
    let three = (1..o.len()).find(|&k| {
        let now = prefix(k);
        let unique_joint = structure::leaf_certificate(&now, k).unwrap().is_some_and(|cert| cert.joints == [k - 1]);
        if unique_joint {
            return false;
        }
        let before = structure::leaf_certificate(&prefix(k - 1), k - 1).unwrap();
        let after = structure::leaf_certificate(&now, k - 1).unwrap();
        let kept = match (before, after) {
            (Some(b), Some(a)) => b.joints.iter().any(|j| a.joints.contains(j)),
            _ => false,
        };
        !kept
    });

    // (4) every prefix connected
    let four = (0..o.len()).find(|&k| structure::connected_components(&prefix(k)).len() != 1);

    Ok(OrderReport { properties: [check(1, one), check(2, two), check(3, three), check(4, four)] })
}
