//! Structural predicates: connectivity, leaves and joints, good leaves,
//! forest and tree recognition, localization.
//!
//! A facet `F` is a good leaf iff the intersections `F ∩ G` over the other
//! facets form a chain under inclusion. If they do, the largest one is a
//! joint in every subcollection containing `F`; if `F ∩ G` and `F ∩ H` are
//! incomparable, `F` is not a leaf of `⟨F, G, H⟩`.
//!
//! Forests are recognized by peeling good leaves: a complex is a forest iff
//! it has a good leaf `F` and the complex without `F` is a forest.

use crate::complex::{minimal_positions, Complex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default facet cap for [`is_forest_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafCertificate {
    pub leaf: usize,
    /// Every joint of the leaf, ascending. Empty for a single-facet complex.
    pub joints: Vec<usize>,
    pub free_vertices: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCertificate {
    pub verdict: bool,
    /// Facets in peeling order; each is a good leaf of what remains.
    pub peel_order: Option<Vec<usize>>,
    /// A subcollection without a leaf. `None` on a negative verdict only
    /// when the stuck residual exceeds the brute-force cap.
    pub witness: Option<Vec<usize>>,
}

// Index-list helpers shared by the public predicates. `members` selects a
// subcollection of `facets`.

pub(crate) fn joints_within(facets: &[VertexSet], members: &[usize], f: usize) -> Vec<usize> {
    let leaf = &facets[f];
    let touched =
        members.iter().filter(|&&h| h != f).fold(VertexSet::new(), |acc, &h| acc.union(&leaf.intersection(&facets[h])));
    members.iter().copied().filter(|&g| g != f && touched.is_subset(&facets[g])).collect()
}

pub(crate) fn is_leaf_within(facets: &[VertexSet], members: &[usize], f: usize) -> bool {
    members.len() == 1 || !joints_within(facets, members, f).is_empty()
}

pub(crate) fn is_good_leaf_within(facets: &[VertexSet], members: &[usize], f: usize) -> bool {
    let cuts: Vec<VertexSet> =
        members.iter().filter(|&&g| g != f).map(|&g| facets[f].intersection(&facets[g])).collect();
    cuts.iter().enumerate().all(|(a, x)| cuts[a + 1..].iter().all(|y| x.is_subset(y) || y.is_subset(x)))
}

pub(crate) fn components_within(facets: &[VertexSet], members: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let a = members[comp[k]];
            for b in 0..members.len() {
                if !seen[b] && !facets[a].is_disjoint(&facets[members[b]]) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        let mut comp: Vec<usize> = comp.into_iter().map(|p| members[p]).collect();
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by_key(|c| c[0]);
    out
}

fn all(c: &Complex) -> Vec<usize> {
    (0..c.len()).collect()
}

/// Maximal groups of facets linked by chains of pairwise intersections,
/// each ascending, ordered by smallest member.
pub fn connected_components(c: &Complex) -> Vec<Vec<usize>> {
    components_within(c.facets(), &all(c))
}

pub fn leaf_certificate(c: &Complex, i: usize) -> Result<Option<LeafCertificate>> {
    c.facet(i)?;
    let members = all(c);
    let joints = joints_within(c.facets(), &members, i);
    if c.len() > 1 && joints.is_empty() {
        return Ok(None);
    }
    let others = members.iter().filter(|&&h| h != i).fold(VertexSet::new(), |acc, &h| acc.union(&c.facets()[h]));
    let free_vertices = c.facets()[i].difference(&others);
    debug_assert!(!free_vertices.is_empty());
    Ok(Some(LeafCertificate { leaf: i, joints, free_vertices }))
}

/// Vertices of facet `i` lying in no other facet.
pub fn free_vertices(c: &Complex, i: usize) -> Result<VertexSet> {
    let f = c.facet(i)?;
    let others =
        c.facets().iter().enumerate().filter(|&(h, _)| h != i).fold(VertexSet::new(), |acc, (_, g)| acc.union(g));
    Ok(f.difference(&others))
}

pub fn is_good_leaf(c: &Complex, i: usize) -> Result<bool> {
    c.facet(i)?;
    Ok(is_good_leaf_within(c.facets(), &all(c), i))
}

pub fn good_leaves(c: &Complex) -> Vec<usize> {
    let members = all(c);
    members.iter().copied().filter(|&i| is_good_leaf_within(c.facets(), &members, i)).collect()
}

pub fn is_forest(c: &Complex) -> ForestCertificate {
    let facets = c.facets();
    let mut remaining = all(c);
    let mut peel_order = Vec::with_capacity(c.len());
    while !remaining.is_empty() {
        match remaining.iter().position(|&f| is_good_leaf_within(facets, &remaining, f)) {
            Some(p) => peel_order.push(remaining.remove(p)),
            None => {
                let witness =
                    if remaining.len() <= BRUTE_FORCE_CAP { leafless_subcollection(facets, &remaining) } else { None };
                debug_assert!(remaining.len() > BRUTE_FORCE_CAP || witness.is_some());
                return ForestCertificate { verdict: false, peel_order: None, witness };
            }
        }
    }
    ForestCertificate { verdict: true, peel_order: Some(peel_order), witness: None }
}

/// Smallest leafless subcollection of `members`, searched by size.
fn leafless_subcollection(facets: &[VertexSet], members: &[usize]) -> Option<Vec<usize>> {
    let n = members.len();
    let mut masks: Vec<u32> = (1..(1u32 << n)).filter(|m| m.count_ones() >= 3).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().find_map(|mask| {
        let sub: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| members[b]).collect();
        (!sub.iter().any(|&f| is_leaf_within(facets, &sub, f))).then_some(sub)
    })
}

/// Direct transcription of the definition: every nonempty subcollection has
/// a leaf. Exponential; refuses complexes with more than `cap` facets.
pub fn is_forest_bruteforce(c: &Complex, cap: usize) -> Result<bool> {
    let n = c.len();
    if n > cap || n >= 64 {
        return Err(Error::BruteForceCap { facets: n, cap });
    }
    let facets = c.facets();
    let mut sub = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        // one- and two-facet subcollections always have a leaf
        if mask.count_ones() < 3 {
            continue;
        }
        sub.clear();
        sub.extend((0..n).filter(|b| mask & (1 << b) != 0));
        if !sub.iter().any(|&f| is_leaf_within(facets, &sub, f)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_tree(c: &Complex) -> bool {
    is_forest(c).verdict && connected_components(c).len() == 1
}

/// Facets `G ∖ f` for every facet `G`, dropping empty differences and any
/// difference that contains another one (first occurrence kept among
/// equals). Surviving facets keep their relative order.
pub fn localize(c: &Complex, f: &VertexSet) -> Complex {
    localize_indexed(c, f).0
}

/// [`localize`] plus the original index of every surviving facet.
pub fn localize_indexed(c: &Complex, f: &VertexSet) -> (Complex, Vec<usize>) {
    let (origin, diffs): (Vec<usize>, Vec<VertexSet>) =
        c.facets().iter().enumerate().map(|(k, g)| (k, g.difference(f))).filter(|(_, d)| !d.is_empty()).unzip();
    let (keep, _) = minimal_positions(&diffs);
    let facets = keep.iter().map(|&k| diffs[k].clone()).collect();
    let origin = keep.iter().map(|&k| origin[k]).collect();
    (Complex::from_parts_unchecked(c.universe().clone(), facets), origin)
}

pub fn conn_component_of(c: &Complex, i: usize) -> Result<Complex> {
    c.facet(i)?;
    let comp = connected_components(c).into_iter().find(|comp| comp.contains(&i)).expect("every facet has a component");
    c.subcollection(&comp)
}

/// The complement of the component of facet `i`.
pub fn outside_component_of(c: &Complex, i: usize) -> Result<Complex> {
    c.facet(i)?;
    let comp = connected_components(c).into_iter().find(|comp| comp.contains(&i)).expect("every facet has a component");
    let rest: Vec<usize> = (0..c.len()).filter(|k| !comp.contains(k)).collect();
    c.subcollection(&rest)
}

/// Reduced connected component: the component of facet `i`, without `i`,
/// localized at `i`.
pub fn reduced_conn(c: &Complex, i: usize) -> Result<Complex> {
    let f = c.facet(i)?.clone();
    let comp = conn_component_of(c, i)?;
    let pos = comp.facets().iter().position(|g| *g == f).expect("facet lies in its component");
    Ok(localize(&comp.remove_facet(pos)?, &f))
}
