//! Seeded random complexes for tests and the `random` subcommand.
//!
//! Forests grow by leaf attachment: pick a facet `G`, a proper subset
//! `S ⊊ G` (nonempty for trees) and glue a new facet `S ∪ {fresh vertices}`.
//! That only guarantees a quasi-forest, so each candidate is filtered with
//! [`is_forest_bruteforce`].

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Universe};
use crate::structure::{is_forest_bruteforce, BRUTE_FORCE_CAP};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_facets: usize,
    pub max_vertices: usize,
    /// Trees only when false.
    pub allow_disconnected: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_facets: 8, max_vertices: 14, allow_disconnected: false }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Renames the used vertices `a, b, c, ...` in order of first appearance.
pub fn compact(facets: &[VertexSet]) -> Complex {
    let mut order: Vec<usize> = Vec::new();
    for f in facets {
        for v in f.iter() {
            if !order.contains(&v) {
                order.push(v);
            }
        }
    }
    let renamed =
        facets.iter().map(|f| f.iter().map(|v| order.iter().position(|&w| w == v).unwrap()).collect()).collect();
    Complex::new(Arc::new(Universe::letters(order.len())), renamed).expect("generated facets are incomparable")
}

fn grow(rng: &mut impl Rng, shape: Shape) -> Vec<VertexSet> {
    let max_v = shape.max_vertices.max(1);
    let target = rng.gen_range(1..=shape.max_facets.max(1));
    let first = rng.gen_range(1..=max_v.min(3));
    let mut next = first;
    let mut facets = vec![VertexSet::from_indices(0..first)];
    for _ in 1..target {
        if next >= max_v {
            break;
        }
        let g = facets.choose(rng).unwrap().clone();
        let members: Vec<usize> = g.iter().collect();
        let mut s: VertexSet = members.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if s == g {
            s.remove(*members.choose(rng).unwrap());
        }
        let detached = rng.gen_bool(0.2) && shape.allow_disconnected;
        if detached {
            s = VertexSet::new();
        } else if s.is_empty() {
            if members.len() == 1 {
                continue;
            }
            s.insert(*members.choose(rng).unwrap());
        }
        let fresh = rng.gen_range(1..=2).min(max_v - next);
        let mut f = s;
        for v in next..next + fresh {
            f.insert(v);
        }
        next += fresh;
        facets.push(f);
    }
    facets.shuffle(rng);
    facets
}

/// A forest (a tree unless `shape.allow_disconnected`) with at most
/// `shape.max_facets` facets and `shape.max_vertices` vertices.
pub fn random_forest(rng: &mut impl Rng, shape: Shape) -> Complex {
    loop {
        let c = compact(&grow(rng, shape));
        if is_forest_bruteforce(&c, BRUTE_FORCE_CAP.max(c.len())).expect("within cap") {
            return c;
        }
    }
}

pub fn random_tree(rng: &mut impl Rng, max_facets: usize, max_vertices: usize) -> Complex {
    random_forest(rng, Shape { max_facets, max_vertices, allow_disconnected: false })
}

/// Either adds an existing vertex to one facet, or adds a facet joining two
/// vertices that share no facet (closing a cycle when they are connected).
/// Facets that become non-maximal are dropped. Usually, not always, the
/// result is no longer a forest.
pub fn corrupt(rng: &mut impl Rng, c: &Complex) -> Complex {
    let support: Vec<usize> = c.support().iter().collect();
    let mut facets = c.facets().to_vec();
    let apart: Vec<(usize, usize)> = support
        .iter()
        .flat_map(|&u| support.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| u < v && !facets.iter().any(|f| f.contains(u) && f.contains(v)))
        .collect();
    if rng.gen_bool(0.5) && !apart.is_empty() {
        let &(u, v) = apart.choose(rng).unwrap();
        facets.push(VertexSet::from_indices([u, v]));
    } else {
        for _ in 0..8 {
            let k = rng.gen_range(0..facets.len());
            let outside: Vec<usize> = support.iter().copied().filter(|&v| !facets[k].contains(v)).collect();
            if let Some(&v) = outside.choose(rng) {
                facets[k].insert(v);
                break;
            }
        }
    }
    let (c, _) = Complex::minimalized(c.universe().clone(), facets).expect("nonempty facets");
    c
}

/// Arbitrary complex: random nonempty subsets of `vertices` vertices, made
/// incomparable.
pub fn random_complex(rng: &mut impl Rng, facets: usize, vertices: usize) -> Complex {
    let vertices = vertices.clamp(1, 64);
    let sets: Vec<VertexSet> = (0..facets.max(1))
        .map(|_| loop {
            let s: VertexSet = (0..vertices).filter(|_| rng.gen_bool(0.4)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    let (c, _) = Complex::minimalized(Arc::new(Universe::letters(vertices)), sets).expect("nonempty facets");
    compact(c.facets())
}

/// `count` forests from one seed.
pub fn corpus(seed: u64, count: usize, shape: Shape) -> Vec<Complex> {
    let mut r = rng(seed);
    (0..count).map(|_| random_forest(&mut r, shape)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_forest, is_tree};

    #[test]
    fn reproducible_and_within_shape() {
        let shape = Shape { max_facets: 5, max_vertices: 9, allow_disconnected: false };
        let a = corpus(1, 40, shape);
        let b = corpus(1, 40, shape);
        assert_eq!(a, b);
        for c in &a {
            assert!(c.len() <= 5 && c.universe().len() <= 9);
            assert!(is_tree(c), "{c}");
        }
    }

    #[test]
    fn disconnected_forests_appear() {
        let shape = Shape { allow_disconnected: true, ..Shape::default() };
        let cs = corpus(7, 100, shape);
        assert!(cs.iter().all(|c| is_forest(c).verdict));
        assert!(cs.iter().any(|c| !is_tree(c)));
    }

    #[test]
    fn single_facets() {
        let cs = corpus(3, 10, Shape { max_facets: 1, ..Shape::default() });
        assert!(cs.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn corruption_breaks_some() {
        let mut r = rng(11);
        let broken = (0..100)
            .map(|_| {
                let c = random_tree(&mut r, 8, 14);
                corrupt(&mut r, &c)
            })
            .filter(|c| !is_forest(c).verdict)
            .count();
        assert!(broken > 0);
    }
}
