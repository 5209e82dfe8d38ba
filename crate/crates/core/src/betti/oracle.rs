//! Ground-truth Betti numbers from multigraded homology.
//!
//! For a squarefree monomial ideal `I` and a squarefree degree `σ`,
//! `β_{i,σ}(I) = rank H̃_{i-1}(K^σ)` where the upper Koszul complex
//! `K^σ = {τ ⊆ σ : σ ∖ τ contains a generator}`. Its facets are `σ ∖ g` for
//! the generators `g ⊆ σ`, so when `σ` is not itself a generator it is
//! covered by simplices and is homotopy equivalent to the nerve of that
//! cover: subsets of generators whose union is not all of `σ`. Only `σ`
//! that are unions of generators can carry nonzero Betti numbers.

use std::collections::{BTreeMap, BTreeSet};

use crate::betti::table::BettiTable;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homology::{reduced_homology_ranks, AbstractComplex};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest vertex index + 1 allowed in the support of the ideal.
    pub max_vertices: usize,
    pub max_generators: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 64, max_generators: 16 }
    }
}

/// How each multidegree's homology is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Homology of the nerve of the facet cover of `K^σ`.
    #[default]
    Nerve,
    /// Homology of `K^σ` itself, from its full face list. Exponential in
    /// `|σ|`; meant for cross-checking on small inputs.
    Faces,
}

fn word(s: &VertexSet, limits: &OracleLimits) -> Result<u64> {
    match s.as_word() {
        Some(w) if s.bound() <= limits.max_vertices => Ok(w),
        _ => Err(Error::OracleCap(format!("vertex index {} beyond cap {}", s.bound() - 1, limits.max_vertices))),
    }
}

fn generator_words(i: &Complex, limits: &OracleLimits) -> Result<Vec<u64>> {
    if i.len() > limits.max_generators {
        return Err(Error::OracleCap(format!("{} generators, cap {}", i.len(), limits.max_generators)));
    }
    i.facets().iter().map(|f| word(f, limits)).collect()
}

/// `K^σ`, through its facets `σ ∖ g` for generators `g ⊆ σ`.
pub fn upper_koszul_complex(i: &Complex, sigma: &VertexSet) -> Result<AbstractComplex> {
    let limits = OracleLimits::default();
    let s = word(sigma, &limits)?;
    let gens = i.facets().iter().map(|f| word(f, &limits)).collect::<Result<Vec<_>>>()?;
    Ok(AbstractComplex::from_facets(gens.into_iter().filter(|&g| g & !s == 0).map(|g| s & !g)))
}

/// Unions of nonempty sets of generators.
pub fn lcm_lattice(gens: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &g in gens {
        let grown: Vec<u64> = out.iter().map(|&s| s | g).collect();
        out.extend(grown);
        out.insert(g);
    }
    out
}

/// `i ↦ β_{i,σ}` for one squarefree degree.
fn multidegree(gens: &[u64], sigma: u64, route: Route) -> BTreeMap<usize, u64> {
    let inside: Vec<u64> = gens.iter().copied().filter(|&g| g & !sigma == 0).collect();
    let k = match route {
        Route::Faces => AbstractComplex::from_facets(inside.iter().map(|&g| sigma & !g)),
        Route::Nerve => {
            if inside.is_empty() {
                AbstractComplex::void()
            } else if inside.contains(&sigma) {
                AbstractComplex::from_facets([0])
            } else {
                let m = inside.len();
                let mut union = vec![0u64; 1 << m];
                let mut faces = Vec::new();
                for mask in 0..(1usize << m) {
                    if mask > 0 {
                        let low = mask.trailing_zeros() as usize;
                        union[mask] = union[mask & (mask - 1)] | inside[low];
                    }
                    if union[mask] != sigma {
                        faces.push(mask as u64);
                    }
                }
                AbstractComplex::from_faces(faces).expect("nerve is closed under subsets")
            }
        }
    };
    reduced_homology_ranks(&k).ranks.into_iter().map(|(d, r)| ((d + 1) as usize, r as u64)).collect()
}

/// `i ↦ β_{i,σ}(I)` for a single squarefree degree `σ`.
pub fn multidegree_betti(i: &Complex, sigma: &VertexSet, route: Route) -> Result<BTreeMap<usize, u64>> {
    let limits = OracleLimits::default();
    let gens = generator_words(i, &limits)?;
    Ok(multidegree(&gens, word(sigma, &limits)?, route))
}

/// Graded Betti numbers of the facet ideal of `i`.
pub fn betti_oracle(i: &Complex) -> Result<BettiTable> {
    betti_oracle_with(i, OracleLimits::default(), Route::Nerve)
}

pub fn betti_oracle_with(i: &Complex, limits: OracleLimits, route: Route) -> Result<BettiTable> {
    let gens = generator_words(i, &limits)?;
    let mut table = BettiTable::zero();
    for sigma in lcm_lattice(&gens) {
        let degree = sigma.count_ones() as usize;
        for (hom, value) in multidegree(&gens, sigma, route) {
            table.add(hom, degree, value);
        }
    }
    Ok(table)
}
