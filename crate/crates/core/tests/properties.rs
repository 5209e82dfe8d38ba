use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use facet_forest::betti::{
    betti_glo_report, betti_hv, betti_hv_with_stats, betti_oracle, betti_oracle_with, localization_chain,
    multidegree_betti, upper_koszul_complex, OracleLimits, Route,
};
use facet_forest::complex::{Complex, Universe};
use facet_forest::homology::reduced_homology_ranks;
use facet_forest::order::good_leaf_order;
use facet_forest::random::{random_complex, random_forest, rng, Shape};
use facet_forest::structure::{good_leaves, is_tree, reduced_conn};
use facet_forest::vertex_set::VertexSet;

fn trees(seed: u64, n: usize, max_facets: usize, max_vertices: usize) -> Vec<Complex> {
    let mut r = rng(seed);
    let shape = Shape { max_facets, max_vertices, allow_disconnected: false };
    (0..n).map(|_| random_forest(&mut r, shape)).collect()
}

fn shuffled(r: &mut impl Rng, c: &Complex) -> Complex {
    let mut facets = c.facets().to_vec();
    facets.shuffle(r);
    let n = c.universe().len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let relabeled = facets.iter().map(|f| f.iter().map(|v| perm[v]).collect()).collect();
    Complex::new(Arc::new(Universe::letters(n)), relabeled).unwrap()
}

#[test]
fn oracle_invariant_under_shuffles() {
    let mut r = rng(21);
    for _ in 0..60 {
        let facets = r.gen_range(1..=6);
        let vertices = r.gen_range(2..=8);
        let c = random_complex(&mut r, facets, vertices);
        assert_eq!(betti_oracle(&c).unwrap(), betti_oracle(&shuffled(&mut r, &c)).unwrap(), "{c}");
    }
}

#[test]
fn beta0_is_generator_histogram() {
    let mut r = rng(22);
    for _ in 0..60 {
        let c = random_complex(&mut r, 6, 8);
        let mut hist = BTreeMap::new();
        for f in c.facets() {
            *hist.entry(f.len()).or_insert(0) += 1;
        }
        assert_eq!(betti_oracle(&c).unwrap().row(0), hist);
    }
}

#[test]
fn nerve_and_face_routes_agree() {
    let mut r = rng(23);
    for _ in 0..40 {
        let c = random_complex(&mut r, 5, 7);
        let nerve = betti_oracle_with(&c, OracleLimits::default(), Route::Nerve).unwrap();
        let faces = betti_oracle_with(&c, OracleLimits::default(), Route::Faces).unwrap();
        assert_eq!(nerve, faces, "{c}");
    }
}

#[test]
fn alternating_sum_matches_euler_characteristic() {
    let mut r = rng(24);
    for _ in 0..40 {
        let c = random_complex(&mut r, 5, 7);
        let words: Vec<u64> = c.facets().iter().map(|f| f.as_word().unwrap()).collect();
        for sigma in facet_forest::betti::oracle::lcm_lattice(&words) {
            let sigma = VertexSet::from_word(sigma);
            let betti = multidegree_betti(&c, &sigma, Route::Nerve).unwrap();
            let alt: i64 = betti.iter().map(|(&i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            let k = upper_koszul_complex(&c, &sigma).unwrap();
            // Σ (-1)^i rank H̃_{i-1} = -χ̃
            assert_eq!(alt, -k.reduced_euler_characteristic(), "{c} at {sigma:?}");
        }
    }
}

#[test]
fn degrees_outside_the_lcm_lattice_vanish() {
    let mut r = rng(25);
    for _ in 0..40 {
        let c = random_complex(&mut r, 4, 8);
        let words: Vec<u64> = c.facets().iter().map(|f| f.as_word().unwrap()).collect();
        let lattice = facet_forest::betti::oracle::lcm_lattice(&words);
        let support = c.support().as_word().unwrap();
        for _ in 0..20 {
            let sigma = r.gen::<u64>() & support;
            if sigma == 0 || lattice.contains(&sigma) {
                continue;
            }
            let k = upper_koszul_complex(&c, &VertexSet::from_word(sigma)).unwrap();
            assert!(reduced_homology_ranks(&k).ranks.is_empty(), "{c} at {sigma:b}");
        }
    }
}

#[test]
fn strict_orders_satisfy_step_certificates() {
    let mut strict = 0;
    for t in trees(26, 300, 8, 14) {
        for g in good_leaves(&t) {
            let o = good_leaf_order(&t, g).unwrap();
            if !o.strict {
                continue;
            }
            strict += 1;
            let report = betti_glo_report(&t, &o).unwrap();
            assert_eq!(report.table, betti_oracle(&t).unwrap());
            for step in &report.steps {
                let cert = step.certificate.expect("strict order");
                assert!(cert.holds(), "{t} order {:?} step {}: {cert:?}", o.order, step.u);
            }
        }
    }
    assert!(strict > 50, "{strict} strict orders");
}

#[test]
fn localization_chains_along_strict_orders() {
    let mut chains = 0;
    for t in trees(27, 200, 8, 14) {
        for g in good_leaves(&t) {
            let o = good_leaf_order(&t, g).unwrap();
            if !o.strict || t.len() < 2 {
                continue;
            }
            for u1 in 1..t.len() {
                let first = localization_chain(&t, &o, &[u1]).unwrap();
                let prefix = t.subcollection(&o.order[..=u1]).unwrap();
                assert_eq!(first.result, reduced_conn(&prefix, u1).unwrap());
                // follow the largest surviving position until nothing is left
                let mut chain = vec![u1];
                let mut current = first;
                while let Some(&next) = current.survivors.last() {
                    if next == 0 {
                        break;
                    }
                    let c = &current.certificates;
                    assert!(c.strict_chain && c.is_tree && c.last_has_free_vertex, "{t} {chain:?}: {c:?}");
                    chain.push(next);
                    current = localization_chain(&t, &o, &chain).unwrap();
                    chains += 1;
                }
            }
        }
    }
    assert!(chains > 0);
}

#[test]
fn recursion_stats_are_sane() {
    for t in trees(28, 50, 8, 14) {
        let (table, stats) = betti_hv_with_stats(&t).unwrap();
        assert_eq!(table, betti_hv(&t).unwrap());
        assert!(stats.nodes >= 1);
        assert!(stats.memo_hits < stats.nodes);
        assert!(stats.max_depth <= 2 * t.len());
    }
}

#[test]
fn generated_trees_are_trees() {
    for t in trees(29, 200, 8, 14) {
        assert!(is_tree(&t), "{t}");
        assert!(t.len() <= 8 && t.universe().len() <= 14);
    }
}
