//! A seeded corpus of random trees, checked against every engine.
//!
//! `cargo run --example random_corpus -- 7 100` uses seed 7 and 100 trees.

use facet_forest::prelude::*;
use facet_forest::random::{random_forest, rng, Shape};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);

    let mut r = rng(seed);
    let (mut orders, mut strict, mut splits) = (0, 0, 0);
    for _ in 0..count {
        let c = random_forest(&mut r, Shape::default());
        let oracle = betti_oracle(&c)?;
        assert_eq!(betti_hv(&c)?, oracle, "{c}");
        for g in good_leaves(&c) {
            let o = good_leaf_order(&c, g)?;
            assert!(verify_good_leaf_order(&c, &o.order)?.all_passed());
            assert_eq!(betti_glo(&c, &o)?, oracle, "{c}");
            orders += 1;
            strict += usize::from(o.strict);
            if let Ok(s) = split_by_good_leaf(&c, &o) {
                assert!(verify_splitting(&s, 6).passed, "{c}");
                splits += 1;
            }
        }
    }
    println!("seed {seed}: {count} trees, {orders} orders ({strict} strict), {splits} splits, all consistent");
    Ok(())
}
