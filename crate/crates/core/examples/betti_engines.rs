//! The three Betti engines side by side on a few forests, with recursion
//! statistics and the closed forms for the first two rows. The cycle
//! `abc, cde, efa` is not a forest, so only the oracle applies there.

use facet_forest::betti::betti_hv_with_stats;
use facet_forest::prelude::*;
use std::time::Instant;

fn main() -> Result<()> {
    for text in ["xyz, yzv, yu, vw, wt", "ab, bc, cd, de, ef", "abc, cde, efa, ag", "ab, cd, de, f"] {
        let c = parse_ideal_str(text)?;
        let start = Instant::now();
        let oracle = betti_oracle(&c)?;
        let t_oracle = start.elapsed();
        println!("{c}");
        print!("{}", betti_diagram(&oracle, RowConvention::Quotient));
        if !is_forest(&c).verdict {
            println!("  not a forest, oracle only ({t_oracle:.1?})\n");
            continue;
        }
        let start = Instant::now();
        let (hv, stats) = betti_hv_with_stats(&c)?;
        let t_hv = start.elapsed();
        println!(
            "  oracle {t_oracle:.1?}, recursion {t_hv:.1?} ({} nodes, {} memo hits, depth {}), equal: {}",
            stats.nodes,
            stats.memo_hits,
            stats.max_depth,
            hv == oracle
        );
        if is_tree(&c) {
            let o = good_leaf_order(&c, good_leaves(&c)[0])?;
            println!("  good leaf order engine equal: {}", betti_glo(&c, &o)? == oracle);
            println!("  β0 {:?}  β1 {:?}", beta0_formula(&c, &o), beta1_formula(&c, &o)?);
        }
        println!();
    }
    Ok(())
}
