//! Good leaf orders from every good leaf of a tree, each re-checked by the
//! verifier, plus an order the verifier rejects.

use facet_forest::prelude::*;

fn main() -> Result<()> {
    let c = parse_ideal_str("abc, bcd, be, cf, fg")?;
    println!("{c}");
    for g in good_leaves(&c) {
        let o = good_leaf_order(&c, g)?;
        let chain: Vec<String> = o.chain[1..]
            .iter()
            .map(|s| if s.is_empty() { "∅".into() } else { format!("{{{}}}", c.universe().monomial(s)) })
            .collect();
        let report = verify_good_leaf_order(&c, &o.order)?;
        println!(
            "from F{g}: {:?}  chain {}  strict {}  verified {}",
            o.order,
            chain.join(" "),
            o.strict,
            report.all_passed()
        );
    }

    let tree = parse_ideal_str("xyz, yzv, yu, vw, wt")?;
    let report = verify_good_leaf_order(&tree, &[0, 1, 2, 4, 3])?;
    let bad = report.first_failure().expect("rejected");
    println!("\n(F0,F1,F2,F4,F3): property {} fails at position {:?}", bad.property, bad.position);
    Ok(())
}
