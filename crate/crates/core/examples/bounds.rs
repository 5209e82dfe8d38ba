//! Lower bounds on Betti numbers of a tree from a partition into subtrees.

use facet_forest::prelude::*;

fn main() -> Result<()> {
    let c = parse_ideal_str("xyz, yzv, yu, vw, wt")?;
    for partition in [vec![vec![0, 1, 2], vec![3, 4]], vec![vec![0, 1, 2, 3, 4]]] {
        let parts: Vec<BettiTable> =
            partition.iter().map(|p| betti_oracle(&c.subcollection(p)?)).collect::<Result<_>>()?;
        let r = partition_bounds(&c, &partition, &betti_oracle(&c)?, &parts)?;
        println!("partition {partition:?}");
        for cell in &r.cells {
            println!("  β({},{}): {} ≥ {:?}", cell.i, cell.j, cell.whole, cell.parts);
        }
        println!("  projdim {} ≥ {:?}, reg {} ≥ {:?}\n", r.projdim.whole, r.projdim.parts, r.reg.whole, r.reg.parts);
    }

    let bad = partition_bounds(&c, &[vec![1, 0, 2], vec![3, 4]], &betti_oracle(&c)?, &[]);
    println!("F1 first: {}", bad.unwrap_err());
    Ok(())
}
