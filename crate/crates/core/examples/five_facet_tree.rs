//! The five-facet tree `xyz, yzv, yu, vw, wt`: structure, an order, the
//! split, and the three Betti diagrams.

use facet_forest::prelude::*;
use facet_forest::structure::leaf_certificate;

fn main() -> Result<()> {
    let c = parse_ideal_str("xyz, yzv, yu, vw, wt")?;
    println!("ideal: {c}");
    println!("tree: {}", is_tree(&c));
    for i in 0..c.len() {
        if let Some(cert) = leaf_certificate(&c, i)? {
            println!("  F{i} = {} is a leaf, joints {:?}", c.monomial(i), cert.joints);
        }
    }
    println!("good leaves: {:?}", good_leaves(&c));

    let o = good_leaf_order(&c, 0)?;
    println!("order from F0: {:?} (strict: {})", o.order, o.strict);

    let s = split_by_good_leaf(&c, &o)?;
    for (name, part) in [("I", c.clone()), ("J", s.j_complex()), ("K", s.k_complex())] {
        let t = betti_oracle(&part)?;
        let reg = t.reg()?;
        println!("\n{name} = ({part})  projdim {}  reg {}", t.projdim()?, reg.diagram);
        print!("{}", betti_diagram(&t, RowConvention::Quotient));
    }
    Ok(())
}
