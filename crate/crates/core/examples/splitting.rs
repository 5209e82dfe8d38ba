//! The splitting induced by a good leaf order: generators of J ∩ K, the
//! maps φ and ψ, the checker, and the Betti identity.

use facet_forest::prelude::*;
use facet_forest::splitting::SUBSET_CAP;

fn main() -> Result<()> {
    let c = parse_ideal_str("xyz, yzv, yu, vw, wt")?;
    let s = split_by_good_leaf(&c, &good_leaf_order(&c, 0)?)?;
    println!("t = {}  J = {}  K = {}", s.t, s.j_complex(), s.k_complex());
    for (n, l) in s.intersection_gens.iter().enumerate() {
        println!("  {:<6} phi {:<4} psi {}", c.universe().monomial(l), c.monomial(s.phi[n]), c.monomial(s.psi[n]));
    }
    let v = verify_splitting(&s, SUBSET_CAP);
    println!("conditions hold: {} ({} subsets)", v.passed, v.exhaustive_subsets);

    let tables: Vec<BettiTable> = [c.clone(), s.j_complex(), s.k_complex(), s.intersection_complex()]
        .iter()
        .map(betti_oracle)
        .collect::<Result<_>>()?;
    let id = ek_betti_identity_check(&tables[0], &tables[1], &tables[2], &tables[3]);
    for cell in &id.cells {
        println!(
            "  β({},{}) = {} = {} + {} + {}",
            cell.i, cell.j, cell.whole, cell.j_part, cell.k_part, cell.intersection
        );
    }

    // a wrong φ is caught on a single generator
    let mut broken = s.clone();
    broken.phi[0] = 2;
    let v = verify_splitting(&broken, SUBSET_CAP);
    println!("corrupted φ: passed {} witness {:?}", v.passed, v.witness);
    Ok(())
}
