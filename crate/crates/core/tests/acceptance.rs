//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always reach the output.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;

use facet_forest::betti::{
    beta0_formula, beta1_formula, betti_diagram, betti_glo, betti_hv, betti_oracle, BettiTable, RowConvention,
};
use facet_forest::complex::Complex;
use facet_forest::order::{good_leaf_order, verify_good_leaf_order};
use facet_forest::parse::parse_ideal_str;
use facet_forest::random::{corrupt, random_complex, random_forest, rng, Shape};
use facet_forest::splitting::{
    ek_betti_identity_check, partition_bounds, split_by_good_leaf, verify_splitting, SplitCondition,
};
use facet_forest::structure::{good_leaves, is_forest, is_forest_bruteforce, is_tree};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SAMPLE: &str = "xyz, yzv, yu, vw, wt";
const TREE_SHAPE: Shape = Shape { max_facets: 8, max_vertices: 14, allow_disconnected: false };
const FOREST_SHAPE: Shape = Shape { max_facets: 8, max_vertices: 14, allow_disconnected: true };

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample() -> Complex {
    parse_ideal_str(SAMPLE).unwrap()
}

fn sub(c: &Complex, idx: &[usize]) -> Complex {
    c.subcollection(idx).unwrap()
}

fn entries(t: &BettiTable) -> Vec<(usize, usize, u64)> {
    t.entries().map(|e| (e.i, e.j, e.value)).collect()
}

fn trees(seed: u64, n: usize) -> Vec<Complex> {
    let mut r = rng(seed);
    (0..n).map(|_| random_forest(&mut r, TREE_SHAPE)).collect()
}

fn golden() -> Check {
    let c = sample();
    let cases = [
        ("I", c.clone(), "   0 1 2 3\n1: 3 1 . .\n2: 2 6 3 .\n3: . 1 2 1\n"),
        ("J", sub(&c, &[0, 1, 2]), "   0 1 2\n1: 1 . .\n2: 2 3 1\n"),
        ("K", sub(&c, &[3, 4]), "   0 1\n1: 2 1\n"),
    ];
    let mut slowest = Duration::ZERO;
    let mut tables = Vec::new();
    for (name, cx, want) in cases {
        let start = Instant::now();
        let t = betti_oracle(&cx).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(took < Duration::from_secs(1), || format!("{name} took {took:?}"))?;
        let got = betti_diagram(&t, RowConvention::Quotient);
        ensure(got == want, || format!("{name} diagram:\n{got}"))?;
        tables.push(t);
    }
    let i_entries = [(0, 2, 3), (0, 3, 2), (1, 3, 1), (1, 4, 6), (1, 5, 1), (2, 5, 3), (2, 6, 2), (3, 7, 1)];
    ensure(entries(&tables[0]) == i_entries, || format!("I entries {:?}", entries(&tables[0])))?;
    ensure(entries(&tables[1]) == [(0, 2, 1), (0, 3, 2), (1, 4, 3), (2, 5, 1)], || "J entries".into())?;
    ensure(entries(&tables[2]) == [(0, 2, 2), (1, 3, 1)], || "K entries".into())?;
    let reg = tables[0].reg().unwrap();
    ensure(tables[0].projdim() == Ok(3) && reg.diagram == 3 && reg.literal == 4, || "I projdim/reg".into())?;
    ensure(tables[1].projdim() == Ok(2) && tables[1].reg().unwrap().diagram == 2, || "J projdim/reg".into())?;
    ensure(tables[2].projdim() == Ok(1) && tables[2].reg().unwrap().diagram == 1, || "K projdim/reg".into())?;
    Ok(format!("3 diagrams identical, slowest {slowest:?}"))
}

fn identity() -> Check {
    let c = sample();
    let s = split_by_good_leaf(&c, &good_leaf_order(&c, 0).unwrap()).map_err(|e| e.to_string())?;
    let t: Vec<BettiTable> = [c.clone(), s.j_complex(), s.k_complex(), s.intersection_complex()]
        .iter()
        .map(|x| betti_oracle(x).unwrap())
        .collect();
    let r = ek_betti_identity_check(&t[0], &t[1], &t[2], &t[3]);
    ensure(r.holds, || format!("cells {:?}", r.cells.iter().filter(|x| !x.holds).collect::<Vec<_>>()))?;
    let cell =
        |i, j| r.cells.iter().find(|x| x.i == i && x.j == j).map(|x| (x.whole, x.j_part, x.k_part, x.intersection));
    ensure(cell(1, 4) == Some((6, 3, 0, 3)), || format!("(1,4): {:?}", cell(1, 4)))?;
    ensure(cell(1, 5) == Some((1, 0, 0, 1)), || format!("(1,5): {:?}", cell(1, 5)))?;
    Ok(format!("{} cells, 6 = 3+0+3 at (1,4), 1 = 0+0+1 at (1,5)", r.cells.len()))
}

fn engines() -> Check {
    let c = sample();
    let mut fixed = vec![c.clone(), sub(&c, &[0, 1, 2]), sub(&c, &[3, 4])];
    fixed.extend(trees(300, 220));
    let mut glo_runs = 0;
    for (n, t) in fixed.iter().enumerate() {
        let oracle = betti_oracle(t).map_err(|e| e.to_string())?;
        let hv = betti_hv(t).map_err(|e| e.to_string())?;
        ensure(hv == oracle, || format!("#{n} {t}: hv {:?} oracle {:?}", entries(&hv), entries(&oracle)))?;
        for g in good_leaves(t) {
            let o = good_leaf_order(t, g).map_err(|e| e.to_string())?;
            let glo = betti_glo(t, &o).map_err(|e| e.to_string())?;
            ensure(glo == oracle, || format!("#{n} {t} leaf {g}: glo {:?}", entries(&glo)))?;
            glo_runs += 1;
        }
    }
    let mut r = rng(301);
    let mut disconnected = 0;
    for _ in 0..100 {
        let f = random_forest(&mut r, FOREST_SHAPE);
        disconnected += usize::from(!is_tree(&f));
        let (hv, oracle) = (betti_hv(&f).unwrap(), betti_oracle(&f).unwrap());
        ensure(hv == oracle, || format!("forest {f}: hv {:?} oracle {:?}", entries(&hv), entries(&oracle)))?;
    }
    Ok(format!("{} trees (incl. I, J, K), {glo_runs} orders, 100 forests ({disconnected} disconnected)", fixed.len()))
}

fn orders() -> Check {
    let mut checked = 0;
    for (n, t) in trees(400, 520).iter().enumerate() {
        for g in good_leaves(t) {
            let o = good_leaf_order(t, g).map_err(|e| format!("#{n} {t} leaf {g}: {e}"))?;
            let r = verify_good_leaf_order(t, &o.order).unwrap();
            ensure(r.all_passed(), || format!("#{n} {t} order {:?}: {:?}", o.order, r.first_failure()))?;
            checked += 1;
        }
    }
    let c = sample();
    let r = verify_good_leaf_order(&c, &[0, 1, 2, 4, 3]).unwrap();
    let p2 = r.property(2);
    ensure(!p2.passed && p2.position == Some(4), || format!("negative case: {p2:?}"))?;
    ensure(verify_good_leaf_order(&c, &[0, 1, 2, 3, 4]).unwrap().all_passed(), || "F0..F4 order".into())?;
    Ok(format!("{checked} orders over 520 trees; (F0,F1,F2,F4,F3) fails property 2 at 4"))
}

fn good_leaf_existence() -> Check {
    let corpus = trees(500, 600);
    for (n, t) in corpus.iter().enumerate() {
        ensure(!good_leaves(t).is_empty(), || format!("#{n} {t} has no good leaf"))?;
    }
    Ok("600 trees, each with a good leaf".into())
}

fn recognizer() -> Check {
    let mut r = rng(600);
    let mut cases = Vec::new();
    for _ in 0..250 {
        let f = random_forest(&mut r, FOREST_SHAPE);
        cases.push(corrupt(&mut r, &f));
        cases.push(f);
    }
    for _ in 0..150 {
        let facets = r.gen_range(2..=8);
        let vertices = r.gen_range(3..=9);
        cases.push(random_complex(&mut r, facets, vertices));
    }
    cases.retain(|c| c.len() <= 8);
    ensure(cases.len() >= 500, || format!("only {} complexes with at most 8 facets", cases.len()))?;
    let mut negatives = 0;
    for (n, c) in cases.iter().enumerate() {
        let fast = is_forest(c).verdict;
        let slow = is_forest_bruteforce(c, 20).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("#{n} {c}: is_forest {fast}, brute force {slow}"))?;
        negatives += usize::from(!fast);
    }
    for bad in ["xy, yzu, xz", "xy, yz, xz"] {
        ensure(!is_forest(&parse_ideal_str(bad).unwrap()).verdict, || format!("{bad} classified as a forest"))?;
    }
    Ok(format!("{} complexes agree ({negatives} non-forests); both fixtures rejected", cases.len()))
}

fn deltas() -> Check {
    let k = parse_ideal_str("vw, wt").unwrap();
    let ko = good_leaf_order(&k, 0).unwrap();
    ensure(beta1_formula(&k, &ko).unwrap() == BTreeMap::from([(3, 1)]), || "K beta1".into())?;

    let mut orders = 0;
    let mut non_strict = 0;
    let mut corpus = vec![sample(), sub(&sample(), &[0, 1, 2]), k];
    corpus.extend(trees(700, 220));
    for (n, t) in corpus.iter().enumerate() {
        let oracle = betti_oracle(t).unwrap();
        for g in good_leaves(t) {
            let o = good_leaf_order(t, g).unwrap();
            let b0 = beta0_formula(t, &o);
            let b1 = beta1_formula(t, &o).map_err(|e| e.to_string())?;
            let o0: BTreeMap<usize, u64> = oracle.row(0);
            let o1: BTreeMap<usize, u64> = oracle.row(1);
            ensure(b0 == o0, || format!("#{n} {t} leaf {g}: beta0 {b0:?} vs {o0:?}"))?;
            ensure(b1 == o1, || format!("#{n} {t} leaf {g} strict {}: beta1 {b1:?} vs {o1:?}", o.strict))?;
            orders += 1;
            non_strict += usize::from(!o.strict);
        }
    }
    Ok(format!("{orders} orders ({non_strict} non-strict) over {} trees; K gives {{3:1}}", corpus.len()))
}

fn bounds() -> Check {
    let c = sample();
    let partition = vec![vec![0, 1, 2], vec![3, 4]];
    let parts: Vec<BettiTable> = partition.iter().map(|p| betti_oracle(&sub(&c, p)).unwrap()).collect();
    let r = partition_bounds(&c, &partition, &betti_oracle(&c).unwrap(), &parts).map_err(|e| e.to_string())?;
    ensure(r.cells.iter().all(|x| x.holds), || "a per-(i,j) inequality fails".into())?;
    ensure(r.projdim.whole == 3 && r.projdim.parts == [2, 1] && r.projdim.holds, || format!("{:?}", r.projdim))?;
    ensure(r.reg.whole == 3 && r.reg.parts == [2, 1] && r.reg.holds, || format!("{:?}", r.reg))?;
    Ok(format!("projdim 3 ≥ max(2,1), reg 3 ≥ max(2,1), {} cells hold", r.cells.len()))
}

fn splittings() -> Check {
    let mut applicable = 0;
    let mut corpus = vec![sample()];
    corpus.extend(trees(900, 220));
    for (n, t) in corpus.iter().enumerate() {
        for g in good_leaves(t) {
            let o = good_leaf_order(t, g).unwrap();
            let Ok(s) = split_by_good_leaf(t, &o) else { continue };
            let v = verify_splitting(&s, 6);
            ensure(v.passed, || format!("#{n} {t} leaf {g}: {v:?}"))?;
            applicable += 1;
        }
    }
    let c = sample();
    let mut s = split_by_good_leaf(&c, &good_leaf_order(&c, 0).unwrap()).unwrap();
    s.phi[0] = 2;
    let v = verify_splitting(&s, 6);
    ensure(!v.passed && v.witness.as_ref().is_some_and(|w| w.len() == 1), || format!("corrupted φ: {v:?}"))?;
    ensure(v.failed == Some(SplitCondition::Lcm), || format!("corrupted φ: {v:?}"))?;
    Ok(format!("{applicable} applicable splits verified; corrupted φ fails with witness {:?}", v.witness.unwrap()))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 9] = [
        ("golden Betti diagrams of I, J, K", golden),
        ("splitting identity on oracle tables", identity),
        ("engine equivalence", engines),
        ("good leaf order validity", orders),
        ("good leaf existence", good_leaf_existence),
        ("forest recognizer vs brute force", recognizer),
        ("beta0/beta1 closed forms", deltas),
        ("partition bounds", bounds),
        ("splitting verification", splittings),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {:.2?})", n + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(60);
    println!("suite runtime {total:.2?} ({})", if in_time { "within 60 s" } else { "over 60 s" });
    if failed > 0 || !in_time {
        std::process::exit(1);
    }
}
