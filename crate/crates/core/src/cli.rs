//! The `facet-forest` command line.
//!
//! Exit codes: `check` returns 0 for a forest and 1 otherwise; the other
//! commands return 1 when a verification fails. Errors go to stderr with
//! exit code 2.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::betti::{
    beta0_formula, beta1_formula, betti_diagram, betti_glo, betti_hv, betti_oracle, BettiEntry, BettiTable,
    RowConvention,
};
use crate::complex::Complex;
use crate::error::Error;
use crate::order::{good_leaf_order, verify_good_leaf_order, GoodLeafOrder};
use crate::parse::{parse_ideal, parse_structured, ParseOptions, ParseWarning, StructuredComplex};
use crate::random::{random_forest, rng, Shape};
use crate::splitting::{ek_betti_identity_check, partition_bounds, split_by_good_leaf, verify_splitting};
use crate::structure::{good_leaves, is_forest, is_tree, leaf_certificate};
use crate::vertex_set::VertexSet;

pub const SEED_ENV: &str = "FACET_FOREST_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "facet-forest",
    version,
    about = "Simplicial forests, good leaf orders and Betti numbers of facet ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Ideal such as "xyz, yzv, yu"; read from stdin when neither this nor --file is given
    pub ideal: Option<String>,
    /// Read the ideal from a file; a .json suffix selects structured input
    #[arg(long, conflicts_with = "ideal")]
    pub file: Option<PathBuf>,
    /// Ordered variable names; monomials are then written as a*b*c
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Recursive,
    Glo,
    /// Closed forms for the first two rows only
    Delta,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Rows {
    /// Row r holds β(i, i+r+1), the layout used for S/I
    #[default]
    Quotient,
    /// Row r holds β(i, i+r)
    Literal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Forest and tree verdicts, good leaves and leaf certificates
    Check(Input),
    /// Good leaf order from a good leaf
    Glo {
        #[command(flatten)]
        input: Input,
        /// Starting good leaf, as F<n> or <n> (default: lowest-index good leaf)
        #[arg(long)]
        leaf: Option<String>,
    },
    /// Splitting induced by a good leaf order, with the Betti identity check
    Split {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        leaf: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Largest generator subset checked exhaustively
        #[arg(long, default_value_t = crate::splitting::SUBSET_CAP)]
        subset_cap: usize,
    },
    /// Graded Betti numbers
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Second engine to diff against
        #[arg(long, value_enum)]
        compare: Option<Method>,
        #[arg(long, value_enum, default_value_t)]
        rows: Rows,
    },
    /// Betti number bounds from a partition into trees, e.g. --partition "0,1,2;3,4"
    Bounds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Seeded random forests
    Random {
        /// Overridden by the FACET_FOREST_SEED environment variable
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Maximum facets per complex
        #[arg(long, default_value_t = 8)]
        facets: usize,
        /// Maximum vertices per complex
        #[arg(long, default_value_t = 14)]
        vertices: usize,
        /// Allow disconnected forests, not only trees
        #[arg(long)]
        forests: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Report {
    ok: bool,
    text: String,
    result: Value,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ =
                if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stderr) {
        Ok(out) => {
            let _ = stdout.write_all(out.0.as_bytes());
            out.1
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Outcome<(String, i32)> {
    let (name, input, c, report) = match command {
        Command::Random { seed, count, facets, vertices, forests, format } => {
            let seed = match std::env::var(SEED_ENV) {
                Ok(s) => s.trim().parse().map_err(|_| Failure(format!("{SEED_ENV} is not an integer: {s}")))?,
                Err(_) => seed,
            };
            return Ok((random(seed, count, facets, vertices, forests, format), 0));
        }
        Command::Check(input) => {
            let c = load(&input, stdin, stderr)?;
            let r = check(&c);
            ("check", input, c, r)
        }
        Command::Glo { input, leaf } => {
            let c = load(&input, stdin, stderr)?;
            let r = glo(&c, leaf.as_deref())?;
            ("glo", input, c, r)
        }
        Command::Split { input, leaf, method, subset_cap } => {
            let c = load(&input, stdin, stderr)?;
            let r = split(&c, leaf.as_deref(), method, subset_cap)?;
            ("split", input, c, r)
        }
        Command::Betti { input, method, compare, rows } => {
            let c = load(&input, stdin, stderr)?;
            let r = betti(&c, method, compare, rows)?;
            ("betti", input, c, r)
        }
        Command::Bounds { input, partition, method } => {
            let c = load(&input, stdin, stderr)?;
            let r = bounds(&c, &partition, method)?;
            ("bounds", input, c, r)
        }
    };
    let text = match input.format {
        Format::Text => report.text,
        Format::Structured => {
            let doc = json!({ "input": StructuredComplex::from(&c), "command": name, "result": report.result });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    Ok((text, if report.ok { 0 } else { 1 }))
}

fn load(input: &Input, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Outcome<Complex> {
    let parsed = match &input.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            if path.extension().is_some_and(|x| x == "json") {
                parse_structured(&text)?
            } else {
                parse_ideal(&text, &ParseOptions { vars: input.vars.clone() })?
            }
        }
        None => {
            let text = match &input.ideal {
                Some(t) => t.clone(),
                None => {
                    let mut s = String::new();
                    stdin.read_to_string(&mut s)?;
                    s
                }
            };
            parse_ideal(&text, &ParseOptions { vars: input.vars.clone() })?
        }
    };
    for w in &parsed.warnings {
        let ParseWarning::RedundantGenerator { dropped, divisor } = w;
        let _ = writeln!(stderr, "warning: dropped {dropped}, divisible by {divisor}");
    }
    Ok(parsed.complex)
}

fn fname(i: usize) -> String {
    format!("F{i}")
}

fn flist(ids: &[usize]) -> String {
    ids.iter().map(|&i| fname(i)).collect::<Vec<_>>().join(", ")
}

fn braces(c: &Complex, s: &VertexSet) -> String {
    if s.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", s.iter().map(|v| c.universe().name(v)).collect::<Vec<_>>().join(","))
    }
}

fn names(c: &Complex, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| c.universe().name(v).to_owned()).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_leaf(c: &Complex, leaf: Option<&str>) -> Outcome<usize> {
    match leaf {
        None => {
            if !is_tree(c) {
                return Err(Error::NotATree.into());
            }
            Ok(good_leaves(c)[0])
        }
        Some(s) => {
            let digits = s.trim().trim_start_matches(['F', 'f']);
            let i: usize = digits.parse().map_err(|_| Failure(format!("bad facet `{s}`; expected F<n> or <n>")))?;
            c.facet(i)?;
            Ok(i)
        }
    }
}

fn check(c: &Complex) -> Report {
    let cert = is_forest(c);
    let tree = is_tree(c);
    let good = good_leaves(c);
    let leaves: Vec<_> = (0..c.len()).filter_map(|i| leaf_certificate(c, i).expect("in range")).collect();

    let mut text = String::new();
    let listing: Vec<String> = (0..c.len()).map(|i| format!("{}={}", fname(i), c.monomial(i))).collect();
    writeln!(text, "facets: {}", listing.join(", ")).unwrap();
    writeln!(text, "forest: {}", yes(cert.verdict)).unwrap();
    writeln!(text, "tree: {}", yes(tree)).unwrap();
    writeln!(text, "good leaves: {}", if good.is_empty() { "none".into() } else { flist(&good) }).unwrap();
    for l in &leaves {
        let joints = if l.joints.is_empty() { "none".into() } else { flist(&l.joints) };
        writeln!(text, "leaf {}: joints {joints}; free {}", fname(l.leaf), braces(c, &l.free_vertices)).unwrap();
    }
    if let Some(p) = &cert.peel_order {
        writeln!(text, "peel order: {}", flist(p)).unwrap();
    }
    if !cert.verdict {
        match &cert.witness {
            Some(w) => writeln!(text, "witness (no leaf): {}", flist(w)).unwrap(),
            None => writeln!(text, "witness: residual too large to search").unwrap(),
        }
    }
    let result = json!({
        "forest": cert.verdict,
        "tree": tree,
        "good_leaves": good,
        "leaves": leaves.iter().map(|l| json!({
            "facet": l.leaf,
            "joints": l.joints,
            "free_vertices": names(c, &l.free_vertices),
        })).collect::<Vec<_>>(),
        "peel_order": cert.peel_order,
        "witness": cert.witness,
    });
    Report { ok: cert.verdict, text, result }
}

fn glo(c: &Complex, leaf: Option<&str>) -> Outcome<Report> {
    let g = parse_leaf(c, leaf)?;
    let o = good_leaf_order(c, g)?;
    let report = verify_good_leaf_order(c, &o.order)?;

    let mut text = String::new();
    writeln!(text, "good leaf: {}", fname(g)).unwrap();
    writeln!(text, "order: {}", flist(&o.order)).unwrap();
    let chain: Vec<String> = o.chain[1..].iter().map(|s| braces(c, s)).collect();
    writeln!(text, "chain: {}", if chain.is_empty() { "(none)".into() } else { chain.join(" ⊇ ") }).unwrap();
    for (k, j) in o.joints.iter().enumerate().skip(1) {
        let j = j.map(|p| fname(o.order[p])).unwrap_or_else(|| "none".into());
        writeln!(text, "joint of {}: {j}", fname(o.order[k])).unwrap();
    }
    writeln!(text, "strict: {}", yes(o.strict)).unwrap();
    for p in &report.properties {
        match p.position {
            None => writeln!(text, "property {}: pass", p.property).unwrap(),
            Some(pos) => writeln!(text, "property {}: FAIL at position {pos}", p.property).unwrap(),
        }
    }
    let result = json!({
        "leaf": g,
        "order": o.order,
        "chain": o.chain[1..].iter().map(|s| names(c, s)).collect::<Vec<_>>(),
        "joints": o.joints.iter().skip(1).map(|j| j.map(|p| o.order[p])).collect::<Vec<_>>(),
        "strict": o.strict,
        "verification": report.properties.iter().map(|p| json!({
            "property": p.property, "passed": p.passed, "position": p.position,
        })).collect::<Vec<_>>(),
    });
    Ok(Report { ok: report.all_passed(), text, result })
}

fn default_order(c: &Complex) -> Outcome<GoodLeafOrder> {
    Ok(good_leaf_order(c, parse_leaf(c, None)?)?)
}

fn delta_table(c: &Complex) -> Outcome<BettiTable> {
    let o = default_order(c)?;
    let mut t = BettiTable::zero();
    for (j, v) in beta0_formula(c, &o) {
        t.add(0, j, v);
    }
    for (j, v) in beta1_formula(c, &o)? {
        t.add(1, j, v);
    }
    Ok(t)
}

fn table(method: Method, c: &Complex) -> Outcome<BettiTable> {
    Ok(match method {
        Method::Oracle => betti_oracle(c)?,
        Method::Recursive => betti_hv(c)?,
        Method::Glo => betti_glo(c, &default_order(c)?)?,
        Method::Delta => delta_table(c)?,
    })
}

/// Falls back to the oracle where the method does not apply (a non-forest
/// or non-tree), reporting the engine actually used.
fn table_or_oracle(method: Method, c: &Complex) -> Outcome<(BettiTable, Method)> {
    if method == Method::Delta {
        return Err(Failure("the delta method gives only rows 0 and 1; use oracle, recursive or glo".into()));
    }
    let applies = match method {
        Method::Recursive => is_forest(c).verdict,
        Method::Glo => is_tree(c),
        _ => true,
    };
    let m = if applies { method } else { Method::Oracle };
    Ok((table(m, c)?, m))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Recursive => "recursive",
        Method::Glo => "glo",
        Method::Delta => "delta",
    }
}

fn entries_json(t: &BettiTable) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn split(c: &Complex, leaf: Option<&str>, method: Method, subset_cap: usize) -> Outcome<Report> {
    let g = parse_leaf(c, leaf)?;
    let o = good_leaf_order(c, g)?;
    let s = split_by_good_leaf(c, &o)?;
    let verdict = verify_splitting(&s, subset_cap);
    let parts = [c.clone(), s.j_complex(), s.k_complex(), s.intersection_complex()];
    let mut tables = Vec::with_capacity(4);
    for p in &parts {
        tables.push(table_or_oracle(method, p)?);
    }
    let identity = ek_betti_identity_check(&tables[0].0, &tables[1].0, &tables[2].0, &tables[3].0);

    let mono = |i: usize| c.monomial(i);
    let gens: Vec<String> = s.intersection_gens.iter().map(|l| c.universe().monomial(l)).collect();
    let mut text = String::new();
    writeln!(text, "order: {}", flist(&s.order)).unwrap();
    writeln!(text, "t: {}", s.t).unwrap();
    writeln!(text, "J: {}", s.j.iter().map(|&i| mono(i)).collect::<Vec<_>>().join(", ")).unwrap();
    writeln!(text, "K: {}", s.k.iter().map(|&i| mono(i)).collect::<Vec<_>>().join(", ")).unwrap();
    writeln!(text, "J∩K generators: {}", gens.join(", ")).unwrap();
    let w = gens.iter().map(|g| g.chars().count()).max().unwrap_or(0).max("generator".len());
    let wp = s.phi.iter().map(|&i| mono(i).chars().count()).max().unwrap_or(0).max(3);
    writeln!(text, "  {:<w$}  {:<wp$}  psi", "generator", "phi").unwrap();
    for (n, g) in gens.iter().enumerate() {
        writeln!(text, "  {g:<w$}  {:<wp$}  {}", mono(s.phi[n]), mono(s.psi[n])).unwrap();
    }
    match (&verdict.failed, &verdict.witness) {
        (None, _) => writeln!(
            text,
            "splitting conditions: pass ({} subsets exhaustive, {} sampled)",
            verdict.exhaustive_subsets, verdict.sampled_subsets
        )
        .unwrap(),
        (Some(cond), w) => writeln!(text, "splitting conditions: FAIL ({cond:?}, witness {w:?})").unwrap(),
    }
    let used: Vec<&str> = tables.iter().map(|t| method_name(t.1)).collect();
    writeln!(text, "tables (I, J, K, J∩K): {}", used.join(", ")).unwrap();
    let bad: Vec<String> = identity.cells.iter().filter(|x| !x.holds).map(|x| format!("({},{})", x.i, x.j)).collect();
    if bad.is_empty() {
        writeln!(text, "identity β(I) = β(J) + β(K) + β(J∩K) shifted: PASS for all {} cells", identity.cells.len())
            .unwrap();
    } else {
        writeln!(text, "identity: FAIL at {}", bad.join(", ")).unwrap();
    }

    let result = json!({
        "order": s.order,
        "t": s.t,
        "j": s.j,
        "k": s.k,
        "intersection_gens": s.intersection_gens.iter().map(|l| names(c, l)).collect::<Vec<_>>(),
        "phi": s.phi,
        "psi": s.psi,
        "verification": verdict,
        "methods": used,
        "tables": {
            "i": entries_json(&tables[0].0),
            "j": entries_json(&tables[1].0),
            "k": entries_json(&tables[2].0),
            "intersection": entries_json(&tables[3].0),
        },
        "identity": identity,
    });
    Ok(Report { ok: verdict.passed && identity.holds, text, result })
}

fn betti(c: &Complex, method: Method, compare: Option<Method>, rows: Rows) -> Outcome<Report> {
    let t = table(method, c)?;
    let rows = match rows {
        Rows::Quotient => RowConvention::Quotient,
        Rows::Literal => RowConvention::Literal,
    };
    let projdim = t.projdim()?;
    let reg = t.reg()?;
    let mut text = betti_diagram(&t, rows);
    for e in t.entries() {
        writeln!(text, "β({},{}) = {}", e.i, e.j, e.value).unwrap();
    }
    let partial = method == Method::Delta;
    if partial {
        writeln!(text, "(rows 0 and 1 only)").unwrap();
    } else {
        writeln!(text, "projdim: {projdim}").unwrap();
        writeln!(text, "reg (diagram): {}", reg.diagram).unwrap();
        writeln!(text, "reg (literal): {}", reg.literal).unwrap();
    }

    let mut ok = true;
    let mut comparison = Value::Null;
    if let Some(other) = compare {
        let u = table(other, c)?;
        // delta only knows rows 0 and 1
        let limit = if partial || other == Method::Delta { 1 } else { usize::MAX };
        let keys: std::collections::BTreeSet<(usize, usize)> =
            t.entries().chain(u.entries()).map(|e| (e.i, e.j)).filter(|k| k.0 <= limit).collect();
        let diffs: Vec<Value> = keys
            .into_iter()
            .filter(|&(i, j)| t.get(i as isize, j) != u.get(i as isize, j))
            .map(|(i, j)| json!({ "i": i, "j": j, "left": t.get(i as isize, j), "right": u.get(i as isize, j) }))
            .collect();
        ok = diffs.is_empty();
        if ok {
            writeln!(text, "{} vs {}: identical", method_name(method), method_name(other)).unwrap();
        } else {
            writeln!(text, "{} vs {}: DIFFERENT", method_name(method), method_name(other)).unwrap();
            for d in &diffs {
                writeln!(text, "  β({},{}): {} vs {}", d["i"], d["j"], d["left"], d["right"]).unwrap();
            }
        }
        comparison = json!({ "method": method_name(other), "identical": ok, "differences": diffs });
    }
    let mut result = json!({ "method": method_name(method), "table": entries_json(&t) });
    if !partial {
        result["projdim"] = json!(projdim);
        result["reg_diagram"] = json!(reg.diagram);
        result["reg_literal"] = json!(reg.literal);
    }
    if compare.is_some() {
        result["compare"] = comparison;
    }
    Ok(Report { ok, text, result })
}

fn parse_partition(s: &str) -> Outcome<Vec<Vec<usize>>> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    let x = x.trim().trim_start_matches(['F', 'f']);
                    x.parse::<usize>().map_err(|_| Failure(format!("bad partition `{s}`; expected e.g. 0,1,2;3,4")))
                })
                .collect()
        })
        .collect()
}

fn bounds(c: &Complex, partition: &str, method: Method) -> Outcome<Report> {
    let partition = parse_partition(partition)?;
    crate::splitting::check_partition(c, &partition)?;
    let (whole, _) = table_or_oracle(method, c)?;
    let mut parts = Vec::with_capacity(partition.len());
    for p in &partition {
        parts.push(table_or_oracle(method, &c.subcollection(p)?)?.0);
    }
    let r = partition_bounds(c, &partition, &whole, &parts)?;

    let mut text = String::new();
    let labels: Vec<String> = partition.iter().map(|p| format!("[{}]", flist(p))).collect();
    writeln!(text, "parts: {}", labels.join(" ")).unwrap();
    for cell in &r.cells {
        let sum: Vec<String> = cell.parts.iter().map(u64::to_string).collect();
        let mark = if cell.holds { "ok" } else { "FAIL" };
        writeln!(text, "β({},{}): {} ≥ {}  {mark}", cell.i, cell.j, cell.whole, sum.join(" + ")).unwrap();
    }
    let show = |label: &str, b: &crate::splitting::MaxBound, text: &mut String| {
        let ps: Vec<String> = b.parts.iter().map(usize::to_string).collect();
        let mark = if b.holds { "ok" } else { "FAIL" };
        writeln!(text, "{label}: {} ≥ max({}) = {}  {mark}", b.whole, ps.join(", "), b.max_part()).unwrap();
    };
    show("projdim", &r.projdim, &mut text);
    show("reg", &r.reg, &mut text);
    let mut result = serde_json::to_value(&r).expect("serializable");
    result["partition"] = json!(partition);
    Ok(Report { ok: r.all_hold(), text, result })
}

fn random(seed: u64, count: usize, facets: usize, vertices: usize, forests: bool, format: Format) -> String {
    let shape = Shape { max_facets: facets, max_vertices: vertices, allow_disconnected: forests };
    let mut r = rng(seed);
    let complexes: Vec<Complex> = (0..count).map(|_| random_forest(&mut r, shape)).collect();
    match format {
        Format::Text => complexes.iter().map(|c| format!("{c}\n")).collect(),
        Format::Structured => {
            let doc = json!({
                "input": { "seed": seed, "count": count, "facets": facets, "vertices": vertices, "forests": forests },
                "command": "random",
                "result": complexes.iter().map(StructuredComplex::from).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}

/// Betti entries as written in structured output.
pub fn table_from_json(v: &Value) -> Option<BettiTable> {
    serde_json::from_value::<Vec<BettiEntry>>(v.clone()).ok().map(BettiTable::from_entries)
}
