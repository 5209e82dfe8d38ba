use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("empty input")]
    EmptyInput,
    #[error("duplicate vertex name `{0}` in variable list")]
    DuplicateVariable(String),
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("monomial `{0}` is not squarefree")]
    NonSquarefree(String),
    #[error("structured input: {0}")]
    Structured(String),

    #[error("facet index {index} out of range for complex with {len} facets")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("facet {0} uses a vertex outside the universe")]
    VertexOutOfUniverse(usize),
    #[error("facets {0} and {1} are comparable under inclusion")]
    ComparableFacets(usize, usize),
    #[error("complexes are over different vertex universes")]
    UniverseMismatch,
    #[error("index {0} listed twice")]
    DuplicateIndex(usize),

    #[error("complex has {facets} facets, brute-force cap is {cap}")]
    BruteForceCap { facets: usize, cap: usize },
    #[error("complex is not a simplicial tree")]
    NotATree,
    #[error("complex is not a simplicial forest")]
    NotAForest,
    #[error("facet {0} is not a good leaf")]
    NotAGoodLeaf(usize),
    #[error("no leaf among block {block:?} of prefix ending at {prefix_end}")]
    NoLeafInBlock { prefix_end: usize, block: Vec<usize> },
    #[error("not a permutation of the facet indices: {0}")]
    InvalidPermutation(String),
    #[error("invalid good leaf order: {0}")]
    InvalidOrder(String),
    #[error("order is not strict")]
    NonStrictOrder,
    #[error("localization chain entry {entry} is not the largest surviving index (expected {expected:?})")]
    ChainEntry { entry: usize, expected: Option<usize> },

    #[error("split inapplicable: {0}")]
    SplitInapplicable(String),
    #[error("generator {generator} of J∩K is the lcm with more than one K facet: {candidates:?}")]
    SplitNotUnique { generator: usize, candidates: Vec<usize> },
    #[error("partition hypothesis ({clause}) violated: {detail}")]
    PartitionHypothesis { clause: u8, detail: String },

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),
    #[error("invariant undefined for the zero ideal")]
    ZeroIdeal,
    #[error("recursion found no splitting facet (input was not a forest)")]
    RecursionStuck,
}
