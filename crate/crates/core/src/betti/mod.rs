//! Graded Betti numbers: the table type, the homology oracle and the
//! combinatorial recursions for forests.

pub mod oracle;
pub mod recursive;
pub mod table;

pub use oracle::{betti_oracle, betti_oracle_with, multidegree_betti, upper_koszul_complex, OracleLimits, Route};
pub use recursive::{
    beta0_formula, beta1_formula, betti_glo, betti_glo_report, betti_hv, betti_hv_with_stats, localization_chain,
    ChainCertificates, GloReport, GloStep, LocalizationChain, RecursionStats, StepCertificate,
};
pub use table::{betti_diagram, projdim, reg, BettiEntry, BettiTable, Regularity, RowConvention};
