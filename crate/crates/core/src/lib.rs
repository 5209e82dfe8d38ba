//! Simplicial forests and the graded Betti numbers of their facet ideals.
//!
//! A squarefree monomial ideal is read as the complex whose facets are the
//! supports of its generators (`xyz, yzv, yu` is three facets over
//! `x, y, z, v, u`). On top of that the crate offers:
//!
//! - forest and tree recognition, leaves, joints, good leaves
//!   ([`structure`]);
//! - good leaf orders and an independent verifier ([`order`]);
//! - the splitting `I = J + K` cut out by such an order ([`splitting`]);
//! - Betti tables from multigraded homology, and from the splitting-facet
//!   recursions for forests ([`betti`]).
//!
//! ```
//! use facet_forest::prelude::*;
//!
//! let c = parse_ideal_str("vw, wt").unwrap();
//! let t = betti_oracle(&c).unwrap();
//! assert_eq!(betti_diagram(&t, RowConvention::Quotient), "   0 1\n1: 2 1\n");
//! assert_eq!(betti_hv(&c).unwrap(), t);
//! ```

pub mod betti;
pub mod cli;
pub mod complex;
pub mod error;
pub mod homology;
pub mod order;
pub mod parse;
pub mod random;
pub mod splitting;
pub mod structure;
pub mod vertex_set;

pub use complex::{Complex, Universe};
pub use error::{Error, Result};
pub use vertex_set::VertexSet;

pub mod prelude {
    pub use crate::betti::{
        beta0_formula, beta1_formula, betti_diagram, betti_glo, betti_hv, betti_oracle, localization_chain, BettiTable,
        RowConvention,
    };
    pub use crate::complex::{Complex, Universe};
    pub use crate::error::{Error, Result};
    pub use crate::order::{good_leaf_order, verify_good_leaf_order, GoodLeafOrder};
    pub use crate::parse::{parse_ideal, parse_ideal_str, ParseOptions};
    pub use crate::splitting::{
        ek_betti_identity_check, intersection_generators, partition_bounds, split_by_good_leaf, verify_splitting,
    };
    pub use crate::structure::{good_leaves, is_forest, is_tree, localize, reduced_conn};
    pub use crate::vertex_set::VertexSet;
}
