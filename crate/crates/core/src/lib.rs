//! Exact computations around Murasugi sums of knots: braid words and their
//! closures, classical invariants, the linear plumbing calculus, bounds on
//! the minimal Murasugi-sum size, and witness search.

pub mod braid;
pub mod construction;
pub mod distance;
pub mod error;
pub mod invariants;
pub mod knot_table;
pub mod laurent;
pub mod matrix;
pub mod plumbing;

pub use braid::{
    closure_data, free_reduce, murasugi_concat, parse_braid, split_braid, BraidWord, ClosureData, CompositeBraid,
    Letter, Shuffle, Sign,
};
pub use construction::{
    apply_crossing_changes, search_triples, unknotting_crossing_set, verify_triple, SearchBudget, TripleOutcome,
    TripleWitness, TwistAnnulus,
};
pub use distance::{dm_interval, dm_lower_bounds, dm_upper_bound, gon_merge, plan_triple_sum, DMInterval, DistanceData, KnotInput};
pub use error::{Error, Result};
pub use invariants::{alexander_via_burau, identify, profile, seifert_matrix_of_braid, InvariantProfile, Presentation, SeifertMatrix};
pub use knot_table::{KnotTable, KnotTableEntry};
pub use laurent::LaurentPolynomial;
pub use plumbing::{boundary_profile, rewrite_search, star4, PlumbingWord, RewriteBudget, RewriteOutcome, RewriteTrace};
