//! Exact Dyson rank statistics: partition counts, the `N(m, n)` and
//! `N(r, t; n)` tables, the brute-force enumeration oracle, monotonicity
//! scans, and the coefficient identities they rest on.

pub mod checks;
pub mod lemmas;
pub mod oracle;
pub mod partition;
pub mod reconstruct;
mod table;

pub use partition::{partition_count, partition_counts};
pub use reconstruct::{residue_reconstruction, ReconstructionDeviation};
pub use table::{rank_series, RankModTable, RankTable, ViolationRecord};
