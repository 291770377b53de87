pub mod constructions;
pub mod lattice;
pub mod perm;
pub mod report;
pub mod shelah;
pub mod suites;
pub mod symmetric;
