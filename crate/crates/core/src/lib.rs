//! Generalized Thompson groups built from cloning systems: forest monoid
//! arithmetic, the cloning axioms and their verification, concrete systems,
//! group arithmetic on tree-pair triples, and descending-link complexes.

pub mod axioms;
pub mod complexes;
pub mod cloning;
pub mod forest;
pub mod perm;
pub mod rewriting;
pub mod systems;
pub mod thompson;
