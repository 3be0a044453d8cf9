//! Exact certification of complex and quaternionic reflections in the
//! Picard modular groups `PU(2,1,O_d)` and the Hurwitz lattice
//! `PSp(2,1,H)`, and index computation for normal closures through
//! Todd–Coxeter coset enumeration.

pub mod rings;
pub mod linalg;
pub mod poly;
pub mod hermitian;
pub mod reflections;
pub mod fpgroups;
pub mod exec;
pub mod battery;
