pub mod arith;
pub mod derivations;
pub mod error;
pub mod identities;
pub mod intertwine;
pub mod kravchuk;
pub mod poly;
pub mod series;
