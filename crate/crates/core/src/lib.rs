pub mod algebraic;
pub mod arith;
pub mod bounds;
pub mod cfrac;
pub mod convergent_spart;
pub mod padic;
pub mod sequences;
pub mod series;
