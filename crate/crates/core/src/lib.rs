//! Positive-solution counting for bivariate systems made of a t-nomial and a
//! trinomial, with interval-certified root counts.

pub mod algebra;
pub mod bivar;
pub mod reduce;
pub mod fans;
pub mod fixtures;
pub mod oracle;
pub mod phimap;
pub mod rootcount;
