//! Exact rational scalars and the number-theoretic constants built on them.

mod rational;
mod special;

pub use rational::{rat_arith, ArithOp, Rational};
pub use special::{bernoulli, binomial, faulhaber, gen_binomial, zeta_neg, FaulhaberPoly};
