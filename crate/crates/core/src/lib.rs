//! Exact computation of independence, clique, colouring and perfectness
//! parameters of step graphons with rational data.

pub mod cli;
pub mod convergence;
pub mod densities;
pub mod fractional;
pub mod error;
pub mod graph;
pub mod graphon;
pub mod integral;
pub mod io;
pub mod lp;
pub mod perfection;
pub mod polyton;
pub mod quotient;
pub mod rational;

pub use error::{Error, Result};
pub use graph::FiniteGraph;
pub use graphon::{BlockPartition, BlockSet, StepGraphon};
pub use rational::{ExtendedRational, Rational};
