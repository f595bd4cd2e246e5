pub mod error;
pub mod model;
pub mod rational;
mod scaled;
pub mod strategy;
pub mod tail;
pub mod families;
pub mod analysis;
pub mod optimizer;
pub mod cli;
