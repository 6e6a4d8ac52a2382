pub mod cli;
pub mod cyclotomic;
pub mod freeness;
pub mod group;
pub mod linalg;
pub mod reps;
pub mod ring;
pub mod units;
