pub mod alpha;
pub mod cf;
pub mod cli;
pub mod criteria;
pub mod verifier;
