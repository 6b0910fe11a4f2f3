pub mod cyclo;
pub mod lattice;
mod linalg;
pub mod moddata;
pub mod enumerate;
pub mod cli;
