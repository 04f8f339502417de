pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod hopf;
mod linalg;
pub mod report;
pub mod scalars;
pub mod smash;
pub mod syntax;
