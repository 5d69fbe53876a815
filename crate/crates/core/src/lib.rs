pub mod cli;
pub mod complex;
pub mod connectivity;
pub mod constructions;
pub mod corpus;
pub mod homology;
pub mod io;
pub mod nerve;
pub mod search;
