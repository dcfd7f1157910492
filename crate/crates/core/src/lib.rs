pub mod ap;
pub mod catalog;
pub mod checks;
pub mod convergence;
pub mod corpus;
pub mod ddf;
pub mod error;
pub mod expr;
pub mod ideal;
pub mod levy;
pub mod num;
pub mod report;
pub mod scenario;
pub mod sets;
pub mod space;
pub mod triangle;
