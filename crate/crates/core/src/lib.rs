pub mod ball;
pub mod cli;
pub mod expr;
pub mod grading;
pub mod invariants;
pub mod linalg;
pub mod localalg;
pub mod polar;
pub mod report;
pub mod roots;
pub mod verdict;
