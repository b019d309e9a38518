pub mod bidirected;
pub mod check;
pub mod cli;
pub mod diagonalizer;
pub mod openmap;
pub mod rat;
mod reverify;
pub mod scheme;
pub mod seqtree;
pub mod sets;
pub mod space;
pub mod topology;
