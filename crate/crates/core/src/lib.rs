pub mod berge_construct;
pub mod cli;
pub mod combinatorics;
pub mod ham_decomp;
pub mod matching;
pub mod verify;
