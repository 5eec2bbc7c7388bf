pub mod classify;
pub mod cli;
pub mod field;
pub mod groups;
pub mod lie;
pub mod matrix;
pub mod perm;
pub mod robinson;
