pub mod fp;
pub mod lattice;
mod matrix;
pub mod smith;
mod sparse;

pub use matrix::Matrix;
pub use sparse::SparseMatrix;
