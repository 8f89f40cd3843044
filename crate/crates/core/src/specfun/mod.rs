//! Special functions.

mod gamma;
mod hypergeometric;
mod partitions;

pub use gamma::{
    ln_gamma, lower_incomplete_gamma_regularized, upper_incomplete_gamma_regularized,
};
pub use hypergeometric::gauss_2f1;
pub use partitions::{enumerate_weighted_partitions, PartitionTerm};
