//! Test problem generators, sparse datasets and the scalar divergence example.

mod dataset;
mod divergence;
mod hphard;
mod kojima;
mod logreg;
mod matrix;
mod sun;

pub use dataset::{
    parse_sparse_dataset, parse_sparse_dataset_str, serialize_sparse_dataset, synthetic_dataset, DatasetFixture,
};
pub use divergence::{
    characteristic_roots, divergence_example, divergence_threshold, Classification, DivergenceOutcome,
};
pub use hphard::{hphard_data, hphard_instance, make_hphard, HpHardData};
pub use kojima::{kojima_shindo_operator, make_kojima_shindo};
pub use logreg::{logreg_mu, make_logreg, sigmoid, softplus};
pub use matrix::{power_iteration, spectral_norm, DenseMatrix, SparseMatrix};
pub use sun::{make_sun_problem, sun_operator};
