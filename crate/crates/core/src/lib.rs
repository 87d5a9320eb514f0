pub mod catalog;
pub mod cgroup;
pub mod error;
pub mod highest_weight;
pub mod lattice;
pub mod matrix;
pub mod parameters;
pub mod report;
pub mod root_datum;
pub mod scalar;
pub mod shimura;

pub use error::{Error, Result};

/// Default exact scalar: arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

pub type QLattice = lattice::Lattice<Rational>;
pub type QPairingForm = lattice::PairingForm<Rational>;
pub type CGroup = cgroup::CGroupDatum<Rational>;
pub type Parameter = parameters::TorusParameter<Rational>;

pub use catalog::{
    builtin_catalog, load_catalog_dir, load_datum, parse_datum, CatalogEntry, DatumFile,
};
pub use cgroup::{build_c_group, build_rc, galois_descent_check};
pub use highest_weight::{central_scalar, irreducible_character, weyl_dimension, FormalCharacter};
pub use matrix::{IntMatrix, Matrix};
pub use parameters::{embed_parameter, evaluate_twisted_rl, verify_corollary, TorusParameter};
pub use report::{run_full_verification, Report};
pub use root_datum::{RootDatum, Side, WeightVector};
pub use shimura::{dimension_d, normalize_mu, verify_lemma1, ShimuraData};
