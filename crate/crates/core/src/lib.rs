//! Estimation of distribution algorithm for the quadratic assignment problem
//! whose probability model is a kernel density of Mallows models under the
//! Hamming distance.
//!
//! - [`perm`]: permutations, Hamming distance, derangement counts and exact
//!   distance sampling.
//! - [`qap`]: QAPLIB instances, objective evaluation and O(n) swap updates.
//! - [`mallows`]: the Hamming Mallows distance law, `θ ↔ E[K]` inversion and
//!   the kernel mixture sampler.
//! - [`eda`]: the optimization loop with its expected-distance schedule.
//! - [`bench`]: seeded repetitions, ARDP reports and the file formats used by
//!   the `kmm-qap` binary.
//!
//! ```no_run
//! use kmm_qap::{eda, qap::QapInstance};
//!
//! let inst = QapInstance::from_file("data/qaplib/nug17.dat")?;
//! let result = eda::run(&inst, &eda::EdaConfig::default().with_seed(7))?;
//! println!("{} {}", result.best_objective, result.best_permutation);
//! # Ok::<(), kmm_qap::Error>(())
//! ```

pub mod bench;
pub mod eda;
mod error;
pub mod logspace;
pub mod mallows;
pub mod perm;
pub mod qap;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use qap::{Objective, QapInstance};
