//! Generalized reciprocal distance matrices `RD_α(G) = α·RT(G) + (1−α)·RD(G)`
//! of simple connected graphs: construction, spectra, spread, closed-form
//! spectra for a few graph families, and a catalogue of spread and
//! eigenvalue bounds checked against the numerical spectrum.
//!
//! ```
//! use rdspread::graph::{apsp, generate, Family};
//! use rdspread::linalg::{eig_sym, spread_of, EigenOptions};
//! use rdspread::matrices::{rd_alpha_matrix, Alpha};
//!
//! let k4 = generate(&Family::Complete { n: 4 }).unwrap();
//! let m = rd_alpha_matrix(&apsp(&k4).unwrap(), Alpha::HALF).unwrap();
//! let spectrum = eig_sym(&m, &EigenOptions::default()).unwrap();
//! assert!((spread_of(&spectrum).unwrap() - 2.0).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod matrices;

pub use error::{Error, Result};
