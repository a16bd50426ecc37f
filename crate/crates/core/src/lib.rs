//! Curvature of reductive homogeneous Finsler spaces `G/H` carrying an
//! invariant (α, β)-metric `F = α φ(β/α)`, where α comes from an
//! `Ad(H)`-invariant inner product on m and β is dual to an invariant
//! vector `v`.
//!
//! Everything is evaluated at the origin `o = eH`, from structure constants
//! alone:
//!
//! - [`algebra`] builds the model, its frame, and the tensors `r_ij`, `s_ij`;
//! - [`metrics`] holds the φ families and the Shen positivity check;
//! - [`curvature`] computes the S-curvature and mean Berwald curvature along
//!   several independent paths, and the isotropy test;
//! - [`volume`] gives the Busemann–Hausdorff and Holmes–Thompson coefficients;
//! - [`catalog`] and [`config`] supply ready-made and file-based spaces;
//! - [`cli`] is the command-line front end.
//!
//! ```
//! use homfinsler::{catalog, curvature::{s_curvature, Path}, metrics::{MetricSpec, PhiFamily}};
//! use nalgebra::DVector;
//!
//! let e = catalog::get("heisenberg3").unwrap();
//! let spec = MetricSpec::new(PhiFamily::Exponential, e.v.b).unwrap();
//! let y = e.model.to_frame(&DVector::from_vec(vec![1.0, 1.0, 1.0]));
//! let s = s_curvature(&e.model, &e.v, &spec, &y, Path::ClosedForm).unwrap();
//! assert!((s + 0.32715015237608375).abs() < 1e-14);
//! ```

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod config;
pub mod curvature;
pub mod error;
pub mod metrics;
pub mod volume;

pub use error::{FinslerError, Result};
