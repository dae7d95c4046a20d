//! The random graph inside the curve graph of the one-ended infinite-genus
//! surface, as executable combinatorics.
//!
//! * [`rado`]: Rado's bit model, extension witnesses, induced embeddings.
//! * [`multicurve`]: the curves `a_i`, `b_i`, multicurves and `x -> [x]`.
//! * [`layout`]: routed curves `c(x)` on the grid surface and their crossings.
//! * [`embedder`]: finite graphs into curve graphs of closed surfaces.
//! * [`verify`]: sweeps tying these together.

pub mod embedder;
pub mod error;
pub mod graph;
pub mod layout;
pub mod multicurve;
pub mod rado;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use graph::FiniteGraph;
pub use rado::{Polarity, Vertex};
