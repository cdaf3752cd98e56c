pub mod builder;
pub mod chp;
pub mod error;
pub mod geometry;
pub mod io;
pub mod neighbors;
pub mod optimizer;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::{Point2, PolygonSpec, Sides};
