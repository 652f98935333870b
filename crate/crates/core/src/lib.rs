//! Exact arithmetic and geometry of del Pezzo surfaces of degree 2.

pub mod checks;
pub mod covers;
pub mod error;
pub mod exactalg;
pub mod fforacle;
pub mod genus1;
pub mod geometry;
pub mod surface;

pub use error::{Dp2Error, Result};
pub use exactalg::{Integer, Rational};
pub use surface::{Dp2, PointDP2, PointP2, SurfaceDP2, WPoint};
