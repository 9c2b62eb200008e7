//! Blending functions, GB-spline curves, rational GT-spline surfaces, reproduction of
//! reference shapes and geometry export.

mod blend;
mod export;
mod rational;
mod reference;

pub use self::blend::{blend, eval_curve, GBCurve};
pub use self::export::{to_csv, to_obj};
pub use self::rational::{linspace, ControlNet, GTSurface, SampleGrid};
pub use self::reference::{reproduce_reference, tensor_fit_mesh, FitReport, ReferenceShape};
