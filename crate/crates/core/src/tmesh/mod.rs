//! Index T-meshes: partitions, admissibility, anchors, index vectors, T-junction
//! extensions, knot data and the JSON mesh format.

mod anchor;
mod extension;
mod mesh;
mod param;
mod random;

pub use self::anchor::{bar_index_vector, Anchor, AnchorKind, IndexVectors};
pub use self::extension::{Extension, JunctionKind, Segment};
pub use self::mesh::{Classification, IndexTMesh, Rect};
pub use self::param::{Axis, MeshFile, ParametricTMesh};
pub use self::random::{random_knots, random_mesh};
