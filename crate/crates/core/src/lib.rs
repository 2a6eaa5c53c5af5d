pub mod certify;
pub mod exactmath;
pub mod geometry;
pub mod heisenberg;
pub mod linalg;
pub mod multipoly;
