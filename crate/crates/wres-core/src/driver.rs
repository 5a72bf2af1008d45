//! placeholder
pub struct Engine;
pub struct CaseIndex;
pub struct CaseResult;
pub struct BoundaryVec;
pub use crate::sphere::BoundaryMonomial;
