// Copyright 2026 The wres authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact symbolic engine for the boundary term of the noncommutative residue
//! of a one-form-perturbed Dirac operator on a five-dimensional manifold with
//! boundary.
//!
//! The crate re-derives, in exact Gaussian-rational arithmetic, every
//! boundary-case integral of the published fifteen-case computation and diffs
//! the results against the printed table. All arithmetic is exact; floats
//! appear only in the numeric cross-check oracle.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod clifford;
pub mod coeff;
pub mod driver;
pub mod oracle;
pub mod report;
pub mod sphere;
pub mod symbol;
pub mod xin;

pub use coeff::{GRat, Monomial, ParamSymbol, Scalar};
pub use driver::{BoundaryMonomial, BoundaryVec, CaseIndex, CaseResult, Engine};
pub use report::AuditReport;

use core::fmt;

/// Errors surfaced by the engine. Most signal a request that falls outside
/// the modeled jet data (tangential second metric derivatives and normal jets
/// of the zeroth-order Dirac symbol are not specified at the boundary point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// Tangential derivative of a value whose tangential jet is not modeled.
    OpaqueTangential(&'static str),
    /// Normal derivative of a value whose normal jet is not modeled.
    OpaqueNormal(&'static str),
    /// A second tangential derivative was requested; only first-order
    /// tangential jets exist in normal coordinates at the base point.
    SecondTangential,
    /// pi^+ of a rational function with a nonzero polynomial part.
    PolynomialPart,
    /// Line integral of a function that does not decay at infinity.
    InsufficientDecay,
    /// Substitution rule whose replacement mentions the substituted symbol.
    SubstitutionCycle(ParamSymbol),
    /// A contraction left a free index that should have been summed away.
    UnresolvedIndex(Monomial),
    /// Unknown library symbol name.
    UnknownSymbol,
    /// An operation required a pre-restriction symbol but got a restricted
    /// one, or vice versa.
    DenominatorMode,
    /// Missing value in a numeric-oracle assignment.
    MissingAssignment(ParamSymbol),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::OpaqueTangential(w) => {
                write!(f, "tangential derivative of {w} is outside the modeled jets")
            }
            EngineError::OpaqueNormal(w) => {
                write!(f, "normal derivative of {w} is outside the modeled jets")
            }
            EngineError::SecondTangential => {
                write!(f, "second tangential derivative is outside the modeled jets")
            }
            EngineError::PolynomialPart => write!(f, "nonzero polynomial part under pi^+"),
            EngineError::InsufficientDecay => write!(f, "integrand does not decay at infinity"),
            EngineError::SubstitutionCycle(p) => write!(f, "substitution cycle through {p:?}"),
            EngineError::UnresolvedIndex(m) => write!(f, "unresolved free index in {m:?}"),
            EngineError::UnknownSymbol => write!(f, "unknown library symbol"),
            EngineError::DenominatorMode => write!(f, "wrong denominator mode for operation"),
            EngineError::MissingAssignment(p) => write!(f, "no assignment for {p:?}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, EngineError>;
