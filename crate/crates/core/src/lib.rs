//! Exact combinatorial invariants of monomial ideals.
//!
//! Everything here is computed exactly, over the integers or an explicit
//! field, with verifiable witnesses wherever a search is involved:
//!
//! - [`ideal`]: monomial ideals and proper quotients `I/J`, colon and
//!   elimination by a variable, polarization, the lcm number `l(I/J)` with a
//!   witness chain, exponent rank, initial degree.
//! - [`lattice`]: the lcm lattice `L_{I/J}` with its length, its
//!   join-irreducibles, order complexes of open lower intervals, DOT and
//!   JSON export.
//! - [`posets`]: exact order dimension of finite posets by complete realizer
//!   search, grid embeddings, and the join-preserving maps `φ` and `φ†`
//!   between a semilattice and the grid closure of an embedded image.
//! - [`sdepth`]: exact Stanley depth of `I/J`, `S/I` and `I` via interval
//!   partitions of the characteristic poset, with certificates an
//!   independent checker can replay.
//! - [`homology`]: reduced simplicial homology with exact ranks, multigraded
//!   Betti numbers by two independent routes, depth and projective
//!   dimension.
//! - [`simplicial`]: simplicial complexes, the Stanley-Reisner
//!   correspondence in both directions, link, deletion, pure skeletons, and
//!   vertex decomposability with shedding witnesses.
//!
//! The crown inequalities connecting these quantities, for a proper
//! quotient of monomial ideals in `n` variables:
//!
//! ```text
//! sdepth(I/J) >= n - l(I/J) + 1          (lcm-number bound)
//! sdepth(I/J) >= n - dim L_{I/J}         (order-dimension bound)
//! sdepth(I)   >= n - dim L_I + 1
//! ```
//!
//! and the same right-hand sides bound the usual depth. The library both
//! computes every quantity involved and checks the inequalities on demand.
//!
//! # Example
//!
//! ```
//! use stanley::ideal::{MonomialIdeal, Quotient};
//! use stanley::lattice::build_lcm_lattice;
//! use stanley::monomial::Monomial;
//! use stanley::posets::order_dimension;
//! use stanley::sdepth::sdepth_exact;
//!
//! // I = (x^2, xy, y^2) inside K[x, y, z]
//! let ideal = MonomialIdeal::from_generators(3, vec![
//!     Monomial::new(vec![2, 0, 0]),
//!     Monomial::new(vec![1, 1, 0]),
//!     Monomial::new(vec![0, 2, 0]),
//! ])?;
//! let quotient = Quotient::ideal(ideal)?;
//!
//! assert_eq!(quotient.lcm_number()?.length(), 3);
//!
//! let lattice = build_lcm_lattice(&quotient)?;
//! assert_eq!(lattice.length(), 3);
//! let (dim, _realizer) = order_dimension(&lattice.as_poset())?;
//! assert_eq!(dim, 2);
//!
//! let certificate = sdepth_exact(&quotient)?;
//! assert_eq!(certificate.value, 2);
//! # Ok::<(), stanley::error::Error>(())
//! ```

pub mod error;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod posets;
pub mod sdepth;
pub mod simplicial;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
