//! Doc-test shims that compile the code fences of the guide chapters in
//! `book/`, so `cargo test` keeps the book in sync with the library.

#[doc = include_str!("../../../book/src/monomial-ideals.md")]
pub mod monomial_ideals {}

#[doc = include_str!("../../../book/src/lcm-lattice.md")]
pub mod lcm_lattice {}

#[doc = include_str!("../../../book/src/order-dimension.md")]
pub mod order_dimension {}

#[doc = include_str!("../../../book/src/stanley-depth.md")]
pub mod stanley_depth {}

#[doc = include_str!("../../../book/src/depth-and-betti.md")]
pub mod depth_and_betti {}

#[doc = include_str!("../../../book/src/simplicial-complexes.md")]
pub mod simplicial_complexes {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
