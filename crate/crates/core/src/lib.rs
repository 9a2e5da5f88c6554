//! Exact invariants of weighted projective spaces `P(rho)` and the
//! weighted projective stacks over them.
//!
//! The crate is layered bottom-up:
//!
//! * [`intlin`]: Smith normal form, cokernels, integer solving and
//!   homology of complexes of free abelian groups, all over `BigInt`.
//! * [`weights`]: weight vectors, gcd scaling, Delorme reduction, twist
//!   transport and p-reduction.
//! * [`fan`]: the toric fan of `P(rho)` from a unimodular completion.
//! * [`cech`]: the two-row Cech double complex of the fan, its spectral
//!   sequence pages, the `d2` zig-zag and dilation actions. The
//!   `E2^{0,1}` entry is the Zariski Brauer group.
//! * [`divisors`]: class group, Cartier (Picard) index, stack comparison.
//! * [`sheafcoh`]: dimensions and monomial bases of `H^i(O(l))`.

pub mod cech;
pub mod divisors;
mod error;
pub mod fan;
pub mod intlin;
pub mod json;
pub mod sheafcoh;
pub mod weights;

pub use error::{Error, Result};
pub use weights::WeightVector;
