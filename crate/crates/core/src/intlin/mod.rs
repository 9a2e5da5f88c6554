//! Exact linear algebra over `Z`.
//!
//! Everything here is built on one deterministic Smith normal form. Matrices
//! act on column vectors, so an `r x c` matrix is a map `Z^c -> Z^r`.

mod group;
mod matrix;
mod presented;
mod smith;

pub use group::FgAbelianGroup;
pub(crate) use group::is_prime;
pub use matrix::IntMatrix;
pub use presented::{preimage, GroupHom, PresentedGroup};
pub use smith::{
    inverse_unimodular, kernel_basis, smith_normal_form, solve, solve_matrix, solve_with,
    SmithDecomposition,
};

use crate::error::{Error, Result};

/// `Z^rows / column-span(m)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let snf = smith_normal_form(m);
    FgAbelianGroup::from_smith_diagonal(m.rows(), &snf.invariant_factors)
}

/// `ker(g) / im(f)` for `Z^a --f--> Z^m --g--> Z^b`, with representatives of
/// its generators in `Z^m`.
pub fn homology(f: &IntMatrix, g: &IntMatrix) -> Result<PresentedGroup> {
    if f.rows() != g.cols() {
        return Err(Error::DimensionMismatch(format!(
            "f lands in Z^{} but g starts at Z^{}",
            f.rows(),
            g.cols()
        )));
    }
    if !g.mul(f)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    PresentedGroup::subquotient(&kernel_basis(g), f)
}

/// `G (x) Z_(p)`.
pub fn localize_at_prime(g: &FgAbelianGroup, p: u64) -> Result<FgAbelianGroup> {
    g.localize_at_prime(p)
}
