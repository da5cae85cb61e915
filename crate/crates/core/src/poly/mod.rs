//! Exact univariate polynomial algebra over Z and over prime fields.

mod gcd;
mod int;
mod modp;

pub use gcd::{
    bareiss_determinant, discriminant, discriminant_subresultant, is_squarefree, primitive_gcd,
    resultant, resultant_subresultant, sylvester_matrix,
};
pub use int::{poly_arith, IntPoly, PolyOp};
pub use modp::{certify_irreducible_deg7, ModPoly, CERTIFY_PRIME_COUNT};
