//! Identity verdicts, basis coordinates, plus-algebra kernels, comparisons
//! of identity systems and the named check suites.

mod check;
mod hentzel;
mod suites;
mod systems;

pub use check::{
    check_polynomial, evaluate, is_identity, planar_candidate, quotient_normal_form, Certificate,
    CertificateRow, CheckOptions, ComponentVerdict, Mode, Verdict,
};
pub use hentzel::{parse_letters, reduce_to_basis, BasisCoordinates, HentzelBasis};
pub use suites::{run_suite, CheckReport, Outcome, Suite, SuiteConfig, SuiteReport};
pub use systems::{implies, plus_identity_kernel, systems_equivalent, Comparison, PlusKernel};

#[cfg(test)]
mod tests;
