//! Resolutions, projective dimension, `Ext`, exactness and complexes.

mod exact;
mod ext;
mod resolution;
mod tilde_side;

pub use exact::{
    complex_cohomology, verify_exact_sequence, ComplexWindow, ExactnessCertificate, ExactnessMode,
    Junction,
};
pub use ext::{
    ext_dims_with, ext_simple_dims, pd_from_ext, resolve_with, GeneratorStrategy,
    ProjectiveResolution,
};
pub use resolution::{
    cover_from_generators, finitistic_supremum, minimal_resolution, pd, projective_cover, syzygy,
    Cover, PdVerdict, ResolutionReport, ResolutionStep, Termination,
};
pub use tilde_side::{
    bass_findim_zero, build_xi_window, lemma23_sequence, loop_multiplication,
    FinDimZeroCertificate, Lemma23,
};

/// `dim Ext^n(M, S_v)` from the greedy non-minimal resolution.
pub fn ext_dim<F: crate::linalg::Field>(
    m: &crate::rep::Representation<F>,
    v: usize,
    n: usize,
) -> usize {
    ext_simple_dims(m, n, GeneratorStrategy::Greedy)[n][v]
}
