//! Fourier coefficients of Poincaré series, the spectral consistency check,
//! and the moment main term.

pub mod fourier;
pub mod gram;
pub mod params;
pub mod residue;

pub use fourier::{h_fourier, h_fourier_cached, rank1_completion_defect, HCoefficient};
pub use gram::{spectral_gram, GramReport};
pub use params::{siegel_index, NormalizationConstant, SpectralParams};
pub use residue::{
    expected_degree, leading_coeff_fit, main_term_residue, main_term_residue_with, polyfit, FitReport,
    ResidueGrid, ResidueOptions, ResidueReport,
};
