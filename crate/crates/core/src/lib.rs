//! Spectrum of the quantum Rabi model
//! `H = Δ/2 σz + ω a†a + g σx (a + a†)`.
//!
//! Exact energies come from parity-resolved truncated diagonalization
//! ([`exact`]). The approximations of [`approx`] reduce the model to
//! independent two-level blocks built on displaced oscillator states: the
//! adiabatic approximation (AA), its generalization whose tunneling strength
//! uses the normalized constraint polynomials `K_n` (GAA), and the
//! rotating-wave construction on top of either basis (GRWA). The zeros of `K_n`
//! are the exact level crossings (Juddian points), located by [`crossings`].

pub mod approx;
pub mod crossings;
pub mod error;
pub mod exact;
pub mod figures;
pub mod oscillator;
pub mod output;
pub mod params;
pub mod poly;
pub mod scan;

pub use approx::{
    aa_pair, aa_tunneling, gaa_pair, gaa_tunneling, grwa_spectrum, GaaVariant, GrwaBasis, Method,
    PairSpectrum,
};
pub use crossings::{
    crossing_count_certificate, find_crossings, zero_coupling_degeneracies, CountCertificate,
    JuddianPoint,
};
pub use error::{QrmError, Result};
pub use exact::{build_parity_block, exact_spectrum, ExactSpectrum, Parity, TridiagonalBlock};
pub use figures::{emit_figure_data, FigureId, FigureOptions};
pub use oscillator::{coherent_overlap, displaced_energy, Branch, DisplacedLevel};
pub use params::ModelParams;
pub use poly::{
    constraint_at_zero_coupling, constraint_poly, corrected_displacement_sq, laguerre,
    normalized_constraint, PolyEvalSettings, ScalingMode,
};
pub use scan::{report_crossings, run_scan, Axis, ScanRequest, SpectrumScan};
