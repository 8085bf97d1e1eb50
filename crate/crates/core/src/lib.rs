//! Riesz bounds, cardinal (nod) functions and sinc limits for integer-shift
//! systems generated by the Gaussian `exp(-t²/2σ²)` and the Cauchy–Lorentz
//! function `σ²/(σ²+t²)`.
//!
//! * [`theta`] evaluates Jacobi theta functions for nomes up to `q → 1`.
//! * [`systems`] holds the closed forms: Fourier images, masks, spectral
//!   functions and Riesz constants for generator and nodal systems.
//! * [`nodal`] computes cardinal-function coefficients, evaluates nod
//!   functions and interpolants, and the L₂ distance to sinc.
//! * [`oracle`] contains brute-force counterparts (Gram matrices, direct
//!   series, adaptive quadrature) used to cross-check every closed form.
//! * [`reference`] carries the published Riesz-constant table and the
//!   rounding rules used to compare against it.

pub mod compensated;
pub mod error;
pub mod nodal;
pub mod oracle;
pub mod reference;
pub mod systems;
pub mod theta;

pub use error::{Error, Result};
pub use nodal::NodCoefficients;
pub use systems::{Family, GeneratorSpec, RieszBounds};
pub use theta::{EvalPolicy, ThetaArgs, ThetaKind};
