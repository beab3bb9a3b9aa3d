//! Dual-coupling spin-boson dynamics in the noninteracting-blip approximation.
//!
//! A two-level system couples to an Ohmic bath both through σ_z (strength γ)
//! and through σ_x (ratio ζ). The crate evaluates the Laplace-domain
//! self-energy Σ(λ), solves ⟨σ_z(λ)⟩ = 1/(λ + Σ(λ)), and reconstructs
//! ⟨σ_z(t)⟩ three independent ways: pole residues, a Talbot inverse Laplace
//! transform, and direct time stepping of the memory-kernel equation.
//!
//! Units: energies in meV, times in ps, angular frequencies in rad/ps.
//!
//! ```
//! use dcsb::prelude::*;
//!
//! let params = PhysParams::paper_defaults(0.1, 0.1);
//! let rk = build_rational(&params, &KernelConfig::default()).unwrap();
//! let poles = find_poles(&rk).unwrap();
//! let report = coherence_report(&poles);
//! assert!(!report.modes.is_empty());
//! ```

pub mod bath;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod kernels;
pub mod numerics;
pub mod specfun;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bath::{franck_condon, ExponentMode, PhysParams, HBAR_MEV_PS};
    pub use crate::dynamics::{
        build_rational, coherence_report, find_poles, invert_talbot, reconstruct_time,
        refine_poles_exact, solve_volterra, transition_scan, CoherenceReport, ModeSelector,
        PoleSet, RationalKernel, TalbotOptions, TimeGrid, Trace, TraceMethod,
    };
    pub use crate::error::{Error, Result};
    pub use crate::kernels::{
        self_energy, FMode, GammaEffMode, KernelConfig, KernelScalars, KernelScale, ModelVariant,
        TimeKernelForm,
    };
    pub use num_complex::Complex64;
}
