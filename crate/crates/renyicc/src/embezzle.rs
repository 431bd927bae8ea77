//! The harmonic-weight catalyst family `M(d)` and zero-communication
//! embezzlement fidelities.
//!
//! `M(d)` has Schmidt spectrum `1/(H_d · j)` for j = 1..d with
//! `H_d = Σ 1/j`. For any fixed target spectrum the best
//! local-unitary conversion of `M(d)` into `M(d) ⊗ target` has
//! fidelity given by the sorted spectrum match, and that fidelity
//! tends to 1 as d grows — the catalyst donates a vanishing sliver of
//! its own entanglement. The convergence is logarithmically slow
//! (roughly `1 − c/ln d`), so high-fidelity targets need very large d;
//! this module reports measured values and asserts no closed-form rate.

use crate::spectra::Spectrum;
use crate::{Error, Result};

/// Hard cap on the probed catalyst dimension.
pub const DIM_CAP: u64 = 1 << 20;
/// Cap on the product spectrum size in `embezzle_fidelity`.
pub const SIZE_CAP: usize = 1 << 22;

/// Result of an embezzlement computation or minimal-dimension search.
#[derive(Debug, Clone)]
pub struct EmbezzleResult {
    /// Catalyst dimension d of M(d).
    pub d: u64,
    /// Achieved conversion fidelity in [0, 1].
    pub fidelity: f64,
    /// Human-readable descriptor of the target spectrum.
    pub target: String,
    /// The fidelity goal `1 − eps` of a search, absent for single probes.
    pub eps_target: Option<f64>,
    /// The failing predecessor probe of a search, if any.
    pub predecessor: Option<(u64, f64)>,
}

/// Schmidt spectrum of `M(d)`: entries `1/(H_d · j)`, already sorted.
pub fn m_spectrum(d: u64) -> Result<Spectrum> {
    if d == 0 {
        return Err(Error::EmptyDimension);
    }
    let h: f64 = (1..=d).map(|j| 1.0 / j as f64).sum();
    let probs: Vec<f64> = (1..=d).map(|j| 1.0 / (h * j as f64)).collect();
    Spectrum::new(probs)
}

/// Fidelity of the best zero-communication (local-unitary) conversion
/// of `M(d)` into `M(d) ⊗ target`: the sorted match of the two spectra.
pub fn embezzle_fidelity(d: u64, target: &Spectrum) -> Result<f64> {
    if d == 0 {
        return Err(Error::EmptyDimension);
    }
    let size = d as usize * target.len();
    if size > SIZE_CAP {
        return Err(Error::SizeCap {
            size,
            cap: SIZE_CAP,
        });
    }
    let m = m_spectrum(d)?;
    Ok(m.match_fidelity(&m.tensor(target)))
}

/// Doubling search for the smallest power-of-two dimension with
/// `embezzle_fidelity > 1 − eps`, probing d = 1, 2, 4, … up to 2^20.
/// Exceeding the cap reports the best fidelity achieved.
pub fn min_embezzle_dim(target: &Spectrum, eps: f64, descriptor: &str) -> Result<EmbezzleResult> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::BadEps { eps, max: 1.0 });
    }
    let goal = 1.0 - eps;
    let mut previous: Option<(u64, f64)> = None;
    let mut d = 1u64;
    loop {
        let fidelity = embezzle_fidelity(d, target)?;
        if fidelity > goal {
            return Ok(EmbezzleResult {
                d,
                fidelity,
                target: descriptor.to_string(),
                eps_target: Some(eps),
                predecessor: previous,
            });
        }
        previous = Some((d, fidelity));
        if d >= DIM_CAP {
            let (best_dim, best_fidelity) = previous.expect("at least one probe");
            return Err(Error::EmbezzleCap {
                cap: DIM_CAP,
                best_dim,
                best_fidelity,
            });
        }
        d *= 2;
    }
}
