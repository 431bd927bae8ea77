//! Spectrum algebra: Rényi entropies, majorization, ε-rank, tensor
//! products, and the sorted-matching fidelity between pure-state spectra.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::{Error, Result};

/// Entries below this threshold count as zero for rank purposes
/// (`S_0` and ε-rank). Sits well above the eigensolver noise floor.
pub const RANK_THRESHOLD: f64 = 1e-12;
/// Entries in `[-ENTRY_TOL, 0)` are round-off and get clamped to zero.
const ENTRY_TOL: f64 = 1e-12;
/// A spectrum must sum to 1 within this tolerance.
const SUM_TOL: f64 = 1e-9;
/// File loads renormalize, but reject inputs off by more than this.
const LOAD_SUM_TOL: f64 = 1e-6;

/// Probability spectrum sorted descending (Schmidt coefficients or
/// density-operator eigenvalues). A trailing run of explicit zeros is
/// permitted and preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    probs: Vec<f64>,
}

/// A Rényi order: a finite real α ≥ 0 or ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(f64),
    Inf,
}

impl Order {
    pub fn finite(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::BadOrder { alpha });
        }
        Ok(Order::Finite(alpha))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Order::Inf)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Order::Finite(a) => *a,
            Order::Inf => f64::INFINITY,
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Order::Inf);
        }
        let alpha: f64 = t.parse().map_err(|_| Error::BadOrder { alpha: f64::NAN })?;
        Order::finite(alpha)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(a) => write!(f, "{a}"),
            Order::Inf => write!(f, "inf"),
        }
    }
}

impl Spectrum {
    /// Build from probabilities in any order. Entries in
    /// `[-1e-12, 0)` are clamped to zero; anything more negative is an
    /// error, as is a total off 1 by more than 1e-9.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDimension);
        }
        for p in &mut probs {
            if !p.is_finite() || *p < -ENTRY_TOL {
                return Err(Error::NegativeProbability { value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotNormalized { sum, tol: SUM_TOL });
        }
        probs.sort_unstable_by(|a, b| b.total_cmp(a));
        Ok(Self { probs })
    }

    /// Build from eigensolver output: eigenvalues in `[-1e-10, 0)` are
    /// round-off on a PSD-validated operator and get clamped to zero.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        for l in &mut eigenvalues {
            if *l < 0.0 && *l >= crate::linalg::PSD_TOL {
                *l = 0.0;
            }
        }
        Self::new(eigenvalues)
    }

    /// Internal constructor for spectra already sorted descending whose
    /// normalization is inherited from validated inputs.
    fn from_sorted_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(probs.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 3e-9);
        Self { probs }
    }

    /// The flat spectrum on k outcomes (spectrum of a rank-k maximally
    /// entangled state).
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self {
            probs: vec![1.0 / k as f64; k],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Count of entries above the rank threshold.
    pub fn rank(&self) -> usize {
        self.probs.iter().filter(|&&p| p > RANK_THRESHOLD).count()
    }

    /// Load from a plain-text file, one decimal value per line, any
    /// order. The values are renormalized; totals off 1 by more than
    /// 1e-6 are rejected.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parse the file format from a string (see [`Spectrum::load`]).
    pub fn parse(text: &str) -> Result<Self> {
        let mut probs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v: f64 = t.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("not a decimal value: {t:?}"),
            })?;
            if !v.is_finite() || v < -ENTRY_TOL {
                return Err(Error::NegativeProbability { value: v });
            }
            probs.push(v.max(0.0));
        }
        if probs.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > LOAD_SUM_TOL {
            return Err(Error::NotNormalized {
                sum,
                tol: LOAD_SUM_TOL,
            });
        }
        for p in &mut probs {
            *p /= sum;
        }
        Self::new(probs)
    }

    /// Rényi entropy in bits.
    ///
    /// `S_α = log₂(Σ λᵢ^α) / (1−α)` for α ∉ {0, 1, ∞}, with the
    /// exceptional orders `S_0 = log₂ rank`, `S_1 = −Σ λ log₂ λ` and
    /// `S_∞ = −log₂ λ₁`. Zero entries contribute nothing for any α > 0.
    /// The generic branch factors out λ₁ so large orders cannot
    /// underflow.
    pub fn renyi(&self, order: Order) -> f64 {
        let s = match order {
            Order::Inf => -self.probs[0].log2(),
            Order::Finite(a) if a == 0.0 => (self.rank() as f64).log2(),
            Order::Finite(a) if a == 1.0 => self
                .probs
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * p.log2())
                .sum(),
            Order::Finite(a) => {
                let lmax = self.probs[0];
                let scaled: f64 = self
                    .probs
                    .iter()
                    .filter(|&&p| p > 0.0)
                    .map(|&p| (p / lmax).powf(a))
                    .sum();
                (a * lmax.log2() + scaled.log2()) / (1.0 - a)
            }
        };
        s.max(0.0)
    }

    /// True iff every prefix sum of `self` dominates that of `other`
    /// within 1e-10 slack (the shorter spectrum is zero-padded).
    pub fn majorizes(&self, other: &Spectrum) -> bool {
        let len = self.len().max(other.len());
        let mut acc_p = 0.0;
        let mut acc_q = 0.0;
        for l in 0..len {
            acc_p += self.probs.get(l).copied().unwrap_or(0.0);
            acc_q += other.probs.get(l).copied().unwrap_or(0.0);
            if acc_p < acc_q - 1e-10 {
                return false;
            }
        }
        true
    }

    /// Size of the smallest set of leading eigenvalues capturing at
    /// least `1 − eps` of the mass. Its log₂ is the approximate
    /// state-preparation cost in qubits.
    pub fn eps_rank(&self, eps: f64) -> Result<usize> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::BadEps { eps, max: 1.0 });
        }
        let target = 1.0 - eps - 1e-12;
        let mut acc = 0.0;
        for (m, &p) in self.probs.iter().enumerate() {
            acc += p;
            if acc >= target {
                return Ok(m + 1);
            }
        }
        Ok(self.len())
    }

    /// All pairwise products, sorted descending: the spectrum of a
    /// tensor product of states. Rényi entropies are additive over it.
    pub fn tensor(&self, other: &Spectrum) -> Spectrum {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for &p in &self.probs {
            for &q in &other.probs {
                probs.push(p * q);
            }
        }
        probs.sort_unstable_by(|a, b| b.total_cmp(a));
        Spectrum::from_sorted_unchecked(probs)
    }

    /// Best overlap of two bipartite pure states under local unitaries:
    /// `Σ √(p↓ⱼ q↓ⱼ)` over the descending spectra, the shorter one
    /// zero-padded. Equals 1 iff the spectra agree.
    pub fn match_fidelity(&self, other: &Spectrum) -> f64 {
        let f: f64 = self
            .probs
            .iter()
            .zip(other.probs.iter())
            .map(|(&p, &q)| (p * q).sqrt())
            .sum();
        f.clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
    }

    #[test]
    fn uniform_entropy_is_log_k() {
        for k in [1usize, 2, 4, 8, 17] {
            let p = Spectrum::uniform(k).unwrap();
            let want = (k as f64).log2();
            for a in [0.5, 1.0, 2.0, 16.0] {
                assert_close(p.renyi(Order::finite(a).unwrap()), want, 1e-12);
            }
            assert_close(p.renyi(Order::Inf), want, 1e-12);
        }
    }

    #[test]
    fn pure_state_entropy_is_zero() {
        let p = spec(&[1.0, 0.0, 0.0]);
        for a in [0.25, 0.5, 1.0, 2.0] {
            assert_close(p.renyi(Order::finite(a).unwrap()), 0.0, 1e-15);
        }
        assert_close(p.renyi(Order::Inf), 0.0, 1e-15);
        // order 0 counts the support, not the ambient dimension
        assert_close(p.renyi(Order::finite(0.0).unwrap()), 0.0, 1e-15);
    }

    #[test]
    fn zero_entries_do_not_contribute() {
        let with_zeros = spec(&[0.5, 0.5, 0.0, 0.0]);
        let without = spec(&[0.5, 0.5]);
        for a in [0.0, 0.3, 1.0, 2.0] {
            assert_close(
                with_zeros.renyi(Order::finite(a).unwrap()),
                without.renyi(Order::finite(a).unwrap()),
                1e-12,
            );
        }
    }

    #[test]
    fn large_order_does_not_underflow() {
        let p = spec(&[0.3, 0.3, 0.2, 0.2]);
        let s = p.renyi(Order::finite(1e4).unwrap());
        assert!(s.is_finite());
        assert_close(s, p.renyi(Order::Inf), 1e-2);
    }

    #[test]
    fn order_validation() {
        assert!(Order::finite(-0.5).is_err());
        assert!(Order::finite(f64::NAN).is_err());
        assert!("inf".parse::<Order>().unwrap().is_inf());
        assert!("0.5".parse::<Order>().is_ok());
        assert!("-1".parse::<Order>().is_err());
        assert!("abc".parse::<Order>().is_err());
    }

    #[test]
    fn majorization_examples() {
        let pure = spec(&[1.0, 0.0]);
        let flat = spec(&[0.5, 0.5]);
        assert!(pure.majorizes(&flat));
        assert!(!flat.majorizes(&pure));

        let p = spec(&[0.6, 0.4]);
        assert!(p.majorizes(&flat));
        assert!(!flat.majorizes(&p));

        // uniform is majorized by everything on k outcomes
        let u = Spectrum::uniform(4).unwrap();
        let q = spec(&[0.4, 0.3, 0.2, 0.1]);
        assert!(q.majorizes(&u));
        // and padding handles length mismatches
        assert!(pure.majorizes(&u));
    }

    #[test]
    fn eps_rank_examples() {
        let p = spec(&[0.5, 0.3, 0.2]);
        assert_eq!(p.eps_rank(0.25).unwrap(), 2);
        let u = Spectrum::uniform(8).unwrap();
        assert_eq!(u.eps_rank(0.0).unwrap(), 8);
        assert_eq!(u.eps_rank(0.5).unwrap(), 4);
        assert!(u.eps_rank(1.0).is_err());
        assert!(u.eps_rank(-0.1).is_err());
    }

    #[test]
    fn tensor_examples() {
        let p = spec(&[0.7, 0.3]);
        let one = Spectrum::uniform(1).unwrap();
        assert_eq!(p.tensor(&one).probs(), p.probs());

        let u6 = Spectrum::uniform(2)
            .unwrap()
            .tensor(&Spectrum::uniform(3).unwrap());
        for &v in u6.probs() {
            assert_close(v, 1.0 / 6.0, 1e-15);
        }

        let t = spec(&[2.0 / 3.0, 1.0 / 3.0]).tensor(&spec(&[0.5, 0.5]));
        let want = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0];
        for (a, b) in t.probs().iter().zip(want.iter()) {
            assert_close(*a, *b, 1e-15);
        }
    }

    #[test]
    fn match_fidelity_examples() {
        let p = spec(&[0.4, 0.35, 0.25]);
        assert_close(p.match_fidelity(&p), 1.0, 1e-12);

        let pure = spec(&[1.0, 0.0]);
        let flat = spec(&[0.5, 0.5]);
        assert_close(pure.match_fidelity(&flat), 0.5f64.sqrt(), 1e-12);
        assert_close(flat.match_fidelity(&pure), 0.5f64.sqrt(), 1e-12);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            Spectrum::new(vec![0.9, 0.2]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            Spectrum::new(vec![1.1, -0.1]),
            Err(Error::NegativeProbability { .. })
        ));
        assert!(Spectrum::new(vec![]).is_err());
        assert!(Spectrum::uniform(0).is_err());
        // round-off negatives are clamped
        let p = Spectrum::new(vec![1.0, -1e-13]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
    }

    #[test]
    fn parse_and_renormalize() {
        let p = Spectrum::parse("0.25\n\n0.5\n0.2500001\n").unwrap();
        assert_close(p.probs().iter().sum::<f64>(), 1.0, 1e-12);
        assert_close(p.probs()[0], 0.5, 1e-6);

        assert!(matches!(
            Spectrum::parse("0.5\n0.4\n"),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            Spectrum::parse("0.5\nhalf\n"),
            Err(Error::Parse { .. })
        ));
        assert!(Spectrum::parse("").is_err());
    }

    #[test]
    fn sorted_on_construction() {
        let p = Spectrum::parse("0.1\n0.6\n0.3\n").unwrap();
        assert!(p.probs().windows(2).all(|w| w[0] >= w[1]));
    }
}
