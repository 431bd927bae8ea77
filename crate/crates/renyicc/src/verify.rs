//! Seeded verification suites behind the `verify` CLI command.
//!
//! Each suite runs the invariants of one module on deterministic random
//! instances. Fixed seed in, fixed report out: the rendered text is
//! byte-identical across runs, so the suites can be diffed in CI.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bounds::{
    self, exact_order_grid, function_bound_promise, function_bound_uniform, holder_entropy_floor,
    qchar_bound_closed, state_approx_bound,
};
use crate::embezzle::{embezzle_fidelity, m_spectrum};
use crate::linalg::{
    self, eigh, fidelity, partial_trace_a, partial_trace_b, pinch, psd_sqrt, random_density,
    random_bipartite_pure, spectrum_of, SymMatrix,
};
use crate::rectangles::{shift_correlation, Rectangle};
use crate::report::fmt_f64;
use crate::spectra::{Order, Spectrum};
use crate::{Error, Result};

/// Default seed used by the CLI and the acceptance suite.
pub const DEFAULT_SEED: u64 = 20020901;

/// Outcome of one named property.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Outcome of a whole suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteOutcome {
    pub fn violations(&self) -> usize {
        self.properties.iter().filter(|p| !p.ok()).count()
    }
}

struct Check {
    name: &'static str,
    passed: usize,
    total: usize,
    failures: Vec<String>,
}

const MAX_REPORTED_FAILURES: usize = 3;

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(detail());
        }
    }

    fn done(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            passed: self.passed,
            total: self.total,
            failures: self.failures,
        }
    }
}

fn subseed(seed: u64, tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed
}

fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(seed, tag))
}

fn random_spectrum(rng: &mut ChaCha8Rng, len: usize) -> Spectrum {
    let mut v: Vec<f64> = (0..len).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    Spectrum::new(v).expect("normalized draw")
}

fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize) -> SymMatrix {
    let g: Vec<f64> = (0..dim * dim).map(|_| rng.sample(StandardNormal)).collect();
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            m[i * dim + j] = 0.5 * (g[i * dim + j] + g[j * dim + i]);
        }
    }
    SymMatrix::new(dim, m).expect("symmetric by construction")
}

// ---------------------------------------------------------------------------
// linalg
// ---------------------------------------------------------------------------

pub fn linalg_suite(seed: u64) -> Vec<PropertyOutcome> {
    vec![
        reconstruction(seed),
        fidelity_monotonicity(seed),
        measurement_bound(seed),
        pinch_marginal_spectrum(seed),
        pinch_entropy(seed),
        sqrt_roundtrip(seed),
        pure_marginal_symmetry(seed),
    ]
}

fn reconstruction(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/reconstruction");
    let mut check = Check::new("reconstruction");
    for &dim in &[2usize, 3, 5, 8, 16] {
        for _ in 0..8 {
            let a = random_symmetric(&mut rng, dim);
            let d = eigh(&a).expect("symmetric input");
            let mut recon_err = 0.0f64;
            let mut ortho_err = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = 0.0;
                    let mut dot = 0.0;
                    for k in 0..dim {
                        acc += d.eigenvectors[i * dim + k]
                            * d.eigenvalues[k]
                            * d.eigenvectors[j * dim + k];
                        dot += d.eigenvectors[k * dim + i] * d.eigenvectors[k * dim + j];
                    }
                    recon_err += (acc - a.get(i, j)).powi(2);
                    let target = if i == j { 1.0 } else { 0.0 };
                    ortho_err = ortho_err.max((dot - target).abs());
                }
            }
            let rel = recon_err.sqrt() / a.frobenius_norm();
            check.case(rel <= 1e-9 && ortho_err <= 1e-9, || {
                format!(
                    "dim {dim}: reconstruction {} orthogonality {}",
                    fmt_f64(rel),
                    fmt_f64(ortho_err)
                )
            });
        }
    }
    check.done()
}

fn fidelity_monotonicity(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/fidelity_monotonicity");
    let mut check = Check::new("fidelity_monotonicity");
    for &(da, db) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        for _ in 0..10 {
            let rho = random_density(da * db, rng.gen()).unwrap();
            let sigma = random_density(da * db, rng.gen()).unwrap();
            let joint = fidelity(&rho, &sigma).unwrap();
            let marg = fidelity(
                &partial_trace_b(&rho, da, db).unwrap(),
                &partial_trace_b(&sigma, da, db).unwrap(),
            )
            .unwrap();
            check.case(marg >= joint - 1e-8, || {
                format!(
                    "dims {da}x{db}: F(marginals) {} < F(joint) {}",
                    fmt_f64(marg),
                    fmt_f64(joint)
                )
            });
        }
    }
    check.done()
}

fn measurement_bound(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/measurement_bound");
    let mut check = Check::new("measurement_bound");
    for dim in 2usize..=5 {
        for _ in 0..10 {
            let rho = random_density(dim, rng.gen()).unwrap();
            let sigma = random_density(dim, rng.gen()).unwrap();
            let f = fidelity(&rho, &sigma).unwrap();
            // eigenbasis measurement of rho
            let d = eigh(&rho).unwrap();
            let mut classical = 0.0;
            for i in 0..dim {
                let v = d.eigenvector(i);
                let mut omega = 0.0;
                for a in 0..dim {
                    for b in 0..dim {
                        omega += v[a] * sigma.get(a, b) * v[b];
                    }
                }
                classical += (d.eigenvalues[i].max(0.0) * omega.max(0.0)).sqrt();
            }
            check.case(f <= classical + 1e-8, || {
                format!(
                    "dim {dim}: F {} exceeds measurement bound {}",
                    fmt_f64(f),
                    fmt_f64(classical)
                )
            });
        }
    }
    check.done()
}

fn pinch_marginal_spectrum(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/pinch_marginal_spectrum");
    let mut check = Check::new("pinch_marginal_spectrum");
    for &(da, db) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)] {
        for _ in 0..6 {
            let rho = random_density(da * db, rng.gen()).unwrap();
            let p = pinch(&rho, da, db).unwrap();
            let spec_a = eigh(&partial_trace_b(&rho, da, db).unwrap())
                .unwrap()
                .eigenvalues;
            let spec_pa = eigh(&partial_trace_b(&p, da, db).unwrap())
                .unwrap()
                .eigenvalues;
            let dev = spec_a
                .iter()
                .zip(spec_pa.iter())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            let trace_dev = (p.trace() - 1.0).abs();
            check.case(dev <= 1e-9 && trace_dev <= 1e-9, || {
                format!("dims {da}x{db}: spectrum dev {}", fmt_f64(dev))
            });
        }
    }
    check.done()
}

fn pinch_entropy(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/pinch_entropy");
    let mut check = Check::new("pinch_entropy");
    let orders = [
        Order::Finite(0.5),
        Order::Finite(1.0),
        Order::Finite(2.0),
        Order::Inf,
    ];
    for &(da, db) in &[(2usize, 2usize), (2, 3), (3, 3)] {
        for _ in 0..8 {
            let rho = random_density(da * db, rng.gen()).unwrap();
            let p = pinch(&rho, da, db).unwrap();
            let s_rho = spectrum_of(&rho).unwrap();
            let s_p = spectrum_of(&p).unwrap();
            let ok = orders
                .iter()
                .all(|&a| s_p.renyi(a) >= s_rho.renyi(a) - 1e-9);
            check.case(ok, || format!("dims {da}x{db}: pinch lowered an entropy"));
        }
    }
    check.done()
}

fn sqrt_roundtrip(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/sqrt_roundtrip");
    let mut check = Check::new("sqrt_roundtrip");
    for dim in 2usize..=6 {
        for _ in 0..4 {
            let a = random_density(dim, rng.gen()).unwrap();
            let r = psd_sqrt(&a).unwrap();
            let mut err = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = 0.0;
                    for k in 0..dim {
                        acc += r.get(i, k) * r.get(k, j);
                    }
                    err += (acc - a.get(i, j)).powi(2);
                }
            }
            let rel = err.sqrt() / a.frobenius_norm();
            check.case(rel <= 1e-8, || {
                format!("dim {dim}: sqrt roundtrip error {}", fmt_f64(rel))
            });
        }
    }
    check.done()
}

fn pure_marginal_symmetry(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "linalg/pure_marginal_symmetry");
    let mut check = Check::new("pure_marginal_symmetry");
    for &(da, db) in &[(2usize, 2usize), (2, 4), (3, 3), (4, 2), (3, 5)] {
        for _ in 0..4 {
            let (proj, spec) = random_bipartite_pure(da, db, rng.gen()).unwrap();
            let lam_b = eigh(&partial_trace_a(&proj, da, db).unwrap())
                .unwrap()
                .eigenvalues;
            let dev = spec
                .probs()
                .iter()
                .zip(lam_b.iter())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            check.case(dev <= 1e-9, || {
                format!("dims {da}x{db}: Schmidt spectra differ by {}", fmt_f64(dev))
            });
        }
    }
    check.done()
}

// ---------------------------------------------------------------------------
// spectra
// ---------------------------------------------------------------------------

pub fn spectra_suite(seed: u64) -> Vec<PropertyOutcome> {
    vec![
        entropy_bounds(seed),
        order_monotonicity(seed),
        additivity(seed),
        schur_concavity(seed),
        uniform_maximality(seed),
        pure_minimality(seed),
        continuity_probes(seed),
        eps_rank_oracle(seed),
    ]
}

fn entropy_bounds(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/entropy_bounds");
    let mut check = Check::new("entropy_bounds");
    for _ in 0..100 {
        let len = rng.gen_range(1..=12);
        let p = random_spectrum(&mut rng, len);
        let cap = (p.rank() as f64).log2();
        let ok = exact_order_grid()
            .iter()
            .all(|&a| (0.0..=cap + 1e-9).contains(&p.renyi(a)));
        check.case(ok, || format!("rank {}: entropy out of [0, log rank]", len));
    }
    check.done()
}

fn order_monotonicity(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/order_monotonicity");
    let mut check = Check::new("order_monotonicity");
    let grid = exact_order_grid();
    for _ in 0..100 {
        let p = random_spectrum(&mut rng, rng.gen_range(2..=10));
        let ok = grid
            .windows(2)
            .all(|w| p.renyi(w[0]) >= p.renyi(w[1]) - 1e-9);
        check.case(ok, || "entropy increased with the order".to_string());
    }
    check.done()
}

fn additivity(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/additivity");
    let mut check = Check::new("additivity");
    for _ in 0..100 {
        let p = random_spectrum(&mut rng, rng.gen_range(2..=6));
        let q = random_spectrum(&mut rng, rng.gen_range(2..=6));
        let t = p.tensor(&q);
        let ok = exact_order_grid()
            .iter()
            .all(|&a| (t.renyi(a) - p.renyi(a) - q.renyi(a)).abs() <= 1e-8);
        check.case(ok, || "tensor entropy is not additive".to_string());
    }
    check.done()
}

/// Apply `steps` random mixing (T-transform) steps; the result is
/// majorized by the input.
fn t_transform_chain(rng: &mut ChaCha8Rng, p: &Spectrum, steps: usize) -> Spectrum {
    let mut v = p.probs().to_vec();
    for _ in 0..steps {
        if v.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..v.len());
        let mut j = rng.gen_range(0..v.len());
        if i == j {
            j = (j + 1) % v.len();
        }
        let lam = rng.gen::<f64>();
        let (a, b) = (v[i], v[j]);
        v[i] = lam * a + (1.0 - lam) * b;
        v[j] = (1.0 - lam) * a + lam * b;
    }
    Spectrum::new(v).expect("mixing preserves normalization")
}

fn schur_concavity(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/schur_concavity");
    let mut check = Check::new("schur_concavity");
    for _ in 0..500 {
        let p = random_spectrum(&mut rng, rng.gen_range(2..=10));
        let steps = rng.gen_range(1..=6);
        let q = t_transform_chain(&mut rng, &p, steps);
        let majorized = p.majorizes(&q);
        let ok = majorized
            && exact_order_grid()
                .iter()
                .all(|&a| p.renyi(a) <= q.renyi(a) + 1e-9);
        check.case(ok, || {
            if majorized {
                "entropy decreased along a mixing step".to_string()
            } else {
                "T-transform output not majorized by input".to_string()
            }
        });
    }
    check.done()
}

fn uniform_maximality(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/uniform_maximality");
    let mut check = Check::new("uniform_maximality");
    let orders = [
        Order::Finite(0.5),
        Order::Finite(1.0),
        Order::Finite(2.0),
        Order::Inf,
    ];
    for _ in 0..100 {
        let len = rng.gen_range(2..=10);
        let p = random_spectrum(&mut rng, len);
        let cap = (len as f64).log2();
        let uniform = Spectrum::uniform(len).unwrap();
        let ok = orders.iter().all(|&a| {
            p.renyi(a) <= cap + 1e-12 && (uniform.renyi(a) - cap).abs() <= 1e-12
        });
        check.case(ok, || "uniform spectrum is not the maximizer".to_string());
    }
    check.done()
}

fn pure_minimality(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/pure_minimality");
    let mut check = Check::new("pure_minimality");
    let orders = [
        Order::Finite(0.5),
        Order::Finite(1.0),
        Order::Finite(2.0),
        Order::Inf,
    ];
    for _ in 0..100 {
        let len = rng.gen_range(2..=8);
        let mut pure = vec![0.0; len];
        pure[0] = 1.0;
        let pure = Spectrum::new(pure).unwrap();
        let mixed = random_spectrum(&mut rng, len);
        let mixed_is_spread = mixed.probs()[1] > 1e-3;
        let ok = orders.iter().all(|&a| {
            pure.renyi(a).abs() <= 1e-12 && (!mixed_is_spread || mixed.renyi(a) > 1e-9)
        });
        check.case(ok, || "pure-state minimality violated".to_string());
    }
    check.done()
}

fn continuity_probes(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/continuity_probes");
    let mut check = Check::new("continuity_probes");
    for _ in 0..100 {
        let p = random_spectrum(&mut rng, rng.gen_range(2..=8));
        let near_one = [
            p.renyi(Order::Finite(1.0 - 1e-4)),
            p.renyi(Order::Finite(1.0 + 1e-4)),
        ];
        let s1 = p.renyi(Order::Finite(1.0));
        let ok_one = near_one.iter().all(|s| (s - s1).abs() <= 1e-2);
        // full-rank draws: S at tiny order approaches log rank
        let ok_zero = (p.renyi(Order::Finite(1e-4)) - p.renyi(Order::Finite(0.0))).abs() <= 1e-2;
        let ok_inf = (p.renyi(Order::Finite(1e4)) - p.renyi(Order::Inf)).abs() <= 1e-2;
        check.case(ok_one && ok_zero && ok_inf, || {
            "entropy discontinuous at an exceptional order".to_string()
        });
    }
    check.done()
}

fn eps_rank_oracle(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "spectra/eps_rank_oracle");
    let mut check = Check::new("eps_rank_oracle");
    for _ in 0..1000 {
        let p = random_spectrum(&mut rng, rng.gen_range(1..=16));
        let eps = rng.gen::<f64>() * 0.999;
        let got = p.eps_rank(eps).unwrap();
        // independent oracle: full prefix-sum table, scan every cut point
        let mut prefix = Vec::with_capacity(p.len());
        let mut acc = 0.0;
        for &v in p.probs() {
            acc += v;
            prefix.push(acc);
        }
        let want = prefix
            .iter()
            .position(|&s| s >= 1.0 - eps - 1e-12)
            .map(|i| i + 1)
            .unwrap_or(p.len());
        check.case(got == want, || {
            format!("eps {}: got {got}, oracle {want}", fmt_f64(eps))
        });
    }
    check.done()
}

// ---------------------------------------------------------------------------
// bounds (includes the rectangle invariants that feed them)
// ---------------------------------------------------------------------------

pub fn bounds_suite(seed: u64) -> Vec<PropertyOutcome> {
    vec![
        weak_subadditivity(seed),
        communication_step(seed),
        holder_floor(seed),
        majorization_step(seed),
        eps_monotonicity(seed),
        shift_property(seed),
        gram_side_symmetry(seed),
        marginal_traces(seed),
        qchar_closed_forms(seed),
        ip_uniform_consistency(seed),
    ]
}

fn weak_subadditivity(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/weak_subadditivity");
    let mut check = Check::new("weak_subadditivity");
    let grid = exact_order_grid();
    for _ in 0..500 {
        let da = rng.gen_range(2usize..=4);
        let db = rng.gen_range(2usize..=4);
        let rho = random_density(da * db, rng.gen()).unwrap();
        let s_ab = spectrum_of(&rho).unwrap();
        let s_a = spectrum_of(&partial_trace_b(&rho, da, db).unwrap()).unwrap();
        let rank_b = spectrum_of(&partial_trace_a(&rho, da, db).unwrap())
            .unwrap()
            .rank();
        let log_rank_b = (rank_b as f64).log2();
        let ok = grid.iter().all(|&a| {
            let joint = s_ab.renyi(a);
            let single = s_a.renyi(a);
            single - log_rank_b <= joint + 1e-8 && joint <= single + log_rank_b + 1e-8
        });
        check.case(ok, || {
            format!("dims {da}x{db}: weak subadditivity violated")
        });
    }
    check.done()
}

fn communication_step(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/communication_step");
    let mut check = Check::new("communication_step");
    let grid = exact_order_grid();
    for _ in 0..100 {
        let da = rng.gen_range(2usize..=3);
        let db = rng.gen_range(2usize..=3);
        let n = rng.gen_range(1u32..=2);
        let dc = 1usize << n;
        // random tripartite pure state on A (x) C (x) B
        let total = da * dc * db;
        let mut amp: Vec<f64> = (0..total).map(|_| rng.sample(StandardNormal)).collect();
        let norm: f64 = amp.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut amp {
            *v /= norm;
        }
        // rho_AC: trace out B; rho_A: trace out C and B
        let dac = da * dc;
        let mut rho_ac = vec![0.0; dac * dac];
        for i in 0..dac {
            for j in 0..dac {
                let mut acc = 0.0;
                for b in 0..db {
                    acc += amp[i * db + b] * amp[j * db + b];
                }
                rho_ac[i * dac + j] = acc;
            }
        }
        let mut rho_a = vec![0.0; da * da];
        for i in 0..da {
            for j in 0..da {
                let mut acc = 0.0;
                for cb in 0..(dc * db) {
                    acc += amp[i * dc * db + cb] * amp[j * dc * db + cb];
                }
                rho_a[i * da + j] = acc;
            }
        }
        let s_ac = spectrum_of(&SymMatrix::new(dac, rho_ac).unwrap()).unwrap();
        let s_a = spectrum_of(&SymMatrix::new(da, rho_a).unwrap()).unwrap();
        let ok = grid
            .iter()
            .all(|&a| (s_ac.renyi(a) - s_a.renyi(a)).abs() <= n as f64 + 1e-8);
        check.case(ok, || {
            format!("moving a {n}-qubit subsystem changed an entropy by more than {n}")
        });
    }
    check.done()
}

fn holder_floor(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/holder_floor");
    let mut check = Check::new("holder_floor");
    let alphas = [0.5, 0.6, 0.75, 0.9];
    for _ in 0..200 {
        let dim = rng.gen_range(2usize..=4);
        let rho = random_density(dim, rng.gen()).unwrap();
        let sigma = random_density(dim, rng.gen()).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        let s_rho = spectrum_of(&rho).unwrap();
        let s_sigma = spectrum_of(&sigma).unwrap();
        let ok = alphas.iter().all(|&alpha| {
            let floor = holder_entropy_floor(&s_sigma, alpha, 1.0 - f).unwrap();
            s_rho.renyi(Order::Finite(alpha)) >= floor - 1e-8
        });
        check.case(ok, || {
            format!("dim {dim}: entropy under the fidelity floor at F {}", fmt_f64(f))
        });
    }
    check.done()
}

fn majorization_step(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/majorization_step");
    let mut check = Check::new("majorization_step");
    for _ in 0..200 {
        let phi = random_spectrum(&mut rng, rng.gen_range(1..=8));
        let psi = random_spectrum(&mut rng, rng.gen_range(1..=8));
        let k = 1usize << rng.gen_range(0u32..=2);
        let bound = bounds::exact_transform_bound(&phi, &psi).value_bits;
        let log_k = (k as f64).log2();
        // a k-level transfer forces psi to majorize phi (x) uniform(k);
        // the entropy gap exceeding log k must break that majorization
        let majorized = psi.majorizes(&phi.tensor(&Spectrum::uniform(k).unwrap()));
        let ok = bound <= log_k + 1e-9 || !majorized;
        check.case(ok, || {
            format!("bound {} > log2({k}) yet majorization holds", fmt_f64(bound))
        });
    }
    check.done()
}

fn eps_monotonicity(seed: u64) -> PropertyOutcome {
    let _ = seed; // deterministic inputs; no sampling needed
    let mut check = Check::new("eps_monotonicity");
    let rect = Rectangle::qchar(7).unwrap();
    let marg = rect.marginals().unwrap();
    let sigma = Spectrum::uniform(16).unwrap();
    let eps_grid = [0.0, 0.05, 0.1, 0.2, 0.3, 0.45];
    let mut prev = [f64::INFINITY; 4];
    for &eps in &eps_grid {
        let values = [
            state_approx_bound(&marg.phi_spectrum, &marg.psi_spectrum, eps)
                .unwrap()
                .value_bits,
            function_bound_uniform(&sigma, eps.min(0.49)).unwrap().value_bits,
            function_bound_promise(&rect, eps.min(0.49)).unwrap().value_bits,
            bounds::ip_bounds_closed(4, eps.min(0.49)).unwrap().value_bits,
        ];
        for (idx, (&v, &p)) in values.iter().zip(prev.iter()).enumerate() {
            check.case(v <= p + 1e-12, || {
                format!("evaluator {idx} increased from {} to {}", fmt_f64(p), fmt_f64(v))
            });
        }
        prev = values;
    }
    check.done()
}

fn shift_property(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/shift_property");
    let mut check = Check::new("shift_property");
    for r in 0..7u64 {
        for s in 0..7u64 {
            let want = if r == s { 6 } else { -1 };
            let got = shift_correlation(7, r, s).unwrap();
            check.case(got == want, || format!("q=7 r={r} s={s}: got {got}"));
        }
    }
    for _ in 0..100 {
        let r = rng.gen_range(0..101u64);
        let s = rng.gen_range(0..101u64);
        let want = if r == s { 100 } else { -1 };
        let got = shift_correlation(101, r, s).unwrap();
        check.case(got == want, || format!("q=101 r={r} s={s}: got {got}"));
    }
    check.done()
}

fn random_rectangle(rng: &mut ChaCha8Rng, rows: usize, cols: usize, promise: bool) -> Rectangle {
    loop {
        let text: String = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if promise && rng.gen::<f64>() < 0.25 {
                            "0".to_string()
                        } else if rng.gen::<bool>() {
                            "1".to_string()
                        } else {
                            "-1".to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n");
        if let Ok(rect) = Rectangle::parse_csv(&text) {
            return rect;
        }
    }
}

fn gram_side_symmetry(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/gram_side_symmetry");
    let mut check = Check::new("gram_side_symmetry");
    for _ in 0..50 {
        let rows = rng.gen_range(2usize..=6);
        let cols = rng.gen_range(2usize..=6);
        let rect = random_rectangle(&mut rng, rows, cols, false);
        let x_side = rect.function_spectrum().unwrap();
        let y_side = rect.function_spectrum_transposed().unwrap();
        let len = x_side.len().max(y_side.len());
        let dev = (0..len)
            .map(|i| {
                let a = x_side.probs().get(i).copied().unwrap_or(0.0);
                let b = y_side.probs().get(i).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0f64, f64::max);
        check.case(dev <= 1e-8, || {
            format!("{rows}x{cols}: side spectra differ by {}", fmt_f64(dev))
        });
    }
    check.done()
}

fn marginal_traces(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/marginal_traces");
    let mut check = Check::new("marginal_traces");
    for i in 0..50 {
        let rows = rng.gen_range(2usize..=6);
        let cols = rng.gen_range(2usize..=6);
        let rect = random_rectangle(&mut rng, rows, cols, i % 2 == 0);
        let m = rect.marginals().unwrap();
        let ok = (m.phi_a.trace() - 1.0).abs() <= 1e-9 && (m.psi_a.trace() - 1.0).abs() <= 1e-9;
        check.case(ok, || {
            format!(
                "{rows}x{cols}: traces {} and {}",
                fmt_f64(m.phi_a.trace()),
                fmt_f64(m.psi_a.trace())
            )
        });
    }
    check.done()
}

fn qchar_closed_forms(seed: u64) -> PropertyOutcome {
    let mut rng = rng_for(seed, "bounds/qchar_closed_forms");
    let mut check = Check::new("qchar_closed_forms");
    for &q in &[7u64, 11, 101] {
        let rect = Rectangle::qchar(q).unwrap();
        let m = rect.marginals().unwrap();
        let qf = q as f64;
        let norm = qf * (qf - 1.0);
        let mut entry_dev = 0.0f64;
        for i in 0..q as usize {
            for j in 0..q as usize {
                let phi_want = if i == j { 1.0 / qf } else { (qf - 2.0) / norm };
                let psi_want = if i == j { 1.0 / qf } else { -1.0 / norm };
                entry_dev = entry_dev
                    .max((m.phi_a.get(i, j) - phi_want).abs())
                    .max((m.psi_a.get(i, j) - psi_want).abs());
            }
        }
        let s_half = m.phi_spectrum.renyi(Order::Finite(0.5));
        let s_half_want = (4.0 - 4.0 / qf).log2();
        let eps = rng.gen::<f64>() * 0.3;
        let as_stated = function_bound_promise(&rect, eps.min(0.49))
            .unwrap()
            .companion("as_stated")
            .unwrap();
        let closed = qchar_bound_closed(q, eps.min(0.49)).unwrap().value_bits;
        let ok = entry_dev <= 1e-12
            && (s_half - s_half_want).abs() <= 1e-8
            && (as_stated - closed).abs() <= 1e-8;
        check.case(ok, || {
            format!(
                "q={q}: entry dev {}, S_1/2 dev {}, closed-form dev {}",
                fmt_f64(entry_dev),
                fmt_f64((s_half - s_half_want).abs()),
                fmt_f64((as_stated - closed).abs())
            )
        });
    }
    check.done()
}

fn ip_uniform_consistency(seed: u64) -> PropertyOutcome {
    let _ = seed;
    let mut check = Check::new("ip_uniform_consistency");
    for n in 1u32..=6 {
        let sigma = Rectangle::ip(n).unwrap().function_spectrum().unwrap();
        let dim = 1usize << n;
        let dev = sigma
            .probs()
            .iter()
            .map(|&p| (p - 1.0 / dim as f64).abs())
            .fold(0.0f64, f64::max);
        let bound = function_bound_uniform(&sigma, 0.1).unwrap().value_bits;
        let closed = bounds::ip_bounds_closed(n, 0.1).unwrap().value_bits;
        check.case(dev <= 1e-8 && (bound - closed).abs() <= 1e-6, || {
            format!(
                "n={n}: spectrum dev {}, bound dev {}",
                fmt_f64(dev),
                fmt_f64((bound - closed).abs())
            )
        });
    }
    check.done()
}

// ---------------------------------------------------------------------------
// embezzle
// ---------------------------------------------------------------------------

pub fn embezzle_suite(seed: u64) -> Vec<PropertyOutcome> {
    let _ = seed; // targets are fixed; all probes are deterministic
    vec![
        fidelity_monotone_in_dim(),
        fidelity_reaches_limit(),
        catalyst_entropy_cap(),
    ]
}

fn embezzle_targets() -> Vec<(&'static str, Spectrum)> {
    vec![
        ("epr:2", Spectrum::uniform(2).unwrap()),
        ("epr:4", Spectrum::uniform(4).unwrap()),
        ("skew", Spectrum::new(vec![0.9, 0.1]).unwrap()),
    ]
}

fn fidelity_monotone_in_dim() -> PropertyOutcome {
    let mut check = Check::new("fidelity_monotone_in_dim");
    for (name, target) in embezzle_targets() {
        let mut prev = 0.0;
        let mut ok = true;
        let mut detail = String::new();
        for k in 0..=16u32 {
            let f = embezzle_fidelity(1 << k, &target).unwrap();
            if f < prev - 1e-12 {
                ok = false;
                detail = format!(
                    "target {name}: fidelity dropped to {} at d=2^{k}",
                    fmt_f64(f)
                );
                break;
            }
            prev = f;
        }
        check.case(ok, || detail.clone());
    }
    check.done()
}

fn fidelity_reaches_limit() -> PropertyOutcome {
    let mut check = Check::new("fidelity_reaches_limit");
    for (name, target) in embezzle_targets() {
        let mut best = 0.0f64;
        let mut d = 1u64;
        let mut reached = false;
        while d <= crate::embezzle::DIM_CAP {
            let f = embezzle_fidelity(d, &target).unwrap();
            best = best.max(f);
            if f > 0.999 {
                reached = true;
                break;
            }
            d *= 2;
        }
        check.case(reached, || {
            format!(
                "target {name}: best fidelity {} at d<=2^20 (need > 9.99000000000e-1)",
                fmt_f64(best)
            )
        });
    }
    check.done()
}

fn catalyst_entropy_cap() -> PropertyOutcome {
    let mut check = Check::new("catalyst_entropy_cap");
    for &d in &[1u64, 2, 3, 10, 100, 1024] {
        let m = m_spectrum(d).unwrap();
        let cap = (d as f64).log2();
        let ok = exact_order_grid()
            .iter()
            .all(|&a| (0.0..=cap + 1e-9).contains(&m.renyi(a)));
        check.case(ok, || format!("d={d}: catalyst entropy exceeds log2(d)"));
    }
    check.done()
}

// ---------------------------------------------------------------------------
// runner
// ---------------------------------------------------------------------------

pub const SUITES: [&str; 4] = ["linalg", "spectra", "bounds", "embezzle"];

/// Run a suite (or `all`) with the given seed.
pub fn run(suite: &str, seed: u64) -> Result<Vec<SuiteOutcome>> {
    let run_one = |name: &str| -> SuiteOutcome {
        let properties = match name {
            "linalg" => linalg_suite(seed),
            "spectra" => spectra_suite(seed),
            "bounds" => bounds_suite(seed),
            "embezzle" => embezzle_suite(seed),
            _ => unreachable!(),
        };
        let name = SUITES.iter().find(|&&s| s == name).unwrap();
        SuiteOutcome { name, properties }
    };
    match suite {
        "all" => Ok(SUITES.iter().map(|s| run_one(s)).collect()),
        s if SUITES.contains(&s) => Ok(vec![run_one(s)]),
        other => Err(Error::Parse {
            line: 0,
            msg: format!("unknown suite {other:?}; expected all, linalg, spectra, bounds or embezzle"),
        }),
    }
}

/// Deterministic text report: one line per property plus a result line.
pub fn render(suite: &str, seed: u64, outcomes: &[SuiteOutcome]) -> String {
    let mut out = format!("verify suite={suite} seed={seed}\n");
    let mut violations = 0;
    for suite_outcome in outcomes {
        for p in &suite_outcome.properties {
            let status = if p.ok() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{}/{}: {} {}/{}\n",
                suite_outcome.name, p.name, status, p.passed, p.total
            ));
            if !p.ok() {
                violations += 1;
                for f in &p.failures {
                    out.push_str(&format!("  - {f}\n"));
                }
            }
        }
    }
    if violations == 0 {
        out.push_str("result: PASS\n");
    } else {
        out.push_str(&format!("result: FAIL ({violations} properties violated)\n"));
    }
    out
}
