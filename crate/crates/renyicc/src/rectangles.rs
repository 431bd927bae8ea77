//! Sign rectangles of two-party Boolean functions and their marginal
//! density matrices.
//!
//! A rectangle stores `f(x, y)` as entries in {−1, 0, +1}; a 0 marks an
//! input pair outside the promise, which carries zero amplitude in the
//! associated bipartite states. Built-in families: the inner-product
//! function on n-bit strings and the shifted quadratic character over
//! F_q. The quadratic-character family is restricted to odd prime q;
//! prime powers would need field arithmetic this module does not ship.

use std::io::Write;
use std::path::Path;

use crate::linalg::{eigh, SymMatrix};
use crate::spectra::Spectrum;
use crate::{Error, Result};

const MAX_IP_BITS: u32 = 13;
const MAX_QCHAR_Q: u64 = 4096;

/// Sign matrix of a (possibly partial) two-party Boolean function.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
    support_size: usize,
}

/// Marginal density matrices of the unsigned support state (`phi_a`)
/// and the signed function state (`psi_a`), with their spectra.
#[derive(Debug, Clone)]
pub struct MarginalPair {
    pub phi_a: SymMatrix,
    pub psi_a: SymMatrix,
    pub phi_spectrum: Spectrum,
    pub psi_spectrum: Spectrum,
}

impl Rectangle {
    fn from_entries(rows: usize, cols: usize, entries: Vec<i8>) -> Result<Self> {
        let support_size = entries.iter().filter(|&&e| e != 0).count();
        if support_size == 0 {
            return Err(Error::EmptySupport);
        }
        Ok(Self {
            rows,
            cols,
            entries,
            support_size,
        })
    }

    /// Inner-product rectangle on n-bit strings:
    /// `R[x][y] = (−1)^(x·y)` with the bitwise dot product mod 2.
    pub fn ip(n: u32) -> Result<Self> {
        if !(1..=MAX_IP_BITS).contains(&n) {
            return Err(Error::ParamOutOfRange {
                value: n as u64,
                lo: 1,
                hi: MAX_IP_BITS as u64,
            });
        }
        let size = 1usize << n;
        let mut entries = vec![0i8; size * size];
        for x in 0..size {
            for y in 0..size {
                let parity = (x & y).count_ones() & 1;
                entries[x * size + y] = if parity == 0 { 1 } else { -1 };
            }
        }
        Self::from_entries(size, size, entries)
    }

    /// Shifted quadratic character rectangle over F_q (q an odd prime):
    /// `R[x][y] = legendre(x − y mod q)`, zero on the diagonal.
    pub fn qchar(q: u64) -> Result<Self> {
        check_odd_prime(q)?;
        if q > MAX_QCHAR_Q {
            return Err(Error::ParamOutOfRange {
                value: q,
                lo: 3,
                hi: MAX_QCHAR_Q,
            });
        }
        let size = q as usize;
        // one Legendre table instead of q^2 modular exponentiations
        let table: Vec<i8> = (0..q).map(|x| legendre_unchecked(x, q)).collect();
        let mut entries = vec![0i8; size * size];
        for x in 0..size {
            for y in 0..size {
                let diff = ((x + size - y) % size) as usize;
                entries[x * size + y] = table[diff];
            }
        }
        Self::from_entries(size, size, entries)
    }

    /// Load a rectangle from CSV: comma-separated integers in
    /// {−1, 0, 1}, one row per line.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_csv(&text)
    }

    /// Parse the CSV format from a string (see [`Rectangle::from_csv`]).
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut entries: Vec<i8> = Vec::new();
        let mut cols = None;
        let mut rows = 0usize;
        for (r, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row_entries = Vec::new();
            for (c, field) in line.split(',').enumerate() {
                let t = field.trim();
                match t {
                    "-1" => row_entries.push(-1i8),
                    "0" => row_entries.push(0),
                    "1" | "+1" => row_entries.push(1),
                    other => {
                        return Err(Error::BadRectangleEntry {
                            row: r,
                            col: c,
                            value: other.to_string(),
                        })
                    }
                }
            }
            match cols {
                None => cols = Some(row_entries.len()),
                Some(c) if c != row_entries.len() => {
                    return Err(Error::RaggedCsv {
                        row: r,
                        expected: c,
                        got: row_entries.len(),
                    })
                }
                _ => {}
            }
            entries.extend(row_entries);
            rows += 1;
        }
        let cols = cols.ok_or(Error::EmptySupport)?;
        Self::from_entries(rows, cols, entries)
    }

    /// Write the rectangle in the CSV format accepted by `from_csv`.
    pub fn to_csv<W: Write>(&self, mut w: W) -> Result<()> {
        for x in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|y| self.entries[x * self.cols + y].to_string())
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn support_size(&self) -> usize {
        self.support_size
    }

    pub fn entry(&self, x: usize, y: usize) -> i8 {
        self.entries[x * self.cols + y]
    }

    pub fn is_full_support(&self) -> bool {
        self.support_size == self.rows * self.cols
    }

    /// Both marginal density matrices of the rectangle, amplitudes
    /// uniform over the support and signed by the entries:
    /// `psi_a[x][x'] = Σ_y R[x][y] R[x'][y] / support` and `phi_a`
    /// likewise over `|R|`. Gram sums are integer-exact before the
    /// single division.
    pub fn marginals(&self) -> Result<MarginalPair> {
        let n = self.rows;
        let norm = self.support_size as f64;
        let mut psi = vec![0.0; n * n];
        let mut phi = vec![0.0; n * n];
        for x in 0..n {
            for xp in x..n {
                let mut signed: i64 = 0;
                let mut unsigned: i64 = 0;
                for y in 0..self.cols {
                    let a = self.entries[x * self.cols + y] as i64;
                    let b = self.entries[xp * self.cols + y] as i64;
                    signed += a * b;
                    unsigned += (a * b).abs();
                }
                psi[x * n + xp] = signed as f64 / norm;
                psi[xp * n + x] = psi[x * n + xp];
                phi[x * n + xp] = unsigned as f64 / norm;
                phi[xp * n + x] = phi[x * n + xp];
            }
        }
        let psi_a = SymMatrix::new(n, psi)?;
        let phi_a = SymMatrix::new(n, phi)?;
        let psi_spectrum = Spectrum::from_eigenvalues(eigh(&psi_a)?.eigenvalues)?;
        let phi_spectrum = Spectrum::from_eigenvalues(eigh(&phi_a)?.eigenvalues)?;
        Ok(MarginalPair {
            phi_a,
            psi_a,
            phi_spectrum,
            psi_spectrum,
        })
    }

    /// The eigenvalue spectrum of a total (full-support) function:
    /// spectrum of `R Rᵀ / (|X||Y|)`. Rectangles with promise zeros
    /// are rejected; use [`Rectangle::marginals`] for those.
    pub fn function_spectrum(&self) -> Result<Spectrum> {
        if !self.is_full_support() {
            return Err(Error::PromiseRectangle);
        }
        Ok(self.marginals()?.psi_spectrum)
    }

    /// Spectrum of the transposed Gram `Rᵀ R / (|X||Y|)`; equals the
    /// row-side spectrum on the nonzero part.
    pub fn function_spectrum_transposed(&self) -> Result<Spectrum> {
        if !self.is_full_support() {
            return Err(Error::PromiseRectangle);
        }
        let n = self.cols;
        let norm = self.support_size as f64;
        let mut gram = vec![0.0; n * n];
        for y in 0..n {
            for yp in y..n {
                let mut acc: i64 = 0;
                for x in 0..self.rows {
                    acc += self.entries[x * self.cols + y] as i64
                        * self.entries[x * self.cols + yp] as i64;
                }
                gram[y * n + yp] = acc as f64 / norm;
                gram[yp * n + y] = gram[y * n + yp];
            }
        }
        Spectrum::from_eigenvalues(eigh(&SymMatrix::new(n, gram)?)?.eigenvalues)
    }
}

/// Quadratic character of `x` mod an odd prime `q` via Euler's
/// criterion `x^((q−1)/2) mod q`: 0 for x = 0, +1 for nonzero squares,
/// −1 otherwise. Compositeness is detected, not assumed away.
pub fn legendre(x: u64, q: u64) -> Result<i8> {
    check_odd_prime(q)?;
    if x >= q {
        return Err(Error::ParamOutOfRange {
            value: x,
            lo: 0,
            hi: q - 1,
        });
    }
    Ok(legendre_unchecked(x, q))
}

fn legendre_unchecked(x: u64, q: u64) -> i8 {
    if x == 0 {
        return 0;
    }
    let r = mod_pow(x, (q - 1) / 2, q);
    if r == 1 {
        1
    } else {
        -1
    }
}

fn check_odd_prime(q: u64) -> Result<()> {
    if q < 3 || q % 2 == 0 || !is_prime(q) {
        return Err(Error::NotOddPrime { q });
    }
    Ok(())
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 using the standard 12-base set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integer-exact shift correlation `Σ_x g(x+r) g(x+s)` over F_q with
/// g the quadratic character (zero at zero): q−1 on the diagonal, −1
/// off it.
pub fn shift_correlation(q: u64, r: u64, s: u64) -> Result<i64> {
    check_odd_prime(q)?;
    let table: Vec<i64> = (0..q).map(|x| legendre_unchecked(x, q) as i64).collect();
    let mut acc = 0i64;
    for x in 0..q {
        acc += table[((x + r) % q) as usize] * table[((x + s) % q) as usize];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ip_n1_matrix() {
        let r = Rectangle::ip(1).unwrap();
        assert_eq!(r.entry(0, 0), 1);
        assert_eq!(r.entry(0, 1), 1);
        assert_eq!(r.entry(1, 0), 1);
        assert_eq!(r.entry(1, 1), -1);
    }

    #[test]
    fn ip_gram_is_scaled_identity() {
        let r = Rectangle::ip(2).unwrap();
        for x in 0..4usize {
            for xp in 0..4usize {
                let dot: i64 = (0..4)
                    .map(|y| r.entry(x, y) as i64 * r.entry(xp, y) as i64)
                    .sum();
                assert_eq!(dot, if x == xp { 4 } else { 0 });
            }
        }
    }

    #[test]
    fn ip_row_zero_all_ones() {
        for n in [1u32, 3, 5] {
            let r = Rectangle::ip(n).unwrap();
            for y in 0..r.cols() {
                assert_eq!(r.entry(0, y), 1);
            }
        }
    }

    #[test]
    fn ip_range_checked() {
        assert!(Rectangle::ip(0).is_err());
        assert!(Rectangle::ip(14).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 7).unwrap(), 1);
        assert_eq!(legendre(3, 7).unwrap(), -1); // squares mod 7: {1,2,4}
        assert_eq!(legendre(2, 7).unwrap(), 1); // 3^2 = 2 mod 7
        assert_eq!(legendre(0, 7).unwrap(), 0);
        for q in [9u64, 15, 21, 561] {
            assert!(legendre(1, q).is_err());
        }
        assert!(legendre(1, 2).is_err());
        assert!(legendre(1, 1).is_err());
    }

    #[test]
    fn miller_rabin_basics() {
        let primes = [2u64, 3, 5, 7, 11, 101, 4093, 1_000_000_007];
        for p in primes {
            assert!(is_prime(p), "{p} is prime");
        }
        let composites = [1u64, 4, 9, 561, 1105, 4096, 1_000_000_001];
        for c in composites {
            assert!(!is_prime(c), "{c} is composite");
        }
    }

    #[test]
    fn qchar_structure() {
        // squares mod 3 = {1}: R[x][y] = +1 iff x - y = 1 mod 3
        let r = Rectangle::qchar(3).unwrap();
        for x in 0..3usize {
            for y in 0..3usize {
                let want = if x == y {
                    0
                } else if (x + 3 - y) % 3 == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(r.entry(x, y), want, "({x},{y})");
            }
        }
        assert_eq!(r.support_size(), 6);
    }

    #[test]
    fn qchar_row_balance() {
        let r = Rectangle::qchar(7).unwrap();
        for x in 0..7usize {
            let pos = (0..7).filter(|&y| r.entry(x, y) == 1).count();
            let neg = (0..7).filter(|&y| r.entry(x, y) == -1).count();
            assert_eq!((pos, neg), (3, 3));
            assert_eq!(r.entry(x, x), 0);
        }
        assert_eq!(r.support_size(), 42);
    }

    #[test]
    fn qchar_rejects_bad_q() {
        assert!(Rectangle::qchar(2).is_err());
        assert!(Rectangle::qchar(9).is_err());
        assert!(Rectangle::qchar(4099).is_err()); // prime but over the cap
    }

    #[test]
    fn csv_round_trip() {
        let r = Rectangle::qchar(5).unwrap();
        let mut buf = Vec::new();
        r.to_csv(&mut buf).unwrap();
        let back = Rectangle::parse_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn csv_edge_cases() {
        let one = Rectangle::parse_csv("1\n").unwrap();
        assert_eq!((one.rows(), one.cols(), one.support_size()), (1, 1, 1));

        assert!(matches!(
            Rectangle::parse_csv("1,2\n"),
            Err(Error::BadRectangleEntry { .. })
        ));
        assert!(matches!(
            Rectangle::parse_csv("1,1\n1\n"),
            Err(Error::RaggedCsv { .. })
        ));
        assert!(matches!(
            Rectangle::parse_csv("0,0\n0,0\n"),
            Err(Error::EmptySupport)
        ));
        assert!(Rectangle::parse_csv("").is_err());
    }

    #[test]
    fn ip_marginal_is_maximally_mixed() {
        let n = 3u32;
        let m = Rectangle::ip(n).unwrap().marginals().unwrap();
        let dim = 1usize << n;
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { 1.0 / dim as f64 } else { 0.0 };
                assert!((m.psi_a.get(i, j) - want).abs() < 1e-15);
            }
        }
        for &p in m.psi_spectrum.probs() {
            assert!((p - 1.0 / dim as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn qchar_marginals_match_closed_forms() {
        for q in [7u64, 11] {
            let m = Rectangle::qchar(q).unwrap().marginals().unwrap();
            let qf = q as f64;
            let norm = qf * (qf - 1.0);
            for i in 0..q as usize {
                for j in 0..q as usize {
                    let phi_want = if i == j { 1.0 / qf } else { (qf - 2.0) / norm };
                    let psi_want = if i == j { 1.0 / qf } else { -1.0 / norm };
                    assert!((m.phi_a.get(i, j) - phi_want).abs() < 1e-12);
                    assert!((m.psi_a.get(i, j) - psi_want).abs() < 1e-12);
                }
            }
            // spectra: phi = (1 - 1/q, 1/(q(q-1)) x (q-1)); psi = (1/(q-1) x (q-1), 0)
            let phi = m.phi_spectrum.probs();
            assert!((phi[0] - (1.0 - 1.0 / qf)).abs() < 1e-10);
            for &v in &phi[1..] {
                assert!((v - 1.0 / norm).abs() < 1e-10);
            }
            let psi = m.psi_spectrum.probs();
            for &v in &psi[..(q as usize - 1)] {
                assert!((v - 1.0 / (qf - 1.0)).abs() < 1e-10);
            }
            assert!(psi[q as usize - 1].abs() < 1e-10);
        }
    }

    #[test]
    fn marginal_traces_are_one() {
        let m = Rectangle::qchar(11).unwrap().marginals().unwrap();
        assert!((m.phi_a.trace() - 1.0).abs() < 1e-12);
        assert!((m.psi_a.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn function_spectrum_examples() {
        let ip = Rectangle::ip(2).unwrap().function_spectrum().unwrap();
        for &p in ip.probs() {
            assert!((p - 0.25).abs() < 1e-10);
        }

        let one = Rectangle::parse_csv("1\n").unwrap();
        assert_eq!(one.function_spectrum().unwrap().probs(), &[1.0]);

        let ones = Rectangle::parse_csv("1,1\n1,1\n").unwrap();
        let s = ones.function_spectrum().unwrap();
        assert!((s.probs()[0] - 1.0).abs() < 1e-12);
        assert!(s.probs()[1].abs() < 1e-12);

        assert!(matches!(
            Rectangle::qchar(3).unwrap().function_spectrum(),
            Err(Error::PromiseRectangle)
        ));
    }

    #[test]
    fn transposed_spectrum_agrees() {
        let r = Rectangle::parse_csv("1,-1,1\n1,1,-1\n").unwrap();
        let a = r.function_spectrum().unwrap();
        let b = r.function_spectrum_transposed().unwrap();
        for (x, y) in a.probs().iter().zip(b.probs().iter()) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn shift_property_small() {
        for q in [3u64, 7, 11] {
            for r in 0..q {
                for s in 0..q {
                    let want = if r == s { q as i64 - 1 } else { -1 };
                    assert_eq!(shift_correlation(q, r, s).unwrap(), want);
                }
            }
        }
    }
}
