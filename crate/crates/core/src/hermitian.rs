//! The Hermitian adjacency matrix `H(M)` and its real spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::jacobi::symmetric_eigenvalues;
use crate::unit::Weight;

/// Tolerance for interlacing and spectral symmetry comparisons.
pub const SPECTRAL_TOL: f64 = 1e-8;
/// Eigenvalues of the doubled real embedding must pair up this closely.
const PAIR_TOL: f64 = 1e-8;

/// An entry of `H(M)`: one of `0, 1, -1, i, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussianEntry {
    pub re: i8,
    pub im: i8,
}

impl GaussianEntry {
    pub const ZERO: GaussianEntry = GaussianEntry { re: 0, im: 0 };

    pub fn from_weight(w: Option<Weight>) -> GaussianEntry {
        match w {
            None => GaussianEntry::ZERO,
            Some(w) => {
                let (re, im) = w.gaussian();
                GaussianEntry { re: re as i8, im: im as i8 }
            }
        }
    }

    pub fn conj(self) -> GaussianEntry {
        GaussianEntry { re: self.re, im: -self.im }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<GaussianEntry>,
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> GaussianEntry {
        self.entries[u * self.n + v]
    }

    /// Exact check of `h_uv = conj(h_vu)` and a zero diagonal.
    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|u| {
            self.get(u, u) == GaussianEntry::ZERO
                && (0..self.n).all(|v| self.get(u, v) == self.get(v, u).conj())
        })
    }

    /// Real symmetric embedding `[[Re H, -Im H], [Im H, Re H]]`, row-major.
    pub fn real_embedding(&self) -> Vec<f64> {
        let n = self.n;
        let m = 2 * n;
        let mut s = vec![0.0; m * m];
        for u in 0..n {
            for v in 0..n {
                let e = self.get(u, v);
                let (re, im) = (e.re as f64, e.im as f64);
                s[u * m + v] = re;
                s[(u + n) * m + v + n] = re;
                s[u * m + v + n] = -im;
                s[(u + n) * m + v] = im;
            }
        }
        s
    }
}

pub fn h_matrix(g: &MixedGraph) -> HermitianMatrix {
    let n = g.order();
    let mut entries = vec![GaussianEntry::ZERO; n * n];
    for u in 0..n {
        for v in 0..n {
            entries[u * n + v] = GaussianEntry::from_weight(g.entry(u, v));
        }
    }
    HermitianMatrix { n, entries }
}

/// Eigenvalues sorted in descending order, with the spectral radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    rho: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Spectrum {
        values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        let rho = match (values.first(), values.last()) {
            (Some(a), Some(b)) => a.abs().max(b.abs()),
            _ => 0.0,
        };
        Spectrum { values, rho }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `lambda_1`, the largest eigenvalue.
    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.values.len();
        (0..n).all(|k| (self.values[k] + self.values[n - 1 - k]).abs() <= tol)
    }
}

pub fn eigenvalues(h: &HermitianMatrix) -> Result<Spectrum> {
    let n = h.dim();
    if n == 0 {
        return Ok(Spectrum::from_values(Vec::new()));
    }
    let mut doubled = symmetric_eigenvalues(&h.real_embedding(), 2 * n)?;
    doubled.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    let mut values = Vec::with_capacity(n);
    for pair in doubled.chunks(2) {
        let gap = (pair[0] - pair[1]).abs();
        assert!(gap < PAIR_TOL, "real embedding eigenvalues failed to pair: gap {gap}");
        values.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(Spectrum::from_values(values))
}

pub fn spectrum(g: &MixedGraph) -> Result<Spectrum> {
    eigenvalues(&h_matrix(g))
}

pub fn spectral_radius(g: &MixedGraph) -> Result<f64> {
    Ok(spectrum(g)?.rho())
}

/// True iff `inner` interlaces `outer`: `l_s >= m_s >= l_{s+t}` for all `s`.
pub fn interlaces(outer: &Spectrum, inner: &Spectrum) -> Result<bool> {
    let (n, k) = (outer.len(), inner.len());
    if k > n {
        return Err(Error::SizeMismatch(format!("inner spectrum has {k} values, outer only {n}")));
    }
    let t = n - k;
    let (l, m) = (outer.values(), inner.values());
    Ok((0..k).all(|s| l[s] >= m[s] - SPECTRAL_TOL && m[s] >= l[s + t] - SPECTRAL_TOL))
}

pub fn is_spectrum_symmetric(g: &MixedGraph) -> Result<bool> {
    Ok(spectrum(g)?.is_symmetric(SPECTRAL_TOL))
}

/// True iff some odd cycle has weight `1` or `-1`, that is, an odd cycle
/// carrying an even number of arcs.
pub fn has_real_odd_cycle(g: &MixedGraph) -> bool {
    g.enumerate_cycles(None).iter().any(|c| c.len() % 2 == 1 && c.weight_in(g).is_real())
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// JSON record `{"order", "eigenvalues", "rho", "symmetric"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub order: usize,
    pub eigenvalues: Vec<f64>,
    pub rho: f64,
    pub symmetric: bool,
}

impl SpectrumRecord {
    pub fn new(s: &Spectrum) -> SpectrumRecord {
        SpectrumRecord {
            order: s.len(),
            eigenvalues: s.values().iter().map(|&x| round_sig(x, 12)).collect(),
            rho: round_sig(s.rho(), 12),
            symmetric: s.is_symmetric(SPECTRAL_TOL),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind::{Arc, Undirected as U};

    #[test]
    fn h_matrix_entries() {
        let c3 = MixedGraph::build(3, &[(0, 1, U), (1, 2, U), (2, 0, U)]).unwrap();
        let h = h_matrix(&c3);
        for u in 0..3 {
            for v in 0..3 {
                let want = if u == v { 0 } else { 1 };
                assert_eq!(h.get(u, v), GaussianEntry { re: want, im: 0 });
            }
        }
        let arc = MixedGraph::build(2, &[(0, 1, Arc)]).unwrap();
        let h = h_matrix(&arc);
        assert_eq!(h.get(0, 1), GaussianEntry { re: 0, im: 1 });
        assert_eq!(h.get(1, 0), GaussianEntry { re: 0, im: -1 });
        assert!(h.is_hermitian());
        let zero = h_matrix(&MixedGraph::empty(3));
        assert!((0..3).all(|u| (0..3).all(|v| zero.get(u, v) == GaussianEntry::ZERO)));
    }

    #[test]
    fn small_spectra() {
        let p2 = MixedGraph::build(2, &[(0, 1, U)]).unwrap();
        let s = spectrum(&p2).unwrap();
        assert!((s.values()[0] - 1.0).abs() < 1e-12 && (s.values()[1] + 1.0).abs() < 1e-12);
        // negative triangle: (x - 1)^2 (x + 2)
        let c3pp = MixedGraph::build(3, &[(0, 1, Arc), (1, 2, Arc), (2, 0, U)]).unwrap();
        let s = spectrum(&c3pp).unwrap();
        for (x, y) in s.values().iter().zip([1.0, 1.0, -2.0]) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!((s.rho() - 2.0).abs() < 1e-10);
        assert!(spectrum(&MixedGraph::empty(0)).unwrap().is_empty());
    }

    #[test]
    fn star_and_cycles() {
        let star = MixedGraph::build(5, &[(0, 1, U), (0, 2, U), (0, 3, Arc), (4, 0, Arc)]).unwrap();
        assert!((spectral_radius(&star).unwrap() - 2.0).abs() < 1e-10);
        for n in 3..12 {
            let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, U)).collect();
            let c = MixedGraph::build(n, &e).unwrap();
            assert!((spectral_radius(&c).unwrap() - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn interlacing_examples() {
        let c4 = MixedGraph::build(4, &[(0, 1, U), (1, 2, U), (2, 3, U), (3, 0, U)]).unwrap();
        let p3 = c4.induced_subgraph(&[0, 1, 2]);
        let (s4, s3) = (spectrum(&c4).unwrap(), spectrum(&p3).unwrap());
        assert!(interlaces(&s4, &s3).unwrap());
        assert!(interlaces(&s4, &s4).unwrap());
        let outer = Spectrum::from_values(vec![2.0, 0.0, -2.0]);
        assert!(!interlaces(&outer, &Spectrum::from_values(vec![3.0])).unwrap());
        assert!(matches!(interlaces(&s3, &s4), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn symmetry_examples() {
        let c4p = MixedGraph::build(4, &[(0, 1, Arc), (1, 2, U), (2, 3, U), (3, 0, U)]).unwrap();
        assert!(is_spectrum_symmetric(&c4p).unwrap());
        assert!(!has_real_odd_cycle(&c4p));
        let c3 = MixedGraph::build(3, &[(0, 1, U), (1, 2, U), (2, 0, U)]).unwrap();
        assert!(!is_spectrum_symmetric(&c3).unwrap());
        assert!(has_real_odd_cycle(&c3));
        let c3p = MixedGraph::build(3, &[(0, 1, Arc), (1, 2, U), (2, 0, U)]).unwrap();
        assert!(!has_real_odd_cycle(&c3p));
        let tree = MixedGraph::build(4, &[(0, 1, U), (1, 2, Arc), (1, 3, U)]).unwrap();
        assert!(is_spectrum_symmetric(&tree).unwrap());
        assert!(!has_real_odd_cycle(&tree));
    }

    #[test]
    fn spectrum_record_json() {
        let p2 = MixedGraph::build(2, &[(0, 1, U)]).unwrap();
        let rec = SpectrumRecord::new(&spectrum(&p2).unwrap());
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"order":2,"eigenvalues":[1.0,-1.0],"rho":1.0,"symmetric":true}"#);
        assert_eq!(round_sig(2.028523488026884, 12), 2.02852348803);
    }
}
