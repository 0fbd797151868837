//! Limit points of Hermitian spectral radii.
//!
//! Largest positive roots are isolated with a Sturm sequence and bisection
//! on exact integer sign evaluation at dyadic points, so no floating-point
//! sign error can move a bracket.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::charpoly_exact;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::hermitian::spectral_radius;
use crate::poly::{bigint_to_dd, IntPolynomial};

/// Bisection stops once the bracket is narrower than `2^-BISECTION_BITS`.
const BISECTION_BITS: u64 = 72;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum LimitKind {
    Eta(usize),
    Zeta(usize),
    Xi,
    RhoStar,
    Custom,
}

/// A limit point `r^{1/2} + r^{-1/2}` attached to the largest positive root `r`
/// of its defining polynomial. For `RhoStar` the root is the value itself.
#[derive(Clone, Debug, Serialize)]
pub struct LimitPoint {
    pub kind: LimitKind,
    #[serde(serialize_with = "ser_poly")]
    pub polynomial: IntPolynomial,
    pub root: f64,
    pub value: f64,
}

fn ser_poly<S: serde::Serializer>(p: &IntPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_json().serialize(s)
}

/// `p / x^j` for the largest `j` with `x^j | p`.
fn strip_zero_roots(p: &IntPolynomial) -> IntPolynomial {
    let skip = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    IntPolynomial::new(p.coeffs()[skip..].to_vec())
}

fn primitive_part(p: &IntPolynomial) -> IntPolynomial {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() || g.is_one() {
        return p.clone();
    }
    IntPolynomial::new(p.coeffs().iter().map(|c| c / &g).collect())
}

/// A positive multiple of the remainder of `a` by `b`.
fn pseudo_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let b = if b.leading().is_negative() { -b } else { b.clone() };
    let db = b.degree().expect("divisor is non-zero");
    let lb = b.leading();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading();
        let scaled = IntPolynomial::new(r.coeffs().iter().map(|c| c * &lb).collect());
        let sub = IntPolynomial::new(b.shift(dr - db).coeffs().iter().map(|c| c * &lr).collect());
        r = primitive_part(&(&scaled - &sub));
    }
    r
}

fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    while !b.is_zero() {
        let r = pseudo_remainder(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    if a.leading().is_negative() {
        -&a
    } else {
        a
    }
}

/// Exact quotient `a / b` in `Z[x]`; `b` must be primitive and divide `a`.
fn exact_div(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("divisor is non-zero");
    let lb = b.leading();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.degree().map_or(0, |d| d.saturating_sub(db) + 1)];
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let c = r.leading() / &lb;
        q[dr - db] = c.clone();
        let sub = IntPolynomial::new(b.shift(dr - db).coeffs().iter().map(|x| x * &c).collect());
        r = &r - &sub;
    }
    assert!(r.is_zero(), "exact polynomial division left a remainder");
    IntPolynomial::new(q)
}

/// Square-free part with roots at zero removed.
fn reduce(p: &IntPolynomial) -> IntPolynomial {
    let p = primitive_part(&strip_zero_roots(p));
    if p.degree().unwrap_or(0) == 0 {
        return p;
    }
    let g = gcd(&p, &p.derivative());
    exact_div(&p, &g)
}

fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone(), primitive_part(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        if seq[n - 1].degree() == Some(0) {
            break;
        }
        let r = pseudo_remainder(&seq[n - 2], &seq[n - 1]);
        seq.push(-&r);
    }
    seq
}

/// Sign of `p(m / 2^e)`, from `2^{e d} p(m / 2^e) = sum c_k m^k 2^{e (d - k)}`.
fn sign_at_dyadic(p: &IntPolynomial, m: &BigInt, e: u64) -> i8 {
    let scale = BigInt::one() << e as usize;
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * m + c * &pow;
        pow *= &scale;
    }
    sgn(&acc)
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(seq: &[IntPolynomial], m: &BigInt, e: u64) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = sign_at_dyadic(p, m, e);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Largest positive root as a double-double, bracketed to `2^-72`.
pub(crate) fn largest_positive_root_dd(p: &IntPolynomial) -> Result<Dd> {
    let q = reduce(p);
    if q.degree().unwrap_or(0) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let seq = sturm_sequence(&q);
    // Cauchy bound 1 + max |c_k / c_d|, rounded up to a power of two.
    let lead = q.leading().abs();
    let max = q.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = BigInt::one() + (max + &lead - 1u8) / &lead;
    let bits = bound.bits();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << bits as usize;
    let mut e = 0u64;
    if variations(&seq, &lo, e) == variations(&seq, &hi, e) {
        return Err(Error::NoPositiveRoot);
    }
    // Invariant: the largest root lies in (lo, hi] / 2^e. For square-free q the
    // Sturm count over (a, b] stays valid when a itself is a root.
    while e < BISECTION_BITS + bits {
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid = (&lo + &hi) >> 1;
        let above = variations(&seq, &mid, e) - variations(&seq, &hi, e);
        if above == 0 {
            if sign_at_dyadic(&q, &mid, e) == 0 {
                return Ok(dyadic_to_dd(&mid, e));
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if sign_at_dyadic(&q, &hi, e) == 0 {
        return Ok(dyadic_to_dd(&hi, e));
    }
    Ok(dyadic_to_dd(&(lo + hi), e + 1))
}

fn dyadic_to_dd(m: &BigInt, e: u64) -> Dd {
    let d = bigint_to_dd(m);
    let s = 2f64.powi(-(e as i32));
    Dd { hi: d.hi * s, lo: d.lo * s }
}

/// The largest positive real root of `p`.
pub fn largest_positive_root(p: &IntPolynomial) -> Result<f64> {
    largest_positive_root_dd(p).map(Dd::to_f64)
}

/// Distinct real roots of `p` in ascending order, each to about `2^-60`.
pub fn real_roots(p: &IntPolynomial) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(Error::NoRoot);
    }
    let q = reduce(p);
    let mut roots: Vec<f64> = positive_roots(&q.reflect()).into_iter().map(|r| -r).collect();
    if p.coeff(0).is_zero() {
        roots.push(0.0);
    }
    roots.extend(positive_roots(&q));
    roots.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    Ok(roots)
}

/// Positive roots of a square-free `q` with `q(0) != 0`, isolated by
/// splitting `(0, bound]` until each piece holds one Sturm root.
fn positive_roots(q: &IntPolynomial) -> Vec<f64> {
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(q);
    let lead = q.leading().abs();
    let max = q.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bits = (BigInt::one() + (max + &lead - 1u8) / &lead).bits();
    let count = |lo: &BigInt, hi: &BigInt, e: u64| variations(&seq, lo, e) - variations(&seq, hi, e);
    let mut out = Vec::new();
    let mut stack = vec![(BigInt::zero(), BigInt::one() << bits as usize, 0u64)];
    while let Some((mut lo, mut hi, mut e)) = stack.pop() {
        match count(&lo, &hi, e) {
            0 => {}
            1 => {
                while e < BISECTION_BITS + bits {
                    lo <<= 1;
                    hi <<= 1;
                    e += 1;
                    let mid: BigInt = (&lo + &hi) >> 1;
                    if count(&lo, &mid, e) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(dyadic_to_dd(&(lo + hi), e + 1).to_f64());
            }
            _ => {
                let (lo, hi): (BigInt, BigInt) = (lo << 1, hi << 1);
                let mid: BigInt = (&lo + &hi) >> 1;
                stack.push((mid.clone(), hi, e + 1));
                stack.push((lo, mid, e + 1));
            }
        }
    }
    out
}

fn limit_from_root(kind: LimitKind, polynomial: IntPolynomial) -> LimitPoint {
    let r = largest_positive_root_dd(&polynomial).expect("limit-point polynomials have a positive root");
    let s = r.sqrt();
    let value = s + Dd::ONE / s;
    LimitPoint { kind, polynomial, root: r.to_f64(), value: value.to_f64() }
}

/// `x^k (x^2 - x - 1) + 1`.
pub fn eta_polynomial(k: usize) -> IntPolynomial {
    &IntPolynomial::from_i64(&[-1, -1, 1]).shift(k) + &IntPolynomial::one()
}

/// `x^{k+2} (x^2 - x - 1) + x^2 - 1`.
pub fn zeta_polynomial(k: usize) -> IntPolynomial {
    &IntPolynomial::from_i64(&[-1, -1, 1]).shift(k + 2) + &IntPolynomial::from_i64(&[-1, 0, 1])
}

/// `x^6 - 2x^5 + x^4 - x^2 + x - 1`.
pub fn xi_polynomial() -> IntPolynomial {
    IntPolynomial::from_i64(&[-1, 1, -1, 0, 1, -2, 1])
}

pub fn eta(k: usize) -> Result<LimitPoint> {
    if k < 1 {
        return Err(Error::BadParameters("eta_k needs k >= 1".into()));
    }
    Ok(limit_from_root(LimitKind::Eta(k), eta_polynomial(k)))
}

pub fn zeta(k: usize) -> LimitPoint {
    limit_from_root(LimitKind::Zeta(k), zeta_polynomial(k))
}

pub fn xi() -> LimitPoint {
    limit_from_root(LimitKind::Xi, xi_polynomial())
}

/// `sqrt(2 + sqrt 5)` in double-double.
pub fn rho_star_dd() -> Dd {
    (Dd::new(2.0) + Dd::new(5.0).sqrt()).sqrt()
}

pub fn rho_star() -> f64 {
    rho_star_dd().to_f64()
}

/// `rho*` as a limit point, with minimal polynomial `x^4 - 4x^2 - 1`.
pub fn rho_star_point() -> LimitPoint {
    let v = rho_star();
    LimitPoint { kind: LimitKind::RhoStar, polynomial: IntPolynomial::from_i64(&[-1, 0, -4, 0, 1]), root: v, value: v }
}

/// `(x + sqrt(x^2 - 4)) / 2`, clamped to `x / 2` below 2.
pub(crate) fn phi_dd(x: Dd) -> Dd {
    let disc = x * x - Dd::new(4.0);
    let root = if disc.hi > 0.0 { disc.sqrt() } else { Dd::ZERO };
    let s = x + root;
    Dd { hi: s.hi / 2.0, lo: s.lo / 2.0 }
}

pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::DomainError(x));
    }
    Ok(phi_dd(Dd::new(x)).to_f64())
}

/// Length of the probe path used to test that the path-attached sequence
/// escapes 2.
pub const HOFFMAN_PROBE: usize = 30;

/// `y^degree p(y + 1/y)` as a polynomial in `y`; needs `degree >= deg p`.
fn joukowski_numerator(p: &IntPolynomial, degree: usize) -> IntPolynomial {
    let y2_plus_1 = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut power = IntPolynomial::one();
    let mut out = IntPolynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out = &out + &IntPolynomial::new(power.coeffs().iter().map(|a| a * c).collect()).shift(degree - k);
        power = &power * &y2_plus_1;
    }
    out
}

/// `lim rho(g + path of length n at v)`, from the roots outside `[-2, 2]` of
/// `phi(x) Phi(g, x) - Phi(g - v, x)`.
///
/// With `x = y + 1/y` this is `y Phi(g, x) - Phi(g - v, x)`, where `|y| > 1`
/// exactly when `|x| > 2`. Multiplying by `y^|g|` gives an integer polynomial
/// in `y` whose real roots are isolated exactly. Roots `y < -1` are limits of
/// the least eigenvalue, which sets the radius when the spectrum is not
/// symmetric. Sign scanning in `x` is not enough, since an eigenvector of `g`
/// vanishing at `v` gives a shared root, often of even multiplicity.
pub fn hoffman_limit(g: &MixedGraph, v: usize) -> Result<f64> {
    if v >= g.order() {
        return Err(Error::IndexOutOfRange { index: v, order: g.order() });
    }
    let probe = spectral_radius(&g.attach_path(v, HOFFMAN_PROBE))?;
    if probe <= 2.0 + 1e-6 {
        return Err(Error::HypothesisUnmet(probe));
    }
    let n = g.order();
    let whole = joukowski_numerator(&charpoly_exact(g)?, n);
    let deleted = joukowski_numerator(&charpoly_exact(&g.remove_vertex(v))?, n - 1);
    real_roots(&(&whole - &deleted))?
        .into_iter()
        .filter(|y| y.abs() > 1.0)
        .map(|y| (y + 1.0 / y).abs())
        .max_by(f64::total_cmp)
        .ok_or(Error::NoRoot)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub rho: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub limit: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Nondecreasing in `n`, allowing `tol` of numerical jitter.
    pub fn is_nondecreasing(&self, tol: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].rho >= w[0].rho - tol)
    }

    pub fn is_nonincreasing(&self, tol: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].rho <= w[0].rho + tol)
    }

    pub fn final_gap(&self) -> Option<f64> {
        self.rows.last().map(|r| r.gap)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,rho,gap\n");
        for r in &self.rows {
            s.push_str(&format!("{},{:.12},{:.6e}\n", r.n, r.rho, r.gap));
        }
        s
    }
}

/// Spectral radii of `family(n)` for each `n`, with `gap = |rho - limit|`.
/// Members are evaluated in parallel; rows keep the order of `ns`.
pub fn convergence_table<F>(family: F, ns: &[usize], limit: f64) -> Result<ConvergenceTable>
where
    F: Fn(usize) -> Result<MixedGraph> + Sync,
{
    let rows = ns
        .par_iter()
        .map(|&n| {
            let rho = spectral_radius(&family(n)?)?;
            Ok(ConvergenceRow { n, rho, gap: (rho - limit).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { limit, rows })
}

/// Indices up to which the point families are tabulated by [`LimitSet`].
pub const LIMIT_SET_INDEX_CAP: usize = 40;

/// The claimed set of limit points: `{eta_k} u {xi} u {zeta_k} u [rho*, inf)`,
/// with the point families tabulated for indices up to [`LIMIT_SET_INDEX_CAP`].
#[derive(Clone, Debug, Serialize)]
pub struct LimitSet {
    pub points: Vec<LimitPoint>,
    pub threshold: f64,
}

impl LimitSet {
    pub fn get() -> &'static LimitSet {
        static SET: OnceLock<LimitSet> = OnceLock::new();
        SET.get_or_init(|| {
            let mut points: Vec<LimitPoint> = (1..=LIMIT_SET_INDEX_CAP)
                .into_par_iter()
                .map(|k| eta(k).expect("k >= 1"))
                .collect();
            points.push(xi());
            points.extend((0..=LIMIT_SET_INDEX_CAP).into_par_iter().map(zeta).collect::<Vec<_>>());
            LimitSet { points, threshold: rho_star() }
        })
    }

    /// Membership up to `tol`. Points of the tail beyond the tabulated
    /// indices lie within `tol` of `rho*` only once they are close enough.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.threshold - tol || self.points.iter().any(|p| (p.value - x).abs() <= tol)
    }

    /// The tabulated point nearest to `x`, if any.
    pub fn nearest(&self, x: f64) -> Option<&LimitPoint> {
        self.points.iter().min_by(|a, b| (a.value - x).abs().total_cmp(&(b.value - x).abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        let r = largest_positive_root(&IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let r = largest_positive_root(&IntPolynomial::from_i64(&[1, -1, -1, 1])).unwrap();
        assert_eq!(r, 1.0);
        let r = largest_positive_root(&IntPolynomial::from_i64(&[-1, -1, 0, 1])).unwrap();
        assert!((r - 1.324_717_957_244_746).abs() < 1e-15);
        assert!(matches!(largest_positive_root(&IntPolynomial::from_i64(&[1, 0, 1])), Err(Error::NoPositiveRoot)));
        assert!(matches!(largest_positive_root(&IntPolynomial::from_i64(&[3, 1])), Err(Error::NoPositiveRoot)));
        assert!(matches!(largest_positive_root(&IntPolynomial::zero()), Err(Error::NoPositiveRoot)));
    }

    #[test]
    fn exact_dyadic_root() {
        // (x - 3/4)(x + 5) with the root landing on a bisection midpoint.
        let p = IntPolynomial::from_i64(&[-15, 17, 4]);
        assert_eq!(largest_positive_root(&p).unwrap(), 0.75);
        let p = IntPolynomial::from_i64(&[0, 0, -4, 1]);
        assert_eq!(largest_positive_root(&p).unwrap(), 4.0);
    }

    #[test]
    fn repeated_roots() {
        // (x - 2)^3 (x - 1)
        let a = IntPolynomial::from_i64(&[-2, 1]);
        let p = &(&(&a * &a) * &a) * &IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(largest_positive_root(&p).unwrap(), 2.0);
    }

    #[test]
    fn rho_star_identities() {
        let r = rho_star();
        assert!((r - 2.058_171_027_271_492_4).abs() < 1e-15);
        assert!((r * r - 2.0 - 5f64.sqrt()).abs() < 1e-14);
        let p = phi(r).unwrap();
        assert!((p * p - (5f64.sqrt() + 1.0) / 2.0).abs() < 1e-13);
        assert!((r * p - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-13);
        assert_eq!(phi(2.0).unwrap(), 1.0);
        assert!(matches!(phi(1.5), Err(Error::DomainError(_))));
    }

    #[test]
    fn eta_one_is_two() {
        let e = eta(1).unwrap();
        assert!((e.value - 2.0).abs() < 1e-12);
        assert!(eta(0).is_err());
    }
    #[test]
    fn all_real_roots() {
        // (x - 2)(x + 1)^2 x (x^2 - 3)
        let p = IntPolynomial::from_i64(&[0, 6, 9, -2, -6, 0, 1]);
        let r = real_roots(&p).unwrap();
        let want = [-3f64.sqrt(), -1.0, 0.0, 3f64.sqrt(), 2.0];
        assert_eq!(r.len(), want.len());
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        assert!(real_roots(&IntPolynomial::from_i64(&[1, 0, 1])).unwrap().is_empty());
    }
}
