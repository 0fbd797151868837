//! Exact characteristic polynomials `det(xI - H(M))`.
//!
//! Two independent routes are provided: a division-free Berkowitz
//! determinant over the Gaussian integers, and the vertex-deletion
//! recurrence over positive and negative cycles through a vertex. The
//! closed forms for paths, imaginary cycles, tadpoles and the three
//! obstruction families used around `rho*` are built from path polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::limits::{phi_dd, rho_star_dd};
use crate::poly::IntPolynomial;
use crate::unit::Weight;

pub const EXACT_ORDER_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn from_weight(w: Option<Weight>) -> GaussInt {
        match w {
            None => GaussInt::default(),
            Some(w) => {
                let (re, im) = w.gaussian();
                GaussInt { re: re.into(), im: im.into() }
            }
        }
    }

    fn one() -> GaussInt {
        GaussInt { re: 1.into(), im: 0.into() }
    }

    fn neg(&self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, b: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &b.re, im: &self.im + &b.im }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, b: &GaussInt) -> GaussInt {
        if self.is_zero() || b.is_zero() {
            return GaussInt::default();
        }
        GaussInt { re: &self.re * &b.re - &self.im * &b.im, im: &self.re * &b.im + &self.im * &b.re }
    }
}

/// Berkowitz: coefficients of `det(xI - A)`, highest degree first.
fn berkowitz(a: &[Vec<GaussInt>]) -> Vec<GaussInt> {
    let n = a.len();
    let mut c = vec![GaussInt::one()];
    for r in 0..n {
        // Column of the Toeplitz factor: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S,
        // where M is the leading r x r block, R = A[r][..r] and S = A[..r][r].
        let mut q = Vec::with_capacity(r + 2);
        q.push(GaussInt::one());
        q.push(a[r][r].neg());
        let mut v: Vec<GaussInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let mut dot = GaussInt::default();
            for (j, vj) in v.iter().enumerate() {
                dot = &dot + &(&a[r][j] * vj);
            }
            q.push(dot.neg());
            let next: Vec<GaussInt> = (0..r)
                .map(|i| {
                    let mut s = GaussInt::default();
                    for (j, vj) in v.iter().enumerate() {
                        s = &s + &(&a[i][j] * vj);
                    }
                    s
                })
                .collect();
            v = next;
        }
        let mut next = vec![GaussInt::default(); r + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            for j in 0..c.len().min(k + 1) {
                if k - j < q.len() {
                    *slot = &*slot + &(&q[k - j] * &c[j]);
                }
            }
        }
        c = next;
    }
    c
}

/// `Phi(M, x)` via the division-free determinant. Every coefficient must come
/// out real; a non-zero imaginary part would mean `H(M)` is not Hermitian.
pub fn charpoly_exact(g: &MixedGraph) -> Result<IntPolynomial> {
    let n = g.order();
    if n > EXACT_ORDER_CAP {
        return Err(Error::CapExceeded(format!("exact characteristic polynomial needs order <= {EXACT_ORDER_CAP}, got {n}")));
    }
    let a: Vec<Vec<GaussInt>> =
        (0..n).map(|u| (0..n).map(|v| GaussInt::from_weight(g.entry(u, v))).collect()).collect();
    let c = berkowitz(&a);
    assert!(c.iter().all(|z| z.im.is_zero()), "characteristic polynomial of a Hermitian matrix has real coefficients");
    Ok(IntPolynomial::new(c.into_iter().rev().map(|z| z.re).collect()))
}

/// `Phi(M, x)` by expanding at `u`:
/// `x Phi(M-u) - sum_{v~u} Phi(M-u-v) - 2 sum_{C+} Phi(M-V(C)) + 2 sum_{C-} Phi(M-V(C))`,
/// recursing on the lowest remaining vertex of each smaller graph.
pub fn charpoly_recurrence(g: &MixedGraph, u: usize) -> Result<IntPolynomial> {
    let n = g.order();
    if n > 64 || (n > 14 && g.cyclomatic_number() > 4) {
        return Err(Error::CapExceeded(format!(
            "recurrence needs order <= 14 or cyclomatic number <= 4 (order {n})"
        )));
    }
    if u >= n {
        return Err(Error::IndexOutOfRange { index: u, order: n });
    }
    let masks = g.adjacency_masks();
    let mut memo = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(Recurrence { g, masks: &masks, memo: &mut memo }.expand(full, Some(u)))
}

struct Recurrence<'a> {
    g: &'a MixedGraph,
    masks: &'a [u64],
    memo: &'a mut HashMap<u64, IntPolynomial>,
}

impl Recurrence<'_> {
    fn expand(&mut self, set: u64, pivot: Option<usize>) -> IntPolynomial {
        if set == 0 {
            return IntPolynomial::one();
        }
        if pivot.is_none() {
            if let Some(p) = self.memo.get(&set) {
                return p.clone();
            }
        }
        let u = pivot.unwrap_or(set.trailing_zeros() as usize);
        let rest = set & !(1u64 << u);
        let mut result = &IntPolynomial::x() * &self.expand(rest, None);
        let mut nb = self.masks[u] & set;
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            result = &result - &self.expand(rest & !(1u64 << v), None);
        }
        for (cycle, w) in self.cycles_through(u, set) {
            let term = self.expand(set & !cycle, None).scale(2);
            if w == Weight::ONE {
                result = &result - &term;
            } else if w == Weight::NEG_ONE {
                result = &result + &term;
            }
        }
        if pivot.is_none() {
            self.memo.insert(set, result.clone());
        }
        result
    }

    /// Cycles through `u` inside `set`, as (vertex mask, weight), each once.
    fn cycles_through(&self, u: usize, set: u64) -> Vec<(u64, Weight)> {
        let mut out = Vec::new();
        let mut path = vec![u];
        self.dfs(u, set, 1u64 << u, Weight::ONE, &mut path, &mut out);
        out
    }

    fn dfs(&self, u: usize, set: u64, used: u64, w: Weight, path: &mut Vec<usize>, out: &mut Vec<(u64, Weight)>) {
        let last = *path.last().unwrap();
        let mut nb = self.masks[last] & set;
        while nb != 0 {
            let x = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let step = w * self.g.entry(last, x).expect("adjacent");
            if x == u {
                if path.len() >= 3 && path[1] < last {
                    out.push((used, step));
                }
            } else if used & (1u64 << x) == 0 {
                path.push(x);
                self.dfs(u, set, used | (1u64 << x), step, path, out);
                path.pop();
            }
        }
    }
}

/// `Phi(P_n, x)`: `1, x, x Phi(P_{n-1}) - Phi(P_{n-2})`.
pub fn path_poly(n: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::x();
    for _ in 2..=n {
        let next = &(&IntPolynomial::x() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Phi(P_n)` with `Phi(P_{-1}) = 0`, convenient for the expansions below.
fn path_poly_signed(n: i64) -> IntPolynomial {
    if n < 0 {
        IntPolynomial::zero()
    } else {
        path_poly(n as usize)
    }
}

/// The closed form `(phi^{2n+2} - 1) / (phi^{n+2} - phi^n)` for `x > 2`.
pub fn path_poly_closed_form(n: usize, x: f64) -> f64 {
    let p = (x + (x * x - 4.0).sqrt()) / 2.0;
    (p.powi(2 * n as i32 + 2) - 1.0) / (p.powi(n as i32 + 2) - p.powi(n as i32))
}

/// `Phi` of an imaginary `k`-cycle: `x Phi(P_{k-1}) - 2 Phi(P_{k-2})`.
pub fn imaginary_cycle_poly(k: usize) -> Result<IntPolynomial> {
    if k < 3 {
        return Err(Error::BadParameters(format!("cycle length {k} < 3")));
    }
    Ok(&(&IntPolynomial::x() * &path_poly(k - 1)) - &path_poly(k - 2).scale(2))
}

/// `Phi(C'_{k,n})`: an imaginary `k`-cycle with a pendant path, `n` vertices in all,
/// by repeated expansion at the pendant end.
pub fn tadpole_poly(k: usize, n: usize) -> Result<IntPolynomial> {
    if k < 3 || n <= k {
        return Err(Error::BadParameters(format!("tadpole needs 3 <= k < n, got k={k}, n={n}")));
    }
    let x = IntPolynomial::x();
    let mut prev = imaginary_cycle_poly(k)?;
    let mut cur = &(&x * &prev) - &path_poly(k - 1);
    for _ in k + 2..=n {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `x [x Phi(P_{n-2}) - 2 Phi(P_{n-3})] - Phi(P_{n-2})`, the displayed form for `C'_{n-1,n}`.
pub fn near_cycle_tadpole_poly(n: usize) -> Result<IntPolynomial> {
    if n < 4 {
        return Err(Error::BadParameters(format!("C'_(n-1,n) needs n >= 4, got {n}")));
    }
    let x = IntPolynomial::x();
    let inner = &(&x * &path_poly(n - 2)) - &path_poly(n - 3).scale(2);
    Ok(&(&x * &inner) - &path_poly(n - 2))
}

fn x2() -> IntPolynomial {
    IntPolynomial::monomial(1, 2)
}

/// `x^2 P_{s+3} - x P_{s+2} - 2x^2 P_{s+1} + x P_s + x^2 P_{s-1}`.
pub fn ts_star_poly(s: usize) -> Result<IntPolynomial> {
    if s < 1 {
        return Err(Error::BadParameters("T*_s needs s >= 1".into()));
    }
    let s = s as i64;
    let (x, xx) = (IntPolynomial::x(), x2());
    let p = path_poly_signed;
    Ok(&xx * &p(s + 3) - &x * &p(s + 2) - (&xx * &p(s + 1)).scale(2) + &x * &p(s) + &xx * &p(s - 1))
}

/// `x^2 P_{s+3} - 2x P_{s+2} - (2x^2 - 1) P_{s+1} + 2x P_s + x^2 P_{s-1}`.
pub fn ts_double_star_poly(s: usize) -> Result<IntPolynomial> {
    if s < 1 {
        return Err(Error::BadParameters("T**_s needs s >= 1".into()));
    }
    let s = s as i64;
    let (x, xx) = (IntPolynomial::x(), x2());
    let p = path_poly_signed;
    let two_x2_minus_one = &xx.scale(2) - &IntPolynomial::one();
    Ok(&xx * &p(s + 3) - (&x * &p(s + 2)).scale(2) - &two_x2_minus_one * &p(s + 1)
        + (&x * &p(s)).scale(2)
        + &xx * &p(s - 1))
}

/// `x^2 P_k - 2x P_{k-1} - x^2 P_{k-2} + (x^2 + 1) P_{k-4} - Phi(C'_k)`.
pub fn theta_prime_poly(k: usize) -> Result<IntPolynomial> {
    if k < 7 {
        return Err(Error::BadParameters(format!("Theta'_k needs k >= 7, got {k}")));
    }
    let k = k as i64;
    let (x, xx) = (IntPolynomial::x(), x2());
    let p = path_poly_signed;
    let x2_plus_one = &xx + &IntPolynomial::one();
    Ok(&xx * &p(k) - (&x * &p(k - 1)).scale(2) - &xx * &p(k - 2) + &x2_plus_one * &p(k - 4)
        - imaginary_cycle_poly(k as usize)?)
}

pub fn eval_at(p: &IntPolynomial, x: f64) -> f64 {
    p.eval(x)
}

pub fn eval_at_rho_star(p: &IntPolynomial) -> f64 {
    p.eval_dd(rho_star_dd()).to_f64()
}

/// Element `r + s sqrt(5)` of `Z[sqrt 5]`.
#[derive(Clone, Debug, Default)]
struct Sqrt5Int {
    r: BigInt,
    s: BigInt,
}

impl Sqrt5Int {
    fn mul(&self, o: &Sqrt5Int) -> Sqrt5Int {
        Sqrt5Int { r: &self.r * &o.r + BigInt::from(5) * &self.s * &o.s, s: &self.r * &o.s + &self.s * &o.r }
    }

    fn sub(&self, o: &Sqrt5Int) -> Sqrt5Int {
        Sqrt5Int { r: &self.r - &o.r, s: &self.s - &o.s }
    }

    fn sign(&self) -> Ordering {
        let (a, b) = (self.r.sign_ord(), self.s.sign_ord());
        if b == Ordering::Equal || a == b {
            return if a == Ordering::Equal { b } else { a };
        }
        if a == Ordering::Equal {
            return b;
        }
        let lhs = &self.r * &self.r;
        let rhs = BigInt::from(5) * &self.s * &self.s;
        if lhs > rhs {
            a
        } else {
            b
        }
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Exact sign of `p(rho*)` where `rho* = sqrt(2 + sqrt 5)`.
///
/// Writes `p(rho*) = A + B rho*` with `A, B` in `Z[sqrt 5]` using
/// `rho*^2 = 2 + sqrt 5`; since `rho*` has degree 4 the value vanishes only if
/// `A = B = 0`.
pub fn sign_at_rho_star(p: &IntPolynomial) -> Ordering {
    let two_plus_root5 = Sqrt5Int { r: 2.into(), s: 1.into() };
    let mut a = Sqrt5Int::default();
    let mut b = Sqrt5Int::default();
    for c in p.coeffs().iter().rev() {
        let new_a = b.mul(&two_plus_root5);
        let new_a = Sqrt5Int { r: new_a.r + c, s: new_a.s };
        b = a;
        a = new_a;
    }
    let (sa, sb) = (a.sign(), b.sign());
    if sb == Ordering::Equal || sa == sb {
        return if sa == Ordering::Equal { sb } else { sa };
    }
    if sa == Ordering::Equal {
        return sb;
    }
    // opposite signs: compare A^2 with B^2 rho*^2
    let d = a.mul(&a).sub(&b.mul(&b).mul(&two_plus_root5));
    match d.sign() {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Right-hand sides of the closed-form identities at `rho*`, in double-double.
pub mod identities {
    use super::*;

    fn root5() -> Dd {
        Dd::new(5.0).sqrt()
    }

    /// `4 / ((sqrt5 - 1) phi(rho*)^{n-2})`, the value of `Phi(C'_{n-1,n}, rho*)`.
    pub fn near_cycle_tadpole(n: usize) -> Dd {
        let phi = phi_dd(rho_star_dd());
        Dd::new(4.0) / ((root5() - Dd::ONE) * phi.powi(n as u32 - 2))
    }

    /// `-(1 + sqrt5)^2 / (2 phi(rho*)^{s+3})`, the value of `Phi(T*_s, rho*)`.
    pub fn ts_star(s: usize) -> Dd {
        let phi = phi_dd(rho_star_dd());
        let num = (Dd::ONE + root5()).powi(2);
        -(num / (Dd::new(2.0) * phi.powi(s as u32 + 3)))
    }

    /// `-(sqrt5 + 1)^2 / phi(rho*)^{s+3}`, the value of `Phi(T**_s, rho*)`.
    pub fn ts_double_star(s: usize) -> Dd {
        let phi = phi_dd(rho_star_dd());
        -((Dd::ONE + root5()).powi(2) / phi.powi(s as u32 + 3))
    }

    /// `-(1 + sqrt5)^2 / phi(rho*)^k`, the value of `Phi(Theta'_k, rho*)`.
    pub fn theta_prime(k: usize) -> Dd {
        let phi = phi_dd(rho_star_dd());
        -((Dd::ONE + root5()).powi(2) / phi.powi(k as u32))
    }
}
