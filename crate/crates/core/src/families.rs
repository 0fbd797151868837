//! Parameterised generators for the named mixed-graph families, the host
//! list of the `rho <= rho*` characterisation, and induced-subgraph lookup
//! against those hosts.
//!
//! Vertex numbering is fixed per family and documented on each variant.
//! Cycles run `0..k` in order. A single arc on a cycle is `0 -> 1`; a pair
//! of consecutive arcs is `0 -> 1, 1 -> 2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, MixedGraph};
use crate::switching::{canonical_signature, switching_isomorphic, SwitchingWitness};

/// Weight type of the distinguished cycle of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleType {
    Positive,
    Imaginary,
    Negative,
}

impl CycleType {
    fn primes(self) -> &'static str {
        match self {
            CycleType::Positive => "",
            CycleType::Imaginary => "'",
            CycleType::Negative => "''",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilySpec {
    /// Path `0 - 1 - ... - (n-1)`.
    Path(usize),
    /// Cycle on `0..n`.
    Cycle(CycleType, usize),
    /// Star with centre 0.
    K14,
    /// Centre 0 with arms of `a`, `b`, `c` further vertices, in that order.
    Tabc(usize, usize, usize),
    /// Path `0..=a+b+c` with pendants at `a` and `a+b`, numbered
    /// `a+b+c+1` and `a+b+c+2`.
    Qabc(usize, usize, usize),
    /// `k`-cycle on `0..k` with a path on `k..n` hanging from vertex 0.
    Tadpole(CycleType, usize, usize),
    /// `n`-cycle with pendant `n` at vertex 0 and pendant `n+1` at vertex `k-1`.
    TwoPendant(CycleType, usize, usize),
    /// Negative hexagon `0..6` with a path of `k` vertices at 0 and `m` at 3.
    Upp(usize, usize),
    /// Negative hexagon, a 2-vertex path at 0 and pendants at 2 and 4.
    Upp6,
    /// Negative octagon with 2-vertex paths at 0 and 4.
    Upp8,
    /// Imaginary triangle `0 -> 1 - 2 - 0`, a path `0 - 3 - ... - (s+2)`,
    /// and two pendants `s+3`, `s+4` at `s+2`.
    TsStar(usize),
    /// As [`FamilySpec::TsStar`] plus the arc `s+3 -> s+4`.
    TsDoubleStar(usize),
    /// Three internally disjoint paths between `0` and `k-3`: the path
    /// `0..=k-3`, `0 - (k-2) -> (k-1) - (k-3)`, and `(k-3) - k -> (k+1) - 0`.
    /// The hexagon is negative, the other two cycles imaginary.
    ThetaPrime(usize),
}

/// Family names accepted by [`FamilySpec::parse`] with their parameter count.
pub const FAMILY_NAMES: &[(&str, usize)] = &[
    ("P", 1),
    ("C", 1),
    ("C'", 1),
    ("C''", 1),
    ("K1_4", 0),
    ("T_abc", 3),
    ("Q_abc", 3),
    ("C_kn", 2),
    ("C'_kn", 2),
    ("C''_kn", 2),
    ("G_nk", 2),
    ("G'_nk", 2),
    ("G''_nk", 2),
    ("U''_k_m", 2),
    ("U''_6", 0),
    ("U''_8", 0),
    ("Ts_star", 1),
    ("Ts_dstar", 1),
    ("Theta_prime_k", 1),
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl FamilySpec {
    /// Parses a family name (primes may be spelled `p`, so `Cpp_kn` is
    /// `C''_kn`) and its parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<FamilySpec> {
        let key = if name == "Theta_prime_k" { name.to_string() } else { name.replace('p', "'") };
        let arity = FAMILY_NAMES
            .iter()
            .find(|(n, _)| *n == key)
            .map(|(_, a)| *a)
            .ok_or_else(|| bad(format!("unknown family {name}")))?;
        if params.len() != arity {
            return Err(bad(format!("{key} takes {arity} parameters, got {}", params.len())));
        }
        let p = |i: usize| params[i];
        let ty = |s: &str| {
            if s.starts_with("C''") || s.starts_with("G''") {
                CycleType::Negative
            } else if s.starts_with("C'") || s.starts_with("G'") {
                CycleType::Imaginary
            } else {
                CycleType::Positive
            }
        };
        let spec = match key.as_str() {
            "P" => FamilySpec::Path(p(0)),
            "C" | "C'" | "C''" => FamilySpec::Cycle(ty(&key), p(0)),
            "K1_4" => FamilySpec::K14,
            "T_abc" => FamilySpec::Tabc(p(0), p(1), p(2)),
            "Q_abc" => FamilySpec::Qabc(p(0), p(1), p(2)),
            "C_kn" | "C'_kn" | "C''_kn" => FamilySpec::Tadpole(ty(&key), p(0), p(1)),
            "G_nk" | "G'_nk" | "G''_nk" => FamilySpec::TwoPendant(ty(&key), p(0), p(1)),
            "U''_k_m" => FamilySpec::Upp(p(0), p(1)),
            "U''_6" => FamilySpec::Upp6,
            "U''_8" => FamilySpec::Upp8,
            "Ts_star" => FamilySpec::TsStar(p(0)),
            "Ts_dstar" => FamilySpec::TsDoubleStar(p(0)),
            _ => FamilySpec::ThetaPrime(p(0)),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        match *self {
            FamilySpec::Path(n) if n < 1 => Err(bad("P_n needs n >= 1")),
            FamilySpec::Cycle(_, n) if n < 3 => Err(bad("cycles need n >= 3")),
            FamilySpec::Qabc(a, b, c) if a < 1 || b < 1 || c < 1 => Err(bad("Q_abc needs a, b, c >= 1")),
            FamilySpec::Tadpole(_, k, n) if k < 3 || k >= n => Err(bad(format!("C_kn needs 3 <= k < n, got k={k}, n={n}"))),
            FamilySpec::TwoPendant(_, n, k) if n < 3 || k < 1 || k > n => {
                Err(bad(format!("G_nk needs n >= 3 and 1 <= k <= n, got n={n}, k={k}")))
            }
            FamilySpec::Upp(k, m) if k < 1 || m < 1 => Err(bad("U''_k_m needs k, m >= 1")),
            FamilySpec::TsStar(s) | FamilySpec::TsDoubleStar(s) if s < 1 => Err(bad("T*_s needs s >= 1")),
            FamilySpec::ThetaPrime(k) if k < 4 => Err(bad("Theta'_k needs k >= 4")),
            _ => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path(n) | FamilySpec::Cycle(_, n) => n,
            FamilySpec::K14 => 5,
            FamilySpec::Tabc(a, b, c) => a + b + c + 1,
            FamilySpec::Qabc(a, b, c) => a + b + c + 3,
            FamilySpec::Tadpole(_, _, n) => n,
            FamilySpec::TwoPendant(_, n, _) => n + 2,
            FamilySpec::Upp(k, m) => 6 + k + m,
            FamilySpec::Upp6 => 10,
            FamilySpec::Upp8 => 12,
            FamilySpec::TsStar(s) | FamilySpec::TsDoubleStar(s) => s + 5,
            FamilySpec::ThetaPrime(k) => k + 2,
        }
    }

    pub fn generate(&self) -> Result<MixedGraph> {
        self.check()?;
        let mut b = Builder::new(self.order());
        match *self {
            FamilySpec::Path(n) => b.path(&(0..n).collect::<Vec<_>>()),
            FamilySpec::Cycle(ty, n) => b.cycle(0, n, ty),
            FamilySpec::K14 => (1..5).for_each(|v| b.edge(0, v)),
            FamilySpec::Tabc(a, b_, c) => {
                let mut next = 1;
                for arm in [a, b_, c] {
                    let mut prev = 0;
                    for _ in 0..arm {
                        b.edge(prev, next);
                        prev = next;
                        next += 1;
                    }
                }
            }
            FamilySpec::Qabc(a, b_, c) => {
                let last = a + b_ + c;
                b.path(&(0..=last).collect::<Vec<_>>());
                b.edge(a, last + 1);
                b.edge(a + b_, last + 2);
            }
            FamilySpec::Tadpole(ty, k, n) => {
                b.cycle(0, k, ty);
                b.hang(0, k, n - k);
            }
            FamilySpec::TwoPendant(ty, n, k) => {
                b.cycle(0, n, ty);
                b.edge(0, n);
                b.edge(k - 1, n + 1);
            }
            FamilySpec::Upp(k, m) => {
                b.cycle(0, 6, CycleType::Negative);
                b.hang(0, 6, k);
                b.hang(3, 6 + k, m);
            }
            FamilySpec::Upp6 => {
                b.cycle(0, 6, CycleType::Negative);
                b.hang(0, 6, 2);
                b.edge(2, 8);
                b.edge(4, 9);
            }
            FamilySpec::Upp8 => {
                b.cycle(0, 8, CycleType::Negative);
                b.hang(0, 8, 2);
                b.hang(4, 10, 2);
            }
            FamilySpec::TsStar(s) | FamilySpec::TsDoubleStar(s) => {
                b.cycle(0, 3, CycleType::Imaginary);
                b.hang(0, 3, s);
                b.edge(s + 2, s + 3);
                b.edge(s + 2, s + 4);
                if matches!(self, FamilySpec::TsDoubleStar(_)) {
                    b.arc(s + 3, s + 4);
                }
            }
            FamilySpec::ThetaPrime(k) => {
                let end = k - 3;
                b.path(&(0..=end).collect::<Vec<_>>());
                b.edge(0, k - 2);
                b.arc(k - 2, k - 1);
                b.edge(k - 1, end);
                b.edge(end, k);
                b.arc(k, k + 1);
                b.edge(k + 1, 0);
            }
        }
        MixedGraph::from_edges(self.order(), b.edges)
    }

    /// The family name as accepted by [`FamilySpec::parse`].
    pub fn family_name(&self) -> String {
        match self {
            FamilySpec::Path(_) => "P".into(),
            FamilySpec::Cycle(t, _) => format!("C{}", t.primes()),
            FamilySpec::K14 => "K1_4".into(),
            FamilySpec::Tabc(..) => "T_abc".into(),
            FamilySpec::Qabc(..) => "Q_abc".into(),
            FamilySpec::Tadpole(t, ..) => format!("C{}_kn", t.primes()),
            FamilySpec::TwoPendant(t, ..) => format!("G{}_nk", t.primes()),
            FamilySpec::Upp(..) => "U''_k_m".into(),
            FamilySpec::Upp6 => "U''_6".into(),
            FamilySpec::Upp8 => "U''_8".into(),
            FamilySpec::TsStar(_) => "Ts_star".into(),
            FamilySpec::TsDoubleStar(_) => "Ts_dstar".into(),
            FamilySpec::ThetaPrime(_) => "Theta_prime_k".into(),
        }
    }
}

/// Subscripted display form, e.g. `C'_{3,6}` or `Q_{1,1,2}`.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(n) => write!(f, "P_{n}"),
            FamilySpec::Cycle(t, n) => write!(f, "C{}_{n}", t.primes()),
            FamilySpec::K14 => write!(f, "K_{{1,4}}"),
            FamilySpec::Tabc(a, b, c) => write!(f, "T_{{{a},{b},{c}}}"),
            FamilySpec::Qabc(a, b, c) => write!(f, "Q_{{{a},{b},{c}}}"),
            FamilySpec::Tadpole(t, k, n) => write!(f, "C{}_{{{k},{n}}}", t.primes()),
            FamilySpec::TwoPendant(t, n, k) => write!(f, "G{}_{{{n},{k}}}", t.primes()),
            FamilySpec::Upp(k, m) => write!(f, "U''_{{{k},{m}}}"),
            FamilySpec::Upp6 => write!(f, "U''_6"),
            FamilySpec::Upp8 => write!(f, "U''_8"),
            FamilySpec::TsStar(s) => write!(f, "T*_{s}"),
            FamilySpec::TsDoubleStar(s) => write!(f, "T**_{s}"),
            FamilySpec::ThetaPrime(k) => write!(f, "Theta'_{k}"),
        }
    }
}

struct Builder {
    edges: Vec<Edge>,
}

impl Builder {
    fn new(order: usize) -> Builder {
        Builder { edges: Vec::with_capacity(order + 2) }
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push(Edge::undirected(u, v));
    }

    fn arc(&mut self, u: usize, v: usize) {
        self.edges.push(Edge::arc(u, v));
    }

    fn path(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    /// Cycle on `start..start+len`.
    fn cycle(&mut self, start: usize, len: usize, ty: CycleType) {
        let arcs = match ty {
            CycleType::Positive => 0,
            CycleType::Imaginary => 1,
            CycleType::Negative => 2,
        };
        for i in 0..len {
            let (u, v) = (start + i, start + (i + 1) % len);
            if i < arcs {
                self.arc(u, v);
            } else {
                self.edge(u, v);
            }
        }
    }

    /// Path of `count` new vertices `first..first+count` hanging from `at`.
    fn hang(&mut self, at: usize, first: usize, count: usize) {
        let mut prev = at;
        for v in first..first + count {
            self.edge(prev, v);
            prev = v;
        }
    }
}

/// Smallest admissible middle parameter of the infinite `Q_{a,b,c}` family.
pub fn b_star(a: usize, c: usize) -> Result<usize> {
    if a == 0 || c < a {
        return Err(bad(format!("b*(a, c) needs c >= a >= 1, got a={a}, c={c}")));
    }
    Ok(match a {
        1 => c,
        2 => c + 3,
        _ => a + c + 2,
    })
}

/// The five sporadic `Q_{a,b,c}` hosts.
pub const EXCEPTIONAL_Q: [(usize, usize, usize); 5] = [(1, 1, 2), (2, 4, 2), (2, 5, 3), (3, 7, 3), (3, 8, 4)];

/// Extra host orders beyond the probe order.
pub const HOST_ORDER_SLACK: usize = 20;

#[derive(Clone, Debug)]
pub struct Host {
    pub name: String,
    pub graph: MixedGraph,
}

/// Every host graph of order at most `order + HOST_ORDER_SLACK`, in a fixed
/// order. The sporadic graph at the end is the catalogued candidate for
/// the two-cycle host.
pub fn theorem35_hosts(order: usize) -> Vec<Host> {
    let cap = order + HOST_ORDER_SLACK;
    let mut specs = vec![FamilySpec::K14];
    specs.extend(EXCEPTIONAL_Q.iter().map(|&(a, b, c)| FamilySpec::Qabc(a, b, c)));
    for a in 1..cap {
        for c in a..cap {
            let Ok(lo) = b_star(a, c) else { continue };
            for b in lo..cap {
                if a + b + c + 3 > cap {
                    break;
                }
                specs.push(FamilySpec::Qabc(a, b, c));
            }
        }
    }
    for n in 3..=cap {
        specs.push(FamilySpec::Cycle(CycleType::Positive, n));
    }
    for n in (3..=cap).step_by(2) {
        specs.push(FamilySpec::Cycle(CycleType::Negative, n));
    }
    for n in (10..=cap).step_by(2) {
        specs.push(FamilySpec::TwoPendant(CycleType::Negative, n - 2, n / 2));
    }
    for n in 8..=cap {
        for k in 1..=n - 7 {
            specs.push(FamilySpec::Upp(k, n - 6 - k));
        }
    }
    let sporadic = [
        FamilySpec::TwoPendant(CycleType::Negative, 8, 4),
        FamilySpec::TwoPendant(CycleType::Negative, 10, 5),
        FamilySpec::Upp6,
        FamilySpec::Upp8,
    ];
    specs.extend(sporadic.into_iter().filter(|s| s.order() <= cap));
    for n in 6..=cap {
        specs.push(FamilySpec::Tadpole(CycleType::Imaginary, n - 1, n));
    }
    for n in 4..=cap {
        specs.push(FamilySpec::Tadpole(CycleType::Imaginary, 3, n));
    }
    specs.push(FamilySpec::Tadpole(CycleType::Imaginary, 4, 6));
    let mut hosts: Vec<Host> = specs
        .into_iter()
        .filter(|s| s.order() <= cap)
        .map(|s| Host { name: s.to_string(), graph: s.generate().expect("host parameters are in range") })
        .collect();
    if let Some(m) = crate::catalog::two_cycle_host() {
        if m.order() <= cap {
            hosts.push(Host { name: "M*".into(), graph: m.clone() });
        }
    }
    hosts
}

/// Where an induced copy was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HostWitness {
    pub host: String,
    /// Host vertices inducing the copy, ascending.
    pub vertices: Vec<usize>,
}

/// Switching classes of all connected induced subgraphs of a given order
/// across every host, keyed by canonical signature.
#[derive(Debug)]
pub struct HostIndex {
    order: usize,
    hosts: Vec<Host>,
    entries: BTreeMap<String, HostWitness>,
}

impl HostIndex {
    pub fn build(order: usize) -> HostIndex {
        let hosts = theorem35_hosts(order);
        let per_host: Vec<Vec<(String, Vec<usize>)>> = hosts
            .par_iter()
            .map(|h| {
                let mut seen = BTreeMap::new();
                for_each_connected_subset(&h.graph.adjacency_masks(), order, |vs| {
                    let sub = h.graph.induced_subgraph(vs);
                    let sig = canonical_signature(&sub).expect("connected subsets");
                    seen.entry(sig).or_insert_with(|| vs.to_vec());
                });
                seen.into_iter().collect()
            })
            .collect();
        let mut entries = BTreeMap::new();
        for (h, found) in hosts.iter().zip(per_host) {
            for (sig, vertices) in found {
                entries.entry(sig).or_insert_with(|| HostWitness { host: h.name.clone(), vertices });
            }
        }
        HostIndex { order, hosts, entries }
    }

    /// Shared index for `order`, built on first use.
    pub fn cached(order: usize) -> Arc<HostIndex> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HostIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ix) = cache.lock().expect("host cache").get(&order) {
            return ix.clone();
        }
        let ix = Arc::new(HostIndex::build(order));
        cache.lock().expect("host cache").entry(order).or_insert(ix).clone()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn hosts(&self) -> &[Host] {
        &self.hosts
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, signature: &str) -> Option<&HostWitness> {
        self.entries.get(signature)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &HostWitness)> {
        self.entries.iter()
    }

    pub fn host_graph(&self, name: &str) -> Option<&MixedGraph> {
        self.hosts.iter().find(|h| h.name == name).map(|h| &h.graph)
    }
}

/// Calls `emit` once for every vertex set of size `k` inducing a connected
/// subgraph, each set ascending. Enumeration grows sets from their least
/// vertex through an exclusive neighbourhood, so no set is produced twice.
pub fn for_each_connected_subset(masks: &[u64], k: usize, mut emit: impl FnMut(&[usize])) {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        masks: &[u64],
        k: usize,
        root: usize,
        sub: &mut Vec<usize>,
        sub_mask: u64,
        nbhd: u64,
        mut ext: u64,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if sub.len() == k {
            let mut sorted = sub.clone();
            sorted.sort_unstable();
            emit(&sorted);
            return;
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let above_root = !((2u64 << root) - 1);
            let fresh = masks[w] & !sub_mask & !nbhd & above_root & !(1 << w);
            sub.push(w);
            extend(masks, k, root, sub, sub_mask | 1 << w, nbhd | masks[w], ext | fresh, emit);
            sub.pop();
        }
    }
    if k == 0 {
        return;
    }
    for root in 0..masks.len() {
        let above_root = !((2u64 << root) - 1);
        let mut sub = vec![root];
        extend(masks, k, root, &mut sub, 1 << root, masks[root] | 1 << root, masks[root] & above_root, &mut emit);
    }
}

/// A host and vertex set inducing a graph switching isomorphic to `g`, if
/// any. The index lookup is confirmed by an explicit isomorphism search.
pub fn is_in_theorem35(g: &MixedGraph) -> Result<Option<(HostWitness, SwitchingWitness)>> {
    let sig = canonical_signature(g)?;
    let index = HostIndex::cached(g.order());
    let Some(w) = index.get(&sig) else { return Ok(None) };
    let host = index.host_graph(&w.host).expect("witness names a host");
    let copy = host.induced_subgraph(&w.vertices);
    Ok(switching_isomorphic(g, &copy).map(|iso| (w.clone(), iso)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{charpoly_exact, theta_prime_poly, ts_double_star_poly, ts_star_poly};
    use crate::hermitian::spectral_radius;
    use crate::limits::rho_star;

    fn gen(name: &str, params: &[usize]) -> MixedGraph {
        FamilySpec::parse(name, params).unwrap().generate().unwrap()
    }

    #[test]
    fn orders_follow_the_definitions() {
        assert_eq!(gen("T_abc", &[1, 2, 3]).order(), 7);
        assert_eq!(gen("Q_abc", &[1, 1, 2]).order(), 7);
        assert_eq!(gen("C'_kn", &[3, 6]).order(), 6);
        assert_eq!(gen("U''_k_m", &[1, 1]).order(), 8);
        assert_eq!(gen("G''_nk", &[8, 4]).order(), 10);
        assert_eq!(gen("U''_6", &[]).order(), 10);
        assert_eq!(gen("U''_8", &[]).order(), 12);
        assert_eq!(gen("Ts_star", &[2]).order(), 7);
        assert_eq!(gen("Theta_prime_k", &[7]).order(), 9);
    }

    #[test]
    fn aliases_and_errors() {
        assert_eq!(FamilySpec::parse("Cp_kn", &[3, 6]).unwrap(), FamilySpec::parse("C'_kn", &[3, 6]).unwrap());
        assert_eq!(FamilySpec::parse("Cpp", &[5]).unwrap(), FamilySpec::Cycle(CycleType::Negative, 5));
        assert!(FamilySpec::parse("C'_kn", &[6, 6]).is_err());
        assert!(FamilySpec::parse("Q_abc", &[1, 1]).is_err());
        assert!(FamilySpec::parse("nope", &[]).is_err());
        assert!(FamilySpec::parse("U''_k_m", &[0, 2]).is_err());
    }

    #[test]
    fn cycle_types_have_the_stated_weights() {
        use crate::graph::walk_weight;
        use crate::unit::Weight;
        for n in 3..9 {
            let cyc: Vec<usize> = (0..n).collect();
            assert_eq!(walk_weight(&gen("C", &[n]), &cyc), Some(Weight::ONE));
            assert!(walk_weight(&gen("C'", &[n]), &cyc).unwrap().is_imaginary());
            assert_eq!(walk_weight(&gen("C''", &[n]), &cyc), Some(Weight::NEG_ONE));
        }
    }

    #[test]
    fn b_star_cases() {
        assert_eq!(b_star(3, 3).unwrap(), 8);
        assert_eq!(b_star(2, 5).unwrap(), 8);
        assert_eq!(b_star(1, 9).unwrap(), 9);
        assert!(b_star(3, 2).is_err());
        assert!(b_star(0, 2).is_err());
    }

    #[test]
    fn obstruction_polynomials_match_their_graphs() {
        for s in 1..8 {
            assert_eq!(charpoly_exact(&gen("Ts_star", &[s])).unwrap(), ts_star_poly(s).unwrap(), "T*_{s}");
            assert_eq!(charpoly_exact(&gen("Ts_dstar", &[s])).unwrap(), ts_double_star_poly(s).unwrap(), "T**_{s}");
        }
        for k in 7..14 {
            assert_eq!(charpoly_exact(&gen("Theta_prime_k", &[k])).unwrap(), theta_prime_poly(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn tadpole_radii() {
        let r = |n: &str, p: &[usize]| spectral_radius(&gen(n, p)).unwrap();
        assert!((r("C'_kn", &[3, 6]) - 2.0285).abs() < 5e-5);
        assert!((r("C'_kn", &[4, 7]) - 2.0743).abs() < 5e-5);
        assert!(r("C'_kn", &[4, 6]) < rho_star());
        assert!(r("C_kn", &[3, 4]) > rho_star());
        assert!(r("C''_kn", &[3, 4]) > rho_star());
    }

    #[test]
    fn host_lists() {
        let names = |o| theorem35_hosts(o).into_iter().map(|h| h.name).collect::<Vec<_>>();
        let four = names(4);
        for n in ["C_3", "C_4", "C''_3", "C'_{3,4}", "K_{1,4}"] {
            assert!(four.contains(&n.to_string()), "{n}");
        }
        assert!(names(6).contains(&"C'_{4,6}".to_string()));
        assert!(names(10).contains(&"G''_{8,5}".to_string()));
        assert!(names(10).contains(&"G''_{10,5}".to_string()));
        for h in theorem35_hosts(4) {
            assert!(h.graph.is_connected(), "{}", h.name);
            assert!(h.graph.is_negative_c4_free(), "{}", h.name);
            assert!(h.graph.order() <= 24);
        }
    }

    #[test]
    fn hosts_stay_below_the_threshold() {
        for h in theorem35_hosts(2) {
            let r = spectral_radius(&h.graph).unwrap();
            assert!(r <= rho_star() + 1e-9, "{} has radius {r}", h.name);
        }
    }

    #[test]
    fn connected_subsets_of_a_path_and_star() {
        let masks = gen("P", &[6]).adjacency_masks();
        let mut got = Vec::new();
        for_each_connected_subset(&masks, 3, |vs| got.push(vs.to_vec()));
        got.sort();
        assert_eq!(got, (0..4).map(|i| vec![i, i + 1, i + 2]).collect::<Vec<_>>());
        let star = gen("K1_4", &[]).adjacency_masks();
        let mut count = 0;
        for_each_connected_subset(&star, 3, |_| count += 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_theorem35(&gen("C'_kn", &[3, 5])).unwrap().is_some());
        assert!(is_in_theorem35(&gen("C_kn", &[3, 4])).unwrap().is_none());
        assert!(is_in_theorem35(&gen("P", &[7])).unwrap().is_some());
    }
}
