//! The term algebra of ordinal diagrams.
//!
//! Every [`Diagram`] is hash-consed: structurally equal terms share one
//! allocation and one numeric id, so equality and hashing are O(1).
//! Terms are immutable and `Send + Sync`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::error::DiagramError;
use crate::relations::compare;

/// An ordinal diagram.
#[derive(Clone)]
pub struct Diagram(Arc<Node>);

struct Node {
    id: u32,
    kind: Kind,
    size: u32,
    text: OnceLock<Box<str>>,
}

/// The constructors of the term algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Zero,
    Omega,
    Pi,
    /// At least two additive principal components in non-increasing order.
    Sum(Vec<Diagram>),
    /// `phi(first, second)`.
    Veblen(Diagram, Diagram),
    /// `base^{+k}`.
    Suc(Diagram, u32),
    /// `d_sub^quads body`.
    D(Diagram, Vec<Quad>, Diagram),
}

/// One entry `(j, kappa, tau, nu)` of the quadruple sequence of a collapse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quad {
    pub j: u32,
    pub kappa: Diagram,
    pub tau: Diagram,
    pub nu: Diagram,
}

impl Quad {
    pub fn new(j: u32, kappa: Diagram, tau: Diagram, nu: Diagram) -> Self {
        Quad { j, kappa, tau, nu }
    }

    pub fn components(&self) -> [&Diagram; 3] {
        [&self.kappa, &self.tau, &self.nu]
    }
}

/// Classification into `P`, `SC`, the three parts of `R`, zero and sums.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Class {
    ZeroClass,
    P,
    SC,
    RPi,
    RSR,
    RDQ,
    SumClass,
}

struct Interner {
    map: DashMap<Kind, Diagram>,
    next: AtomicU32,
}

fn interner() -> &'static Interner {
    static INTERNER: OnceLock<Interner> = OnceLock::new();
    INTERNER.get_or_init(|| Interner {
        map: DashMap::new(),
        next: AtomicU32::new(0),
    })
}

fn kind_size(kind: &Kind) -> u32 {
    match kind {
        Kind::Zero | Kind::Omega | Kind::Pi => 1,
        Kind::Sum(cs) => cs.iter().map(|c| c.size()).sum::<u32>() + cs.len() as u32 - 1,
        Kind::Veblen(a, b) => 1 + a.size() + b.size(),
        Kind::Suc(b, k) => b.size() + k,
        Kind::D(s, q, a) => {
            1 + s.size()
                + a.size()
                + q.iter()
                    .map(|x| 1 + x.kappa.size() + x.tau.size() + x.nu.size())
                    .sum::<u32>()
        }
    }
}

impl Diagram {
    /// Interns a node exactly as given, with no normalization.
    pub fn raw(kind: Kind) -> Diagram {
        let int = interner();
        if let Some(d) = int.map.get(&kind) {
            return d.clone();
        }
        int.map
            .entry(kind.clone())
            .or_insert_with(|| {
                let size = kind_size(&kind);
                Diagram(Arc::new(Node {
                    id: int.next.fetch_add(1, AtomicOrdering::Relaxed),
                    kind,
                    size,
                    text: OnceLock::new(),
                }))
            })
            .clone()
    }

    pub fn zero() -> Diagram {
        static Z: OnceLock<Diagram> = OnceLock::new();
        Z.get_or_init(|| Diagram::raw(Kind::Zero)).clone()
    }

    pub fn omega() -> Diagram {
        static O: OnceLock<Diagram> = OnceLock::new();
        O.get_or_init(|| Diagram::raw(Kind::Omega)).clone()
    }

    pub fn pi() -> Diagram {
        static P: OnceLock<Diagram> = OnceLock::new();
        P.get_or_init(|| Diagram::raw(Kind::Pi)).clone()
    }

    /// `phi(0,0)`, the ordinal 1.
    pub fn one() -> Diagram {
        Diagram::phi(Diagram::zero(), Diagram::zero())
    }

    /// The natural number `n` as a sum of `n` copies of `phi(0,0)`.
    pub fn nat(n: u32) -> Diagram {
        match n {
            0 => Diagram::zero(),
            1 => Diagram::one(),
            _ => Diagram::raw(Kind::Sum(vec![Diagram::one(); n as usize])),
        }
    }

    /// Recognizes the terms produced by [`Diagram::nat`].
    pub fn as_nat(&self) -> Option<u32> {
        let one = Diagram::one();
        match self.kind() {
            Kind::Zero => Some(0),
            _ if *self == one => Some(1),
            Kind::Sum(cs) if cs.iter().all(|c| *c == one) => Some(cs.len() as u32),
            _ => None,
        }
    }

    /// Normalized `phi(a, b)`.
    pub fn phi(a: Diagram, b: Diagram) -> Diagram {
        match Diagram::phi_absorbed(&a, &b) {
            Some(d) => d,
            None => Diagram::raw(Kind::Veblen(a, b)),
        }
    }

    /// Returns the value `phi(a,b)` collapses to when the pair is not a
    /// normal Veblen term.
    fn phi_absorbed(a: &Diagram, b: &Diagram) -> Option<Diagram> {
        if let Kind::Veblen(c, _) = b.kind() {
            if compare(c, a) == Ordering::Greater {
                return Some(b.clone());
            }
        }
        if b.is_strongly_critical() && compare(a, b) == Ordering::Less {
            return Some(b.clone());
        }
        if a.is_strongly_critical() && b.is_zero() {
            return Some(a.clone());
        }
        None
    }

    /// Normalized ordinal sum of the given terms, left to right.
    pub fn sum<I: IntoIterator<Item = Diagram>>(parts: I) -> Diagram {
        let mut stack: Vec<Diagram> = Vec::new();
        for part in parts {
            for p in part.principal_components() {
                while let Some(top) = stack.last() {
                    if compare(top, &p) == Ordering::Less {
                        stack.pop();
                    } else {
                        break;
                    }
                }
                stack.push(p);
            }
        }
        match stack.len() {
            0 => Diagram::zero(),
            1 => stack.pop().unwrap(),
            _ => Diagram::raw(Kind::Sum(stack)),
        }
    }

    /// Ordinal addition `self + other`.
    pub fn add(&self, other: &Diagram) -> Diagram {
        Diagram::sum([self.clone(), other.clone()])
    }

    /// `base^{+k}`, flattening nested successors.
    pub fn suc(base: Diagram, k: u32) -> Diagram {
        assert!(k > 0, "successor exponent must be positive");
        match base.kind() {
            Kind::Suc(b, j) => Diagram::raw(Kind::Suc(b.clone(), j + k)),
            _ => Diagram::raw(Kind::Suc(base, k)),
        }
    }

    /// Builds `d_sub^quads body` without any validity check.
    pub fn d_unchecked(sub: Diagram, quads: Vec<Quad>, body: Diagram) -> Diagram {
        Diagram::raw(Kind::D(sub, quads, body))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn id(&self) -> u32 {
        self.0.id
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind(), Kind::Zero)
    }

    pub fn is_omega(&self) -> bool {
        matches!(self.kind(), Kind::Omega)
    }

    pub fn is_pi(&self) -> bool {
        matches!(self.kind(), Kind::Pi)
    }

    pub fn is_d(&self) -> bool {
        matches!(self.kind(), Kind::D(..))
    }

    /// Member of `D^Q`: a collapse with nonempty quadruple data.
    pub fn is_dq(&self) -> bool {
        matches!(self.kind(), Kind::D(_, q, _) if !q.is_empty())
    }

    pub fn is_suc(&self) -> bool {
        matches!(self.kind(), Kind::Suc(..))
    }

    /// Member of `R`, counting `Omega`.
    pub fn is_regular(&self) -> bool {
        self.is_pi() || self.is_omega() || self.is_suc() || self.is_dq()
    }

    /// Fixed points of every `phi(a, .)` with `a` below them.
    pub fn is_strongly_critical(&self) -> bool {
        matches!(self.kind(), Kind::Omega | Kind::Pi | Kind::Suc(..) | Kind::D(..))
    }

    pub fn is_additive_principal(&self) -> bool {
        matches!(self.kind(), Kind::Veblen(..)) || self.is_strongly_critical()
    }

    pub fn classify(&self) -> Class {
        match self.kind() {
            Kind::Zero => Class::ZeroClass,
            Kind::Omega => Class::RSR,
            Kind::Pi => Class::RPi,
            Kind::Sum(_) => Class::SumClass,
            Kind::Veblen(..) => Class::P,
            Kind::Suc(..) => Class::RSR,
            Kind::D(_, q, _) if q.is_empty() => Class::SC,
            Kind::D(..) => Class::RDQ,
        }
    }

    /// The additive principal components, empty for zero.
    pub fn principal_components(&self) -> Vec<Diagram> {
        match self.kind() {
            Kind::Zero => Vec::new(),
            Kind::Sum(cs) => cs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Leading additive component, `None` for zero.
    pub fn lead(&self) -> Option<Diagram> {
        match self.kind() {
            Kind::Zero => None,
            Kind::Sum(cs) => Some(cs[0].clone()),
            _ => Some(self.clone()),
        }
    }

    /// Subscript of a collapse.
    pub fn sub(&self) -> Option<&Diagram> {
        match self.kind() {
            Kind::D(s, _, _) => Some(s),
            _ => None,
        }
    }

    pub fn quads(&self) -> &[Quad] {
        match self.kind() {
            Kind::D(_, q, _) => q,
            _ => &[],
        }
    }

    /// `b(alpha)`.
    pub fn body(&self) -> Result<&Diagram, DiagramError> {
        match self.kind() {
            Kind::D(_, _, a) => Ok(a),
            _ => Err(DiagramError::NotADTerm(self.to_string())),
        }
    }

    /// `Q(alpha)`: the diagram components of the quadruples.
    pub fn q_set(&self) -> Result<Vec<Diagram>, DiagramError> {
        match self.kind() {
            Kind::D(_, q, _) => {
                let mut out: Vec<Diagram> = q
                    .iter()
                    .flat_map(|x| x.components().into_iter().cloned())
                    .collect();
                dedup(&mut out);
                Ok(out)
            }
            _ => Err(DiagramError::NotADTerm(self.to_string())),
        }
    }

    /// The index components `j_m` of the quadruples.
    pub fn q_indices(&self) -> Result<Vec<u32>, DiagramError> {
        match self.kind() {
            Kind::D(_, q, _) => Ok(q.iter().map(|x| x.j).collect()),
            _ => Err(DiagramError::NotADTerm(self.to_string())),
        }
    }

    /// `c(alpha) = {b(alpha)} + Q(alpha)`.
    pub fn c_set(&self) -> Result<Vec<Diagram>, DiagramError> {
        let mut out = self.q_set()?;
        out.push(self.body()?.clone());
        dedup(&mut out);
        Ok(out)
    }

    /// Immediate structural children. A successor `b^{+k}` has `b^{+(k-1)}` as its child.
    pub fn children(&self) -> Vec<Diagram> {
        match self.kind() {
            Kind::Zero | Kind::Omega | Kind::Pi => Vec::new(),
            Kind::Sum(cs) => cs.clone(),
            Kind::Veblen(a, b) => vec![a.clone(), b.clone()],
            Kind::Suc(b, 1) => vec![b.clone()],
            Kind::Suc(b, k) => vec![Diagram::raw(Kind::Suc(b.clone(), k - 1))],
            Kind::D(s, q, a) => {
                let mut out = vec![s.clone(), a.clone()];
                for x in q {
                    out.extend(x.components().into_iter().cloned());
                }
                out
            }
        }
    }

    /// `sd(alpha)`: proper subdiagrams.
    pub fn sd(&self) -> Vec<Diagram> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = self.children();
        while let Some(x) = stack.pop() {
            if seen.insert(x.id()) {
                stack.extend(x.children());
                out.push(x);
            }
        }
        out
    }

    /// `sd^+(alpha)`.
    pub fn sd_plus(&self) -> Vec<Diagram> {
        let mut out = self.sd();
        out.push(self.clone());
        out
    }

    /// Whether this node is stored in the normal form the constructors produce.
    /// Children are not inspected.
    pub fn is_locally_normal(&self) -> bool {
        match self.kind() {
            Kind::Zero | Kind::Omega | Kind::Pi | Kind::D(..) => true,
            Kind::Sum(cs) => {
                cs.len() >= 2
                    && cs.iter().all(|c| c.is_additive_principal())
                    && cs
                        .windows(2)
                        .all(|w| compare(&w[0], &w[1]) != Ordering::Less)
            }
            Kind::Veblen(a, b) => Diagram::phi_absorbed(a, b).is_none(),
            Kind::Suc(b, k) => *k >= 1 && !b.is_suc(),
        }
    }

    /// Whether the whole term is in normal form.
    pub fn is_normal(&self) -> bool {
        self.is_locally_normal() && self.children().iter().all(|c| c.is_normal())
    }

    /// Rebuilds the term bottom-up through the normalizing constructors.
    pub fn normalize(&self) -> Diagram {
        match self.kind() {
            Kind::Zero | Kind::Omega | Kind::Pi => self.clone(),
            Kind::Sum(cs) => Diagram::sum(cs.iter().map(|c| c.normalize())),
            Kind::Veblen(a, b) => Diagram::phi(a.normalize(), b.normalize()),
            Kind::Suc(b, k) => Diagram::suc(b.normalize(), *k),
            Kind::D(s, q, a) => Diagram::d_unchecked(
                s.normalize(),
                q.iter()
                    .map(|x| Quad::new(x.j, x.kappa.normalize(), x.tau.normalize(), x.nu.normalize()))
                    .collect(),
                a.normalize(),
            ),
        }
    }

    /// Canonical text in the CLI grammar.
    pub fn text(&self) -> &str {
        self.0.text.get_or_init(|| render(self).into_boxed_str())
    }

    /// Key of the canonical enumeration order.
    pub fn canonical_key(&self) -> (u32, &str) {
        (self.size(), self.text())
    }
}

fn render(d: &Diagram) -> String {
    match d.kind() {
        Kind::Zero => "0".into(),
        Kind::Omega => "Om".into(),
        Kind::Pi => "pi".into(),
        Kind::Sum(cs) => cs.iter().map(|c| c.text()).collect::<Vec<_>>().join("+"),
        Kind::Veblen(a, b) => format!("phi({},{})", a.text(), b.text()),
        Kind::Suc(b, k) => format!("suc({},{})", b.text(), k),
        Kind::D(s, q, a) => {
            let qs = q
                .iter()
                .map(|x| format!("[{},{},{},{}]", x.j, x.kappa.text(), x.tau.text(), x.nu.text()))
                .collect::<Vec<_>>()
                .join(",");
            format!("d({};{};{})", s.text(), qs, a.text())
        }
    }
}

/// Sorts by id and removes duplicates.
pub(crate) fn dedup(v: &mut Vec<Diagram>) {
    v.sort_by_key(|d| d.id());
    v.dedup();
}

/// Sorts into canonical order.
pub fn sort_canonical(v: &mut [Diagram]) {
    v.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Diagram {}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// A diagram or the virtual top `pi^+ = infinity`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bound {
    Finite(Diagram),
    Infinity,
}

impl Bound {
    /// `kappa^+`: `suc(kappa,1)` for collapses, the next successor for
    /// successors, and infinity for `pi`.
    pub fn successor_of(kappa: &Diagram) -> Bound {
        match kappa.kind() {
            Kind::Pi => Bound::Infinity,
            _ => Bound::Finite(Diagram::suc(kappa.clone(), 1)),
        }
    }

    pub fn gt(&self, x: &Diagram) -> bool {
        match self {
            Bound::Infinity => true,
            Bound::Finite(b) => compare(x, b) == Ordering::Less,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(d) => d.fmt(f),
            Bound::Infinity => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_dq(n: u32) -> Diagram {
        Diagram::d_unchecked(
            Diagram::pi(),
            vec![Quad::new(n - 1, Diagram::pi(), Diagram::pi(), Diagram::zero())],
            Diagram::zero(),
        )
    }

    #[test]
    fn classify_base_symbols() {
        assert_eq!(Diagram::zero().classify(), Class::ZeroClass);
        let d = Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero());
        assert_eq!(d.classify(), Class::SC);
        assert_eq!(base_dq(4).classify(), Class::RDQ);
        assert_eq!(Diagram::suc(base_dq(4), 1).classify(), Class::RSR);
        assert_eq!(Diagram::pi().classify(), Class::RPi);
    }

    #[test]
    fn body_and_q_sets() {
        let d = Diagram::d_unchecked(
            Diagram::pi(),
            vec![Quad::new(3, Diagram::pi(), Diagram::pi(), Diagram::zero())],
            Diagram::omega(),
        );
        assert_eq!(d.body().unwrap(), &Diagram::omega());
        let e = Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero());
        assert!(e.q_set().unwrap().is_empty());
        assert_eq!(e.c_set().unwrap(), vec![Diagram::zero()]);
        assert!(Diagram::zero().body().is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(Diagram::zero().size(), 1);
        assert_eq!(Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero()).size(), 3);
        assert_eq!(Diagram::one().size(), 3);
        assert_eq!(base_dq(4).size(), 7);
        assert_eq!(Diagram::suc(base_dq(4), 2).size(), 9);
        assert_eq!(Diagram::nat(2).size(), 7);
    }

    #[test]
    fn subdiagrams() {
        assert!(Diagram::zero().sd().is_empty());
        let v = Diagram::raw(Kind::Veblen(Diagram::zero(), Diagram::omega()));
        let mut sd = v.sd();
        dedup(&mut sd);
        let mut want = vec![Diagram::zero(), Diagram::omega()];
        dedup(&mut want);
        assert_eq!(sd, want);
        assert!(base_dq(4).sd().contains(&Diagram::pi()));
        let s2 = Diagram::suc(base_dq(4), 2);
        assert!(s2.sd().contains(&Diagram::suc(base_dq(4), 1)));
    }

    #[test]
    fn naturals_and_sums() {
        let two = Diagram::one().add(&Diagram::one());
        assert_eq!(two, Diagram::nat(2));
        assert_eq!(two.as_nat(), Some(2));
        let omega_small = Diagram::phi(Diagram::zero(), Diagram::one());
        assert_eq!(Diagram::one().add(&omega_small), omega_small);
        assert_eq!(Diagram::sum([Diagram::zero(), Diagram::zero()]), Diagram::zero());
    }

    #[test]
    fn veblen_normal_form() {
        let z = Diagram::zero();
        let one = Diagram::one();
        let w = Diagram::phi(z.clone(), one.clone());
        assert!(matches!(w.kind(), Kind::Veblen(..)));
        let eps0 = Diagram::phi(one.clone(), z.clone());
        assert_eq!(Diagram::phi(z.clone(), eps0.clone()), eps0);
        assert_eq!(Diagram::phi(z.clone(), Diagram::omega()), Diagram::omega());
        assert_eq!(Diagram::phi(Diagram::omega(), z.clone()), Diagram::omega());
        assert!(Diagram::phi(Diagram::omega(), Diagram::omega()).is_normal());
    }

    #[test]
    fn suc_flattening() {
        let s = Diagram::suc(Diagram::suc(base_dq(4), 1), 2);
        assert_eq!(s, Diagram::suc(base_dq(4), 3));
    }
}
