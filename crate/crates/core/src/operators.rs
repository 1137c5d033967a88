//! Closure sets, the inductive operators and their stages, evaluated on a finite carrier.
//!
//! Every class-sized definition is read relative to a [`Universe`]: the
//! carrier's elements, indexed and ranked by `<`. Subsets of the carrier are
//! bitsets over element indices.

use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::accessors::{rg, st};
use crate::decomposition::{induced_seq, lhd_seq_plus, prec_s};
use crate::diagram::{Diagram, Kind};
use crate::enumeration::Carrier;
use crate::error::{DiagramError, Result};
use crate::index_seq::{self, IndexSeq};
use crate::relations::{chain_i_incl, compare, lhd_m32, lhd_s};
use crate::subterm::k_union_upto;
use crate::validity::{in_m3, SystemKind, SystemParams};

/// A subset of a universe.
pub type Set = FixedBitSet;

/// A carrier prepared for operator evaluation.
pub struct Universe {
    params: SystemParams,
    elems: Vec<Diagram>,
    index: HashMap<u32, usize>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    kids: Vec<Vec<usize>>,
    sub: Vec<Option<usize>>,
    regular: Set,
    r_prime: Set,
    below_pi: Set,
}

impl Universe {
    /// Indexes a carrier. Fails if the carrier is not closed under subdiagrams.
    pub fn new(carrier: &Carrier) -> Result<Self> {
        Self::from_elements(carrier.params, carrier.elements.clone())
    }

    /// Indexes elements given in canonical order.
    pub fn from_elements(params: SystemParams, elems: Vec<Diagram>) -> Result<Self> {
        let n = elems.len();
        let index: HashMap<u32, usize> = elems.iter().enumerate().map(|(i, d)| (d.id(), i)).collect();
        let look = |d: &Diagram| {
            index.get(&d.id()).copied().ok_or_else(|| DiagramError::NotInCarrier(d.to_string()))
        };
        let mut kids = Vec::with_capacity(n);
        let mut sub = Vec::with_capacity(n);
        for (i, d) in elems.iter().enumerate() {
            let ks = d.children().iter().map(look).collect::<Result<Vec<_>>>()?;
            if ks.iter().any(|&k| k >= i) {
                return Err(DiagramError::NotInCarrier(format!("{d}: children must precede it")));
            }
            kids.push(ks);
            sub.push(match d.kind() {
                Kind::D(s, _, _) => Some(look(s)?),
                _ => None,
            });
        }
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by(|&a, &b| compare(&elems[a], &elems[b]));
        let mut rank = vec![0; n];
        for (r, &i) in by_rank.iter().enumerate() {
            rank[i] = r;
        }
        let mut regular = Set::with_capacity(n);
        let mut r_prime = Set::with_capacity(n);
        let mut below_pi = Set::with_capacity(n);
        let pi = Diagram::pi();
        for (i, d) in elems.iter().enumerate() {
            regular.set(i, d.is_regular());
            below_pi.set(i, compare(d, &pi) == Ordering::Less);
            if let Some(s) = sub[i] {
                r_prime.insert(s);
            }
        }
        Ok(Universe { params, elems, index, rank, by_rank, kids, sub, regular, r_prime, below_pi })
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &Diagram {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Diagram] {
        &self.elems
    }

    pub fn idx(&self, d: &Diagram) -> Result<usize> {
        self.index.get(&d.id()).copied().ok_or_else(|| DiagramError::NotInCarrier(d.to_string()))
    }

    pub fn try_idx(&self, d: &Diagram) -> Option<usize> {
        self.index.get(&d.id()).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Indices in increasing `<` order.
    pub fn ascending(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rank[a] <= self.rank[b]
    }

    pub fn empty(&self) -> Set {
        Set::with_capacity(self.len())
    }

    pub fn full(&self) -> Set {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    pub fn set_of<'a>(&self, ds: impl IntoIterator<Item = &'a Diagram>) -> Result<Set> {
        let mut s = self.empty();
        for d in ds {
            s.insert(self.idx(d)?);
        }
        Ok(s)
    }

    pub fn members(&self, x: &Set) -> Vec<Diagram> {
        x.ones().map(|i| self.elems[i].clone()).collect()
    }

    /// `X|alpha`.
    pub fn restrict(&self, x: &Set, alpha: usize) -> Set {
        let mut out = self.empty();
        for i in x.ones().filter(|&i| self.lt(i, alpha)) {
            out.insert(i);
        }
        out
    }

    /// `X|(alpha + 1)`: members at most `alpha`.
    pub fn restrict_le(&self, x: &Set, alpha: usize) -> Set {
        let mut out = self.empty();
        for i in x.ones().filter(|&i| self.le(i, alpha)) {
            out.insert(i);
        }
        out
    }

    /// `gamma <= X|alpha`: some member of `X` below `alpha` is at least `gamma`.
    pub fn le_set_below(&self, gamma: usize, x: &Set, alpha: usize) -> bool {
        x.ones().any(|y| self.le(gamma, y) && self.lt(y, alpha))
    }

    /// `gamma <= X`.
    pub fn le_set(&self, gamma: usize, x: &Set) -> bool {
        x.ones().any(|y| self.le(gamma, y))
    }

    pub fn is_regular(&self, i: usize) -> bool {
        self.regular[i]
    }

    /// `R'`: elements occurring as a subscript in the carrier.
    pub fn r_prime(&self) -> &Set {
        &self.r_prime
    }

    pub fn below_pi(&self, i: usize) -> bool {
        self.below_pi[i]
    }

    /// `D_alpha` within the carrier.
    pub fn d_with_sub(&self, alpha: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&g| self.sub[g] == Some(alpha))
    }

    /// `alpha^-`: the largest regular element at most `alpha`.
    pub fn minus(&self, alpha: usize) -> Option<usize> {
        self.by_rank[..=self.rank[alpha]].iter().rev().copied().find(|&i| self.regular[i])
    }

    /// `alpha^+`: the least regular element above `alpha`; `None` is infinity.
    pub fn plus(&self, alpha: usize) -> Option<usize> {
        self.by_rank[self.rank[alpha] + 1..].iter().copied().find(|&i| self.regular[i])
    }

    /// `X|alpha^+`, with `X|infinity = X`.
    pub fn restrict_plus(&self, x: &Set, alpha: usize) -> Set {
        match self.plus(alpha) {
            Some(p) => self.restrict(x, p),
            None => x.clone(),
        }
    }

    /// `C^alpha(X)` intersected with the carrier.
    pub fn closure(&self, alpha: usize, x: &Set) -> Set {
        let mut c = self.empty();
        for g in 0..self.len() {
            let d = &self.elems[g];
            let inside = match d.kind() {
                Kind::Zero | Kind::Omega | Kind::Pi => true,
                _ if x[g] && self.lt(g, alpha) => true,
                Kind::D(..) => {
                    self.lt(alpha, self.sub[g].expect("d-term"))
                        && self.kids[g].iter().all(|&k| c[k])
                }
                _ => self.kids[g].iter().all(|&k| c[k]),
            };
            c.set(g, inside);
        }
        c
    }

    /// `gamma ∈ C^alpha(X)`.
    pub fn in_c(&self, gamma: &Diagram, alpha: &Diagram, x: &Set) -> Result<bool> {
        let (g, a) = (self.idx(gamma)?, self.idx(alpha)?);
        Ok(self.closure(a, x)[g])
    }

    fn in_g_with(&self, a: usize, x: &Set, c: &Set) -> bool {
        c[a] && c.ones().all(|b| !self.lt(b, a) || x[b])
    }

    /// Whether `alpha ∈ G(X)`.
    pub fn in_g(&self, a: usize, x: &Set) -> bool {
        self.in_g_with(a, x, &self.closure(a, x))
    }

    /// `G(X)`.
    pub fn g_set(&self, x: &Set) -> Set {
        let mut out = self.empty();
        for a in 0..self.len() {
            out.set(a, self.in_g(a, x));
        }
        out
    }

    /// `Gamma_2(X)`.
    pub fn gamma2(&self, x: &Set) -> Set {
        let mut out = self.g_set(x);
        out.intersect_with(&self.below_pi);
        for i in self.r_prime.ones() {
            out.set(i, false);
        }
        out
    }

    /// `Gamma_A(Y)` relative to `X`.
    pub fn gamma_a(&self, x: &Set, y: &Set) -> Set {
        let mut out = self.empty();
        for a in x.ones() {
            if x.ones().all(|b| !self.lt(b, a) || y[b]) {
                out.insert(a);
            }
        }
        out
    }

    /// `WX`: the least fixpoint of `Gamma_A`.
    pub fn w_part(&self, x: &Set) -> Set {
        let mut y = self.empty();
        loop {
            let next = self.gamma_a(x, &y);
            if next == y {
                return y;
            }
            y = next;
        }
    }

    /// Whether `alpha ∈ SR`.
    pub fn is_sr(&self, i: usize) -> bool {
        matches!(self.elems[i].kind(), Kind::Omega | Kind::Suc(..))
    }

    /// The clause `alpha ∈ SR ⇒ ∀gamma ∈ D_alpha (gamma ∈ G(X) → gamma ∈ X)`.
    pub fn sr_clause(&self, a: usize, x: &Set, g: &Set) -> bool {
        !self.is_sr(a) || self.d_with_sub(a).all(|c| !g[c] || x[c])
    }
}

/// Names of the built-in operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpName {
    Gamma2,
    Gamma32,
    GammaN,
}

impl std::str::FromStr for OpName {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma2" => Ok(OpName::Gamma2),
            "gamma32" => Ok(OpName::Gamma32),
            "gammaN" | "gamman" => Ok(OpName::GammaN),
            _ => Err(DiagramError::UnknownOperator(s.to_string())),
        }
    }
}

impl std::fmt::Display for OpName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OpName::Gamma2 => "gamma2",
            OpName::Gamma32 => "gamma32",
            OpName::GammaN => "gammaN",
        })
    }
}

/// Relation tables for the two-level Mahlo system.
pub struct M32Ops<'u> {
    pub uni: &'u Universe,
    lhd_pairs: Vec<(usize, usize)>,
    m3: Set,
}

impl<'u> M32Ops<'u> {
    pub fn new(uni: &'u Universe) -> Self {
        let dq: Vec<usize> = (0..uni.len()).filter(|&i| uni.elem(i).is_dq()).collect();
        let mut lhd_pairs = Vec::new();
        for &g in &dq {
            for &a in &dq {
                if lhd_m32(uni.elem(g), uni.elem(a)) {
                    lhd_pairs.push((g, a));
                }
            }
        }
        let mut m3 = uni.empty();
        for i in 0..uni.len() {
            m3.set(i, in_m3(uni.elem(i)));
        }
        M32Ops { uni, lhd_pairs, m3 }
    }

    pub fn in_m3(&self, i: usize) -> bool {
        self.m3[i]
    }

    /// `V(X)`.
    pub fn v_set(&self, x: &Set, g: &Set) -> Set {
        let mut out = self.uni.full();
        for &(c, a) in &self.lhd_pairs {
            if g[c] && !x[c] {
                out.set(a, false);
            }
        }
        out
    }

    /// `alpha ∈ V(X)`.
    pub fn v_pred(&self, a: &Diagram, x: &Set) -> Result<bool> {
        let i = self.uni.idx(a)?;
        Ok(self.v_set(x, &self.uni.g_set(x))[i])
    }

    fn gamma30_with(&self, x: &Set, g: &Set, v: &Set) -> Set {
        let u = self.uni;
        let mut out = u.empty();
        for a in 0..u.len() {
            let ok = u.below_pi(a) && !self.m3[a] && g[a] && v[a] && u.sr_clause(a, x, g);
            out.set(a, ok);
        }
        out
    }

    /// `Gamma_30(X)`.
    pub fn gamma30(&self, x: &Set) -> Set {
        let g = self.uni.g_set(x);
        let v = self.v_set(x, &g);
        self.gamma30_with(x, &g, &v)
    }

    /// `Gamma_32(X)`.
    pub fn gamma32(&self, x: &Set) -> Set {
        let u = self.uni;
        let g = u.g_set(x);
        let v = self.v_set(x, &g);
        let mut out = self.gamma30_with(x, &g, &v);
        if out.is_subset(x) {
            for a in 0..u.len() {
                if self.m3[a] && u.below_pi(a) && g[a] && v[a] {
                    out.insert(a);
                }
            }
        }
        out
    }
}

/// Relation tables for `Od(Pi_N)`.
pub struct PiNOps<'u> {
    pub uni: &'u Universe,
    n: u32,
    /// For each `s ∈ I(2)`: the pairs `(gamma, alpha)` with `gamma ⊲_s^+ alpha`.
    lhd_plus: Vec<(IndexSeq, Vec<(usize, usize)>)>,
    /// Pairs `(gamma, alpha)` with `gamma ≺_{s[2;gamma,alpha]} alpha`.
    gate: Vec<(usize, usize)>,
}

impl<'u> PiNOps<'u> {
    pub fn new(uni: &'u Universe) -> Result<Self> {
        let n = uni.params().n;
        let dq: Vec<usize> = (0..uni.len()).filter(|&i| uni.elem(i).is_dq()).collect();
        let mut lhd_plus = Vec::new();
        for s in index_seq::initial(n) {
            let mut pairs = Vec::new();
            for &g in &dq {
                for &a in &dq {
                    if g != a && lhd_seq_plus(n, &s, uni.elem(g), uni.elem(a))? {
                        pairs.push((g, a));
                    }
                }
            }
            lhd_plus.push((s, pairs));
        }
        let mut gate = Vec::new();
        for &g in &dq {
            for &a in &dq {
                if g == a {
                    continue;
                }
                let (x, y) = (uni.elem(g), uni.elem(a));
                let s = induced_seq(n, 2, x, y)?;
                if prec_s(n, &s, x, y)? {
                    gate.push((g, a));
                }
            }
        }
        Ok(PiNOps { uni, n, lhd_plus, gate })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The pairs `gamma ⊲_s^+ alpha` for an `s ∈ I(2)`.
    pub fn lhd_plus_pairs(&self, s: &IndexSeq) -> &[(usize, usize)] {
        self.lhd_plus.iter().find(|(t, _)| t == s).map(|(_, p)| p.as_slice()).unwrap_or(&[])
    }

    /// Pairs `gamma ≺_{s[2;gamma,alpha]} alpha`.
    pub fn gate_pairs(&self) -> &[(usize, usize)] {
        &self.gate
    }

    /// `G_s(X)` given `G_{<2+#s}(X)`.
    fn g_s_with(&self, s: &IndexSeq, x: &Set, lower: &Set) -> Set {
        let mut out = self.uni.full();
        for &(c, a) in self.lhd_plus_pairs(s) {
            if lower[c] && !self.uni.le_set_below(c, x, a) {
                out.set(a, false);
            }
        }
        out
    }

    /// `G_1(X), ..., G_{N-2}(X)`, indexed from 1; entry 0 is unused.
    pub fn g_levels(&self, x: &Set) -> Vec<Set> {
        let top = self.n.saturating_sub(2) as usize;
        let mut levels = vec![self.uni.full(), self.uni.g_set(x)];
        for i in 2..=top {
            let lower = meet(&levels[1..i], self.uni);
            let mut gi = self.uni.full();
            for (s, _) in self.lhd_plus.iter().filter(|(s, _)| 2 + s.count() == i) {
                gi.intersect_with(&self.g_s_with(s, x, &lower));
            }
            levels.push(gi);
        }
        levels
    }

    /// `G_i(X)` for `1 <= i < N - 1`.
    pub fn g_i(&self, i: u32, x: &Set) -> Set {
        self.g_levels(x)[i as usize].clone()
    }

    /// `G_{<i}(X)` for `1 < i <= N - 1`.
    pub fn g_below(&self, i: u32, x: &Set) -> Set {
        meet(&self.g_levels(x)[1..i as usize], self.uni)
    }

    /// `G_s(X)` for `s ∈ I(2)`.
    pub fn g_s(&self, s: &IndexSeq, x: &Set) -> Set {
        let levels = self.g_levels(x);
        let k = (2 + s.count()).min(levels.len());
        self.g_s_with(s, x, &meet(&levels[1..k], self.uni))
    }

    /// `Gamma_N(X)`.
    pub fn gamma_n(&self, x: &Set) -> Set {
        let u = self.uni;
        let levels = self.g_levels(x);
        let below = meet(&levels[1..], u);
        let g = &levels[1];
        let mut out = u.empty();
        for a in 0..u.len() {
            out.set(a, u.below_pi(a) && below[a] && u.sr_clause(a, x, g));
        }
        for &(c, a) in &self.gate {
            if below[c] && !u.le_set_below(c, x, a) {
                out.set(a, false);
            }
        }
        out
    }
}

fn meet(sets: &[Set], uni: &Universe) -> Set {
    let mut out = uni.full();
    for s in sets {
        out.intersect_with(s);
    }
    out
}

/// An operator bound to a universe.
pub enum Operator<'u> {
    Gamma2(&'u Universe),
    Gamma32(M32Ops<'u>),
    GammaN(PiNOps<'u>),
}

impl<'u> Operator<'u> {
    pub fn new(name: OpName, uni: &'u Universe) -> Result<Self> {
        Ok(match name {
            OpName::Gamma2 => Operator::Gamma2(uni),
            OpName::Gamma32 => Operator::Gamma32(M32Ops::new(uni)),
            OpName::GammaN => Operator::GammaN(PiNOps::new(uni)?),
        })
    }

    /// The operator matching a system: `gamma32` for the two-level system, `gammaN` otherwise.
    pub fn for_system(uni: &'u Universe) -> Result<Self> {
        match uni.params().system {
            SystemKind::OdM32 => Self::new(OpName::Gamma32, uni),
            _ => Self::new(OpName::GammaN, uni),
        }
    }

    pub fn universe(&self) -> &'u Universe {
        match self {
            Operator::Gamma2(u) => u,
            Operator::Gamma32(m) => m.uni,
            Operator::GammaN(p) => p.uni,
        }
    }

    pub fn apply(&self, x: &Set) -> Set {
        match self {
            Operator::Gamma2(u) => u.gamma2(x),
            Operator::Gamma32(m) => m.gamma32(x),
            Operator::GammaN(p) => p.gamma_n(x),
        }
    }
}

/// The stages of an inductive definition on a carrier.
#[derive(Clone, Debug)]
pub struct StageMap {
    /// `|alpha|` for members of the fixpoint.
    pub stages: Vec<Option<u32>>,
    /// The cumulative stages `Gamma^0 ⊆ Gamma^1 ⊆ ...`, ending at the fixpoint.
    pub history: Vec<Set>,
    pub fixpoint: Set,
    /// Whether `Gamma(W) ⊆ W`.
    pub closed: bool,
}

impl StageMap {
    pub fn stage(&self, i: usize) -> Option<u32> {
        self.stages[i]
    }

    pub fn rounds(&self) -> usize {
        self.history.len() - 1
    }

    /// Renders `diagram stage` lines in canonical element order.
    pub fn render(&self, uni: &Universe) -> String {
        let mut s = String::new();
        for (i, st) in self.stages.iter().enumerate() {
            if let Some(k) = st {
                s.push_str(&format!("{} {k}\n", uni.elem(i)));
            }
        }
        s.push_str(&format!(
            "# members={} rounds={} closed={}\n",
            self.fixpoint.count_ones(..),
            self.rounds(),
            self.closed
        ));
        s
    }
}

/// Iterates `Gamma^x = U{Gamma(Gamma^y) : y < x}` from the empty set to its fixpoint.
pub fn iterate(op: &Operator<'_>) -> Result<StageMap> {
    let uni = op.universe();
    let mut stages = vec![None; uni.len()];
    let mut cur = uni.empty();
    let mut history = vec![cur.clone()];
    for round in 0..=uni.len() as u32 {
        let step = op.apply(&cur);
        let mut next = cur.clone();
        next.union_with(&step);
        for i in step.ones() {
            stages[i].get_or_insert(round);
        }
        if !cur.is_subset(&next) {
            return Err(DiagramError::NonMonotoneStep(round as usize));
        }
        if next == cur {
            let closed = step.is_subset(&cur);
            return Ok(StageMap { stages, history, fixpoint: cur, closed });
        }
        history.push(next.clone());
        cur = next;
    }
    Err(DiagramError::NonMonotoneStep(uni.len()))
}

/// The second coordinate of a Mahlo height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightTop {
    Diagram(Diagram),
    Pi,
}

impl HeightTop {
    fn as_diagram(&self) -> Diagram {
        match self {
            HeightTop::Diagram(d) => d.clone(),
            HeightTop::Pi => Diagram::pi(),
        }
    }
}

/// `h(rho) = <h_0, h_1>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahloHeight {
    pub first: Diagram,
    pub second: HeightTop,
}

impl MahloHeight {
    pub fn lex_cmp(&self, other: &MahloHeight) -> Ordering {
        compare(&self.first, &other.first)
            .then_with(|| compare(&self.second.as_diagram(), &other.second.as_diagram()))
    }
}

impl std::fmt::Display for MahloHeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.second {
            HeightTop::Pi => write!(f, "<{}, pi>", self.first),
            HeightTop::Diagram(d) => write!(f, "<{}, {}>", self.first, d),
        }
    }
}

/// `h(rho)` for a collapse of the two-level system.
pub fn mahlo_height(rho: &Diagram) -> Result<MahloHeight> {
    let undefined = || DiagramError::NotADQTerm(rho.to_string());
    let s = st(2, rho)?.ok_or_else(undefined)?;
    let k = rg(2, rho)?.ok_or_else(undefined)?;
    if k.is_pi() {
        return Ok(MahloHeight { first: s, second: HeightTop::Pi });
    }
    let first = st(2, &k)?.ok_or_else(undefined)?;
    Ok(MahloHeight { first, second: HeightTop::Diagram(s) })
}

/// The per-`delta` layers of the distinguished-class predicates, indexed by level `i`.
#[derive(Clone, Debug)]
pub struct Layers {
    pub u: Vec<Set>,
    pub vs: Vec<Set>,
    pub hs: Vec<Set>,
    pub vstar: Vec<Set>,
    pub ustar: Vec<Set>,
}

impl Layers {
    pub fn uvstar(&self, i: u32) -> Set {
        let mut s = self.ustar[i as usize].clone();
        s.intersect_with(&self.vstar[i as usize]);
        s
    }

    /// `H^s_{>=i}`.
    pub fn hs_from(&self, i: u32, top: u32, full: &Set) -> Set {
        let mut s = full.clone();
        for j in i..top {
            s.intersect_with(&self.hs[j as usize]);
        }
        s
    }
}

/// The predicates `U_i`, `V^s_i`, `H^s_i`, `V*_i`, `U*_i`, `V*`, `VC^alpha` and `D[X]` on a carrier.
pub struct Distinguished<'u> {
    pub uni: &'u Universe,
    n: u32,
    /// `st_i`/`rg_i` unions `U{K_sigma nu : sigma <= rg_i}` per element and level.
    k_sets: Vec<Vec<Option<Vec<usize>>>>,
    /// `⊲^s_i` pairs per level.
    lhd: Vec<Vec<(usize, usize)>>,
    /// `alpha ⪯_i beta < pi` targets per level.
    up: Vec<Vec<Vec<usize>>>,
}

impl<'u> Distinguished<'u> {
    pub fn new(uni: &'u Universe) -> Result<Self> {
        let n = uni.params().n;
        let top = n - 1;
        let mut k_sets = vec![vec![None; uni.len()]; top as usize + 1];
        let mut lhd = vec![Vec::new(); top as usize + 1];
        let mut up = vec![vec![Vec::new(); uni.len()]; top as usize + 1];
        let dq: Vec<usize> = (0..uni.len()).filter(|&i| uni.elem(i).is_dq()).collect();
        for i in 2..=top {
            for &b in &dq {
                let d = uni.elem(b);
                if let (Some(nu), Some(kappa)) = (st(i, d)?, rg(i, d)?) {
                    let ks = k_union_upto(&kappa, &nu)
                        .iter()
                        .map(|x| uni.idx(x))
                        .collect::<Result<Vec<_>>>()?;
                    k_sets[i as usize][b] = Some(ks);
                }
            }
            if i < top {
                for &a in &dq {
                    for &b in &dq {
                        if lhd_s(i, uni.elem(a), uni.elem(b)) {
                            lhd[i as usize].push((a, b));
                        }
                    }
                }
            }
            for a in 0..uni.len() {
                up[i as usize][a] = chain_i_incl(i, uni.elem(a))
                    .iter()
                    .filter_map(|d| uni.try_idx(d))
                    .filter(|&b| uni.below_pi(b))
                    .collect();
            }
        }
        Ok(Distinguished { uni, n, k_sets, lhd, up })
    }

    pub fn top(&self) -> u32 {
        self.n - 1
    }

    /// The layers for parameter `delta`.
    pub fn layers(&self, x: &Set, delta: usize) -> Layers {
        let u = self.uni;
        let top = self.top();
        let full = u.full();
        let bound = match u.minus(delta) {
            Some(m) => u.restrict(x, m),
            None => u.empty(),
        };
        let width = top as usize + 1;
        let mut layers = Layers {
            u: vec![full.clone(); width],
            vs: vec![full.clone(); width],
            hs: vec![full.clone(); width],
            vstar: vec![full.clone(); width],
            ustar: vec![full.clone(); width],
        };
        for i in 2..=top as usize {
            for b in 0..u.len() {
                if let Some(ks) = &self.k_sets[i][b] {
                    layers.u[i].set(b, ks.iter().all(|&k| bound[k]));
                }
            }
        }
        for i in 2..top as usize {
            layers.vs[i] = self.wf_part(i, &layers.u[i]);
        }
        for i in (2..=top as usize).rev() {
            if i < top as usize {
                let mut ok = layers.vstar[i + 1].clone();
                ok.intersect_with(&layers.vs[i]);
                let mut hs = full.clone();
                for &(b, a) in &self.lhd[i] {
                    if layers.u[i][b] && !ok[b] {
                        hs.set(a, false);
                    }
                }
                layers.hs[i] = hs;
            }
            let hs_ge = layers.hs_from(i as u32, top, &full);
            let mut u_ge = full.clone();
            for j in i..=top as usize {
                u_ge.intersect_with(&layers.u[j]);
            }
            for a in 0..u.len() {
                let targets = &self.up[i][a];
                layers.vstar[i].set(a, targets.iter().all(|&b| hs_ge[b]));
                layers.ustar[i].set(a, targets.iter().all(|&b| u_ge[b]));
            }
        }
        layers
    }

    fn wf_part(&self, i: usize, ui: &Set) -> Set {
        let u = self.uni;
        let mut v = u.empty();
        loop {
            let mut next = u.full();
            for &(b, a) in &self.lhd[i] {
                if ui[b] && !v[b] {
                    next.set(a, false);
                }
            }
            if next == v {
                return v;
            }
            v = next;
        }
    }

    /// `V*_2(X)` by diagonalization: `alpha ∈ V*_2(X; alpha)`.
    pub fn vstar2_diag(&self, x: &Set) -> Set {
        let mut out = self.uni.empty();
        let mut cache: HashMap<Option<usize>, Layers> = HashMap::new();
        for a in 0..self.uni.len() {
            let key = self.uni.minus(a);
            let l = cache.entry(key).or_insert_with(|| self.layers(x, a));
            out.set(a, l.vstar[2][a]);
        }
        out
    }

    /// `V*(X)`.
    pub fn vstar(&self, x: &Set) -> Set {
        let v2 = self.vstar2_diag(x);
        let mut out = self.uni.empty();
        for a in v2.ones() {
            let below = self.uni.restrict(&self.uni.closure(a, x), a);
            out.set(a, below.is_subset(&v2));
        }
        out
    }

    /// `VC^alpha(X)`.
    pub fn vc(&self, alpha: usize, x: &Set, vstar: &Set) -> Set {
        let mut c = self.uni.closure(alpha, x);
        c.intersect_with(vstar);
        c
    }

    /// `D[X]`.
    pub fn is_d(&self, x: &Set) -> bool {
        let u = self.uni;
        if !x.ones().all(|i| u.below_pi(i)) {
            return false;
        }
        let vstar = self.vstar(x);
        (0..u.len()).filter(|&a| u.le_set(a, x)).all(|a| {
            let w = u.w_part(&self.vc(a, x, &vstar));
            u.restrict_plus(&w, a) == u.restrict_plus(x, a)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_fragment, GenConfig};

    fn universe(params: SystemParams, max: u32) -> Universe {
        let c = enumerate_fragment(&GenConfig::new(params, max)).unwrap();
        Universe::new(&c).unwrap()
    }

    #[test]
    fn closure_examples() {
        let u = universe(SystemParams::pi_n(4), 3);
        let x = u.empty();
        assert!(u.in_c(&Diagram::pi(), &Diagram::zero(), &x).unwrap());
        let d = crate::parse("d(Om;;0)").unwrap();
        assert!(!u.in_c(&d, &Diagram::pi(), &x).unwrap());
        assert!(u.in_c(&d, &Diagram::zero(), &x).unwrap());
        let mut with = u.empty();
        with.insert(u.idx(&d).unwrap());
        assert!(u.in_c(&d, &Diagram::pi(), &with).unwrap());
    }

    #[test]
    fn zero_enters_first() {
        let u = universe(SystemParams::m32(), 5);
        let op = Operator::new(OpName::Gamma32, &u).unwrap();
        let sm = iterate(&op).unwrap();
        assert_eq!(sm.stage(u.idx(&Diagram::zero()).unwrap()), Some(0));
        assert!(sm.closed);
    }

    #[test]
    fn w_part_of_total_order_is_everything() {
        let u = universe(SystemParams::pi_n(4), 3);
        assert_eq!(u.w_part(&u.full()), u.full());
        assert_eq!(u.w_part(&u.empty()), u.empty());
    }

    #[test]
    fn top_layer_is_everything() {
        let u = universe(SystemParams::pi_n(4), 5);
        let d = Distinguished::new(&u).unwrap();
        let l = d.layers(&u.empty(), 0);
        assert_eq!(l.vstar[3], u.full());
        assert!(d.is_d(&u.empty()));
    }

    #[test]
    fn mahlo_height_of_m3_member() {
        let rho = crate::parse("d(pi;[2,pi,pi,0];0)").unwrap();
        let h = mahlo_height(&rho).unwrap();
        assert_eq!(h.first, Diagram::zero());
        assert_eq!(h.second, HeightTop::Pi);
    }
}
