//! Membership in `Od`, `Od(M_3^2)` and `Od(Pi_N)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::accessors::{in_pair, pd, rg, st};
use crate::diagram::{Bound, Diagram, Kind, Quad};
use crate::error::{DiagramError, Result};
use crate::relations::{compare, in_eq, le, lt, prec_i, preceq_dot, preceq_i};
use crate::subterm::{b_above, b_above_set, k_sigma, set_lt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    OdSuper,
    OdM32,
    OdPiN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemParams {
    pub system: SystemKind,
    pub n: u32,
}

impl SystemParams {
    pub fn pi_n(n: u32) -> Self {
        assert!(n >= 4, "N must be at least 4");
        SystemParams { system: SystemKind::OdPiN, n }
    }

    pub fn m32() -> Self {
        SystemParams { system: SystemKind::OdM32, n: 3 }
    }

    pub fn od(n: u32) -> Self {
        assert!(n >= 4, "N must be at least 4");
        SystemParams { system: SystemKind::OdSuper, n }
    }

    /// Largest quadruple index `N-1`.
    pub fn top_index(&self) -> u32 {
        match self.system {
            SystemKind::OdM32 => 2,
            _ => self.n - 1,
        }
    }
}

impl fmt::Display for SystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.system {
            SystemKind::OdSuper => write!(f, "od(N={})", self.n),
            SystemKind::OdM32 => write!(f, "m32"),
            SystemKind::OdPiN => write!(f, "piN(N={})", self.n),
        }
    }
}

/// Labels of the individual membership conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    NormalForm,
    Subterm,
    SubClass,
    QuadShape,
    OdMu,
    Rg32,
    StBound32Pi,
    StBound32,
    Case1M32,
    Case2M32,
    D2,
    JMonotone,
    KappaL,
    NuBound,
    TauShape,
    Eq5Pred,
    D11,
    D12,
    D2PiN,
}

impl Clause {
    pub fn label(&self) -> &'static str {
        match self {
            Clause::NormalForm => "NormalForm",
            Clause::Subterm => "Subterm",
            Clause::SubClass => "SubClass",
            Clause::QuadShape => "QuadShape",
            Clause::OdMu => "OdMu",
            Clause::Rg32 => "Rg32",
            Clause::StBound32Pi => "StBound32Pi",
            Clause::StBound32 => "StBound32",
            Clause::Case1M32 => "Case1M32",
            Clause::Case2M32 => "Case2M32",
            Clause::D2 => "D2",
            Clause::JMonotone => "JMonotone",
            Clause::KappaL => "KappaL",
            Clause::NuBound => "NuBound",
            Clause::TauShape => "TauShape",
            Clause::Eq5Pred => "Eq5Pred",
            Clause::D11 => "D11",
            Clause::D12 => "D12",
            Clause::D2PiN => "D2PiN",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

/// Which alternative of the three-way `D.12` condition held.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum D12Subcase {
    One,
    Two,
    Three,
}

impl fmt::Display for D12Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            D12Subcase::One => "D.12.1",
            D12Subcase::Two => "D.12.2",
            D12Subcase::Three => "D.12.3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// For each `i ∈ In(rho)`, the first `D.12` alternative that held.
    pub d12: Vec<(u32, D12Subcase)>,
}

impl ValidityReport {
    fn push(&mut self, clause: Clause, detail: impl Into<String>) {
        self.violations.push(Violation { clause, detail: detail.into() });
    }

    fn finish(mut self) -> Self {
        self.valid = self.violations.is_empty();
        self
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            write!(f, "valid")?;
            for (i, c) in &self.d12 {
                write!(f, " i={i}:{c}")?;
            }
            Ok(())
        } else {
            write!(f, "invalid")?;
            for v in &self.violations {
                write!(f, " {}({})", v.clause, v.detail)?;
            }
            Ok(())
        }
    }
}

/// A diagram system together with a validity memo.
pub struct System {
    pub params: SystemParams,
    memo: DashMap<u32, bool>,
}

impl System {
    pub fn new(params: SystemParams) -> Self {
        System { params, memo: DashMap::new() }
    }

    /// Whether `d` and all its subterms belong to the system.
    pub fn is_valid(&self, d: &Diagram) -> bool {
        if let Some(v) = self.memo.get(&d.id()).map(|r| *r) {
            return v;
        }
        let v = d.children().iter().all(|c| self.is_valid(c)) && self.check_local(d).valid;
        self.memo.insert(d.id(), v);
        v
    }

    /// Full report for `d`; subterm failures are reported under [`Clause::Subterm`].
    pub fn validate(&self, d: &Diagram) -> ValidityReport {
        let mut report = self.check_local(d);
        for c in d.children() {
            if !self.is_valid(&c) {
                report.push(Clause::Subterm, format!("invalid subterm {c}"));
            }
        }
        let report = report.finish();
        self.memo.insert(d.id(), report.valid);
        report
    }

    /// The membership conditions of the outermost constructor, assuming valid subterms.
    pub fn check_local(&self, d: &Diagram) -> ValidityReport {
        let mut r = ValidityReport::default();
        if !d.is_locally_normal() {
            r.push(Clause::NormalForm, "not in normal form");
        }
        match d.kind() {
            Kind::Suc(b, _) if !b.is_dq() => r.push(Clause::SubClass, "successor base not in D^Q"),
            Kind::D(s, q, a) if q.is_empty() => {
                if !(s.is_omega() || s.is_suc()) {
                    r.push(Clause::SubClass, "empty-quad subscript not in {Om} u SR");
                }
                check_od_mu(&mut r, d, s, a);
            }
            Kind::D(s, q, a) => {
                if !(s.is_pi() || s.is_dq()) {
                    r.push(Clause::SubClass, "subscript not in {pi} u D^Q");
                }
                match self.params.system {
                    SystemKind::OdSuper => self.check_od_quads(&mut r, q),
                    SystemKind::OdM32 => check_m32(&mut r, d, s, q, a),
                    SystemKind::OdPiN => check_pi_n(&mut r, self.params.n, d, s, q, a),
                }
                check_od_mu(&mut r, d, s, a);
            }
            _ => {}
        }
        r.finish()
    }

    fn check_od_quads(&self, r: &mut ValidityReport, q: &[Quad]) {
        for x in q {
            if x.j < 2 || x.j > self.params.n - 1 {
                r.push(Clause::QuadShape, format!("index {} outside [2,N-1]", x.j));
            }
            if !(x.kappa.is_pi() || x.kappa.is_dq()) || !(x.tau.is_pi() || x.tau.is_dq()) {
                r.push(Clause::QuadShape, "kappa or tau outside {pi} u D^Q");
            }
        }
    }

    /// Builds `d_sub^quads body` if it is valid.
    pub fn make_d(&self, sub: Diagram, quads: Vec<Quad>, body: Diagram) -> Result<Diagram> {
        let d = Diagram::d_unchecked(sub, quads, body);
        self.ensure(d)
    }

    /// Returns `d` if it is valid, otherwise an error carrying the report.
    pub fn ensure(&self, d: Diagram) -> Result<Diagram> {
        let report = self.validate(&d);
        if report.valid {
            Ok(d)
        } else {
            Err(DiagramError::Invalid { term: d.to_string(), report })
        }
    }

    /// Parses and validates.
    pub fn parse(&self, text: &str) -> Result<Diagram> {
        self.ensure(crate::text::parse(text)?)
    }

    /// `compare` restricted to members of this system.
    pub fn compare_checked(&self, a: &Diagram, b: &Diagram) -> Result<Ordering> {
        if self.is_valid(a) && self.is_valid(b) {
            Ok(compare(a, b))
        } else {
            Err(DiagramError::IncomparableSystems)
        }
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }
}

fn check_od_mu(r: &mut ValidityReport, d: &Diagram, s: &Diagram, a: &Diagram) {
    let mut xs = d.c_set().expect("d-term");
    xs.push(s.clone());
    let b = b_above_set(s, &xs);
    if !set_lt(&b, a) {
        r.push(Clause::OdMu, format!("B above {s} not below body"));
    }
}

fn is_pi_or_dq(x: &Diagram) -> bool {
    x.is_pi() || x.is_dq()
}

/// `M_3`: `pi` and the collapses with `rg_2 = pi`.
pub fn in_m3(x: &Diagram) -> bool {
    x.is_pi() || (x.is_dq() && matches!(rg(2, x), Ok(Some(r)) if r.is_pi()))
}

fn check_m32(r: &mut ValidityReport, rho: &Diagram, s: &Diagram, q: &[Quad], a: &Diagram) {
    if q.len() != 1 || q[0].j != 2 {
        r.push(Clause::QuadShape, "expected a single quadruple with index 2");
        return;
    }
    let Quad { kappa, tau, nu, .. } = &q[0];
    if tau != s {
        r.push(Clause::TauShape, "tau differs from subscript");
        return;
    }
    if !(preceq_dot(s, kappa) && in_m3(kappa)) {
        r.push(Clause::Rg32, format!("{kappa} not a M_3 element above the subscript"));
        return;
    }
    if s.is_pi() && !le(nu, a) {
        r.push(Clause::StBound32Pi, "nu exceeds body");
    }
    if !Bound::successor_of(kappa).gt(nu) {
        r.push(Clause::StBound32, "nu not below kappa^+");
    }
    let above: Vec<Diagram> = crate::relations::sub_chain(rho);
    if kappa.is_pi() {
        for eta in above.iter().filter(|e| !e.is_pi() && in_m3(e)) {
            let se = st(2, eta).ok().flatten();
            if !matches!(&se, Some(x) if lt(nu, x)) {
                r.push(Clause::Case1M32, format!("st_2 not below st_2({eta})"));
            }
        }
    } else {
        if !above.contains(kappa) {
            r.push(Clause::Case2M32, "rg_2 not on the subscript chain");
        } else {
            for t in above.iter().take_while(|t| *t != kappa) {
                let rt = rg(2, t).ok().flatten();
                let stt = st(2, t).ok().flatten();
                if rt.as_ref() != Some(kappa) {
                    r.push(Clause::Case2M32, format!("rg_2({t}) differs from rg_2"));
                } else if !matches!(&stt, Some(x) if lt(nu, x)) {
                    r.push(Clause::Case2M32, format!("st_2 not below st_2({t})"));
                }
            }
        }
    }
    check_k_bound(r, Clause::D2, rho, nu, kappa);
}

/// `forall tau <= kappa (K_tau(nu) < rho)`.
fn check_k_bound(r: &mut ValidityReport, clause: Clause, rho: &Diagram, nu: &Diagram, kappa: &Diagram) {
    for t in nu.sd_plus().iter().filter(|t| t.is_regular() && le(t, kappa)) {
        if !set_lt(&k_sigma(t, nu), rho) {
            r.push(clause, format!("K_{t}({nu}) not below the diagram"));
            return;
        }
    }
}

fn check_pi_n(r: &mut ValidityReport, n: u32, rho: &Diagram, s: &Diagram, q: &[Quad], a: &Diagram) {
    let before = r.violations.len();
    let l = q.len() - 1;
    if q[0].j < 2 || q.windows(2).any(|w| w[0].j >= w[1].j) || q[l].j != n - 1 {
        r.push(Clause::JMonotone, "indices not 2 <= j_0 < ... < j_l = N-1");
    }
    if !q[l].kappa.is_pi() {
        r.push(Clause::KappaL, "kappa_l is not pi");
    }
    for x in q {
        if !is_pi_or_dq(&x.kappa) || !preceq_dot(s, &x.kappa) {
            r.push(Clause::KappaL, format!("kappa {} outside {{pi}} u D^Q or not above the subscript", x.kappa));
        }
    }
    if s.is_pi() && !le(&q[l].nu, a) {
        r.push(Clause::NuBound, "nu_l exceeds body");
    }
    for x in &q[..l] {
        if !Bound::successor_of(&x.kappa).gt(&x.nu) {
            r.push(Clause::NuBound, format!("nu {} not below kappa^+", x.nu));
        }
    }
    if &q[0].tau != s {
        r.push(Clause::TauShape, "tau_0 differs from subscript");
    }
    for x in q {
        if !is_pi_or_dq(&x.tau) || !preceq_dot(s, &x.tau) {
            r.push(Clause::TauShape, format!("tau {} outside {{pi}} u D^Q or not above the subscript", x.tau));
        }
    }
    if q[l].tau.is_pi() && !s.is_pi() {
        r.push(Clause::Eq5Pred, "tau_l = pi but subscript is not pi");
    }
    if r.violations.len() > before {
        return;
    }
    for x in q {
        let i = x.j;
        let kappa = &x.kappa;
        let pdi = pd(i, rho).expect("shape checked");
        if i < n - 1 {
            let pdn = pd(i + 1, rho).expect("shape checked");
            if !in_eq(i, kappa, &pdn) {
                r.push(Clause::D11, format!("in_{i}(rg) differs from in_{i}(pd_{})", i + 1));
            }
            if !preceq_i(i, kappa, &pdn) {
                r.push(Clause::D11, format!("rg_{i} not below pd_{} in the {i}-chain", i + 1));
            }
            if pdi == pdn {
                r.push(Clause::D11, format!("pd_{i} equals pd_{}", i + 1));
            }
        }
        if !preceq_i(i, &pdi, kappa) {
            r.push(Clause::D11, format!("pd_{i} not below rg_{i} in the {i}-chain"));
        }
        match d12_subcases(i, rho, &x.nu, kappa, &pdi).first() {
            Some(c) => r.d12.push((i, *c)),
            None => r.push(Clause::D12, format!("no alternative holds at i={i}")),
        }
        check_k_bound(r, Clause::D2PiN, rho, &x.nu, kappa);
    }
}

/// Every alternative of `D.12` that holds for `rho` at index `i`.
pub fn d12_holding(i: u32, rho: &Diagram) -> Vec<D12Subcase> {
    let Kind::D(_, q, _) = rho.kind() else {
        return Vec::new();
    };
    let Some(x) = q.iter().find(|x| x.j == i) else {
        return Vec::new();
    };
    match pd(i, rho) {
        Ok(pdi) => d12_subcases(i, rho, &x.nu, &x.kappa, &pdi),
        Err(_) => Vec::new(),
    }
}

fn d12_subcases(i: u32, rho: &Diagram, sti: &Diagram, kappa: &Diagram, pdi: &Diagram) -> Vec<D12Subcase> {
    let mut out = Vec::new();
    if kappa == pdi {
        let alpha1 = std::iter::once(rho.clone())
            .chain(crate::relations::sub_chain(rho))
            .find(|e| e.sub() == Some(kappa));
        if let Some(a1) = alpha1 {
            let body = a1.body().expect("d-term").clone();
            if set_lt(&b_above(kappa, sti), &body) {
                out.push(D12Subcase::One);
            }
        }
    }
    let pd_pair = in_pair(i, pdi).ok().flatten();
    if let Some((pst, prg)) = &pd_pair {
        if prg == kappa && lt(sti, pst) {
            out.push(D12Subcase::Two);
        }
    }
    if let Some((_, r0)) = &pd_pair {
        if prec_i(i, r0, kappa) {
            let between_ok = crate::relations::chain_i_incl(i, r0)
                .into_iter()
                .take_while(|t| t != kappa)
                .all(|t| matches!(rg(i, &t), Ok(Some(rt)) if preceq_i(i, &rt, kappa)));
            let sigma1 = crate::relations::chain_i(i, pdi)
                .into_iter()
                .take_while(|t| t != kappa)
                .find(|t| matches!(rg(i, t), Ok(Some(rt)) if &rt == kappa));
            if between_ok {
                if let Some(s1) = sigma1 {
                    if matches!(st(i, &s1), Ok(Some(x)) if lt(sti, &x)) {
                        out.push(D12Subcase::Three);
                    }
                }
            }
        }
    }
    out
}

/// Shared validity systems, one per parameter set.
pub fn shared(params: SystemParams) -> Arc<System> {
    use std::sync::{Mutex, OnceLock};
    static SYSTEMS: OnceLock<Mutex<Vec<Arc<System>>>> = OnceLock::new();
    let lock = SYSTEMS.get_or_init(|| Mutex::new(Vec::new()));
    let mut v = lock.lock().unwrap();
    if let Some(s) = v.iter().find(|s| s.params == params) {
        return s.clone();
    }
    let s = Arc::new(System::new(params));
    v.push(s.clone());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn od_base_cases() {
        let sys = System::new(SystemParams::pi_n(4));
        let d = parse("d(Om;;0)").unwrap();
        assert!(sys.validate(&d).valid);
        let s = parse("suc(d(pi;[3,pi,pi,0];0),1)").unwrap();
        assert!(sys.validate(&s).valid);
    }

    #[test]
    fn pi_n_base() {
        let sys = System::new(SystemParams::pi_n(4));
        let r = sys.validate(&parse("d(pi;[3,pi,pi,0];0)").unwrap());
        assert!(r.valid, "{r}");
        assert_eq!(r.d12, vec![(3, D12Subcase::One)]);
    }

    #[test]
    fn pi_n_rejections() {
        let sys = System::new(SystemParams::pi_n(4));
        let bad = sys.validate(&parse("d(pi;[3,2,pi,0];0)").unwrap());
        assert!(bad.has(Clause::KappaL));
        let r5 = System::new(SystemParams::pi_n(5));
        let j = r5.validate(&parse("d(pi;[3,pi,pi,0],[2,pi,pi,0];0)").unwrap());
        assert!(j.has(Clause::JMonotone));
    }

    #[test]
    fn d11_rejects_equal_predecessors() {
        let sys = System::new(SystemParams::pi_n(4));
        let r1 = parse("d(pi;[3,pi,pi,0];0)").unwrap();
        let cand = Diagram::d_unchecked(
            r1.clone(),
            vec![
                Quad::new(2, r1.clone(), r1.clone(), Diagram::zero()),
                Quad::new(3, Diagram::pi(), r1.clone(), Diagram::zero()),
            ],
            Diagram::zero(),
        );
        assert!(sys.validate(&cand).has(Clause::D11));
    }

    #[test]
    fn m32_cases() {
        let sys = System::new(SystemParams::m32());
        assert!(sys.validate(&parse("d(pi;[2,pi,pi,0];0)").unwrap()).valid);
        let bad = sys.validate(&parse("d(pi;[2,pi,pi,Om];0)").unwrap());
        assert!(bad.has(Clause::StBound32Pi));
    }
}
