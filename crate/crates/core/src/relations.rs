//! The order `<` and the reflection relations built on the subscript and
//! `pd_i` chains.

use std::cmp::Ordering;
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::accessors::{has_index, in_pair, pd, rg};
use crate::diagram::{Diagram, Kind, Quad};
use crate::error::{DiagramError, Result};
use crate::subterm::{k_sigma, k_sigma_set};

const CACHE_CAP: usize = 4_000_000;

fn dd_cache() -> &'static DashMap<(u32, u32), Ordering> {
    static C: OnceLock<DashMap<(u32, u32), Ordering>> = OnceLock::new();
    C.get_or_init(DashMap::new)
}

/// The strict total order on diagrams.
pub fn compare(a: &Diagram, b: &Diagram) -> Ordering {
    use Kind::*;
    use Ordering::*;
    if a == b {
        return Equal;
    }
    match (a.kind(), b.kind()) {
        (Zero, _) => Less,
        (_, Zero) => Greater,
        (Sum(xs), Sum(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                match compare(x, y) {
                    Equal => continue,
                    o => return o,
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Sum(xs), _) => match compare(&xs[0], b) {
            Equal => Greater,
            o => o,
        },
        (_, Sum(ys)) => match compare(a, &ys[0]) {
            Equal => Less,
            o => o,
        },
        (Veblen(a1, b1), Veblen(a2, b2)) => match compare(a1, a2) {
            Less => {
                if compare(b1, b) == Less {
                    Less
                } else {
                    Greater
                }
            }
            Equal => compare(b1, b2),
            Greater => {
                if compare(a, b2) == Greater {
                    Greater
                } else {
                    Less
                }
            }
        },
        (Veblen(x, y), _) => {
            if compare(x, b) == Less && compare(y, b) == Less {
                Less
            } else {
                Greater
            }
        }
        (_, Veblen(..)) => compare(b, a).reverse(),
        (Pi, _) => Greater,
        (_, Pi) => Less,
        (Omega, Suc(..)) => Less,
        (Suc(..), Omega) => Greater,
        (Omega, D(s, _, _)) => {
            if s.is_omega() {
                Greater
            } else {
                Less
            }
        }
        (D(..), Omega) => compare(b, a).reverse(),
        (Suc(x, j), Suc(y, k)) => {
            if x == y {
                j.cmp(k)
            } else {
                compare(x, y)
            }
        }
        (Suc(kappa, _), D(tau, _, _)) => compare_suc_d(a, kappa, b, tau),
        (D(tau, _, _), Suc(kappa, _)) => compare_suc_d(b, kappa, a, tau).reverse(),
        (D(..), D(..)) => compare_dd(a, b),
        (Omega, Omega) => Equal,
    }
}

fn compare_suc_d(x: &Diagram, kappa: &Diagram, beta: &Diagram, tau: &Diagram) -> Ordering {
    if compare(tau, x) != Ordering::Greater {
        return Ordering::Greater;
    }
    if tau.is_omega() || tau.is_suc() {
        return Ordering::Less;
    }
    if compare(beta, kappa) != Ordering::Greater {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn compare_dd(a: &Diagram, b: &Diagram) -> Ordering {
    let key = (a.id(), b.id());
    if let Some(o) = dd_cache().get(&key).map(|r| *r) {
        return o;
    }
    let o = compare_dd_uncached(a, b);
    let cache = dd_cache();
    if cache.len() > CACHE_CAP {
        cache.clear();
    }
    cache.insert(key, o);
    o
}

fn compare_dd_uncached(a: &Diagram, b: &Diagram) -> Ordering {
    use Ordering::*;
    let (sa, qa, ba) = match a.kind() {
        Kind::D(s, q, x) => (s, q, x),
        _ => unreachable!(),
    };
    let (sb, qb, bb) = match b.kind() {
        Kind::D(s, q, x) => (s, q, x),
        _ => unreachable!(),
    };
    if sa == sb {
        let cb = b.c_set().expect("d-term");
        if k_sigma_set(sa, &cb).iter().any(|g| compare(a, g) != Greater) {
            return Less;
        }
        let ca = a.c_set().expect("d-term");
        if k_sigma_set(sa, &ca).iter().any(|g| compare(b, g) != Greater) {
            return Greater;
        }
        return match compare(ba, bb) {
            Equal => compare_quads(qa, qb),
            o => o,
        };
    }
    if compare(sb, a) != Greater {
        return Greater;
    }
    if compare(sa, b) != Greater {
        return Less;
    }
    if compare(sb, sa) == Less {
        if k_sigma(sb, a).iter().all(|g| compare(g, b) == Less) {
            Less
        } else {
            Greater
        }
    } else if k_sigma(sa, b).iter().any(|g| compare(a, g) != Greater) {
        Less
    } else {
        Greater
    }
}

fn compare_quads(qa: &[Quad], qb: &[Quad]) -> Ordering {
    for (x, y) in qa.iter().rev().zip(qb.iter().rev()) {
        let o = x
            .j
            .cmp(&y.j)
            .then_with(|| compare(&x.kappa, &y.kappa))
            .then_with(|| compare(&x.tau, &y.tau))
            .then_with(|| compare(&x.nu, &y.nu));
        if o != Ordering::Equal {
            return o;
        }
    }
    qa.len().cmp(&qb.len())
}

pub fn lt(a: &Diagram, b: &Diagram) -> bool {
    compare(a, b) == Ordering::Less
}

pub fn le(a: &Diagram, b: &Diagram) -> bool {
    compare(a, b) != Ordering::Greater
}

/// The larger of two diagrams.
pub fn max_of(a: &Diagram, b: &Diagram) -> Diagram {
    if lt(a, b) {
        b.clone()
    } else {
        a.clone()
    }
}

/// The subscript chain `alpha -> sub(alpha) -> ...` excluding `alpha`.
pub fn sub_chain(alpha: &Diagram) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut cur = alpha.clone();
    while let Some(s) = cur.sub() {
        out.push(s.clone());
        cur = s.clone();
    }
    out
}

/// `alpha ≺ beta`.
pub fn prec_dot(alpha: &Diagram, beta: &Diagram) -> bool {
    let mut cur = alpha.clone();
    while let Some(s) = cur.sub() {
        if s == beta {
            return true;
        }
        cur = s.clone();
    }
    false
}

/// `alpha ⪯ beta`.
pub fn preceq_dot(alpha: &Diagram, beta: &Diagram) -> bool {
    alpha == beta || prec_dot(alpha, beta)
}

/// The strict `pd_i` chain above `alpha`, ending at the first element
/// without a `pd_i` (normally `pi`).
pub fn chain_i(i: u32, alpha: &Diagram) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut cur = alpha.clone();
    while let Ok(p) = pd(i, &cur) {
        out.push(p.clone());
        cur = p;
    }
    out
}

/// The inclusive chain `alpha, pd_i(alpha), ...`.
pub fn chain_i_incl(i: u32, alpha: &Diagram) -> Vec<Diagram> {
    let mut out = vec![alpha.clone()];
    out.extend(chain_i(i, alpha));
    out
}

/// `alpha ≺_i beta`.
pub fn prec_i(i: u32, alpha: &Diagram, beta: &Diagram) -> bool {
    let mut cur = alpha.clone();
    while let Ok(p) = pd(i, &cur) {
        if &p == beta {
            return true;
        }
        cur = p;
    }
    false
}

/// `alpha ⪯_i beta`.
pub fn preceq_i(i: u32, alpha: &Diagram, beta: &Diagram) -> bool {
    alpha == beta || prec_i(i, alpha, beta)
}

/// `eta_pi`: the element of the subscript chain of `eta` lying in `D_pi`.
pub fn alpha_pi(eta: &Diagram) -> Result<Diagram> {
    if !eta.is_dq() {
        return Err(DiagramError::NotADQTerm(eta.to_string()));
    }
    let mut cur = eta.clone();
    loop {
        match cur.sub() {
            Some(s) if s.is_pi() => return Ok(cur),
            Some(s) if s.is_d() => cur = s.clone(),
            _ => return Err(DiagramError::NoPiAncestor(eta.to_string())),
        }
    }
}

/// The sequence `eta_i^0, ..., eta_i^{lh_i(eta)-1}`.
pub fn decomp_seq(i: u32, eta: &Diagram) -> Result<Vec<Diagram>> {
    let top = alpha_pi(eta)?;
    let first_with_index = |from: &Diagram| {
        chain_i_incl(i, from)
            .into_iter()
            .find(|d| has_index(i, d))
    };
    let mut out = match first_with_index(eta) {
        None => return Ok(vec![top]),
        Some(e) => vec![e],
    };
    loop {
        let last = out.last().unwrap().clone();
        let r = rg(i, &last)?.expect("rg defined for i in In");
        match first_with_index(&r) {
            Some(e) => out.push(e),
            None => {
                out.push(top);
                return Ok(out);
            }
        }
    }
}

/// `lh_i(eta)`.
pub fn lh(i: u32, eta: &Diagram) -> Result<usize> {
    Ok(decomp_seq(i, eta)?.len())
}

/// `alpha ⊲_i beta`.
pub fn lhd(i: u32, alpha: &Diagram, beta: &Diagram) -> bool {
    if !(alpha.is_dq() && beta.is_dq() && has_index(i, alpha)) {
        return false;
    }
    let Ok(Some(r)) = rg(i, alpha) else {
        return false;
    };
    prec_i(i, alpha, beta) && prec_i(i, beta, &r)
}

/// `alpha ⊲^i beta`.
pub fn lhd_up(i: u32, alpha: &Diagram, beta: &Diagram) -> bool {
    if !(alpha.is_dq() && beta.is_dq() && has_index(i, alpha)) {
        return false;
    }
    let (Ok(Some(r)), Ok(p)) = (rg(i, alpha), pd(i + 1, alpha)) else {
        return false;
    };
    preceq_i(i, &r, beta) && prec_i(i, beta, &p)
}

/// `alpha ⊲_i^s beta`: `alpha ≺_i beta`, both ranges defined and equal, and `i ∈ In(alpha)`.
pub fn lhd_s(i: u32, alpha: &Diagram, beta: &Diagram) -> bool {
    if !(alpha.is_dq() && beta.is_dq() && has_index(i, alpha)) {
        return false;
    }
    match (rg(i, alpha), rg(i, beta)) {
        (Ok(Some(x)), Ok(Some(y))) => x == y && prec_i(i, alpha, beta),
        _ => false,
    }
}

/// `alpha ⊴ beta` for the two-level system: `alpha ≺ beta ≺ rg_2(alpha)`.
pub fn lhd_m32(alpha: &Diagram, beta: &Diagram) -> bool {
    if !(alpha.is_dq() && beta.is_dq()) {
        return false;
    }
    let Ok(Some(r)) = rg(2, alpha) else {
        return false;
    };
    prec_dot(alpha, beta) && prec_dot(beta, &r)
}

/// `ppd_i(eta)`.
pub fn ppd(i: u32, eta: &Diagram) -> Result<Diagram> {
    if has_index(i, eta) {
        Ok(rg(i, eta)?.expect("rg defined for i in In"))
    } else {
        pd(i, eta)
    }
}

/// The strict `ppd_i` chain above `alpha`.
pub fn ppd_chain(i: u32, alpha: &Diagram) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut cur = alpha.clone();
    while let Ok(p) = ppd(i, &cur) {
        out.push(p.clone());
        cur = p;
    }
    out
}

/// `gamma ≺_i^p alpha`.
pub fn prec_p(i: u32, gamma: &Diagram, alpha: &Diagram) -> bool {
    if !prec_i(i, gamma, alpha) {
        return false;
    }
    match decomp_seq(i, gamma) {
        Ok(seq) => !seq.iter().any(|g| lhd(i, g, alpha)),
        Err(_) => false,
    }
}

/// `gamma ⪯_i^p alpha`.
pub fn preceq_p(i: u32, gamma: &Diagram, alpha: &Diagram) -> bool {
    gamma == alpha || prec_p(i, gamma, alpha)
}

/// Whether `in_i(x) = in_i(y)`.
pub fn in_eq(i: u32, x: &Diagram, y: &Diagram) -> bool {
    matches!((in_pair(i, x), in_pair(i, y)), (Ok(a), Ok(b)) if a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho0() -> Diagram {
        Diagram::d_unchecked(
            Diagram::pi(),
            vec![Quad::new(3, Diagram::pi(), Diagram::pi(), Diagram::zero())],
            Diagram::zero(),
        )
    }

    #[test]
    fn basic_order() {
        assert_eq!(compare(&Diagram::zero(), &Diagram::omega()), Ordering::Less);
        let d = Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero());
        assert_eq!(compare(&d, &Diagram::omega()), Ordering::Less);
        assert_eq!(compare(&Diagram::one(), &Diagram::nat(2)), Ordering::Less);
        assert_eq!(compare(&Diagram::omega(), &rho0()), Ordering::Less);
        assert_eq!(compare(&rho0(), &Diagram::pi()), Ordering::Less);
    }

    #[test]
    fn prec_dot_chain() {
        let r = rho0();
        assert!(prec_dot(&r, &Diagram::pi()));
        assert!(!prec_dot(&Diagram::pi(), &Diagram::pi()));
        let r1 = Diagram::d_unchecked(
            r.clone(),
            vec![Quad::new(3, Diagram::pi(), r.clone(), Diagram::zero())],
            Diagram::zero(),
        );
        assert!(prec_dot(&r1, &Diagram::pi()));
        assert_eq!(alpha_pi(&r1).unwrap(), r);
        assert_eq!(alpha_pi(&r).unwrap(), r);
    }

    #[test]
    fn prec_i_steps() {
        let r = rho0();
        assert!(prec_i(3, &r, &Diagram::pi()));
        assert!(preceq_i(2, &r, &r));
        assert!(!prec_p(2, &r, &r));
    }

    #[test]
    fn decomp_case_one() {
        let r = rho0();
        assert_eq!(decomp_seq(2, &r).unwrap(), vec![r.clone()]);
        assert!(!lhd(2, &r, &r));
    }
}
