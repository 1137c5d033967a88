//! The finite subdiagram functionals `K_sigma`, `K`, `K^d`, `B_tau` and `B_{>sigma}`,
//! plus the set-order comparisons used against them.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::diagram::{dedup, Diagram, Kind};
use crate::relations::{compare, prec_dot};

/// A finite set of diagrams, sorted by id without duplicates.
pub type DSet = Arc<Vec<Diagram>>;

fn k_memo() -> &'static DashMap<(u32, u32), DSet> {
    static M: OnceLock<DashMap<(u32, u32), DSet>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn b_memo() -> &'static DashMap<(u32, u32), DSet> {
    static M: OnceLock<DashMap<(u32, u32), DSet>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn union_into(out: &mut Vec<Diagram>, more: &[Diagram]) {
    out.extend(more.iter().cloned());
}

fn finish(mut v: Vec<Diagram>) -> DSet {
    dedup(&mut v);
    Arc::new(v)
}

/// `K_sigma(alpha)`.
pub fn k_sigma(sigma: &Diagram, alpha: &Diagram) -> DSet {
    let key = (sigma.id(), alpha.id());
    if let Some(v) = k_memo().get(&key).map(|r| r.clone()) {
        return v;
    }
    let mut out = Vec::new();
    match alpha.kind() {
        Kind::Zero | Kind::Omega | Kind::Pi => {}
        Kind::D(tau, _, _) => {
            if tau == sigma || prec_dot(tau, sigma) {
                out.push(alpha.clone());
            } else if compare(sigma, tau) == Ordering::Less {
                union_into(&mut out, &k_sigma(sigma, tau));
                for c in alpha.c_set().expect("d-term") {
                    union_into(&mut out, &k_sigma(sigma, &c));
                }
            } else {
                union_into(&mut out, &k_sigma(sigma, tau));
            }
        }
        _ => {
            for c in alpha.children() {
                union_into(&mut out, &k_sigma(sigma, &c));
            }
        }
    }
    let v = finish(out);
    k_memo().insert(key, v.clone());
    v
}

/// `K_sigma` of a set: the union over its members.
pub fn k_sigma_set<'a, I: IntoIterator<Item = &'a Diagram>>(sigma: &Diagram, xs: I) -> DSet {
    let mut out = Vec::new();
    for x in xs {
        union_into(&mut out, &k_sigma(sigma, x));
    }
    finish(out)
}

/// `U{K_sigma nu : sigma <= kappa}` over all diagrams `sigma`.
///
/// `tau ⪯ sigma` with `tau` a subscript inside `nu` forces `sigma ∈ sd^+(nu)`.
/// For every other `sigma` only the tests `sigma < tau` matter, and those make
/// `K_sigma nu` grow as `sigma` shrinks, so `K_0 nu` covers them all.
pub fn k_union_upto(kappa: &Diagram, nu: &Diagram) -> DSet {
    let mut out = k_sigma(&Diagram::zero(), nu).to_vec();
    for s in nu.sd_plus() {
        if compare(&s, kappa) != Ordering::Greater {
            union_into(&mut out, &k_sigma(&s, nu));
        }
    }
    finish(out)
}

/// `K^d(alpha)`: the outermost d-subterms.
pub fn k_d(alpha: &Diagram) -> DSet {
    let mut out = Vec::new();
    collect_outer(alpha, &mut out, &|d| d.is_d());
    finish(out)
}

/// `K(alpha)`: the outermost subterms in `SC` or `D`.
pub fn k_all(alpha: &Diagram) -> DSet {
    let mut out = Vec::new();
    collect_outer(alpha, &mut out, &|d| d.is_d());
    finish(out)
}

fn collect_outer(alpha: &Diagram, out: &mut Vec<Diagram>, stop: &dyn Fn(&Diagram) -> bool) {
    if stop(alpha) {
        out.push(alpha.clone());
        return;
    }
    if let Kind::Suc(b, _) = alpha.kind() {
        collect_outer(b, out, stop);
        return;
    }
    for c in alpha.children() {
        collect_outer(&c, out, stop);
    }
}

/// `B_tau(alpha)`.
pub fn b_set(tau: &Diagram, alpha: &Diagram) -> DSet {
    let key = (tau.id(), alpha.id());
    if let Some(v) = b_memo().get(&key).map(|r| r.clone()) {
        return v;
    }
    let mut out = Vec::new();
    match alpha.kind() {
        Kind::Zero | Kind::Omega | Kind::Pi => {}
        Kind::D(rho, q, a) => {
            if compare(rho, tau) != Ordering::Less {
                out.push(a.clone());
                union_into(&mut out, &b_set(tau, a));
                for x in q {
                    for c in x.components() {
                        union_into(&mut out, &b_set(tau, c));
                    }
                }
                union_into(&mut out, &b_set(tau, rho));
            }
        }
        _ => {
            for c in alpha.children() {
                union_into(&mut out, &b_set(tau, &c));
            }
        }
    }
    let v = finish(out);
    b_memo().insert(key, v.clone());
    v
}

/// `B_{>sigma}(alpha)`: the union of `B_tau(alpha)` over regular `tau > sigma`
/// occurring in `sd^+(alpha)`.
pub fn b_above(sigma: &Diagram, alpha: &Diagram) -> DSet {
    b_above_set(sigma, std::slice::from_ref(alpha))
}

/// `B_{>sigma}` of a set.
pub fn b_above_set(sigma: &Diagram, xs: &[Diagram]) -> DSet {
    let mut taus = Vec::new();
    for x in xs {
        taus.extend(x.sd_plus().into_iter().filter(|t| t.is_regular()));
    }
    dedup(&mut taus);
    let mut out = Vec::new();
    for t in taus.iter().filter(|t| compare(t, sigma) == Ordering::Greater) {
        for x in xs {
            union_into(&mut out, &b_set(t, x));
        }
    }
    finish(out)
}

/// `max Z`, with `max {} = 0`.
pub fn set_max(zs: &[Diagram]) -> Diagram {
    zs.iter()
        .cloned()
        .max_by(compare)
        .unwrap_or_else(Diagram::zero)
}

/// `Y < beta`: every member is below `beta`.
pub fn set_lt(ys: &[Diagram], beta: &Diagram) -> bool {
    ys.iter().all(|y| compare(y, beta) == Ordering::Less)
}

/// `Z <= beta`: every member is at most `beta`.
pub fn set_le(zs: &[Diagram], beta: &Diagram) -> bool {
    zs.iter().all(|z| compare(z, beta) != Ordering::Greater)
}

/// `Z <= Y`: `max Z <= max Y`.
pub fn set_le_set(zs: &[Diagram], ys: &[Diagram]) -> bool {
    compare(&set_max(zs), &set_max(ys)) != Ordering::Greater
}

/// `Z < Y`: `max Z < max Y`.
pub fn set_lt_set(zs: &[Diagram], ys: &[Diagram]) -> bool {
    compare(&set_max(zs), &set_max(ys)) == Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Quad;

    fn rho0() -> Diagram {
        Diagram::d_unchecked(
            Diagram::pi(),
            vec![Quad::new(3, Diagram::pi(), Diagram::pi(), Diagram::zero())],
            Diagram::omega(),
        )
    }

    #[test]
    fn k_sigma_cases() {
        let d = Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero());
        assert_eq!(*k_sigma(&Diagram::omega(), &d), vec![d.clone()]);
        assert!(k_sigma(&Diagram::pi(), &Diagram::omega()).is_empty());
        assert!(k_sigma(&Diagram::pi(), &d).is_empty());
    }

    #[test]
    fn k_d_outermost() {
        assert!(k_d(&Diagram::zero()).is_empty());
        assert_eq!(*k_d(&rho0()), vec![rho0()]);
        let d = Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero());
        let s = Diagram::raw(Kind::Sum(vec![d.clone(), Diagram::one()]));
        assert_eq!(*k_d(&s), vec![d]);
    }

    #[test]
    fn b_above_examples() {
        assert!(b_above(&Diagram::pi(), &Diagram::pi()).is_empty());
        assert!(b_above(&Diagram::pi(), &Diagram::zero()).is_empty());
        assert_eq!(*b_above(&Diagram::omega(), &rho0()), vec![Diagram::omega()]);
    }

    #[test]
    fn set_conventions() {
        assert!(set_lt(&[], &Diagram::zero()));
        assert_eq!(set_max(&[]), Diagram::zero());
        assert!(set_le_set(&[], &[]));
    }
}
