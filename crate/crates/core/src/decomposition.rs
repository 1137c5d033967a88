//! Decompositions `alpha(s)` along index sequences and the relations built on them.
//!
//! Every operation takes the system bound `n` explicitly; index sequences are
//! expected to satisfy `2 <= d(s) <= ell(s) <= n - 2`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::accessors::{has_index, rg, st};
use crate::diagram::Diagram;
use crate::error::{DiagramError, Result};
use crate::index_seq::{self, IndexSeq};
use crate::relations::{alpha_pi, chain_i_incl, compare, decomp_seq, lhd, preceq_i, preceq_p, prec_p};

fn memo() -> &'static DashMap<(u32, IndexSeq), Diagram> {
    static M: OnceLock<DashMap<(u32, IndexSeq), Diagram>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn defect(msg: String) -> DiagramError {
    DiagramError::DecompositionDefect(msg)
}

fn nth(i: u32, alpha: &Diagram, k: usize) -> Result<Option<Diagram>> {
    Ok(decomp_seq(i, alpha)?.get(k).cloned())
}

fn min_of(xs: impl IntoIterator<Item = Diagram>) -> Option<Diagram> {
    xs.into_iter().min_by(compare)
}

/// Whether the Case 1 condition holds for unitary non-null `s`.
pub fn case_one_holds(alpha: &Diagram, s: &IndexSeq) -> Result<bool> {
    let top = s.ell() - 1;
    let head = nth(top, alpha, 0)?.expect("nonempty decomposition");
    let range = rg(top, alpha).ok().flatten();
    for i in s.d()..top {
        let ai = nth(i, alpha, 0)?.expect("nonempty decomposition");
        if compare(&head, &ai) != Ordering::Less {
            return Ok(false);
        }
        if let Some(r) = &range {
            if compare(r, &ai) == Ordering::Greater {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn decompose_unitary(alpha: &Diagram, s: &IndexSeq) -> Result<Diagram> {
    if s.is_null() {
        return Ok(alpha.clone());
    }
    if !case_one_holds(alpha, s)? {
        return alpha_pi(alpha);
    }
    let ell = s.ell();
    let top = ell - 1;
    let head = nth(top, alpha, 0)?.expect("nonempty decomposition");
    let mut bounds: Vec<Diagram> = (s.d()..top)
        .map(|i| nth(i, alpha, 0).map(|x| x.expect("nonempty decomposition")))
        .collect::<Result<_>>()?;
    bounds.extend(nth(top, alpha, 1)?);
    let bound = min_of(bounds);
    let ceiling = alpha_pi(alpha)?;
    chain_i_incl(ell, &head)
        .into_iter()
        .filter(|d| d.is_dq() && preceq_p(ell, &head, d))
        .filter(|d| match &bound {
            Some(b) => compare(d, b) == Ordering::Less,
            None => compare(d, &ceiling) != Ordering::Greater,
        })
        .max_by(compare)
        .ok_or_else(|| defect(format!("{alpha} at {s}: empty range")))
}

/// `alpha(s)`.
pub fn decompose(alpha: &Diagram, s: &IndexSeq) -> Result<Diagram> {
    if !alpha.is_dq() {
        return Err(DiagramError::NotADQTerm(alpha.to_string()));
    }
    let key = (alpha.id(), s.clone());
    if let Some(v) = memo().get(&key) {
        return Ok(v.clone());
    }
    let mut cur = alpha.clone();
    for part in s.unitary_decomp() {
        cur = decompose_unitary(&cur, &part)?;
    }
    memo().insert(key, cur.clone());
    Ok(cur)
}

/// Whether some `gamma` with `a ⪯_i gamma ≺_i b` has `i ∈ In(gamma)`.
fn has_indexed_between(i: u32, a: &Diagram, b: &Diagram) -> bool {
    if !preceq_i(i, a, b) || a == b {
        return false;
    }
    chain_i_incl(i, a).into_iter().take_while(|g| g != b).any(|g| has_index(i, &g))
}

/// `s[k; alpha, beta]` over `[k, n - 2)`.
pub fn induced_seq(n: u32, k: u32, alpha: &Diagram, beta: &Diagram) -> Result<IndexSeq> {
    let end = n.saturating_sub(2).max(k);
    let mut s = IndexSeq::empty(k);
    for i in k..end {
        let a = decompose(alpha, &s)?;
        let b = decompose(beta, &s)?;
        let bit = has_indexed_between(i, &a, &b);
        s = s.concat(&IndexSeq::new(i, vec![bit]))?;
    }
    Ok(s)
}

/// `t ⊆ s[alpha, beta]`.
pub fn subseteq_s(n: u32, t: &IndexSeq, alpha: &Diagram, beta: &Diagram) -> Result<bool> {
    if t.ell() > n.saturating_sub(2).max(t.d()) {
        return Err(DiagramError::BoundsMismatch(format!("{t} exceeds N-2 for N={n}")));
    }
    let full = induced_seq(n, t.d(), alpha, beta)?;
    Ok(t.is_initial_segment_of(&full))
}

fn prefixes_precp(
    n: u32,
    s: &IndexSeq,
    alpha: &Diagram,
    beta: &Diagram,
    keep: impl Fn(&IndexSeq) -> bool,
) -> Result<bool> {
    if !subseteq_s(n, s, alpha, beta)? {
        return Ok(false);
    }
    for t in s.prefixes().filter(|t| keep(t)) {
        if !prec_p(t.ell(), &decompose(alpha, &t)?, &decompose(beta, &t)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `alpha ≺_s beta`.
pub fn prec_s(n: u32, s: &IndexSeq, alpha: &Diagram, beta: &Diagram) -> Result<bool> {
    prefixes_precp(n, s, alpha, beta, |_| true)
}

/// `alpha ≺_s^- beta` relative to the prefix `u`, which must end where `s` starts.
pub fn prec_s_minus(n: u32, u: &IndexSeq, s: &IndexSeq, alpha: &Diagram, beta: &Diagram) -> Result<bool> {
    let bound = u.concat(s)?.count();
    prefixes_precp(n, s, alpha, beta, |t| t.count() < bound)
}

/// `alpha ⊲_s beta`.
pub fn lhd_seq(n: u32, s: &IndexSeq, alpha: &Diagram, beta: &Diagram) -> Result<bool> {
    if !subseteq_s(n, s, alpha, beta)? {
        return Ok(false);
    }
    if s.ell() > s.d() && !prec_s(n, &s.restrict(s.ell() - 1), alpha, beta)? {
        return Ok(false);
    }
    Ok(lhd(s.ell(), &decompose(alpha, s)?, &decompose(beta, s)?))
}

/// All `v` in `I` with `d(v) = i`.
fn seqs_from(n: u32, i: u32) -> Vec<IndexSeq> {
    index_seq::all_in(n).into_iter().filter(|v| v.d() == i).collect()
}

/// Whether a chain `alpha_K ⊲_{v_{K-1}} ... ⊲_{v_0} alpha_0` exists with `d(v_k) = i`,
/// `alpha_K = target` and `alpha_0 = target_i^0`. Returns the chain from
/// `alpha_0` down to `target` when found.
pub fn lhd_chain_witness(n: u32, i: u32, target: &Diagram) -> Result<Option<Vec<(Diagram, Option<IndexSeq>)>>> {
    let start = nth(i, target, 0)?.expect("nonempty decomposition");
    let mut pool: Vec<Diagram> = chain_i_incl(i, target)
        .into_iter()
        .filter(|d| d.is_dq())
        .collect();
    pool.extend(start.sd_plus().into_iter().filter(|d| d.is_dq()));
    pool.push(start.clone());
    crate::diagram::dedup(&mut pool);
    let vs = seqs_from(n, i);
    let mut seen = HashSet::new();
    let mut back: Vec<(Diagram, Option<(usize, IndexSeq)>)> = vec![(start.clone(), None)];
    let mut queue = VecDeque::from([0usize]);
    seen.insert(start.id());
    while let Some(at) = queue.pop_front() {
        let x = back[at].0.clone();
        if &x == target {
            let mut path = Vec::new();
            let mut cur = Some(at);
            while let Some(c) = cur {
                let (d, link) = &back[c];
                path.push((d.clone(), link.as_ref().map(|l| l.1.clone())));
                cur = link.as_ref().map(|l| l.0);
            }
            path.reverse();
            return Ok(Some(path));
        }
        for y in &pool {
            if seen.contains(&y.id()) {
                continue;
            }
            for v in &vs {
                if lhd_seq(n, v, y, &x)? {
                    seen.insert(y.id());
                    back.push((y.clone(), Some((at, v.clone()))));
                    queue.push_back(back.len() - 1);
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// `alpha ⊲_s^+ beta`.
pub fn lhd_seq_plus(n: u32, s: &IndexSeq, alpha: &Diagram, beta: &Diagram) -> Result<bool> {
    if !lhd_seq(n, s, alpha, beta)? {
        return Ok(false);
    }
    for i in s.d()..s.ell() {
        if s.get(i) != Some(true) {
            continue;
        }
        let target = decompose(alpha, &s.restrict(i))?;
        if has_index(i, &target) {
            continue;
        }
        if lhd_chain_witness(n, i, &target)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The pair `<st_{N-1}(alpha_{N-2}^0), st_{N-1}(alpha)>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StBar {
    pub first: Diagram,
    pub second: Diagram,
}

impl StBar {
    /// Lexicographic strict order on the pair.
    pub fn lex_less(&self, other: &StBar) -> bool {
        match compare(&self.first, &other.first) {
            Ordering::Less => true,
            Ordering::Equal => compare(&self.second, &other.second) == Ordering::Less,
            Ordering::Greater => false,
        }
    }
}

/// `st-bar_{N-1}(alpha)`.
pub fn st_bar(n: u32, alpha: &Diagram) -> Result<StBar> {
    let head = nth(n - 2, alpha, 0)?.expect("nonempty decomposition");
    let get = |x: &Diagram| {
        st(n - 1, x)?.ok_or_else(|| defect(format!("st_{} undefined at {x}", n - 1)))
    };
    Ok(StBar { first: get(&head)?, second: get(alpha)? })
}

/// `gamma ≺_{N-1}^{pl} alpha`: compare `gamma(s)` and `alpha(s)` over `I(2, N-2)`
/// from the lex-greatest `s` down; the first difference decides via `≺_{N-2}^p`.
pub fn prec_n_pl(n: u32, gamma: &Diagram, alpha: &Diagram) -> Result<bool> {
    for s in index_seq::initial_full(n).into_iter().rev() {
        let g = decompose(gamma, &s)?;
        let a = decompose(alpha, &s)?;
        if g != a {
            return Ok(prec_p(n - 2, &g, &a));
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn base() -> Diagram {
        parse("d(pi;[3,pi,pi,0];0)").unwrap()
    }

    #[test]
    fn null_sequence_is_identity() {
        let a = base();
        assert_eq!(decompose(&a, &IndexSeq::empty(2)).unwrap(), a);
        assert_eq!(decompose(&a, &"s[2,4):00".parse().unwrap()).unwrap(), a);
    }

    #[test]
    fn rejects_non_dq() {
        assert!(decompose(&Diagram::omega(), &IndexSeq::empty(2)).is_err());
    }

    #[test]
    fn induced_seq_empty_for_n4() {
        let a = base();
        assert_eq!(induced_seq(4, 2, &a, &a).unwrap(), IndexSeq::empty(2));
    }

    #[test]
    fn prec_n_pl_irreflexive() {
        let a = base();
        assert!(!prec_n_pl(4, &a, &a).unwrap());
    }

    #[test]
    fn st_bar_base() {
        let a = base();
        let sb = st_bar(4, &a).unwrap();
        assert_eq!(sb.first, Diagram::zero());
        assert_eq!(sb.second, Diagram::zero());
    }
}
