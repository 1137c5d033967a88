//! Exhaustive and randomized generation of valid diagrams.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::{sort_canonical, Diagram, Kind, Quad};
use crate::error::{DiagramError, Result};
use crate::relations::{compare, sub_chain};
use crate::validity::{shared, System, SystemKind, SystemParams};

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub params: SystemParams,
    pub max_symbols: u32,
    pub max_quad_len: usize,
    pub seed: u64,
    /// Largest number of diagrams a fragment may hold.
    pub cap: usize,
}

impl GenConfig {
    pub fn new(params: SystemParams, max_symbols: u32) -> Self {
        GenConfig { params, max_symbols, max_quad_len: usize::MAX, seed: 0, cap: 200_000 }
    }
}

/// A finite, subdiagram-closed set of valid diagrams in canonical order.
#[derive(Clone)]
pub struct Carrier {
    pub params: SystemParams,
    pub elements: Vec<Diagram>,
}

impl Carrier {
    /// Builds a carrier from arbitrary diagrams, closing under subdiagrams.
    pub fn from_diagrams(params: SystemParams, ds: impl IntoIterator<Item = Diagram>) -> Self {
        let mut all = Vec::new();
        for d in ds {
            all.extend(d.sd_plus());
        }
        crate::diagram::dedup(&mut all);
        sort_canonical(&mut all);
        Carrier { params, elements: all }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn system(&self) -> Arc<System> {
        shared(self.params)
    }

    /// One diagram per line in canonical order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for d in &self.elements {
            s.push_str(d.text());
            s.push('\n');
        }
        s
    }
}

struct Pools {
    by_size: Vec<Vec<Diagram>>,
}

impl Pools {
    fn get(&self, s: u32) -> &[Diagram] {
        self.by_size.get(s as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Every valid diagram with at most `max_symbols` symbols.
pub fn enumerate_fragment(cfg: &GenConfig) -> Result<Carrier> {
    let sys = shared(cfg.params);
    let mut pools = Pools { by_size: vec![Vec::new()] };
    let mut total = 0usize;
    for s in 1..=cfg.max_symbols {
        let cands = candidates(cfg, &pools, s);
        let mut valid: Vec<Diagram> = cands.into_par_iter().filter(|d| sys.is_valid(d)).collect();
        crate::diagram::dedup(&mut valid);
        sort_canonical(&mut valid);
        total += valid.len();
        if total > cfg.cap {
            return Err(DiagramError::BudgetExceeded(cfg.cap));
        }
        pools.by_size.push(valid);
    }
    let elements = pools.by_size.into_iter().flatten().collect();
    Ok(Carrier { params: cfg.params, elements })
}

fn candidates(cfg: &GenConfig, pools: &Pools, s: u32) -> Vec<Diagram> {
    let mut out = Vec::new();
    if s == 1 {
        return vec![Diagram::zero(), Diagram::omega(), Diagram::pi()];
    }
    // sums: principal head + rest
    for s1 in 1..s.saturating_sub(1) {
        let s2 = s - s1 - 1;
        for p in pools.get(s1).iter().filter(|p| p.is_additive_principal()) {
            for rest in pools.get(s2).iter().filter(|r| !r.is_zero()) {
                let lead = rest.lead().unwrap();
                if compare(&lead, p) != std::cmp::Ordering::Greater {
                    let mut cs = vec![p.clone()];
                    cs.extend(rest.principal_components());
                    out.push(Diagram::raw(Kind::Sum(cs)));
                }
            }
        }
    }
    // Veblen
    for s1 in 1..s.saturating_sub(1) {
        let s2 = s - 1 - s1;
        for a in pools.get(s1) {
            for b in pools.get(s2) {
                let v = Diagram::raw(Kind::Veblen(a.clone(), b.clone()));
                if v.is_locally_normal() {
                    out.push(v);
                }
            }
        }
    }
    // successors
    for sb in 1..s {
        for b in pools.get(sb).iter().filter(|b| b.is_dq()) {
            out.push(Diagram::raw(Kind::Suc(b.clone(), s - sb)));
        }
    }
    // collapses
    for ss in 1..s.saturating_sub(1) {
        for sigma in pools.get(ss) {
            if sigma.is_omega() || sigma.is_suc() {
                let sa = s - 1 - ss;
                for a in pools.get(sa) {
                    out.push(Diagram::d_unchecked(sigma.clone(), vec![], a.clone()));
                }
            }
            if sigma.is_pi() || sigma.is_dq() {
                for qsize in 4..(s - ss) {
                    let sa = s - 1 - ss - qsize;
                    if sa == 0 {
                        continue;
                    }
                    for q in quad_lists(cfg, pools, sigma, qsize) {
                        for a in pools.get(sa) {
                            out.push(Diagram::d_unchecked(sigma.clone(), q.clone(), a.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Candidate quadruple sequences of total size `qsize` for subscript `sigma`.
fn quad_lists(cfg: &GenConfig, pools: &Pools, sigma: &Diagram, qsize: u32) -> Vec<Vec<Quad>> {
    let mut above = vec![sigma.clone()];
    above.extend(sub_chain(sigma));
    let mut out = Vec::new();
    match cfg.params.system {
        SystemKind::OdM32 => {
            for kappa in &above {
                let rest = qsize as i64 - 1 - kappa.size() as i64 - sigma.size() as i64;
                if rest >= 1 {
                    for nu in pools.get(rest as u32) {
                        out.push(vec![Quad::new(2, kappa.clone(), sigma.clone(), nu.clone())]);
                    }
                }
            }
        }
        SystemKind::OdPiN => {
            let top = cfg.params.n - 1;
            let lower: Vec<u32> = (2..top).collect();
            for mask in 0u32..(1 << lower.len()) {
                let mut js: Vec<u32> =
                    lower.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, j)| *j).collect();
                js.push(top);
                if js.len() > cfg.max_quad_len {
                    continue;
                }
                let mut acc = Vec::new();
                fill_quads(pools, sigma, (&above, &above), true, &js, 0, qsize as i64, &mut acc, &mut out);
            }
        }
        SystemKind::OdSuper => {
            let mut regs: Vec<Diagram> = vec![Diagram::pi()];
            for v in &pools.by_size {
                regs.extend(v.iter().filter(|d| d.is_dq()).cloned());
            }
            for len in 1..=(cfg.params.n - 2).min(cfg.max_quad_len.min(u32::MAX as usize) as u32) {
                for js in increasing(2, cfg.params.n - 1, len as usize) {
                    let mut acc = Vec::new();
                    fill_quads(pools, sigma, (&regs, &regs), false, &js, 0, qsize as i64, &mut acc, &mut out);
                }
            }
        }
    }
    out
}

fn increasing(lo: u32, hi: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in increasing(first + 1, hi, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_quads(
    pools: &Pools,
    sigma: &Diagram,
    (kappas, taus): (&[Diagram], &[Diagram]),
    shaped: bool,
    js: &[u32],
    m: usize,
    remaining: i64,
    acc: &mut Vec<Quad>,
    out: &mut Vec<Vec<Quad>>,
) {
    let left = (js.len() - m) as i64;
    if left == 0 {
        if remaining == 0 {
            out.push(acc.clone());
        }
        return;
    }
    if remaining < 4 * left {
        return;
    }
    let last = m + 1 == js.len();
    let pi_only = [Diagram::pi()];
    let sig_only = [sigma.clone()];
    let ks: &[Diagram] = if shaped && last { &pi_only } else { kappas };
    let ts: &[Diagram] = if shaped && m == 0 { &sig_only } else { taus };
    for k in ks {
        for t in ts {
            let base = 1 + k.size() as i64 + t.size() as i64;
            let max_nu = remaining - base - 4 * (left - 1);
            for sn in 1..=max_nu.max(0) {
                for nu in pools.get(sn as u32) {
                    acc.push(Quad::new(js[m], k.clone(), t.clone(), nu.clone()));
                    fill_quads(pools, sigma, (kappas, taus), shaped, js, m + 1, remaining - base - sn, acc, out);
                    acc.pop();
                }
            }
        }
    }
}

/// Naive generation: every raw term up to the bound, filtered by normality and validity.
pub fn oracle_fragment(params: SystemParams, max_symbols: u32) -> Vec<Diagram> {
    let sys = shared(params);
    let mut by_size: Vec<Vec<Diagram>> = vec![Vec::new()];
    for s in 1..=max_symbols {
        let mut v = Vec::new();
        if s == 1 {
            v.extend([Diagram::zero(), Diagram::omega(), Diagram::pi()]);
        }
        // ordered lists of >= 2 components, each of any kind
        for parts in compositions(s, &by_size) {
            v.push(Diagram::raw(Kind::Sum(parts)));
        }
        for s1 in 1..s {
            if s < s1 + 2 {
                continue;
            }
            let s2 = s - 1 - s1;
            for a in &by_size[s1 as usize] {
                for b in &by_size[s2 as usize] {
                    v.push(Diagram::raw(Kind::Veblen(a.clone(), b.clone())));
                }
            }
        }
        for sb in 1..s {
            for b in &by_size[sb as usize] {
                v.push(Diagram::raw(Kind::Suc(b.clone(), s - sb)));
            }
        }
        for ss in 1..s {
            for sa in 1..s {
                let rest = s as i64 - 1 - ss as i64 - sa as i64;
                if rest < 0 {
                    continue;
                }
                for q in raw_quads(params, &by_size, rest as u32) {
                    for sigma in &by_size[ss as usize] {
                        for a in &by_size[sa as usize] {
                            v.push(Diagram::d_unchecked(sigma.clone(), q.clone(), a.clone()));
                        }
                    }
                }
            }
        }
        by_size.push(v);
    }
    let mut out: Vec<Diagram> = by_size
        .into_iter()
        .flatten()
        .filter(|d| d.is_normal() && sys.is_valid(d))
        .collect();
    crate::diagram::dedup(&mut out);
    sort_canonical(&mut out);
    out
}

fn compositions(s: u32, by_size: &[Vec<Diagram>]) -> Vec<Vec<Diagram>> {
    // lists of length >= 2 with sizes summing to s - (len - 1)
    let mut out = Vec::new();
    fn go(budget: u32, by_size: &[Vec<Diagram>], acc: &mut Vec<Diagram>, out: &mut Vec<Vec<Diagram>>) {
        for s1 in 1..=budget {
            if s1 as usize >= by_size.len() {
                break;
            }
            for d in &by_size[s1 as usize] {
                acc.push(d.clone());
                if s1 == budget {
                    if acc.len() >= 2 {
                        out.push(acc.clone());
                    }
                } else if budget > s1 + 1 {
                    go(budget - s1 - 1, by_size, acc, out);
                }
                acc.pop();
            }
        }
    }
    let mut acc = Vec::new();
    go(s, by_size, &mut acc, &mut out);
    out
}

fn raw_quads(params: SystemParams, by_size: &[Vec<Diagram>], total: u32) -> Vec<Vec<Quad>> {
    let mut out = Vec::new();
    let max_j = params.n.max(3);
    fn go(
        total: u32,
        max_j: u32,
        by_size: &[Vec<Diagram>],
        acc: &mut Vec<Quad>,
        out: &mut Vec<Vec<Quad>>,
    ) {
        if total == 0 {
            out.push(acc.clone());
            return;
        }
        for sk in 1..total {
            for st in 1..total {
                for sn in 1..total {
                    if 1 + sk + st + sn > total {
                        continue;
                    }
                    let rest = total - 1 - sk - st - sn;
                    for j in 0..=max_j {
                        for k in &by_size[sk as usize] {
                            for t in &by_size[st as usize] {
                                for n in &by_size[sn as usize] {
                                    acc.push(Quad::new(j, k.clone(), t.clone(), n.clone()));
                                    go(rest, max_j, by_size, acc, out);
                                    acc.pop();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut acc = Vec::new();
    go(total, max_j, by_size, &mut acc, &mut out);
    out
}

/// Reproducible random valid diagrams, biased toward long subscript chains.
///
/// Subscripts are drawn from previously generated collapses, `kappa` and `tau`
/// from the subscript chain, and bodies are usually placed just above the
/// exposed bodies so that the collapsing condition can hold.
pub fn random_diagrams(cfg: &GenConfig, count: usize) -> Vec<Diagram> {
    let sys = shared(cfg.params);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let small: Vec<Diagram> = enumerate_fragment(&GenConfig { max_symbols: cfg.max_symbols.clamp(1, 5), ..cfg.clone() })
        .map(|c| c.elements)
        .unwrap_or_default();
    let bumps: Vec<Diagram> = small.iter().filter(|d| !d.is_zero() && d.size() <= 3).cloned().collect();
    let mut regs: Vec<Diagram> = vec![Diagram::pi()];
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < count.max(1) * 2000 {
        attempts += 1;
        let sigma = if rng.gen_bool(0.6) {
            regs[regs.len() - 1 - rng.gen_range(0..regs.len().min(4))].clone()
        } else {
            regs.choose(&mut rng).unwrap().clone()
        };
        let mut above = vec![sigma.clone()];
        above.extend(sub_chain(&sigma));
        let quads = random_quads(cfg, &mut rng, &sigma, &above, &small);
        let body = if rng.gen_bool(0.85) {
            let mut xs: Vec<Diagram> = quads.iter().flat_map(|q| q.components().map(|c| c.clone())).collect();
            xs.push(sigma.clone());
            let b = crate::subterm::b_above_set(&sigma, &xs);
            crate::subterm::set_max(&b).add(bumps.choose(&mut rng).unwrap())
        } else {
            small.choose(&mut rng).unwrap().clone()
        };
        let d = Diagram::d_unchecked(sigma, quads, body);
        if !regs.contains(&d) && sys.is_valid(&d) {
            regs.push(d.clone());
            out.push(d);
        }
    }
    out
}

fn random_quads(
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
    sigma: &Diagram,
    above: &[Diagram],
    small: &[Diagram],
) -> Vec<Quad> {
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.4) {
            Diagram::zero()
        } else {
            small.choose(rng).unwrap().clone()
        }
    };
    match cfg.params.system {
        SystemKind::OdM32 => {
            let kappa = above.choose(rng).unwrap().clone();
            vec![Quad::new(2, kappa, sigma.clone(), pick(rng))]
        }
        _ => {
            let top = cfg.params.n - 1;
            let mut js: Vec<u32> = (2..top).filter(|_| rng.gen_bool(0.5)).collect();
            js.push(top);
            let l = js.len() - 1;
            let below_pi: Vec<Diagram> = above.iter().filter(|a| !a.is_pi()).cloned().collect();
            js.iter()
                .enumerate()
                .map(|(m, &j)| {
                    let kappa = if m == l { Diagram::pi() } else { above.choose(rng).unwrap().clone() };
                    let tau = if m == 0 {
                        sigma.clone()
                    } else if m == l && !sigma.is_pi() {
                        below_pi.choose(rng).unwrap().clone()
                    } else {
                        above.choose(rng).unwrap().clone()
                    };
                    Quad::new(j, kappa, tau, pick(rng))
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one() {
        let c = enumerate_fragment(&GenConfig::new(SystemParams::pi_n(4), 1)).unwrap();
        assert_eq!(c.to_text(), "0\nOm\npi\n");
    }

    #[test]
    fn contains_base_collapse() {
        let c = enumerate_fragment(&GenConfig::new(SystemParams::pi_n(4), 3)).unwrap();
        assert!(c.elements.contains(&crate::text::parse("d(Om;;0)").unwrap()));
    }

    #[test]
    fn budget() {
        let mut cfg = GenConfig::new(SystemParams::pi_n(4), 5);
        cfg.cap = 5;
        assert!(matches!(enumerate_fragment(&cfg), Err(DiagramError::BudgetExceeded(5))));
    }

    fn agrees(params: SystemParams, bound: u32) {
        let c = enumerate_fragment(&GenConfig::new(params, bound)).unwrap();
        assert_eq!(c.elements, oracle_fragment(params, bound), "{params} bound {bound}");
    }

    #[test]
    fn oracle_agreement_small() {
        agrees(SystemParams::od(4), 8);
        agrees(SystemParams::m32(), 8);
        agrees(SystemParams::pi_n(5), 8);
    }
}
