//! Structural lemmas about `≺`, `≺_i`, the accessors and `K_sigma`, `B_tau`.

use super::{Ctx, Tally};
use crate::accessors::{has_index, in_set, pd, rg, st};
use crate::decomposition::st_bar;
use crate::diagram::{Bound, Diagram};
use crate::error::Result;
use crate::relations::{
    alpha_pi, chain_i, chain_i_incl, compare, decomp_seq, in_eq, le, lhd, lhd_up, lt, ppd, ppd_chain, prec_dot,
    prec_i, prec_p, preceq_i, preceq_p, sub_chain,
};
use crate::subterm::{b_above, b_set, k_sigma, set_le, set_le_set, set_lt};

fn rg_of(i: u32, d: &Diagram) -> Option<Diagram> {
    rg(i, d).ok().flatten()
}

fn st_of(i: u32, d: &Diagram) -> Option<Diagram> {
    st(i, d).ok().flatten()
}

fn body(d: &Diagram) -> Diagram {
    d.body().expect("d-term").clone()
}

/// Index levels `2..=N-1` of the system.
fn levels(ctx: &Ctx) -> std::ops::RangeInclusive<u32> {
    2..=ctx.top()
}

/// Elements `beta` with `beta ≺ sigma`, per `sigma`.
fn prec_preds(ctx: &Ctx) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); ctx.uni.len()];
    for d in 0..ctx.uni.len() {
        for s in sub_chain(ctx.e(d)) {
            if let Some(k) = ctx.uni.try_idx(&s) {
                out[k].push(d);
            }
        }
    }
    out
}

pub fn l3_2_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for a in ctx.uni.elements() {
        let sdp = a.sd_plus();
        let sd = a.sd();
        for s in ctx.uni.elements() {
            for b in k_sigma(s, a).iter() {
                t.check(prec_dot(b, s) && sdp.contains(b) && sd.contains(s), || {
                    format!("sigma={s} alpha={a} beta={b}")
                });
            }
        }
    }
    Ok(t)
}

pub fn l3_2_2(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for a in ctx.uni.elements() {
        for b in sub_chain(a) {
            t.check(b.size() < a.size() && lt(a, &b), || format!("alpha={a} beta={b}"));
        }
    }
    Ok(t)
}

pub fn l3_2_5(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let preds = prec_preds(ctx);
    let mut t = ctx.tally();
    let all: Vec<usize> = (0..u.len()).collect();
    let alphas = ctx.third_var(&all, &mut t);
    for s in 0..u.len() {
        for &b in &preds[s] {
            for &a in alphas.iter().filter(|&&a| u.lt(a, s)) {
                let (alpha, sigma, beta) = (u.elem(a), u.elem(s), u.elem(b));
                if set_lt(&k_sigma(sigma, alpha), beta) {
                    t.check(u.lt(a, b), || format!("alpha={alpha} sigma={sigma} beta={beta}"));
                }
            }
        }
    }
    Ok(t)
}

pub fn l3_2_9(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for a in ctx.uni.elements() {
        for s in ctx.uni.elements() {
            t.check(set_le(&k_sigma(s, a), a), || format!("sigma={s} alpha={a}"));
        }
    }
    Ok(t)
}

pub fn l3_2_10(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let mut t = ctx.tally();
    for &a in &ctx.ds {
        let alpha = u.elem(a);
        let mut taus = vec![alpha.clone()];
        taus.extend(sub_chain(alpha).into_iter().filter(|d| d.is_d()));
        for tau in &taus {
            let sigma = tau.sub().expect("d-term");
            for kappa in u.elements().iter().filter(|k| lt(k, sigma)) {
                t.check(set_lt(&k_sigma(kappa, tau), alpha), || format!("alpha={alpha} tau={tau} kappa={kappa}"));
            }
        }
    }
    Ok(t)
}

pub fn od3(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let mut t = ctx.tally();
    let taus: Vec<usize> = u.r_prime().ones().collect();
    let asc = u.ascending();
    for (ra, &a) in asc.iter().enumerate() {
        for &b in &asc[ra..] {
            for &tau in taus.iter().filter(|&&x| u.lt(b, x)) {
                let (x, y, z) = (u.elem(a), u.elem(b), u.elem(tau));
                t.check(set_le_set(&b_set(z, x), &b_set(z, y)), || format!("alpha={x} beta={y} tau={z}"));
            }
        }
    }
    t.note("tau ranges over carrier subscripts above beta");
    Ok(t)
}

pub fn npi11exist(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in &ctx.ds {
        let alpha = ctx.e(a);
        for beta in sub_chain(alpha).into_iter().filter(|d| d.is_d()) {
            t.check(lt(&body(&beta), &body(alpha)), || format!("alpha={alpha} beta={beta}"));
        }
    }
    Ok(t)
}

pub fn l5_3_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &s in &ctx.dq {
        let sigma = ctx.e(s);
        for i in levels(ctx) {
            let chain = chain_i(i, sigma);
            for (k, x) in chain.iter().enumerate() {
                for y in &chain[k + 1..] {
                    t.check(prec_i(i, x, y) && !prec_i(i, y, x), || format!("sigma={sigma} i={i} tau={x} tau'={y}"));
                }
            }
        }
    }
    Ok(t)
}

pub fn l5_3_2(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        for i in levels(ctx) {
            for j in i + 1..=ctx.top() {
                let ok = pd(j, rho).map(|p| prec_i(i, rho, &p));
                t.check_res(ok, || format!("rho={rho} i={i} j={j}"));
            }
        }
    }
    Ok(t)
}

pub fn l5_3_3(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        let ins = in_set(rho);
        for i in levels(ctx) {
            for j in i + 1..=ctx.top() {
                if ins.iter().any(|&k| i <= k && k < j) {
                    continue;
                }
                let ok = pd(i, rho).and_then(|a| Ok(a == pd(j, rho)? && prec_i(j, rho, &a)));
                t.check_res(ok, || format!("rho={rho} i={i} j={j}"));
            }
        }
    }
    Ok(t)
}

pub fn l5_3_4(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        for i in levels(ctx) {
            let ok = pd(i, rho).map(|p| in_eq(i, rho, &p) == !has_index(i, rho));
            t.check_res(ok, || format!("rho={rho} i={i}"));
        }
    }
    Ok(t)
}

pub fn l5_3_5(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &e in &ctx.dq {
        let eta = ctx.e(e);
        let Ok(top) = alpha_pi(eta) else {
            t.check(false, || format!("eta={eta} has no pi-ancestor"));
            continue;
        };
        for i in levels(ctx) {
            let best = chain_i_incl(i, eta)
                .into_iter()
                .filter(|d| !d.is_pi() && lt(d, &Diagram::pi()))
                .max_by(compare);
            t.check(best.as_ref() == Some(&top), || format!("eta={eta} i={i}"));
            if &top != eta {
                t.check(prec_i(i, eta, &top), || format!("alpha={eta} beta={top} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn l5_3_6(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for i in levels(ctx) {
            let chain: Vec<Diagram> = chain_i_incl(i, gamma).into_iter().filter(|d| d.is_dq()).collect();
            let mut kappas: Vec<Diagram> = chain.iter().filter_map(|d| rg_of(i, d)).collect();
            crate::diagram::dedup(&mut kappas);
            for kappa in kappas {
                let sigma = chain
                    .iter()
                    .filter(|d| rg_of(i, d).as_ref() == Some(&kappa))
                    .max_by(|a, b| compare(a, b))
                    .expect("nonempty witness set");
                let ok = has_index(i, sigma) && pd(i, sigma).is_ok_and(|p| p == kappa);
                t.check(ok, || format!("gamma={gamma} kappa={kappa} i={i} sigma={sigma}"));
            }
        }
    }
    Ok(t)
}

/// Runs `f(rho, i, kappa)` over `rho ∈ D^Q` and levels with `kappa = rg_i(rho)` defined.
fn with_range(ctx: &Ctx, mut f: impl FnMut(&Diagram, u32, &Diagram, &mut Tally)) -> Result<Tally> {
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        for i in levels(ctx) {
            if let Some(kappa) = rg_of(i, rho) {
                f(rho, i, &kappa, &mut t);
            }
        }
    }
    Ok(t)
}

pub fn l5_4_1(ctx: &Ctx) -> Result<Tally> {
    with_range(ctx, |rho, i, kappa, t| {
        t.check(prec_i(i, rho, kappa), || format!("rho={rho} i={i}"));
    })
}

pub fn l5_4_2(ctx: &Ctx) -> Result<Tally> {
    with_range(ctx, |rho, i, kappa, t| {
        let ok = st_of(i, rho).is_some_and(|s| Bound::successor_of(kappa).gt(&s));
        t.check(ok, || format!("rho={rho} i={i}"));
    })
}

pub fn l5_4_5(ctx: &Ctx) -> Result<Tally> {
    with_range(ctx, |rho, i, kappa, t| {
        if !has_index(i, rho) {
            return;
        }
        let s = st_of(i, rho).expect("range defined");
        for tau in chain_i(i, rho) {
            if rg_of(i, &tau).as_ref() == Some(kappa) {
                let ok = st_of(i, &tau).is_some_and(|x| lt(&s, &x));
                t.check(ok, || format!("rho={rho} tau={tau} i={i}"));
            }
        }
    })
}

pub fn l5_4_9(ctx: &Ctx) -> Result<Tally> {
    let top = ctx.top();
    with_range(ctx, |rho, i, kappa, t| {
        let Ok(p) = pd(i, rho) else {
            t.check(false, || format!("rho={rho} i={i} pd undefined"));
            return;
        };
        if p.is_pi() {
            let ok = rho.sub().is_some_and(Diagram::is_pi) && in_set(rho) == vec![top];
            t.check(ok, || format!("rho={rho} i={i}"));
        }
        if i < top && has_index(i, rho) {
            let ok = pd(i + 1, rho).is_ok_and(|q| le(kappa, &q) && lt(&q, &Diagram::pi()));
            t.check(ok, || format!("rho={rho} i={i} range bound"));
        }
    })
}

pub fn l5_4_10(ctx: &Ctx) -> Result<Tally> {
    let top = ctx.top();
    with_range(ctx, |rho, i, kappa, t| {
        if !has_index(i, rho) {
            return;
        }
        for j in i + 1..=top {
            if let Some(kj) = rg_of(j, rho) {
                t.check(preceq_i(i, kappa, &kj), || format!("rho={rho} i={i} j={j}"));
            }
        }
    })
}

pub fn l5_4_3(ctx: &Ctx) -> Result<Tally> {
    let top = ctx.top();
    let pi = Diagram::pi();
    with_range(ctx, |rho, i, kappa, t| {
        let s = st_of(i, rho).expect("range defined");
        let a1 = std::iter::once(rho.clone()).chain(sub_chain(rho)).find(|e| e.sub() == Some(kappa));
        let Some(a1) = a1 else {
            t.check(false, || format!("rho={rho} i={i} no alpha_1"));
            return;
        };
        let b1 = body(&a1);
        let cap = if lt(&b1, &pi) { pi.clone() } else { b1.clone() };
        let mut ok = le(&s, &cap) && set_lt(&b_above(kappa, &s), &b1);
        if i < top {
            ok &= lt(&s, &pi);
        } else {
            ok &= le(&s, &b1);
        }
        t.check(ok, || format!("rho={rho} i={i} alpha1={a1}"));
    })
}

pub fn l5_4_6(ctx: &Ctx) -> Result<Tally> {
    with_range(ctx, |rho, i, _kappa, t| {
        let chain = chain_i(i, rho);
        for (k, sigma) in chain.iter().enumerate() {
            for tau in &chain[k + 1..] {
                if in_eq(i, rho, tau) {
                    t.check(in_eq(i, rho, sigma), || format!("rho={rho} sigma={sigma} tau={tau} i={i}"));
                }
            }
        }
    })
}

pub fn l5_4_7(ctx: &Ctx) -> Result<Tally> {
    let top = ctx.top();
    with_range(ctx, |rho, i, kappa, t| {
        if i >= top || !has_index(i, rho) {
            return;
        }
        let Ok(p) = pd(i + 1, rho) else {
            t.check(false, || format!("rho={rho} i={i} pd undefined"));
            return;
        };
        for delta in chain_i_incl(i, kappa) {
            if prec_i(i, &delta, &p) {
                t.check(!has_index(i, &delta), || format!("rho={rho} delta={delta} i={i}"));
            }
        }
        t.check(preceq_i(i + 1, kappa, &p), || format!("rho={rho} i={i} range chain"));
    })
}

pub fn l5_4_8(ctx: &Ctx) -> Result<Tally> {
    with_range(ctx, |rho, i, kappa, t| {
        for tau in chain_i(i, rho).into_iter().filter(|x| lt(x, kappa)) {
            let ok = rg_of(i, &tau).is_some_and(|r| preceq_i(i, &r, kappa));
            t.check(ok, || format!("rho={rho} tau={tau} i={i}"));
        }
    })
}

pub fn n4aro(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    let pi = Diagram::pi();
    for &r in &ctx.ds {
        let rho = ctx.e(r);
        let b = body(rho);
        let cap = if lt(&b, &pi) { pi.clone() } else { b };
        t.check(set_le(&rho.q_set()?, &cap), || format!("rho={rho}"));
    }
    Ok(t)
}

pub fn l5ast3(ctx: &Ctx) -> Result<Tally> {
    let top = ctx.top();
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        let sa = st_of(top, alpha);
        for beta in chain_i(top, alpha).into_iter().filter(|d| d.is_dq()) {
            let ok = matches!((&sa, st_of(top, &beta)), (Some(x), Some(y)) if lt(x, &y));
            t.check(ok, || format!("alpha={alpha} beta={beta}"));
        }
    }
    Ok(t)
}

/// `eta_i^n` sequences of the `D^Q` elements, per level.
fn seqs(ctx: &Ctx, i: u32) -> Vec<(usize, Vec<Diagram>)> {
    ctx.dq.iter().filter_map(|&e| decomp_seq(i, ctx.e(e)).ok().map(|s| (e, s))).collect()
}

pub fn l5ap12(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for i in lower_levels(ctx) {
        let all = seqs(ctx, i);
        for (e, es) in &all {
            for (g, gs) in &all {
                for (n, x) in es.iter().enumerate() {
                    for (m, y) in gs.iter().enumerate() {
                        let same_rg = matches!((rg_of(i, x), rg_of(i, y)), (Some(a), Some(b)) if a == b);
                        if x != y && !same_rg {
                            continue;
                        }
                        let from = usize::from(x != y);
                        let ok = es.len() - n == gs.len() - m
                            && (from..es.len() - n).all(|k| es[n + k] == gs[m + k]);
                        t.check(ok, || format!("eta={} gamma={} i={i} n={n} m={m}", ctx.e(*e), ctx.e(*g)));
                    }
                }
            }
        }
    }
    Ok(t)
}

pub fn l5si_2(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for i in 2..ctx.top() {
        for (e, es) in seqs(ctx, i) {
            let eta = ctx.e(e);
            t.check(preceq_i(i + 1, eta, &es[0]), || format!("eta={eta} i={i} head"));
            for w in es.windows(2) {
                t.check(prec_i(i + 1, &w[0], &w[1]), || format!("eta={eta} i={i} step={}", w[0]));
            }
            for x in &es {
                let (Some(r), Ok(p)) = (rg_of(i, x), pd(i + 1, x)) else { continue };
                for delta in chain_i_incl(i, &r) {
                    if prec_i(i, &delta, &p) {
                        t.check(!has_index(i, &delta), || format!("eta={eta} i={i} delta={delta}"));
                    }
                }
            }
        }
    }
    Ok(t)
}

pub fn l5si_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for i in lower_levels(ctx) {
            let Some(kappa) = rg_of(i, gamma) else { continue };
            for eta in chain_i(i, gamma).into_iter().filter(|e| prec_i(i, e, &kappa)) {
                let ok = decomp_seq(i, &eta).is_ok_and(|es| {
                    es[..es.len() - 1].iter().any(|x| rg_of(i, x).as_ref() == Some(&kappa))
                });
                t.check(ok, || format!("gamma={gamma} eta={eta} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn l3_23_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for i in 2..ctx.top() {
            let Ok(eta) = pd(i, gamma) else { continue };
            if !eta.is_dq() {
                continue;
            }
            let (gs, es) = (decomp_seq(i, gamma)?, decomp_seq(i, &eta)?);
            let rg_g = rg_of(i, gamma);
            let c1 = pd(i + 1, gamma).is_ok_and(|p| p == eta) && gs[0] == es[0];
            let c1_full = c1 && gs == es;
            let c2 = rg_g.as_ref() == Some(&eta) && gs[0] == *gamma && gs.get(1) == Some(&es[0]);
            let c2_full = c2 && es.len() + 1 == gs.len() && es[..] == gs[1..];
            let c3_base = rg_g.as_ref().is_some_and(|r| prec_i(i, &eta, r)) && gs[0] == *gamma;
            let sg = st_of(i, gamma);
            let hit = |m: usize| {
                rg_of(i, &es[m]) == rg_g && matches!((st_of(i, &es[m]), &sg), (Some(a), Some(b)) if lt(b, &a))
            };
            let c3 = c3_base && (0..es.len() - 1).any(hit);
            let c3_full = c3_base
                && (1..es.len()).any(|m| {
                    hit(m - 1) && es.len() - m + 1 == gs.len() && (1..gs.len()).all(|k| es[m - 1 + k] == gs[k])
                });
            let holding = [c1, c2, c3].iter().filter(|&&c| c).count();
            let ok = holding == 1 && (!c1 || c1_full) && (!c2 || c2_full) && (!c3 || c3_full);
            t.check(ok, || format!("gamma={gamma} i={i} cases={c1}/{c2}/{c3}"));
        }
    }
    Ok(t)
}

pub fn l3_23_1_plus(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for i in 2..ctx.top() {
            let gs = decomp_seq(i, gamma)?;
            for eta in chain_i(i, gamma).into_iter().filter(|e| e.is_dq()) {
                let es = decomp_seq(i, &eta)?;
                let c1 = gs[0] == es[0] && prec_i(i + 1, gamma, &eta);
                let c2 = (1..gs.len()).any(|n| gs[n] == es[0] && lhd_up(i, &gs[n - 1], &eta));
                let c3 = (0..gs.len() - 1).any(|n| {
                    prec_i(i, &gs[n], &eta)
                        && lhd(i, &gs[n], &eta)
                        && (0..es.len() - 1).any(|m| {
                            preceq_i(i, &eta, &es[m])
                                && matches!((rg_of(i, &gs[n]), rg_of(i, &es[m])), (Some(a), Some(b)) if a == b)
                        })
                });
                t.check(c1 || c2 || c3, || format!("gamma={gamma} eta={eta} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn rgpilhd(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in ctx.dq.iter().filter(|&&a| ctx.e(a).sub().is_some_and(Diagram::is_pi)) {
        let alpha = ctx.e(a);
        for &g in &ctx.dq {
            for i in 2..ctx.top() {
                t.check(!lhd(i, ctx.e(g), alpha), || format!("gamma={} alpha={alpha} i={i}", ctx.e(g)));
            }
        }
    }
    Ok(t)
}

/// `D^Q` elements together with `pi` when it is in the carrier.
fn dq_and_pi(ctx: &Ctx) -> Vec<usize> {
    let mut v = ctx.dq.clone();
    v.extend(ctx.uni.try_idx(&Diagram::pi()));
    v
}

/// Levels `i` with `i + 1 <= N - 1`.
fn lower_levels(ctx: &Ctx) -> std::ops::Range<u32> {
    2..ctx.top()
}

pub fn precp_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    let targets = dq_and_pi(ctx);
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for i in lower_levels(ctx) {
            let chain = ppd_chain(i, gamma);
            for &a in &targets {
                let alpha = ctx.e(a);
                let p = prec_p(i, gamma, alpha);
                let mut ok = p == chain.contains(alpha);
                if prec_i(i + 1, gamma, alpha) {
                    ok &= p;
                }
                if p {
                    ok &= prec_i(i, gamma, alpha);
                }
                t.check(ok, || format!("gamma={gamma} alpha={alpha} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn precp_2(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        for i in lower_levels(ctx) {
            let mut cands = vec![alpha.clone()];
            cands.extend(ppd_chain(i, alpha).into_iter().filter(|d| d.is_dq()));
            for beta in chain_i(i, alpha) {
                let ok = cands.iter().any(|g| {
                    preceq_p(i, alpha, g) && (ppd(i, g).is_ok_and(|p| p == beta) || lhd(i, g, &beta))
                });
                t.check(ok, || format!("alpha={alpha} beta={beta} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn precp_3(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        for i in lower_levels(ctx) {
            let mut betas = vec![alpha.clone()];
            betas.extend(ppd_chain(i, alpha).into_iter().filter(|d| d.is_dq()));
            for beta in betas {
                let ok = decomp_seq(i, &beta).is_ok_and(|bs| preceq_i(i + 1, alpha, &bs[0]));
                t.check(ok, || format!("alpha={alpha} beta={beta} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn pinbarstb(ctx: &Ctx) -> Result<Tally> {
    let (n, top) = (ctx.n(), ctx.top());
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        let ok = (|| -> Result<bool> {
            let head = decomp_seq(n - 2, alpha)?[0].clone();
            let bpi = body(&alpha_pi(alpha)?);
            Ok(match (st_of(top, alpha), st_of(top, &head)) {
                (Some(x), Some(y)) => le(&x, &y) && le(&y, &bpi),
                _ => false,
            })
        })();
        t.check_res(ok, || format!("alpha={alpha}"));
    }
    Ok(t)
}

pub fn barst(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = ctx.e(g);
        for alpha in ppd_chain(n - 2, gamma).into_iter().filter(|d| d.is_dq()) {
            if !prec_p(n - 2, gamma, &alpha) {
                continue;
            }
            let ok = (|| Ok(st_bar(n, gamma)?.lex_less(&st_bar(n, &alpha)?)))();
            t.check_res(ok, || format!("gamma={gamma} alpha={alpha}"));
        }
    }
    Ok(t)
}
