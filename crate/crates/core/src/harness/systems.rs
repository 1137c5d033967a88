//! Operator hypotheses, stage comparisons and the two-level Mahlo system.

use super::{system_operator, Ctx, Tally};
use crate::accessors::{rg, st};
use crate::decomposition::{induced_seq, prec_s};
use crate::diagram::Diagram;
use crate::error::Result;
use crate::operators::{mahlo_height, Operator, PiNOps, Set, StageMap};
use crate::relations::{lt, prec_dot, prec_i, sub_chain};
use crate::subterm::set_le;

/// The stages `Gamma^x` followed by the fixpoint `W`.
fn family(sm: &StageMap) -> Vec<Set> {
    let mut out = sm.history.clone();
    if out.last() != Some(&sm.fixpoint) {
        out.push(sm.fixpoint.clone());
    }
    out
}

fn with_op(ctx: &Ctx, f: impl FnOnce(&Operator<'_>, &StageMap, &mut Tally) -> Result<()>) -> Result<Tally> {
    let op = system_operator(&ctx.uni)?;
    let sm = ctx.stage_map()?;
    let mut t = ctx.tally();
    f(&op, sm, &mut t)?;
    Ok(t)
}

pub fn gamma_0(ctx: &Ctx) -> Result<Tally> {
    with_op(ctx, |op, sm, t| {
        for (k, x) in family(sm).iter().enumerate() {
            let img = op.apply(x);
            t.check(img.ones().all(|a| ctx.uni.below_pi(a)), || format!("stage={k}"));
        }
        Ok(())
    })
}

pub fn gamma_1(ctx: &Ctx) -> Result<Tally> {
    with_op(ctx, |op, sm, t| {
        for (k, x) in family(sm).iter().enumerate() {
            let img = op.apply(x);
            t.check(img.is_subset(&ctx.uni.g_set(x)), || format!("stage={k}"));
        }
        Ok(())
    })
}

pub fn gamma_3(ctx: &Ctx) -> Result<Tally> {
    with_op(ctx, |op, sm, t| {
        for (k, x) in family(sm).iter().enumerate() {
            let img = op.apply(x);
            for a in ctx.uni.gamma2(x).ones() {
                t.check(img[a], || format!("stage={k} alpha={}", ctx.e(a)));
            }
        }
        Ok(())
    })
}

pub fn gamma_4(ctx: &Ctx) -> Result<Tally> {
    with_op(ctx, |_, sm, t| {
        let u = &ctx.uni;
        let g = u.g_set(&sm.fixpoint);
        for a in (0..u.len()).filter(|&a| u.is_sr(a) && u.below_pi(a) && g[a]) {
            t.check(sm.fixpoint[a], || format!("alpha={}", ctx.e(a)));
        }
        Ok(())
    })
}

pub fn gamma_5(ctx: &Ctx) -> Result<Tally> {
    with_op(ctx, |op, sm, t| {
        let img = op.apply(&sm.fixpoint);
        t.check(img.is_subset(&sm.fixpoint), || format!("rounds={}", sm.rounds()));
        Ok(())
    })
}

pub fn zero_stage0(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let mut t = ctx.tally();
    let z = ctx.uni.idx(&Diagram::zero())?;
    t.check(sm.stage(z) == Some(0), || format!("stage={:?}", sm.stage(z)));
    Ok(t)
}

pub fn theorem_am(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let u = &ctx.uni;
    let mut t = ctx.tally();
    let members: Vec<usize> = u.ascending().iter().copied().filter(|&a| sm.fixpoint[a]).collect();
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            let (x, y) = (sm.stage(a), sm.stage(b));
            t.check(x < y, || format!("alpha={} beta={} stages={:?},{:?}", u.elem(a), u.elem(b), x, y));
        }
    }
    Ok(t)
}

pub fn adq0(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let u = &ctx.uni;
    let mut t = ctx.tally();
    for (k, x) in sm.history.iter().enumerate() {
        let g = u.g_set(x);
        for a in g.ones() {
            for d in g.ones().filter(|&d| u.lt(a, d)) {
                if !prec_dot(u.elem(a), u.elem(d)) {
                    t.check(u.le_set_below(a, x, d), || format!("stage={k} alpha={} delta={}", u.elem(a), u.elem(d)));
                }
            }
        }
    }
    Ok(t)
}

pub fn adq1_plus(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let sm = ctx.stage_map()?;
    let u = &ctx.uni;
    let ops = PiNOps::new(u)?;
    let mut pairs = Vec::new();
    for &a in &ctx.dq {
        for b in sub_chain(ctx.e(a)).iter().filter(|d| d.is_dq()) {
            pairs.push((a, u.idx(b)?));
        }
    }
    let mut t = ctx.tally();
    for (k, x) in sm.history.iter().enumerate() {
        let levels = ops.g_levels(x);
        for i in 2..n - 1 {
            let below = |m: u32| {
                let mut s = u.full();
                for l in &levels[1..m as usize] {
                    s.intersect_with(l);
                }
                s
            };
            let (gi, gi1) = (below(i), below(i + 1));
            for &(a, b) in pairs.iter().filter(|&&(a, b)| gi[a] && gi1[b]) {
                let (alpha, beta) = (u.elem(a), u.elem(b));
                if u.le_set_below(a, x, b) {
                    t.tuples += 1;
                    continue;
                }
                let full = induced_seq(n, 2, alpha, beta)?;
                let s0 = full.prefixes().filter(|p| p.count() + 2 <= i as usize).last().expect("empty prefix");
                let ok = prec_s(n, &s0, alpha, beta);
                t.check_res(ok, || format!("stage={k} i={i} alpha={alpha} beta={beta} s0={s0}"));
            }
        }
    }
    Ok(t)
}

pub fn gwq_pi_n(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let u = &ctx.uni;
    let w = &sm.fixpoint;
    let g1 = u.g_set(w);
    let mut t = ctx.tally();
    for a in g1.ones().filter(|&a| u.below_pi(a)) {
        let alpha = u.elem(a);
        let mut rhos = vec![alpha.clone()];
        rhos.extend(sub_chain(alpha));
        for rho in rhos.iter().filter(|d| d.is_dq()) {
            for i in 2..=ctx.top() {
                let (Some(nu), Some(tau)) = (st(i, rho)?, rg(i, rho)?) else { continue };
                let ok = u.in_c(&nu, &tau, w);
                t.check_res(ok, || format!("alpha={alpha} rho={rho} i={i}"));
            }
        }
    }
    Ok(t)
}

pub fn lex_m32(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        for &b in &ctx.dq {
            let (d, e) = (ctx.e(a), ctx.e(b));
            if !prec_i(2, d, e) {
                continue;
            }
            let ok = match (mahlo_height(d), mahlo_height(e)) {
                (Ok(h), Ok(k)) => Ok(h.lex_cmp(&k).is_lt()),
                (Err(x), _) | (_, Err(x)) => Err(x),
            };
            t.check_res(ok, || format!("delta={d} eta={e}"));
        }
    }
    Ok(t)
}

pub fn n4aro_m32(ctx: &Ctx) -> Result<Tally> {
    let pi = Diagram::pi();
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        let body = rho.body()?.clone();
        let cap = if lt(&body, &pi) { pi.clone() } else { body };
        let q: Vec<Diagram> = [st(2, rho)?, rg(2, rho)?].into_iter().flatten().collect();
        t.check(q.len() == 2 && set_le(&q, &cap), || format!("rho={rho}"));
    }
    Ok(t)
}

pub fn gwq_pi_m32(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let u = &ctx.uni;
    let w = &sm.fixpoint;
    let g = u.g_set(w);
    let mut t = ctx.tally();
    for &r in ctx.dq.iter().filter(|&&r| g[r] && u.below_pi(r)) {
        let rho = u.elem(r);
        let (Some(nu), Some(kappa)) = (st(2, rho)?, rg(2, rho)?) else {
            t.check(false, || format!("rho={rho} accessors undefined"));
            continue;
        };
        t.check_res(u.in_c(&nu, &kappa, w), || format!("rho={rho}"));
    }
    Ok(t)
}

pub fn gamma32_closed(ctx: &Ctx) -> Result<Tally> {
    let sm = ctx.stage_map()?;
    let mut t = ctx.tally();
    let z = ctx.uni.idx(&Diagram::zero())?;
    t.check(sm.closed, || format!("rounds={}", sm.rounds()));
    t.check(sm.stage(z) == Some(0), || format!("zero stage={:?}", sm.stage(z)));
    Ok(t)
}
