//! Lemmas about decompositions `alpha(s)` and the sequence-indexed relations.

use std::collections::HashSet;

use super::{Ctx, Tally};
use crate::accessors::{has_index, rg};
use crate::decomposition::{decompose, induced_seq, lhd_seq, lhd_seq_plus, prec_s, subseteq_s};
use crate::diagram::Diagram;
use crate::error::Result;
use crate::index_seq::{self, IndexSeq};
use crate::relations::{alpha_pi, chain_i, decomp_seq, lhd, prec_i, prec_p, preceq_dot, preceq_i, sub_chain};

type Pairs = HashSet<(usize, usize)>;

fn seqs(ctx: &Ctx) -> Vec<IndexSeq> {
    index_seq::all_in(ctx.n())
}

/// For each `s ∈ I`, the `D^Q` pairs related by `rel`.
fn table(ctx: &Ctx, rel: impl Fn(&IndexSeq, &Diagram, &Diagram) -> Result<bool>) -> Result<Vec<(IndexSeq, Pairs)>> {
    let mut out = Vec::new();
    for s in seqs(ctx) {
        let mut pairs = Pairs::new();
        for &a in &ctx.dq {
            for &b in &ctx.dq {
                if rel(&s, ctx.e(a), ctx.e(b))? {
                    pairs.insert((a, b));
                }
            }
        }
        out.push((s, pairs));
    }
    Ok(out)
}

fn lookup<'a>(tab: &'a [(IndexSeq, Pairs)], s: &IndexSeq) -> &'a Pairs {
    &tab.iter().find(|(t, _)| t == s).expect("sequence in I").1
}

/// `alpha ⪯_s beta`.
fn preceq_s(n: u32, s: &IndexSeq, a: &Diagram, b: &Diagram) -> Result<bool> {
    Ok(a == b || prec_s(n, s, a, b)?)
}

/// `[ell(s) > d(s) ⇒ alpha ≺_{s|(ell(s)-1)} beta]`.
fn prefix_prec(n: u32, s: &IndexSeq, a: &Diagram, b: &Diagram) -> Result<bool> {
    if s.ell() == s.d() {
        return Ok(true);
    }
    prec_s(n, &s.restrict(s.ell() - 1), a, b)
}

pub fn astup_0(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for s in seqs(ctx) {
        for &a in &ctx.dq {
            for &b in &ctx.dq {
                let (x, y) = (ctx.e(a), ctx.e(b));
                let (xs, ys) = (decompose(x, &s)?, decompose(y, &s)?);
                for i in s.d()..=s.ell() {
                    let p = s.restrict(i);
                    if decompose(x, &p)? == decompose(y, &p)? {
                        t.check(xs == ys, || format!("alpha={x} beta={y} s={s} i={i}"));
                    }
                }
            }
        }
    }
    Ok(t)
}

fn unitary_closed(ctx: &Ctx) -> Vec<IndexSeq> {
    seqs(ctx).into_iter().filter(|s| s.is_unitary() && s.get(s.ell().wrapping_sub(1)) == Some(true)).collect()
}

pub fn astup_1(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for s in unitary_closed(ctx) {
        for &a in &ctx.dq {
            let x = ctx.e(a);
            for y in chain_i(s.d(), x).into_iter().filter(Diagram::is_dq) {
                let mut hyp = true;
                for i in s.d()..s.ell() {
                    hyp &= crate::relations::le(&y, &decomp_seq(i, x)?[0]);
                }
                if hyp {
                    let ok = decompose(x, &s)? == decompose(&y, &s)?;
                    t.check(ok, || format!("alpha={x} beta={y} s={s}"));
                }
            }
        }
    }
    Ok(t)
}

pub fn astup_1_3(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for s in unitary_closed(ctx) {
        let ell = s.ell();
        for &a in &ctx.dq {
            let x = ctx.e(a);
            let head = decomp_seq(ell - 1, x)?[0].clone();
            let xs = decompose(x, &s)?;
            let ok = preceq_i(ell, x, &head) && crate::relations::preceq_p(ell, &head, &xs);
            t.check(ok, || format!("alpha={x} s={s}"));
        }
    }
    Ok(t)
}

pub fn astup_1_4(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    let inits: Vec<IndexSeq> = index_seq::initial(n).into_iter().filter(|s| !s.is_empty()).collect();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        let above: Vec<Diagram> = sub_chain(alpha).into_iter().filter(Diagram::is_dq).collect();
        for (k, delta) in above.iter().enumerate() {
            let sd = induced_seq(n, 2, alpha, delta)?;
            for gamma in &above[k + 1..] {
                let sg = induced_seq(n, 2, alpha, gamma)?;
                for u in &inits {
                    if u.is_initial_segment_of(&sd) || !u.is_initial_segment_of(&sg) {
                        continue;
                    }
                    if !prec_s(n, &u.restrict(u.ell() - 1), delta, gamma)? {
                        continue;
                    }
                    let first = (2..u.ell()).find(|&i| u.get(i) != sd.get(i));
                    let ok = first.is_some_and(|i| u.get(i) == Some(true)) && sd.lex_less(u);
                    t.check(ok, || format!("alpha={alpha} delta={delta} gamma={gamma} t={u}"));
                }
            }
        }
    }
    Ok(t)
}

pub fn astup_1_5(ctx: &Ctx) -> Result<Tally> {
    let all = seqs(ctx);
    let mut t = ctx.tally();
    for s in &all {
        for u2 in all.iter().filter(|v| v.d() == s.ell()) {
            let u = s.concat(u2)?;
            for &a in &ctx.dq {
                let alpha = ctx.e(a);
                let (xs, xu) = (decompose(alpha, s)?, decompose(alpha, &u)?);
                if !has_index(s.ell(), &xs) {
                    continue;
                }
                let Some(ru) = rg(u.ell(), &xu)? else { continue };
                let rs = rg(s.ell(), &xs)?.expect("index present");
                t.check(preceq_dot(&rs, &ru), || format!("alpha={alpha} s={s} t={u2}"));
            }
        }
    }
    Ok(t)
}

pub fn astup11(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let all = seqs(ctx);
    let precs = table(ctx, |s, a, b| prec_s(n, s, a, b))?;
    let mut t = ctx.tally();
    for (s, pairs) in &precs {
        for u in all.iter().filter(|u| s.lex_less(u)) {
            for &(a, b) in pairs {
                let (x, y) = (ctx.e(a), ctx.e(b));
                t.check(decompose(x, u)? == decompose(y, u)?, || format!("alpha={x} beta={y} t={s} u={u}"));
            }
        }
    }
    Ok(t)
}

fn lemb(ctx: &Ctx, tab: &[(IndexSeq, Pairs)]) -> Tally {
    let mut t = ctx.tally();
    for (u, pu) in tab {
        for (v, pv) in tab {
            let s = if u == v || v.lex_less(u) {
                u
            } else if u.lex_less(v) {
                v
            } else {
                continue;
            };
            let ps = lookup(tab, s);
            for &(d, g) in pu {
                for &(g2, b) in pv {
                    if g == g2 {
                        t.check(ps.contains(&(d, b)), || {
                            format!("delta={} gamma={} beta={} u={u} t={v}", ctx.e(d), ctx.e(g), ctx.e(b))
                        });
                    }
                }
            }
        }
    }
    t
}

pub fn lemb_1(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    Ok(lemb(ctx, &table(ctx, |s, a, b| lhd_seq(n, s, a, b))?))
}

pub fn lemb_3(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    Ok(lemb(ctx, &table(ctx, |s, a, b| lhd_seq_plus(n, s, a, b))?))
}

/// Runs `f(alpha, beta, s, gamma')` over `D^Q` pairs, sequences and the
/// `gamma'` on the `pd_{ell(s)}` chain of `alpha(s)` meeting `hyp`.
fn over_interpolants(
    ctx: &Ctx,
    seq_filter: impl Fn(&IndexSeq) -> bool,
    pre: impl Fn(&IndexSeq, &Diagram, &Diagram) -> Result<bool>,
    hyp: impl Fn(u32, &Diagram, &Diagram) -> bool,
    mut f: impl FnMut(&Diagram, &Diagram, &IndexSeq, &Diagram, &mut Tally) -> Result<()>,
) -> Result<Tally> {
    let mut t = ctx.tally();
    for s in seqs(ctx).into_iter().filter(|s| seq_filter(s)) {
        let ell = s.ell();
        for &a in &ctx.dq {
            for &b in &ctx.dq {
                let (x, y) = (ctx.e(a), ctx.e(b));
                if !pre(&s, x, y)? {
                    continue;
                }
                let (xs, ys) = (decompose(x, &s)?, decompose(y, &s)?);
                for g in chain_i(ell, &xs) {
                    if prec_p(ell, &xs, &g) && hyp(ell, &g, &ys) {
                        f(x, y, &s, &g, &mut t)?;
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Carrier `D^Q` elements `gamma` with `gamma(s) = target` meeting `want`;
/// `None` when no carrier element decomposes to `target` at all.
fn find_gamma(
    ctx: &Ctx,
    s: &IndexSeq,
    target: &Diagram,
    want: impl Fn(&Diagram) -> Result<bool>,
) -> Result<Option<bool>> {
    let mut seen = false;
    for &c in &ctx.dq {
        let g = ctx.e(c);
        if &decompose(g, s)? == target {
            seen = true;
            if want(g)? {
                return Ok(Some(true));
            }
        }
    }
    Ok(seen.then_some(false))
}

/// Records an existence instance; instances without any candidate are counted, not failed.
fn record(t: &mut Tally, found: Result<Option<bool>>, missing: &mut u64, w: impl FnOnce() -> String) {
    match found {
        Ok(None) => *missing += 1,
        Ok(Some(ok)) => t.check(ok, w),
        Err(e) => t.check_res(Err(e), w),
    }
}

fn finish_existence(mut t: Tally, missing: u64) -> Tally {
    t.note("gamma searched in the carrier");
    if missing > 0 {
        t.note(format!("inconclusive={missing} (no carrier element with gamma(s) = gamma')"));
    }
    t
}

pub fn e_0(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut missing = 0;
    let t = over_interpolants(
        ctx,
        IndexSeq::is_unitary,
        |s, x, y| Ok(subseteq_s(n, s, x, y)? && prefix_prec(n, s, x, y)?),
        prec_i,
        |x, y, s, gp, t| {
            let ok = find_gamma(ctx, s, gp, |g| {
                if !(prec_s(n, s, x, g)? && prefix_prec(n, s, g, y)?) {
                    return Ok(false);
                }
                for j in s.d()..s.ell() {
                    if (s.get(j) == Some(true)) != has_index(j, &decompose(g, &s.restrict(j))?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            record(t, ok, &mut missing, || format!("alpha={x} beta={y} s={s} gamma'={gp}"));
            Ok(())
        },
    )?;
    Ok(finish_existence(t, missing))
}

pub fn e_1(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut missing = 0;
    let t = over_interpolants(
        ctx,
        |_| true,
        |s, x, y| prec_s(n, s, x, y),
        prec_p,
        |x, y, s, gp, t| {
            let ok = find_gamma(ctx, s, gp, |g| Ok(prec_s(n, s, x, g)? && prec_s(n, s, g, y)?));
            record(t, ok, &mut missing, || format!("alpha={x} beta={y} s={s} gamma'={gp}"));
            Ok(())
        },
    )?;
    Ok(finish_existence(t, missing))
}

pub fn e_2(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut missing = 0;
    let t = over_interpolants(
        ctx,
        |_| true,
        |s, x, y| prefix_prec(n, s, x, y),
        lhd,
        |x, y, s, gp, t| {
            let ok = find_gamma(ctx, s, gp, |g| Ok(prec_s(n, s, x, g)? && lhd_seq(n, s, g, y)?));
            record(t, ok, &mut missing, || format!("alpha={x} beta={y} s={s} gamma'={gp}"));
            Ok(())
        },
    )?;
    Ok(finish_existence(t, missing))
}

pub fn b(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let plus = table(ctx, |s, a, b| lhd_seq_plus(n, s, a, b))?;
    let all = seqs(ctx);
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        for beta in sub_chain(alpha).into_iter().filter(Diagram::is_dq) {
            let bi = ctx.uni.idx(&beta)?;
            let full = induced_seq(n, 2, alpha, &beta)?;
            for s in full.prefixes() {
                if prec_s(n, &s, alpha, &beta)? {
                    continue;
                }
                let mut witnesses: Vec<(usize, IndexSeq)> = Vec::new();
                for u in s.prefixes() {
                    for &(g, b2) in lookup(&plus, &u) {
                        if b2 == bi && preceq_s(n, &u, alpha, ctx.e(g))? {
                            witnesses.push((g, u.clone()));
                        }
                    }
                }
                let Some(min) = witnesses.iter().map(|w| w.0).min_by_key(|&g| ctx.uni.rank(g)) else {
                    t.check(false, || format!("alpha={alpha} beta={beta} s={s} no witness"));
                    continue;
                };
                t.tuples += 1;
                for (_, tt) in witnesses.iter().filter(|w| w.0 == min) {
                    for u in all.iter().filter(|u| u.lex_less(tt)) {
                        for &(d, g2) in lookup(&plus, u) {
                            if g2 == min && preceq_s(n, tt, alpha, ctx.e(d))? {
                                t.check(false, || {
                                    format!("alpha={alpha} beta={beta} s={s} gamma={} t={tt} delta={} u={u}", ctx.e(min), ctx.e(d))
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

pub fn b_prime(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let all = seqs(ctx);
    let precs = table(ctx, |s, a, b| prec_s(n, s, a, b))?;
    let lhds = table(ctx, |s, a, b| lhd_seq(n, s, a, b))?;
    let mut t = ctx.tally();
    for (s, ps) in &precs {
        for tt in all.iter().filter(|v| v.d() == s.d() && (v.lex_less(s) || v.is_initial_segment_of(s))) {
            let meet = s.meet(tt)?;
            for &(a, g) in ps {
                for &(d, g2) in lookup(&lhds, tt) {
                    if g2 != g {
                        continue;
                    }
                    for u in meet.prefixes() {
                        for &(e, d2) in lookup(&lhds, &u) {
                            if d2 == d && preceq_s(n, &u, ctx.e(a), ctx.e(e))? {
                                t.check(u.count() < tt.count(), || {
                                    format!(
                                        "alpha={} eta={} delta={} gamma={} s={s} t={tt} u={u}",
                                        ctx.e(a),
                                        ctx.e(e),
                                        ctx.e(d),
                                        ctx.e(g)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Whether a chain `alpha_K ⊲_{v_{K-1}} ... ⊲_{v_0} alpha_0 = head` reaches
/// `target` through null `v_k` with `d(v_k) = i` and strictly growing length.
fn null_chain(ctx: &Ctx, i: u32, head: &Diagram, target: &Diagram) -> Result<bool> {
    let n = ctx.n();
    let nulls: Vec<IndexSeq> = index_seq::all_in(n).into_iter().filter(|v| v.d() == i && v.is_null()).collect();
    let mut stack: Vec<(Diagram, Option<u32>, usize)> = vec![(head.clone(), None, 0)];
    let mut seen = HashSet::new();
    while let Some((cur, last, k)) = stack.pop() {
        if k > 0 && &cur == target {
            return Ok(true);
        }
        if !seen.insert((cur.id(), last)) {
            continue;
        }
        for v in nulls.iter().filter(|v| last.map_or(true, |l| v.ell() > l)) {
            for &c in &ctx.dq {
                let next = ctx.e(c);
                if lhd_seq(n, v, next, &cur)? {
                    stack.push((next.clone(), Some(v.ell()), k + 1));
                }
            }
        }
    }
    Ok(false)
}

pub fn c_plus_1(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let plus = table(ctx, |s, a, b| lhd_seq_plus(n, s, a, b))?;
    let mut t = ctx.tally();
    for (s, pairs) in &plus {
        for &(a, b) in pairs {
            let alpha = ctx.e(a);
            for i in s.d()..s.ell() {
                let target = decompose(alpha, &s.restrict(i))?;
                if s.get(i) != Some(true) || has_index(i, &target) {
                    continue;
                }
                let head = decomp_seq(i, &target)?[0].clone();
                let ok = null_chain(ctx, i, &head, &target);
                t.check_res(ok, || format!("alpha={alpha} beta={} s={s} i={i}", ctx.e(b)));
            }
        }
    }
    Ok(t)
}

pub fn c_plus_2(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let all = seqs(ctx);
    let plus = table(ctx, |s, a, b| lhd_seq_plus(n, s, a, b))?;
    let mut t = ctx.tally();
    for (s, pairs) in &plus {
        for u in all.iter().filter(|u| u.count() >= s.count() && u.lex_less(s)) {
            for &(a, b) in pairs {
                let alpha = ctx.e(a);
                let mut ok = decompose(alpha, u)? == alpha_pi(alpha)?;
                for &g in &ctx.dq {
                    ok &= !lhd_seq(n, u, ctx.e(g), alpha)?;
                }
                t.check(ok, || format!("alpha={alpha} beta={} s={s} u={u}", ctx.e(b)));
            }
        }
    }
    Ok(t)
}

