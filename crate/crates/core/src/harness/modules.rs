//! Module-level invariants: order axioms, term shape, index sequences,
//! decomposition identities, operator bookkeeping and enumeration.

use std::cmp::Ordering;

use super::{Ctx, Tally};
use crate::decomposition::{decompose, induced_seq, lhd_seq, prec_n_pl, prec_s, subseteq_s};
use crate::enumeration::{enumerate_fragment, oracle_fragment, GenConfig};
use crate::error::Result;
use crate::index_seq::{self, IndexSeq};
use crate::operators::Set;
use crate::relations::{compare, lhd, prec_p};
use crate::subterm::{set_le, set_le_set, set_lt, set_max};
use crate::validity::{d12_holding, shared};

pub fn order_total(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let n = u.len();
    let mut t = ctx.tally();
    let mut above: Vec<Set> = vec![u.empty(); n];
    for a in 0..n {
        for b in 0..n {
            let ab = compare(u.elem(a), u.elem(b));
            if a == b {
                t.check(ab == Ordering::Equal, || format!("irreflexive a={}", u.elem(a)));
                continue;
            }
            let ba = compare(u.elem(b), u.elem(a));
            t.check(ab != Ordering::Equal && ab == ba.reverse(), || {
                format!("trichotomy a={} b={}", u.elem(a), u.elem(b))
            });
            above[a].set(b, ab == Ordering::Less);
        }
    }
    for a in 0..n {
        for b in above[a].ones() {
            t.tuples += above[b].count_ones(..) as u64;
            if !above[b].is_subset(&above[a]) {
                let c = above[b].difference(&above[a]).next().expect("nonempty difference");
                t.tuples -= 1;
                t.check(false, || format!("transitivity a={} b={} c={}", u.elem(a), u.elem(b), u.elem(c)));
            }
        }
    }
    t.note("triples decided through the comparison matrix");
    Ok(t)
}

pub fn order_wellfounded(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let mut t = ctx.tally();
    t.check(u.w_part(&u.full()) == u.full(), || "wellfounded part of the carrier is not the carrier".into());
    Ok(t)
}

pub fn diagram_roundtrip(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for d in ctx.uni.elements() {
        let text = crate::print(d);
        let ok = matches!(crate::parse(&text), Ok(e) if &e == d && crate::print(&e) == text);
        t.check(ok, || format!("alpha={d}"));
    }
    Ok(t)
}

pub fn diagram_ell_monotone(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for d in ctx.uni.elements() {
        for s in d.sd() {
            t.check(s.size() < d.size(), || format!("alpha={d} beta={s}"));
        }
    }
    Ok(t)
}

pub fn diagram_q_in_sd(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for d in ctx.uni.elements().iter().filter(|d| d.is_d()) {
        let sd = d.sd();
        for c in d.c_set()? {
            t.check(sd.contains(&c), || format!("alpha={d} component={c}"));
        }
    }
    Ok(t)
}

pub fn diagram_normal_idempotent(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for d in ctx.uni.elements() {
        let once = d.normalize();
        t.check(d.is_normal() && &once == d && once.normalize() == once, || format!("alpha={d}"));
    }
    Ok(t)
}

pub fn subterm_set_order(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let mut t = ctx.tally();
    t.check(set_max(&[]).is_zero() && set_lt(&[], &crate::Diagram::zero()), || "empty-set conventions".into());
    let all: Vec<usize> = (0..u.len()).collect();
    let betas = ctx.third_var(&all, &mut t);
    for a in 0..u.len() {
        let zs = u.elem(a).sd();
        let top = zs.iter().map(|z| u.rank(u.try_idx(z).expect("subdiagram-closed"))).max();
        t.check(top.map(|r| u.elem(u.ascending()[r])) == zs.iter().max_by(|x, y| compare(x, y)), || {
            format!("max alpha={}", u.elem(a))
        });
        for &b in &betas {
            let rb = u.rank(b);
            let beta = u.elem(b);
            let le = top.map_or(true, |r| r <= rb);
            let lt = top.map_or(true, |r| r < rb);
            t.check(
                set_le(&zs, beta) == le && set_lt(&zs, beta) == lt && set_le_set(&zs, std::slice::from_ref(beta)) == le,
                || format!("alpha={} beta={beta}", u.elem(a)),
            );
        }
    }
    Ok(t)
}

pub fn validity_subdiagram_closed(ctx: &Ctx) -> Result<Tally> {
    let sys = shared(ctx.params);
    let mut t = ctx.tally();
    for d in ctx.uni.elements() {
        let ok = sys.is_valid(d) && d.sd().iter().all(|s| ctx.uni.try_idx(s).is_some() && sys.is_valid(s));
        t.check(ok, || format!("alpha={d}"));
    }
    Ok(t)
}

pub fn validity_subcase_exclusive(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &r in &ctx.dq {
        let rho = ctx.e(r);
        for q in rho.quads().iter().filter(|q| q.j < ctx.top()) {
            let held = d12_holding(q.j, rho);
            t.check(held.len() == 1, || format!("rho={rho} i={} subcases={held:?}", q.j));
        }
    }
    Ok(t)
}

fn seq_bounds() -> std::ops::RangeInclusive<u32> {
    4..=8
}

pub fn indexseq_lex_order(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for n in seq_bounds() {
        let all = index_seq::all_in(n);
        for s in &all {
            t.check(!s.lex_less(s), || format!("N={n} s={s}"));
            for u in &all {
                if s.d() == 2 && u.d() == 2 && s.ell() == u.ell() && s != u {
                    t.check(s.lex_less(u) != u.lex_less(s), || format!("N={n} s={s} t={u}"));
                }
                if !s.lex_less(u) {
                    continue;
                }
                t.check(!u.lex_less(s), || format!("asymmetry N={n} s={s} t={u}"));
                for v in all.iter().filter(|v| u.lex_less(v)) {
                    t.check(s.lex_less(v), || format!("transitivity N={n} s={s} t={u} u={v}"));
                }
            }
        }
    }
    Ok(t)
}

pub fn indexseq_unitary_unique(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for n in seq_bounds() {
        for s in index_seq::all_in(n) {
            let parts = s.unitary_decomp();
            let mut joined = IndexSeq::empty(s.d());
            for p in &parts {
                joined = joined.concat(p)?;
            }
            let len = s.len();
            let mut valid_splits = Vec::new();
            for mask in 0u64..1 << len.saturating_sub(1) {
                let mut cuts = vec![s.d()];
                cuts.extend((0..len.saturating_sub(1)).filter(|k| mask >> k & 1 == 1).map(|k| s.d() + k as u32 + 1));
                cuts.push(s.ell());
                let split: Vec<IndexSeq> = cuts
                    .windows(2)
                    .map(|w| IndexSeq::new(w[0], s.bits()[(w[0] - s.d()) as usize..(w[1] - s.d()) as usize].to_vec()))
                    .collect();
                let k = split.len();
                let maximal = split.iter().enumerate().all(|(i, p)| {
                    p.is_unitary() && (i + 1 == k || p.bits().last() == Some(&true))
                });
                if maximal {
                    valid_splits.push(split);
                }
            }
            t.check(joined == s && valid_splits == vec![parts.clone()], || format!("N={n} s={s}"));
        }
    }
    Ok(t)
}

pub fn indexseq_e_antitone(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for n in seq_bounds() {
        let init = index_seq::initial(n);
        for s in &init {
            for u in &init {
                if s.is_proper_initial_segment_of(u) || s.lex_less(u) {
                    t.check(s.weight_e(n) > u.weight_e(n), || format!("N={n} s={s} t={u}"));
                }
            }
        }
    }
    Ok(t)
}

fn dq_pairs(ctx: &Ctx) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &a in &ctx.dq {
        for &b in &ctx.dq {
            out.push((a, b));
        }
    }
    out
}

pub fn decomp_null_identity(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for &a in &ctx.dq {
        let alpha = ctx.e(a);
        for s in index_seq::all_in(ctx.n()).into_iter().filter(IndexSeq::is_null) {
            t.check_res(decompose(alpha, &s).map(|x| &x == alpha), || format!("alpha={alpha} s={s}"));
        }
    }
    Ok(t)
}

pub fn decomp_precs_null(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    for (a, b) in dq_pairs(ctx) {
        let (x, y) = (ctx.e(a), ctx.e(b));
        for d in 2..=n - 2 {
            let ok = prec_s(n, &IndexSeq::empty(d), x, y).map(|v| v == prec_p(d, x, y));
            t.check_res(ok, || format!("alpha={x} beta={y} s={}", IndexSeq::empty(d)));
        }
    }
    Ok(t)
}

pub fn decomp_lhds_base(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    for (a, b) in dq_pairs(ctx) {
        let (x, y) = (ctx.e(a), ctx.e(b));
        for d in 2..=n - 2 {
            let ok = lhd_seq(n, &IndexSeq::empty(d), x, y).map(|v| v == lhd(d, x, y));
            t.check_res(ok, || format!("alpha={x} beta={y} s={}", IndexSeq::empty(d)));
        }
    }
    Ok(t)
}

pub fn decomp_subseteq_def(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    for (a, b) in dq_pairs(ctx) {
        let (x, y) = (ctx.e(a), ctx.e(b));
        let full = induced_seq(n, 2, x, y)?;
        for p in full.prefixes() {
            t.check_res(subseteq_s(n, &p, x, y), || format!("alpha={x} beta={y} t={p}"));
            if p.is_empty() {
                continue;
            }
            let mut bits = p.bits().to_vec();
            let last = bits.len() - 1;
            bits[last] = !bits[last];
            let flipped = IndexSeq::new(2, bits);
            t.check_res(subseteq_s(n, &flipped, x, y).map(|v| !v), || format!("alpha={x} beta={y} t={flipped}"));
        }
    }
    Ok(t)
}

pub fn decomp_prec_n_pl_irreflexive(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.n();
    let mut t = ctx.tally();
    for (a, b) in dq_pairs(ctx) {
        let (x, y) = (ctx.e(a), ctx.e(b));
        let ok = if a == b {
            prec_n_pl(n, x, x).map(|v| !v)
        } else {
            prec_n_pl(n, x, y).and_then(|v| Ok(!(v && prec_n_pl(n, y, x)?)))
        };
        t.check_res(ok, || format!("alpha={x} beta={y}"));
    }
    Ok(t)
}

pub fn ops_wpart_total(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let map = ctx.stage_map()?;
    let mut t = ctx.tally();
    for x in &map.history {
        let w = u.w_part(x);
        t.check(w.is_subset(x) && u.gamma_a(x, &w) == w, || format!("X={}", super::show_set(u, x)));
    }
    Ok(t)
}

pub fn ops_stage_least(ctx: &Ctx) -> Result<Tally> {
    let map = ctx.stage_map()?;
    let mut t = ctx.tally();
    for w in map.history.windows(2) {
        t.check(w[0].is_subset(&w[1]) && w[0] != w[1], || "stages not strictly increasing".into());
    }
    t.check(map.history.last() == Some(&map.fixpoint), || "last stage differs from the fixpoint".into());
    for i in 0..ctx.uni.len() {
        let ok = match map.stage(i) {
            Some(k) => {
                let k = k as usize;
                !map.history[k][i] && map.history.get(k + 1).is_some_and(|h| h[i])
            }
            None => !map.fixpoint[i],
        };
        t.check(ok, || format!("alpha={}", ctx.e(i)));
    }
    Ok(t)
}

pub fn enum_canonical(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    for w in ctx.uni.elements().windows(2) {
        t.check(w[0].canonical_key() < w[1].canonical_key(), || format!("alpha={} beta={}", w[0], w[1]));
    }
    Ok(t)
}

pub fn enum_oracle_agreement(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    let top = ctx.uni.elements().iter().map(|d| d.size()).max().unwrap_or(1).min(6);
    for b in 1..=top {
        let fast = enumerate_fragment(&GenConfig::new(ctx.params, b))?;
        let slow = oracle_fragment(ctx.params, b);
        t.check(fast.elements == slow, || format!("max-symbols={b} fast={} oracle={}", fast.len(), slow.len()));
    }
    Ok(t)
}
