//! The layered predicates `U_i`, `V^s_i`, `H^s_i`, `V*_i` and distinguished sets.

use std::collections::HashMap;

use super::{Arena, Case, Ctx, Tally};
use crate::accessors::{rg, st};
use crate::error::Result;
use crate::operators::{Distinguished, Layers, Set};
use crate::relations::{chain_i, sub_chain};
use crate::subterm::k_union_upto;

/// One element per class of `alpha ↦ alpha^-`, in increasing order.
fn delta_reps(ar: &Arena) -> Vec<usize> {
    let u = &ar.uni;
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for &a in u.ascending() {
        let m = u.minus(a);
        if !seen.contains(&m) {
            seen.push(m);
            out.push(a);
        }
    }
    out
}

fn cases(ar: &Arena, k: usize) -> Vec<&Case> {
    if ar.exhaustive || ar.cases.len() <= k {
        return ar.cases.iter().collect();
    }
    let idx: Vec<usize> = (0..ar.cases.len()).collect();
    super::stratified(&idx, k, 2).into_iter().map(|i| &ar.cases[i]).collect()
}

fn each_arena(ctx: &Ctx, mut f: impl FnMut(&Arena, &Distinguished<'_>, &mut Tally)) -> Result<Tally> {
    let mut t = ctx.tally();
    for ar in ctx.arenas()? {
        let d = Distinguished::new(&ar.uni)?;
        f(ar, &d, &mut t);
    }
    Ok(t)
}

/// Pairs `(alpha, beta)` with `alpha ≺_i beta`, per level `i`.
fn prec_pairs(ar: &Arena, top: u32) -> Vec<Vec<(usize, usize)>> {
    let u = &ar.uni;
    let mut out = vec![Vec::new(); top as usize + 1];
    for i in 2..=top {
        for a in 0..u.len() {
            for b in chain_i(i, u.elem(a)).iter().filter_map(|d| u.try_idx(d)) {
                out[i as usize].push((a, b));
            }
        }
    }
    out
}

const CASE_CAP: usize = 12;

pub fn uv_0(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, dist, t| {
        let u = &ar.uni;
        let top = dist.top();
        let full = u.full();
        let pairs = prec_pairs(ar, top);
        for c in cases(ar, CASE_CAP) {
            for d in delta_reps(ar) {
                let l = dist.layers(&c.x, d);
                let w = || format!("arena={} X={} delta={}", ar.name, ar.show(&c.x), u.elem(d));
                for i in 2..top {
                    let mut rhs = l.vstar[i as usize + 1].clone();
                    rhs.intersect_with(&l.hs_from(i, top, &full));
                    t.check(l.vstar[i as usize].is_subset(&rhs), || format!("{} i={i} vstar", w()));
                    t.check(l.hs[i as usize].is_subset(&l.vs[i as usize]), || format!("{} i={i} hs", w()));
                }
                for i in 2..=top {
                    for (name, set) in [("vstar", l.vstar[i as usize].clone()), ("uvstar", l.uvstar(i))] {
                        for &(a, b) in &pairs[i as usize] {
                            if set[a] {
                                t.check(set[b], || format!("{} i={i} {name} alpha={} beta={}", w(), u.elem(a), u.elem(b)));
                            }
                        }
                    }
                }
            }
        }
    })
}

pub fn uv_1(ctx: &Ctx) -> Result<Tally> {
    let u = &ctx.uni;
    let mut t = ctx.tally();
    for &g in &ctx.dq {
        let gamma = u.elem(g);
        let mut deltas = vec![gamma.clone()];
        deltas.extend(sub_chain(gamma));
        for delta in deltas.iter().filter(|d| d.is_dq()) {
            for i in 2..=ctx.top() {
                let (Some(nu), Some(kappa)) = (st(i, delta)?, rg(i, delta)?) else { continue };
                for k in k_union_upto(&kappa, &nu).iter() {
                    t.check(crate::relations::lt(k, gamma), || format!("gamma={gamma} delta={delta} i={i} k={k}"));
                }
            }
        }
    }
    Ok(t)
}

/// `smaller ⊆ larger` for the increasing layers, `⊇` for the decreasing ones.
fn compare_layers(small: &Layers, large: &Layers, top: u32, mut report: impl FnMut(bool, &str, u32)) {
    for i in 2..=top as usize {
        report(small.u[i].is_subset(&large.u[i]), "U", i as u32);
        report(small.ustar[i].is_subset(&large.ustar[i]), "U*", i as u32);
        report(large.vs[i].is_subset(&small.vs[i]), "Vs", i as u32);
        report(large.hs[i].is_subset(&small.hs[i]), "Hs", i as u32);
        report(large.vstar[i].is_subset(&small.vstar[i]), "V*", i as u32);
    }
}

pub fn uv_3_1(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, dist, t| {
        let u = &ar.uni;
        let top = dist.top();
        let reps = delta_reps(ar);
        for c in cases(ar, CASE_CAP) {
            let mut cache: HashMap<usize, Layers> = HashMap::new();
            for &d in &reps {
                cache.insert(d, dist.layers(&c.x, d));
            }
            for w in reps.windows(2) {
                compare_layers(&cache[&w[0]], &cache[&w[1]], top, |ok, name, i| {
                    t.check(ok, || format!("arena={} X={} alpha={} beta={} {name}_{i}", ar.name, ar.show(&c.x), u.elem(w[0]), u.elem(w[1])));
                });
            }
            let (v2x, vx) = (dist.vstar2_diag(&c.x), dist.vstar(&c.x));
            for e in c.x.ones() {
                let mut y = c.x.clone();
                y.set(e, false);
                for &d in &reps {
                    let ly = dist.layers(&y, d);
                    compare_layers(&ly, &cache[&d], top, |ok, name, i| {
                        t.check(ok, || format!("arena={} X={} Y={} delta={} {name}_{i}", ar.name, ar.show(&c.x), ar.show(&y), u.elem(d)));
                    });
                }
                t.check(v2x.is_subset(&dist.vstar2_diag(&y)), || format!("arena={} X={} Y={} V*_2", ar.name, ar.show(&c.x), ar.show(&y)));
                t.check(vx.is_subset(&dist.vstar(&y)), || format!("arena={} X={} Y={} V*", ar.name, ar.show(&c.x), ar.show(&y)));
            }
        }
        t.note("single-element and consecutive-parameter steps");
    })
}

pub fn uv_2(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, dist, t| {
        let u = &ar.uni;
        let with_a: Vec<&Case> = cases(ar, CASE_CAP * 4).into_iter().filter(|c| ar.has_a(c)).collect();
        let vstars: Vec<Set> = with_a.iter().map(|c| dist.vstar(&c.x)).collect();
        for &a in u.ascending() {
            let bound = u.plus(a).map_or(u.len(), |p| u.rank(p));
            let mut groups: HashMap<Set, usize> = HashMap::new();
            for (k, c) in with_a.iter().enumerate() {
                let key = u.restrict(&c.x, a);
                let Some(&first) = groups.get(&key) else {
                    groups.insert(key, k);
                    continue;
                };
                let (x, y) = (&with_a[first], c);
                for &b in &u.ascending()[..bound] {
                    let vx = u.restrict_plus(&dist.vc(b, &x.x, &vstars[first]), b);
                    let vy = u.restrict_plus(&dist.vc(b, &y.x, &vstars[k]), b);
                    t.check(vx == vy, || {
                        format!("arena={} X={} Y={} alpha={} beta={}", ar.name, ar.show(&x.x), ar.show(&y.x), u.elem(a), u.elem(b))
                    });
                }
            }
        }
    })
}

pub fn empty_set(ctx: &Ctx) -> Result<Tally> {
    let mut t = ctx.tally();
    let d = Distinguished::new(&ctx.uni)?;
    t.check(d.is_d(&ctx.uni.empty()), || "X={}".to_string());
    let mut rest = each_arena(ctx, |ar, dist, t| {
        t.check(dist.is_d(&ar.uni.empty()), || format!("arena={} X={{}}", ar.name));
    })?;
    rest.merge(t);
    Ok(rest)
}

pub fn top_layer(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, dist, t| {
        let top = dist.top() as usize;
        for c in cases(ar, CASE_CAP) {
            for d in delta_reps(ar) {
                let l = dist.layers(&c.x, d);
                t.check(l.vstar[top] == ar.uni.full(), || format!("arena={} X={} delta={}", ar.name, ar.show(&c.x), ar.uni.elem(d)));
            }
        }
    })
}

pub fn wf5_3_3_1(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, dist, t| {
        let u = &ar.uni;
        for c in cases(ar, CASE_CAP * 4).into_iter().filter(|c| dist.is_d(&c.x)) {
            let vs = dist.vstar(&c.x);
            let v2 = dist.vstar2_diag(&c.x);
            for g in vs.ones().filter(|&g| u.restrict(&c.x, g).is_subset(&c.g)) {
                for a in u.ascending()[..u.rank(g)].iter().copied() {
                    if !ar.ktab.upto(u, a, g).is_subset(&c.x) {
                        continue;
                    }
                    let below = u.restrict(&c.clos[a], a);
                    t.check(below.is_subset(&v2), || {
                        format!("arena={} X={} gamma={} alpha={}", ar.name, ar.show(&c.x), u.elem(g), u.elem(a))
                    });
                }
            }
        }
    })
}
