//! Closure sets `C^alpha(X)`, `G(X)` and the persistence of the operators,
//! quantified over the subset families of [`Arena`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arena, Case, Ctx, Tally};
use crate::error::Result;
use crate::operators::{M32Ops, PiNOps, Set, Universe};

/// Elements over which a check quantifies a free element variable.
fn elems(ar: &Arena) -> Vec<usize> {
    if ar.exhaustive {
        (0..ar.uni.len()).collect()
    } else {
        ar.probes.clone()
    }
}

/// Cases on which the costlier checks run: all of them, or a spread of `k`.
fn some_cases(ar: &Arena, k: usize) -> Vec<&Case> {
    if ar.exhaustive || ar.cases.len() <= k {
        return ar.cases.iter().collect();
    }
    let idx: Vec<usize> = (0..ar.cases.len()).collect();
    super::stratified(&idx, k, 1).into_iter().map(|i| &ar.cases[i]).collect()
}

fn each_arena(ctx: &Ctx, mut f: impl FnMut(&Arena, &mut Tally)) -> Result<Tally> {
    let mut t = ctx.tally();
    for ar in ctx.arenas()? {
        f(ar, &mut t);
    }
    Ok(t)
}

pub fn cx1(ctx: &Ctx) -> Result<Tally> {
    let seed = ctx.opts.seed;
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in &ar.cases {
            for a in elems(ar) {
                let y = u.restrict(&c.x, a);
                t.check(u.closure(a, &y) == c.clos[a], || format!("arena={} X={} alpha={}", ar.name, ar.show(&c.x), u.elem(a)));
                let e = rng.gen_range(0..u.len());
                let mut bigger = c.x.clone();
                bigger.insert(e);
                t.check(c.clos[a].is_subset(&u.closure(a, &bigger)), || {
                    format!("arena={} X={} alpha={} extra={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(e))
                });
            }
        }
    })
}

pub fn kc(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        for c in ar.cases.iter().filter(|c| ar.has_k(c)) {
            for a in 0..u.len() {
                let top = (0..u.len()).filter(|&b| c.clos[b][a]).max_by_key(|&b| u.rank(b));
                if let Some(b) = top {
                    t.check(ar.ktab.upto(u, a, b).is_subset(&c.x), || {
                        format!("arena={} X={} alpha={} beta={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(b))
                    });
                }
            }
        }
    })
}

pub fn cx2_3(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let asc = u.ascending();
        for c in ar.cases.iter().filter(|c| ar.has_a(c)) {
            for w in asc.windows(2) {
                t.check(c.clos[w[1]].is_subset(&c.clos[w[0]]), || {
                    format!("arena={} X={} alpha={} beta={}", ar.name, ar.show(&c.x), u.elem(w[0]), u.elem(w[1]))
                });
            }
        }
        t.note("consecutive ranks");
    })
}

pub fn cx2_4(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let asc = u.ascending();
        for c in ar.cases.iter().filter(|c| ar.has_a(c)) {
            for w in asc.windows(2).filter(|w| !u.is_regular(w[1])) {
                t.check(c.clos[w[1]] == c.clos[w[0]], || {
                    format!("arena={} X={} alpha={} beta={}", ar.name, ar.show(&c.x), u.elem(w[0]), u.elem(w[1]))
                });
            }
        }
        t.note("consecutive ranks");
    })
}

/// Runs `f(alpha, beta, gamma)` over the `CX3` hypothesis instances of a case.
fn cx3_instances(ar: &Arena, c: &Case, mut f: impl FnMut(usize, usize, usize)) {
    let u = &ar.uni;
    let es = elems(ar);
    for &a in &es {
        for &b in es.iter().filter(|&&b| u.lt(a, b)) {
            for g in c.clos[a].ones() {
                if ar.ktab.max_rank_upto(u, g, b).map_or(true, |r| r < u.rank(a)) {
                    f(a, b, g);
                }
            }
        }
    }
}

pub fn cx3_1(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        for c in &ar.cases {
            let mut lih_cache: Option<(usize, usize, u32)> = None;
            cx3_instances(ar, c, |a, b, g| {
                let bound = match lih_cache {
                    Some((ca, cb, v)) if ca == a && cb == b => v,
                    _ => {
                        let v = lih_bound(u, c, a, b);
                        lih_cache = Some((a, b, v));
                        v
                    }
                };
                if u.elem(g).size() < bound {
                    t.check(c.clos[b][g], || {
                        format!("arena={} X={} alpha={} beta={} gamma={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(b), u.elem(g))
                    });
                }
            });
        }
    })
}

/// The sizes `l` for which LIH holds at `l`: all below the returned bound.
fn lih_bound(u: &Universe, c: &Case, a: usize, b: usize) -> u32 {
    if !u.restrict(&c.x, a).is_subset(&c.clos[b]) {
        return 0;
    }
    u.restrict(&c.clos[a], a).ones().filter(|&d| !c.clos[b][d]).map(|d| u.elem(d).size()).min().unwrap_or(u32::MAX)
}

pub fn cx3_2(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        for c in &ar.cases {
            let below_in_x: Vec<bool> = (0..u.len()).map(|a| u.restrict(&c.clos[a], a).is_subset(&c.x)).collect();
            cx3_instances(ar, c, |a, b, g| {
                if below_in_x[a] {
                    t.check(c.clos[b][g], || {
                        format!("arena={} X={} alpha={} beta={} gamma={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(b), u.elem(g))
                    });
                }
            });
        }
    })
}

/// Pairs `(alpha, sigma)` with `alpha ⪯ sigma` and `alpha ∈ D`.
fn preceq_pairs(ar: &Arena) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..ar.uni.len() {
        if ar.uni.elem(s).is_d() {
            out.push((s, s));
        }
        for &a in &ar.preds[s] {
            out.push((a, s));
        }
    }
    out
}

fn cx4(ctx: &Ctx, f: impl Fn(&Arena, &Case, usize, usize, &mut Tally)) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let pairs = preceq_pairs(ar);
        let es = elems(ar);
        for c in &ar.cases {
            for &(a, s) in pairs.iter().filter(|p| c.clos[p.0][p.0]) {
                if ar.exhaustive || es.contains(&a) {
                    f(ar, c, a, s, t);
                }
            }
        }
    })
}

pub fn cx4_0(ctx: &Ctx) -> Result<Tally> {
    cx4(ctx, |ar, c, a, s, t| {
        t.check(c.clos[a][s], || format!("arena={} X={} alpha={} sigma={}", ar.name, ar.show(&c.x), ar.uni.elem(a), ar.uni.elem(s)));
    })
}

pub fn cx4_1(ctx: &Ctx) -> Result<Tally> {
    cx4(ctx, |ar, c, a, s, t| {
        let u = &ar.uni;
        if !c.g[a] {
            return;
        }
        for &b in &u.ascending()[u.rank(a)..=u.rank(s)] {
            t.check(c.clos[b][s], || {
                format!("arena={} X={} alpha={} sigma={} beta={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(s), u.elem(b))
            });
        }
    })
}

pub fn cx4_2(ctx: &Ctx) -> Result<Tally> {
    cx4(ctx, |ar, c, a, s, t| {
        let u = &ar.uni;
        let Some(tau) = u.elem(s).sub().and_then(|d| u.try_idx(d)) else { return };
        if !c.g[a] || u.rank(tau) <= u.rank(a) {
            return;
        }
        for &b in &u.ascending()[u.rank(a)..u.rank(tau)] {
            t.check(c.clos[b][s], || {
                format!("arena={} X={} alpha={} sigma={} beta={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(s), u.elem(b))
            });
        }
    })
}

pub fn cx4aro(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let Some(&rho) = u.ascending().last() else { return };
        let kappas = elems(ar);
        for c in &ar.cases {
            let below = u.restrict(&c.x, rho);
            for &k in &kappas {
                for nu in 0..u.len() {
                    if ar.ktab.upto(u, nu, k).is_subset(&below) {
                        t.check(c.clos[k][nu], || {
                            format!("arena={} X={} kappa={} nu={} rho={}", ar.name, ar.show(&c.x), u.elem(k), u.elem(nu), u.elem(rho))
                        });
                    }
                }
            }
        }
        t.note("rho is the largest element of the carrier");
    })
}

pub fn cx6(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        for c in ar.cases.iter().filter(|c| ar.has_a(c) && ar.has_k(c)) {
            for s in 0..u.len() {
                for &a in ar.preds[s].iter().filter(|&&a| c.g[a]) {
                    let between = ar.preds[s].iter().any(|&d| c.x[d] && u.le(a, d));
                    t.check(between || c.g[s], || {
                        format!("arena={} X={} alpha={} sigma={}", ar.name, ar.show(&c.x), u.elem(a), u.elem(s))
                    });
                }
            }
        }
    })
}

pub fn gamma_a_monotone(ctx: &Ctx) -> Result<Tally> {
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let es = elems(ar);
        for c in &ar.cases {
            let mut prev: Option<(usize, Set)> = None;
            for &a in u.ascending().iter().filter(|a| es.contains(a)) {
                let y = u.restrict(&c.x, a);
                let img = u.gamma_a(&c.x, &y);
                if let Some((p, before)) = &prev {
                    t.check(before.is_subset(&img), || {
                        format!("arena={} X={} Y=X|{} Y'=X|{}", ar.name, ar.show(&c.x), u.elem(*p), u.elem(a))
                    });
                }
                prev = Some((a, img));
            }
        }
    })
}

/// Checks `X|alpha = Y|alpha ⇒ op(X)|(alpha+1) = op(Y)|(alpha+1)` with `Y`
/// agreeing with `X` below `alpha` and random at and above it.
fn persistence(ctx: &Ctx, op: impl Fn(&Arena, &Set) -> Vec<Set>) -> Result<Tally> {
    let seed = ctx.opts.seed;
    each_arena(ctx, |ar, t| {
        let u = &ar.uni;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (cases, probes) = if ar.exhaustive { (some_cases(ar, 256), elems(ar)) } else { (some_cases(ar, 12), ar.probes.iter().copied().take(8).collect()) };
        for c in cases {
            let fx = op(ar, &c.x);
            for &a in &probes {
                let mut y = u.restrict(&c.x, a);
                for &b in &u.ascending()[u.rank(a)..] {
                    y.set(b, rng.gen_bool(0.5));
                }
                let fy = op(ar, &y);
                let ok = fx.iter().zip(&fy).all(|(p, q)| u.restrict_le(p, a) == u.restrict_le(q, a));
                t.check(ok, || format!("arena={} X={} Y={} alpha={}", ar.name, ar.show(&c.x), ar.show(&y), u.elem(a)));
            }
        }
    })
}

pub fn persistence_g(ctx: &Ctx) -> Result<Tally> {
    persistence(ctx, |ar, x| vec![ar.uni.g_set(x)])
}

pub fn persistence_gamma2(ctx: &Ctx) -> Result<Tally> {
    persistence(ctx, |ar, x| vec![ar.uni.gamma2(x)])
}

fn pin_ops(ctx: &Ctx) -> Result<Vec<PiNOps<'_>>> {
    ctx.arenas()?.iter().map(|ar| PiNOps::new(&ar.uni)).collect()
}

fn ops_for<'a, T>(ctx: &Ctx, ops: &'a [T], ar: &Arena) -> &'a T {
    let pos = ctx.arenas().expect("built").iter().position(|a| std::ptr::eq(a, ar)).expect("arena");
    &ops[pos]
}

pub fn persistence_gi(ctx: &Ctx) -> Result<Tally> {
    let ops = pin_ops(ctx)?;
    persistence(ctx, |ar, x| ops_for(ctx, &ops, ar).g_levels(x)[1..].to_vec())
}

pub fn persistence_gamma_n(ctx: &Ctx) -> Result<Tally> {
    let ops = pin_ops(ctx)?;
    persistence(ctx, |ar, x| vec![ops_for(ctx, &ops, ar).gamma_n(x)])
}

pub fn persistence_gamma32(ctx: &Ctx) -> Result<Tally> {
    let ops: Vec<M32Ops<'_>> = ctx.arenas()?.iter().map(|ar| M32Ops::new(&ar.uni)).collect();
    persistence(ctx, |ar, x| vec![ops_for(ctx, &ops, ar).gamma32(x)])
}
