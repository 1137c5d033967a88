//! Families of subsets over which the closure-set checks quantify.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Ctx;
use crate::diagram::{dedup, sort_canonical, Diagram};
use crate::error::Result;
use crate::operators::{iterate, Set, Universe};
use crate::relations::sub_chain;
use crate::subterm::k_sigma;

/// `U{K_sigma nu : sigma <= beta}` for every `nu` and `beta`, as prefix unions
/// over the thresholds `sigma ∈ sd^+(nu)`, with `K_0 nu` always included.
pub struct KTable {
    steps: Vec<Vec<(Option<usize>, Set, Option<usize>)>>,
}

impl KTable {
    pub fn new(uni: &Universe) -> Result<Self> {
        let zero = Diagram::zero();
        let steps = (0..uni.len())
            .into_par_iter()
            .map(|nu| {
                let d = uni.elem(nu);
                let mut acc = uni.empty();
                for k in k_sigma(&zero, d).iter() {
                    acc.insert(uni.idx(k)?);
                }
                let mut out = vec![(None, acc.clone(), max_rank(uni, &acc))];
                let mut sigmas: Vec<usize> = d.sd_plus().iter().map(|s| uni.idx(s)).collect::<Result<_>>()?;
                sigmas.sort_by_key(|&s| uni.rank(s));
                for s in sigmas {
                    for k in k_sigma(uni.elem(s), d).iter() {
                        acc.insert(uni.idx(k)?);
                    }
                    out.push((Some(uni.rank(s)), acc.clone(), max_rank(uni, &acc)));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KTable { steps })
    }

    fn step(&self, uni: &Universe, nu: usize, beta: usize) -> &(Option<usize>, Set, Option<usize>) {
        let r = uni.rank(beta);
        self.steps[nu].iter().rev().find(|(t, _, _)| t.map_or(true, |t| t <= r)).expect("K_0 step")
    }

    /// `U{K_sigma nu : sigma <= beta}`.
    pub fn upto(&self, uni: &Universe, nu: usize, beta: usize) -> &Set {
        &self.step(uni, nu, beta).1
    }

    /// The rank of the largest member of [`KTable::upto`], if any.
    pub fn max_rank_upto(&self, uni: &Universe, nu: usize, beta: usize) -> Option<usize> {
        self.step(uni, nu, beta).2
    }

    /// `U{K_sigma nu : sigma}` over all `sigma`.
    pub fn all(&self, nu: usize) -> &Set {
        &self.steps[nu].last().expect("K_0 step").1
    }
}

fn max_rank(uni: &Universe, x: &Set) -> Option<usize> {
    x.ones().map(|i| uni.rank(i)).max()
}

/// One subset `X` with its closure sets `C^alpha(X)` for every `alpha`, and `G(X)`.
pub struct Case {
    pub x: Set,
    pub clos: Vec<Set>,
    pub g: Set,
}

impl Case {
    pub fn new(uni: &Universe, x: Set) -> Self {
        let clos = closures(uni, &x);
        let g = g_from(uni, &x, &clos);
        Case { x, clos, g }
    }
}

/// `C^alpha(X)` for every `alpha`.
pub fn closures(uni: &Universe, x: &Set) -> Vec<Set> {
    (0..uni.len()).map(|a| uni.closure(a, x)).collect()
}

/// `G(X)` from precomputed closures.
pub fn g_from(uni: &Universe, x: &Set, clos: &[Set]) -> Set {
    let mut g = uni.empty();
    for a in 0..uni.len() {
        let c = &clos[a];
        g.set(a, c[a] && c.ones().all(|b| !uni.lt(b, a) || x[b]));
    }
    g
}

/// A universe with a family of subsets.
pub struct Arena {
    pub name: &'static str,
    pub uni: Universe,
    pub cases: Vec<Case>,
    /// Whether `cases` holds every subset of the universe.
    pub exhaustive: bool,
    pub ktab: KTable,
    /// For each element `sigma`, the `D` elements `delta` with `delta ≺ sigma`.
    pub preds: Vec<Vec<usize>>,
    /// Elements probed by the persistence checks.
    pub probes: Vec<usize>,
}

impl Arena {
    fn new(name: &'static str, uni: Universe, sets: Vec<Set>, exhaustive: bool, probes: usize, seed: u64) -> Result<Self> {
        let ktab = KTable::new(&uni)?;
        let mut preds = vec![Vec::new(); uni.len()];
        for d in 0..uni.len() {
            for s in sub_chain(uni.elem(d)) {
                preds[uni.idx(&s)?].push(d);
            }
        }
        let cases = sets.into_par_iter().map(|x| Case::new(&uni, x)).collect();
        let all: Vec<usize> = (0..uni.len()).collect();
        let probes = super::stratified(&all, probes.max(1), seed);
        Ok(Arena { name, uni, cases, exhaustive, ktab, preds, probes })
    }

    /// Condition (A): every member `alpha` lies in `C^alpha(X)`.
    pub fn has_a(&self, c: &Case) -> bool {
        c.x.ones().all(|a| c.clos[a][a])
    }

    /// Condition (K): `K_sigma alpha ⊆ X` for members `alpha` and all `sigma`.
    pub fn has_k(&self, c: &Case) -> bool {
        c.x.ones().all(|a| self.ktab.all(a).is_subset(&c.x))
    }

    /// Closes a set upward under `alpha ↦ K_sigma alpha`.
    pub fn k_close(&self, x: &mut Set) {
        loop {
            let before = x.count_ones(..);
            let members: Vec<usize> = x.ones().collect();
            for a in members {
                x.union_with(self.ktab.all(a));
            }
            if x.count_ones(..) == before {
                return;
            }
        }
    }

    /// Removes members `alpha ∉ C^alpha(X)` until condition (A) holds.
    pub fn a_repair(&self, x: &mut Set) {
        loop {
            let bad: Vec<usize> = x.ones().filter(|&a| !self.uni.closure(a, x)[a]).collect();
            if bad.is_empty() {
                return;
            }
            for a in bad {
                x.set(a, false);
            }
        }
    }

    pub fn show(&self, x: &Set) -> String {
        super::show_set(&self.uni, x)
    }
}

/// A subdiagram-closed subset of at most `k` elements, in canonical order.
///
/// The smallest `D^Q` elements are taken first together with their
/// subdiagrams, and the rest is filled from the front of the carrier.
pub fn sub_carrier(uni: &Universe, k: usize) -> Vec<Diagram> {
    let mut chosen: Vec<Diagram> = Vec::new();
    let try_add = |d: &Diagram, chosen: &mut Vec<Diagram>| {
        let mut next = chosen.clone();
        next.extend(d.sd_plus());
        dedup(&mut next);
        if next.len() <= k {
            *chosen = next;
        }
    };
    for d in uni.elements().iter().filter(|d| d.is_dq()) {
        try_add(d, &mut chosen);
    }
    for d in uni.elements() {
        try_add(d, &mut chosen);
    }
    sort_canonical(&mut chosen);
    chosen
}

fn random_sets(ar: &Arena, count: usize, seed: u64) -> Vec<Set> {
    let uni = &ar.uni;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let p: f64 = rng.gen_range(0.05..0.95);
        let mut x = uni.empty();
        for a in 0..uni.len() {
            x.set(a, rng.gen_bool(p));
        }
        match k % 4 {
            0 => {}
            1 => ar.k_close(&mut x),
            2 => ar.a_repair(&mut x),
            _ => {
                let cut = rng.gen_range(0..=uni.len());
                for &a in &uni.ascending()[cut..] {
                    x.set(a, false);
                }
                for &a in &uni.ascending()[..cut] {
                    if rng.gen_bool(0.9) {
                        x.insert(a);
                    }
                }
                ar.a_repair(&mut x);
                ar.k_close(&mut x);
            }
        }
        out.push(x);
    }
    out
}

fn stage_sets(uni: &Universe) -> Result<Vec<Set>> {
    let op = super::system_operator(uni)?;
    let map = iterate(&op)?;
    Ok(map.history)
}

/// The exhaustive sub-carrier arena and the random full-carrier arena.
pub(super) fn build(ctx: &Ctx) -> Result<Vec<Arena>> {
    let o = &ctx.opts;
    let small_elems = sub_carrier(&ctx.uni, o.sub_carrier);
    let small = Universe::from_elements(ctx.params, small_elems)?;
    let m = small.len();
    let sets: Vec<Set> = (0u64..1 << m)
        .map(|mask| {
            let mut x = small.empty();
            for i in 0..m {
                x.set(i, mask >> i & 1 == 1);
            }
            x
        })
        .collect();
    let small = Arena::new("sub", small, sets, true, m, o.seed)?;

    let full_uni = Universe::from_elements(ctx.params, ctx.uni.elements().to_vec())?;
    let mut full = Arena::new("full", full_uni, Vec::new(), false, o.persistence_probes, o.seed)?;
    let mut sets = random_sets(&full, o.random_subsets, o.seed);
    sets.extend(stage_sets(&full.uni)?);
    full.cases = sets.into_par_iter().map(|x| Case::new(&full.uni, x)).collect();
    Ok(vec![small, full])
}
