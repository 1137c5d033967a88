//! Runs the nine acceptance criteria and prints one line per criterion.
//!
//! Built with `harness = false` so the lines reach the terminal under a plain
//! `cargo test`. Exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use odpn::accessors::{accessors, has_index, in_set, pd, rg, st};
use odpn::decomposition::{
    decompose, induced_seq, lhd_seq, lhd_seq_plus, prec_n_pl, prec_s, prec_s_minus, st_bar, subseteq_s,
};
use odpn::enumeration::{enumerate_fragment, oracle_fragment, Carrier, GenConfig};
use odpn::harness::{registry, run_named_suite, CheckResult, RunOptions, Status};
use odpn::index_seq::{self, IndexSeq};
use odpn::operators::{iterate, Distinguished, OpName, Operator, PiNOps, Universe};
use odpn::relations::{
    alpha_pi, chain_i, decomp_seq, lh, lhd, lhd_s, lhd_up, ppd, ppd_chain, prec_i, prec_p, sub_chain,
};
use odpn::subterm::{b_above, k_all, k_d, k_sigma};
use odpn::{compare, parse, print, Diagram, SystemParams};

const ORDER_BUDGET: Duration = Duration::from_secs(120);

struct Run {
    label: &'static str,
    carrier: Carrier,
    results: Vec<CheckResult>,
    order_time: Duration,
}

impl Run {
    fn new(label: &'static str, params: SystemParams, bound: u32) -> Run {
        let carrier = enumerate_fragment(&GenConfig::new(params, bound)).expect("fragment");
        let opts = RunOptions::default();
        let t = Instant::now();
        let mut results = run_named_suite(&carrier, "order", &opts).expect("order suite");
        let order_time = t.elapsed();
        let rest: Vec<&str> = registry().iter().filter(|c| c.suite != "order").map(|c| c.id).collect();
        results.extend(run_named_suite(&carrier, &rest.join(","), &opts).expect("suites"));
        Run { label, carrier, results, order_time }
    }

    fn suite(&self, suite: &str) -> impl Iterator<Item = &CheckResult> + '_ {
        let ids: Vec<&str> = registry().iter().filter(|c| c.suite == suite).map(|c| c.id).collect();
        self.results.iter().filter(move |r| ids.contains(&r.check_id.as_str()))
    }

    fn get(&self, id: &str) -> &CheckResult {
        self.results.iter().find(|r| r.check_id == id).expect("registered check")
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn all_pass<'a>(runs: &[&'a Run], pick: impl Fn(&'a Run) -> Vec<&'a CheckResult>) -> Outcome {
    let mut checks = 0;
    let mut failed = Vec::new();
    for run in runs {
        for r in pick(run) {
            checks += 1;
            if r.status != Status::Pass {
                failed.push(format!("{}:{} ({} violations)", run.label, r.check_id, r.violations));
            }
        }
    }
    let ok = failed.is_empty() && checks > 0;
    let detail = if ok {
        format!("{checks} check runs, zero counterexamples")
    } else {
        format!("{checks} check runs; failing: {}", failed.join(", "))
    };
    Outcome { ok, detail }
}

fn criterion_order(runs: &[&Run]) -> Outcome {
    let mut out = all_pass(runs, |r| r.suite("order").collect());
    for r in runs {
        out.detail.push_str(&format!("; {} in {:.1?}", r.label, r.order_time));
        out.ok &= r.order_time <= ORDER_BUDGET;
    }
    out
}

fn criterion_m32(run: &Run) -> Outcome {
    all_pass(&[run], |r| vec![r.get("lemma-lexM32"), r.get("iterate-gamma32-closed")])
}

fn criterion_am(runs: &[&Run]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for run in runs {
        let r = run.get("theorem-AM");
        ok &= r.status == Status::CarrierSensitiveReport;
        parts.push(format!("{}: {} violations over {} pairs", run.label, r.violations, r.tuples));
    }
    Outcome { ok, detail: format!("emitted as reports; {}", parts.join(", ")) }
}

fn criterion_oracle() -> Outcome {
    let systems = [SystemParams::od(4), SystemParams::m32(), SystemParams::pi_n(4), SystemParams::pi_n(5), SystemParams::pi_n(6)];
    let mut compared = 0;
    let mut bad = Vec::new();
    for p in systems {
        for bound in 1..=6 {
            let fast = enumerate_fragment(&GenConfig::new(p, bound)).expect("fragment");
            compared += fast.len();
            if fast.elements != oracle_fragment(p, bound) {
                bad.push(format!("{p} bound {bound}"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("{} systems x bounds 1..=6, {compared} diagrams; mismatches: {}", systems.len(), bad.len()),
    }
}

fn criterion_roundtrip(runs: &[&Run]) -> Outcome {
    let mut total = 0;
    let mut bad = 0;
    for run in runs {
        for d in &run.carrier.elements {
            total += 1;
            let text = print(d);
            let ok = parse(&text).is_ok_and(|e| &e == d && print(&e) == text);
            if !ok {
                bad += 1;
            }
        }
    }
    Outcome { ok: bad == 0 && total > 0, detail: format!("{total} diagrams, {bad} failures") }
}

/// Exercises the public operations on every element of an `N = 4` fragment.
fn touch_all(carrier: &Carrier) {
    let n = carrier.params.n;
    let seqs = index_seq::all_in(n);
    let els = &carrier.elements;
    let sample: Vec<&Diagram> = els.iter().step_by(7).collect();
    for a in els {
        let _ = (in_set(a), sub_chain(a), k_all(a), k_d(a), alpha_pi(a), st_bar(n, a));
        for i in 2..n {
            let _ = (has_index(i, a), pd(i, a), st(i, a), rg(i, a), accessors(a, i));
            let _ = (chain_i(i, a), decomp_seq(i, a), lh(i, a), ppd(i, a), ppd_chain(i, a));
        }
        for s in &seqs {
            let _ = decompose(a, s);
        }
        for b in &sample {
            let _ = (compare(a, b), k_sigma(b, a), b_above(b, a), prec_n_pl(n, a, b), induced_seq(n, 2, a, b));
            for i in 2..n {
                let _ = (prec_i(i, a, b), prec_p(i, a, b), lhd(i, a, b), lhd_up(i, a, b), lhd_s(i, a, b));
            }
            for s in &seqs {
                let _ = (prec_s(n, s, a, b), subseteq_s(n, s, a, b), lhd_seq(n, s, a, b), lhd_seq_plus(n, s, a, b));
                let _ = prec_s_minus(n, s, s, a, b);
            }
        }
    }
    let uni = Universe::new(carrier).expect("universe");
    for name in [OpName::Gamma2, OpName::GammaN] {
        let op = Operator::new(name, &uni).expect("operator");
        let _ = iterate(&op);
    }
    let ops = PiNOps::new(&uni).expect("operators");
    let _ = (ops.g_levels(&uni.empty()), ops.gamma_n(&uni.full()));
    let dist = Distinguished::new(&uni).expect("layers");
    let _ = (dist.is_d(&uni.empty()), dist.vstar(&uni.full()), dist.layers(&uni.empty(), 0));
}

/// Operations whose index-sequence domain `I(2, N - 2)` is empty at `N = 4`.
fn empty_domain_vectors(carrier: &Carrier) -> Vec<String> {
    let mut bad = Vec::new();
    let empty = IndexSeq::empty(2);
    let all = index_seq::all_in(4);
    if all != vec![empty.clone()] {
        bad.push(format!("all_in(4) = {all:?}"));
    }
    if !(empty.is_null() && empty.count() == 0 && empty.get(2).is_none() && empty.prefixes().count() == 1) {
        bad.push("empty sequence accessors".into());
    }
    if empty.lex_less(&empty) || !empty.is_initial_segment_of(&empty) {
        bad.push("empty sequence order".into());
    }
    if index_seq::initial(4).iter().any(|s| !s.is_empty()) {
        bad.push("initial(4) not empty".into());
    }
    let base = parse("d(pi;[3,pi,pi,0];0)").unwrap();
    let other = parse("d(pi;[3,pi,pi,0];Om)").unwrap();
    if decompose(&base, &empty).ok() != Some(base.clone()) {
        bad.push("decompose on the empty sequence".into());
    }
    if induced_seq(4, 2, &base, &other).ok() != Some(empty.clone()) {
        bad.push("induced sequence over an empty range".into());
    }
    for a in carrier.elements.iter().filter(|d| d.is_dq()).take(40) {
        for b in carrier.elements.iter().filter(|d| d.is_dq()).take(40) {
            let expect = prec_p(2, a, b);
            if prec_s(4, &empty, a, b).ok() != Some(expect) {
                bad.push(format!("prec_s on empty sequence for {a}, {b}"));
            }
        }
    }
    bad
}

fn criterion_totality(run4: &Run) -> Outcome {
    let crashed = catch_unwind(AssertUnwindSafe(|| touch_all(&run4.carrier))).is_err();
    let errored: Vec<&str> = run4
        .results
        .iter()
        .filter(|r| r.counterexamples.iter().any(|w| w.starts_with("error=") || w.contains(" error=")))
        .map(|r| r.check_id.as_str())
        .collect();
    let vectors = empty_domain_vectors(&run4.carrier);
    let ok = !crashed && errored.is_empty() && vectors.is_empty();
    Outcome {
        ok,
        detail: format!(
            "{} elements exercised, panic={crashed}, erroring checks={errored:?}, empty-domain vector failures={vectors:?}",
            run4.carrier.len()
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let n4 = Run::new("piN(N=4) bound 7", SystemParams::pi_n(4), 7);
    let n6 = Run::new("piN(N=6) bound 6", SystemParams::pi_n(6), 6);
    let m32 = Run::new("m32 bound 8", SystemParams::m32(), 8);
    let pin = [&n4, &n6];
    let every = [&n4, &n6, &m32];

    let outcomes = [
        ("order axioms", criterion_order(&pin)),
        ("structural lemma suite", all_pass(&pin, |r| r.suite("structural").collect())),
        ("two-level Mahlo suite", criterion_m32(&m32)),
        ("stage-order theorem report", criterion_am(&every)),
        ("closure-set suite", all_pass(&every, |r| r.suite("closure").collect())),
        ("distinguished predicates", all_pass(&pin, |r| r.suite("distinguished").collect())),
        ("oracle equivalence", criterion_oracle()),
        ("round trip", criterion_roundtrip(&every)),
        ("degenerate-N totality", criterion_totality(&n4)),
    ];

    let mut failed = 0;
    for (k, (name, o)) in outcomes.iter().enumerate() {
        println!("criterion {} {:<28} {}  {}", k + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    for run in every {
        for r in run.results.iter().filter(|r| r.status == Status::CarrierSensitiveReport && r.violations > 0) {
            println!("report {} {}: {} violations, first: {}", run.label, r.check_id, r.violations, r.counterexamples[0]);
        }
    }
    println!("acceptance: {}/9 passed in {:.1?}", 9 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
