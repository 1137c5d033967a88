//! Hand-evaluated values and enumerated witnesses for the core operations.

use odpn::accessors::{accessors, has_index, in_set, rg, st};
use odpn::decomposition::{case_one_holds, decompose, st_bar};
use odpn::diagram::Class;
use odpn::enumeration::{enumerate_fragment, random_diagrams, Carrier, GenConfig};
use odpn::index_seq::IndexSeq;
use odpn::operators::{iterate, mahlo_height, HeightTop, M32Ops, OpName, Operator, Universe};
use odpn::relations::{alpha_pi, compare, decomp_seq, lh, lhd_up, ppd, prec_dot, prec_i, sub_chain};
use odpn::subterm::{b_above, k_d, k_sigma};
use odpn::validity::{Clause, D12Subcase, System};
use odpn::{parse, Diagram, SystemParams};
use std::cmp::Ordering;

fn p(text: &str) -> Diagram {
    parse(text).unwrap()
}

fn s(text: &str) -> IndexSeq {
    text.parse().unwrap()
}

fn pin4() -> System {
    System::new(SystemParams::pi_n(4))
}

fn fragment(params: SystemParams, bound: u32) -> Carrier {
    enumerate_fragment(&GenConfig::new(params, bound)).unwrap()
}

/// Subdiagram closure of forty seeded random diagrams.
fn chain_carrier(n: u32) -> Carrier {
    let mut cfg = GenConfig::new(SystemParams::pi_n(n), 5);
    cfg.seed = 7;
    Carrier::from_diagrams(cfg.params, random_diagrams(&cfg, 40))
}

#[test]
fn collapse_classes() {
    assert_eq!(p("d(Om;;0)").classify(), Class::SC);
    assert_eq!(p("d(pi;[3,pi,pi,0];0)").classify(), Class::RDQ);
}

#[test]
fn plain_collapse_parts() {
    let e = p("d(Om;;0)");
    assert!(e.q_set().unwrap().is_empty());
    assert_eq!(e.c_set().unwrap(), vec![Diagram::zero()]);
}

#[test]
fn base_term_accessors_below_top_level() {
    let a = accessors(&p("d(pi;[3,pi,pi,0];0)"), 2).unwrap();
    assert_eq!(a.pd, Diagram::pi());
    assert_eq!(a.st, None);
    assert_eq!(a.rg, None);
    assert_eq!(a.in_set, vec![3]);
}

#[test]
fn k_sigma_values() {
    let e = p("d(Om;;0)");
    assert_eq!(*k_sigma(&Diagram::omega(), &e), vec![e.clone()]);
    assert!(k_sigma(&Diagram::pi(), &e).is_empty());
    assert_eq!(*k_d(&p("d(Om;;0)+phi(0,0)")), vec![e]);
}

#[test]
fn b_above_base_term() {
    assert_eq!(*b_above(&Diagram::omega(), &p("d(pi;[3,pi,pi,0];Om)")), vec![Diagram::omega()]);
}

#[test]
fn order_basics() {
    assert_eq!(compare(&p("d(Om;;0)"), &Diagram::omega()), Ordering::Less);
    assert_eq!(compare(&Diagram::omega(), &p("d(pi;[3,pi,pi,0];0)")), Ordering::Less);
}

#[test]
fn level_two_chain_matches_subscript_chain_on_dq() {
    let c = fragment(SystemParams::pi_n(4), 7);
    let dq: Vec<&Diagram> = c.elements.iter().filter(|d| d.is_dq()).collect();
    for a in &dq {
        for b in &dq {
            assert_eq!(prec_i(2, a, b), prec_dot(a, b), "{a} {b}");
        }
    }
}

#[test]
fn alpha_pi_follows_the_subscript_chain() {
    let c = Carrier::from_diagrams(SystemParams::pi_n(4), random_diagrams(&GenConfig::new(SystemParams::pi_n(4), 5), 20));
    let mut deep = 0;
    for a in c.elements.iter().filter(|d| d.is_dq()) {
        let mut chain = vec![a.clone()];
        chain.extend(sub_chain(a));
        let top = chain.iter().find(|d| d.sub().is_some_and(Diagram::is_pi)).cloned().unwrap();
        assert_eq!(alpha_pi(a).unwrap(), top);
        deep += usize::from(chain.len() >= 4);
    }
    assert!(deep > 0, "no three-deep chain in the sample");
}

#[test]
fn decomposition_sequence_without_indexed_ancestor() {
    let r = p("d(pi;[3,pi,pi,0];0)");
    assert_eq!(decomp_seq(2, &r).unwrap(), vec![r.clone()]);
    assert_eq!(lh(2, &r).unwrap(), 1);
}

#[test]
fn decomposition_sequence_starts_at_indexed_term() {
    let c = chain_carrier(5);
    let mut seen = 0;
    for a in c.elements.iter().filter(|d| d.is_dq()) {
        for i in 2..4 {
            if has_index(i, a) {
                seen += 1;
                let es = decomp_seq(i, a).unwrap();
                assert_eq!(&es[0], a);
                for w in es.windows(2) {
                    assert!(prec_i(i + 1, &w[0], &w[1]));
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn lhd_up_at_range_witness() {
    let c = chain_carrier(5);
    let mut found = false;
    for a in c.elements.iter().filter(|d| d.is_dq()) {
        let i = 2;
        if !has_index(i, a) {
            continue;
        }
        let (Some(r), Ok(q)) = (rg(i, a).unwrap(), odpn::accessors::pd(i + 1, a)) else { continue };
        if prec_i(i, &r, &q) {
            assert!(lhd_up(i, a, &r));
            found = true;
        }
    }
    assert!(found, "no witness with rg below pd at the next level");
}

#[test]
fn ppd_is_range_on_indexed_levels() {
    let c = fragment(SystemParams::pi_n(4), 7);
    for a in c.elements.iter().filter(|d| d.is_dq()) {
        for i in 2..3 {
            if has_index(i, a) {
                assert_eq!(Some(ppd(i, a).unwrap()), rg(i, a).unwrap());
            }
        }
    }
}

#[test]
fn od_validity_values() {
    let od = System::new(SystemParams::od(4));
    assert!(od.validate(&p("d(Om;;0)")).valid);
    assert!(od.validate(&p("suc(d(pi;[3,pi,pi,0];0),1)")).valid);
    let c = fragment(SystemParams::od(4), 7);
    let bad = c.elements.iter().find_map(|a| {
        let d = Diagram::d_unchecked(Diagram::omega(), vec![], a.clone());
        od.validate(&d).has(Clause::OdMu).then_some(d)
    });
    assert!(bad.is_some(), "no body violating the collapsing condition");
}

#[test]
fn m32_validity_values() {
    let m = System::new(SystemParams::m32());
    assert!(m.validate(&p("d(pi;[2,pi,pi,0];0)")).valid);
    assert!(m.validate(&p("d(pi;[2,pi,pi,Om];0)")).has(Clause::StBound32Pi));
}

#[test]
fn m32_case_one_witness() {
    let m = System::new(SystemParams::m32());
    let c = fragment(SystemParams::m32(), 8);
    let found = c.elements.iter().any(|eta| {
        let Some(kappa) = st(2, eta).ok().flatten() else { return false };
        if !odpn::validity::in_m3(eta) || !eta.sub().is_some_and(Diagram::is_pi) {
            return false;
        }
        let raw = Diagram::d_unchecked(eta.clone(), vec![odpn::Quad::new(2, Diagram::pi(), eta.clone(), kappa)], Diagram::zero());
        m.validate(&raw).has(Clause::Case1M32)
    });
    assert!(found);
}

#[test]
fn pin_validity_values() {
    let sys = pin4();
    let r = sys.validate(&p("d(pi;[3,pi,pi,0];0)"));
    assert!(r.valid);
    assert_eq!(r.d12, vec![(3, D12Subcase::One)]);
    assert!(sys.validate(&p("d(pi;[3,pi,pi,0],[2,pi,pi,0];0)")).has(Clause::JMonotone));
    let r1 = p("d(pi;[3,pi,pi,0];0)");
    let cand = Diagram::d_unchecked(
        r1.clone(),
        vec![odpn::Quad::new(2, r1.clone(), r1.clone(), Diagram::zero()), odpn::Quad::new(3, Diagram::pi(), r1.clone(), Diagram::zero())],
        Diagram::zero(),
    );
    assert!(sys.validate(&cand).has(Clause::D11), "{}", sys.validate(&cand));
}

#[test]
fn unitary_split_and_weights() {
    let parts = s("s[2,5):101").unitary_decomp();
    assert_eq!(parts, vec![s("s[2,3):1"), s("s[3,5):01")]);
    assert_eq!(IndexSeq::empty(2).weight_e(6), 8);
    assert_eq!(s("s[2,4):11").weight_e(6), 0);
    assert_eq!(s("s[2,3):0").weight_e(6), 5);
    assert_eq!(s("s[2,4):00").weight_e(6), 4);
    assert_eq!(s("s[2,4):01").weight_e(6), 3);
}

#[test]
fn decompose_null_and_case_two() {
    let a = p("d(pi;[5,pi,pi,0];0)");
    assert_eq!(decompose(&a, &IndexSeq::empty(3)).unwrap(), a);
    let c = fragment(SystemParams::pi_n(6), 8);
    let mut found = false;
    'outer: for a in c.elements.iter().filter(|d| d.is_dq()) {
        for t in odpn::index_seq::all_in(6).into_iter().filter(|t| t.is_unitary() && !t.is_null()) {
            if !case_one_holds(a, &t).unwrap() {
                assert_eq!(decompose(a, &t).unwrap(), alpha_pi(a).unwrap());
                found = true;
                break 'outer;
            }
        }
    }
    assert!(found, "no Case 2 witness");
}

#[test]
fn st_bar_of_short_sequence() {
    let c = fragment(SystemParams::pi_n(5), 8);
    let n = 5;
    for a in c.elements.iter().filter(|d| d.is_dq()) {
        if lh(n - 2, a).unwrap() == 1 {
            let b = st_bar(n, a).unwrap();
            assert_eq!(Some(b.first), st(n - 1, &alpha_pi(a).unwrap()).unwrap());
            assert_eq!(Some(b.second), st(n - 1, a).unwrap());
        }
    }
}

#[test]
fn closure_and_good_points_on_empty_set() {
    let c = fragment(SystemParams::pi_n(4), 5);
    let u = Universe::new(&c).unwrap();
    let e = u.empty();
    assert!(!u.in_c(&p("d(Om;;0)"), &Diagram::pi(), &e).unwrap());
    assert!(u.g_set(&e)[u.idx(&Diagram::zero()).unwrap()]);
}

#[test]
fn m32_zero_enters_at_stage_zero() {
    let c = fragment(SystemParams::m32(), 6);
    let u = Universe::new(&c).unwrap();
    let z = u.idx(&Diagram::zero()).unwrap();
    assert!(M32Ops::new(&u).gamma32(&u.empty())[z]);
    let sm = iterate(&Operator::new(OpName::Gamma32, &u).unwrap()).unwrap();
    assert_eq!(sm.stage(z), Some(0));
}

#[test]
fn g_levels_for_n_four_have_one_sequence() {
    assert_eq!(odpn::index_seq::all_in(4), vec![IndexSeq::empty(2)]);
}

#[test]
fn mahlo_height_of_zero_stage_collapse() {
    let h = mahlo_height(&p("d(pi;[2,pi,pi,0];0)")).unwrap();
    assert_eq!(h.first, Diagram::zero());
    assert_eq!(h.second, HeightTop::Pi);
}

#[test]
fn some_n6_sequence_has_length_two() {
    let c = chain_carrier(6);
    assert!(c.elements.iter().filter(|d| d.is_dq()).any(|d| lh(2, d).unwrap() >= 2));
}

#[test]
fn base_collapse_in_small_fragment() {
    assert!(fragment(SystemParams::pi_n(4), 3).elements.contains(&p("d(Om;;0)")));
}

#[test]
fn in_set_of_base_term() {
    assert_eq!(in_set(&p("d(pi;[3,pi,pi,0];0)")), vec![3]);
}
