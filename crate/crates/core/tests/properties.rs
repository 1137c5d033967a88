//! Invariants checked over enumerated fragments and seeded random diagrams.

use std::cmp::Ordering;
use std::sync::OnceLock;

use odpn::decomposition::{decompose, induced_seq};
use odpn::enumeration::{enumerate_fragment, random_diagrams, Carrier, GenConfig};
use odpn::index_seq::IndexSeq;
use odpn::operators::{iterate, OpName, Operator, Universe};
use odpn::relations::prec_i;
use odpn::validity::System;
use odpn::{compare, parse, print, Diagram, SystemParams};
use proptest::prelude::*;
use proptest::sample::Index;

fn n4() -> &'static Carrier {
    static C: OnceLock<Carrier> = OnceLock::new();
    C.get_or_init(|| enumerate_fragment(&GenConfig::new(SystemParams::pi_n(4), 6)).unwrap())
}

fn n5() -> &'static Carrier {
    static C: OnceLock<Carrier> = OnceLock::new();
    C.get_or_init(|| enumerate_fragment(&GenConfig::new(SystemParams::pi_n(5), 7)).unwrap())
}

fn dq5() -> &'static [Diagram] {
    static C: OnceLock<Vec<Diagram>> = OnceLock::new();
    C.get_or_init(|| n5().elements.iter().filter(|d| d.is_dq()).cloned().collect())
}

fn pick<'a>(c: &'a Carrier, i: &Index) -> &'a Diagram {
    i.get(&c.elements)
}

fn random(n: u32, seed: u64, count: usize) -> Vec<Diagram> {
    let mut cfg = GenConfig::new(SystemParams::pi_n(n), 5);
    cfg.seed = seed;
    random_diagrams(&cfg, count)
}

fn seq(d: u32, bits: &[bool]) -> IndexSeq {
    IndexSeq::new(d, bits.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn order_is_a_strict_total_order(i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let c = n4();
        let (a, b, x) = (pick(c, &i), pick(c, &j), pick(c, &k));
        prop_assert_eq!(compare(a, b), compare(b, a).reverse());
        prop_assert_eq!(compare(a, b) == Ordering::Equal, a == b);
        if compare(a, b) == Ordering::Less && compare(b, x) == Ordering::Less {
            prop_assert_eq!(compare(a, x), Ordering::Less);
        }
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        for d in random(5, seed, 4) {
            let text = print(&d);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(print(&back), text);
        }
    }

    #[test]
    fn whitespace_is_insignificant(seed in any::<u64>()) {
        for d in random(4, seed, 3) {
            let spaced: String = print(&d).chars().flat_map(|ch| match ch {
                ',' | ';' | '(' | '[' => vec![ch, ' '],
                ')' | ']' => vec![' ', ch],
                _ => vec![ch],
            }).collect();
            prop_assert_eq!(parse(&spaced).unwrap(), d);
        }
    }

    #[test]
    fn sums_are_normal_and_dominate_their_parts(i in any::<Index>(), j in any::<Index>()) {
        let c = n4();
        let (a, b) = (pick(c, &i), pick(c, &j));
        let s = a.add(b);
        prop_assert!(s.is_normal());
        prop_assert_eq!(s.normalize(), s.clone());
        prop_assert_ne!(compare(a, &s), Ordering::Greater);
        prop_assert_ne!(compare(b, &s), Ordering::Greater);
    }

    #[test]
    fn subdiagrams_of_valid_diagrams_are_valid(seed in any::<u64>()) {
        let sys = System::new(SystemParams::pi_n(5));
        for d in random(5, seed, 3) {
            prop_assert!(sys.is_valid(&d));
            for e in d.sd() {
                prop_assert!(sys.is_valid(&e), "{} inside {}", e, d);
            }
        }
    }

    #[test]
    fn lex_order_is_strict_and_total_per_length(
        d in 2u32..5,
        pair in (0usize..7).prop_flat_map(|n| (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n))),
    ) {
        let (s, t) = (seq(d, &pair.0), seq(d, &pair.1));
        prop_assert!(!(s.lex_less(&t) && t.lex_less(&s)));
        prop_assert!(!s.lex_less(&s));
        if s != t {
            prop_assert!(s.lex_less(&t) || t.lex_less(&s));
        }
    }

    #[test]
    fn restriction_and_concatenation_split_a_sequence(
        d in 2u32..5,
        bits in prop::collection::vec(any::<bool>(), 0..8),
        cut in any::<Index>(),
    ) {
        let s = seq(d, &bits);
        let k = cut.index(bits.len() + 1);
        let tail = seq(d + k as u32, &bits[k..]);
        prop_assert_eq!(s.restrict(d + k as u32).concat(&tail).unwrap(), s.clone());
        let parts = s.unitary_decomp();
        let mut joined = IndexSeq::empty(d);
        for u in &parts {
            prop_assert!(u.is_unitary() || u.is_null());
            joined = joined.concat(u).unwrap();
        }
        prop_assert_eq!(joined, s.clone());
        prop_assert_eq!(s.to_string().parse::<IndexSeq>().unwrap(), s);
    }

    #[test]
    fn level_relations_are_nested(i in any::<Index>(), j in any::<Index>()) {
        let c = n5();
        let (a, b) = (pick(c, &i), pick(c, &j));
        for lvl in 2..4 {
            if prec_i(lvl + 1, a, b) {
                prop_assert!(prec_i(lvl, a, b), "level {} not inside level {}", lvl + 1, lvl);
            }
        }
        if prec_i(2, a, b) {
            prop_assert_eq!(compare(a, b), Ordering::Less);
        }
    }

    #[test]
    fn null_sequence_decomposes_to_itself(i in any::<Index>(), k in 2u32..4) {
        let a = i.get(dq5());
        prop_assert_eq!(decompose(a, &IndexSeq::empty(k)).unwrap(), a.clone());
    }

    #[test]
    fn induced_sequence_spans_its_domain(i in any::<Index>(), j in any::<Index>(), k in 2u32..5) {
        let s = induced_seq(5, k, i.get(dq5()), j.get(dq5())).unwrap();
        prop_assert_eq!(s.d(), k);
        prop_assert_eq!(s.ell(), k.max(3));
    }

    #[test]
    fn stages_are_least_and_cumulative(seed in any::<u64>()) {
        let carrier = Carrier::from_diagrams(SystemParams::pi_n(4), random(4, seed, 8));
        let uni = Universe::new(&carrier).unwrap();
        let op = Operator::new(OpName::Gamma2, &uni).unwrap();
        let sm = iterate(&op).unwrap();
        for w in sm.history.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]) && w[0] != w[1]);
        }
        prop_assert_eq!(sm.history.last().unwrap(), &sm.fixpoint);
        for x in 0..uni.len() {
            match sm.stage(x) {
                Some(k) => {
                    let k = k as usize;
                    prop_assert!(!sm.history[k][x] && sm.history[k + 1][x]);
                    prop_assert!(op.apply(&sm.history[k])[x]);
                }
                None => prop_assert!(!sm.fixpoint[x]),
            }
        }
    }
}
