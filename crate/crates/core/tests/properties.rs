mod common;

use hypergame::arena::solve_arena;
use hypergame::corpus::{generate, parse, serialize, GeneratorParams};
use hypergame::grundy::{efficient_equiv, impartial_equiv, is_t_fixpoint};
use hypergame::order::{gfp, phi_step, RelationPair, Universe};
use hypergame::strategy::{play, PositionalStrategy};
use hypergame::{
    bisim_minimize, classify, difference, gamma, gamma0, ge, gen_nim_sum, hyperbisimilar, outcome_profile,
    profile_from_arena, sum, zero, GameGraph, GrundyValue, PlayOutcome, Sector, Side,
};
use proptest::prelude::*;

fn graph(max: usize) -> impl Strategy<Value = GameGraph> {
    (1..=max, 0.1f64..0.5, any::<bool>(), any::<bool>(), any::<u64>()).prop_map(|(n, d, imp, acyc, seed)| {
        generate(&GeneratorParams {
            positions: n,
            density: d,
            impartial: imp,
            acyclic: acyc,
            seed,
        })
        .unwrap()
    })
}

fn impartial_graph(max: usize) -> impl Strategy<Value = GameGraph> {
    (1..=max, 0.1f64..0.5, any::<bool>(), any::<u64>()).prop_map(|(n, d, acyc, seed)| {
        generate(&GeneratorParams::new(n, d, seed).impartial(true).acyclic(acyc)).unwrap()
    })
}

fn grundy_value() -> impl Strategy<Value = GrundyValue> {
    prop_oneof![
        (0usize..16).prop_map(GrundyValue::Nat),
        proptest::collection::btree_set(0usize..16, 0..4).prop_map(GrundyValue::Inf),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reachable_is_idempotent(g in graph(10)) {
        let r = g.reachable();
        prop_assert_eq!(r.reachable(), r);
    }

    #[test]
    fn minimization_is_minimal_and_faithful(g in graph(10)) {
        let m = bisim_minimize(&g).graph;
        prop_assert!(hyperbisimilar(&g, &m));
        for p in 0..m.len() {
            for q in p + 1..m.len() {
                prop_assert!(!hyperbisimilar(&m.with_root(m.id(p)).unwrap(), &m.with_root(m.id(q)).unwrap()));
            }
        }
        prop_assert_eq!(outcome_profile(&g), outcome_profile(&m));
    }

    #[test]
    fn sum_size_is_bounded(x in graph(8), y in graph(8)) {
        prop_assert!(sum(&x, &y).len() <= x.reachable().len() * y.reachable().len());
    }

    #[test]
    fn phi_is_monotone(g in graph(5), seed in any::<u64>()) {
        let u = Universe::pair(&g, None);
        let n = u.len();
        let mut small = RelationPair::empty(n);
        let mut big = RelationPair::empty(n);
        let mut s = seed;
        for x in 0..n {
            for y in 0..n {
                // xorshift bits: each pair lands in neither, the big one, or both.
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                let (a, b) = (s % 3, (s >> 8) % 3);
                big.set_ge(x, y, a > 0);
                small.set_ge(x, y, a > 1);
                big.set_nge(x, y, b > 0);
                small.set_nge(x, y, b > 1);
            }
        }
        prop_assert!(small.is_subset_of(&big));
        prop_assert!(phi_step(&small, &u).is_subset_of(&phi_step(&big, &u)));
    }

    #[test]
    fn gfp_is_a_fixpoint(g in graph(8)) {
        let u = Universe::pair(&g, None);
        let rp = gfp(&u);
        prop_assert_eq!(phi_step(&rp, &u), rp);
    }

    #[test]
    fn impartial_games_are_symmetric(g in impartial_graph(10)) {
        let p = outcome_profile(&g);
        prop_assert_eq!(p.a, p.c);
        prop_assert_eq!(p.b, p.d);
        let s = p.sector().unwrap();
        prop_assert!(matches!(s, Sector::WinI | Sector::WinII | Sector::NlAll));
    }

    #[test]
    fn sum_is_monotone(g1 in graph(5), g2 in graph(5), g3 in graph(5)) {
        if ge(&g1, &g2) {
            prop_assert!(ge(&sum(&g1, &g3), &sum(&g2, &g3)));
        }
    }

    #[test]
    fn order_against_difference(g1 in graph(6), g2 in graph(6)) {
        prop_assert_eq!(ge(&g1, &g2), ge(&difference(&g1, &g2), &zero()));
    }

    #[test]
    fn arena_agrees_with_fixpoint(g in graph(12)) {
        prop_assert_eq!(profile_from_arena(&g), outcome_profile(&g));
    }

    #[test]
    fn arena_regions_are_consistent(g in graph(10)) {
        let s = solve_arena(&g);
        for p in 0..g.len() {
            for mover in [Side::L, Side::R] {
                for side in [Side::L, Side::R] {
                    prop_assert!(!s.winning(side, p, mover) || s.nonlosing(side, p, mover));
                    // Either a side survives or its opponent forces a win.
                    prop_assert_eq!(s.nonlosing(side, p, mover), !s.winning(side.opponent(), p, mover));
                }
            }
        }
    }

    #[test]
    fn played_draws_repeat_a_state(g in graph(10), seed in any::<u64>()) {
        // Arbitrary positional strategies: pick a move by a seeded index.
        let pick = |side: Side| {
            let mut s = PositionalStrategy::new(side);
            for p in 0..g.len() {
                let m = g.moves(p, side);
                if !m.is_empty() {
                    s.choice.insert(p, m[(seed as usize).wrapping_add(p) % m.len()]);
                }
            }
            s
        };
        let (l, r) = (pick(Side::L), pick(Side::R));
        for opener in [Side::L, Side::R] {
            let v = play(&g, &l, &r, opener).unwrap();
            if v.outcome == PlayOutcome::Draw {
                let rep = v.repeated.unwrap();
                prop_assert!(v.trace.iter().filter(|&&s| s == rep).count() >= 2);
            } else {
                let (p, mover) = *v.trace.last().unwrap();
                prop_assert!(g.moves(p, mover).is_empty());
            }
        }
    }

    #[test]
    fn gamma0_is_a_fixpoint(g in impartial_graph(10)) {
        let f = gamma0(&g).unwrap();
        prop_assert!(is_t_fixpoint(&g, &f));
    }

    #[test]
    fn well_behaved_iff_natural(g in impartial_graph(8)) {
        prop_assert_eq!(hypergame::well_behaved(&g), gamma(&g).unwrap().root().is_nat());
    }

    #[test]
    fn gamma_is_bisimulation_invariant(g in impartial_graph(10)) {
        let m = bisim_minimize(&g).graph;
        prop_assert_eq!(gamma(&g).unwrap().root().clone(), gamma(&m).unwrap().root().clone());
        prop_assert!(impartial_equiv(&g, &m).unwrap());
    }

    #[test]
    fn equivalence_procedures_agree(x in impartial_graph(5), y in impartial_graph(5)) {
        prop_assert_eq!(impartial_equiv(&x, &y).unwrap(), efficient_equiv(&x, &y).unwrap());
    }

    #[test]
    fn generalized_sum_laws(v in grundy_value(), w in grundy_value(), a in 0usize..32, b in 0usize..32, c in 0usize..32) {
        prop_assert_eq!(gen_nim_sum(&v, &w), gen_nim_sum(&w, &v));
        prop_assert_eq!(gen_nim_sum(&GrundyValue::Nat(0), &v), v.clone());
        let (na, nb, nc) = (GrundyValue::Nat(a), GrundyValue::Nat(b), GrundyValue::Nat(c));
        prop_assert_eq!(gen_nim_sum(&gen_nim_sum(&na, &nb), &nc), gen_nim_sum(&na, &gen_nim_sum(&nb, &nc)));
        prop_assert_eq!(gen_nim_sum(&na, &na), GrundyValue::Nat(0));
    }

    #[test]
    fn canonical_round_trip(v in grundy_value()) {
        prop_assert_eq!(gamma(&hypergame::make_canonical(&v)).unwrap().root().clone(), v.clone());
        prop_assert_eq!(v.to_string().parse::<GrundyValue>().unwrap(), v);
    }

    #[test]
    fn documents_round_trip(g in graph(10)) {
        let text = serialize(&g);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn impartial_sectors_match_gamma(g in impartial_graph(10)) {
        let v = gamma(&g).unwrap().root().clone();
        prop_assert_eq!(hypergame::outcome_from_gamma(&v).sector(), classify(&g));
    }
}
