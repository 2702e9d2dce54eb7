//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits with status 1 if any of them fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hypergame::arena::{profile_at, solve_arena};
use hypergame::corpus::catalog;
use hypergame::grundy::{in_domain, is_t_fixpoint, star, t_step, GrundyMarking};
use hypergame::order::gfp_relations;
use hypergame::{
    bisim_minimize, classify, contextual_probe, conway_sim, difference, gamma, gamma0,
    ge, gen_nim_sum, grundy_wf, hyperbisimilar, nim_sum, outcome_from_gamma, outcome_profile,
    profile_from_arena, sum, synthesize_nonlosing, synthesize_winning, verify_strategy, zero, Claim,
    GameGraph, GrundyValue, ImpartialOutcome, Player, Sector,
};

use common::*;

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

fn count_failures<T>(items: &[T], mut ok: impl FnMut(&T) -> bool) -> usize {
    items.iter().filter(|x| !ok(x)).count()
}

fn catalog_sectors() -> Check {
    let expected = [
        ("zero", Sector::WinII),
        ("one", Sector::WinL),
        ("minus_one", Sector::WinR),
        ("star1", Sector::WinI),
        ("a", Sector::NlLII),
        ("b", Sector::NlRII),
        ("a0", Sector::NlRI),
        ("b0", Sector::NlLI),
        ("c", Sector::NlAll),
        ("d", Sector::WinII),
    ];
    let wrong: Vec<String> = expected
        .iter()
        .filter_map(|&(name, s)| {
            let got = classify(&catalog(name).unwrap());
            (got != s).then(|| format!("{name}: got {got}, want {s}"))
        })
        .collect();
    Check::new(
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{} games match", expected.len())
        } else {
            wrong.join("; ")
        },
    )
}

fn non_transitivity() -> Check {
    let c1 = catalog("c1").unwrap();
    let c = catalog("c").unwrap();
    let facts = (ge(&c1, &c), ge(&c, &zero()), ge(&c1, &zero()));
    Check::new(
        facts == (true, true, false),
        format!("c1>=c {}, c>=0 {}, c1>=0 {}", facts.0, facts.1, facts.2),
    )
}

fn cross_engine(corpus: &[GameGraph]) -> Check {
    let mut dense_mismatch = 0;
    let arena_mismatch = count_failures(corpus, |g| {
        let local = outcome_profile(g);
        let (u, rp) = gfp_relations(g, None);
        let (x, z) = (u.root(0), u.root(1));
        if [rp.ge(x, z), rp.nge(z, x), rp.ge(z, x), rp.nge(x, z)] != local.as_array() {
            dense_mismatch += 1;
        }
        local == profile_from_arena(g)
    });
    Check::new(
        arena_mismatch == 0 && dense_mismatch == 0,
        format!(
            "{} graphs: {arena_mismatch} fixpoint/arena mismatches, {dense_mismatch} local/dense mismatches",
            corpus.len()
        ),
    )
}

fn determinacy(corpus: &[GameGraph]) -> Check {
    let mut violations = 0usize;
    let mut pairs = 0usize;
    for g in corpus {
        let p = outcome_profile(g);
        if !p.is_consistent() || p.nonlosing().is_empty() {
            violations += 1;
        }
        let (u, rp) = gfp_relations(g, None);
        for x in 0..u.len() {
            if !rp.ge(x, x) {
                violations += 1;
            }
            violations += u.right(x).iter().filter(|&&xr| !rp.nge(x, xr)).count();
            violations += u.left(x).iter().filter(|&&xl| !rp.nge(xl, x)).count();
            for y in 0..u.len() {
                pairs += 1;
                if !(rp.ge(x, y) || rp.nge(x, y)) {
                    violations += 1;
                }
            }
        }
    }
    Check::new(
        violations == 0,
        format!("{} graphs, {pairs} pairs: {violations} violations", corpus.len()),
    )
}

fn sum_algebra() -> Check {
    let gs = random_graphs(1500, 5, None, None, 11);
    let mut violations = 0;
    let mut checked = 0;
    for k in 0..500 {
        let (x, y, z) = (&gs[3 * k], &gs[3 * k + 1], &gs[3 * k + 2]);
        let laws = [
            hyperbisimilar(&sum(x, &zero()), x),
            hyperbisimilar(&sum(x, y), &sum(y, x)),
            hyperbisimilar(&sum(&sum(x, y), z), &sum(x, &sum(y, z))),
            x.negate().negate() == *x,
            hyperbisimilar(&sum(x, y).negate(), &sum(&x.negate(), &y.negate())),
        ];
        checked += laws.len();
        violations += laws.iter().filter(|&&ok| !ok).count();
    }
    Check::new(
        violations == 0,
        format!("500 triples, {checked} law instances: {violations} violations"),
    )
}

fn copy_cat(corpus: &[GameGraph]) -> Check {
    let xs = &corpus[..600];
    let mut wf = 0;
    let mut violations = 0;
    for x in xs {
        let d = difference(x, x);
        let p = outcome_profile(&d);
        if !(p.a && p.c) {
            violations += 1;
        }
        if x.is_wellfounded() {
            wf += 1;
            if p.sector().unwrap() != Sector::WinII {
                violations += 1;
            }
        }
    }
    Check::new(
        violations == 0,
        format!("{} games ({wf} well-founded): {violations} violations", xs.len()),
    )
}

fn traffic_jam() -> Check {
    let g = catalog("traffic_jam").unwrap();
    let published: BTreeMap<&str, GrundyValue> = [
        ("C", GrundyValue::Nat(0)),
        ("D", GrundyValue::Nat(0)),
        ("K", GrundyValue::Nat(0)),
        ("A", GrundyValue::Nat(1)),
        ("E", GrundyValue::Nat(1)),
        ("G", GrundyValue::Nat(1)),
        ("B", GrundyValue::Nat(2)),
        ("F", GrundyValue::Nat(2)),
        ("H", GrundyValue::Nat(2)),
        ("L", GrundyValue::Nat(3)),
        ("N", GrundyValue::inf([])),
        ("O", GrundyValue::inf([])),
        ("I", GrundyValue::inf([1, 2])),
        ("J", GrundyValue::inf([2])),
        ("M", GrundyValue::inf([2, 3])),
    ]
    .into_iter()
    .collect();
    let marking = gamma(&g).unwrap();
    let marking_ok = published
        .iter()
        .all(|(id, v)| marking.get(id) == Some(v))
        && marking.iter().count() == published.len();
    let gamma_classes = marking.classes().len();
    let bisim_classes = bisim_minimize(&g).graph.len();
    Check::new(
        marking_ok && bisim_classes == 8,
        format!(
            "marking {}; bisimulation quotient has {bisim_classes} classes (want 8); gamma classes {gamma_classes}",
            if marking_ok { "matches" } else { "DIFFERS" }
        ),
    )
}

fn nim_values() -> Check {
    let a = nim_sum(1, 3) == 2;
    let v = gen_nim_sum(&GrundyValue::Nat(2), &GrundyValue::inf([1, 2]));
    let b = v == GrundyValue::inf([3, 0]) && outcome_from_gamma(&v) == ImpartialOutcome::WinI;
    let w = gen_nim_sum(&GrundyValue::inf([1, 2]), &GrundyValue::inf([2]));
    let c = w == GrundyValue::inf([]) && outcome_from_gamma(&w) == ImpartialOutcome::Draw;
    Check::new(a && b && c, format!("1+3={}, 2+inf{{1,2}}={v}, inf{{1,2}}+inf{{2}}={w}", nim_sum(1, 3)))
}

fn compositionality() -> Check {
    let gs = random_graphs(1000, 8, Some(true), None, 21);
    let sum_bad = (0..500)
        .filter(|&k| {
            let (x, y) = (&gs[2 * k], &gs[2 * k + 1]);
            let lhs = gamma(&sum(x, y)).unwrap().root().clone();
            lhs != gen_nim_sum(gamma(x).unwrap().root(), gamma(y).unwrap().root())
        })
        .count();
    let wf = random_graphs(500, 10, Some(true), Some(true), 22);
    let wf_bad = count_failures(&wf, |g| {
        let n = grundy_wf(g).unwrap();
        n == naive_grundy(g, g.root()) && gamma(g).unwrap().root() == &GrundyValue::Nat(n)
    });
    Check::new(
        sum_bad == 0 && wf_bad == 0,
        format!("500 sums: {sum_bad} violations; 500 well-founded: {wf_bad} disagreements"),
    )
}

fn marking_soundness() -> Check {
    let gs = random_graphs(600, 10, Some(true), None, 31);
    let mut positions = 0;
    let mut violations = 0;
    for g in &gs {
        let m = gamma(g).unwrap();
        let sol = solve_arena(m.graph());
        for p in 0..m.graph().len() {
            positions += 1;
            let want = profile_at(&sol, p).sector().unwrap();
            if outcome_from_gamma(m.value(p)).sector() != want {
                violations += 1;
            }
        }
    }
    Check::new(
        violations == 0,
        format!("{} graphs, {positions} positions: {violations} violations", gs.len()),
    )
}

fn full_abstraction() -> Check {
    let gs = random_graphs(400, 5, Some(true), None, 41);
    let mut pairs: Vec<(GameGraph, GameGraph)> = (0..150).map(|k| (gs[2 * k].clone(), gs[2 * k + 1].clone())).collect();
    // Pairs known to be equivalent: a game and the canonical game of its value.
    for g in &gs[300..360] {
        let v = gamma(g).unwrap().root().clone();
        pairs.push((g.clone(), hypergame::make_canonical(&v)));
    }
    let mut equivalent = 0;
    let mut violations = 0;
    for (x, y) in &pairs {
        let exact = hypergame::grundy::impartial_equiv(x, y).unwrap();
        let efficient = hypergame::grundy::efficient_equiv(x, y).unwrap();
        let b = hypergame::grundy::context_bound(&gamma(x).unwrap(), &gamma(y).unwrap());
        let mut contexts: Vec<GameGraph> = (0..=b).map(star).collect();
        contexts.push(zero());
        let probe = contextual_probe(x, y, &contexts).is_none();
        equivalent += exact as usize;
        if exact != efficient || exact != probe {
            violations += 1;
        }
    }
    Check::new(
        violations == 0,
        format!("{} pairs ({equivalent} equivalent): {violations} violations", pairs.len()),
    )
}

fn conway_contexts() -> Check {
    let contexts = random_graphs(6, 4, None, None, 51);
    let wf = random_graphs(400, 5, None, Some(true), 52);
    let mut pairs: Vec<(GameGraph, GameGraph)> = (0..150).map(|k| (wf[2 * k].clone(), wf[2 * k + 1].clone())).collect();
    // x + (z - z) is equivalent to x for well-founded z.
    for k in 0..60 {
        let (x, z) = (&wf[300 + k], &wf[360 + (k % 40)]);
        pairs.push((x.clone(), sum(x, &difference(z, z))));
    }
    let mut equivalent = 0;
    let mut violations = 0;
    for (x, y) in &pairs {
        let sim = conway_sim(x, y).unwrap();
        let mut cs = contexts.clone();
        cs.push(y.negate());
        let none = contextual_probe(x, y, &cs).is_none();
        equivalent += sim as usize;
        if sim != none {
            violations += 1;
        }
    }
    Check::new(
        violations == 0,
        format!("{} pairs ({equivalent} equivalent): {violations} violations", pairs.len()),
    )
}

fn strategy_round_trip(corpus: &[GameGraph]) -> Check {
    let mut synthesized = 0;
    let mut violations = 0;
    for g in corpus {
        let sector = classify(g);
        for player in Player::ALL {
            match synthesize_nonlosing(g, player) {
                Some(b) => {
                    synthesized += 1;
                    if !sector.nonlosing().contains(&player)
                        || verify_strategy(g, &b, player, Claim::Nonlosing) != Ok(true)
                    {
                        violations += 1;
                    }
                }
                None => violations += sector.nonlosing().contains(&player) as usize,
            }
            match synthesize_winning(g, player) {
                Some(b) => {
                    synthesized += 1;
                    if sector.winner() != Some(player)
                        || verify_strategy(g, &b, player, Claim::Winning) != Ok(true)
                    {
                        violations += 1;
                    }
                }
                None => violations += (sector.winner() == Some(player)) as usize,
            }
        }
    }
    Check::new(
        violations == 0,
        format!("{} games, {synthesized} strategies: {violations} violations", corpus.len()),
    )
}

fn sound(g: &GameGraph, m: &GrundyMarking) -> bool {
    let sol = solve_arena(g);
    (0..g.len()).all(|p| outcome_from_gamma(m.value(p)).sector() == profile_at(&sol, p).sector().unwrap())
}

fn least_fixpoint() -> Check {
    let gs = random_graphs(300, 5, Some(true), None, 61);
    let mut violations = 0;
    for g in &gs {
        let f = gamma0(g).unwrap();
        if !is_t_fixpoint(g, &f) || !in_domain(g, &f) {
            violations += 1;
        }
        // Least in the flat order: every fixpoint agrees where γ₀ is defined.
        for other in all_t_fixpoints(g) {
            if (0..g.len()).any(|p| f.get(p).is_some() && other.get(p) != f.get(p)) {
                violations += 1;
            }
        }
    }
    let g = two_fixpoint_graph();
    let g0 = gamma0(&g).unwrap();
    let others: Vec<_> = all_t_fixpoints(&g).into_iter().filter(|f| *f != g0).collect();
    let unsound = others
        .iter()
        .filter(|f| t_step(&g, f) == **f && !sound(&g, &GrundyMarking::from_partial(&g, f)))
        .count();
    let g0_sound = sound(&g, &gamma(&g).unwrap());
    Check::new(
        violations == 0 && g0_sound && unsound > 0,
        format!(
            "{} random graphs: {violations} violations; crafted graph: {} other fixpoints, {unsound} unsound, least fixpoint sound: {g0_sound}",
            gs.len(),
            others.len()
        ),
    )
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

fn main() {
    let corpus = main_corpus();
    let criteria: Vec<Criterion> = vec![
        ("catalog sector table", Duration::from_secs(1), Box::new(catalog_sectors)),
        ("non-transitivity", Duration::from_secs(1), Box::new(non_transitivity)),
        ("cross-engine oracle equivalence", Duration::from_secs(60), Box::new(|| cross_engine(&corpus))),
        ("determinacy and basic order properties", Duration::from_secs(120), Box::new(|| determinacy(&corpus))),
        ("sum algebra up to hyperbisimilarity", Duration::from_secs(120), Box::new(sum_algebra)),
        ("copy-cat", Duration::from_secs(120), Box::new(|| copy_cat(&corpus))),
        ("traffic jam reproduction", Duration::from_secs(1), Box::new(traffic_jam)),
        ("generalized nim sum values", Duration::from_secs(1), Box::new(nim_values)),
        ("grundy compositionality", Duration::from_secs(120), Box::new(compositionality)),
        ("marking soundness", Duration::from_secs(120), Box::new(marking_soundness)),
        ("impartial full abstraction", Duration::from_secs(120), Box::new(full_abstraction)),
        ("conway equivalence via contexts", Duration::from_secs(120), Box::new(conway_contexts)),
        ("strategy round-trip", Duration::from_secs(120), Box::new(|| strategy_round_trip(&corpus))),
        ("least-fixpoint discipline", Duration::from_secs(120), Box::new(least_fixpoint)),
    ];
    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let check = run();
        let took = start.elapsed();
        let in_time = took <= *limit;
        let ok = check.ok && in_time;
        failed += !ok as usize;
        println!(
            "{} {name}: {} [{:.3}s, limit {}s{}]",
            if ok { "PASS" } else { "FAIL" },
            check.detail,
            took.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", too slow" }
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
