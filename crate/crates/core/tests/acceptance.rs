//! Acceptance criteria 1 to 9. Each criterion prints one PASS or FAIL line;
//! the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use opcat_core::fibration::{
    check_split_fibration, pi0_iso_check, roundtrip_fibration, roundtrip_operad, trivial_objects_above, SplitFibration,
};
use opcat_core::fixtures;
use opcat_core::freemon::{adjunction_check, hom_moncat, phi0, presentation_equal, Expr, MonPresentation, WordOutcome};
use opcat_core::grothendieck::grothendieck;
use opcat_core::nerve::{dec_nerve_iso, duskin_nerve};
use opcat_core::operad::CategoricalOperad;
use opcat_core::operadic::{
    bouquets, from_2category, is_quasibijection, para, terminal_odot, to_simplicial, validate_operadic,
    validate_operadic_functor, StructureMaps, UnaryOperadic2Cat,
};
use opcat_core::simplicial::TruncatedSimplicialSet;
use opcat_core::twocat::{deloop, StrictMonCat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-fixture wall-clock limits.
const DEC_LIMIT: Duration = Duration::from_secs(1);
const GROTHENDIECK_LIMIT: Duration = Duration::from_secs(5);
const ADJUNCTION_LIMIT: Duration = Duration::from_secs(10);
/// Whole-target limit, standing in for the suite budget.
const SUITE_LIMIT: Duration = Duration::from_secs(120);

const MIN_MUTANTS: usize = 20;
const RANDOM_OPERADS: usize = 100;
const RANDOM_WORD_PAIRS: usize = 50;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let start = Instant::now();
    let v = f()?;
    let took = start.elapsed();
    check(took <= limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(v)
}

fn criterion_1() -> Outcome {
    let cats = [
        ("terminal", fixtures::twocat("point").unwrap()),
        ("deloop Z/2", deloop(&StrictMonCat::cyclic(2)).unwrap()),
        ("deloop Z/3", deloop(&StrictMonCat::cyclic(3)).unwrap()),
        ("walking arrow", fixtures::arrow()),
        ("two-cell", fixtures::two_cell()),
        ("deloop endo Z/2", fixtures::twocat("deloop-endo-z2").unwrap()),
    ];
    for (name, c) in &cats {
        timed(DEC_LIMIT, name, || {
            let d = dec_nerve_iso(c).map_err(|e| format!("{name}: {e}"))?;
            let (a, b) = (d.iso.map().source.sizes(), d.iso.map().target.sizes());
            check(a == b, || format!("{name}: level sizes {a:?} vs {b:?}"))?;
            check(d.iso.map().is_bijective(), || format!("{name}: not bijective"))
        })?;
    }
    Ok(format!("{} 2-categories certified", cats.len()))
}

/// Items (9) to (17) that fail for `maps` on the 2-category of `o`,
/// evaluated directly from the nerve.
fn failing_items(o: &UnaryOperadic2Cat, m: &StructureMaps) -> BTreeSet<u8> {
    let c = o.cat();
    let x = &o.nerve().sset;
    let (n, e, _) = c.sizes();
    let (nt, ns, k) = (o.triangles(), o.simplices(), o.components());
    let mut bad = BTreeSet::new();
    let mut flag = |item: u8, failed: bool| {
        if failed {
            bad.insert(item);
        }
    };
    // π of an object is its component in the underlying graph
    let pi = |a: usize| o.pi(a);
    for q in 0..e {
        flag(9, pi(m.phi1[q]) != m.phi0[c.tgt1(q)]);
        flag(12, m.phi2[x.degen(1, 1, q)] != m.u0[m.phi1[q]]);
        flag(12, m.phi2[x.degen(1, 0, q)] != c.id1(m.phi1[q]));
        flag(14, m.u2[m.u1[q]] != x.degen(2, 2, m.u1[q]));
        flag(15, m.phi2[m.u1[q]] != q);
        flag(16, m.phi0[m.phi1[q]] != m.phi0[c.src1(q)]);
        flag(17, m.u2[x.degen(1, 0, q)] != x.degen(2, 0, m.u1[q]));
        flag(17, m.u2[x.degen(1, 1, q)] != x.degen(2, 1, m.u1[q]));
    }
    for comp in 0..k {
        let v = m.u_neg1[comp];
        flag(10, pi(v) != comp);
        flag(14, m.u0[v] != c.id1(v));
        flag(15, m.phi0[v] != comp);
    }
    for a in 0..n {
        flag(11, m.phi1[c.id1(a)] != m.u_neg1[m.phi0[a]]);
        flag(14, m.u1[m.u0[a]] != x.degen(1, 1, m.u0[a]));
        flag(15, m.phi1[m.u0[a]] != a);
        flag(17, m.u1[c.id1(a)] != x.degen(1, 0, m.u0[a]));
    }
    for t in 0..nt {
        let p = m.phi2[t];
        flag(13, m.phi3[x.degen(2, 2, t)] != m.u1[p]);
        flag(13, m.phi3[x.degen(2, 1, t)] != x.degen(1, 1, p));
        flag(13, m.phi3[x.degen(2, 0, t)] != x.degen(1, 0, p));
        flag(15, m.phi3[m.u2[t]] != t);
        flag(16, m.phi1[m.phi2[t]] != m.phi1[x.face(2, 2, t)]);
    }
    for s in 0..ns {
        flag(16, m.phi2[m.phi3[s]] != m.phi2[x.face(3, 3, s)]);
    }
    bad
}

fn tables(m: &mut StructureMaps) -> [(&'static str, &mut Vec<usize>); 8] {
    [
        ("phi0", &mut m.phi0),
        ("phi1", &mut m.phi1),
        ("phi2", &mut m.phi2),
        ("phi3", &mut m.phi3),
        ("u_neg1", &mut m.u_neg1),
        ("u0", &mut m.u0),
        ("u1", &mut m.u1),
        ("u2", &mut m.u2),
    ]
}

fn criterion_2() -> Outcome {
    let fixtures: Vec<(&str, UnaryOperadic2Cat)> = vec![
        ("odot", terminal_odot()),
        ("Bq({0,1})", bouquets(2).unwrap()),
        ("Bq({0,1,2})", bouquets(3).unwrap()),
        ("para(Z/2)", para(&StrictMonCat::cyclic(2)).unwrap()),
        ("para(Z/3)", para(&StrictMonCat::cyclic(3)).unwrap()),
        ("slice(walking arrow)", from_2category(&fixtures::arrow()).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counted = 0;
    for (name, o) in &fixtures {
        let r = validate_operadic(o);
        check(r.is_valid(), || format!("{name}: {r}"))?;
        check(failing_items(o, o.maps()).is_empty(), || format!("{name}: oracle disagrees on the unmutated maps"))?;
        let ranges = {
            let (n, e, _) = o.cat().sizes();
            [o.components(), n, e, o.triangles(), n, e, o.triangles(), o.simplices()]
        };
        for (table, &range) in ranges.iter().enumerate() {
            let len = tables(&mut o.maps().clone())[table].1.len();
            if len == 0 || range < 2 {
                continue;
            }
            // a few random single-entry mutants per table
            for _ in 0..3 {
                let mut maps = o.maps().clone();
                let i = rng.gen_range(0..len);
                let (tname, t) = tables(&mut maps).into_iter().nth(table).unwrap();
                let old = t[i];
                let new = (old + rng.gen_range(1..range)) % range;
                t[i] = new;
                let what = format!("{name}, {tname}[{i}]: {old} -> {new}");
                let mutant = o.with_maps(maps.clone()).map_err(|e| format!("{what}: {e}"))?;
                let report = validate_operadic(&mutant);
                check(!report.is_valid(), || format!("{what}: not caught"))?;
                let expected = failing_items(o, &maps);
                let reported: BTreeSet<u8> = report.items().into_iter().filter(|&i| i >= 9).collect();
                check(reported == expected, || format!("{what}: items {reported:?}, expected {expected:?}"))?;
                if !expected.is_empty() {
                    counted += 1;
                }
            }
        }
    }
    check(counted >= MIN_MUTANTS, || format!("only {counted} mutants hit items (9)-(17)"))?;
    Ok(format!("{} fixtures valid, {counted} mutants caught with matching items", fixtures.len()))
}

fn corpus_operads() -> Vec<(String, CategoricalOperad)> {
    fixtures::OPERADS.iter().map(|n| (n.to_string(), fixtures::operad(n).unwrap())).collect()
}

fn random_operads() -> Vec<(String, CategoricalOperad)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_OPERADS)
        .map(|i| (format!("random #{i}"), fixtures::random_discrete_bq2_operad(&mut rng, 4).unwrap()))
        .collect()
}

fn criterion_3() -> Outcome {
    let pairs = corpus_operads();
    for (name, p) in &pairs {
        timed(GROTHENDIECK_LIMIT, name, || {
            let g = grothendieck(&p.base, p).map_err(|e| format!("{name}: {e}"))?;
            let r = validate_operadic(&g.total);
            check(r.is_valid(), || format!("{name} total: {r}"))?;
            let r = validate_operadic_functor(&g.projection);
            check(r.is_valid(), || format!("{name} projection: {r}"))?;
            let r = check_split_fibration(&SplitFibration::from_grothendieck(&g));
            check(r.is_valid(), || format!("{name} canonical lifts: {r}"))
        })?;
    }
    let z2 = StrictMonCat::cyclic(2);
    let g = grothendieck(&terminal_odot(), &fixtures::operad("z2-odot").unwrap()).map_err(|e| e.to_string())?;
    check(g.total == para(&z2).unwrap(), || "∫⊙(Z/2) differs from para(Z/2) cellwise".into())?;
    Ok(format!("{} (base, operad) pairs; ∫⊙(Z/2) = para(Z/2) cellwise", pairs.len()))
}

fn criterion_4() -> Outcome {
    let all: Vec<_> = corpus_operads().into_iter().chain(random_operads()).collect();
    for (name, p) in &all {
        roundtrip_operad(&p.base, p).map_err(|e| format!("{name}: extract ∘ ∫: {e}"))?;
        let f = SplitFibration::from_grothendieck(&grothendieck(&p.base, p).map_err(|e| format!("{name}: {e}"))?);
        roundtrip_fibration(&f).map_err(|e| format!("{name}: ∫ ∘ extract: {e}"))?;
    }
    Ok(format!("{} operads, both round trips certified, 0 failures", all.len()))
}

fn criterion_5() -> Outcome {
    let all: Vec<_> = corpus_operads().into_iter().chain(random_operads().into_iter().take(20)).collect();
    for (name, p) in &all {
        let g = grothendieck(&p.base, p).map_err(|e| format!("{name}: {e}"))?;
        let computed: BTreeSet<usize> =
            (0..g.arrows.len()).filter(|&i| is_quasibijection(&g.total, i)).collect();
        let described: BTreeSet<usize> = g
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| {
                let unit = p.units[p.base.maps().phi0[g.objects[a.tgt].0]];
                is_quasibijection(&p.base, a.f) && a.p == unit
            })
            .map(|(i, _)| i)
            .collect();
        check(computed == described, || format!("{name}: {computed:?} vs {described:?}"))?;
    }
    Ok(format!("{} totals, quasibijection sets equal", all.len()))
}

fn criterion_6() -> Outcome {
    let mut fibrations = Vec::new();
    for (name, p) in corpus_operads().into_iter().chain(random_operads().into_iter().take(20)) {
        fibrations.push((name, SplitFibration::from_grothendieck(&grothendieck(&p.base, &p).unwrap())));
    }
    for name in fixtures::OPERADIC {
        fibrations.push((format!("identity on {name}"), SplitFibration::identity(&fixtures::operadic(name).unwrap()).unwrap()));
    }
    for (name, f) in &fibrations {
        let r = check_split_fibration(f);
        check(r.is_valid(), || format!("{name}: {r}"))?;
        check(pi0_iso_check(f), || format!("{name}: π0 not bijective"))?;
        for c in 0..f.base().components() {
            let above = trivial_objects_above(f, c);
            check(above.len() == 1, || format!("{name}: {} trivial objects above component {c}", above.len()))?;
        }
    }
    Ok(format!("{} split fibrations", fibrations.len()))
}

fn criterion_7() -> Outcome {
    let mut xs: Vec<(String, TruncatedSimplicialSet)> =
        (0..=3).map(|k| (format!("Δ{k}"), TruncatedSimplicialSet::standard_simplex(k, 3).unwrap())).collect();
    xs.push(("nerve(walking arrow)".into(), duskin_nerve(&fixtures::arrow()).unwrap()));
    xs.push(("Bq({0,1})".into(), to_simplicial(&bouquets(2).unwrap()).unwrap()));
    let ms = ["trivial", "z2", "z3", "poset-max"];
    for (xn, x) in &xs {
        for mn in ms {
            let m = fixtures::moncat(mn).unwrap();
            timed(ADJUNCTION_LIMIT, &format!("{xn} × {mn}"), || {
                let c = adjunction_check(x, &m).map_err(|e| format!("{xn} × {mn}: {e}"))?;
                check(c.maps == c.functors, || format!("{xn} × {mn}: {} vs {}", c.maps, c.functors))
            })?;
        }
    }
    let z2 = StrictMonCat::cyclic(2);
    for k in 1..=3 {
        let n = hom_moncat(&phi0(k).unwrap(), &z2).unwrap().len();
        check(n == 1 << k, || format!("hom(Φ0[{k}], Z/2) = {n}"))?;
    }
    Ok(format!("{} pairs certified; hom(Φ0[k], Z/2) = 2, 4, 8", xs.len() * ms.len()))
}

fn named(p: &MonPresentation, name: &str) -> Expr {
    Expr::Gen(p.generators.iter().position(|g| g.name == name).unwrap())
}

fn ids(p: &MonPresentation, names: &[&str]) -> Expr {
    Expr::Id(names.iter().map(|n| p.letters.iter().position(|l| l == n).unwrap()).collect())
}

/// Three equal variants of a random block of Φ0[3]: σ-shaped blocks pick
/// among σ and its two expansions independently.
fn random_block(p: &MonPresentation, rng: &mut ChaCha8Rng) -> [Expr; 3] {
    let rel = &p.relations[0];
    let sigma = [Expr::Gen(rel.generator), rel.left.clone(), rel.right.clone()];
    match rng.gen_range(0..4) {
        0 => [(); 3].map(|_| sigma[rng.gen_range(0..3)].clone()),
        1 => {
            let g = Expr::Gen(rng.gen_range(0..4));
            [g.clone(), g.clone(), g]
        }
        _ => {
            let l = ids(p, &[["f01", "f02", "f03", "f12", "f13", "f23"][rng.gen_range(0..6)]]);
            [l.clone(), l.clone(), l]
        }
    }
}

fn criterion_8() -> Outcome {
    let p = phi0(3).unwrap();
    let eq = |a: &Expr, b: &Expr| presentation_equal(&p, a, b, None).map_err(|e| e.to_string());
    let rel = &p.relations[0];
    let three = [rel.left.clone(), Expr::Gen(rel.generator), rel.right.clone()];
    for a in &three {
        for b in &three {
            check(eq(a, b)? == WordOutcome::Equal, || "relation trees not all equal".into())?;
        }
    }
    let [a013, a023, a123, s] = ["α013", "α023", "α123", "σ0123"].map(|n| named(&p, n));
    let first = Expr::Tensor(vec![a123, ids(&p, &["f01", "f02", "f23", "f02"]), s.clone()]);
    let second = Expr::Tensor(vec![a013, ids(&p, &["f02"]), a023.clone(), ids(&p, &["f03"])]);
    let normal = Expr::Tensor(vec![s.clone(), ids(&p, &["f02"]), a023, s]);
    check(eq(&Expr::comp(second, first), &normal)? == WordOutcome::Equal, || "composition figure".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_WORD_PAIRS {
        let blocks: Vec<[Expr; 3]> = (0..rng.gen_range(1..=4)).map(|_| random_block(&p, &mut rng)).collect();
        let [a, b, c] = [0, 1, 2].map(|j| Expr::Tensor(blocks.iter().map(|x| x[j].clone()).collect()));
        let ab = eq(&a, &b)?;
        check(ab == WordOutcome::Equal, || format!("pair {i} not decided equal: {ab:?}"))?;
        check(eq(&b, &a)? == ab, || format!("pair {i}: symmetry"))?;
        check(eq(&a, &a)? == WordOutcome::Equal, || format!("pair {i}: reflexivity"))?;
        let chain = (eq(&b, &c)?, eq(&a, &c)?);
        check(chain == (WordOutcome::Equal, WordOutcome::Equal), || format!("pair {i}: transitivity {chain:?}"))?;
        let wrapped = |e: &Expr| Expr::Tensor(vec![ids(&p, &["f12"]), e.clone()]);
        check(eq(&wrapped(&a), &wrapped(&b))? == WordOutcome::Equal, || format!("pair {i}: tensor"))?;
    }
    Ok(format!("relation and figure equal; {RANDOM_WORD_PAIRS} random pairs decided with congruence laws"))
}

/// Written straight to stderr so the lines survive libtest's output capture.
fn report(line: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("dec/nerve theorem", criterion_1),
        ("operadic axiom suite", criterion_2),
        ("Grothendieck validity", criterion_3),
        ("main theorem round trips", criterion_4),
        ("quasibijection characterization", criterion_5),
        ("fibration consequences", criterion_6),
        ("adjunction", criterion_7),
        ("word problem sanity", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => report(format!("criterion {}: PASS {name}: {detail}", i + 1)),
            Err(why) => {
                report(format!("criterion {}: FAIL {name}: {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    let took = start.elapsed();
    if took <= SUITE_LIMIT {
        report(format!("criterion 9: PASS run time: acceptance target took {took:?} (limit {SUITE_LIMIT:?})"));
    } else {
        report(format!("criterion 9: FAIL run time: acceptance target took {took:?} (limit {SUITE_LIMIT:?})"));
        failed.push(9);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
