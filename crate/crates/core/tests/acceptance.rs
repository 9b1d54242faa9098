//! Acceptance suite: twelve criteria, one PASS/FAIL line each.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use kr_core::admissible::{admissible_set, matrix_rep, p_rank, p_rank_strata, permissible_set, MonomialMatrix};
use kr_core::local_model::{
    census, chain_invariants, classify, enumerate_points, group_scheme_kind, kr_from_profile,
    monomial_point, second_invariants, tau_criterion, GroupSchemeKind, InvariantProfile, SignatureIndex,
    StandardChainContext,
};
use kr_core::strata::{
    almost_ordinary_closed_form, almost_ordinary_components, connected_component_count,
    fermat_point_count, frobenius_graph_count, lambda_counts, sp_order, supersingular_summary,
    type_index_sets, MassParams, ParahoricType,
};
use kr_core::weyl::{hasse_diagram, is_affine_reflection, Element};
use num_bigint::BigUint;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The genus-2 admissible elements as `(label, (ν, σ))`, transcribed by hand.
const ELEMENTS: [(&str, &str); 13] = [
    ("tau", "[(0,0,1,1),(13)(24)]"),
    ("s1tau", "[(0,0,1,1),(14)(23)]"),
    ("s0tau", "[(0,0,1,1),(1342)]"),
    ("s2tau", "[(0,1,0,1),(1243)]"),
    ("s0s1tau", "[(0,0,1,1),(23)]"),
    ("s0s2tau", "[(0,1,0,1),(12)(34)]"),
    ("s1s2tau", "[(1,0,1,0),(23)]"),
    ("s2s1tau", "[(0,1,0,1),(14)]"),
    ("s1s0tau", "[(0,0,1,1),(14)]"),
    ("s0s1s0tau", "[(0,0,1,1),(1)]"),
    ("s1s0s2tau", "[(1,0,1,0),(1)]"),
    ("s2s1s2tau", "[(1,1,0,0),(1)]"),
    ("s0s2s1tau", "[(0,1,0,1),(1)]"),
];

const MATRICES: [(&str, &str); 13] = [
    ("tau", ". . 1 .\n. . . 1\nt . . .\n. t . ."),
    ("s1tau", ". . . 1\n. . 1 .\n. t . .\nt . . ."),
    ("s0tau", ". 1 . .\n. . . 1\nt . . .\n. . t ."),
    ("s2tau", ". . 1 .\nt . . .\n. . . 1\n. t . ."),
    ("s0s1tau", "1 . . .\n. . 1 .\n. t . .\n. . . t"),
    ("s0s2tau", ". 1 . .\nt . . .\n. . . 1\n. . t ."),
    ("s1s2tau", "t . . .\n. . 1 .\n. t . .\n. . . 1"),
    ("s2s1tau", ". . . 1\n. t . .\n. . 1 .\nt . . ."),
    ("s1s0tau", ". . . 1\n. 1 . .\n. . t .\nt . . ."),
    ("s0s1s0tau", "1 . . .\n. 1 . .\n. . t .\n. . . t"),
    ("s1s0s2tau", "t . . .\n. 1 . .\n. . t .\n. . . 1"),
    ("s2s1s2tau", "t . . .\n. t . .\n. . 1 .\n. . . 1"),
    ("s0s2s1tau", "1 . . .\n. t . .\n. . 1 .\n. . . t"),
];

fn el(label: &str) -> Element {
    let form = ELEMENTS.iter().find(|(name, _)| *name == label).expect("known label").1;
    form.parse().expect("transcribed form parses")
}

fn names(labels: &[&str]) -> HashSet<Element> {
    labels.iter().map(|l| el(l)).collect()
}

fn admissible_g2() -> Outcome {
    let expected = names(&ELEMENTS.map(|(n, _)| n));
    let perm = permissible_set(2).map_err(|e| e.to_string())?.element_set();
    let adm = admissible_set(2).map_err(|e| e.to_string())?.element_set();
    ensure(perm == expected, || format!("permissible set differs: {} elements", perm.len()))?;
    ensure(adm == expected, || format!("admissible set differs: {} elements", adm.len()))
}

fn coincidence() -> Outcome {
    for g in [2, 3] {
        let perm = permissible_set(g).map_err(|e| e.to_string())?.element_set();
        let adm = admissible_set(g).map_err(|e| e.to_string())?.element_set();
        ensure(perm == adm, || format!("g = {g}: |Perm| = {}, |Adm| = {}", perm.len(), adm.len()))?;
    }
    Ok(())
}

fn p_rank_grading() -> Outcome {
    let strata = p_rank_strata(2).map_err(|e| e.to_string())?;
    let expected: BTreeMap<usize, HashSet<Element>> = BTreeMap::from([
        (2, names(&["s0s1s0tau", "s1s0s2tau", "s2s1s2tau", "s0s2s1tau"])),
        (1, names(&["s0s1tau", "s1s2tau", "s2s1tau", "s1s0tau"])),
        (0, names(&["tau", "s1tau", "s0tau", "s2tau", "s0s2tau"])),
    ]);
    let got: BTreeMap<usize, HashSet<Element>> =
        strata.into_iter().map(|(f, xs)| (f, xs.into_iter().collect())).collect();
    ensure(got == expected, || format!("strata sizes {:?}", got.iter().map(|(f, s)| (*f, s.len())).collect::<Vec<_>>()))
}

fn matrices() -> Outcome {
    for (label, grid) in MATRICES {
        let expected = MonomialMatrix::parse(grid).map_err(|e| e.to_string())?;
        let got = matrix_rep(&el(label)).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{label}:\n{got}"))?;
    }
    Ok(())
}

fn tables() -> Outcome {
    let kinds = [((0, 1), GroupSchemeKind::Etale), ((1, 0), GroupSchemeKind::Multiplicative), ((1, 1), GroupSchemeKind::AlphaP)];
    for ((s, t), kind) in kinds {
        ensure(group_scheme_kind(s, t).ok() == Some(kind), || format!("table 1 cell ({s},{t})"))?;
    }
    ensure(group_scheme_kind(0, 0).is_err(), || "(0,0) accepted".into())?;

    let table2 = [
        (2, (0, 1), (0, 1), "s0s1s0tau"),
        (2, (0, 1), (1, 0), "s0s2s1tau"),
        (2, (1, 0), (0, 1), "s1s0s2tau"),
        (2, (1, 0), (1, 0), "s2s1s2tau"),
        (1, (0, 1), (1, 1), "s0s1tau"),
        (1, (1, 0), (1, 1), "s1s2tau"),
        (1, (1, 1), (1, 0), "s2s1tau"),
        (1, (1, 1), (0, 1), "s1s0tau"),
    ];
    let table3: [((usize, usize), &[&str]); 4] = [
        ((1, 1), &["s0s2tau"]),
        ((1, 2), &["s0tau"]),
        ((2, 1), &["s2tau"]),
        ((2, 2), &["s1tau", "tau"]),
    ];
    for q in [2, 3] {
        let ctx = StandardChainContext::new(2, q).map_err(|e| e.to_string())?;
        for (rank, a, b, label) in table2 {
            let x = el(label);
            let p = monomial_point(&x, &ctx).map_err(|e| e.to_string())?;
            let st = chain_invariants(&p, &ctx);
            ensure(p_rank(&x) == rank && st == vec![a, b], || format!("table 2 row {label}: {st:?}"))?;
            let profile = InvariantProfile { p_rank: rank, sigma_tau: st, sigma_tau_02: None };
            let back = kr_from_profile(&profile).map_err(|e| e.to_string())?;
            ensure(back == vec![x], || format!("table 2 lookup for {label}"))?;
        }
        for (second, labels) in table3 {
            for label in labels {
                let x = el(label);
                let p = monomial_point(&x, &ctx).map_err(|e| e.to_string())?;
                let st = chain_invariants(&p, &ctx);
                let got = second_invariants(&p, &ctx).map_err(|e| e.to_string())?;
                ensure(p_rank(&x) == 0 && st == vec![(1, 1), (1, 1)] && got == second, || {
                    format!("table 3 row {label}: {st:?} {got:?}")
                })?;
                let profile = InvariantProfile { p_rank: 0, sigma_tau: st, sigma_tau_02: Some(got) };
                let back: HashSet<Element> =
                    kr_from_profile(&profile).map_err(|e| e.to_string())?.into_iter().collect();
                ensure(back == names(labels), || format!("table 3 lookup for {label}"))?;
            }
        }
    }
    Ok(())
}

fn bruhat_and_hasse() -> Outcome {
    let adm: Vec<Element> = admissible_set(2).map_err(|e| e.to_string())?.elements().cloned().collect();
    let tau = el("tau");
    for x in &adm {
        ensure(tau.bruhat_leq(x), || format!("tau is not below {x}"))?;
    }
    ensure(!el("s1tau").bruhat_leq(&el("s0s2tau")), || "s1tau <= s0s2tau".into())?;
    let diagram = hasse_diagram(&adm).map_err(|e| e.to_string())?;
    ensure(diagram.nodes.len() == 13, || format!("{} nodes", diagram.nodes.len()))?;
    for &(lo, hi) in &diagram.edges {
        let (x, y) = (&diagram.nodes[lo], &diagram.nodes[hi]);
        ensure(y.length() == x.length() + 1, || format!("{x} -> {y} has length gap"))?;
        ensure(is_affine_reflection(&(y * &x.inverse())), || format!("{x} -> {y} is not a reflection"))?;
    }
    let root = diagram.index_of(&tau).ok_or("tau missing")?;
    let covers: HashSet<Element> =
        diagram.edges.iter().filter(|e| e.0 == root).map(|e| diagram.nodes[e.1].clone()).collect();
    ensure(covers == names(&["s0tau", "s1tau", "s2tau"]), || format!("covers of tau: {covers:?}"))
}

fn local_model_census() -> Outcome {
    let table = admissible_set(2).map_err(|e| e.to_string())?;
    for (q, total) in [(2u32, 59u64), (3, 163)] {
        let ctx = StandardChainContext::new(2, q).map_err(|e| e.to_string())?;
        let index = SignatureIndex::new(&table, &ctx).map_err(|e| e.to_string())?;
        let report = census(&table, &index).map_err(|e| e.to_string())?;
        for row in &report.rows {
            let expected = u64::from(q).pow(row.element.length());
            ensure(row.observed == expected, || format!("q = {q}, {}: {} points", row.name, row.observed))?;
        }
        ensure(report.total_observed == total, || format!("q = {q}: total {}", report.total_observed))?;
        let brute = common::brute_force_point_count(q);
        ensure(brute == total, || format!("q = {q}: brute force finds {brute}"))?;
    }
    Ok(())
}

fn classifier_consistency() -> Outcome {
    let table = admissible_set(2).map_err(|e| e.to_string())?;
    let ctx = StandardChainContext::new(2, 2).map_err(|e| e.to_string())?;
    let index = SignatureIndex::new(&table, &ctx).map_err(|e| e.to_string())?;
    let (tau, s1tau) = (el("tau"), el("s1tau"));
    for p in enumerate_points(&ctx) {
        let x = classify(&p, &index).map_err(|e| e.to_string())?;
        let rank = p_rank(&x);
        if rank >= 1 {
            let profile = InvariantProfile::of_point(&p, &ctx, rank);
            let got = kr_from_profile(&profile).map_err(|e| e.to_string())?;
            ensure(got == vec![x.clone()], || format!("profile gives {got:?}, classifier {x}"))?;
        }
        if x == tau || x == s1tau {
            ensure(tau_criterion(&p, &ctx) == (x == tau), || format!("criterion fails on a {x} point"))?;
        }
    }
    Ok(())
}

fn compositions(g: usize) -> Vec<Vec<usize>> {
    if g == 0 {
        return vec![Vec::new()];
    }
    let mut out = vec![Vec::new()];
    for first in 1..=g {
        for rest in compositions(g - first) {
            let mut k = vec![first];
            k.extend(rest);
            out.push(k);
        }
    }
    out
}

fn component_counts() -> Outcome {
    for g in 2..=5 {
        let mut all: Vec<Vec<usize>> = (1..=g).flat_map(compositions).filter(|k| !k.is_empty()).collect();
        all.sort();
        all.dedup();
        for k in all {
            let pt = ParahoricType::new(k.clone(), g).map_err(|e| e.to_string())?;
            let enumerated: usize = type_index_sets(&pt).iter().map(Vec::len).sum();
            let closed = almost_ordinary_closed_form(&pt);
            ensure(closed.is_integer() && closed.to_integer() == enumerated.into(), || {
                format!("k = {k:?}, g = {g}: {enumerated} vs {closed}")
            })?;
        }
    }
    for g in 2..=6 {
        let pt = ParahoricType::iwahori(g).map_err(|e| e.to_string())?;
        let got = almost_ordinary_components(&pt).map_err(|e| e.to_string())?;
        ensure(got == (g as u64) << (g - 1), || format!("Iwahori g = {g}: {got}"))?;
    }
    Ok(())
}

fn connected_components() -> Outcome {
    let cases = [(vec![1, 1], 2, 0, 1), (vec![1, 1], 2, 1, 4), (vec![1, 1], 2, 2, 4), (vec![1], 3, 2, 3)];
    for (k, g, f, expected) in cases {
        let pt = ParahoricType::new(k.clone(), g).map_err(|e| e.to_string())?;
        let got = connected_component_count(&pt, f).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("k = {k:?}, g = {g}, f = {f}: {got}"))?;
    }
    for g in 2..=5 {
        for k in (1..=g).flat_map(compositions).filter(|k| !k.is_empty()) {
            let pt = ParahoricType::new(k.clone(), g).map_err(|e| e.to_string())?;
            let got = connected_component_count(&pt, 0).map_err(|e| e.to_string())?;
            ensure(got == 1, || format!("k = {k:?}, g = {g}, f = 0: {got}"))?;
        }
    }
    Ok(())
}

fn mass_formulas() -> Outcome {
    for p in [2, 3, 5, 7] {
        for level in 3..=20 {
            if level % p == 0 {
                continue;
            }
            let mp = MassParams::new(p, level).map_err(|e| e.to_string())?;
            lambda_counts(&mp).map_err(|e| format!("(p, N) = ({p}, {level}): {e}"))?;
        }
    }
    let summary = supersingular_summary(&MassParams::new(2, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let got = (summary.lambda.clone(), summary.lambda_211.clone(), summary.singular_points.clone());
    let want = (BigUint::from(27u32), BigUint::from(45u32), BigUint::from(135u32));
    ensure(got == want, || format!("(p, N) = (2, 3): {got:?}"))?;
    for (g, level) in [(1, 4), (2, 2), (2, 3)] {
        let brute = common::brute_force_sp_order(g, level);
        ensure(sp_order(g, level) == BigUint::from(brute), || format!("|Sp_{}(Z/{level})| = {brute}", 2 * g))?;
    }
    Ok(())
}

fn loci() -> Outcome {
    for p in [2, 3, 5, 7] {
        let got = fermat_point_count(p).map_err(|e| e.to_string())?;
        ensure(got == u64::from(p) + 1, || format!("fermat p = {p}: {got}"))?;
    }
    for (p, e) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let got = frobenius_graph_count(p, e).map_err(|err| err.to_string())?;
        ensure(got == u64::from(p).pow(e) + 1, || format!("frobenius ({p}, {e}): {got}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("admissible set g=2 (13 elements)", admissible_g2),
        ("Adm = Perm for g in {2,3}", coincidence),
        ("p-rank grading {2:4, 1:4, 0:5}", p_rank_grading),
        ("monomial matrix representatives", matrices),
        ("invariant tables 1-3", tables),
        ("Bruhat order and Hasse covers", bruhat_and_hasse),
        ("local model census q=2,3 (59, 163)", local_model_census),
        ("classifier consistency on the q=2 census", classifier_consistency),
        ("almost-ordinary component counts", component_counts),
        ("connected component counts", connected_components),
        ("mass formulas and Sp orders", mass_formulas),
        ("Fermat and Frobenius-graph loci", loci),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
