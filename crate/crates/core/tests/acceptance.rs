//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use common::suites::{self, Outcome};
use common::*;
use homshift::classify::{classify, tags, Limits, Tristate};
use homshift::cover::{build_cover, cover_certificate, CoverCertificate};
use homshift::fold::{four_cycle_hom_free_structural, is_four_cycle_hom_free};
use homshift::graph::{Distance, Graph};
use homshift::sofic::{block_gluing_at, minimal_gluing_distance};
use homshift::walk::{build_walk_graph, growth_probe};

fn check(ok: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn cover_facts() -> Outcome {
    let hs = fixture("hard_square");
    for root in 0..hs.vertex_count() {
        let tree = build_cover(&hs, root, 16).map_err(|e| e.to_string())?;
        let degrees_ok = (0..tree.len()).all(|m| tree.tree_neighbors(m).count() <= 2);
        let leaves = (0..tree.len())
            .filter(|&m| tree.tree_neighbors(m).count() == 1)
            .count();
        check(
            tree.complete && tree.len() == 4 && degrees_ok && leaves == 2,
            format!(
                "hard-square cover from {root}: {} nodes, not a 4-node path",
                tree.len()
            ),
        )?;
    }
    let mut cycles = Vec::new();
    for spec in ["barbell:4", "cycle:5"] {
        let g = fixture(spec);
        match cover_certificate(&g).map_err(|e| e.to_string())? {
            CoverCertificate::Infinite { cycle } if valid_arc_cycle(&g, &cycle) => {
                cycles.push(format!("{spec} arc cycle of length {}", cycle.len()))
            }
            other => {
                return Err(format!(
                    "{spec}: expected a valid infinite certificate, got {other:?}"
                ))
            }
        }
    }
    Ok(format!(
        "hard square: 4-node path from both roots; {}",
        cycles.join(", ")
    ))
}

fn four_cycle_facts() -> Outcome {
    for (spec, expected) in [("hard_square", true), ("complete:4", false), ("barbell:2", false)] {
        let g = fixture(spec);
        let got = [
            is_four_cycle_hom_free(&g),
            four_cycle_hom_free_structural(&g),
            brute_four_cycle_hom_free(&g),
        ];
        check(
            got == [expected; 3],
            format!("{spec}: expected {expected}, got {got:?}"),
        )?;
    }
    let agreement = suites::four_cycle_agreement(200)?;
    Ok(format!(
        "hard_square=true, K_4=false, Bar_2=false; agreement on {agreement}"
    ))
}

fn ladder_facts() -> Outcome {
    let limits = Limits::default();
    for spec in ["cycle:3", "cycle:5", "barbell:3", "barbell:4"] {
        let r = classify(&fixture(spec), &limits).map_err(|e| e.to_string())?;
        check(
            r.phased_block_gluing.verdict == Tristate::No,
            format!("{spec}: phased block-gluing {:?}", r.phased_block_gluing),
        )?;
    }
    let mut yes: Vec<(String, Graph)> = vec![("hard_square".into(), fixture("hard_square"))];
    for n in 2..=7 {
        for (i, t) in trees_up_to_isomorphism(n).into_iter().enumerate() {
            yes.push((format!("tree {n}.{i}"), t));
        }
    }
    let trees = yes.len() - 1;
    for (label, g) in &yes {
        let r = classify(g, &limits).map_err(|e| e.to_string())?;
        check(
            r.phased_si.verdict == Tristate::Yes,
            format!("{label}: phased SI {:?}", r.phased_si),
        )?;
    }
    let c4 = classify(&fixture("cycle:4"), &limits).map_err(|e| e.to_string())?;
    check(
        c4.four_cycle_hom_free == Some(false)
            && c4.bipartite_dismantlable == Some(true)
            && c4.phased_si.verdict == Tristate::Yes
            && c4.phased_si.by == Some(tags::DISMANTLABLE),
        format!("C_4: {:?} by {:?}", c4.phased_si.verdict, c4.phased_si.by),
    )?;
    Ok(format!(
        "4 graphs not phased block-gluing; hard square, {trees} trees on 2..7 vertices and C_4 phased SI"
    ))
}

fn k4_diameters() -> Outcome {
    let k4 = fixture("complete:4");
    let mut values = Vec::new();
    for n in [1, 2] {
        let first = build_walk_graph(&k4, n).map_err(|e| e.to_string())?.diameter();
        let second = build_walk_graph(&k4, n).map_err(|e| e.to_string())?.diameter();
        let brute = brute_walk_diameter(&k4, n).map(Distance::Finite);
        check(
            first == second,
            format!("n = {n}: unstable diameter {first} vs {second}"),
        )?;
        check(
            Some(first) == brute,
            format!("n = {n}: diameter {first} vs oracle {brute:?}"),
        )?;
        check(
            first <= Distance::Finite(4),
            format!("n = {n}: diameter {first} exceeds 4"),
        )?;
        values.push(first.to_string());
    }
    check(
        values == ["2", "2"],
        format!("recorded values [2, 2], got {values:?}"),
    )?;
    Ok(format!("diameters for n = 1, 2: [{}]", values.join(", ")))
}

fn growth_facts() -> Outcome {
    let c3 = growth_probe(&fixture("cycle:3"), 3).map_err(|e| e.to_string())?;
    let mut c3_values = Vec::new();
    for row in &c3.rows {
        let Distance::Finite(d) = row.diameter else {
            return Err(format!("C_3, n = {}: infinite", row.n));
        };
        check(
            row.n <= d && d <= 1 + 2 * row.n,
            format!("C_3, n = {}: diameter {d} out of [n, 1+2n]", row.n),
        )?;
        check(
            brute_walk_diameter(&fixture("cycle:3"), row.n) == Some(d),
            format!("C_3, n = {}: oracle disagrees", row.n),
        )?;
        c3_values.push(d);
    }
    check(
        c3_values.windows(2).all(|w| w[0] <= w[1]) && c3.nondecreasing,
        format!("C_3 not monotone: {c3_values:?}"),
    )?;
    let hs = growth_probe(&fixture("hard_square"), 3).map_err(|e| e.to_string())?;
    let hs_values: Vec<Distance> = hs.rows.iter().map(|r| r.diameter).collect();
    check(
        hs_values[1..].iter().all(|&d| d == hs_values[1]),
        format!("hard square not constant from n = 1: {hs_values:?}"),
    )?;
    Ok(format!(
        "C_3 diameters {c3_values:?}; hard square {}",
        hs_values
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    ))
}

fn hard_square_gluing() -> Outcome {
    let g = fixture("hard_square");
    let at0 = block_gluing_at(&g, 0).map_err(|e| e.to_string())?;
    let at1 = block_gluing_at(&g, 1).map_err(|e| e.to_string())?;
    check(
        !at0.glues && at1.glues,
        format!("glues at n=0: {}, n=1: {}", at0.glues, at1.glues),
    )?;
    let distance = minimal_gluing_distance(&g, 2)
        .map_err(|e| e.to_string())?
        .distance;
    check(distance == Some(2), format!("minimal distance {distance:?}"))?;
    let w = at0.witness.ok_or("no witness at n = 0")?;
    check(
        is_tb_word(&g, &w) && !image_accepts(&g, 0, &w),
        format!("witness {w:?} rejected by oracle"),
    )?;
    let (at_one, at_zero) = (ImageOracle::new(&g, 1), ImageOracle::new(&g, 0));
    let mut words = 0;
    let mut n0_fails = 0;
    for len in 1..=6 {
        for word in tb_words(&g, len) {
            check(
                at_one.accepts(&word),
                format!("TB word {word:?} has no preimage at n = 1"),
            )?;
            n0_fails += usize::from(!at_zero.accepts(&word));
            words += 1;
        }
    }
    check(n0_fails > 0, "every TB word up to length 6 lifts at n = 0")?;
    Ok(format!("n=0 false, n=1 true, distance 2; {words} TB words up to length 6 lift at n=1, {n0_fails} fail at n=0"))
}

fn triangle_gluing() -> Outcome {
    let g = fixture("cycle:3");
    let mut lengths = Vec::new();
    for n in 0..=2 {
        let c = block_gluing_at(&g, n).map_err(|e| e.to_string())?;
        check(!c.glues, format!("C_3 glues at n = {n}"))?;
        let w = c.witness.ok_or(format!("no witness at n = {n}"))?;
        check(
            is_tb_word(&g, &w),
            format!("n = {n}: witness {w:?} is not a TB word"),
        )?;
        check(
            !image_accepts(&g, n, &w),
            format!("n = {n}: witness {w:?} has a preimage"),
        )?;
        lengths.push(w.len());
    }
    Ok(format!(
        "no gluing for n = 0, 1, 2; oracle-verified witnesses of lengths {lengths:?}"
    ))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

type Artifacts = Vec<(String, Vec<u8>)>;

fn cli_suite(dir: &Path) -> std::result::Result<Artifacts, String> {
    let bin = env!("CARGO_BIN_EXE_homshift");
    for (name, spec) in [
        ("hard_square", "hard_square"),
        ("c3", "cycle:3"),
        ("bar4", "barbell:4"),
        ("k4", "complete:4"),
    ] {
        std::fs::write(dir.join(format!("{name}.txt")), fixture(spec).to_edge_list())
            .map_err(|e| e.to_string())?;
    }
    let file = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let runs: Vec<(&str, Vec<String>)> = vec![
        (
            "classify_hs",
            vec!["classify".into(), "-g".into(), file("hard_square.txt")],
        ),
        (
            "classify_c3",
            vec!["classify".into(), "-g".into(), file("c3.txt")],
        ),
        (
            "classify_bar4",
            vec!["classify".into(), "-g".into(), file("bar4.txt")],
        ),
        (
            "fold_bar4",
            vec![
                "fold".into(),
                "-g".into(),
                file("bar4.txt"),
                "--seed".into(),
                "7".into(),
            ],
        ),
        (
            "fold_k4",
            vec![
                "fold".into(),
                "-g".into(),
                file("k4.txt"),
                "--seed".into(),
                "3".into(),
            ],
        ),
        (
            "cover_hs",
            vec![
                "cover".into(),
                "-g".into(),
                file("hard_square.txt"),
                "--dot".into(),
                file("cover_hs.dot"),
            ],
        ),
        ("cover_bar4", vec!["cover".into(), "-g".into(), file("bar4.txt")]),
        (
            "walk_diam_k4",
            vec![
                "walk-diam".into(),
                "-g".into(),
                file("k4.txt"),
                "-n".into(),
                "2".into(),
            ],
        ),
        (
            "growth_c3",
            vec![
                "growth".into(),
                "-g".into(),
                file("c3.txt"),
                "--max-n".into(),
                "3".into(),
            ],
        ),
        (
            "gluing_distance_hs",
            vec!["gluing-distance".into(), "-g".into(), file("hard_square.txt")],
        ),
        (
            "gluing_distance_c3",
            vec!["gluing-distance".into(), "-g".into(), file("c3.txt")],
        ),
        (
            "glue_hs",
            vec![
                "glue".into(),
                "-g".into(),
                file("hard_square.txt"),
                "--a".into(),
                r#"[["1","0"]]"#.into(),
                "--b".into(),
                r#"[["0","1"]]"#.into(),
                "--separation".into(),
                "3".into(),
            ],
        ),
        (
            "extensions_hs",
            vec![
                "extensions".into(),
                "-g".into(),
                file("hard_square.txt"),
                "-n".into(),
                "3".into(),
                "--bottom".into(),
                "0,0,0,0".into(),
                "--right".into(),
                "0,0,0,0".into(),
            ],
        ),
    ];
    let mut artifacts = Vec::new();
    for (name, mut args) in runs {
        args.push("--json".into());
        args.push(file(&format!("{name}.json")));
        let out = Command::new(bin)
            .args(&args)
            .output()
            .map_err(|e| e.to_string())?;
        check(
            out.status.success(),
            format!(
                "{name} exited with {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ),
        )?;
        let json = std::fs::read(dir.join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        serde_json::from_slice::<serde_json::Value>(&json)
            .map_err(|e| format!("{name}: invalid JSON: {e}"))?;
        artifacts.push((format!("{name}.json"), json));
        artifacts.push((format!("{name}.stdout"), out.stdout));
    }
    artifacts.push((
        "cover_hs.dot".into(),
        std::fs::read(dir.join("cover_hs.dot")).map_err(|e| e.to_string())?,
    ));
    Ok(artifacts)
}

fn determinism() -> Outcome {
    let (d1, d2) = (
        tempfile::tempdir().map_err(|e| e.to_string())?,
        tempfile::tempdir().map_err(|e| e.to_string())?,
    );
    let first = cli_suite(d1.path())?;
    let second = cli_suite(d2.path())?;
    let normalize = |a: &Artifacts, d: &Path| -> Artifacts {
        let prefix = d.to_string_lossy().into_owned();
        a.iter()
            .map(|(n, b)| {
                (
                    n.clone(),
                    String::from_utf8_lossy(b).replace(&prefix, "<dir>").into_bytes(),
                )
            })
            .collect()
    };
    let (a, b) = (normalize(&first, d1.path()), normalize(&second, d2.path()));
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        check(x == y, format!("{name} differs between runs"))?;
    }
    let json_files = first.iter().filter(|(n, _)| n.ends_with(".json")).count();
    Ok(format!(
        "{json_files} JSON artifacts and {} outputs byte-identical across two runs",
        first.len() - json_files
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1.1", "universal covers", cover_facts),
        ("1.2", "four-cycle hom-freeness", four_cycle_facts),
        ("1.3", "classification ladder", ladder_facts),
        ("1.4", "K_4 walk-graph diameters", k4_diameters),
        ("1.5", "walk-graph growth", growth_facts),
        ("2.1", "hard-square gluing distance", hard_square_gluing),
        ("2.2", "triangle gluing witnesses", triangle_gluing),
        ("2.3", "containment against word enumeration", || {
            suites::containment_oracle(2, 6)
        }),
        (
            "2.4",
            "gluing monotone in n",
            suites::gluing_monotone_and_consistent,
        ),
        ("3.1", "fold confluence", || suites::fold_confluence(1000, 20)),
        ("3.2", "walk-graph connectivity", || {
            suites::walk_graph_connectivity(1000)
        }),
        ("3.3", "cover lifting", || suites::lift_properties(120)),
        ("3.4", "periodic extension", || suites::periodic_extension(500)),
        ("3.5", "rectangular gluing", || suites::glue_validity(100)),
        ("4.1", "CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS [{id}] {name}: {summary} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {why} ({secs:.1}s)");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
