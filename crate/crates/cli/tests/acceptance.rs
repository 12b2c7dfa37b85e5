//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every comparison is exact; the only tolerances are wall-clock budgets.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use signcoh::{
    build_salvetti, cdo_check, enumerate_faces, lemma_central_cohomology, theorem_formula,
    twisted_coboundaries, AbelianGroup, Arrangement, IntersectionPoset, Sign, SignLocalSystem,
};
use signcoh_cli::document::ArrangementDocument;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_members() -> Vec<(String, Arrangement)> {
    let mut names: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory ships with the repository")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|path| {
            let doc = ArrangementDocument::from_path(&path).expect("corpus member parses");
            let arrangement = doc.to_arrangement().expect("corpus member validates");
            (path.file_stem().unwrap().to_string_lossy().into_owned(), arrangement)
        })
        .collect()
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn pass(criterion: usize, detail: &str) {
    println!("acceptance criterion {criterion}: PASS - {detail}");
}

fn sign_string(ls: &SignLocalSystem) -> String {
    ls.signs()
        .iter()
        .map(|s| s.to_i8().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Criterion 1: the central-pencil family. For each d in 2..=6 and every
/// sign system with total monodromy -1, `cohomology --method both` must
/// report H^0 = 0, H^1 = Z/2, H^2 = (Z/2)^(d-1) with the two pipelines in
/// exact agreement, in under 5 seconds per case.
#[test]
fn criterion_1_pencil_family_reproduction() {
    let mut cases = 0usize;
    for d in 2..=6usize {
        let path = corpus_dir().join(format!("concurrent_lines_{d}.json"));
        let path = path.to_str().unwrap();
        for ls in SignLocalSystem::enumerate_all(d) {
            if ls.t0() != Sign::Minus {
                continue;
            }
            let started = Instant::now();
            let out = run_cli(&[
                "cohomology",
                path,
                "--method",
                "both",
                &format!("--signs={}", sign_string(&ls)),
                "--format",
                "json",
            ]);
            let elapsed = started.elapsed();
            assert!(
                elapsed < Duration::from_secs(5),
                "d={d} signs={:?} took {elapsed:?}",
                ls.signs()
            );
            assert_eq!(out.status.code(), Some(0), "d={d} signs={:?}", ls.signs());
            let value: serde_json::Value =
                serde_json::from_slice(&out.stdout).expect("JSON report");
            assert_eq!(value["agreement"], true);
            let expected_groups = serde_json::json!([
                { "rank": 0, "torsion": [] },
                { "rank": 0, "torsion": [2] },
                { "rank": 0, "torsion": vec![2; d - 1] },
            ]);
            for profile in value["profiles"].as_array().unwrap() {
                assert_eq!(
                    profile["groups"], expected_groups,
                    "d={d} signs={:?} method={}",
                    ls.signs(),
                    profile["method"]
                );
            }
            cases += 1;
        }
    }
    pass(1, &format!("{cases} pencil cases, both pipelines exact"));
}

/// Criterion 2: oracle equivalence. Over the shipped corpus and every sign
/// system passing the CDO check, the closed form and the oracle agree
/// degree by degree on rank and invariant factors, within 120 seconds
/// total.
#[test]
fn criterion_2_oracle_equivalence_suite() {
    let started = Instant::now();
    let members = corpus_members();
    assert!(members.len() >= 10, "corpus must ship at least 10 arrangements");
    let mut checked = 0usize;
    for (name, arrangement) in &members {
        assert!(arrangement.dimension() <= 3, "{name}: corpus keeps n <= 3");
        assert!(arrangement.num_hyperplanes() <= 7, "{name}: corpus keeps d <= 7");
        let faces = enumerate_faces(arrangement);
        let cells = build_salvetti(arrangement, &faces);
        let theorem = theorem_formula(arrangement);
        for ls in SignLocalSystem::enumerate_all(arrangement.num_hyperplanes()) {
            if !cdo_check(arrangement, &ls).passes {
                continue;
            }
            let complex = twisted_coboundaries(&cells, &ls).unwrap();
            let oracle = complex.all_cohomology().unwrap();
            assert_eq!(
                theorem.groups, oracle,
                "{name}: disagreement for signs {:?}",
                ls.signs()
            );
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "suite took {elapsed:?}");
    pass(
        2,
        &format!(
            "{checked} CDO sign systems across {} corpus members in {elapsed:.2?}",
            members.len()
        ),
    );
}

/// Criterion 3: untwisted sanity. The all-(+1) oracle run returns free
/// groups whose ranks are the Möbius-computed Betti numbers, with no
/// torsion anywhere.
#[test]
fn criterion_3_untwisted_sanity() {
    for (name, arrangement) in corpus_members() {
        let betti = IntersectionPoset::build(&arrangement).betti_numbers();
        let faces = enumerate_faces(&arrangement);
        let cells = build_salvetti(&arrangement, &faces);
        let trivial = SignLocalSystem::trivial(arrangement.num_hyperplanes());
        let complex = twisted_coboundaries(&cells, &trivial).unwrap();
        let groups = complex.all_cohomology().unwrap();
        for (k, group) in groups.iter().enumerate() {
            assert_eq!(
                *group,
                AbelianGroup::free(betti[k]),
                "{name}: degree {k} is {group}, expected Z^{}",
                betti[k]
            );
        }
    }
    pass(3, "all corpus members torsion-free with Betti ranks under +1 signs");
}

/// Criterion 4: complex validity. Consecutive twisted coboundaries compose
/// to zero for every corpus member and every sign system.
#[test]
fn criterion_4_complex_validity() {
    let mut complexes = 0usize;
    for (name, arrangement) in corpus_members() {
        let d = arrangement.num_hyperplanes();
        assert!(d <= 6, "{name}: criterion covers d <= 6 corpus members");
        let faces = enumerate_faces(&arrangement);
        let cells = build_salvetti(&arrangement, &faces);
        for ls in SignLocalSystem::enumerate_all(d) {
            let complex = twisted_coboundaries(&cells, &ls)
                .unwrap_or_else(|e| panic!("{name}: {e} for signs {:?}", ls.signs()));
            for k in 0..complex.degrees().saturating_sub(1) {
                let product = complex.coboundary(k + 1).mul(complex.coboundary(k));
                assert!(
                    product.is_zero(),
                    "{name}: δ^{}∘δ^{} ≠ 0 for signs {:?}",
                    k + 1,
                    k,
                    ls.signs()
                );
            }
            complexes += 1;
        }
    }
    pass(4, &format!("δδ = 0 on {complexes} twisted complexes"));
}

/// Criterion 5: universal coefficients. For every corpus member and every
/// sign system, the mod-2 reduction has cohomology dimensions b_i(M) and
/// the rational Euler characteristic equals the alternating Betti sum.
#[test]
fn criterion_5_universal_coefficients() {
    for (name, arrangement) in corpus_members() {
        let betti = IntersectionPoset::build(&arrangement).betti_numbers();
        let expected_euler: i64 = betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        let faces = enumerate_faces(&arrangement);
        let cells = build_salvetti(&arrangement, &faces);
        for ls in SignLocalSystem::enumerate_all(arrangement.num_hyperplanes()) {
            let complex = twisted_coboundaries(&cells, &ls).unwrap();
            assert_eq!(
                complex.mod2_cohomology_dimensions(),
                betti,
                "{name}: mod-2 dimensions for signs {:?}",
                ls.signs()
            );
            assert_eq!(
                complex.euler_characteristic(),
                expected_euler,
                "{name}: Euler characteristic for signs {:?}",
                ls.signs()
            );
        }
    }
    pass(5, "mod-2 dimensions and Euler characteristics exact on the whole corpus");
}

/// Criterion 6: gating. The theorem pipeline refuses the trivial sign
/// system everywhere, and refuses the parallel pair for every sign system,
/// in both cases with exit code 2 and at least one violating dense edge
/// (the pencil point at infinity for the parallel pair).
#[test]
fn criterion_6_gating_behavior() {
    for (name, arrangement) in corpus_members() {
        let path = corpus_dir().join(format!("{name}.json"));
        let trivial = vec!["1"; arrangement.num_hyperplanes()].join(",");
        let out = run_cli(&[
            "cohomology",
            path.to_str().unwrap(),
            "--method",
            "theorem",
            &format!("--signs={trivial}"),
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(2), "{name}: trivial system must be gated");
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(
            !value["violations"].as_array().unwrap().is_empty(),
            "{name}: violations must be listed"
        );
    }

    let parallel = corpus_dir().join("parallel_pair.json");
    for ls in SignLocalSystem::enumerate_all(2) {
        let out = run_cli(&[
            "cohomology",
            parallel.to_str().unwrap(),
            "--method",
            "theorem",
            &format!("--signs={}", sign_string(&ls)),
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(2), "parallel pair signs {:?}", ls.signs());
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let violations = value["violations"].as_array().unwrap();
        assert!(
            violations.iter().any(|v| v["hyperplanes"] == serde_json::json!([0, 1, 2])),
            "parallel pair must report the pencil point at infinity, got {violations:?}"
        );
    }
    pass(6, "exit code 2 with violating dense edges on every gated input");
}

/// Criterion 7: lemma consistency. On every central corpus member, every
/// sign system with total monodromy -1 that also passes the CDO check gets
/// isomorphic group lists from the Hopf identification and the closed form.
#[test]
fn criterion_7_lemma_consistency() {
    let mut checked = 0usize;
    for (name, arrangement) in corpus_members() {
        if !arrangement.is_central() {
            continue;
        }
        let theorem = theorem_formula(&arrangement);
        for ls in SignLocalSystem::enumerate_all(arrangement.num_hyperplanes()) {
            if ls.t0() != Sign::Minus || !cdo_check(&arrangement, &ls).passes {
                continue;
            }
            let lemma = lemma_central_cohomology(&arrangement, &ls).unwrap();
            assert_eq!(
                lemma.groups, theorem.groups,
                "{name}: lemma vs theorem for signs {:?}",
                ls.signs()
            );
            checked += 1;
        }
    }
    assert!(checked > 0, "the corpus must contain central members");
    pass(7, &format!("{checked} central CDO systems, lemma and theorem isomorphic"));
}
