use std::process::{Command, Output};

use serde_json::Value;

fn vkinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vkinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = vkinv(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    vkinv(args).status.code().unwrap()
}

#[test]
fn kishino_w2_f20_count() {
    let args = ["color-count", "--name", "kishino", "--biquandle", "w2", "--group", "sd:5:4:2"];
    assert_eq!(stdout(&args), "40\n");
}

#[test]
fn trivial_braid_counts_every_element() {
    let args = ["color-count", "--braid", "n=1", "--biquandle", "w2", "--group", "sd:5:4:2"];
    assert_eq!(stdout(&args), "20\n");
}

#[test]
fn virtual_torus_state_sum() {
    let args = ["state-sum", "--name", "vt2_2", "--biquandle", "abelian", "--n", "3", "--cocycle", "additive"];
    assert_eq!(stdout(&args), "1 + t + t^2 (mod 3)\n");
    let args = ["state-sum", "--name", "trefoil", "--biquandle", "abelian", "--n", "3", "--cocycle", "additive"];
    assert_eq!(stdout(&args), "9 (mod 3)\n");
}

#[test]
fn mochizuki_cocycle_sum_has_full_augmentation() {
    let v = json(&["state-sum", "--name", "trefoil", "--biquandle", "abelian", "--n", "3", "--cocycle", "mochizuki"]);
    assert_eq!(v["colorings"], 9);
    assert_eq!(v["invariant"], true);
}

#[test]
fn json_and_text_agree() {
    let base = ["color-count", "--name", "figure8", "--biquandle", "core", "--group", "z:5"];
    let text = stdout(&base);
    let v = json(&base);
    assert_eq!(text.trim(), v["count"].to_string());

    let base = ["state-sum", "--braid", "n=2 s1 s1 s1 v1", "--biquandle", "abelian", "--n", "5", "--cocycle", "additive"];
    assert_eq!(stdout(&base).trim(), json(&base)["phi"].as_str().unwrap());

    let base = ["abelianization", "--name", "trefoil", "--biquandle", "w1"];
    assert_eq!(stdout(&base).trim(), json(&base)["text"].as_str().unwrap());
}

#[test]
fn listed_colorings_respect_limit() {
    let v = json(&["color-count", "--name", "trefoil", "--biquandle", "core", "--group", "z:3", "--limit", "4"]);
    assert_eq!(v["count"], 9);
    assert_eq!(v["colorings"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(code(&["color-count", "--gauss", "O1+ X", "--biquandle", "w1", "--group", "z:3"]), 2);
    assert_eq!(code(&["color-count", "--name", "nope", "--biquandle", "w1", "--group", "z:3"]), 2);
    assert_eq!(code(&["color-count", "--name", "trefoil", "--biquandle", "w1", "--group", "q:3"]), 2);
    assert_eq!(code(&["color-count", "--name", "trefoil", "--biquandle", "w1"]), 2);
    assert_eq!(code(&["color-count", "--name", "trefoil", "--gauss", "O1+ U1+", "--biquandle", "w1", "--group", "z:3"]), 2);
    assert_eq!(code(&["hom-count", "--presentation", "<a | a^>", "--group", "z:3"]), 2);
}

#[test]
fn axiom_violations_exit_3() {
    let out = vkinv(&["axioms", "--biquandle", "custom", "--u", "x", "--v", "y", "--group", "z:3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("birack: fails"));
    assert_eq!(code(&["obstruct", "--name", "trefoil", "--n", "4"]), 3);
    assert_eq!(code(&["state-sum", "--name", "trefoil", "--biquandle", "abelian", "--n", "9", "--cocycle", "mochizuki"]), 3);
}

#[test]
fn wada_pairs_pass_axioms() {
    for kind in ["w1", "w2", "core"] {
        let v = json(&["axioms", "--biquandle", kind, "--group", "s:3"]);
        assert_eq!(v["birack"], true, "{kind}");
        assert_eq!(v["yang_baxter"], true, "{kind}");
        assert_eq!(v["wada"]["t"], true, "{kind}");
    }
}

#[test]
fn hom_count_matches_coloring_count() {
    let homs = stdout(&["hom-count", "--name", "kishino", "--biquandle", "w2", "--group", "sd:5:4:2"]);
    assert_eq!(homs, "40\n");
    let pres = stdout(&["hom-count", "--presentation", "<a,y | y a y^-1 = a^2>", "--group", "sd:5:4:2"]);
    assert_eq!(pres, "40\n");
}

#[test]
fn mirror_changes_the_diagram() {
    let plain = json(&["alex-numbering", "--name", "vt2_3"]);
    let mirror = json(&["alex-numbering", "--name", "vt2_3", "--mirror"]);
    assert!(mirror["diagram"].as_str().unwrap().starts_with("mirror of"));
    assert_eq!(plain["mod2"].is_null(), mirror["mod2"].is_null());
}

#[test]
fn obstruction_separates_numbering_from_weight() {
    let text = stdout(&["obstruct", "--name", "parity_knot", "--n", "3"]);
    assert!(text.contains("mod-2 numbering: exists"));
    assert!(text.contains("nonzero weight over Z3: 2"));
    let text = stdout(&["obstruct", "--name", "vt2_2", "--n", "3"]);
    assert!(text.contains("mod-2 numbering: none"));
    let text = stdout(&["obstruct", "--name", "figure8", "--n", "5"]);
    assert!(text.contains("every coloring over Z5 has weight 0"));
}

#[test]
fn kishino_span_report() {
    let v = json(&["span", "--name", "kishino", "--exact"]);
    assert_eq!(v["report"]["span"], 12);
    assert_eq!(v["report"]["exact"], true);
    let v = json(&["span", "--name", "kishino", "--bound", "2"]);
    assert_eq!(v["report"]["exact"], false);
}

#[test]
fn golden_corpus_views() {
    assert_eq!(
        stdout(&["corpus", "trefoil_gauss"]),
        "trefoil_gauss\nsource: gauss O1+ U2+ O3+ U1+ O2+ U3+\ngauss: O1+ U2+ O3+ U1+ O2+ U3+\ncrossings: 3\ncomponents: 1\n"
            .to_string()
            + &json(&["corpus", "trefoil_gauss"])["entry"]["note"].as_str().unwrap().to_string()
            + "\n"
    );
    let list = json(&["corpus"]);
    let names: Vec<&str> = list["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"kishino"));
    assert_eq!(stdout(&["corpus", "--pairs"]).lines().next(), Some("unknot ~ unknot_braid"));
}

#[test]
fn golden_wada_groups() {
    assert_eq!(stdout(&["abelianization", "--name", "vhopf", "--biquandle", "w1"]), "Z + Z2\n");
    assert_eq!(stdout(&["abelianization", "--name", "kishino", "--biquandle", "w2"]), "Z\n");
    let p = json(&["wada-group", "--name", "trefoil", "--biquandle", "w1"]);
    assert_eq!(p["presentation"]["generators"].as_array().unwrap().len(), 6);
}

#[test]
fn threads_flag_is_accepted() {
    let args = ["--threads", "2", "color-count", "--name", "kishino", "--biquandle", "w2", "--group", "sd:5:4:2"];
    assert_eq!(stdout(&args), "40\n");
}
