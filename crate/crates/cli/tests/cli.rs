use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use toricres::{Fan, GroupAction};
use toricres_cli::{
    cmd_classify, cmd_resolve, render_svg, sweep_rows, CliError, LabelMode, Method, RenderSpec,
};

fn toricres(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricres"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn g(r: i64, w: [i64; 3]) -> GroupAction {
    GroupAction::new(r, w).unwrap()
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&toricres(&["classify", "9", "1", "4", "7"], dir.path()));
    assert_eq!(v["class"], "IV_9");
    assert_eq!(v["canonical"], true);
    assert_eq!(v["terminal"], false);
    assert_eq!(v["semi_unimodular_generators"].as_array().unwrap().len(), 3);

    let v = json(&toricres(&["classify", "1", "0", "0", "0"], dir.path()));
    assert_eq!(v["smooth"], true);
    assert_eq!(v["class"], "I");

    let v = json(&toricres(&["classify", "7", "1", "2", "5"], dir.path()));
    assert!(v["class"].as_str().unwrap().starts_with("IIalpha"));
    assert_eq!(v["terminal"], true);
    assert_eq!(v["gorenstein"], false);
}

#[test]
fn classify_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["classify", "6", "2", "4", "0"][..],
        &["classify", "0", "0", "0", "0"],
        &["classify", "5", "1", "7", "2"],
        &["classify", "5", "1", "-1", "2"],
        &["classify", "5", "1", "x", "2"],
        &["classify", "5", "1", "2"],
    ] {
        assert_eq!(
            toricres(args, dir.path()).status.code(),
            Some(2),
            "{args:?}"
        );
    }
}

#[test]
fn resolve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = toricres(
        &[
            "resolve", "9", "1", "4", "7", "--method", "fo", "--out", "fan.json", "--svg",
            "fan.svg",
        ],
        dir.path(),
    );
    let v = json(&out);
    assert_eq!((v["F"].as_u64(), v["V"].as_u64()), (Some(23), Some(14)));
    assert_eq!(v["hilbert"], false);
    assert_eq!(v["smooth"], true);

    let text = std::fs::read_to_string(dir.path().join("fan.json")).unwrap();
    let fan = toricres_cli::fan_from_json(&text).unwrap();
    assert_eq!(fan.cones().len(), 23);
    let svg = std::fs::read_to_string(dir.path().join("fan.svg")).unwrap();
    roxmltree::Document::parse(&svg).unwrap();

    let v = json(&toricres(
        &["resolve", "9", "1", "4", "7", "--method", "iterated"],
        dir.path(),
    ));
    assert_eq!(v["hilbert"], true);

    let v = json(&toricres(
        &["resolve", "1", "0", "0", "0", "--method", "fo"],
        dir.path(),
    ));
    assert_eq!(v["F"], 1);
    assert_eq!(v["smooth"], true);
}

#[test]
fn resolve_fan_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    toricres(
        &["resolve", "5", "1", "2", "3", "--out", "fan.json"],
        dir.path(),
    );
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fan.json")).unwrap())
            .unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["cones", "lattice", "rays"].iter().collect::<Vec<_>>()
    );
    assert_eq!(v["lattice"]["r"], 5);
    let rays: Vec<Vec<i64>> = serde_json::from_value(v["rays"].clone()).unwrap();
    assert!(rays.iter().all(|r| r.len() == 4));
    assert!(rays.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn resolve_trace_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = toricres(&["resolve", "11", "1", "2", "8", "--trace"], dir.path());
    assert!(out.status.success());
    let trace = String::from_utf8(out.stderr).unwrap();
    assert!(trace.contains("[1] type 1/11(1,2,8)"), "{trace}");

    let out = toricres(
        &[
            "resolve", "14", "1", "9", "11", "--method", "iterated", "--report", "rep.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let rep: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rep.json")).unwrap())
            .unwrap();
    assert_eq!(rep["class"], "IV_14");
    assert_eq!(rep["verdicts"]["hilbert"], true);

    let out = toricres(
        &["resolve", "9", "1", "4", "7", "--report", "rep.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resolve_precondition_failures() {
    let dir = tempfile::tempdir().unwrap();
    // no weight equal to one under any generator
    let out = toricres(
        &["resolve", "6", "2", "3", "0", "--method", "fo"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    // not canonical
    let out = toricres(
        &["resolve", "5", "1", "1", "1", "--method", "iterated"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ghilb_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = toricres(
        &["ghilb", "9", "1", "4", "7", "--out", "charts.json"],
        dir.path(),
    );
    let v = json(&out);
    assert_eq!(v["num_max_cones"], 21);
    assert_eq!(v["non_hilbert_generators"].as_array().unwrap().len(), 3);
    let charts: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("charts.json")).unwrap())
            .unwrap();
    assert_eq!(charts.as_array().unwrap().len(), 21);

    let v = json(&toricres(&["ghilb", "4", "1", "2", "3"], dir.path()));
    assert_eq!(v["smooth"], false);

    let v = json(&toricres(&["ghilb", "1", "0", "0", "0"], dir.path()));
    assert_eq!(v["num_max_cones"], 1);
    assert_eq!(v["smooth"], true);
}

#[test]
fn ghilb_budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = toricres(&["ghilb", "41", "1", "2", "38"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let out = toricres(
        &["ghilb", "14", "1", "9", "11", "--budget", "10"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
}

fn sweep_csv(rmax: &str) -> Vec<Vec<String>> {
    let dir = tempfile::tempdir().unwrap();
    let out = toricres(&["sweep", "--rmax", rmax, "--out", "t.csv"], dir.path());
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(dir.path().join("t.csv")).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        [
            "r",
            "a1",
            "a2",
            "a3",
            "class",
            "fo_smooth",
            "fo_crepant",
            "fo_hilbert",
            "fo_V",
            "fo_E",
            "fo_F",
            "it_hilbert"
        ]
    );
    rdr.records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn sweep_examples() {
    let rows = sweep_csv("1");
    assert_eq!(rows.len(), 1);
    assert_eq!(
        rows[0],
        ["1", "0", "0", "0", "I", "true", "true", "true", "3", "3", "1", "true"]
    );

    let rows = sweep_csv("9");
    let nine = rows
        .iter()
        .find(|r| r[0..4] == ["9", "1", "4", "7"])
        .unwrap();
    assert_eq!(&nine[7], "false");
    assert_eq!(&nine[11], "true");

    let rows = sweep_csv("14");
    let fourteen = rows
        .iter()
        .find(|r| r[0..4] == ["14", "1", "9", "11"])
        .unwrap();
    assert_eq!(&fourteen[10], "43");
}

#[test]
fn sweep_rejects_large_rmax() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        toricres(&["sweep", "--rmax", "61"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sweep_rows(0).unwrap_err().code, 2);
}

#[test]
fn sweep_rows_are_class_representatives() {
    let rows = sweep_rows(12).unwrap();
    let mut keys: Vec<(i64, [i64; 3])> = rows.iter().map(|r| (r.r, [r.a1, r.a2, r.a3])).collect();
    let sorted = {
        let mut k = keys.clone();
        k.sort();
        k
    };
    assert_eq!(keys, sorted);
    keys.dedup();
    assert_eq!(keys.len(), rows.len());
    assert!(rows.iter().any(|r| (r.r, r.a1, r.a2, r.a3) == (6, 1, 2, 3)));
    // no semi-unimodular generator: FO columns are empty
    assert!(rows.iter().all(|r| r.fo_f.is_some() || r.class == "I"));
}

#[test]
fn svg_counts_match_fan() {
    for (r, w) in [(9, [1, 4, 7]), (12, [1, 7, 10]), (1, [0, 0, 0])] {
        let res = cmd_resolve(&g(r, w), Method::Fo).unwrap();
        for mode in [LabelMode::None, LabelMode::Coords, LabelMode::Ages] {
            let spec = RenderSpec::new(200, mode, None).unwrap();
            let svg = render_svg(&res.fan, &spec);
            let doc = roxmltree::Document::parse(&svg).unwrap();
            let count = |tag: &str| doc.descendants().filter(|n| n.has_tag_name(tag)).count();
            assert_eq!(count("circle"), res.summary.v);
            assert_eq!(count("polygon"), res.summary.f);
            let labels = if mode == LabelMode::None {
                0
            } else {
                res.summary.v
            };
            assert_eq!(count("text"), labels);
        }
    }
}

#[test]
fn render_command_highlights_non_hilbert_rays() {
    let dir = tempfile::tempdir().unwrap();
    toricres(
        &["resolve", "9", "1", "4", "7", "--out", "fan.json"],
        dir.path(),
    );
    let out = toricres(
        &[
            "render",
            "fan.json",
            "--highlight-non-hilbert",
            "--labels",
            "coords",
            "--size",
            "300",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let marked = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("vertex highlight"))
        .count();
    // V = 14 against a Hilbert basis of at most 11 elements
    assert!(marked >= 3, "{marked}");

    assert_eq!(
        toricres(&["render", "fan.json", "--size", "10"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        toricres(&["render", "missing.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
    std::fs::write(dir.path().join("bad.json"), "{\"rays\": 3}").unwrap();
    assert_eq!(
        toricres(&["render", "bad.json"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn render_spec_minimum_size() {
    assert!(RenderSpec::new(63, LabelMode::None, None).is_err());
    assert!(RenderSpec::new(64, LabelMode::None, None).is_ok());
}

#[test]
fn library_errors_carry_exit_codes() {
    let e: CliError = toricres_cli::parse_group(6, [2, 4, 0]).unwrap_err();
    assert_eq!(e.code, 2);
    let e = cmd_resolve(&g(6, [2, 3, 0]), Method::Fo).unwrap_err();
    assert_eq!(e.code, 3);
    assert_eq!(cmd_classify(&g(9, [1, 4, 7])).unwrap().class, "IV_9");
}

#[test]
fn fan_json_round_trip() {
    let res = cmd_resolve(&g(14, [1, 9, 11]), Method::Iterated).unwrap();
    let text = toricres_cli::to_json(&res.fan.to_json()).unwrap();
    let back: Fan = toricres_cli::fan_from_json(&text).unwrap();
    assert_eq!(back, res.fan);
}
