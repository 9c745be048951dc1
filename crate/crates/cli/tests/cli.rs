use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use specsemi::factory::random_spec_semilattice;
use specsemi_cli::format::{parse_structure, serialize_structure, Structure, Validation};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn extend_prints_class_table() {
    let o = run(&["extend", &fixture("chain2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("5 class(es)"), "{out}");
    assert!(out.contains("[1,{}]     K = [0,{0,1}]  = υ(1)"), "{out}");
}

#[test]
fn extend_with_file_z() {
    let o = run(&["extend", &fixture("chain2.json"), "--z", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 class(es)"));
}

#[test]
fn extend_with_listed_z_rejects_non_closure() {
    let o = run(&["extend", &fixture("chain2-total.json"), "--z", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a closure"));
}

#[test]
fn json_output_is_valid() {
    let o = run(&["--json", "verify", &fixture("sierpinski.json"), "--z"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn lift_rejects_non_homomorphism() {
    let c = fixture("chain2.json");
    assert_eq!(
        run(&["lift", &c, &c, "--hom", "0->1,1->0"]).status.code(),
        Some(2)
    );
    let o = run(&[
        "lift",
        &c,
        &fixture("diamond.json"),
        "--hom",
        "0->bot,1->top",
        "--oracle",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("matches"));
}

#[test]
fn verify_against_other_target() {
    let o = run(&[
        "verify",
        &fixture("chain2.json"),
        "--against",
        &fixture("sierpinski.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_budget_is_a_resource_error() {
    let o = run(&["verify", &fixture("diamond.json"), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file_is_input_error() {
    assert_eq!(run(&["check", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gen_output_parses_back() {
    let o = run(&["gen", "--kind", "ideal", "--n", "3", "--ideal", "p"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let st = parse_structure("gen", &text, 64, Validation::Full).unwrap();
    assert_eq!(st.spec.size(), 8);
    assert_eq!(serialize_structure(&st), text);
}

#[test]
fn singleton_dot_has_no_edges() {
    let o = run(&["export-dot", &fixture("singleton.json")]);
    assert_eq!(
        stdout(&o),
        "digraph \"singleton\" {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"0\"];\n}\n"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_round_trips(seed in any::<u64>(), n in 1usize..=12, zmask in any::<u64>()) {
        let spec = random_spec_semilattice(seed, n).unwrap();
        let closures = specsemi::ClosureSet::all_closures(&spec).unwrap();
        let z: Vec<usize> = closures
            .members()
            .iter()
            .enumerate()
            .filter(|(i, _)| zmask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let st = Structure { name: format!("r{seed}"), spec, z: Some(z) };
        let text = serialize_structure(&st);
        let back = parse_structure("p", &text, 64, Validation::Full).unwrap();
        prop_assert_eq!(&back.spec, &st.spec.sorted_by_label());
        prop_assert_eq!(serialize_structure(&back), text);
    }
}
