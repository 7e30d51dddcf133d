use csub::cli::run_with;
use serde_json::Value;
use std::path::Path;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn csub(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("csub").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn pn_charpoly() {
    let (code, out, _) = csub(&["pn", "3", "--charpoly"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "λ² − 3λ + 2");
}

#[test]
fn pn_zero_is_a_usage_error() {
    let (code, out, err) = csub(&["pn", "0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && !err.is_empty());
    assert_eq!(csub(&["pn", "3", "--bogus"]).0, 2);
    assert_eq!(csub(&[]).0, 2);
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = csub(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["pn", "mobius", "charpoly", "check", "amalgam", "cstar", "invsemi", "selftest"] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn yoon_on_n5_names_p1() {
    let (code, out, _) = csub(&["check", "yoon", &fixture("n5.json")]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fail: (P1)"), "{out}");
    let (code, out, _) = csub(&["check", "yoon", &fixture("boolean3.json")]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fail: (P4)"));
    assert_eq!(csub(&["check", "yoon", &fixture("p4.json")]).0, 0);
    assert_eq!(csub(&["check", "firby", &fixture("p5.json")]).0, 0);
}

#[test]
fn caps_exit_three() {
    assert_eq!(csub(&["pn", "8"]).0, 3);
    assert_eq!(csub(&["pn", "4", "--cap-n", "3"]).0, 3);
    assert_eq!(csub(&["cstar", "build", "--n", "5"]).0, 3);
    assert_eq!(csub(&["invsemi", "build", "--n", "4"]).0, 3);
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = csub(&["mobius", "/nonexistent/poset.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("nonexistent"));
    assert_eq!(csub(&["check", "yoon", &fixture("s2_on_p2.action.json")]).0, 2);
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["amalgam", "check", &fixture("t3_on_p3.action.json"), "--mode", "monoid", "--json"];
    let (code, first, _) = csub(&args);
    assert_eq!(code, 0);
    assert_eq!(csub(&args).1, first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["command"][0], "amalgam");
}

#[test]
fn amalgam_subcommands() {
    let cat = fixture("s2_on_p2.category.json");
    let wit = fixture("s2_on_p2.witness.json");
    assert_eq!(csub(&["amalgam", "check", &cat, "--mode", "group", "--witness", &wit]).0, 0);
    assert_eq!(csub(&["amalgam", "check", &cat, "--mode", "group"]).0, 0);
    let (code, out, _) = csub(&["amalgam", "recover", &fixture("t3_on_p3.action.json"), "--mode", "monoid"]);
    assert_eq!(code, 0);
    assert!(out.contains("round trip: exact"));
    let (code, out, _) = csub(&["amalgam", "charfactor", "--perm", "3", "--dims", "3", "--dim-a", "8"]);
    assert_eq!(code, 1);
    assert!(out.contains("(dimension) fail"));
    assert_eq!(csub(&["amalgam", "charfactor", "--perm", "3", "--dims", "1,2", "--dim-a", "5"]).0, 0);
    let (code, out, _) = csub(&["amalgam", "build", "--perm", "2", "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
}

#[test]
fn cstar_and_invsemi_subcommands() {
    let (code, out, _) = csub(&["cstar", "compare", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("faithful: false") && out.contains("2 morphisms, 1 images"));
    assert!(out.contains("Hom(C(12), C(1|2)): 3 homomorphisms, 1 induced"));
    assert_eq!(csub(&["cstar", "ideals", "--n", "2"]).0, 0);
    assert_eq!(csub(&["cstar", "terminal", "--n", "3", "--unital"]).0, 0);
    let (code, out, _) = csub(&["cstar", "build", "--n", "2", "--unital", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["hom_counts"], serde_json::json!([[1, 3], [0, 2]]));
    let (code, out, _) = csub(&["invsemi", "build", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("11 nonzero elements"));
    for sub in ["verify", "derived", "autelements"] {
        assert_eq!(csub(&["invsemi", sub, "--n", "2"]).0, 0, "invsemi {sub}");
    }
}

#[test]
fn selftest_passes() {
    let (code, out, _) = csub(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
