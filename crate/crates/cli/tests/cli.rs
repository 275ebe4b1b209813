use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use lyzeta::suspension::ZetaProfile;
use lyzeta::RatFun;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn lyzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lyzeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp_json(v: &serde_json::Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

#[test]
fn suspend_single_twist() {
    let o = lyzeta(&["suspend", "--in", &fixture("profile_x5y6"), "--k", "10", "--ell", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "(3*s + 7)/((15*s + 7)*(s + 1))");
}

#[test]
fn suspend_several_twists_as_text() {
    let o = lyzeta(&["suspend", "--in", &fixture("profile_x5y6"), "--k", "10", "--ell", "5,10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("Z^(5) = "));
    assert!(lines[1].starts_with("Z^(10) = "));
}

#[test]
fn suspend_matrix_identity() {
    let o = lyzeta(&["suspend", "--in", &fixture("profile_x5y6"), "--k", "10", "--matrix"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("  [9, -3, -24, -72]"));
    assert!(text.contains(": true"));
}

#[test]
fn fbad_orders() {
    let o = lyzeta(&["fbad", "--orders", "1,3,7,18,21"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "18");
    assert_eq!(code(&lyzeta(&["fbad", "--orders", "0,3"])), 1);
}

#[test]
fn holomorphy_of_suspension_passes() {
    for name in ["susp_cusp3_k2", "susp_cusp3_k3", "susp_two_cusps_k5"] {
        let o = lyzeta(&["check", "holomorphy", "--in", &fixture(name)]);
        assert_eq!(code(&o), 0, "{name}");
        assert!(stdout(&o).starts_with("holomorphy: pass"));
    }
}

#[test]
fn monodromy_failure_exits_2() {
    // a germ summary whose pole −1/3 has no matching eigenvalue
    let germ = serde_json::json!({
        "name": "fake",
        "prod_nu0": 1,
        "entries": [{"ell": 1, "num": [1], "den": [1, 3]}],
        "delta": {"brackets": [[1, 1]]},
    });
    let input = temp_json(&serde_json::json!({"suspension": {"k": 2, "germ": germ}}));
    let path = input.path().to_str().unwrap();
    let o = lyzeta(&["--unchecked", "check", "monodromy", "--in", path]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("pole -5/6 order 6 FAIL"));
}

#[test]
fn charpoly_and_acampo() {
    let o = lyzeta(&["charpoly", "--in", &fixture("graph_triple_cusp")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Delta: Phi1^2*Phi3*Phi7^2*Phi18*Phi21^2\n"));
    let o = lyzeta(&["acampo", "--in", &fixture("graph_cusp")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Delta: "));
}

#[test]
fn zeta_graph_twisted() {
    let o = lyzeta(&["zeta", "graph", "--in", &fixture("graph_triple_cusp"), "--ell", "18"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "-1/(18*s + 5)");
}

#[test]
fn lys_and_sis() {
    let o = lyzeta(&["lys", "--in", &fixture("lys_xyz"), "--ell", "1"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).trim().is_empty());
    // sis needs k = 1
    let o = lyzeta(&["sis", "--in", &fixture("lys_xyz")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn json_output_round_trips() {
    let o = lyzeta(&["--format", "json", "zeta", "graph", "--in", &fixture("graph_two_cusps")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let z: RatFun = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&z).unwrap(), text.trim());

    let o = lyzeta(&["--format", "json", "suspend", "--in", &fixture("profile_x5y6"), "--k", "10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let p = ZetaProfile::from_json(&v, false).unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), text.trim());
}

#[test]
fn latex_uses_frac() {
    let o = lyzeta(&["--format", "latex", "zeta", "graph", "--in", &fixture("graph_cusp")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\\frac"));
}

#[test]
fn sequential_matches_parallel() {
    let args = ["--format", "json", "check", "holomorphy", "--in"];
    let path = fixture("lys_degree10_II");
    let par = lyzeta(&[&args[..], &[path.as_str()]].concat());
    let seq = lyzeta(&[&["--sequential"][..], &args[..], &[path.as_str()]].concat());
    assert_eq!(code(&par), 0);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn strict_rejects_missing_entries() {
    let args = ["suspend", "--in", &fixture("profile_x5y6"), "--k", "10", "--ell", "7"];
    let lax = lyzeta(&args);
    assert_eq!(code(&lax), 0);
    assert_eq!(stdout(&lax).trim(), "0");
    let strict = lyzeta(&[&["--strict"][..], &args[..]].concat());
    assert_eq!(code(&strict), 1);
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(fixture("graph_cusp")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_lyzeta"))
        .args(["zeta", "graph", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let file = lyzeta(&["zeta", "graph", "--in", &fixture("graph_cusp")]);
    assert_eq!(o.stdout, file.stdout);
}

#[test]
fn input_errors_exit_1() {
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "{not json").unwrap();
    let o = lyzeta(&["zeta", "graph", "--in", bad.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(code(&lyzeta(&["zeta", "graph", "--in", "/nonexistent.json"])), 1);
    assert_eq!(code(&lyzeta(&["--bogus"])), 1);
    assert_eq!(code(&lyzeta(&["--help"])), 0);
}

#[test]
fn validation_names_the_field() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("lys_xyz")).unwrap()).unwrap();
    v["chi_complement"] = 5.into();
    let f = temp_json(&v);
    let o = lyzeta(&["lys", "--in", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("chi"));
}
