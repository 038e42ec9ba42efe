use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn apseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apseq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const TRACKER: &str = "states: q0 q1
start: q0
alphabet: 0 1
q0 0 -> q0
q0 1 -> q1
q1 0 -> q0
q1 1 -> q1
accept-sets: {q0,q1}
";

const EMPTY_FAMILY: &str = "states: q0 q1
start: q0
alphabet: 0 1
q0 0 -> q0
q0 1 -> q1
q1 0 -> q0
q1 1 -> q1
accept-sets:
";

const ONES_MOD_3: &str = "states: r0 r1 r2
start: r0
alphabet: 0 1
r0 0 -> r0
r0 1 -> r1
r1 0 -> r1
r1 1 -> r2
r2 0 -> r2
r2 1 -> r0
accept-sets: {r0,r1,r2}
";

const IDENTITY: &str = "states: q
start: q
input: 0 1
output: 0 1
q 0 -> 0 q
q 1 -> 1 q
";

const PARITY_TAGGER: &str = "states: e o
start: e
input: 0 1
output: e0 e1 o0 o1
e 0 -> e0 e
e 1 -> e1 o
o 0 -> o0 o
o 1 -> o1 e
";

#[test]
fn gen_prints_prefixes() {
    let o = apseq(&["gen", "--family", "thue_morse", "--n", "32"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "01101001100101101001011001101001\n");
    let o = apseq(&["gen", "--family", "kolakoski", "--n", "23"]);
    assert_eq!(stdout(&o), "22112122122112112212112\n");
    let o = apseq(&["gen", "--family", "periodic", "--period", "01", "--n", "4"]);
    assert_eq!(stdout(&o), "0101\n");
    let o = apseq(&["gen", "--spec", "periodic period=01", "--n", "4"]);
    assert_eq!(stdout(&o), "0101\n");
}

#[test]
fn gen_reads_spec_files_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "fib.spec", "mechanical alpha=inv_phi2 rho=inv_phi2\n");
    let arg = format!("@{}", p.display());
    let a = apseq(&["gen", "--spec", &arg, "--n", "21"]);
    let b = apseq(&["gen", "--spec", &arg, "--n", "21"]);
    assert_eq!(stdout(&a), "010010100100101001010\n");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn multi_character_symbols_are_comma_separated() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "tagger.machine", PARITY_TAGGER);
    let o = apseq(&["transduce", "--machine", m.to_str().unwrap(), "--family", "thue_morse", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "e0,e1,o1,e0\n");
}

#[test]
fn spec_errors_exit_2_and_name_the_key() {
    let o = apseq(&["gen", "--family", "nosuch", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
    let o = apseq(&["gen", "--family", "periodic", "--period", "01", "--colour", "red", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    let o = apseq(&["gen", "--spec", "scheme file=inline", "--n", "3"]);
    assert_eq!(code(&o), 2);
    let o = apseq(&["gen", "--n", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn horizon_exhaustion_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_apseq"))
        .args(["gen", "--family", "thue_morse", "--n", "1000"])
        .env("APSEQ_HORIZON_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn analyze_complexity_of_fibonacci() {
    let o = apseq(&["analyze", "--family", "fibonacci", "--metric", "complexity", "--n", "1..10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("metric,param,value,kind,horizon"));
    let values: Vec<usize> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(values, (2..=11).collect::<Vec<_>>());
}

#[test]
fn analyze_am_of_thue_morse() {
    let o = apseq(&["analyze", "--family", "thue_morse", "--metric", "am", "--shifts", "64", "--t", "65536"]);
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("am,min,"));
    let v: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!((v - 1.0 / 3.0).abs() < 0.02, "{v}");
}

#[test]
fn analyze_cubes_of_thue_morse_is_empty() {
    let o = apseq(&["analyze", "--family", "thue_morse", "--metric", "powers", "--kind", "cube"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "metric,param,value,kind,horizon\n");
    let o = apseq(&["analyze", "--family", "fibonacci", "--metric", "powers", "--kind", "cube", "--max-root", "3"]);
    assert!(stdout(&o).lines().count() > 1);
}

#[test]
fn analyze_word_metrics() {
    let o = apseq(&["analyze", "--metric", "quasiperiods", "--word", "abaababaabaab"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "metric,param,value,kind,horizon\nquasiperiods,5,abaab,minimal,13\nquasiperiods,13,abaababaabaab,quasiperiod,13\n"
    );
    let o = apseq(&["analyze", "--metric", "tiling", "--word", "0011"]);
    assert!(stdout(&o).contains("tiling,3,0□1,minimal,4"), "{}", stdout(&o));
}

#[test]
fn analyze_regulators() {
    let o = apseq(&["analyze", "--family", "thue_morse", "--metric", "regulator", "--n", "1..3", "--certified"]);
    assert_eq!(code(&o), 0);
    let vals: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(2).unwrap().to_string()).collect();
    assert_eq!(vals, ["3", "9", "11"]);
    let o = apseq(&["analyze", "--family", "kolakoski", "--metric", "regulator", "--n", "1", "--certified"]);
    assert_eq!(code(&o), 5);
}

#[test]
fn transduce_identity_and_bounds() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "id.machine", IDENTITY);
    let m = m.to_str().unwrap();
    let o = apseq(&["transduce", "--machine", m, "--family", "fibonacci", "--n", "21"]);
    assert_eq!(stdout(&o), "010010100100101001010\n");
    let o = apseq(&["transduce", "--machine", m, "--family", "periodic", "--period", "01", "--n", "4", "--emit-bound"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "0101");
    // g(n) = n+1 and one state give h = g, so h(h(n)) = n+2.
    assert_eq!(lines[1], "bound(1) = 3");
    assert_eq!(lines[8], "bound(8) = 10");
}

#[test]
fn transduce_machine_errors_exit_4() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "bad.machine", "states: q\nq 0 -> \n");
    let o = apseq(&["transduce", "--machine", m.to_str().unwrap(), "--family", "thue_morse", "--n", "4"]);
    assert_eq!(code(&o), 4);
    let o = apseq(&["transduce", "--machine", "/nonexistent/file", "--family", "thue_morse", "--n", "4"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn decide_verdicts_and_refusals() {
    let dir = TempDir::new().unwrap();
    let tracker = write(dir.path(), "tracker.aut", TRACKER);
    let empty = write(dir.path(), "empty.aut", EMPTY_FAMILY);
    let mod3 = write(dir.path(), "mod3.aut", ONES_MOD_3);
    let o = apseq(&["decide", "--automaton", tracker.to_str().unwrap(), "--family", "thue_morse"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("ACCEPT\nlimit-macrostate: {q0,q1}\nwindow: ["), "{text}");
    let o = apseq(&["decide", "--automaton", empty.to_str().unwrap(), "--family", "periodic", "--period", "01"]);
    assert!(stdout(&o).starts_with("REJECT\n"));
    let o = apseq(&["decide", "--automaton", tracker.to_str().unwrap(), "--family", "kolakoski"]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("certified"));
    let o = apseq(&["decide", "--automaton", mod3.to_str().unwrap(), "--family", "thue_morse"]);
    assert_eq!(code(&o), 6);
    let o = apseq(&["decide", "--automaton", mod3.to_str().unwrap(), "--family", "periodic", "--period", "011"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ACCEPT\nlimit-macrostate: {r0,r1,r2}"));
    let bad = write(dir.path(), "bad.aut", "states: q0\nstart: q9\nalphabet: 0 1\naccept-sets: {q0}\n");
    let o = apseq(&["decide", "--automaton", bad.to_str().unwrap(), "--family", "thue_morse"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn compare_reports_agreement_and_divergence() {
    let o = apseq(&["compare", "--a", "thue_morse definition=recurrence", "--b", "thue_morse", "--horizon", "10000"]);
    assert_eq!(stdout(&o), "agreement: >= 10000\ndensity: 0.000000\ndivergence: none\n");
    let o = apseq(&["compare", "--a", "kolakoski", "--b", "alternating_morphic", "--horizon", "10000"]);
    assert!(stdout(&o).starts_with("agreement: >= 10000\n"));
    let o = apseq(&["compare", "--a", "fibonacci", "--b", "thue_morse", "--horizon", "1000"]);
    let text = stdout(&o);
    assert!(text.starts_with("agreement: 2\n"), "{text}");
    assert!(text.contains("divergence: 2\na[0..10): 01[0]0101001\nb[0..10): 01[1]0100110\n"), "{text}");
    let o = apseq(&["compare", "--a", "fibonacci", "--b", "kolakoski"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn seeded_scheme_policy_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "tm.scheme", "alphabet: 0 1\nlevel0: 0 1\nrule: 0 0 1\nrule: 1 1 0\npairs: 0 0, 0 1, 1 0, 1 1\n");
    let spec = format!("scheme file=@{} policy=random", s.display());
    let a = apseq(&["--seed", "7", "gen", "--spec", &spec, "--n", "64"]);
    let b = apseq(&["gen", "--seed", "7", "--spec", &spec, "--n", "64"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed=7"));
}
