use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prefent::KvDoc;
use tempfile::TempDir;

const KLM: &str = "vocab p q\nstate s1 theory \"p & q\"\nstate s2 theory \"~p & q\"\npref s1 s2\n";
const MAK: &str = "vocab p q\nstate a sat \"p & q\"\nstate b sat closure \"~p\"\npref a b\n";

fn prefent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prefent")).args(args).env_remove("PREFENT_SIZE_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn entail_klm_prints_the_concluded_theory() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.klm", KLM);
    let o = prefent(&["entail", "--model", s(&m), "--klm", "--premises", "q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Th(p & q)\n");
    let o = prefent(&["entail", "--model", s(&m), "--klm", "--premises", "~q", "--format", "kv"]);
    let doc = KvDoc::parse(&stdout(&o));
    assert_eq!(doc.get("theory"), Some("0000"));
}

#[test]
fn entail_mak_works_on_raw_premises() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.mak", MAK);
    let o = prefent(&["entail", "--model", s(&m), "--mak", "--premises", "p & q", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = KvDoc::parse(&stdout(&o));
    assert_eq!(doc.get("classes"), Some("1"));
    assert_eq!(doc.get("set"), Some("{1000}"));
    let o = prefent(&["entail", "--model", s(&m), "--mak", "--cn", "--premises", "~p", "--format", "kv"]);
    assert_eq!(KvDoc::parse(&stdout(&o)).get("semantics"), Some("cn"));
}

#[test]
fn check_reports_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.klm", KLM);
    let o = prefent(&["check", "--model", s(&m), "--property", "precirc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(KvDoc::parse(&stdout(&o)).get("verdict"), Some("holds"));

    // top concludes p, p concludes p & q: p lies between top and its conclusion
    let table = "vocab p q\n".to_string()
        + &(0..16)
            .map(|t: u64| {
                let out = match t {
                    0b1111 => 0b1010,
                    0b1010 => 0b1000,
                    _ => t,
                };
                format!("map {:04b} -> {:04b}\n", t, out)
            })
            .collect::<String>();
    let t = write(&dir, "t.tab", &table);
    let o = prefent(&["check", "--model", s(&t), "--property", "ct"]);
    assert_eq!(o.status.code(), Some(1));
    let doc = KvDoc::parse(&stdout(&o));
    assert_eq!(doc.get("verdict"), Some("fails"));
    assert_eq!(doc.get("witness.kind"), Some("ct"));
}

#[test]
fn classify_a_satisfaction_model() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.mak", MAK);
    let o = prefent(&["classify", "--model", s(&m)]);
    let doc = KvDoc::parse(&stdout(&o));
    assert_eq!(doc.get("supra_classical"), Some("false"));
    assert_eq!(doc.get("unclosed_state"), Some("a"));
}

#[test]
fn translations_preserve_entailment() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.klm", KLM);
    let mak = dir.path().join("m.mak");
    let back = dir.path().join("back.klm");
    assert_eq!(prefent(&["translate", "--model", s(&m), "--to", "mak", "--output", s(&mak)]).status.code(), Some(0));
    assert_eq!(prefent(&["translate", "--model", s(&mak), "--to", "klm", "--output", s(&back)]).status.code(), Some(0));
    let table = |p: &Path| stdout(&prefent(&["translate", "--model", s(p), "--to", "table"]));
    assert_eq!(table(&m), table(&mak));
    assert_eq!(table(&m), table(&back));
}

#[test]
fn construct_reproduces_a_cumulative_table() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.klm", KLM);
    let t = dir.path().join("m.tab");
    prefent(&["translate", "--model", s(&m), "--to", "table", "--output", s(&t)]);
    let built = dir.path().join("built.klm");
    assert_eq!(prefent(&["construct", "--table", s(&t), "--output", s(&built)]).status.code(), Some(0));
    let o = prefent(&["translate", "--model", s(&built), "--to", "table"]);
    assert_eq!(stdout(&o), fs::read_to_string(&t).unwrap());
    let kind = KvDoc::parse(&stdout(&prefent(&["classify", "--model", s(&built)])));
    assert_eq!(kind.get("simplified"), Some("true"));
    assert_eq!(kind.get("smooth"), Some("true"));
}

#[test]
fn fuzz_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.kv"), dir.path().join("b.kv"));
    for p in [&a, &b] {
        let o = prefent(&["fuzz", "--claim", "NONMONO", "--trials", "500", "--seed", "9", "--report", s(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(prefent(&["entail"]).status.code(), Some(2));
    assert_eq!(prefent(&["fuzz", "--claim", "NOPE"]).status.code(), Some(2));
    let bad = write(&dir, "bad.klm", "vocab p\nstate a theory \"q\"\n");
    let o = prefent(&["classify", "--model", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let big = write(&dir, "big.klm", "vocab p q r\nstate a theory \"p\"\n");
    let o = Command::new(env!("CARGO_BIN_EXE_prefent"))
        .args(["classify", "--model", s(&big)])
        .env("PREFENT_SIZE_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(prefent(&["--help"]).status.code(), Some(0));
}
