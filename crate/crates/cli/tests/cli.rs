use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const CONJ_CUT: &str = "# cut on a conjunction
(Cut {p & q} [p, q |- q & p]
  (AndR {} [p, q |- p & q] (Id {} [p, q |- p]) (Id {} [p, q |- q]))
  (AndR {} [p, q, p & q |- q & p]
    (AndL {p & q; 2} [p, q, p & q |- q] (Id {} [p, q |- q]))
    (AndL {p & q; 1} [p, q, p & q |- p] (Id {} [p, q |- p]))))
";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn omegalab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_omegalab")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let r = omegalab(&all);
    (r.code, serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout)))
}

#[test]
fn check_accepts_valid_derivation() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "proof.sqp", "const c\n(ImpR {} [|- X(c) -> X(c)]\n  (Id {} [X(c) |- X(c)]))\n");
    let r = omegalab(&["check", "--calculus", "LIP0", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().next(), Some("ok"));
}

#[test]
fn check_reports_violations() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.sqp", "(Id {} [p |- q])\n");
    let r = omegalab(&["check", s(&f)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("1 violations"), "{}", r.stdout);
    let (code, v) = json(&["check", s(&f)]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn second_order_rule_outside_li() {
    let dir = TempDir::new().unwrap();
    let text = "const c\n(All2R {Y} [|- All X. X(c) -> X(c)]\n  (ImpR {} [|- Y(c) -> Y(c)] (Id {} [Y(c) |- Y(c)])))\n";
    let f = write(&dir, "all2.sqp", text);
    assert_eq!(omegalab(&["check", "--calculus", "LI", s(&f)]).code, 1);
    assert_eq!(omegalab(&["check", "--calculus", "LIP0", s(&f)]).code, 0);
    assert_eq!(omegalab(&["check", "--calculus", "LIT", s(&f)]).code, 0);
}

#[test]
fn elim_cut_then_check() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cut.sqp", CONJ_CUT);
    let r = omegalab(&["elim-cut", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("# cuts after 0"));
    let out = write(&dir, "out.sqp", &r.stdout);
    let c = omegalab(&["check", s(&out)]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    assert!(c.stdout.contains("cuts 0"));
    assert!(c.stdout.contains("conclusion p, q |- q & p"));

    let target = dir.path().join("written.sqp");
    let (code, v) = json(&["elim-cut", s(&f), "--output", s(&target)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cuts_after"], 0);
    assert_eq!(v["result"]["max_rank_before"], 1);
    assert_eq!(v["result"]["passes"].as_array().unwrap().len(), 2);
    assert_eq!(omegalab(&["check", s(&target)]).code, 0);
}

#[test]
fn p_counter2_demo() {
    let r = omegalab(&["demo", "p-counter2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let values: Vec<&str> =
        r.stdout.lines().filter(|l| l.starts_with("X(*) = ")).map(|l| l.rsplit(" : ").next().unwrap()).collect();
    assert_eq!(values, ["1", "0.5", "1"]);
    assert!(r.stdout.contains("V(q) = 0.5"));
    assert!(r.stdout.contains("UNSOUND-INSTANCE"));
    let (_, v) = json(&["demo", "p-counter2"]);
    assert_eq!(v["result"]["meet"], "0.5");
    assert_eq!(v["result"]["unsound_instance"], true);
}

#[test]
fn demo_numbers_follow_the_algebra() {
    let dir = TempDir::new().unwrap();
    // the three-element chain under different labels
    let f = write(&dir, "alg.pol", "order 3\n111\n011\n001\nlabels bottom middle top\n");
    let (_, relabeled) = json(&["demo", "p-counter2", "--algebra-file", s(&f)]);
    assert_eq!(relabeled["result"]["meet"], "middle");
    let values: Vec<&str> =
        relabeled["result"]["values"].as_array().unwrap().iter().map(|v| v["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["top", "middle", "top"]);

    let (_, chain4) = json(&["demo", "p-counter2", "--algebra", "chain 4"]);
    assert_eq!(chain4["result"]["values"].as_array().unwrap().len(), 4);
    let (_, boolean) = json(&["demo", "p-counter2", "--algebra", "boolean 1"]);
    assert_eq!(boolean["result"]["meet"], boolean["result"]["algebra"][1]);
    let (_, three) = json(&["demo", "p-counter2"]);
    assert_ne!(three["result"], chain4["result"]);
    assert_ne!(three["result"], boolean["result"]);
}

#[test]
fn omega_cut_demo_reduces() {
    let r = omegalab(&["demo", "omega-cut"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("cut p(c) |- p(c) | r"));
    assert!(r.stdout.contains("premises 4"));
    assert!(r.stdout.contains("reduced: p(c) |- p(c) | r"));
}

#[test]
fn search_verdicts() {
    let dir = TempDir::new().unwrap();
    let yes = write(&dir, "yes.fml", "all x. p(x) |- ex x. p(x)\n");
    let r = omegalab(&["search", s(&yes)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("found"));
    let no = write(&dir, "no.fml", "|- p | (p -> bot)\n");
    let (code, v) = json(&["search", "--depth", "8", s(&no)]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "not-found-within-budget");
}

#[test]
fn parse_errors_carry_positions() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.fml", "p &\n  (q -> ) |- r\n");
    let r = omegalab(&["search", s(&f)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.fml:2:"), "{}", r.stderr);
    let (code, v) = json(&["search", s(&f)]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["line"], 2);
    assert!(v["error"]["col"].as_u64().unwrap() > 1);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(omegalab(&["check", "/nonexistent/proof.sqp"]).code, 2);
    assert_eq!(omegalab(&["check", "--calculus", "LIQ", "x.sqp"]).code, 2);
    assert_eq!(omegalab(&["omega", "membership", "--q", "p -> p"]).code, 2);
}

#[test]
fn json_schema_envelope() {
    let (_, v) = json(&["demo", "omega-cut"]);
    assert_eq!(v["schema"], "omegalab.report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "demo omega-cut");
    assert_eq!(v["status"], "ok");
    // output is deterministic
    let (_, again) = json(&["demo", "omega-cut"]);
    assert_eq!(v, again);
}

#[test]
fn omega_membership_and_reduce() {
    let (code, v) = json(&["--const", "c", "omega", "membership", "--q", "All X. X(c) -> X(c)", "--delta", "p(c)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "member");
    let (code, _) = json(&["--const", "c", "omega", "membership", "--q", "All X. X(c) -> X(x)"]);
    assert_eq!(code, 1);
    let r = omegalab(&[
        "--const", "c", "omega", "reduce", "--q", "All X. X(c) -> X(c)", "--gamma", "p(c)", "--pi", "p(c) | r",
        "--pool", "p(c); bot",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("premises 4"));
}

#[test]
fn probe_and_eval() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "star.mdl", "algebra three-chain\nconstant *\np * -> 0.5\n");
    let r = omegalab(&["omega", "probe", s(&m), "--q", "All X. (X(*) -> bot) | X(*)", "--pool", "bot; p(*)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("V(q) = 0.5"));
    assert!(r.stdout.contains("UNSOUND-INSTANCE"));
    let (code, v) = json(&["eval", s(&m), "--sequent", "|- p(*) | (p(*) -> bot)"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["succedent_value"], "0.5");
    assert_eq!(omegalab(&["eval", s(&m), "--sequent", "p(*) |- p(*) | q(*)"]).code, 0);
}

#[test]
fn lattice_commands() {
    let dir = TempDir::new().unwrap();
    let vee = write(&dir, "vee.pol", "order 3\n100\n010\n111\n");
    let (code, v) = json(&["lattice", "complete", s(&vee)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["closed_sets"].as_array().unwrap().len(), 4);
    assert_eq!(omegalab(&["lattice", "density", s(&vee)]).code, 0);
    assert_eq!(omegalab(&["lattice", "regularity", s(&vee)]).code, 0);
    let chain = write(&dir, "chain.pol", "order 3\n111\n011\n001\nlabels 0 0.5 1\n");
    assert_eq!(omegalab(&["lattice", "complete", "--heyting", s(&chain)]).code, 0);
    let pol = write(&dir, "chain_pol.pol", "polarity 3 3\n111\n011\n001\n");
    let (_, v) = json(&["lattice", "complete", s(&pol)]);
    assert_eq!(v["result"]["closed_sets"].as_array().unwrap().len(), 3);
    let frame = write(&dir, "unit.pol", "frame 1 1\n1\nunit 0\nop\n0\nres\n0\n");
    assert_eq!(omegalab(&["lattice", "frame", s(&frame)]).code, 0);
}

#[test]
fn encode_commands() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.fml", "p(x) -> q(x)\n");
    let r = omegalab(&["encode", "induction", s(&phi)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("checked in LIP0"));
    let body = write(&dir, "body.fml", "x = 0 | ex y. x = s(y) & X(y)\n");
    let r = omegalab(&["encode", "fixpoint", s(&body), "--level", "1", "--tau", "\\x. p(x)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("lfp2:"));
    let nat = write(&dir, "nat.fml", "N(s(0))\n");
    let (code, v) = json(&["encode", "id-translate", s(&nat), "--def", "N X x := x = 0 | ex y. x = s(y) & X(y)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["id_level"], 1);
    let sen = write(&dir, "sen.fml", "all x. ex y. r(x, y)\n");
    let (_, v) = json(&["encode", "relativize", s(&sen)]);
    assert_eq!(v["result"]["level"], "0");
    let proof = write(
        &dir,
        "pr.sqp",
        "(AllL {all x. p(x); double(s(0))} [all x. p(x) |- p(double(s(0)))]\n  (Id {} [p(double(s(0))), all x. p(x) |- p(double(s(0)))]))\n",
    );
    let r = omegalab(&["encode", "relativize-derivation", s(&proof), "--pr", "double; 0; s(s(y))"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("checked in LIP0"));
    assert_eq!(omegalab(&["encode", "relativize-derivation", s(&proof)]).code, 2);
}

#[test]
fn interpolate_command() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cut.sqp", CONJ_CUT);
    let out = omegalab(&["elim-cut", s(&f)]);
    let free = write(&dir, "free.sqp", &out.stdout);
    let (code, v) = json(&["interpolate", s(&free), "--left", "p"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["interpolant"], "p");
    assert_eq!(v["result"]["certified"], true);
    assert_eq!(omegalab(&["interpolate", s(&free), "--left", "r"]).code, 2);
}
