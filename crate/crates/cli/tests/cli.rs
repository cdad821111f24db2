use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hrlq::format::{parse_instance, parse_matching};
use hrlq::{is_envy_free, is_feasible, is_relaxed_stable, is_stable};
use tempfile::TempDir;

const PAIR2: &str = "\
hrlq 2 2
hospital h1 0 1 : r1 r2
hospital h2 [1,1] : r1
resident r1 : h1 h2
resident r2 : h1
";

const BOTH_LOWER: &str = "\
hrlq 2 2
hospital h1 1 1 : r1 r2
hospital h2 1 1 : r1
resident r1 : h1 h2
resident r2 : h1
";

fn hrlq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrlq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in report:\n{report}"))
}

#[test]
fn pair2_rsm_approx() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let out = hrlq(&["solve", path.to_str().unwrap(), "--algo", "rsm-approx"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "size"), "2");
    assert_eq!(field(&text, "feasible"), "true");
    assert_eq!(field(&text, "relaxed_stable"), "true");
}

#[test]
fn pair2_stable_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let out = hrlq(&["solve", path.to_str().unwrap(), "--algo", "stable"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "size"), "1");
    assert_eq!(field(&text, "feasible"), "false");
    assert_eq!(field(&text, "stable"), "true");
    assert!(text.contains("pair: r1 h1"));
}

#[test]
fn json_verdicts_match_recomputation() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let named = parse_instance(PAIR2).unwrap();
    for algo in [
        "stable",
        "ef-feasible",
        "efm-extend",
        "efm-augment",
        "efm-fpt-lq",
        "rsm-approx",
        "brute-rsm",
    ] {
        let out = hrlq(&[
            "solve",
            path.to_str().unwrap(),
            "--algo",
            algo,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "{algo}: {}", stderr(&out));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let pairs: String = v["matching"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| format!("{} {}\n", p[0].as_str().unwrap(), p[1].as_str().unwrap()))
            .collect();
        let m = parse_matching(&pairs, &named).unwrap();
        let inst = &named.instance;
        assert_eq!(v["algorithm"], algo);
        assert_eq!(v["size"], m.size());
        assert_eq!(v["feasible"], is_feasible(inst, &m));
        assert_eq!(v["stable"], is_stable(inst, &m).unwrap());
        assert_eq!(v["envy_free"], is_envy_free(inst, &m).unwrap());
        assert_eq!(v["relaxed_stable"], is_relaxed_stable(inst, &m).unwrap());
        assert_eq!(v["stats"]["residents"], 2);
    }
}

#[test]
fn precondition_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let out = hrlq(&["solve", path.to_str().unwrap(), "--algo", "efm-cl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("efm-cl requires CL-restriction"));
    let wide = write(
        dir.path(),
        "wide.hrlq",
        "hrlq 2 1\nhospital h1 0 2 : r1 r2\nresident r1 : h1\nresident r2 : h1\n",
    );
    let out = hrlq(&["solve", wide.to_str().unwrap(), "--algo", "efm-fpt-sd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_exits_3() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "both.hrlq", BOTH_LOWER);
    for algo in ["ef-feasible", "efm-fpt-lq", "brute-efm"] {
        let out = hrlq(&["solve", path.to_str().unwrap(), "--algo", algo]);
        assert_eq!(out.status.code(), Some(3), "{algo}");
    }
    let none = write(
        dir.path(),
        "none.hrlq",
        "hrlq 1 1\nhospital h1 1 1 : r1\nresident r1 :\n",
    );
    let out = hrlq(&["solve", none.to_str().unwrap(), "--algo", "stable"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "asymmetric lists are a parse error"
    );
}

#[test]
fn budget_exits_4() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let out = hrlq(&[
        "solve",
        path.to_str().unwrap(),
        "--algo",
        "efm-fpt-lq",
        "--budget",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn parse_errors_name_the_position() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.hrlq",
        "hrlq 1 2\nhospital h1 0 1 : r1\nhospital h2 [2,1] : r1\nresident r1 : h1 h2\n",
    );
    let out = hrlq(&["solve", bad.to_str().unwrap(), "--algo", "stable"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr(&out);
    assert!(msg.contains("line 3"), "{msg}");
    assert!(msg.contains("lower quota 2 exceeds upper quota 1"), "{msg}");
    let unknown = write(
        dir.path(),
        "unknown.hrlq",
        "hrlq 1 1\nhospital h1 0 1 : r9\nresident r1 : h1\n",
    );
    let out = hrlq(&["solve", unknown.to_str().unwrap(), "--algo", "stable"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown resident \"r9\""));
    let out = hrlq(&["solve", "/nonexistent/x.hrlq", "--algo", "stable"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn starting_matching_for_rsm() {
    let dir = TempDir::new().unwrap();
    let tight = write(
        dir.path(),
        "tight.hrlq",
        "hrlq 3 3\nhospital h1 0 1 : r2 r1\nhospital h2 1 1 : r2 r3\nhospital h3 0 1 : r3\n\
         resident r1 : h1\nresident r2 : h1 h2\nresident r3 : h3 h2\n",
    );
    let seed = write(dir.path(), "seed.txt", "r3 h2\n");
    let out = hrlq(&[
        "solve",
        tight.to_str().unwrap(),
        "--algo",
        "rsm-approx",
        "--matching",
        seed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "size"), "2");
    assert!(text.contains("pair: r2 h1") && text.contains("pair: r3 h2"));
    let out = hrlq(&["solve", tight.to_str().unwrap(), "--algo", "brute-rsm"]);
    assert_eq!(field(&stdout(&out), "size"), "3");
}

#[test]
fn check_lists_witnesses() {
    let dir = TempDir::new().unwrap();
    let both = write(dir.path(), "both.hrlq", BOTH_LOWER);
    let m = write(dir.path(), "m.txt", "r1 h2\nr2 h1\n");
    let out = hrlq(&["check", both.to_str().unwrap(), m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("envy: r1 r2 h1"), "{text}");
    assert_eq!(field(&text, "feasible"), "true");
    assert_eq!(field(&text, "relaxed_stable"), "true");
}

#[test]
fn generate_gadget_and_random() {
    let dir = TempDir::new().unwrap();
    let tri = write(dir.path(), "tri.txt", "3\n0 1\n1 2\n0 2\n");
    let out = hrlq(&[
        "generate",
        "--family",
        "mvc-efm",
        "--graph",
        tri.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("hrlq 9 12\n"));
    parse_instance(&text).unwrap();
    let out = hrlq(&[
        "generate",
        "--family",
        "indset",
        "--graph",
        tri.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "indset needs --k");
    let a = hrlq(&["generate", "--family", "random-cl", "--seed", "7"]);
    let b = hrlq(&["generate", "--family", "random-cl", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let inst = parse_instance(&stdout(&a)).unwrap().instance;
    assert!(inst.is_cl_restricted());
    let target = dir.path().join("out.hrlq");
    let out = hrlq(&[
        "generate",
        "--family",
        "random-012r",
        "--seed",
        "3",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let inst = parse_instance(&std::fs::read_to_string(target).unwrap())
        .unwrap()
        .instance;
    assert!(inst.is_01_2r());
}

#[test]
fn kernelize_short_circuits() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "pair2.hrlq", PAIR2);
    let out = hrlq(&["kernelize", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&stdout(&out), "verdict"), "no");
    let out = hrlq(&[
        "kernelize",
        path.to_str().unwrap(),
        "--k",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "kernel");
    parse_instance(v["details"]["instance"].as_str().unwrap()).unwrap();
}

#[test]
fn bench_rows_and_determinism() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let out = hrlq(&[
            "generate",
            "--family",
            "random",
            "--seed",
            &seed.to_string(),
            "--max-upper",
            "1",
        ]);
        write(dir.path(), &format!("i{seed:02}.hrlq"), &stdout(&out));
    }
    write(dir.path(), "notes.txt", "ignored\n");
    let run = |timing: bool| {
        let mut args = vec!["bench", dir.path().to_str().unwrap()];
        for a in ["stable", "efm-fpt-sd", "rsm-approx"] {
            args.extend(["--algo", a]);
        }
        if !timing {
            args.push("--no-timing");
        }
        let out = hrlq(&args);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        stdout(&out)
    };
    let first = run(false);
    assert_eq!(first.lines().count(), 31);
    assert_eq!(first, run(false));
    let strip = |csv: String| -> Vec<String> {
        csv.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    assert_eq!(strip(run(true)), strip(first.clone()));
    for line in first.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert!(cols[2] == "ok" || cols[2] == "infeasible", "{line}");
        if cols[2] == "ok" {
            assert_eq!(cols[27], "true", "{line}");
        }
    }
}
