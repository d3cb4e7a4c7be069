use std::path::Path;
use std::process::{Command, Output};

fn hgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgraph"))
        .args(args)
        .env_remove("HGRAPH_TIMEOUT_S")
        .env_remove("HGRAPH_REPS")
        .output()
        .expect("run hgraph")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_is_deterministic_and_solve_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.el"), dir.path().join("b.el"));
    for out in [&a, &b] {
        let o = hgraph(&["gen", "gnm", "--n", "14", "--m", "30", "--seed", "5", "--out", p(out)]);
        assert_eq!(code(&o), 0, "{o:?}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let printed = hgraph(&["gen", "gnm", "--n", "14", "--m", "30", "--seed", "5"]);
    assert_eq!(printed.stdout, std::fs::read(&a).unwrap());

    for problem in ["vc", "ds"] {
        let oracle = hgraph(&["oracle", problem, "--input", p(&a)]);
        assert_eq!(code(&oracle), 0);
        for repr in ["hybrid", "alist"] {
            let o = hgraph(&["solve", problem, "--input", p(&a), "--repr", repr, "--json"]);
            assert_eq!(code(&o), 0, "{o:?}");
            let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
            assert_eq!(rec["answer"].as_str().unwrap(), stdout(&oracle).trim());
            assert_eq!(rec["status"], "ok");
            assert_eq!(rec["config_hash"].as_str().unwrap().len(), 16);
        }
    }
}

#[test]
fn decision_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.el");
    std::fs::write(&g, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let yes = hgraph(&["solve", "vc-parm", "--input", p(&g), "--k", "3"]);
    assert_eq!(code(&yes), 0, "{yes:?}");
    let no = hgraph(&["solve", "vc-parm", "--input", p(&g), "--k", "2", "--fold"]);
    assert_eq!(code(&no), 1, "{no:?}");
    assert!(stdout(&no).contains("no"));
    let missing_k = hgraph(&["solve", "ce", "--input", p(&g)]);
    assert_eq!(code(&missing_k), 2);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&hgraph(&["gen", "gnm", "--n", "4", "--m", "7"])), 2);
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "3 1\n0 3\n").unwrap();
    assert_eq!(code(&hgraph(&["solve", "vc", "--input", p(&bad)])), 2);
    assert_eq!(code(&hgraph(&["solve", "vc", "--input", "/no/such/file.el"])), 2);
    assert_eq!(code(&hgraph(&["solve", "tsp", "--input", p(&bad)])), 2);
}

#[test]
fn timeout_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.el");
    assert_eq!(code(&hgraph(&["gen", "gnm", "--n", "150", "--m", "2000", "--seed", "1", "--out", p(&g)])), 0);
    let o = hgraph(&["solve", "ds", "--input", p(&g), "--timeout-s", "0.01"]);
    assert_eq!(code(&o), 3, "{o:?}");
}

#[test]
fn ce_sidecar_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ce.el");
    let o = hgraph(&["gen", "ce", "--n", "30", "--clusters", "4", "--k", "6", "--seed", "2", "--out", p(&g)]);
    assert_eq!(code(&o), 0, "{o:?}");
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ce.el.meta.json")).unwrap()).unwrap();
    let k = meta["planted_k"].as_u64().expect("planted k in sidecar").to_string();

    let solved = hgraph(&["solve", "ce", "--input", p(&g), "--k", &k, "--json"]);
    assert_eq!(code(&solved), 0, "{solved:?}");
    let sol = dir.path().join("sol.json");
    std::fs::write(&sol, &solved.stdout).unwrap();
    let v = hgraph(&["verify", "ce", "--input", p(&g), "--solution", p(&sol)]);
    assert_eq!(code(&v), 0, "{v:?}");
    assert_eq!(stdout(&v).trim(), "valid");

    // an answer to a different instance does not verify
    let other = dir.path().join("other.el");
    hgraph(&["gen", "gnm", "--n", "30", "--m", "200", "--seed", "9", "--out", p(&other)]);
    let v = hgraph(&["verify", "ce", "--input", p(&other), "--solution", p(&sol)]);
    assert_eq!(code(&v), 1);
}

#[test]
fn empty_manifest_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.toml");
    std::fs::write(&m, "").unwrap();
    let o = hgraph(&["bench", "--manifest", p(&m), "--csv"]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("instance,problem,repr"));
}

#[test]
fn bench_writes_paired_rows() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.toml");
    std::fs::write(
        &m,
        "[defaults]\nreps = 1\n[[instance]]\nproblem = \"vc\"\ngen = { kind = \"gnm\", n = 30, m = 80, seed = 1 }\n",
    )
    .unwrap();
    let out = dir.path().join("r.jsonl");
    let o = hgraph(&["bench", "--manifest", p(&m), "--json", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{o:?}");
    let rows: Vec<serde_json::Value> =
        std::fs::read_to_string(&out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["nodes"], rows[1]["nodes"]);
    assert!(rows.iter().all(|r| r["speedup"].is_number() && r["seed"] == 1));

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "[[instance]]\nproblem = \"vc\"\ninput = \"nope.el\"\n").unwrap();
    assert_eq!(code(&hgraph(&["bench", "--manifest", p(&broken)])), 2);
}
