use std::process::{Command, Output};

fn dflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dflow"))
        .args(args)
        .env_remove("DFLOW_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = dflow(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn corpus_list_has_every_entry() {
    let out = run_ok(&["corpus", "list"]);
    let names: Vec<&str> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(
        names,
        [
            "fig1",
            "theta",
            "fig4",
            "petersen2t",
            "petersen1t",
            "petersen3t",
            "tietze",
            "k4planar"
        ]
    );
}

#[test]
fn fig4_counts() {
    assert_eq!(run_ok(&["count", "--ctx", "D2n:4", "@fig4"]), "count=576\n");
    assert_eq!(
        run_ok(&["count", "--ctx", "Dlt:4", "@fig4:10"]),
        "count=512\n"
    );
}

#[test]
fn bundled_flow_verifies() {
    assert_eq!(
        run_ok(&["verify", "@petersen3t"]),
        "valid=yes nowhere_identity=yes\n"
    );
}

#[test]
fn emitted_graph_matches_corpus() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig4:7", "tietze", "petersen2t"] {
        let text = run_ok(&["corpus", "emit", name]);
        let path = dir.path().join("g.txt");
        std::fs::write(&path, &text).unwrap();
        let again = run_ok(&["rotations", path.to_str().unwrap(), "--faces", "0"]);
        assert!(again.ends_with("kept=0\n"));
        let faces_file = run_ok(&["faces", path.to_str().unwrap()]);
        let faces_corpus = run_ok(&["faces", &format!("@{name}")]);
        assert_eq!(faces_file, faces_corpus);
    }
}

#[test]
fn found_flow_verifies_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let flow = run_ok(&["find", "--ctx", "Dlt:4", "@fig4"]);
    let path = dir.path().join("f.txt");
    std::fs::write(&path, flow).unwrap();
    assert_eq!(
        run_ok(&["verify", "@fig4", path.to_str().unwrap()]),
        "valid=yes nowhere_identity=yes\n"
    );
}

#[test]
fn decisions_use_exit_one() {
    let o = dflow(&["find", "--ctx", "Dlt:2", "@theta"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "found=no\n");

    let o = dflow(&["exists", "--group", "Dlt:3", "@fig1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "exists=no reason=odd-bridge-set:0,1,2\n");
}

#[test]
fn obstruction_on_fig1() {
    assert_eq!(
        run_ok(&["obstruction", "@fig1"]),
        "obstruction=yes plane_sided= odd_set=0,1,2 d6=1458 dlt3=0 dlt4=0\n"
    );
}

#[test]
fn witness_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let out = run_ok(&[
        "exists",
        "--group",
        "D2n:3",
        "@theta",
        "--witness",
        path.to_str().unwrap(),
    ]);
    assert!(out.starts_with("exists=yes"));
    let w = path.to_str().unwrap();
    assert_eq!(
        run_ok(&["verify", "@theta", w]),
        "valid=yes nowhere_identity=yes\n"
    );
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(dflow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dflow(&["faces", "@nosuch"]).status.code(), Some(2));
    assert_eq!(
        dflow(&["count", "@theta", "--ctx", "Q:3"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "graph x\nvertex 0: 0 1\nedge 0: 0 0\n").unwrap();
    assert_eq!(
        dflow(&["faces", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_guard_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_dflow"))
        .args(["count", "--ctx", "D2n:5", "@petersen2t"])
        .env("DFLOW_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failed_construction_exits_four() {
    // edge 0 of this embedding lies on no contractible simple cycle
    assert_eq!(
        dflow(&["snark", "@petersen2t", "--edge", "0"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn sweep_on_theta() {
    let out = run_ok(&[
        "sweep",
        "@theta",
        "--ctx-family",
        "Dlt",
        "--n-from",
        "2",
        "--n-to",
        "3",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "n=2 ctx=Dlt:2 count=0");
    assert!(lines[1].starts_with("n=3 ctx=Dlt:3 count="));
}

#[test]
fn color3_embed_produces_balanced_flow() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(&["color3", "@k4planar", "--embed"]);
    let graph_start = out.find("graph ").unwrap();
    let flow_start = out.find("flow ").unwrap();
    let g = dir.path().join("g.txt");
    let f = dir.path().join("f.txt");
    std::fs::write(&g, &out[graph_start..flow_start]).unwrap();
    std::fs::write(&f, &out[flow_start..]).unwrap();
    assert_eq!(
        run_ok(&["verify", g.to_str().unwrap(), f.to_str().unwrap()]),
        "valid=yes nowhere_identity=yes\n"
    );
    let c = dir.path().join("c.txt");
    let flow4 = run_ok(&[
        "special4",
        "from-flow",
        g.to_str().unwrap(),
        f.to_str().unwrap(),
    ]);
    std::fs::write(&c, flow4).unwrap();
    assert_eq!(
        run_ok(&[
            "special4",
            "check",
            g.to_str().unwrap(),
            c.to_str().unwrap()
        ]),
        "special=yes\n"
    );
}

#[test]
fn petersen_has_no_3_coloring() {
    let o = dflow(&["color3", "@petersen1t"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "colorable=no\n");
}

#[test]
fn triangle_extension_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let flow = run_ok(&["snark", "@petersen2t", "--vertex", "0"]);
    let f = dir.path().join("f.txt");
    std::fs::write(&f, flow).unwrap();
    let out = run_ok(&[
        "triangle",
        "@petersen2t",
        f.to_str().unwrap(),
        "--vertex",
        "3",
    ]);
    let flow_start = out.find("flow ").unwrap();
    let g2 = dir.path().join("g2.txt");
    let f2 = dir.path().join("f2.txt");
    std::fs::write(&g2, &out[..flow_start]).unwrap();
    std::fs::write(&f2, &out[flow_start..]).unwrap();
    assert_eq!(
        run_ok(&["verify", g2.to_str().unwrap(), f2.to_str().unwrap()]),
        "valid=yes nowhere_identity=yes\n"
    );
    assert!(run_ok(&["faces", g2.to_str().unwrap()]).starts_with("vertices=12 edges=18"));
}
