use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn lian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lian"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_time(s: &str) -> String {
    s.lines()
        .filter(|l| !l.starts_with("time_s"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
}

fn write_empty_map(dir: &Path, h: usize, w: usize) -> PathBuf {
    let p = dir.join("empty.map");
    let body = format!("{}\n", ".".repeat(w)).repeat(h);
    std::fs::write(&p, format!("height {h}\nwidth {w}\n{body}")).unwrap();
    p
}

#[test]
fn colinear_on_empty_map() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_empty_map(dir.path(), 20, 30);
    let o = lian(&[
        "solve",
        "--map",
        map.to_str().unwrap(),
        "--start",
        "10,0",
        "--goal",
        "10,20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "outcome"), "path-found");
    assert_eq!(field(&out, "max_turn_angle"), "0.000000");
    assert_eq!(field(&out, "path_length"), "20.000000");
    assert_eq!(field(&out, "params"), "alpha=30;w=2;delta=5");
}

#[test]
fn dlian_defaults_are_derived() {
    let map = fixture("bend.map");
    let o = lian(&[
        "solve",
        "--map",
        map.to_str().unwrap(),
        "--start",
        "8,1",
        "--goal",
        "8,22",
        "--algorithm",
        "dlian",
    ]);
    assert_eq!(
        field(&stdout(&o), "params"),
        "alpha=30;w=2;delta_init=10;delta_min=5;delta_max=10;n=2"
    );
    let o = lian(&[
        "solve",
        "--map",
        map.to_str().unwrap(),
        "--start",
        "8,1",
        "--goal",
        "8,22",
        "--algorithm",
        "dlian",
        "--delta-init",
        "8",
        "--n-increase",
        "3",
    ]);
    assert_eq!(
        field(&stdout(&o), "params"),
        "alpha=30;w=2;delta_init=8;delta_min=4;delta_max=8;n=3"
    );
    let o = lian(&[
        "solve",
        "--map",
        map.to_str().unwrap(),
        "--start",
        "8,1",
        "--goal",
        "8,22",
        "--algorithm",
        "wtheta-la",
    ]);
    assert_eq!(field(&stdout(&o), "params"), "alpha=30;w=1;p=0.1;r=12");
}

#[test]
fn exit_codes() {
    let detour = fixture("detour.map");
    let m = detour.to_str().unwrap();
    let base = [
        "solve",
        "--map",
        m,
        "--start",
        "2,8",
        "--goal",
        "28,19",
        "--alpha-max",
        "30",
    ];
    let run = |extra: &[&str]| lian(&[&base[..], extra].concat());
    assert_eq!(run(&["--algorithm", "lian"]).status.code(), Some(0));
    assert_eq!(run(&["--algorithm", "theta-la"]).status.code(), Some(1));
    assert_eq!(run(&["--algorithm", "wtheta-la"]).status.code(), Some(0));
    assert_eq!(
        run(&["--algorithm", "theta-la", "--delta", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--algorithm", "lian", "--weight-p", "0.2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--algorithm", "lian", "--delta-min", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--alpha-max", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["--algorithm", "dlian", "--delta-min", "20"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lian(&["solve", "--map", m, "--start", "5,5", "--goal", "28,19"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lian(&["solve", "--map", m, "--start", "2,8"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lian(&["solve", "--map", "/nonexistent.map"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lian(&["solve", "--map", m, "--start", "2,8", "--goal", "99,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_exhaustion_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_empty_map(dir.path(), 300, 300);
    let mut text = std::fs::read_to_string(&map).unwrap();
    // A long wall with no gap makes the search exhaust a large space.
    text = text
        .lines()
        .enumerate()
        .map(|(k, l)| {
            if k >= 2 {
                format!("{}#{}", &l[..150], &l[151..])
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&map, text).unwrap();
    let o = lian(&[
        "solve",
        "--map",
        map.to_str().unwrap(),
        "--start",
        "150,10",
        "--goal",
        "150,290",
        "--delta",
        "2",
        "--alpha-max",
        "170",
        "--hweight",
        "1",
        "--timeout",
        "0.001",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert_eq!(field(&stdout(&o), "outcome"), "budget-exhausted");
}

#[test]
fn solve_is_deterministic_and_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let map = fixture("detour.map");
    let svg = |n: &str| dir.path().join(n);
    let args = |out: &Path| {
        vec![
            "solve".to_string(),
            "--map".into(),
            map.to_str().unwrap().into(),
            "--seed".into(),
            "7".into(),
            "--algorithm".into(),
            "dlian".into(),
            "--alpha-max".into(),
            "60".into(),
            "--out-svg".into(),
            out.to_str().unwrap().into(),
            "--angles".into(),
        ]
    };
    let run = |out: &Path| {
        let a = args(out);
        lian(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let a = run(&svg("a.svg"));
    let b = run(&svg("b.svg"));
    assert_eq!(without_time(&stdout(&a)), without_time(&stdout(&b)));
    assert_eq!(
        std::fs::read(svg("a.svg")).unwrap(),
        std::fs::read(svg("b.svg")).unwrap()
    );
    assert!(stdout(&a).contains("time_s: "));
}

#[test]
fn bench_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let tasks = fixture("witness.tasks");
    let o = lian(&[
        "bench",
        "--tasks",
        tasks.to_str().unwrap(),
        "--algorithms",
        "lian-5,theta-la",
        "--alphas",
        "25,30",
        "--cutoff",
        "10",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let rows = std::fs::read_to_string(out.join("tasks.csv")).unwrap();
    assert_eq!(
        rows.lines().next().unwrap(),
        "map,start,goal,algorithm,params,outcome,time_s,nodes,path_length"
    );
    assert_eq!(rows.lines().count(), 1 + 2 * 2 * 2);
    for l in rows.lines().skip(1) {
        let expect = if l.contains("LIAN-5") {
            ",path-found,"
        } else {
            ",no-path,"
        };
        assert!(l.contains(expect), "{l}");
    }
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 4);
    let table = stdout(&o);
    assert_eq!(table.lines().count(), 1 + 4);
}

#[test]
fn bench_single_task_and_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    write_empty_map(dir.path(), 10, 10);
    let one = dir.path().join("one.txt");
    std::fs::write(&one, "empty.map 0 0 9 9\nempty.map 0 0 10 10\n").unwrap();
    let out = dir.path().join("one-out");
    let o = lian(&[
        "bench",
        "--tasks",
        one.to_str().unwrap(),
        "--algorithms",
        "lian-3",
        "--alphas",
        "45",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let rows = std::fs::read_to_string(out.join("tasks.csv")).unwrap();
    assert_eq!(rows.lines().count(), 3);
    assert!(rows.lines().nth(2).unwrap().contains("config-error"));
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(summary
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("LIAN-3,alpha=45;w=2;delta=3,1,1,1,"));

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "# nothing\n").unwrap();
    let out = dir.path().join("empty-out");
    let o = lian(&[
        "bench",
        "--tasks",
        empty.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = lian(&[
        "bench",
        "--tasks",
        one.to_str().unwrap(),
        "--algorithms",
        "astar",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = lian(&[
            "generate",
            "--out-dir",
            d.path().to_str().unwrap(),
            "--seed",
            "11",
            "--maps",
            "2",
            "--tasks",
            "4",
            "--height",
            "48",
            "--width",
            "40",
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["map-000.map", "map-001.map", "tasks.txt"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap()
        );
    }
    let tasks = std::fs::read_to_string(a.path().join("tasks.txt")).unwrap();
    assert_eq!(tasks.lines().count(), 8);
    let map = lian::read_map(&a.path().join("map-001.map")).unwrap();
    assert_eq!((map.height(), map.width()), (48, 40));
}

#[test]
fn render_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.svg");
    let map = fixture("bend.map");
    let o = lian(&[
        "render",
        "--map",
        map.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--path",
        "8,1;11,5;12,10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().contains("<polyline"));
    let o = lian(&[
        "render",
        "--map",
        map.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--path",
        "8,1;40,5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
