use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpvoronoi"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn faces_of_two_general_sites() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["faces", "--site", "-2,-1", "--site", "2,1", "p=0"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "site,faces\n0,3\n1,3\n");
}

#[test]
fn render_one_site_is_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["render", "--site", "0.5,0.5", "p=2", "--grid", "3x2", "-o", "one.ppm"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(dir.path().join("one.ppm")).unwrap();
    let mut want = b"P6\n3 2\n255\n".to_vec();
    for _ in 0..6 {
        want.extend_from_slice(&[255, 0, 0]);
    }
    assert_eq!(bytes, want);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec![
            "render", "--site", "-2,-1", "--site", "2,1", "--site", "0.5,2", "p=-0.05", "--grid", "96x64", "-o", out,
        ]
    };
    assert!(run(&args("a.ppm"), dir.path()).status.success());
    assert!(run(&args("b.ppm"), dir.path()).status.success());
    let read = |n: &str| std::fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.ppm"), read("b.ppm"));

    let sweep = ["converge", "--u", "2", "--plist", "0.1,0.02", "--xgrid", "0.25,0.5"];
    let (a, b) = (run(&sweep, dir.path()), run(&sweep, dir.path()));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p,x,cell,y_p,target,deviation,flag\n"));
    assert_eq!(stdout(&a).lines().count(), 1 + 8 * 2 * 4);
}

#[test]
fn degenerate_l0_bisector_is_described() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["bisector", "p=0", "--site", "1,2", "--site", "4,2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degenerate"), "{text}");
    assert!(text.contains("x = 2.5, y = 2"), "{text}");
}

#[test]
fn special_line_roots() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["bisector", "p=0.5", "--u", "2", "--line", "y=-1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let xs: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs.len(), 2);
    assert!((xs[0] - 3f64.sqrt()).abs() < 1e-12 && (xs[1] - 2.5).abs() < 1e-12);
}

#[test]
fn circle_writes_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["circle", "p=0.5", "--radius", "1", "--grid", "33x33", "-o", "c.pgm"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(dir.path().join("c.pgm")).unwrap();
    assert!(bytes.starts_with(b"P5\n33 33\n255\n"));
    assert!(bytes[13..].contains(&255));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(
        code(&["render", "--site", "1,1", "p=1", "--bogus", "-o", "x.ppm"]),
        Some(2)
    );
    assert_eq!(code(&["render", "--site", "1,x", "p=1", "-o", "x.ppm"]), Some(2));
    assert_eq!(code(&["faces", "--site", "1,1", "p=zero"]), Some(2));
    assert_eq!(
        code(&["render", "--site", "1,1", "--site", "1,1", "p=1", "-o", "x.ppm"]),
        Some(1)
    );
    assert_eq!(code(&["bisector", "p=0.5", "--site", "1,1", "--site", "1,3"]), Some(1));
    let o = run(&["faces", "--site", "1,1", "--site", "1,1", "p=1"], dir.path());
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: sites coincide"));
}
