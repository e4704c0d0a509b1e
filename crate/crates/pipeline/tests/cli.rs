use std::io::Write;
use std::process::{Command, Output, Stdio};

use flate2::write::GzEncoder;
use flate2::Compression;
use folkman_core::{canonical_graph, parse_graph6, write_graph6, Graph};
use folkman_pipeline::io::sha256_hex;

fn folkman(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_folkman"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(str::to_string).collect()
}

fn c7bar() -> String {
    write_graph6(&canonical_graph(&Graph::cycle_complement(7)))
}

#[test]
fn enumerate_k4free_seven_vertices_gives_only_c7bar() {
    let all = folkman(&["enumerate", "--n", "7"], b"");
    assert!(all.status.success());
    // graphs on 7 vertices
    assert_eq!(lines(&all).len(), 1044);

    let k4free = folkman(&["filter", "--omega-max", "3"], &all.stdout);
    let k4free_lines = lines(&k4free);
    assert_eq!(k4free_lines.len(), 685);

    let out = folkman(&["filter", "--arrows", "2,3"], &k4free.stdout);
    assert!(out.status.success());
    assert_eq!(lines(&out), vec![c7bar()]);

    let direct = folkman(&["enumerate", "--class", "2,3;4;7"], b"");
    assert_eq!(lines(&direct), vec![c7bar()]);
}

#[test]
fn filter_on_empty_input_is_empty() {
    let out = folkman(&["filter", "--arrows", "2,3"], b"");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn alpha_at_most_n_keeps_everything() {
    let all = folkman(&["enumerate", "--n", "5"], b"");
    let kept = folkman(&["filter", "--alpha-max", "5"], &all.stdout);
    assert_eq!(lines(&kept), lines(&all));
    assert_eq!(lines(&all).len(), 34);
}

#[test]
fn enumerate_triangle_free_five_vertices_arrowing_two_two() {
    let out = folkman(&["enumerate", "--n", "5", "--omega-max", "2", "--arrows", "2,2"], b"");
    let c5 = write_graph6(&canonical_graph(&Graph::cycle(5)));
    assert_eq!(lines(&out), vec![c5]);
    let none = folkman(&["enumerate", "--n", "4", "--omega-max", "2", "--arrows", "2,2"], b"");
    assert!(none.stdout.is_empty());
}

#[test]
fn enumerate_refuses_large_orders() {
    let out = folkman(&["enumerate", "--n", "11"], b"");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dedup_collapses_relabellings() {
    let g = Graph::cycle_complement(7);
    let p = g.permuted(&[3, 1, 4, 0, 6, 5, 2]);
    let input = format!("{}\n{}\n", write_graph6(&g), write_graph6(&p));
    let out = folkman(&["dedup"], input.as_bytes());
    assert_eq!(lines(&out), vec![c7bar()]);
}

#[test]
fn arrows_subcommand_reports_each_graph() {
    let input = format!("{}\n{}\n", write_graph6(&Graph::cycle(5)), write_graph6(&Graph::cycle(6)));
    let out = folkman(&["arrows", "2,2"], input.as_bytes());
    assert!(out.status.success());
    let text = lines(&out);
    assert_eq!(text.len(), 2);
    assert!(text[0].ends_with("arrows (2,2)"), "{text:?}");
    assert!(text[1].contains("fails"), "{text:?}");
}

#[test]
fn ingest_counts_lines_and_checks_hash() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("three.g6");
    let body = "DLo\nFLvn_\nCF\n";
    std::fs::write(&src, body).unwrap();
    let out_path = dir.path().join("out.g6");
    let manifest = dir.path().join("manifest");

    let out = folkman(
        &[
            "ingest",
            src.to_str().unwrap(),
            "-o",
            out_path.to_str().unwrap(),
            "--expected-hash",
            &sha256_hex(body.as_bytes()),
            "--manifest",
            manifest.to_str().unwrap(),
        ],
        b"",
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written.lines().count(), 3);
    for line in written.lines() {
        parse_graph6(line).unwrap();
    }
    assert!(std::fs::read_to_string(&manifest).unwrap().contains("count=3"));

    let bad = folkman(
        &["ingest", src.to_str().unwrap(), "-o", dir.path().join("x.g6").to_str().unwrap(), "--expected-hash", &"0".repeat(64)],
        b"",
    );
    assert_eq!(bad.status.code(), Some(3));
    assert!(!dir.path().join("x.g6").exists());
}

#[test]
fn ingest_reports_malformed_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("bad.g6");
    std::fs::write(&src, "DLo\nFLvn_\nnot a graph\n").unwrap();
    let out = folkman(&["ingest", src.to_str().unwrap(), "-o", dir.path().join("o.g6").to_str().unwrap()], b"");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3"), "{err}");
}

#[test]
fn ingest_accepts_gzip() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("two.g6.gz");
    let mut enc = GzEncoder::new(Vec::new(), Compression::default());
    enc.write_all(b"DLo\nFLvn_\n").unwrap();
    std::fs::write(&src, enc.finish().unwrap()).unwrap();
    let dst = dir.path().join("two.g6");
    let out = folkman(&["ingest", src.to_str().unwrap(), "-o", dst.to_str().unwrap()], b"");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&dst).unwrap(), "DLo\nFLvn_\n");
}
