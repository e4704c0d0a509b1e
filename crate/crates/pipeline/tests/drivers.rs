use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use folkman_core::{canonical_graph, write_graph6, Graph};
use folkman_pipeline::config::{parse_config, read_config};
use folkman_pipeline::{run_lower_bound, run_upper_bound, Constants, RunOptions};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn folkman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folkman")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn run_lower_cli(config: &Path, workdir: &Path) -> Output {
    folkman(&["lower-bound", config.to_str().unwrap(), "--workdir", workdir.to_str().unwrap()])
}

#[test]
fn small_lower_configs_establish_their_claims() {
    for name in ["h22_3_4.conf", "h23_4_6.conf", "h23_4_6_split.conf"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_lower_cli(&configs().join("lower").join(name), dir.path());
        assert_eq!(out.status.code(), Some(0), "{name}: {}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("established"));
    }
}

#[test]
fn split_config_mixes_assumed_and_computed_cases() {
    let dir = tempfile::tempdir().unwrap();
    let path = configs().join("lower/h23_4_6_split.conf");
    let stanzas = read_config(&path).unwrap();
    let report = run_lower_bound(&stanzas, path.parent().unwrap(), &Constants::builtin(), RunOptions::new(dir.path())).unwrap();
    assert!(report.established());
    let text = report.to_string();
    assert!(text.contains("assumed from literature [ramsey_4_2]"), "{text}");
    assert!(text.contains("assumed from literature [fv_3_4]"), "{text}");
    assert!(text.contains("proved here by stage ext2"), "{text}");
    assert!(text.contains("proved here by claim h5"), "{text}");
    assert!(text.contains("F_v(2,3;4) >= 7"), "{text}");
}

#[test]
fn coverage_gap_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("gap.conf");
    std::fs::write(&conf, "[claim h6]\nclass = 2,3;4;6\n\n[case]\nalpha = 1-4\nby = enumerate\n").unwrap();
    let out = run_lower_cli(&conf, &dir.path().join("work"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha = 5"));
}

#[test]
fn false_claim_is_refuted_with_survivors() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("h7.conf");
    std::fs::write(&conf, "[claim h7]\nclass = 2,3;4;7\n\n[case]\nalpha = 1-7\nby = enumerate\n").unwrap();
    let out = run_lower_cli(&conf, &dir.path().join("work"));
    assert_eq!(out.status.code(), Some(10));
    let c7bar = write_graph6(&canonical_graph(&Graph::cycle_complement(7)));
    assert!(stdout(&out).contains(&c7bar), "{}", stdout(&out));
}

#[test]
fn rerun_reuses_outputs_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let conf = configs().join("lower/h23_4_6_split.conf");
    let work = dir.path().join("work");
    assert_eq!(run_lower_cli(&conf, &work).status.code(), Some(0));
    let snapshot = |dir: &Path| {
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "g6"))
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
            .collect();
        files.sort();
        files
    };
    let first = snapshot(&work);
    assert!(!first.is_empty());
    assert_eq!(run_lower_cli(&conf, &work).status.code(), Some(0));
    assert_eq!(snapshot(&work), first);
    let manifest = std::fs::read_to_string(work.join("manifest.log")).unwrap();
    assert!(manifest.contains("event=reuse"), "{manifest}");
}

#[test]
fn tampered_output_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = configs().join("lower/h23_4_6_split.conf");
    let work = dir.path().join("work");
    assert_eq!(run_lower_cli(&conf, &work).status.code(), Some(0));
    let target = work.join("in2.g6");
    let mut bytes = std::fs::read(&target).unwrap();
    bytes.extend_from_slice(b"DLo\n");
    std::fs::write(&target, bytes).unwrap();
    let out = run_lower_cli(&conf, &work);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn torn_manifest_tail_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let conf = configs().join("lower/h22_3_4.conf");
    let work = dir.path().join("work");
    assert_eq!(run_lower_cli(&conf, &work).status.code(), Some(0));
    let manifest = work.join("manifest.log");
    let mut text = std::fs::read_to_string(&manifest).unwrap();
    text.push_str("event=done\tstage=h4.alpha1-4\tdigest=tru");
    std::fs::write(&manifest, text).unwrap();
    assert_eq!(run_lower_cli(&conf, &work).status.code(), Some(0));
}

#[test]
fn c7bar_seed_gives_c7bar_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = folkman(&[
        "upper-bound",
        configs().join("upper/c7bar.conf").to_str().unwrap(),
        "--workdir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let c7bar = write_graph6(&canonical_graph(&Graph::cycle_complement(7)));
    assert!(text.contains(&c7bar), "{text}");
    assert!(text.contains("F_v(2,3;4) <= 7"), "{text}");
}

#[test]
fn empty_seed_finds_no_witness() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.g6"), "").unwrap();
    let text = "[stage seed]\nkind = load\npath = empty.g6\n\n[stage d]\nkind = descend\ninput = seed\nclass = 2,3;4;7\n\n[witness w]\nstage = d\nclass = 2,3;4;7\n";
    let stanzas = parse_config(text, "empty.conf").unwrap();
    let report = run_upper_bound(&stanzas, dir.path(), &Constants::builtin(), RunOptions::new(dir.path().join("work"))).unwrap();
    assert_eq!(report.exit_code(), 10);
    assert!(report.to_string().contains("no bound is claimed"));
}

#[test]
fn unknown_cost_stage_needs_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("u.conf");
    std::fs::write(
        &conf,
        "[stage e]\nkind = enumerate\nn = 5\nomega_max = 2\ncost = unknown\n\n[stage x]\nkind = filter\ninput = e\narrows = 2,2\n\n[witness w]\nstage = x\nclass = 2,2;3;5\n",
    )
    .unwrap();
    let c = conf.to_str().unwrap();
    let w = dir.path().join("work");
    let refused = folkman(&["upper-bound", c, "--workdir", w.to_str().unwrap()]);
    assert_eq!(refused.status.code(), Some(2));
    let ok = folkman(&["upper-bound", c, "--workdir", w.to_str().unwrap(), "--allow-unknown-cost"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
}

#[test]
fn wrong_expected_count_stops_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("c.conf");
    std::fs::write(
        &conf,
        "[stage e]\nkind = enumerate\nn = 7\nomega_max = 3\nexpect = 684\n\n[witness w]\nstage = e\nclass = 2,3;4;7\n",
    )
    .unwrap();
    let out = folkman(&["upper-bound", conf.to_str().unwrap(), "--workdir", dir.path().join("w").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn missing_dataset_is_reported_not_faked() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_lower_cli(&configs().join("lower/h2223_4_19.conf"), dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(!stdout(&out).contains("established"));
}
