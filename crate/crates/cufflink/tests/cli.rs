//! Drives the compiled binary end to end through scratch files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use cufflink::bundle;
use cufflink::diagram::{LinkDiagram, SpineDiagram};
use cufflink::pipeline::Mode;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cufflink"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cufflink-cli-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("write scratch file");
    path
}

fn arg(path: &Path) -> &str {
    path.to_str().expect("utf8 path")
}

#[test]
fn validate_accepts_a_good_spine() {
    let good = scratch("good.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, out, err) = run(&["validate", arg(&good)]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{}: ok\n", good.display()));
    assert!(err.is_empty());
}

#[test]
fn validate_reports_files_in_argument_order() {
    let good = scratch("order-a.spine", &SpineDiagram::trefoil_spine().to_string());
    let bad = scratch("order-b.spine", "spine g=1\nloop 1: 1 2\narc 1: 3\nwedge: 3\n");
    let tail = scratch("order-c.spine", &SpineDiagram::standard(2).to_string());
    let (code, out, _) = run(&["validate", arg(&good), arg(&bad), arg(&tail), "--jobs", "4"]);
    assert_eq!(code, 1);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() >= 3);
    assert_eq!(lines[0], format!("{}: ok", good.display()));
    assert_eq!(lines[lines.len() - 1], format!("{}: ok", tail.display()));
    let bad_prefix = format!("{}: ", bad.display());
    assert!(lines[1..lines.len() - 1].iter().all(|l| l.starts_with(&bad_prefix)));
}

#[test]
fn validate_missing_file_is_a_usage_error() {
    let absent = std::env::temp_dir().join("cufflink-cli-definitely-absent");
    let (code, out, err) = run(&["validate", arg(&absent)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("cufflink-cli-definitely-absent"));
}

#[test]
fn surface_prints_the_summary_table() {
    let sp = scratch("surface.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, out, _) = run(&["surface", arg(&sp)]);
    assert_eq!(code, 0);
    assert_eq!(out, "surface 1: disks=2 bands=3 chi=-1 genus=1 boundary=1\n");
}

#[test]
fn surface_flags_shared_pieces() {
    let sp = scratch("shared.spine", &SpineDiagram::hopf_spine().to_string());
    let (code, out, _) = run(&["surface", arg(&sp)]);
    assert_eq!(code, 0);
    assert!(out.contains("surface 1:"));
    assert!(out.contains("surface 2:"));
    assert!(out.contains("shared piece 1: loops 1 2"));
}

#[test]
fn surface_refuses_a_link_file() {
    let link = scratch("hopf.link", &LinkDiagram::hopf().to_string());
    let (code, _, err) = run(&["surface", arg(&link)]);
    assert_eq!(code, 2);
    assert!(err.contains("expected a spine file"));
}

#[test]
fn linking_reads_both_file_kinds() {
    let link = scratch("linking.link", &LinkDiagram::hopf().to_string());
    let (code, out, _) = run(&["linking", arg(&link)]);
    assert_eq!(code, 0);
    assert_eq!(out, "linking 1 2 = 1\n");

    let sp = scratch("linking.spine", &SpineDiagram::hopf_spine().to_string());
    let (code, out, _) = run(&["linking", arg(&sp)]);
    assert_eq!(code, 0);
    assert_eq!(out, "linking 1 2 = 1\n");
}

#[test]
fn unknot_emits_a_passing_bundle() {
    let sp = scratch("unknot.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, out, _) = run(&["unknot", arg(&sp), "--mode", "part2"]);
    assert_eq!(code, 0);
    let (b, recorded) = bundle::parse(&out).expect("output re-parses");
    assert!(recorded);
    assert!(b.passes());
    assert_eq!(b.mode, Mode::Part2);
    assert!(!b.link.components.is_empty());
}

#[test]
fn unknot_defaults_to_the_whole_system_reading() {
    let sp = scratch("mode.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, out, _) = run(&["unknot", arg(&sp)]);
    assert_eq!(code, 0);
    let (b, _) = bundle::parse(&out).expect("output re-parses");
    assert_eq!(b.mode, Mode::Part1);
}

#[test]
fn unknot_part2_refuses_a_shared_system() {
    let sp = scratch("refuse.spine", &SpineDiagram::hopf_spine().to_string());
    let (code, out, err) = run(&["unknot", arg(&sp), "--mode", "part2"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("shared"));

    let (code, out, _) = run(&["unknot", arg(&sp), "--mode", "part1"]);
    assert_eq!(code, 0);
    assert!(bundle::parse(&out).expect("part1 emits").0.passes());
}

#[test]
fn unknot_leaves_a_standard_spine_alone() {
    let sp = scratch("standard.spine", &SpineDiagram::standard(2).to_string());
    let (code, out, _) = run(&["unknot", arg(&sp), "--mode", "part2"]);
    assert_eq!(code, 0);
    assert!(!out.contains("move "));
    assert!(bundle::parse(&out).expect("output re-parses").0.passes());
}

#[test]
fn unknot_honours_choice_flags() {
    let sp = scratch("choices.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, out, _) = run(&["unknot", arg(&sp), "--order", "1", "--basepoint", "2"]);
    assert_eq!(code, 0);
    let (b, _) = bundle::parse(&out).expect("output re-parses");
    assert_eq!(b.transcript.basepoints, vec![1]);

    let (code, _, err) = run(&["unknot", arg(&sp), "--order", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("--order"));

    let (code, _, err) = run(&["unknot", arg(&sp), "--order", "2"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn unknot_output_is_byte_deterministic() {
    let sp = scratch("determinism.spine", &SpineDiagram::trefoil_spine().to_string());
    let (code, first, _) = run(&["unknot", arg(&sp), "--mode", "part2"]);
    assert_eq!(code, 0);
    let (_, second, _) = run(&["unknot", arg(&sp), "--mode", "part2"]);
    assert_eq!(first, second);

    let out_path = std::env::temp_dir().join(format!("cufflink-cli-{}-det.bundle", std::process::id()));
    let (code, stdout, _) = run(&["unknot", arg(&sp), "--mode", "part2", "--out", arg(&out_path)]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(fs::read_to_string(&out_path).expect("bundle written"), first);
}

#[test]
fn certify_accepts_and_rejects() {
    let sp = scratch("certify.spine", &SpineDiagram::trefoil_spine().to_string());
    let out_path = std::env::temp_dir().join(format!("cufflink-cli-{}-cert.bundle", std::process::id()));
    let (code, _, _) = run(&["unknot", arg(&sp), "--mode", "part2", "--out", arg(&out_path)]);
    assert_eq!(code, 0);

    let (code, out, _) = run(&["certify", arg(&out_path)]);
    assert_eq!(code, 0);
    assert_eq!(out, "ok\n");

    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("class=(0)"));
    let forged = scratch("forged.bundle", &text.replacen("class=(0)", "class=(1)", 1));
    let (code, out, _) = run(&["certify", arg(&forged)]);
    assert_eq!(code, 1);
    assert!(out.lines().all(|l| l.starts_with("problem: ")));
    assert!(!out.is_empty());

    let misrecorded = scratch("misrecorded.bundle", &text.replace("bundle: pass", "bundle: fail"));
    let (code, out, _) = run(&["certify", arg(&misrecorded)]);
    assert_eq!(code, 1);
    assert!(out.contains("problem: "));

    let truncated = scratch("truncated.bundle", text.split_once("\nATTESTATION\n").unwrap().0);
    let (code, _, err) = run(&["certify", arg(&truncated)]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn dualize_reports_the_identity_pattern() {
    let sp = scratch("dualize.spine", &SpineDiagram::standard(2).to_string());
    let (code, out, _) = run(&["dualize", arg(&sp)]);
    assert_eq!(code, 0);
    assert!(out.contains("delta: [[1,0],[0,1]] pass"));
    let (b, _) = bundle::parse(&out).expect("output re-parses");
    assert!(b.delta.expect("dual curves recorded").pass);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&[]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["unknot"]);
    assert_eq!(code, 2);
}
