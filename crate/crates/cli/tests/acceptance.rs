//! Two identical invocations produce byte-identical files.

use std::fs;
use std::process::Command;

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<_> = ["a", "b"]
        .iter()
        .map(|name| {
            let out_dir = dir.path().join(name);
            let out = Command::new(env!("CARGO_BIN_EXE_vortex-sheet"))
                .args([
                    "simulate",
                    "--grid-n",
                    "64",
                    "--dt",
                    "1e-3",
                    "--t-final",
                    "0.05",
                    "--snapshots",
                    "--out",
                ])
                .arg(&out_dir)
                .output()
                .unwrap();
            assert!(out.status.success());
            out_dir
        })
        .collect();
    let mut names: Vec<_> = fs::read_dir(&outputs[0])
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() > 1);
    for name in names {
        let a = fs::read(outputs[0].join(&name)).unwrap();
        let b = fs::read(outputs[1].join(&name)).unwrap();
        assert_eq!(a, b, "{name:?} differs");
    }
}
