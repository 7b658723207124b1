#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const M1: &str = include_str!("../../models/m1.json");

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stonemeasure"))
}

pub fn m1_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("models/m1.json")
}

/// A scratch file unique to this test process.
pub fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stonemeasure-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

pub fn write_config(name: &str, text: &str) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, text).unwrap();
    path
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}
