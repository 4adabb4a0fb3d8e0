#![allow(dead_code)]

use std::process::{Command, Output};

pub fn bezout(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bezout")).args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}
