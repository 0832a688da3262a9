#![allow(dead_code)]

use std::path::PathBuf;

pub fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

/// Exit code, stdout and stderr of one invocation.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("uniformizer").chain(args.iter().copied());
    let code = uniformizer_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Write `contents` to a fresh file under the target directory.
pub fn temp_file(name: &str, contents: &str) -> String {
    let dir: PathBuf = [env!("CARGO_TARGET_TMPDIR"), "cli-tests"].iter().collect();
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}
