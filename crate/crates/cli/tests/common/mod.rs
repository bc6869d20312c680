use std::fs;
use std::path::{Path, PathBuf};

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
    pub out_path: PathBuf,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every `*.args` file: a first line `exit=N`, then one argument per line.
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "args") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        let exit = lines
            .next()
            .and_then(|l| l.strip_prefix("exit="))
            .and_then(|n| n.parse().ok())
            .unwrap_or_else(|| panic!("{}: missing exit= line", path.display()));
        out.push(Case {
            name: path.file_stem().unwrap().to_string_lossy().into_owned(),
            args: lines.map(str::to_string).collect(),
            exit,
            out_path: path.with_extension("out"),
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
