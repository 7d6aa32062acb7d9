#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use num_rational::Ratio;

pub type Q = Ratio<i128>;

/// Membership of `v` in the integer span of linearly independent `gens`,
/// decided by exact rational elimination. `None` when the generators are
/// dependent (the rational solution is then not unique).
pub fn rational_member(gens: &[Vec<i64>], v: &[i64]) -> Option<bool> {
    let rows = v.len();
    let cols = gens.len();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Q> = gens.iter().map(|g| Q::from_integer(g[i] as i128)).collect();
            row.push(Q::from_integer(v[i] as i128));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| a[i][c] != Q::from_integer(0))?;
        a.swap(r, p);
        let lead = a[r][c];
        for x in a[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && a[i][c] != Q::from_integer(0) {
                let f = a[i][c];
                for j in 0..=cols {
                    let d = f * a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    if (r..rows).any(|i| a[i][cols] != Q::from_integer(0)) {
        return Some(false);
    }
    Some((0..cols).all(|i| a[i][cols].is_integer()))
}

/// Search for integer coefficients in `[-bound, bound]`.
pub fn brute_member(gens: &[Vec<i64>], v: &[i64], bound: i64) -> bool {
    fn go(gens: &[Vec<i64>], acc: &mut Vec<i64>, v: &[i64], bound: i64) -> bool {
        match gens.split_first() {
            None => acc.as_slice() == v,
            Some((g, rest)) => (-bound..=bound).any(|c| {
                for (a, x) in acc.iter_mut().zip(g) {
                    *a += c * x;
                }
                let hit = go(rest, acc, v, bound);
                for (a, x) in acc.iter_mut().zip(g) {
                    *a -= c * x;
                }
                hit
            }),
        }
    }
    go(gens, &mut vec![0; v.len()], v, bound)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Script name and expected exit code.
pub const SCRIPTS: &[(&str, i32)] = &[
    ("z30_classify", 0),
    ("z30_rad1", 0),
    ("zn0_error", 1),
    ("integers_classify", 0),
    ("lattice_witness", 0),
    ("multiplication", 0),
    ("suite_z30", 0),
    ("counterexamples", 0),
];

pub const FORMATS: &[(&str, &str)] = &[("text", "txt"), ("records", "jsonl"), ("dot", "dot")];

pub fn run_cli(script: &Path, format: &str) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_absorb"))
        .arg("--input")
        .arg(script)
        .arg("--format")
        .arg(format)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

/// Runs every script in every format twice. Returns one message per
/// mismatch; with `UPDATE_GOLDEN` set, rewrites the files instead.
pub fn check_goldens() -> Vec<String> {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for &(name, code) in SCRIPTS {
        let script = dir.join(format!("{name}.script"));
        for &(format, ext) in FORMATS {
            let (first, c1) = run_cli(&script, format);
            let (second, c2) = run_cli(&script, format);
            if first != second || c1 != c2 {
                problems.push(format!("{name}/{format}: runs differ"));
            }
            if c1 != code {
                problems.push(format!("{name}/{format}: exit {c1}, expected {code}"));
            }
            let path = dir.join(format!("{name}.{ext}"));
            if update {
                std::fs::write(&path, &first).expect("write golden");
                continue;
            }
            match std::fs::read_to_string(&path) {
                Ok(expected) if expected == first => {}
                Ok(_) => problems.push(format!("{name}/{format}: differs from {}", path.display())),
                Err(e) => problems.push(format!("{name}/{format}: {e}")),
            }
        }
    }
    problems
}
