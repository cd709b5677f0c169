#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toeplitz_core::{product, CartanFactor, Domain};

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toeplitz").chain(args.iter().copied());
    let code = toeplitz_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Golden transcripts: (file stem, arguments).
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("info_bidisk", &["info", "Ball(1) x Ball(1)"]),
    ("info_product", &["info", "I(3,2)*V"]),
    ("info_json", &["info", "--json", "I(3,2)*V"]),
    ("info_out_of_range", &["info", "IV(4)"]),
    ("info_syntax_error", &["info", "I(3,2) + V"]),
    ("iso_same", &["iso", "Ball(1) x Ball(1)", "I(1,1)*I(1,1)"]),
    (
        "iso_different",
        &["iso", "I(3,2) x I(1,1)", "I(3,1) x I(2,2)"],
    ),
    ("spectrum_text", &["spectrum", "I(3,2) x IV(5)"]),
    ("spectrum_dot", &["spectrum", "--dot", "Ball(1) x Ball(1)"]),
    (
        "spectrum_json",
        &["spectrum", "--json", "Ball(1) x Ball(1)"],
    ),
    (
        "spectrum_ideals",
        &["spectrum", "--ideals", "2", "I(1,1) x I(1,1) x I(1,1)"],
    ),
    (
        "spectrum_ideals_out_of_range",
        &["spectrum", "--ideals", "3", "Ball(1) x Ball(1)"],
    ),
    ("length_bidisk", &["length", "Ball(1) x Ball(1)"]),
    ("length_vi", &["length", "VI"]),
    (
        "automorphisms_cube",
        &["automorphisms", "I(1,1) x I(1,1) x I(1,1)"],
    ),
    ("automorphisms_mixed", &["automorphisms", "I(2,1) x I(1,1)"]),
    (
        "automorphisms_unlabeled",
        &["automorphisms", "--ignore-labels", "I(2,1) x I(1,1)"],
    ),
    (
        "automorphisms_json",
        &["automorphisms", "--json", "Ball(1) x Ball(1)"],
    ),
    (
        "reconstruct_v",
        &[
            "reconstruct",
            "--rank",
            "2",
            "--dim",
            "32",
            "--shilov",
            "24",
        ],
    ),
    (
        "reconstruct_not_found",
        &["reconstruct", "--rank", "1", "--dim", "7", "--shilov", "6"],
    ),
    (
        "reconstruct_json",
        &[
            "reconstruct",
            "--json",
            "--rank",
            "2",
            "--dim",
            "12",
            "--shilov",
            "8",
        ],
    ),
    (
        "verify_complete_invariant",
        &["verify", "complete-invariant", "--max", "50"],
    ),
    (
        "verify_spectrum",
        &[
            "verify",
            "spectrum",
            "--max-rank",
            "2",
            "--max-factors",
            "3",
        ],
    ),
    (
        "verify_bad_max",
        &["verify", "complete-invariant", "--max", "0"],
    ),
    ("unknown_subcommand", &["frobnicate"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn transcript(args: &[&str]) -> String {
    let out = run_cli(args);
    let quoted: Vec<String> = args
        .iter()
        .map(|a| {
            if a.contains(|c: char| c.is_whitespace() || "()*".contains(c)) {
                format!("'{a}'")
            } else {
                a.to_string()
            }
        })
        .collect();
    format!(
        "$ toeplitz {}\n[exit {}]\n--- stdout\n{}--- stderr\n{}",
        quoted.join(" "),
        out.code,
        out.stdout,
        out.stderr
    )
}

/// Compares a case against its golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let path = golden_dir().join(format!("{name}.txt"));
    let actual = transcript(args);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{name}: transcript differs\n--- expected\n{expected}\n--- actual\n{actual}"
        ))
    }
}

/// A random canonical factor of rank at most 3.
pub fn random_factor(rng: &mut ChaCha8Rng) -> CartanFactor {
    match rng.gen_range(0..6) {
        0 => {
            let q = rng.gen_range(1..=3);
            CartanFactor::i(rng.gen_range(q..=q + 6), q).unwrap()
        }
        1 => CartanFactor::ii(rng.gen_range(5..=7)).unwrap(),
        2 => CartanFactor::iii(rng.gen_range(2..=3)).unwrap(),
        3 => CartanFactor::iv(rng.gen_range(5..=30)).unwrap(),
        4 => CartanFactor::V,
        _ => CartanFactor::VI,
    }
}

/// A random domain with 1 to 4 factors, each of rank at most 3.
pub fn random_domain(rng: &mut ChaCha8Rng) -> Domain {
    let s = rng.gen_range(1..=4);
    product((0..s).map(|_| random_factor(rng))).unwrap()
}

/// Random expression text in the CLI grammar, using every factor form,
/// both separators and irregular whitespace.
pub fn random_expression(rng: &mut ChaCha8Rng) -> String {
    let s = rng.gen_range(1..=5);
    let mut text = String::new();
    for i in 0..s {
        if i > 0 {
            text.push_str(match rng.gen_range(0..4) {
                0 => " x ",
                1 => "*",
                2 => "x",
                _ => "  *  ",
            });
        }
        let factor = match rng.gen_range(0..7) {
            0 => format!("I({},{})", rng.gen_range(1..=20), rng.gen_range(1..=20)),
            1 => format!("II({})", rng.gen_range(5..=40)),
            2 => format!("III( {} )", rng.gen_range(2..=40)),
            3 => format!("IV({})", rng.gen_range(5..=40)),
            4 => format!("Ball({})", rng.gen_range(1..=20)),
            5 => "V".to_string(),
            _ => "VI".to_string(),
        };
        text.push_str(&factor);
    }
    text
}
