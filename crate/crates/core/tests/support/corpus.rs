//! Frozen smooth Fano corpora under `tests/fixtures/sfp/d<d>/`.
//!
//! Each file holds the vertices of the reflexive dual polytope of one
//! isomorphism class, in polymake's plain `VERTICES` layout (homogenizing 1
//! in front), which is how the smooth Fano database ships them.

use std::fs;
use std::path::PathBuf;

use super::ilin::Point;
use super::sfp;

pub fn fixture_dir(d: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sfp").join(format!("d{d}"))
}

pub fn file_name(d: usize, i: usize, total: usize) -> String {
    let width = total.to_string().len();
    format!("sfp{d}_{:0width$}.poly", i + 1)
}

pub fn render(d: usize, i: usize, total: usize, dual: &[Point]) -> String {
    let mut out = format!("# smooth Fano {d}-polytope {} of {total}, reflexive dual\nVERTICES\n", i + 1);
    for v in dual {
        out.push('1');
        for x in v {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    out
}

/// Box bound and vertex cap that reach every class for `d <= 4`.
pub fn search_params(d: usize) -> (i64, usize) {
    match d {
        2 | 3 => (2, 3 * d),
        _ => (3, 3 * d),
    }
}

/// `(file name, contents)` for every class of dimension `d`.
pub fn generate(d: usize) -> Vec<(String, String)> {
    let (b, cap) = search_params(d);
    let classes = sfp::classes(d, b, cap);
    let n = classes.len();
    classes
        .iter()
        .enumerate()
        .map(|(i, p)| (file_name(d, i, n), render(d, i, n, &sfp::dual_vertices(p))))
        .collect()
}

pub fn read_fixtures(d: usize) -> Vec<(String, String)> {
    let dir = fixture_dir(d);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read_to_string(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

/// Parses the plain `VERTICES` block back into affine points.
pub fn parse_vertices(text: &str) -> Vec<Point> {
    text.lines()
        .skip_while(|l| l.trim() != "VERTICES")
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect())
        .collect()
}
