//! Reading polytopes and fans from disk.
//!
//! Native format (UTF-8, `#` starts a comment, whitespace separated):
//!
//! ```text
//! kind fan-polytope|dual-polytope|fan
//! dim <d>
//! rays|vertices <m>
//! <m lines of d integers>
//! maxcones <k>                 # fan kind only
//! <k lines of d zero-based ray indices>
//! ```
//!
//! The polymake reader is best effort: it extracts only the `VERTICES`
//! property, from a plain-text property file, an XML data file, or a JSON
//! data file. Rows are homogeneous (`1 v_1 .. v_d`) and the leading 1 is
//! stripped.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::LatticeVector;
use crate::polytope::{fan_from_dual, fan_from_fan_polytope, LatticePolytope};
use crate::scalar::{parse_integer, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputKind {
    /// The reflexive polytope `Q` whose normal fan is the fan (database convention).
    DualPolytope,
    /// `P = conv(G(Σ))`, whose face fan is the fan.
    FanPolytope,
    Fan,
}

impl InputKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InputKind::DualPolytope => "dual-polytope",
            InputKind::FanPolytope => "fan-polytope",
            InputKind::Fan => "fan",
        }
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InputKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dual-polytope" => Ok(InputKind::DualPolytope),
            "fan-polytope" => Ok(InputKind::FanPolytope),
            "fan" => Ok(InputKind::Fan),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Native,
    Polymake,
}

impl FromStr for InputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "native" => Ok(InputFormat::Native),
            "polymake" => Ok(InputFormat::Polymake),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload<T = BigInt> {
    Polytope(LatticePolytope<T>),
    Fan(Fan<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputRecord<T = BigInt> {
    pub id: String,
    pub kind: InputKind,
    pub payload: Payload<T>,
}

impl<T: Scalar> InputRecord<T> {
    pub fn dim(&self) -> usize {
        match &self.payload {
            Payload::Polytope(p) => p.dim(),
            Payload::Fan(f) => f.dim(),
        }
    }

    /// The fan this record describes.
    pub fn to_fan(&self) -> Result<Fan<T>> {
        match (&self.payload, self.kind) {
            (Payload::Fan(f), _) => Ok(f.clone()),
            (Payload::Polytope(p), InputKind::DualPolytope) => fan_from_dual(p),
            (Payload::Polytope(p), _) => fan_from_fan_polytope(p),
        }
    }
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn record_id(path: &Path) -> String {
    path.file_name().map_or_else(|| path_str(path), |n| n.to_string_lossy().into_owned())
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_int_token<T: Scalar>(path: &str, line: usize, token: &str) -> Result<T> {
    parse_integer(token).ok_or_else(|| Error::NonIntegerToken {
        path: path.to_string(),
        line,
        token: token.to_string(),
    })
}

fn parse_count(path: &str, line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Syntax {
        path: path.to_string(),
        line,
        msg: format!("expected a non-negative count, found {token:?}"),
    })
}

pub fn parse_native<T: Scalar>(text: &str, id: &str) -> Result<InputRecord<T>> {
    let syntax = |line: usize, msg: String| Error::Syntax { path: id.to_string(), line, msg };
    let mut lines = content_lines(text);
    let header = |lines: &mut dyn Iterator<Item = (usize, Vec<&str>)>, keys: &[&str]| -> Result<(usize, String)> {
        let (ln, toks) = lines
            .next()
            .ok_or_else(|| syntax(0, format!("unexpected end of file, expected {}", keys.join("|"))))?;
        if toks.len() != 2 || !keys.contains(&toks[0]) {
            return Err(syntax(ln, format!("expected `{} <value>`", keys.join("|"))));
        }
        Ok((ln, toks[1].to_string()))
    };

    let (ln, kind) = header(&mut lines, &["kind"])?;
    let kind: InputKind = kind.parse().map_err(|e: String| syntax(ln, e))?;
    let (ln, dim) = header(&mut lines, &["dim"])?;
    let dim = parse_count(id, ln, &dim)?;
    let (ln, m) = header(&mut lines, &["rays", "vertices"])?;
    let m = parse_count(id, ln, &m)?;

    let mut points = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, toks) = lines.next().ok_or_else(|| syntax(0, "unexpected end of file in point list".into()))?;
        if toks.len() != dim {
            return Err(Error::RowLength { path: id.to_string(), line: ln, expected: dim, found: toks.len() });
        }
        let coords = toks.iter().map(|t| parse_int_token(id, ln, t)).collect::<Result<Vec<T>>>()?;
        points.push(LatticeVector::new(coords));
    }

    let payload = if kind == InputKind::Fan {
        let (ln, k) = header(&mut lines, &["maxcones"])?;
        let k = parse_count(id, ln, &k)?;
        let mut cones = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, toks) = lines.next().ok_or_else(|| syntax(0, "unexpected end of file in cone list".into()))?;
            if toks.len() != dim {
                return Err(Error::RowLength { path: id.to_string(), line: ln, expected: dim, found: toks.len() });
            }
            let cone = toks.iter().map(|t| parse_count(id, ln, t)).collect::<Result<Vec<usize>>>()?;
            cones.push(cone);
        }
        Payload::Fan(Fan::new(dim, points, cones)?)
    } else {
        Payload::Polytope(LatticePolytope::new(dim, points)?)
    };
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content".into()));
    }
    Ok(InputRecord { id: id.to_string(), kind, payload })
}

pub fn read_native<T: Scalar>(path: &Path) -> Result<InputRecord<T>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rec = parse_native(&text, &path_str(path))?;
    rec.id = record_id(path);
    Ok(rec)
}

pub fn write_native<T: Scalar>(rec: &InputRecord<T>) -> String {
    let mut out = format!("kind {}\ndim {}\n", rec.kind, rec.dim());
    let row = |xs: Vec<String>| xs.join(" ") + "\n";
    match &rec.payload {
        Payload::Polytope(p) => {
            out += &format!("vertices {}\n", p.vertices().len());
            for v in p.vertices() {
                out += &row(v.coords().iter().map(ToString::to_string).collect());
            }
        }
        Payload::Fan(f) => {
            out += &format!("rays {}\n", f.rays().len());
            for v in f.rays() {
                out += &row(v.coords().iter().map(ToString::to_string).collect());
            }
            out += &format!("maxcones {}\n", f.max_cones().len());
            for c in f.max_cones() {
                out += &row(c.iter().map(ToString::to_string).collect());
            }
        }
    }
    out
}

pub fn fan_record<T: Scalar>(id: &str, fan: Fan<T>) -> InputRecord<T> {
    InputRecord { id: id.to_string(), kind: InputKind::Fan, payload: Payload::Fan(fan) }
}

/// Homogeneous rows (as token lists with line numbers) to affine points.
fn dehomogenize<T: Scalar>(path: &str, rows: Vec<(usize, Vec<String>)>) -> Result<(usize, Vec<LatticeVector<T>>)> {
    let Some(width) = rows.first().map(|(_, r)| r.len()) else {
        return Err(Error::VerticesMissing { path: path.to_string() });
    };
    if width < 2 {
        return Err(Error::Syntax { path: path.to_string(), line: rows[0].0, msg: "VERTICES rows are too short".into() });
    }
    let mut points = Vec::with_capacity(rows.len());
    for (ln, toks) in rows {
        if toks.len() != width {
            return Err(Error::RowLength { path: path.to_string(), line: ln, expected: width, found: toks.len() });
        }
        let vals = toks.iter().map(|t| parse_int_token::<T>(path, ln, t)).collect::<Result<Vec<T>>>()?;
        if !vals[0].is_one() {
            return Err(Error::NotAffineVertex { path: path.to_string(), line: ln, found: vals[0].to_string() });
        }
        points.push(LatticeVector::new(vals[1..].to_vec()));
    }
    Ok((width - 1, points))
}

fn plain_vertices(text: &str) -> Option<Vec<(usize, Vec<String>)>> {
    let mut lines = text.lines().enumerate();
    lines.find(|(_, l)| l.trim() == "VERTICES")?;
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if rows.is_empty() {
                continue;
            }
            break;
        }
        if line.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') {
            break;
        }
        rows.push((i + 1, line.split_whitespace().map(str::to_string).collect()));
    }
    Some(rows)
}

fn xml_vertices(text: &str) -> Option<Vec<(usize, Vec<String>)>> {
    let start = text.find("name=\"VERTICES\"")?;
    let open = text[..start].rfind('<')?;
    let body_start = open + text[open..].find('>')? + 1;
    let body_end = body_start + text[body_start..].find("</property>")?;
    let body = &text[body_start..body_end];
    let base_line = text[..body_start].matches('\n').count() + 1;
    let mut rows = Vec::new();
    let mut rest = body;
    let mut offset = 0;
    while let Some(p) = rest.find("<v") {
        let after = &rest[p + 2..];
        let gt = after.find('>')?;
        let attrs = &after[..gt];
        if attrs.trim_end().ends_with('/') {
            // empty element
            rest = &after[gt + 1..];
            offset += p + 2 + gt + 1;
            continue;
        }
        let content_start = gt + 1;
        let close = after[content_start..].find("</v>")?;
        let content = &after[content_start..content_start + close];
        let line = base_line + body[..offset + p].matches('\n').count();
        let toks: Vec<String> = if attrs.trim().is_empty() {
            content.split_whitespace().map(str::to_string).collect()
        } else {
            // sparse or otherwise annotated rows are not supported
            vec![format!("<v{attrs}>")]
        };
        rows.push((line, toks));
        let consumed = p + 2 + content_start + close + 4;
        rest = &rest[consumed..];
        offset += consumed;
    }
    Some(rows)
}

fn json_vertices(text: &str) -> Option<Vec<(usize, Vec<String>)>> {
    fn find(v: &serde_json::Value) -> Option<&serde_json::Value> {
        match v {
            serde_json::Value::Object(m) => m.get("VERTICES").or_else(|| m.values().find_map(find)),
            serde_json::Value::Array(a) => a.iter().find_map(find),
            _ => None,
        }
    }
    let root: serde_json::Value = serde_json::from_str(text).ok()?;
    let rows = find(&root)?.as_array()?;
    Some(
        rows.iter()
            .map(|row| {
                let toks = match row.as_array() {
                    Some(entries) => entries
                        .iter()
                        .map(|e| match e {
                            serde_json::Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect(),
                    None => vec![row.to_string()],
                };
                (0, toks)
            })
            .collect(),
    )
}

pub fn parse_polymake_vertices<T: Scalar>(text: &str, id: &str, kind: InputKind) -> Result<InputRecord<T>> {
    let trimmed = text.trim_start();
    let rows = if trimmed.starts_with('{') {
        json_vertices(text)
    } else if trimmed.starts_with('<') {
        xml_vertices(text)
    } else {
        plain_vertices(text)
    }
    .ok_or_else(|| Error::VerticesMissing { path: id.to_string() })?;
    let (dim, points) = dehomogenize(id, rows)?;
    if kind == InputKind::Fan {
        return Err(Error::KindMismatch { path: id.to_string(), expected: "fan".into(), found: "polytope".into() });
    }
    Ok(InputRecord { id: id.to_string(), kind, payload: Payload::Polytope(LatticePolytope::new(dim, points)?) })
}

/// The database stores the reflexive polytope `Q`, so the default kind is
/// [`InputKind::DualPolytope`].
pub fn read_polymake_vertices<T: Scalar>(path: &Path) -> Result<InputRecord<T>> {
    read_polymake_vertices_as(path, InputKind::DualPolytope)
}

pub fn read_polymake_vertices_as<T: Scalar>(path: &Path, kind: InputKind) -> Result<InputRecord<T>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rec = parse_polymake_vertices(&text, &path_str(path), kind)?;
    rec.id = record_id(path);
    Ok(rec)
}

/// Reads one file. For native files an explicit `kind` must agree with the
/// kind declared in the file.
pub fn read_file<T: Scalar>(path: &Path, kind: Option<InputKind>, format: InputFormat) -> Result<InputRecord<T>> {
    match format {
        InputFormat::Native => {
            let rec = read_native(path)?;
            match kind {
                Some(k) if k != rec.kind => Err(Error::KindMismatch {
                    path: path_str(path),
                    expected: k.to_string(),
                    found: rec.kind.to_string(),
                }),
                _ => Ok(rec),
            }
        }
        InputFormat::Polymake => read_polymake_vertices_as(path, kind.unwrap_or(InputKind::DualPolytope)),
    }
}

#[derive(Debug)]
pub struct BatchEntry<T = BigInt> {
    pub id: String,
    pub path: PathBuf,
    pub record: Result<InputRecord<T>>,
}

/// Regular files in `dir`, sorted by file name (hidden files skipped).
pub fn list_inputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(paths)
}

/// Reads every file of `dir` in file-name order. With `strict` the first
/// failure aborts; otherwise failures are kept as error entries.
pub fn batch_reader<T: Scalar>(
    dir: &Path,
    kind: Option<InputKind>,
    format: InputFormat,
    strict: bool,
) -> Result<Vec<BatchEntry<T>>> {
    let paths = list_inputs(dir)?;
    if paths.is_empty() {
        log::warn!("{}: no input files", dir.display());
    }
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let record = read_file(&path, kind, format);
        if strict {
            if let Err(e) = record {
                return Err(e);
            }
        }
        out.push(BatchEntry { id: record_id(&path), path, record });
    }
    Ok(out)
}
