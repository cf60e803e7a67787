//! Text and JSON formats: `qvr v1` quivers, `tri v1` triangulations and
//! enumeration files.

use std::fmt::Write as _;

use dashu_int::IBig;
use serde_json::{json, Value};
use thiserror::Error;

use crate::canonical::{canonical_form, CanonicalKey};
use crate::explorer::{ClassEnumeration, Limits};
use crate::quiver::Quiver;
use crate::surface::{MarkedSurface, Side, Triangulation};

/// A malformed input file; `line` is 1-based, 0 when the problem is global.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments (`#`) removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_count(tok: &str, line: usize, field: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, format!("{field}: expected a nonnegative integer, found `{tok}`")))
}

/// Reads a quiver in `qvr v1` text form or its JSON mirror.
pub fn parse_quiver(text: &str) -> Result<Quiver, ParseError> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| err(e.line(), format!("invalid JSON: {e}")))?;
        return quiver_from_json(&v);
    }
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(err(hl, "header must be `n_mut n_frozen`"));
    }
    let n_mut = parse_count(toks[0], hl, "n_mut")?;
    let n_frozen = parse_count(toks[1], hl, "n_frozen")?;
    let n = n_mut + n_frozen;
    let mut rows = Vec::with_capacity(n);
    let mut last = hl;
    for r in 0..n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(last, format!("expected {n} matrix rows, found {r}")))?;
        last = ln;
        let row: Vec<IBig> = l
            .split_whitespace()
            .enumerate()
            .map(|(c, t)| {
                t.parse::<IBig>()
                    .map_err(|_| err(ln, format!("entry {}: `{t}` is not an integer", c + 1)))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(err(ln, format!("row {} has {} entries, expected {n}", r + 1, row.len())));
        }
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected content after the matrix"));
    }
    Quiver::new(n_mut, n_frozen, rows).map_err(|e| err(0, format!("invalid quiver: {e}")))
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver, ParseError> {
    let field = |name: &str| v.get(name).ok_or_else(|| err(0, format!("missing field `{name}`")));
    let count = |name: &str| -> Result<usize, ParseError> {
        field(name)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| err(0, format!("field `{name}` must be a nonnegative integer")))
    };
    let n_mut = count("n_mut")?;
    let n_frozen = count("n_frozen")?;
    let rows = field("b")?
        .as_array()
        .ok_or_else(|| err(0, "field `b` must be an array of rows"))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.as_array()
                .ok_or_else(|| err(0, format!("b[{r}] must be an array")))?
                .iter()
                .enumerate()
                .map(|(c, x)| match x {
                    Value::Number(num) => num
                        .to_string()
                        .parse::<IBig>()
                        .map_err(|_| err(0, format!("b[{r}][{c}] is not an integer"))),
                    _ => Err(err(0, format!("b[{r}][{c}] is not an integer"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Quiver::new(n_mut, n_frozen, rows).map_err(|e| err(0, format!("invalid quiver: {e}")))
}

fn big_number(x: &IBig) -> Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let rows: Vec<Value> = q
        .rows()
        .map(|r| Value::Array(r.iter().map(big_number).collect()))
        .collect();
    json!({ "n_mut": q.n_mut(), "n_frozen": q.n_frozen(), "b": rows })
}

/// `qvr v1` text.
pub fn write_quiver(q: &Quiver) -> String {
    let mut s = format!("{} {}\n", q.n_mut(), q.n_frozen());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn parse_side(tok: &str, line: usize) -> Result<Side, ParseError> {
    if let Some(id) = tok.strip_prefix('a') {
        return id
            .parse()
            .map(Side::Arc)
            .map_err(|_| err(line, format!("bad arc id `{tok}`")));
    }
    if let Some(rest) = tok.strip_prefix('b') {
        if let Some((j, i)) = rest.split_once('.') {
            if let (Ok(j), Ok(i)) = (j.parse::<u32>(), i.parse::<u32>()) {
                if j >= 1 && i >= 1 {
                    return Ok(Side::Boundary {
                        component: j - 1,
                        segment: i - 1,
                    });
                }
            }
        }
    }
    Err(err(line, format!("bad side `{tok}` (expected aK or bJ.I)")))
}

fn side_token(s: Side) -> String {
    match s {
        Side::Arc(k) => format!("a{k}"),
        Side::Boundary { component, segment } => format!("b{}.{}", component + 1, segment + 1),
    }
}

/// Reads a triangulation in `tri v1` form.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 3 {
        return Err(err(hl, "header must be `g b p c_1 .. c_b`"));
    }
    let g = parse_count(toks[0], hl, "g")? as u32;
    let b = parse_count(toks[1], hl, "b")? as u32;
    let p = parse_count(toks[2], hl, "p")? as u32;
    if toks.len() != 3 + b as usize {
        return Err(err(hl, format!("header lists {} boundary counts, expected {b}", toks.len() - 3)));
    }
    let cs = toks[3..]
        .iter()
        .enumerate()
        .map(|(j, t)| parse_count(t, hl, &format!("c_{}", j + 1)).map(|x| x as u32))
        .collect::<Result<Vec<_>, _>>()?;
    let surface = MarkedSurface::new(g, b, p, cs).map_err(|e| err(hl, format!("invalid surface: {e}")))?;
    let mut triangles = Vec::new();
    let mut declared = Vec::new();
    for (ln, l) in lines {
        let (sides, sf) = match l.find("SF(") {
            Some(pos) => (&l[..pos], Some((&l[pos..], pos))),
            None => (l, None),
        };
        let toks: Vec<&str> = sides.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(ln, format!("triangle needs 3 sides, found {}", toks.len())));
        }
        let tri = [
            parse_side(toks[0], ln)?,
            parse_side(toks[1], ln)?,
            parse_side(toks[2], ln)?,
        ];
        if let Some((sf, _)) = sf {
            let inner = sf
                .strip_prefix("SF(")
                .and_then(|s| s.trim_end().strip_suffix(')'))
                .ok_or_else(|| err(ln, "malformed SF(radius,loop) marker"))?;
            let (r, l) = inner
                .split_once(',')
                .ok_or_else(|| err(ln, "SF marker needs `radius,loop`"))?;
            let r = parse_side(r.trim(), ln)?;
            let l = parse_side(l.trim(), ln)?;
            declared.push((ln, triangles.len(), r, l));
        }
        triangles.push(tri);
    }
    let t = Triangulation::new(surface, triangles).map_err(|e| err(0, format!("invalid triangulation: {e}")))?;
    let found = t.self_folded();
    for &(ln, idx, r, l) in &declared {
        let ok = matches!((r, l), (Side::Arc(r), Side::Arc(l)) if found.iter().any(|sf| sf.triangle == idx && sf.radius == r && sf.loop_arc == l));
        if !ok {
            return Err(err(ln, "SF marker does not match the triangle"));
        }
    }
    if declared.len() != found.len() {
        let missing = found
            .iter()
            .find(|sf| !declared.iter().any(|d| d.1 == sf.triangle))
            .expect("undeclared self-folded triangle");
        return Err(err(0, format!("triangle {} is self-folded but lacks an SF marker", missing.triangle + 1)));
    }
    Ok(t)
}

/// `tri v1` text.
pub fn write_triangulation(t: &Triangulation) -> String {
    let s = t.surface();
    let mut out = format!("{} {} {}", s.genus(), s.b(), s.punctures());
    for c in s.boundary_points() {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    let sf = t.self_folded();
    for (idx, tri) in t.triangles().iter().enumerate() {
        let toks: Vec<String> = tri.iter().map(|&x| side_token(x)).collect();
        out.push_str(&toks.join(" "));
        if let Some(f) = sf.iter().find(|f| f.triangle == idx) {
            write!(out, " SF(a{},a{})", f.radius, f.loop_arc).unwrap();
        }
        out.push('\n');
    }
    out
}

/// One line of an enumeration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRow {
    pub key: CanonicalKey,
    pub arrow_count: String,
    pub extended_arrow_count: String,
}

/// Contents of an enumeration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationFile {
    pub seed: CanonicalKey,
    pub limits: Limits,
    pub truncated: bool,
    pub rows: Vec<EnumerationRow>,
}

impl EnumerationFile {
    pub fn from_enumeration(e: &ClassEnumeration) -> Self {
        EnumerationFile {
            seed: canonical_form(&e.seed),
            limits: e.limits_used.clone(),
            truncated: e.truncated,
            rows: e
                .members
                .iter()
                .map(|(k, m)| EnumerationRow {
                    key: k.clone(),
                    arrow_count: m.quiver.arrow_count(false).to_string(),
                    extended_arrow_count: m.quiver.arrow_count(true).to_string(),
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let opt = |x: Option<u64>| x.map_or("none".to_string(), |v| v.to_string());
        let mut s = String::from("# enumeration v1\n");
        writeln!(s, "# seed {}", self.seed).unwrap();
        writeln!(
            s,
            "# limits max_members={} max_depth={} max_multiplicity_abort={}",
            self.limits.max_members,
            opt(self.limits.max_depth.map(|d| d as u64)),
            opt(self.limits.max_multiplicity_abort)
        )
        .unwrap();
        writeln!(s, "# truncated {}", self.truncated).unwrap();
        for r in &self.rows {
            writeln!(s, "{}\t{}\t{}", r.key, r.arrow_count, r.extended_arrow_count).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next_header = |want: &str| -> Result<(usize, String), ParseError> {
            let (ln, l) = lines.next().ok_or_else(|| err(0, format!("missing `# {want}` header")))?;
            let rest = l
                .strip_prefix("# ")
                .and_then(|r| r.strip_prefix(want))
                .ok_or_else(|| err(ln, format!("expected `# {want}` header")))?;
            Ok((ln, rest.trim().to_string()))
        };
        let (ln, v) = next_header("enumeration")?;
        if v != "v1" {
            return Err(err(ln, "unsupported enumeration version"));
        }
        let (ln, seed) = next_header("seed")?;
        let seed = CanonicalKey::from_hex(&seed).map_err(|e| err(ln, format!("seed key: {e}")))?;
        let (ln, lim) = next_header("limits")?;
        let mut limits = Limits::default();
        for tok in lim.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| err(ln, format!("bad limit `{tok}`")))?;
            let num = |v: &str| -> Result<Option<u64>, ParseError> {
                if v == "none" {
                    Ok(None)
                } else {
                    v.parse().map(Some).map_err(|_| err(ln, format!("bad value for {k}")))
                }
            };
            match k {
                "max_members" => {
                    limits.max_members =
                        num(v)?.ok_or_else(|| err(ln, "max_members cannot be none"))? as usize
                }
                "max_depth" => limits.max_depth = num(v)?.map(|d| d as usize),
                "max_multiplicity_abort" => limits.max_multiplicity_abort = num(v)?,
                _ => return Err(err(ln, format!("unknown limit `{k}`"))),
            }
        }
        let (ln, tr) = next_header("truncated")?;
        let truncated = match tr.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(err(ln, "truncated must be true or false")),
        };
        let mut rows = Vec::new();
        for (ln, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 3 {
                return Err(err(ln, "expected `key<TAB>arrow_count<TAB>extended_arrow_count`"));
            }
            let key = CanonicalKey::from_hex(cols[0]).map_err(|e| err(ln, format!("key: {e}")))?;
            for (c, name) in [(cols[1], "arrow_count"), (cols[2], "extended_arrow_count")] {
                if c.parse::<dashu_int::UBig>().is_err() {
                    return Err(err(ln, format!("{name}: `{c}` is not a count")));
                }
            }
            rows.push(EnumerationRow {
                key,
                arrow_count: cols[1].to_string(),
                extended_arrow_count: cols[2].to_string(),
            });
        }
        Ok(EnumerationFile {
            seed,
            limits,
            truncated,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qvr_round_trip_with_comments() {
        let text = "# A3 with a frozen tail\n3 1\n0 1 0 0\n-1 0 1 0\n0 -1 0 1\n0 0 -1 0\n";
        let q = parse_quiver(text).unwrap();
        assert_eq!(q.n_frozen(), 1);
        assert_eq!(parse_quiver(&write_quiver(&q)).unwrap(), q);
        let j = quiver_to_json(&q).to_string();
        assert_eq!(parse_quiver(&j).unwrap(), q);
    }

    #[test]
    fn qvr_errors_name_the_line() {
        let e = parse_quiver("2 0\n0 1\n-1 x\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_quiver("2 0\n0 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_quiver("2\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn big_entries_survive_json() {
        let big: IBig = "123456789012345678901234567890".parse().unwrap();
        let q = Quiver::new(2, 0, vec![vec![IBig::ZERO, big.clone()], vec![-big, IBig::ZERO]]).unwrap();
        let text = quiver_to_json(&q).to_string();
        assert_eq!(parse_quiver(&text).unwrap(), q);
    }
}
