//! Tabular export formats for meshes, node sets and Lebesgue reports, as CSV
//! and JSON, with parsers so every emitted table round-trips.
//!
//! All floats are written with 17 significant digits, which round-trips f64
//! exactly and keeps outputs byte-deterministic.

use crate::extremal::NodeSet;
use crate::mesh::{Mesh, MeshParams, PointKind, Provenance};
use num_complex::Complex64;
use serde_json::Value;
use std::fmt;
use std::io::{Read, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum TableError {
    Syntax(String),
    Io(String),
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax(msg) => write!(f, "malformed table: {msg}"),
            Self::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for TableError {}

impl From<std::io::Error> for TableError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

fn syntax(msg: impl Into<String>) -> TableError {
    TableError::Syntax(msg.into())
}

/// 17 significant digits: 1 leading + 16 after the point.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64, TableError> {
    s.trim().parse::<f64>().map_err(|e| syntax(format!("bad float {s:?}: {e}")))
}

fn parse_usize(s: &str) -> Result<usize, TableError> {
    s.trim().parse::<usize>().map_err(|e| syntax(format!("bad integer {s:?}: {e}")))
}

fn read_all(mut reader: impl Read) -> Result<String, TableError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    Ok(text)
}

/// Splits comment-header lines (`# key: value`) from data lines.
fn split_header(text: &str) -> (Vec<(String, String)>, Vec<&str>) {
    let mut header = Vec::new();
    let mut body = Vec::new();
    for line in text.lines() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                header.push((k.trim().to_string(), v.trim().to_string()));
            }
        } else {
            body.push(line);
        }
    }
    (header, body)
}

fn header_value<'a>(header: &'a [(String, String)], key: &str) -> Result<&'a str, TableError> {
    header
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| syntax(format!("missing header {key:?}")))
}

fn parse_kind(s: &str) -> Result<PointKind, TableError> {
    PointKind::parse(s).ok_or_else(|| syntax(format!("unknown point kind {s:?}")))
}

// ---------------------------------------------------------------------------
// Mesh tables
// ---------------------------------------------------------------------------

pub fn write_mesh_csv(mesh: &Mesh, mut w: impl Write) -> Result<(), TableError> {
    let p = mesh.params();
    let mut out = String::new();
    out.push_str(&format!("# boundary: {}\n", mesh.boundary_label()));
    out.push_str(&format!("# n: {}\n", p.degree));
    out.push_str(&format!("# m: {}\n", fmt_f64(p.factor)));
    out.push_str(&format!("# kind: {}\n", p.kind));
    out.push_str(&format!("# c: {}\n", fmt_f64(mesh.norming_constant())));
    out.push_str("re,im,arc_index,t\n");
    for (z, prov) in mesh.points().iter().zip(mesh.provenance()) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(z.re),
            fmt_f64(z.im),
            prov.arc,
            fmt_f64(prov.t)
        ));
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_mesh_csv(reader: impl Read) -> Result<Mesh, TableError> {
    let text = read_all(reader)?;
    let (header, body) = split_header(&text);
    let label = header_value(&header, "boundary")?.to_string();
    let degree = parse_usize(header_value(&header, "n")?)?;
    let factor = parse_f64(header_value(&header, "m")?)?;
    let kind = parse_kind(header_value(&header, "kind")?)?;
    let mut rows = body.iter();
    match rows.next() {
        Some(&"re,im,arc_index,t") => {}
        other => return Err(syntax(format!("unexpected column header {other:?}"))),
    }
    let mut points = Vec::new();
    let mut provenance = Vec::new();
    for line in rows {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 4 {
            return Err(syntax(format!("expected 4 columns, got {line:?}")));
        }
        points.push(Complex64::new(parse_f64(cells[0])?, parse_f64(cells[1])?));
        provenance.push(Provenance { arc: parse_usize(cells[2])?, t: parse_f64(cells[3])? });
    }
    let params = MeshParams::with_kind(degree, factor, kind)
        .map_err(|e| syntax(e.to_string()))?;
    Mesh::from_parts(points, provenance, params, label).map_err(|e| syntax(e.to_string()))
}

pub fn write_mesh_json(mesh: &Mesh, mut w: impl Write) -> Result<(), TableError> {
    let p = mesh.params();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!(
        "  \"boundary\": {},\n",
        serde_json::to_string(mesh.boundary_label()).expect("string serializes")
    ));
    out.push_str(&format!("  \"n\": {},\n", p.degree));
    out.push_str(&format!("  \"m\": {},\n", fmt_f64(p.factor)));
    out.push_str(&format!("  \"kind\": \"{}\",\n", p.kind));
    out.push_str(&format!("  \"c\": {},\n", fmt_f64(mesh.norming_constant())));
    out.push_str("  \"points\": [\n");
    let count = mesh.len();
    for (i, (z, prov)) in mesh.points().iter().zip(mesh.provenance()).enumerate() {
        out.push_str(&format!(
            "    {{ \"re\": {}, \"im\": {}, \"arc_index\": {}, \"t\": {} }}{}\n",
            fmt_f64(z.re),
            fmt_f64(z.im),
            prov.arc,
            fmt_f64(prov.t),
            if i + 1 < count { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    w.write_all(out.as_bytes())?;
    Ok(())
}

fn json_f64(v: &Value, field: &str) -> Result<f64, TableError> {
    v.get(field)
        .and_then(Value::as_f64)
        .ok_or_else(|| syntax(format!("missing number field {field:?}")))
}

fn json_usize(v: &Value, field: &str) -> Result<usize, TableError> {
    v.get(field)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| syntax(format!("missing integer field {field:?}")))
}

fn json_str<'a>(v: &'a Value, field: &str) -> Result<&'a str, TableError> {
    v.get(field)
        .and_then(Value::as_str)
        .ok_or_else(|| syntax(format!("missing string field {field:?}")))
}

pub fn parse_mesh_json(reader: impl Read) -> Result<Mesh, TableError> {
    let text = read_all(reader)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| syntax(e.to_string()))?;
    let label = json_str(&doc, "boundary")?.to_string();
    let degree = json_usize(&doc, "n")?;
    let factor = json_f64(&doc, "m")?;
    let kind = parse_kind(json_str(&doc, "kind")?)?;
    let pts = doc
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| syntax("missing list field \"points\""))?;
    let mut points = Vec::with_capacity(pts.len());
    let mut provenance = Vec::with_capacity(pts.len());
    for p in pts {
        points.push(Complex64::new(json_f64(p, "re")?, json_f64(p, "im")?));
        provenance.push(Provenance { arc: json_usize(p, "arc_index")?, t: json_f64(p, "t")? });
    }
    let params = MeshParams::with_kind(degree, factor, kind)
        .map_err(|e| syntax(e.to_string()))?;
    Mesh::from_parts(points, provenance, params, label).map_err(|e| syntax(e.to_string()))
}

// ---------------------------------------------------------------------------
// Node tables
// ---------------------------------------------------------------------------

/// Parsed node table; a plain record of what a node file stores.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeTable {
    pub boundary_label: String,
    pub family: String,
    pub degree: usize,
    pub factor: f64,
    pub kind: PointKind,
    pub nodes: Vec<Complex64>,
}

pub fn write_nodes_csv(nodes: &NodeSet, mut w: impl Write) -> Result<(), TableError> {
    let mut out = String::new();
    out.push_str(&format!("# boundary: {}\n", nodes.source.boundary_label));
    out.push_str(&format!("# family: {}\n", nodes.family));
    out.push_str(&format!("# n: {}\n", nodes.degree));
    out.push_str(&format!("# m: {}\n", fmt_f64(nodes.source.factor)));
    out.push_str(&format!("# kind: {}\n", nodes.source.kind));
    out.push_str("order,re,im\n");
    for (i, z) in nodes.nodes.iter().enumerate() {
        out.push_str(&format!("{i},{},{}\n", fmt_f64(z.re), fmt_f64(z.im)));
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_nodes_csv(reader: impl Read) -> Result<NodeTable, TableError> {
    let text = read_all(reader)?;
    let (header, body) = split_header(&text);
    let table = NodeTable {
        boundary_label: header_value(&header, "boundary")?.to_string(),
        family: header_value(&header, "family")?.to_string(),
        degree: parse_usize(header_value(&header, "n")?)?,
        factor: parse_f64(header_value(&header, "m")?)?,
        kind: parse_kind(header_value(&header, "kind")?)?,
        nodes: Vec::new(),
    };
    let mut rows = body.iter();
    match rows.next() {
        Some(&"order,re,im") => {}
        other => return Err(syntax(format!("unexpected column header {other:?}"))),
    }
    let mut nodes = Vec::new();
    for (expect, line) in rows.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 3 {
            return Err(syntax(format!("expected 3 columns, got {line:?}")));
        }
        let order = parse_usize(cells[0])?;
        if order != expect {
            return Err(syntax(format!("out-of-order row {order} (expected {expect})")));
        }
        nodes.push(Complex64::new(parse_f64(cells[1])?, parse_f64(cells[2])?));
    }
    Ok(NodeTable { nodes, ..table })
}

pub fn write_nodes_json(nodes: &NodeSet, mut w: impl Write) -> Result<(), TableError> {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!(
        "  \"boundary\": {},\n",
        serde_json::to_string(&nodes.source.boundary_label).expect("string serializes")
    ));
    out.push_str(&format!("  \"family\": \"{}\",\n", nodes.family));
    out.push_str(&format!("  \"n\": {},\n", nodes.degree));
    out.push_str(&format!("  \"m\": {},\n", fmt_f64(nodes.source.factor)));
    out.push_str(&format!("  \"kind\": \"{}\",\n", nodes.source.kind));
    out.push_str("  \"nodes\": [\n");
    for (i, z) in nodes.nodes.iter().enumerate() {
        out.push_str(&format!(
            "    {{ \"order\": {i}, \"re\": {}, \"im\": {} }}{}\n",
            fmt_f64(z.re),
            fmt_f64(z.im),
            if i + 1 < nodes.nodes.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_nodes_json(reader: impl Read) -> Result<NodeTable, TableError> {
    let text = read_all(reader)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| syntax(e.to_string()))?;
    let entries = doc
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| syntax("missing list field \"nodes\""))?;
    let mut nodes = Vec::with_capacity(entries.len());
    for (expect, e) in entries.iter().enumerate() {
        if json_usize(e, "order")? != expect {
            return Err(syntax(format!("out-of-order node entry {expect}")));
        }
        nodes.push(Complex64::new(json_f64(e, "re")?, json_f64(e, "im")?));
    }
    Ok(NodeTable {
        boundary_label: json_str(&doc, "boundary")?.to_string(),
        family: json_str(&doc, "family")?.to_string(),
        degree: json_usize(&doc, "n")?,
        factor: json_f64(&doc, "m")?,
        kind: parse_kind(json_str(&doc, "kind")?)?,
        nodes,
    })
}

// ---------------------------------------------------------------------------
// Lebesgue tables
// ---------------------------------------------------------------------------

/// One row of a Lebesgue table: certified value and enclosure for a
/// (domain, family, degree) combination.
#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueRow {
    pub domain: String,
    pub family: String,
    pub degree: usize,
    pub factor: f64,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

pub const LEBESGUE_COLUMNS: &str = "domain,family,n,m,value,lower,upper";

pub fn write_lebesgue_csv(rows: &[LebesgueRow], mut w: impl Write) -> Result<(), TableError> {
    let mut out = String::new();
    out.push_str(LEBESGUE_COLUMNS);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.domain,
            r.family,
            r.degree,
            fmt_f64(r.factor),
            fmt_f64(r.value),
            fmt_f64(r.lower),
            fmt_f64(r.upper)
        ));
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_lebesgue_csv(reader: impl Read) -> Result<Vec<LebesgueRow>, TableError> {
    let text = read_all(reader)?;
    let (_, body) = split_header(&text);
    let mut rows = body.iter();
    match rows.next() {
        Some(h) if *h == LEBESGUE_COLUMNS => {}
        other => return Err(syntax(format!("unexpected column header {other:?}"))),
    }
    rows.map(|line| {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 7 {
            return Err(syntax(format!("expected 7 columns, got {line:?}")));
        }
        Ok(LebesgueRow {
            domain: cells[0].to_string(),
            family: cells[1].to_string(),
            degree: parse_usize(cells[2])?,
            factor: parse_f64(cells[3])?,
            value: parse_f64(cells[4])?,
            lower: parse_f64(cells[5])?,
            upper: parse_f64(cells[6])?,
        })
    })
    .collect()
}

pub fn write_lebesgue_json(rows: &[LebesgueRow], mut w: impl Write) -> Result<(), TableError> {
    let mut out = String::new();
    out.push_str("{\n  \"rows\": [\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!(
            "    {{ \"domain\": {}, \"family\": \"{}\", \"n\": {}, \"m\": {}, \"value\": {}, \"lower\": {}, \"upper\": {} }}{}\n",
            serde_json::to_string(&r.domain).expect("string serializes"),
            r.family,
            r.degree,
            fmt_f64(r.factor),
            fmt_f64(r.value),
            fmt_f64(r.lower),
            fmt_f64(r.upper),
            if i + 1 < rows.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_lebesgue_json(reader: impl Read) -> Result<Vec<LebesgueRow>, TableError> {
    let text = read_all(reader)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| syntax(e.to_string()))?;
    let entries = doc
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| syntax("missing list field \"rows\""))?;
    entries
        .iter()
        .map(|e| {
            Ok(LebesgueRow {
                domain: json_str(e, "domain")?.to_string(),
                family: json_str(e, "family")?.to_string(),
                degree: json_usize(e, "n")?,
                factor: json_f64(e, "m")?,
                value: json_f64(e, "value")?,
                lower: json_f64(e, "lower")?,
                upper: json_f64(e, "upper")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::approximate_fekete;
    use crate::geometry::gallery;
    use crate::mesh::boundary_mesh;

    fn sample_mesh() -> Mesh {
        let params = MeshParams::new(4, 2.0).unwrap();
        boundary_mesh(&gallery("lune").unwrap(), params).unwrap()
    }

    #[test]
    fn mesh_csv_round_trip() {
        let mesh = sample_mesh();
        let mut buf = Vec::new();
        write_mesh_csv(&mesh, &mut buf).unwrap();
        let back = parse_mesh_csv(buf.as_slice()).unwrap();
        assert_eq!(mesh, back);
    }

    #[test]
    fn mesh_json_round_trip() {
        let mesh = sample_mesh();
        let mut buf = Vec::new();
        write_mesh_json(&mesh, &mut buf).unwrap();
        let back = parse_mesh_json(buf.as_slice()).unwrap();
        assert_eq!(mesh, back);
    }

    #[test]
    fn nodes_round_trip_both_formats() {
        let mesh = sample_mesh();
        let ns = approximate_fekete(&mesh, 4).unwrap();
        let mut csv = Vec::new();
        write_nodes_csv(&ns, &mut csv).unwrap();
        let t1 = parse_nodes_csv(csv.as_slice()).unwrap();
        assert_eq!(t1.nodes, ns.nodes);
        assert_eq!(t1.family, "afp");
        assert_eq!(t1.degree, 4);

        let mut json = Vec::new();
        write_nodes_json(&ns, &mut json).unwrap();
        let t2 = parse_nodes_json(json.as_slice()).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn lebesgue_round_trip_both_formats() {
        let rows = vec![
            LebesgueRow {
                domain: "lune".into(),
                family: "afp".into(),
                degree: 3,
                factor: 4.0,
                value: 2.5,
                lower: 2.5,
                upper: 2.706,
            },
            LebesgueRow {
                domain: "sun".into(),
                family: "ls".into(),
                degree: 10,
                factor: 4.0,
                value: 1.9,
                lower: 1.9,
                upper: 2.05,
            },
        ];
        let mut csv = Vec::new();
        write_lebesgue_csv(&rows, &mut csv).unwrap();
        assert_eq!(parse_lebesgue_csv(csv.as_slice()).unwrap(), rows);
        let mut json = Vec::new();
        write_lebesgue_json(&rows, &mut json).unwrap();
        assert_eq!(parse_lebesgue_json(json.as_slice()).unwrap(), rows);
    }

    #[test]
    fn writers_are_byte_deterministic() {
        let mesh = sample_mesh();
        let (mut b1, mut b2) = (Vec::new(), Vec::new());
        write_mesh_csv(&mesh, &mut b1).unwrap();
        write_mesh_csv(&mesh, &mut b2).unwrap();
        assert_eq!(b1, b2);
    }
}
