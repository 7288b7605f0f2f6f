//! CSV/JSON plumbing. Every CSV artifact starts with `#`-prefixed metadata
//! lines (command, version, parameters) followed by a column header; numeric
//! columns carry 12 significant digits.

use crate::dim::DimensionParams;
use crate::model::{TermCurve, TermPoint, TermSource};
use crate::{Error, Result, Symmetry};
use std::io::{BufRead, Write};

pub fn fmt12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Write a term curve as CSV with columns R,U,V.
pub fn write_term_csv<W: Write>(
    w: &mut W,
    curve: &TermCurve,
    metadata: &[(&str, String)],
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}: {v}")?;
    }
    writeln!(w, "# symmetry: {}", curve.symmetry.label())?;
    writeln!(w, "# d: {}", curve.dim.d())?;
    writeln!(w, "# source: {:?}", curve.source)?;
    writeln!(w, "R,U,V")?;
    for p in &curve.points {
        writeln!(w, "{},{},{}", fmt12(p.r), fmt12(p.u), fmt12(p.v))?;
    }
    Ok(())
}

/// Read a term curve written by `write_term_csv`; metadata lines establish
/// symmetry and dimension.
pub fn read_term_csv<R: BufRead>(r: R) -> Result<TermCurve> {
    let mut symmetry = None;
    let mut d = None;
    let mut source = TermSource::Variational;
    let mut points = Vec::new();
    let mut saw_header = false;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some((k, v)) = meta.split_once(':') {
                match k.trim() {
                    "symmetry" => symmetry = Some(Symmetry::parse(v.trim())?),
                    "d" => {
                        d = Some(v.trim().parse::<f64>().map_err(|e| {
                            Error::Parse(format!("bad dimension '{v}': {e}"))
                        })?)
                    }
                    "source" => {
                        source = match v.trim() {
                            "Variational" => TermSource::Variational,
                            "Asymptotic" => TermSource::Asymptotic,
                            "Approximant" => TermSource::Approximant,
                            other => {
                                return Err(Error::Parse(format!(
                                    "unknown source '{other}'"
                                )))
                            }
                        }
                    }
                    _ => {}
                }
            }
            continue;
        }
        if !saw_header {
            if line != "R,U,V" {
                return Err(Error::Parse(format!("expected header R,U,V, got '{line}'")));
            }
            saw_header = true;
            continue;
        }
        let mut it = line.split(',');
        let mut next = || -> Result<f64> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("short row '{line}'")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number in '{line}': {e}")))
        };
        points.push(TermPoint { r: next()?, u: next()?, v: next()? });
    }
    let symmetry =
        symmetry.ok_or_else(|| Error::Parse("missing '# symmetry:' metadata".into()))?;
    let d = d.ok_or_else(|| Error::Parse("missing '# d:' metadata".into()))?;
    TermCurve::new(symmetry, DimensionParams::new(d)?, source, points)
}

/// Generic CSV table with metadata header.
pub fn write_table<W: Write>(
    w: &mut W,
    metadata: &[(&str, String)],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}: {v}")?;
    }
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt12(x)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_csv_round_trip() {
        let dim = DimensionParams::new(2.0).unwrap();
        let pts = vec![
            TermPoint { r: 0.5, u: -2.93, v: 0.123456789012 },
            TermPoint { r: 1.0, u: -2.4, v: 0.6 },
        ];
        let curve =
            TermCurve::new(Symmetry::Antisymmetric, dim, TermSource::Variational, pts).unwrap();
        let mut buf = Vec::new();
        write_term_csv(&mut buf, &curve, &[("command", "scan".into())]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# command: scan\n"));
        assert!(text.contains("R,U,V"));
        let back = read_term_csv(std::io::BufReader::new(text.as_bytes())).unwrap();
        assert_eq!(back.points.len(), 2);
        assert!((back.points[0].v - 0.123456789012).abs() < 1e-12);
        assert_eq!(back.symmetry, Symmetry::Antisymmetric);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt12(0.123456789012345), "1.23456789012e-1");
    }
}
