//! Line-oriented polytope files.
//!
//! ```text
//! # comment
//! dim 2
//! H
//! 0 -1 0
//! 3 1 3
//! ```
//!
//! An `H` row `a_1 .. a_d b` means `<a, x> <= b`; a `V` row lists the `d`
//! coordinates of a point. Entries are integers or `p/q`. A file holds
//! exactly one section. Normals-only files (core-normal configurations)
//! use an `H` section without the right-hand side.

use crate::error::{Error, Result};
use crate::polytope::{HPolytope, HSystem};
use crate::ratmath::{format_rational, parse_rational, to_int_vec, IntVector, RatVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeInput {
    Inequalities {
        dim: usize,
        rows: Vec<(RatVector, Rational)>,
    },
    Points {
        dim: usize,
        points: Vec<RatVector>,
    },
}

impl PolytopeInput {
    pub fn dim(&self) -> usize {
        match self {
            PolytopeInput::Inequalities { dim, .. } | PolytopeInput::Points { dim, .. } => *dim,
        }
    }

    /// Canonical facet description.
    pub fn to_polytope(&self) -> Result<HPolytope> {
        match self {
            PolytopeInput::Inequalities { dim, rows } => HPolytope::from_inequalities(*dim, rows),
            PolytopeInput::Points { points, .. } => HPolytope::from_vertices(points),
        }
    }

    /// The inequality rows exactly as written, when every normal is
    /// integral.
    pub fn raw_system(&self) -> Option<HSystem> {
        let PolytopeInput::Inequalities { dim, rows } = self else {
            return None;
        };
        let normals = rows
            .iter()
            .map(|(a, _)| to_int_vec(a))
            .collect::<Option<Vec<_>>>()?;
        HSystem::new(*dim, normals, rows.iter().map(|(_, b)| b.clone()).collect()).ok()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    H,
    V,
}

struct Lines {
    dim: usize,
    section: Section,
    rows: Vec<(usize, Vec<Rational>)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn read_lines(text: &str) -> Result<Lines> {
    let mut dim: Option<usize> = None;
    let mut section: Option<Section> = None;
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let first = words.next().expect("nonempty line");
        match first {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, "duplicate dim header"));
                }
                let value = words.next().ok_or_else(|| err(line, "dim needs a value"))?;
                let d: usize = value
                    .parse()
                    .map_err(|_| err(line, format!("bad dimension `{value}`")))?;
                if d == 0 {
                    return Err(err(line, "dimension must be positive"));
                }
                if words.next().is_some() {
                    return Err(err(line, "trailing tokens after dim"));
                }
                dim = Some(d);
            }
            "H" | "V" => {
                if dim.is_none() {
                    return Err(err(line, "section before dim header"));
                }
                if section.is_some() {
                    return Err(err(line, "a file holds exactly one H or V section"));
                }
                if words.next().is_some() {
                    return Err(err(line, "trailing tokens after section name"));
                }
                section = Some(if first == "H" { Section::H } else { Section::V });
            }
            _ => {
                if section.is_none() {
                    return Err(err(line, "data before an H or V section"));
                }
                let values = content
                    .split_whitespace()
                    .map(|w| {
                        parse_rational(w).ok_or_else(|| err(line, format!("bad number `{w}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push((line, values));
            }
        }
    }
    let dim = dim.ok_or_else(|| err(0, "missing dim header"))?;
    let section = section.ok_or_else(|| err(0, "missing H or V section"))?;
    Ok(Lines { dim, section, rows })
}

pub fn parse_polytope(text: &str) -> Result<PolytopeInput> {
    let Lines { dim, section, rows } = read_lines(text)?;
    match section {
        Section::H => {
            let mut out = Vec::with_capacity(rows.len());
            for (line, mut values) in rows {
                if values.len() != dim + 1 {
                    return Err(err(
                        line,
                        format!("expected {} entries, found {}", dim + 1, values.len()),
                    ));
                }
                let b = values.pop().expect("nonempty row");
                out.push((values, b));
            }
            Ok(PolytopeInput::Inequalities { dim, rows: out })
        }
        Section::V => {
            for (line, values) in &rows {
                if values.len() != dim {
                    return Err(err(
                        *line,
                        format!("expected {dim} coordinates, found {}", values.len()),
                    ));
                }
            }
            Ok(PolytopeInput::Points {
                dim,
                points: rows.into_iter().map(|(_, v)| v).collect(),
            })
        }
    }
}

/// Integral normals of a normals-only `H` section.
pub fn parse_normals(text: &str) -> Result<(usize, Vec<IntVector>)> {
    let Lines { dim, section, rows } = read_lines(text)?;
    if section != Section::H {
        return Err(err(0, "a normal configuration uses an H section"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (line, values) in rows {
        if values.len() != dim {
            return Err(err(
                line,
                format!("expected {dim} entries, found {}", values.len()),
            ));
        }
        out.push(to_int_vec(&values).ok_or_else(|| err(line, "normals must be integral"))?);
    }
    Ok((dim, out))
}

/// Writes the facet description, one `# ` comment line per header entry.
pub fn write_polytope(p: &HPolytope, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&format!("dim {}\nH\n", p.dim()));
    for (a, b) in p.normals().iter().zip(p.rhs()) {
        let mut words: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        words.push(format_rational(b));
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_normals(dim: usize, normals: &[IntVector]) -> String {
    let mut out = format!("dim {dim}\nH\n");
    for a in normals {
        out.push_str(
            &a.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::ratmath::{ivec, rat};

    #[test]
    fn round_trip() {
        let p = generators::pentagon();
        let text = write_polytope(&p, &["pentagon".to_string()]);
        assert!(text.starts_with("# pentagon\ndim 2\nH\n0 -1 0\n"));
        assert_eq!(parse_polytope(&text).unwrap().to_polytope().unwrap(), p);
    }

    #[test]
    fn vertex_section_and_rationals() {
        let text = "dim 2\nV\n0 0\n3 0   # corner\n0 1\n1/2 1/4\n";
        let p = parse_polytope(text).unwrap().to_polytope().unwrap();
        assert_eq!(p, generators::simplex_scaled(2, 3).unwrap());
        let h = parse_polytope("dim 1\nH\n1 1/2\n-2 0\n").unwrap();
        assert_eq!(
            h,
            PolytopeInput::Inequalities {
                dim: 1,
                rows: vec![(vec![rat(1, 1)], rat(1, 2)), (vec![rat(-2, 1)], rat(0, 1))]
            }
        );
        assert_eq!(h.raw_system().unwrap().normals()[1], ivec(&[-2]));
    }

    #[test]
    fn parse_errors() {
        for (text, line) in [
            ("H\n1 0\n", 1),
            ("dim 2\nH\n1 0\nV\n", 4),
            ("dim 2\nH\n1 0\n", 3),
            ("dim 2\nH\n1 x 0\n", 3),
            ("dim 2\n1 0 0\n", 2),
            ("dim 2\n", 0),
            ("dim 0\nH\n", 1),
            ("dim 2\nH\n1 0 1/0\n", 3),
        ] {
            match parse_polytope(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn normals_files() {
        let (d, rows) = parse_normals("# core normals\ndim 2\nH\n0 1\n0 -1\n").unwrap();
        assert_eq!((d, rows.clone()), (2, vec![ivec(&[0, 1]), ivec(&[0, -1])]));
        assert_eq!(parse_normals(&write_normals(2, &rows)).unwrap(), (2, rows));
        assert!(parse_normals("dim 2\nH\n1/2 1\n").is_err());
        assert!(parse_normals("dim 2\nV\n1 1\n").is_err());
    }
}
