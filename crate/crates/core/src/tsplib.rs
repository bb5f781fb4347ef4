//! Reader for TSPLIB node-coordinate files.
//!
//! Only symmetric `EUC_2D` instances are accepted. Distances follow the
//! TSPLIB `nint` convention: the Euclidean distance rounded half-up to the
//! nearest integer. The published optima of the library instances are
//! computed under this convention.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCoord {
    /// 1-based city id as written in the file.
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightType {
    Euc2d,
}

impl fmt::Display for EdgeWeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeWeightType::Euc2d => f.write_str("EUC_2D"),
        }
    }
}

impl FromStr for EdgeWeightType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EUC_2D" => Ok(EdgeWeightType::Euc2d),
            other => Err(Error::Unsupported(format!(
                "EDGE_WEIGHT_TYPE {other} (only EUC_2D is supported)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceHeader {
    pub name: String,
    pub comment: Option<String>,
    pub dimension: usize,
    pub edge_weight_type: EdgeWeightType,
}

/// Euclidean distance rounded to the nearest integer, halves rounding up.
pub fn euc2d_distance(a: &NodeCoord, b: &NodeCoord) -> u64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx.hypot(dy) + 0.5).floor() as u64
}

/// Splits `KEY: value`, `KEY : value` and bare `KEY` lines.
fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(':') {
        Some((key, value)) => (key.trim(), value.trim()),
        None => (line.trim(), ""),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a TSPLIB node-coordinate file.
///
/// Returns the header and exactly `DIMENSION` coordinates sorted by id.
pub fn parse_tsplib(text: &str) -> Result<(InstanceHeader, Vec<NodeCoord>)> {
    let mut name = String::new();
    let mut comment: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut edge_weight_type: Option<EdgeWeightType> = None;
    let mut coords: Vec<NodeCoord> = Vec::new();
    let mut saw_coord_section = false;
    let mut in_coords = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }

        if in_coords {
            let mut fields = line.split_whitespace();
            let first = fields.next().unwrap_or_default();
            if let Ok(id) = first.parse::<usize>() {
                let mut coord = |label: &str| -> Result<f64> {
                    let field = fields
                        .next()
                        .ok_or_else(|| parse_error(lineno, format!("missing {label} coordinate")))?;
                    field
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| parse_error(lineno, format!("bad {label} coordinate {field:?}")))
                };
                let x = coord("x")?;
                let y = coord("y")?;
                if fields.next().is_some() {
                    return Err(parse_error(lineno, "trailing fields after coordinate row"));
                }
                coords.push(NodeCoord { id, x, y });
                continue;
            }
            in_coords = false;
        }

        let (key, value) = split_keyword(line);
        match key {
            "EOF" => break,
            "NAME" => name = value.to_string(),
            "COMMENT" => {
                comment = Some(match comment.take() {
                    Some(prev) => format!("{prev}\n{value}"),
                    None => value.to_string(),
                })
            }
            "TYPE" => {
                if value != "TSP" {
                    return Err(Error::Unsupported(format!("TYPE {value} (only TSP is supported)")));
                }
            }
            "DIMENSION" => {
                let dim = value
                    .parse::<usize>()
                    .map_err(|_| parse_error(lineno, format!("bad DIMENSION value {value:?}")))?;
                dimension = Some(dim);
            }
            "EDGE_WEIGHT_TYPE" => edge_weight_type = Some(value.parse()?),
            "NODE_COORD_TYPE" => {
                if value != "TWOD_COORDS" {
                    return Err(Error::Unsupported(format!("NODE_COORD_TYPE {value}")));
                }
            }
            "DISPLAY_DATA_TYPE" => {}
            "NODE_COORD_SECTION" => {
                if saw_coord_section {
                    return Err(parse_error(lineno, "duplicate NODE_COORD_SECTION"));
                }
                saw_coord_section = true;
                in_coords = true;
            }
            "EDGE_WEIGHT_FORMAT" | "EDGE_DATA_FORMAT" | "EDGE_WEIGHT_SECTION" | "EDGE_DATA_SECTION"
            | "DISPLAY_DATA_SECTION" | "FIXED_EDGES_SECTION" | "TOUR_SECTION" | "CAPACITY"
            | "DEMAND_SECTION" | "DEPOT_SECTION" => {
                return Err(Error::Unsupported(format!("{key} is not supported")));
            }
            _ => return Err(parse_error(lineno, format!("unknown keyword {key:?}"))),
        }
    }

    let dimension =
        dimension.ok_or_else(|| Error::Structure("missing DIMENSION".to_string()))?;
    let edge_weight_type = edge_weight_type
        .ok_or_else(|| Error::Structure("missing EDGE_WEIGHT_TYPE".to_string()))?;
    if !saw_coord_section {
        return Err(Error::Structure("missing NODE_COORD_SECTION".to_string()));
    }
    if dimension < 3 {
        return Err(Error::Structure(format!(
            "DIMENSION {dimension} is below the minimum of 3"
        )));
    }
    if coords.len() != dimension {
        return Err(Error::Structure(format!(
            "DIMENSION is {dimension} but NODE_COORD_SECTION has {} rows",
            coords.len()
        )));
    }

    coords.sort_by_key(|c| c.id);
    for (expected, c) in (1..=dimension).zip(&coords) {
        if c.id != expected {
            return Err(Error::Structure(format!(
                "node ids must be unique and cover 1..{dimension}; found {} where {expected} was expected",
                c.id
            )));
        }
    }

    Ok((
        InstanceHeader {
            name,
            comment,
            dimension,
            edge_weight_type,
        },
        coords,
    ))
}

/// Writes a header and coordinates back out in TSPLIB form.
pub fn write_tsplib(header: &InstanceHeader, coords: &[NodeCoord]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME : {}", header.name);
    if let Some(comment) = &header.comment {
        for line in comment.lines() {
            let _ = writeln!(out, "COMMENT : {line}");
        }
    }
    let _ = writeln!(out, "TYPE : TSP");
    let _ = writeln!(out, "DIMENSION : {}", coords.len());
    let _ = writeln!(out, "EDGE_WEIGHT_TYPE : {}", header.edge_weight_type);
    let _ = writeln!(out, "NODE_COORD_SECTION");
    for c in coords {
        let _ = writeln!(out, "{} {} {}", c.id, c.x, c.y);
    }
    out.push_str("EOF\n");
    out
}

/// Reads the `TOUR_SECTION` of a TSPLIB `.tour` file and returns 0-based
/// city indices. The section ends at `-1`, `EOF` or end of input.
pub fn parse_tour(text: &str) -> Result<Vec<usize>> {
    let mut in_section = false;
    let mut order = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !in_section {
            let (key, value) = split_keyword(line);
            match key {
                "TOUR_SECTION" => in_section = true,
                "EOF" => break,
                "TYPE" if value != "TOUR" => {
                    return Err(Error::Unsupported(format!("TYPE {value} is not a tour file")));
                }
                _ => {}
            }
            continue;
        }
        if line == "EOF" {
            break;
        }
        let mut done = false;
        for field in line.split_whitespace() {
            let id: i64 = field
                .parse()
                .map_err(|_| parse_error(idx + 1, format!("bad tour entry {field:?}")))?;
            if id == -1 {
                done = true;
                break;
            }
            if id < 1 {
                return Err(parse_error(idx + 1, format!("tour ids are 1-based, got {id}")));
            }
            order.push(id as usize - 1);
        }
        if done {
            break;
        }
    }
    if !in_section {
        return Err(Error::Structure("missing TOUR_SECTION".to_string()));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "NAME: tri\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n\
                            NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";

    fn node(id: usize, x: f64, y: f64) -> NodeCoord {
        NodeCoord { id, x, y }
    }

    #[test]
    fn parses_minimal_instance() {
        let (header, coords) = parse_tsplib(TRIANGLE).unwrap();
        assert_eq!(header.name, "tri");
        assert_eq!(header.dimension, 3);
        assert_eq!(header.edge_weight_type, EdgeWeightType::Euc2d);
        assert_eq!(coords.len(), 3);
        assert_eq!(coords[2], node(3, 0.0, 4.0));
    }

    #[test]
    fn accepts_spaced_colons_and_missing_eof() {
        let text = "NAME : tri\nCOMMENT : a comment\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n\
                    NODE_COORD_SECTION\n3 0 4\n1 0 0\n2 3 0\n";
        let (header, coords) = parse_tsplib(text).unwrap();
        assert_eq!(header.comment.as_deref(), Some("a comment"));
        let ids: Vec<_> = coords.iter().map(|c| c.id).collect();
        assert_eq!(ids, [1, 2, 3]);
    }

    #[test]
    fn count_mismatch_is_structural() {
        let text = TRIANGLE.replace("DIMENSION: 3", "DIMENSION: 4");
        assert!(matches!(parse_tsplib(&text), Err(Error::Structure(_))));
    }

    #[test]
    fn duplicate_ids_are_structural() {
        let text = TRIANGLE.replace("3 0 4", "2 0 4");
        assert!(matches!(parse_tsplib(&text), Err(Error::Structure(_))));
    }

    #[test]
    fn unknown_keyword_names_the_line() {
        let text = TRIANGLE.replace("TYPE: TSP", "TPYE: TSP");
        match parse_tsplib(&text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn other_weight_types_are_rejected() {
        for kind in ["GEO", "ATT", "EXPLICIT", "CEIL_2D"] {
            let text = TRIANGLE.replace("EUC_2D", kind);
            assert!(matches!(parse_tsplib(&text), Err(Error::Unsupported(_))), "{kind}");
        }
    }

    #[test]
    fn too_small_instance_is_rejected() {
        let text = "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
        assert!(matches!(parse_tsplib(text), Err(Error::Structure(_))));
    }

    #[test]
    fn bad_coordinate_is_a_parse_error() {
        let text = TRIANGLE.replace("2 3 0", "2 3 zero");
        assert!(matches!(parse_tsplib(&text), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn nint_distances() {
        assert_eq!(euc2d_distance(&node(1, 0.0, 0.0), &node(2, 3.0, 4.0)), 5);
        assert_eq!(euc2d_distance(&node(1, 0.0, 0.0), &node(2, 1.0, 1.0)), 1);
        // sqrt(144 + 9) = 12.369...
        assert_eq!(euc2d_distance(&node(1, 37.0, 52.0), &node(2, 49.0, 49.0)), 12);
        // exactly 2.5 rounds up
        assert_eq!(euc2d_distance(&node(1, 0.0, 0.0), &node(2, 2.5, 0.0)), 3);
        let a = node(1, 7.25, -3.0);
        assert_eq!(euc2d_distance(&a, &a), 0);
    }

    #[test]
    fn tour_section_is_read_until_terminator() {
        let text = "NAME : t\nTYPE : TOUR\nDIMENSION : 3\nTOUR_SECTION\n1\n3 2\n-1\nEOF\n";
        assert_eq!(parse_tour(text).unwrap(), vec![0, 2, 1]);
        assert!(parse_tour("NAME : t\n").is_err());
    }
}
