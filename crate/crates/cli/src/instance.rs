//! Instance ingestion: a plain text format, one point per line, plus the
//! built-in benchmark corpus embedded in the same format.

use steiner_core::Point;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("an instance needs at least 3 points")]
    TooFewPoints,
    #[error("line {line}: '{token}' is not a finite decimal")]
    NonNumeric { line: usize, token: String },
    #[error("all points coincide; the instance has no extent")]
    AllCoincident,
}

/// A named set of terminals in a common dimension.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub dim: usize,
    pub points: Vec<Point>,
}

/// Parse the point list format: lines starting with '#' and blank lines are
/// skipped; every other line holds one point as whitespace-separated
/// decimals. The dimension is inferred from the first data line and
/// enforced on the rest.
pub fn parse_instance(name: &str, text: &str) -> Result<Instance, ParseError> {
    let mut dim = 0usize;
    let mut points: Vec<Point> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut coords: Vec<f64> = Vec::new();
        for token in body.split_whitespace() {
            let value: f64 = token
                .parse()
                .map_err(|_| ParseError::NonNumeric {
                    line,
                    token: token.to_string(),
                })?;
            if !value.is_finite() {
                return Err(ParseError::NonNumeric {
                    line,
                    token: token.to_string(),
                });
            }
            coords.push(value);
        }
        if dim == 0 {
            // Points live in d-space with d at least 2, so a one-column
            // first row is reported as a row-shape problem.
            if coords.len() < 2 {
                return Err(ParseError::RaggedRow {
                    line,
                    expected: 2,
                    found: coords.len(),
                });
            }
            dim = coords.len();
        }
        if coords.len() != dim {
            return Err(ParseError::RaggedRow {
                line,
                expected: dim,
                found: coords.len(),
            });
        }
        points.push(Point::new(coords).expect("tokens were validated finite"));
    }
    if points.len() < 3 {
        return Err(ParseError::TooFewPoints);
    }
    let first = points[0].coords();
    if points.iter().all(|p| p.coords() == first) {
        return Err(ParseError::AllCoincident);
    }
    Ok(Instance {
        name: name.to_string(),
        dim,
        points,
    })
}

/// Render an instance back to the text format. Coordinates use the shortest
/// decimal form that re-parses to the identical binary value, so
/// `parse_instance(print_instance(i))` reproduces every coordinate exactly.
pub fn print_instance(instance: &Instance) -> String {
    let mut out = format!("# {} ({} points, d={})\n", instance.name, instance.points.len(), instance.dim);
    for p in &instance.points {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

const PAPER_01: &str = "1 0 0\n-1 -0.5 0\n-0.25 0.5 0\n-0.5 0 1\n-0.5 0 -1\n";
const PAPER_02: &str =
    "1 1 1 -0.4472\n1 -1 -1 -0.4472\n-1 1 -1 -0.4472\n-1 -1 1 -0.4472\n0 0 0 1.7889\n";
const PAPER_03: &str =
    "-1 -1 -1\n1 -1 1\n-0.5 0 1\n-0.25 0 0.5\n0 0 0\n0.25 0 -0.5\n0.5 0 -1\n";
const PAPER_04: &str = "1 0 0 0\n-1 0 0 0\n0 1 0 0\n0 -1 0 0\n0 0 1 0\n0 0 -1 0\n0 0 0 1\n0 0 0 -1\n";
const PAPER_05: &str =
    "0 0 0\n-1 -1 -1\n1 -1 -1\n1 -1 1\n-1 -1 1\n-1 1 -1\n1 1 -1\n1 1 1\n-1 1 1\n";
const PAPER_06: &str = "1 0 0 0\n1 0 0 1\n1 0 -1 0\n0 -1 1 1\n-1 -1 -1 -1\n0 0 0 0\n-1 1 -1 1\n0 1 0 1\n0 0 0 1\n0 1 1 0\n";
const PAPER_07: &str = "0 0 0 0\n-1 0 -3 1.6\n-1 -3 -1 1.2\n-1 -2 2 0.8\n-1 2 2 0.4\n-1 3 2 0\n1 0 -3 0\n1 -3 -1 0.4\n1 -2 2 0.8\n1 2 2 1.2\n1 3 2 1.6\n";
const PAPER_08: &str = "-1 -1 -1\n-0.5 -1 -1\n0 -1 -1\n0.5 -1 -1\n1 -1 -1\n-1 1 1\n-0.5 1 1\n0 1 1\n0.5 1 1\n1 1 1\n1 0 0\n-1 0 0\n";
const PAPER_09: &str = "-1 0 1\n-1 -1 -1\n1 1 -1\n0 -2 2\n0 2 2\n0 -2 -2\n0 2 -2\n1 0 -3\n1 -3 -1\n1 -2 2\n1 2 2\n1 3 -1\n";
const PAPER_10: &str = "1 0 1.6180339887\n0 1.6180339887 1\n1.6180339887 1 0\n-1 0 1.6180339887\n0 1.6180339887 -1\n1.6180339887 -1 0\n1 0 -1.6180339887\n0 -1.6180339887 1\n-1.6180339887 1 0\n-1 0 -1.6180339887\n0 -1.6180339887 -1\n-1.6180339887 -1 0\n";
const APPENDIX_A: &str = "0.61 -0.45\n-0.83 -0.73\n-0.85 -0.99\n-0.44 0.17\n0.18 0.43\n-0.74 -0.93\n0.09 0.59\n0.51 -0.87\n-0.31 0.70\n0.69 0.41\n";

const BUILTINS: [(&str, &str); 11] = [
    ("paper-01", PAPER_01),
    ("paper-02", PAPER_02),
    ("paper-03", PAPER_03),
    ("paper-04", PAPER_04),
    ("paper-05", PAPER_05),
    ("paper-06", PAPER_06),
    ("paper-07", PAPER_07),
    ("paper-08", PAPER_08),
    ("paper-09", PAPER_09),
    ("paper-10", PAPER_10),
    ("appendix-a", APPENDIX_A),
];

/// The embedded corpus: ten benchmark instances plus the appendix pair
/// (`appendix-a-swapped` is `appendix-a` with first and last rows
/// exchanged).
pub fn builtin_instances() -> Vec<Instance> {
    let mut all: Vec<Instance> = BUILTINS
        .iter()
        .map(|(name, text)| parse_instance(name, text).expect("embedded corpus is well formed"))
        .collect();
    let mut swapped = all
        .last()
        .expect("corpus is nonempty")
        .clone();
    swapped.name = "appendix-a-swapped".to_string();
    let last = swapped.points.len() - 1;
    swapped.points.swap(0, last);
    all.push(swapped);
    all
}

/// Look up one embedded instance by name.
pub fn builtin(name: &str) -> Option<Instance> {
    builtin_instances().into_iter().find(|i| i.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_rows() {
        let text = "# a triangle\n\n0 0\n1 0\n\n0 1\n";
        let inst = parse_instance("tri", text).unwrap();
        assert_eq!(inst.dim, 2);
        assert_eq!(inst.points.len(), 3);
        assert_eq!(inst.points[1].coords(), &[1.0, 0.0]);
    }

    #[test]
    fn reports_each_error_kind() {
        assert_eq!(
            parse_instance("x", "0 0\n1\n0 1\n").unwrap_err(),
            ParseError::RaggedRow {
                line: 2,
                expected: 2,
                found: 1
            }
        );
        assert_eq!(parse_instance("x", "0 0\n1 1\n").unwrap_err(), ParseError::TooFewPoints);
        assert_eq!(parse_instance("x", "").unwrap_err(), ParseError::TooFewPoints);
        assert_eq!(
            parse_instance("x", "0 zero\n1 1\n2 2\n").unwrap_err(),
            ParseError::NonNumeric {
                line: 1,
                token: "zero".to_string()
            }
        );
        assert_eq!(
            parse_instance("x", "0 inf\n1 1\n2 2\n").unwrap_err(),
            ParseError::NonNumeric {
                line: 1,
                token: "inf".to_string()
            }
        );
        assert_eq!(
            parse_instance("x", "3 4\n3 4\n3 4\n").unwrap_err(),
            ParseError::AllCoincident
        );
    }

    #[test]
    fn round_trips_exactly() {
        let text = "0.61 -0.45\n-0.8300000000000001 0.1\n1e-300 2.2250738585072014e-308\n";
        let inst = parse_instance("rt", text).unwrap();
        let reparsed = parse_instance("rt", &print_instance(&inst)).unwrap();
        for (a, b) in inst.points.iter().zip(&reparsed.points) {
            assert_eq!(a.coords(), b.coords());
        }
    }

    #[test]
    fn corpus_matches_published_coordinates() {
        let all = builtin_instances();
        assert_eq!(all.len(), 12);
        let get = |n: &str| builtin(n).unwrap();

        let p1 = get("paper-01");
        assert_eq!((p1.dim, p1.points.len()), (3, 5));
        assert_eq!(p1.points[0].coords(), &[1.0, 0.0, 0.0]);

        let p2 = get("paper-02");
        assert_eq!((p2.dim, p2.points.len()), (4, 5));
        assert_eq!(p2.points[4].coords(), &[0.0, 0.0, 0.0, 1.7889]);

        let p7 = get("paper-07");
        assert_eq!((p7.dim, p7.points.len()), (4, 11));
        assert_eq!(p7.points[1].coords(), &[-1.0, 0.0, -3.0, 1.6]);

        let p10 = get("paper-10");
        assert_eq!((p10.dim, p10.points.len()), (3, 12));
        assert_eq!(p10.points[0].coords(), &[1.0, 0.0, 1.6180339887]);

        let a = get("appendix-a");
        assert_eq!((a.dim, a.points.len()), (2, 10));
        assert_eq!(a.points[0].coords(), &[0.61, -0.45]);
        assert_eq!(a.points[9].coords(), &[0.69, 0.41]);

        let sw = get("appendix-a-swapped");
        assert_eq!(sw.points[0].coords(), &[0.69, 0.41]);
        assert_eq!(sw.points[9].coords(), &[0.61, -0.45]);
        for k in 1..9 {
            assert_eq!(sw.points[k].coords(), a.points[k].coords());
        }
    }
}
