//! Text formats for pair lists and score files.
//!
//! Pairs: `u v [label]` per line with `label` either `1` or `0`; every line
//! of a file must agree on whether a label is present. Scores: `u v score`
//! with the score printed to twelve decimals. Both skip `#` comments and
//! blank lines.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::NodeId;
use crate::scalar::Scalar;
use crate::scorers::{Label, QueryPairSet, ScoreError, ScoreVector};

/// Digits after the decimal point in score files.
pub const SCORE_DECIMALS: usize = 12;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Pairs(#[from] ScoreError),
}

fn records<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), FormatError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Err(e) => Some(Err(e.into())),
            Ok(l) => {
                let t = l.trim();
                (!t.is_empty() && !t.starts_with('#')).then(|| Ok((idx + 1, t.to_string())))
            }
        })
}

fn node(field: &str, line: usize) -> Result<NodeId, FormatError> {
    field
        .parse::<u32>()
        .map(NodeId)
        .map_err(|_| FormatError::Malformed {
            line,
            reason: format!("bad node id `{field}`"),
        })
}

pub fn read_pairs<R: BufRead>(reader: R) -> Result<QueryPairSet, FormatError> {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    let mut labeled: Option<bool> = None;
    for rec in records(reader) {
        let (line, text) = rec?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        let has_label = match fields.len() {
            2 => false,
            3 => true,
            _ => {
                return Err(FormatError::Malformed {
                    line,
                    reason: "expected `u v [label]`".into(),
                })
            }
        };
        if *labeled.get_or_insert(has_label) != has_label {
            return Err(FormatError::Malformed {
                line,
                reason: "labels must be given on every line or on none".into(),
            });
        }
        pairs.push((node(fields[0], line)?, node(fields[1], line)?));
        if has_label {
            labels.push(match fields[2] {
                "1" => Label::Positive,
                "0" => Label::Negative,
                other => {
                    return Err(FormatError::Malformed {
                        line,
                        reason: format!("label must be 0 or 1, got `{other}`"),
                    })
                }
            });
        }
    }
    Ok(if labeled == Some(true) {
        QueryPairSet::labeled(pairs, labels)?
    } else {
        QueryPairSet::new(pairs)?
    })
}

/// Writes `u v` or `u v label` lines, preceded by `header` if given.
pub fn write_pairs<W: Write>(
    mut out: W,
    pairs: &QueryPairSet,
    header: Option<&str>,
) -> io::Result<()> {
    if let Some(h) = header {
        writeln!(out, "{h}")?;
    }
    match pairs.labels() {
        Some(labels) => {
            for (&(u, v), l) in pairs.pairs().iter().zip(labels) {
                writeln!(out, "{u} {v} {}", u8::from(l.is_positive()))?;
            }
        }
        None => {
            for &(u, v) in pairs.pairs() {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

pub fn write_scores<W: Write, T: Scalar>(
    mut out: W,
    pairs: &QueryPairSet,
    scores: &ScoreVector<T>,
) -> io::Result<()> {
    assert_eq!(pairs.len(), scores.len(), "scores not aligned with pairs");
    for (&(u, v), s) in pairs.pairs().iter().zip(&scores.scores) {
        writeln!(out, "{u} {v} {:.*}", SCORE_DECIMALS, s)?;
    }
    Ok(())
}

/// Pairs and scores read back from a score file, in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreFile<T> {
    pub pairs: Vec<(NodeId, NodeId)>,
    pub scores: Vec<T>,
}

pub fn read_scores<R: BufRead, T: Scalar>(reader: R) -> Result<ScoreFile<T>, FormatError> {
    let mut file = ScoreFile {
        pairs: Vec::new(),
        scores: Vec::new(),
    };
    for rec in records(reader) {
        let (line, text) = rec?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(FormatError::Malformed {
                line,
                reason: "expected `u v score`".into(),
            });
        }
        file.pairs
            .push((node(fields[0], line)?, node(fields[1], line)?));
        let s: T = fields[2]
            .parse()
            .ok()
            .filter(|s: &T| s.is_finite())
            .ok_or_else(|| FormatError::Malformed {
                line,
                reason: format!("bad score `{}`", fields[2]),
            })?;
        file.scores.push(s);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_pairs_round_trip() {
        let text = "# split\n0 2 1\n\n3 1 0\n";
        let set = read_pairs(text.as_bytes()).unwrap();
        assert_eq!(
            set.pairs(),
            &[(NodeId(0), NodeId(2)), (NodeId(3), NodeId(1))]
        );
        assert_eq!(set.labels().unwrap(), &[Label::Positive, Label::Negative]);
        let mut buf = Vec::new();
        write_pairs(&mut buf, &set, Some("# split")).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# split\n0 2 1\n3 1 0\n");
    }

    #[test]
    fn unlabelled_pairs() {
        let set = read_pairs("0 2\n1 3\n".as_bytes()).unwrap();
        assert!(set.labels().is_none());
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn pair_errors() {
        for (text, line) in [
            ("0 2 1\n1 3\n", 2),
            ("0 2 x\n", 1),
            ("0\n", 1),
            ("0 a\n", 1),
        ] {
            match read_pairs(text.as_bytes()) {
                Err(FormatError::Malformed { line: l, .. }) => assert_eq!(l, line),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            read_pairs("2 2\n".as_bytes()),
            Err(FormatError::Pairs(ScoreError::SelfPair { .. }))
        ));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn score_lines() {
        let set = read_pairs("0 2\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_scores(
            &mut buf,
            &set,
            &ScoreVector::new("aa", vec![1.0 / 2f64.ln()]),
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "0 2 1.442695040889\n");
        let back: ScoreFile<f64> = read_scores(text.as_bytes()).unwrap();
        assert_eq!(back.pairs, set.pairs());
        assert_eq!(back.scores, vec![1.442695040889]);
        assert!(read_scores::<_, f64>("0 2 inf\n".as_bytes()).is_err());
    }
}
