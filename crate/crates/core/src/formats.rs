//! JSON (and CSV) file formats.
//!
//! * metric: `{"n": 3, "dist": [["0","1","1/2"], ...]}`, entries are
//!   integers or `p/q` strings (bare JSON integers are accepted on input)
//! * graph: `{"n": 4, "edges": [[0,1], ...]}`
//! * hypergraph: `{"n": 6, "r": 3, "edges": [[0,1,2], ...]}`, edges sorted,
//!   written in colex order
//! * certificate: `{"n","r","k","base": [...], "steps": [{"T": [...], "S": [...]}]}`
//! * order: `{"order": [...]}`
//!
//! The CSV matrix form is a first line holding `n`, then `n` rows of
//! comma-separated entries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{HypergraphError, UniformHypergraph};
use crate::metric::{validate_metric, DistanceMatrix, Graph, MetricError};
use crate::saturation::{ClosureCertificate, ClosureStep};
use crate::Rational;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("declared n = {declared} but found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

pub fn parse_rational(text: &str) -> Result<Rational, FormatError> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse::<num_bigint::BigInt>();
            let q = q.trim().parse::<num_bigint::BigInt>();
            match (p, q) {
                (Ok(p), Ok(q)) if q != 0.into() => Some(Rational::new(p, q)),
                _ => None,
            }
        }
        None => t.parse::<num_bigint::BigInt>().ok().map(Rational::from_integer),
    };
    parsed.ok_or_else(|| FormatError::Rational(text.to_string()))
}

/// Canonical text: `p` for integers, otherwise reduced `p/q`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    dist: Vec<Vec<Entry>>,
}

impl Serialize for DistanceMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixFile {
            n: self.n(),
            dist: self
                .rows()
                .map(|row| row.iter().map(|q| Entry::Text(format_rational(q))).collect())
                .collect(),
        }
        .serialize(s)
    }
}

fn matrix_from_rows(declared: usize, rows: Vec<Vec<Rational>>, validate: bool) -> Result<DistanceMatrix, FormatError> {
    if rows.len() != declared {
        return Err(FormatError::CountMismatch { declared, found: rows.len() });
    }
    let d = DistanceMatrix::from_rows(rows)?;
    if validate {
        validate_metric(&d)?;
    }
    Ok(d)
}

/// Parses the JSON matrix format. With `validate`, non-metric input is
/// rejected with the witnessing indices.
pub fn parse_matrix(text: &str, validate: bool) -> Result<DistanceMatrix, FormatError> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let rows = file
        .dist
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Text(t) => parse_rational(&t),
                    Entry::Int(i) => Ok(Rational::from_integer(i.into())),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    matrix_from_rows(file.n, rows, validate)
}

pub fn write_matrix(d: &DistanceMatrix) -> String {
    serde_json::to_string(d).expect("matrix serializes")
}

pub fn parse_matrix_csv(text: &str, validate: bool) -> Result<DistanceMatrix, FormatError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| FormatError::Csv("empty input".into()))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| FormatError::Csv(format!("header {header:?} is not a point count")))?;
    let rows = lines
        .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    matrix_from_rows(n, rows, validate)
}

pub fn write_matrix_csv(d: &DistanceMatrix) -> String {
    let mut out = format!("{}\n", d.n());
    for row in d.rows() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    Ok(Graph::new(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))?)
}

pub fn write_graph(g: &Graph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for UniformHypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HypergraphFile { n: self.n(), r: self.r(), edges: self.edge_list() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniformHypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = HypergraphFile::deserialize(d)?;
        UniformHypergraph::from_edges(file.n, file.r, file.edges).map_err(serde::de::Error::custom)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_hypergraph(h: &UniformHypergraph) -> String {
    serde_json::to_string(h).expect("hypergraph serializes")
}

#[derive(Serialize, Deserialize)]
struct StepFile {
    #[serde(rename = "T")]
    added: Vec<usize>,
    #[serde(rename = "S")]
    witness: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    n: usize,
    r: usize,
    k: usize,
    base: Vec<Vec<usize>>,
    steps: Vec<StepFile>,
}

impl Serialize for ClosureCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CertificateFile {
            n: self.base.n(),
            r: self.base.r(),
            k: self.k,
            base: self.base.edge_list(),
            steps: self
                .steps
                .iter()
                .map(|st| StepFile { added: st.added.clone(), witness: st.witness.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClosureCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = CertificateFile::deserialize(d)?;
        let base = UniformHypergraph::from_edges(file.n, file.r, file.base).map_err(serde::de::Error::custom)?;
        Ok(ClosureCertificate {
            base,
            k: file.k,
            steps: file
                .steps
                .into_iter()
                .map(|st| ClosureStep { added: st.added, witness: st.witness })
                .collect(),
        })
    }
}

pub fn parse_certificate(text: &str) -> Result<ClosureCertificate, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_certificate(c: &ClosureCertificate) -> String {
    serde_json::to_string(c).expect("certificate serializes")
}
