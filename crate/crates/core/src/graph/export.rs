use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{LevelGraph, Manifest};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// JSON form of a graph, schema version 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema: u32,
    pub manifest: Manifest,
    pub euler_char_times_2: i64,
    #[serde(flatten)]
    pub graph: LevelGraph,
}

impl GraphDocument {
    pub fn new(graph: LevelGraph, manifest: Manifest) -> Self {
        GraphDocument {
            schema: 1,
            euler_char_times_2: graph.euler_char_times_2(),
            manifest,
            graph,
        }
    }
}

pub fn export_graph(g: &LevelGraph, manifest: &Manifest, format: ExportFormat) -> Result<Vec<u8>> {
    let b = &g.brandt;
    let n = b.rows();
    let mut out = String::new();
    match format {
        ExportFormat::Json => {
            let doc = GraphDocument::new(g.clone(), manifest.clone());
            out = serde_json::to_string_pretty(&doc)?;
            out.push('\n');
        }
        ExportFormat::Csv => {
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| b.get(i, j).to_string()).collect();
                writeln!(out, "{}", row.join(",")).unwrap();
            }
        }
        ExportFormat::Dot => {
            writeln!(out, "graph X_{}_{}_{} {{", g.p, g.q, g.n).unwrap();
            for v in &g.vertices {
                writeln!(out, "  v{} [label=\"j={} C={}\"];", v.index, v.key.j, kernel_label(v)).unwrap();
            }
            for i in 0..n {
                for j in i..n {
                    let m: u64 = b.get(i, j).try_into().unwrap_or(0);
                    for _ in 0..m {
                        writeln!(out, "  v{i} -- v{j};").unwrap();
                    }
                }
            }
            out.push_str("}\n");
        }
    }
    Ok(out.into_bytes())
}

fn kernel_label(v: &super::Vertex) -> String {
    let coeffs: Vec<String> = v.key.kernel.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", coeffs.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn graph(q: u64, p: u64, n: u64) -> (LevelGraph, Manifest) {
        let tower = FieldTower::new(q, 0).unwrap();
        let g = LevelGraph::build(&tower, p, n).unwrap();
        let m = g.manifest(&tower);
        (g, m)
    }

    #[test]
    fn csv_and_dot_of_one_vertex() {
        let (g, m) = graph(13, 2, 1);
        assert_eq!(export_graph(&g, &m, ExportFormat::Csv).unwrap(), b"3\n");
        let dot = String::from_utf8(export_graph(&g, &m, ExportFormat::Dot).unwrap()).unwrap();
        assert_eq!(dot.matches("v0 -- v0;").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let (g, m) = graph(13, 3, 2);
        let bytes = export_graph(&g, &m, ExportFormat::Json).unwrap();
        let doc: GraphDocument = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(doc.schema, 1);
        assert_eq!(doc.graph, g);
        assert_eq!(doc.manifest, m);
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["N"], 2);
        assert_eq!(v["euler_char_times_2"], g.euler_char_times_2());
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
    }
}
