//! Clutter files.
//!
//! Text form, one clutter per file:
//!
//! ```text
//! # qpq p=1 q=1 f=caseI:all
//! vertices: p1 p1* q1 q1* r r*
//! edge: p1 q1 r
//! edge: p1* q1* r
//! ```
//!
//! `#` starts a comment; a comment of the form `# qpq p=.. q=.. f=..` records
//! how a `Q_pq^F` member was generated. The JSON mirror is
//! `{"vertices": [...], "edges": [[...], ...], "descriptor": {...}}` with the
//! descriptor optional.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clutter::{Clutter, Hypergraph, VertexUniverse};
use crate::error::{Error, Result};
use crate::qpq::{generate_qpq_f, FSpec, QpqClutter};
use crate::vset::VSet;

/// Generation metadata carried alongside a clutter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenDescriptor {
    pub p: usize,
    pub q: usize,
    pub f: String,
}

impl GenDescriptor {
    pub fn of(g: &QpqClutter) -> Self {
        GenDescriptor {
            p: g.descriptor.p,
            q: g.descriptor.q,
            f: g.fspec.to_string(),
        }
    }

    fn comment(&self) -> String {
        format!("# qpq p={} q={} f={}", self.p, self.q, self.f)
    }

    fn from_comment(body: &str) -> Option<Self> {
        let mut it = body.split_whitespace();
        if it.next()? != "qpq" {
            return None;
        }
        let (mut p, mut q, mut f) = (None, None, None);
        for tok in it {
            let (k, v) = tok.split_once('=')?;
            match k {
                "p" => p = v.parse().ok(),
                "q" => q = v.parse().ok(),
                "f" => f = Some(v.to_string()),
                _ => {}
            }
        }
        Some(GenDescriptor {
            p: p?,
            q: q?,
            f: f?,
        })
    }
}

/// How to treat edge sets that violate the clutter invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LoadMode {
    /// Reject inclusions and duplicates.
    #[default]
    Strict,
    /// Accept any hypergraph and keep its minimal edges.
    Hypergraph,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub clutter: Clutter,
    pub descriptor: Option<GenDescriptor>,
}

impl Document {
    pub fn new(clutter: Clutter) -> Self {
        Document {
            clutter,
            descriptor: None,
        }
    }

    pub fn from_qpq(g: &QpqClutter) -> Self {
        Document {
            clutter: g.clutter.clone(),
            descriptor: Some(GenDescriptor::of(g)),
        }
    }

    /// Regenerates the family member named by the descriptor and checks that
    /// it matches the stored edges.
    pub fn qpq(&self) -> Result<QpqClutter> {
        let d = self
            .descriptor
            .as_ref()
            .ok_or_else(|| Error::PreconditionViolated("no qpq descriptor".into()))?;
        let f: FSpec = if d.f.starts_with("custom") {
            let base = crate::qpq::QpqDescriptor::new(d.p, d.q)?.base_edges();
            FSpec::Custom(
                self.clutter
                    .edges()
                    .iter()
                    .copied()
                    .filter(|e| !base.contains(e))
                    .collect(),
            )
        } else {
            d.f.parse()?
        };
        let g = generate_qpq_f(d.p, d.q, &f)?;
        if g.clutter != self.clutter {
            return Err(Error::PreconditionViolated(
                "edges differ from the generated family member".into(),
            ));
        }
        Ok(g)
    }
}

fn build(names: Vec<String>, edges: Vec<VSet>, mode: LoadMode) -> Result<Clutter> {
    let u = Arc::new(VertexUniverse::new(names)?);
    match mode {
        LoadMode::Strict => Clutter::with_universe(u, edges),
        LoadMode::Hypergraph => Ok(Hypergraph::with_universe(u, edges)?.minimalize()),
    }
}

pub fn parse_text(src: &str, mode: LoadMode) -> Result<Document> {
    let mut names: Option<Vec<String>> = None;
    let mut raw_edges: Vec<(usize, Vec<String>)> = Vec::new();
    let mut descriptor = None;
    for (i, line) in src.lines().enumerate() {
        let lineno = i + 1;
        let (content, comment) = match line.split_once('#') {
            Some((a, b)) => (a, Some(b)),
            None => (line, None),
        };
        if let Some(d) = comment.and_then(GenDescriptor::from_comment) {
            descriptor = Some(d);
        }
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(':').ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected `vertices:` or `edge:`, got `{content}`"),
        })?;
        let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "vertices" => {
                if names.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "second `vertices:` line".into(),
                    });
                }
                names = Some(labels);
            }
            "edge" => {
                if names.is_none() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "`edge:` before `vertices:`".into(),
                    });
                }
                raw_edges.push((lineno, labels));
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let names = names.ok_or(Error::Parse {
        line: 0,
        message: "missing `vertices:` line".into(),
    })?;
    let u = VertexUniverse::new(names.clone())?;
    let edges = raw_edges
        .iter()
        .map(|(line, labels)| {
            u.set_of(labels).map_err(|e| Error::Parse {
                line: *line,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Document {
        clutter: build(names, edges, mode)?,
        descriptor,
    })
}

pub fn to_text(doc: &Document) -> String {
    let c = &doc.clutter;
    let mut out = String::new();
    if let Some(d) = &doc.descriptor {
        out.push_str(&d.comment());
        out.push('\n');
    }
    out.push_str("vertices:");
    for n in c.universe().names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for &e in c.edges() {
        out.push_str("edge:");
        for l in c.universe().labels_of(e) {
            out.push(' ');
            out.push_str(&l);
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    descriptor: Option<GenDescriptor>,
}

pub fn parse_json(src: &str, mode: LoadMode) -> Result<Document> {
    let j: JsonDoc = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
    let u = VertexUniverse::new(j.vertices.clone())?;
    let edges = j
        .edges
        .iter()
        .map(|e| u.set_of(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Document {
        clutter: build(j.vertices, edges, mode)?,
        descriptor: j.descriptor,
    })
}

pub fn to_json(doc: &Document) -> String {
    let c = &doc.clutter;
    let j = JsonDoc {
        vertices: c.universe().names().to_vec(),
        edges: c.edges().iter().map(|&e| c.universe().labels_of(e)).collect(),
        descriptor: doc.descriptor.clone(),
    };
    serde_json::to_string_pretty(&j).expect("plain data serializes")
}

/// Picks the parser by content: JSON if the first non-blank character is `{`.
pub fn parse_auto(src: &str, mode: LoadMode) -> Result<Document> {
    if src.trim_start().starts_with('{') {
        parse_json(src, mode)
    } else {
        parse_text(src, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpq::generate_qpq_f;

    #[test]
    fn text_basic() {
        let d = parse_text("vertices: a b c\n# note\nedge: a b\nedge: b c  # trailing\n", LoadMode::Strict).unwrap();
        assert_eq!(d.clutter.edge_count(), 2);
        assert!(d.descriptor.is_none());
    }

    #[test]
    fn inclusion_rejected_unless_hypergraph() {
        let src = "vertices: a b\nedge: a\nedge: a b\n";
        assert!(matches!(
            parse_text(src, LoadMode::Strict),
            Err(Error::InclusionViolation(..))
        ));
        let d = parse_text(src, LoadMode::Hypergraph).unwrap();
        assert_eq!(d.clutter.edges(), &[VSet::singleton(0)]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(
            parse_text("vertices: a\nedge: z\n", LoadMode::Strict),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("edge: a\n", LoadMode::Strict),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_text("bogus\n", LoadMode::Strict),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        let g = generate_qpq_f(1, 1, &FSpec::case_i_all()).unwrap();
        let doc = Document::from_qpq(&g);
        let t = parse_text(&to_text(&doc), LoadMode::Strict).unwrap();
        assert_eq!(t.descriptor, doc.descriptor);
        assert_eq!(t.clutter, g.clutter);
        assert_eq!(t.qpq().unwrap().clutter, g.clutter);
        let j = parse_json(&to_json(&doc), LoadMode::Strict).unwrap();
        assert_eq!(j.descriptor, doc.descriptor);
        assert_eq!(j.clutter.edges(), g.clutter.edges());
    }

    #[test]
    fn auto_detects_json() {
        let d = parse_auto(r#"{"vertices":["x","y"],"edges":[["x","y"]]}"#, LoadMode::Strict).unwrap();
        assert_eq!(d.clutter.edge_count(), 1);
    }
}
