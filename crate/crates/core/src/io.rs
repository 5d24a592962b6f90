//! Line-oriented text formats and DOT export.
//!
//! Split systems:
//!
//! ```text
//! # comment
//! TAXA a b c d e
//! SPLIT a b | c d e
//! ```
//!
//! Networks use `TAXA`, then `VERTEX id [taxon]` and `EDGE id id` lines.
//! Emitters are deterministic, so their output can be compared byte for byte.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::buneman::{BunemanGraph, Marguerite};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::split::{Split, SplitSystem};
use crate::taxa::TaxaSet;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn parse_taxa(line: usize, words: &[&str]) -> Result<Arc<TaxaSet>> {
    if words[0] != "TAXA" {
        return Err(parse_err(line, format!("expected TAXA, found `{}`", words[0])));
    }
    TaxaSet::new(words[1..].iter().copied())
        .map(Arc::new)
        .map_err(|e| parse_err(line, e.to_string()))
}

fn parse_split_words(line: usize, taxa: &TaxaSet, words: &[&str]) -> Result<Split> {
    let bar = words.iter().filter(|w| **w == "|").count();
    if bar != 1 {
        return Err(parse_err(line, "a split needs exactly one `|`"));
    }
    let mut sides = [FixedBitSet::with_capacity(taxa.len()), FixedBitSet::with_capacity(taxa.len())];
    let mut which = 0;
    for w in words {
        if *w == "|" {
            which = 1;
            continue;
        }
        let x = taxa.index_of(w).map_err(|e| parse_err(line, e.to_string()))?;
        if sides[0].contains(x) || sides[1].contains(x) {
            return Err(parse_err(line, format!("taxon `{w}` appears twice")));
        }
        sides[which].insert(x);
    }
    if sides[0].count_ones(..) + sides[1].count_ones(..) != taxa.len() {
        return Err(parse_err(line, "the two sides must cover every taxon"));
    }
    Split::from_bits(sides[0].clone()).map_err(|e| parse_err(line, e.to_string()))
}

/// Parses one split written as `a b | c d e` against `taxa`.
pub fn parse_split(taxa: &TaxaSet, text: &str) -> Result<Split> {
    let words: Vec<&str> = text.split_whitespace().collect();
    parse_split_words(1, taxa, &words)
}

pub fn parse_split_system(text: &str) -> Result<SplitSystem> {
    let mut lines = content_lines(text);
    let (l0, head) = lines.next().ok_or_else(|| parse_err(1, "empty input, expected TAXA"))?;
    let taxa = parse_taxa(l0, &head)?;
    let mut sys = SplitSystem::empty(taxa.clone());
    for (line, words) in lines {
        if words[0] != "SPLIT" {
            return Err(parse_err(line, format!("expected SPLIT, found `{}`", words[0])));
        }
        sys.insert(parse_split_words(line, &taxa, &words[1..])?);
    }
    Ok(sys)
}

fn names(taxa: &TaxaSet, bits: &FixedBitSet) -> String {
    bits.ones().map(|x| taxa.name(x)).collect::<Vec<_>>().join(" ")
}

fn taxa_line(taxa: &TaxaSet) -> String {
    format!("TAXA {}\n", taxa.names().join(" "))
}

/// Canonical text: splits in sorted order, the side holding the first taxon
/// written first.
pub fn emit_split_system(sigma: &SplitSystem) -> String {
    let taxa = sigma.taxa();
    let mut out = taxa_line(taxa);
    for s in sigma.iter() {
        let _ = writeln!(out, "SPLIT {}", split_text(taxa, s));
    }
    out
}

/// `a b | c d e`, the side holding the first taxon first.
pub fn split_text(taxa: &TaxaSet, s: &Split) -> String {
    format!("{} | {}", names(taxa, s.bits()), names(taxa, &s.complement()))
}

pub fn parse_network(text: &str) -> Result<Network> {
    let mut lines = content_lines(text);
    let (l0, head) = lines.next().ok_or_else(|| parse_err(1, "empty input, expected TAXA"))?;
    let taxa = parse_taxa(l0, &head)?;
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<Option<usize>> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut seen_edges = BTreeSet::new();
    for (line, words) in lines {
        match words[0] {
            "VERTEX" => {
                if !(2..=3).contains(&words.len()) {
                    return Err(parse_err(line, "expected `VERTEX id [taxon]`"));
                }
                if ids.contains_key(words[1]) {
                    return Err(parse_err(line, format!("duplicate vertex `{}`", words[1])));
                }
                let label = match words.get(2) {
                    Some(name) => Some(taxa.index_of(name).map_err(|e| parse_err(line, e.to_string()))?),
                    None => None,
                };
                ids.insert(words[1].to_string(), labels.len());
                labels.push(label);
                adj.push(Vec::new());
            }
            "EDGE" => {
                if words.len() != 3 {
                    return Err(parse_err(line, "expected `EDGE id id`"));
                }
                let end = |w: &str| {
                    ids.get(w)
                        .copied()
                        .ok_or_else(|| parse_err(line, format!("unknown vertex `{w}`")))
                };
                let (u, v) = (end(words[1])?, end(words[2])?);
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line, "duplicate edge"));
                }
                adj[u].push(v);
                if u != v {
                    adj[v].push(u);
                }
            }
            other => return Err(parse_err(line, format!("expected VERTEX or EDGE, found `{other}`"))),
        }
    }
    Network::from_parts(taxa, adj, labels)
}

pub fn emit_network(net: &Network) -> String {
    let taxa = net.taxa();
    let mut out = taxa_line(taxa);
    for v in 0..net.vertex_count() {
        match net.taxon_of(v) {
            Some(x) => {
                let _ = writeln!(out, "VERTEX {v} {}", taxa.name(x));
            }
            None => {
                let _ = writeln!(out, "VERTEX {v}");
            }
        }
    }
    for (u, v) in net.edges() {
        let _ = writeln!(out, "EDGE {u} {v}");
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT for a network: leaves labelled by taxa, cycle edges bold.
pub fn network_dot(net: &Network) -> String {
    let mut out = String::from("graph network {\n  node [shape=point];\n");
    for v in 0..net.vertex_count() {
        if let Some(x) = net.taxon_of(v) {
            let _ = writeln!(
                out,
                "  v{v} [shape=plaintext, label=\"{}\"];",
                dot_escape(net.taxa().name(x))
            );
        } else {
            let _ = writeln!(out, "  v{v};");
        }
    }
    for (u, v) in net.edges() {
        if net.cycle_of_edge(u, v).is_some() {
            let _ = writeln!(out, "  v{u} -- v{v} [style=bold, color=blue];");
        } else {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
    }
    out.push_str("}\n");
    out
}

/// The taxa whose Kuratowski map is each vertex.
fn leaf_names(g: &BunemanGraph) -> HashMap<usize, String> {
    let taxa = g.sigma().taxa();
    let mut by_vertex: HashMap<usize, Vec<&str>> = HashMap::new();
    for x in 0..taxa.len() {
        by_vertex.entry(g.leaf(x)).or_default().push(taxa.name(x));
    }
    by_vertex.into_iter().map(|(v, n)| (v, n.join(","))).collect()
}

/// DOT for a Buneman graph: Kuratowski maps labelled by their taxa,
/// external marguerite vertices filled.
pub fn buneman_dot(g: &BunemanGraph, marguerites: &[Marguerite]) -> String {
    let external: BTreeSet<usize> = marguerites.iter().flat_map(Marguerite::external).collect();
    let leaves = leaf_names(g);
    let mut out = String::from("graph buneman {\n  node [shape=point];\n");
    for v in 0..g.vertex_count() {
        let mut attrs = Vec::new();
        if let Some(name) = leaves.get(&v) {
            attrs.push(format!("shape=plaintext, label=\"{}\"", dot_escape(name)));
        } else if external.contains(&v) {
            attrs.push("shape=circle, width=0.12, style=filled, fillcolor=black, label=\"\"".into());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  b{v};");
        } else {
            let _ = writeln!(out, "  b{v} [{}];", attrs.join(", "));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  b{u} -- b{v};");
    }
    out.push_str("}\n");
    out
}

/// Text listing of a Buneman graph: splits in bit order, vertices as bit
/// strings (1 = side with the first taxon), edges with their split, blocks.
pub fn emit_buneman(g: &BunemanGraph) -> String {
    let taxa = g.sigma().taxa();
    let mut out = format!(
        "# {} vertices, {} edges, {} blocks\n",
        g.vertex_count(),
        g.edge_count(),
        g.blocks().len()
    );
    out.push_str(&taxa_line(taxa));
    for s in g.splits() {
        let _ = writeln!(out, "SPLIT {} | {}", names(taxa, s.bits()), names(taxa, &s.complement()));
    }
    let leaves = leaf_names(g);
    for v in 0..g.vertex_count() {
        let bits: String = (0..g.splits().len())
            .map(|i| if g.vertex(v).canonical(i) { '1' } else { '0' })
            .collect();
        match leaves.get(&v) {
            Some(name) => {
                let _ = writeln!(out, "VERTEX {v} {bits} {name}");
            }
            None => {
                let _ = writeln!(out, "VERTEX {v} {bits}");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "EDGE {u} {v} {}", g.edge_split(u, v).expect("edge"));
    }
    for (b, block) in g.blocks().iter().enumerate() {
        let vs: Vec<String> = block.vertices.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "BLOCK {b} component {} : {}", block.component, vs.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_round_trip() {
        let sys = parse_split_system("# demo\nTAXA 1 2 3 4 5\nSPLIT 1 2 | 3 4 5\n\nSPLIT 5 | 1 2 3 4 # trailing\n").unwrap();
        assert_eq!(sys.len(), 2);
        let text = emit_split_system(&sys);
        assert_eq!(text, "TAXA 1 2 3 4 5\nSPLIT 1 2 | 3 4 5\nSPLIT 1 2 3 4 | 5\n");
        assert_eq!(parse_split_system(&text).unwrap(), sys);
    }

    #[test]
    fn split_errors_carry_line_numbers() {
        let bad = |t: &str| match parse_split_system(t) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(bad("TAXA 1 2 3\nSPLIT 1 2 | 2 3").0, 2);
        assert_eq!(bad("TAXA 1 2 3\n\nSPLIT 1 | 2 9").0, 3);
        assert!(bad("TAXA 1 2 3\nSPLIT 1 2 3").1.contains('|'));
        assert!(bad("TAXA 1 2 3\nSPLIT 1 | 2").1.contains("cover"));
        assert!(bad("TAXA 1 1 3").1.contains("duplicate"));
        assert_eq!(bad("SPLIT 1 | 2 3").0, 1);
        assert!(bad("TAXA 1 2 3\nSPLIT | 1 2 3").1.contains("proper subset"));
    }

    #[test]
    fn network_round_trip() {
        let taxa = Arc::new(TaxaSet::numbered(4).unwrap());
        let net = Network::cycle_with_leaves(taxa, &[0, 1, 2, 3]).unwrap();
        let text = emit_network(&net);
        let back = parse_network(&text).unwrap();
        assert_eq!(emit_network(&back), text);
        assert!(back.is_isomorphic(&net).unwrap());
    }

    #[test]
    fn network_parse_errors() {
        let t = "TAXA a b c\nVERTEX h\nVERTEX x a\nVERTEX y b\nEDGE h x\nEDGE h y\nEDGE h z\n";
        assert!(matches!(parse_network(t), Err(Error::Parse { line: 7, .. })));
        let t = "TAXA a b c\nVERTEX h\nVERTEX x a\nVERTEX y b\nEDGE h x\nEDGE h y\n";
        assert!(matches!(parse_network(t), Err(Error::Network(_))));
    }

    #[test]
    fn dot_of_star() {
        let taxa = Arc::new(TaxaSet::numbered(5).unwrap());
        let net = Network::star(taxa).unwrap();
        let dot = network_dot(&net);
        assert_eq!(dot.matches("shape=plaintext").count(), 5);
        assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count(), 6);
        assert_eq!(dot, network_dot(&net));
    }
}
