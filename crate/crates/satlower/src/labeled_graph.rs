//! Vertex-labeled directed graphs over the alphabet {0, 1, $}, pattern
//! strings, a layered reference matcher, a word-packed variant, a
//! brute-force walk oracle, and the graph/pattern file codecs.
//!
//! An occurrence of pattern P is a walk v_1..v_|P| with label(v_k) = P[k]
//! for every k. Vertex revisits are allowed; on the acyclic graphs the
//! reductions emit, walks and simple paths decide the same question.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{self, BufRead, Write};
use thiserror::Error;

pub const ALPHABET: [u8; 3] = *b"01$";

/// Caps for [`oracle_pmlg`], which enumerates walks explicitly.
pub const ORACLE_MAX_VERTICES: usize = 16;
pub const ORACLE_MAX_PATTERN: usize = 16;

fn label_index(label: u8) -> Option<usize> {
    ALPHABET.iter().position(|&c| c == label)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("label '{0}' is outside the alphabet {{0, 1, $}}")]
    BadLabel(char),
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop on vertex {0} rejected")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -> {1} rejected")]
    DuplicateEdge(usize, usize),
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("graph has {vertices} vertices / pattern length {pattern}, oracle caps are {max_vertices}/{max_pattern}")]
    OracleCapExceeded {
        vertices: usize,
        pattern: usize,
        max_vertices: usize,
        max_pattern: usize,
    },
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Directed graph with one alphabet character per vertex. No duplicate
/// edges, no self-loops; cycles are allowed (the matchers walk).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<u8>,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Default for LabeledGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl LabeledGraph {
    pub fn new() -> LabeledGraph {
        LabeledGraph { labels: Vec::new(), adj: Vec::new(), edge_count: 0 }
    }

    pub fn add_vertex(&mut self, label: u8) -> Result<u32, GraphError> {
        if label_index(label).is_none() {
            return Err(GraphError::BadLabel(label as char));
        }
        self.labels.push(label);
        self.adj.push(Vec::new());
        Ok((self.labels.len() - 1) as u32)
    }

    pub fn add_edge(&mut self, from: u32, to: u32) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for v in [from, to] {
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v as usize, n));
            }
        }
        if from == to {
            return Err(GraphError::SelfLoop(from as usize));
        }
        if self.adj[from as usize].contains(&to) {
            return Err(GraphError::DuplicateEdge(from as usize, to as usize));
        }
        self.adj[from as usize].push(to);
        self.edge_count += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: u32) -> u8 {
        self.labels[v as usize]
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u as u32, v)))
    }

    /// Kahn topological check; the reduction outputs must be acyclic.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.edges() {
            indeg[v as usize] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0usize;
        while let Some(u) = queue.pop() {
            seen += 1;
            for &v in &self.adj[u] {
                indeg[v as usize] -= 1;
                if indeg[v as usize] == 0 {
                    queue.push(v as usize);
                }
            }
        }
        seen == n
    }

    /// Largest in-degree + out-degree over all vertices.
    pub fn max_total_degree(&self) -> usize {
        let n = self.vertex_count();
        let mut deg = vec![0usize; n];
        for (u, v) in self.edges() {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// Nonempty string over {0, 1, $}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    chars: Vec<u8>,
}

impl Pattern {
    pub fn new(text: &str) -> Result<Pattern, GraphError> {
        Pattern::from_bytes(text.as_bytes().to_vec())
    }

    pub fn from_bytes(chars: Vec<u8>) -> Result<Pattern, GraphError> {
        if chars.is_empty() {
            return Err(GraphError::EmptyPattern);
        }
        for &c in &chars {
            if label_index(c).is_none() {
                return Err(GraphError::BadLabel(c as char));
            }
        }
        Ok(Pattern { chars })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn char_at(&self, k: usize) -> u8 {
        self.chars[k]
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.chars).expect("alphabet is ASCII")
    }
}

/// Layered reachability: frontier of walk endpoints per pattern position.
/// Work is at most one edge scan per (edge, position), so |E| * |P|.
pub fn solve_pmlg(graph: &LabeledGraph, pattern: &Pattern) -> bool {
    solve_pmlg_instrumented(graph, pattern).0
}

/// Also reports how many edge scans the run used (tests pin the
/// |E| * |P| budget with it).
pub fn solve_pmlg_instrumented(graph: &LabeledGraph, pattern: &Pattern) -> (bool, u64) {
    let n = graph.vertex_count();
    let mut frontier = vec![false; n];
    let mut any = false;
    for (v, reached) in frontier.iter_mut().enumerate() {
        if graph.labels[v] == pattern.char_at(0) {
            *reached = true;
            any = true;
        }
    }
    let mut edge_scans = 0u64;
    for k in 1..pattern.len() {
        if !any {
            return (false, edge_scans);
        }
        let want = pattern.char_at(k);
        let mut next = vec![false; n];
        any = false;
        for (v, _) in frontier.iter().enumerate().filter(|&(_, &live)| live) {
            for &w in &graph.adj[v] {
                edge_scans += 1;
                if graph.labels[w as usize] == want {
                    next[w as usize] = true;
                    any = true;
                }
            }
        }
        frontier = next;
    }
    (any, edge_scans)
}

/// Same layered sweep with frontiers packed into u64 words and a
/// precomputed per-vertex out-neighbor mask; decisions are identical.
pub fn solve_pmlg_bitparallel(graph: &LabeledGraph, pattern: &Pattern) -> bool {
    let n = graph.vertex_count();
    let words = n.div_ceil(64);
    let mut label_mask = vec![vec![0u64; words]; ALPHABET.len()];
    for v in 0..n {
        let li = label_index(graph.labels[v]).expect("graph labels are validated");
        label_mask[li][v / 64] |= 1 << (v % 64);
    }
    let mut out_mask = vec![0u64; n * words];
    for (u, v) in graph.edges() {
        out_mask[u as usize * words + v as usize / 64] |= 1 << (v % 64);
    }

    let mut frontier = label_mask[label_index(pattern.char_at(0)).unwrap()].clone();
    for k in 1..pattern.len() {
        if frontier.iter().all(|&w| w == 0) {
            return false;
        }
        let mut next = vec![0u64; words];
        for (wi, &word) in frontier.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let v = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let row = &out_mask[v * words..(v + 1) * words];
                for (nw, &r) in next.iter_mut().zip(row) {
                    *nw |= r;
                }
            }
        }
        let want = &label_mask[label_index(pattern.char_at(k)).unwrap()];
        for (nw, &m) in next.iter_mut().zip(want) {
            *nw &= m;
        }
        frontier = next;
    }
    frontier.iter().any(|&w| w != 0)
}

/// Ground truth by explicit walk enumeration; exponential, hence the caps.
pub fn oracle_pmlg(graph: &LabeledGraph, pattern: &Pattern) -> Result<bool, GraphError> {
    if graph.vertex_count() > ORACLE_MAX_VERTICES || pattern.len() > ORACLE_MAX_PATTERN {
        return Err(GraphError::OracleCapExceeded {
            vertices: graph.vertex_count(),
            pattern: pattern.len(),
            max_vertices: ORACLE_MAX_VERTICES,
            max_pattern: ORACLE_MAX_PATTERN,
        });
    }
    fn walk(graph: &LabeledGraph, pattern: &Pattern, v: u32, k: usize) -> bool {
        if graph.label(v) != pattern.char_at(k) {
            return false;
        }
        if k + 1 == pattern.len() {
            return true;
        }
        graph.out_neighbors(v).iter().any(|&w| walk(graph, pattern, w, k + 1))
    }
    Ok((0..graph.vertex_count() as u32).any(|v| walk(graph, pattern, v, 0)))
}

/// Graph file: `PMLG 1` header, `V <count>` + one label per line, then
/// `E <count>` + one `<from> <to>` pair per line.
pub fn write_graph<W: Write>(graph: &LabeledGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "PMLG 1")?;
    writeln!(out, "V {}", graph.vertex_count())?;
    for v in 0..graph.vertex_count() {
        writeln!(out, "{}", graph.labels[v] as char)?;
    }
    writeln!(out, "E {}", graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_graph<R: BufRead>(input: R) -> Result<LabeledGraph, CodecError> {
    let mut lines = input.lines().enumerate();
    let mut next_line = |what: &str| -> Result<(usize, String), CodecError> {
        match lines.next() {
            Some((i, line)) => Ok((i + 1, line?)),
            None => Err(CodecError::Malformed {
                line: 0,
                message: format!("unexpected end of file, expected {what}"),
            }),
        }
    };

    let (lno, header) = next_line("header")?;
    if header.trim_end() != "PMLG 1" {
        return Err(CodecError::Malformed {
            line: lno,
            message: format!("expected header 'PMLG 1', found '{header}'"),
        });
    }
    let parse_count = |lno: usize, line: &str, tag: &str| -> Result<usize, CodecError> {
        let rest = line
            .trim_end()
            .strip_prefix(tag)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| CodecError::Malformed {
                line: lno,
                message: format!("expected '{tag} <count>', found '{line}'"),
            })?;
        rest.parse().map_err(|_| CodecError::Malformed {
            line: lno,
            message: format!("bad count '{rest}'"),
        })
    };

    let (lno, vline) = next_line("vertex count")?;
    let vcount = parse_count(lno, &vline, "V")?;
    let mut graph = LabeledGraph::new();
    for _ in 0..vcount {
        let (lno, line) = next_line("a vertex label")?;
        let label = line.trim_end();
        if label.len() != 1 {
            return Err(CodecError::Malformed {
                line: lno,
                message: format!("expected a single label character, found '{label}'"),
            });
        }
        graph
            .add_vertex(label.as_bytes()[0])
            .map_err(|source| CodecError::Graph { line: lno, source })?;
    }
    let (lno, eline) = next_line("edge count")?;
    let ecount = parse_count(lno, &eline, "E")?;
    for _ in 0..ecount {
        let (lno, line) = next_line("an edge")?;
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(CodecError::Malformed {
                line: lno,
                message: format!("expected '<from> <to>', found '{line}'"),
            });
        };
        let parse_v = |tok: &str| -> Result<u32, CodecError> {
            tok.parse().map_err(|_| CodecError::Malformed {
                line: lno,
                message: format!("bad vertex id '{tok}'"),
            })
        };
        graph
            .add_edge(parse_v(a)?, parse_v(b)?)
            .map_err(|source| CodecError::Graph { line: lno, source })?;
    }
    if let Some((i, line)) = lines.next() {
        let line = line?;
        if !line.trim().is_empty() {
            return Err(CodecError::Malformed {
                line: i + 1,
                message: format!("trailing content '{line}'"),
            });
        }
    }
    Ok(graph)
}

/// Pattern file: a single line over {0, 1, $}.
pub fn write_pattern<W: Write>(pattern: &Pattern, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", pattern.as_str())
}

pub fn read_pattern<R: BufRead>(mut input: R) -> Result<Pattern, CodecError> {
    let mut line = String::new();
    input.read_line(&mut line)?;
    Pattern::new(line.trim_end_matches(['\n', '\r'])).map_err(|source| CodecError::Graph {
        line: 1,
        source,
    })
}

/// Seeded random graph for differential tests: `num_e` distinct
/// non-self-loop edges, labels uniform over the alphabet.
pub fn random_graph(num_v: usize, num_e: usize, seed: u64) -> LabeledGraph {
    assert!(num_v >= 2, "need at least two vertices for edges");
    let max_edges = num_v * (num_v - 1);
    assert!(num_e <= max_edges, "at most v*(v-1) directed edges");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = LabeledGraph::new();
    for _ in 0..num_v {
        let label = ALPHABET[rng.gen_range(0..ALPHABET.len())];
        graph.add_vertex(label).unwrap();
    }
    let mut added = 0;
    while added < num_e {
        let from = rng.gen_range(0..num_v) as u32;
        let to = rng.gen_range(0..num_v) as u32;
        if from != to && graph.add_edge(from, to).is_ok() {
            added += 1;
        }
    }
    graph
}

/// Seeded random pattern, biased toward 0/1 (the '$' share of reduction
/// patterns is small).
pub fn random_pattern(len: usize, seed: u64) -> Pattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chars = (0..len)
        .map(|_| match rng.gen_range(0..8) {
            0 => b'$',
            k if k % 2 == 1 => b'1',
            _ => b'0',
        })
        .collect();
    Pattern::from_bytes(chars).unwrap()
}
