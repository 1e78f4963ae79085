//! Line-based text format for graphs, morphisms, textiles, shifts, rank-two
//! data, cellular automata and pattern shifts.
//!
//! ```text
//! graph G
//! vertex u
//! edge a u u
//! morphism p : G -> H
//! vmap u w
//! emap a x
//! textile T : G H p q
//! shift X
//! alphabet 0 1
//! A
//! 1 1
//! 1 0
//! B
//! 1 1
//! 1 0
//! rank2 R : G1 G2
//! theta a x -> y b
//! ca C : alphabet 0 1
//! C
//! 1 1
//! 1 1
//! window 2
//! rule 01 1
//! pattern P
//! alphabet 0 1
//! window 0,0 1,0 0,1
//! allow 000
//! ```
//!
//! `#` starts a comment. A header line (`graph`, `morphism`, `textile`,
//! `shift`, `rank2`, `ca`, `pattern`) opens a stanza; the lines after it up
//! to the next header belong to it. Names are unique across the document and
//! must be declared before they are referenced. Matrix rows are either
//! whitespace-separated entries or a single run of digits. Words (CA rules,
//! patterns) are concatenated symbols when every symbol is one character,
//! otherwise comma-separated.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphMorphism};
use crate::shift2d::{CellularAutomaton, MatrixShift, PatternShift2D, RankTwoData};
use crate::textile::TextileSystem;
use crate::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Graph(Arc<DirectedGraph>),
    Morphism {
        domain: String,
        codomain: String,
        value: GraphMorphism,
    },
    Textile {
        g: String,
        h: String,
        p: String,
        q: String,
        value: TextileSystem,
    },
    Shift(MatrixShift),
    RankTwo {
        g1: String,
        g2: String,
        value: RankTwoData,
    },
    Automaton(CellularAutomaton),
    Pattern(PatternShift2D),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Graph(_) => "graph",
            Object::Morphism { .. } => "morphism",
            Object::Textile { .. } => "textile",
            Object::Shift(_) => "shift",
            Object::RankTwo { .. } => "rank2",
            Object::Automaton(_) => "ca",
            Object::Pattern(_) => "pattern",
        }
    }
}

/// Named objects in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputDocument {
    entries: Vec<(String, Object)>,
}

fn lookup_error(message: String) -> Error {
    Error::Reference { line: 0, message }
}

impl InputDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(String, Object)] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    /// Appends an object; references must name earlier objects of the right kind.
    pub fn push(&mut self, name: impl Into<String>, object: Object) -> Result<()> {
        let name = name.into();
        check_token(&name).map_err(|message| lookup_error(message))?;
        if self.get(&name).is_some() {
            return Err(Error::Duplicate { kind: "object", name });
        }
        let refs: Vec<(&str, &str)> = match &object {
            Object::Morphism { domain, codomain, .. } => vec![(domain, "graph"), (codomain, "graph")],
            Object::Textile { g, h, p, q, .. } => {
                vec![(g, "graph"), (h, "graph"), (p, "morphism"), (q, "morphism")]
            }
            Object::RankTwo { g1, g2, .. } => vec![(g1, "graph"), (g2, "graph")],
            _ => Vec::new(),
        };
        for (r, kind) in refs {
            match self.get(r) {
                Some(o) if o.kind() == kind => {}
                _ => return Err(lookup_error(format!("`{r}` is not a declared {kind}"))),
            }
        }
        self.entries.push((name, object));
        Ok(())
    }

    fn typed<'a, T>(&'a self, name: &str, kind: &str, pick: impl Fn(&'a Object) -> Option<T>) -> Result<T> {
        let o = self
            .get(name)
            .ok_or_else(|| lookup_error(format!("no object named `{name}`")))?;
        pick(o).ok_or_else(|| lookup_error(format!("`{name}` is a {}, not a {kind}", o.kind())))
    }

    pub fn graph(&self, name: &str) -> Result<&Arc<DirectedGraph>> {
        self.typed(name, "graph", |o| match o {
            Object::Graph(g) => Some(g),
            _ => None,
        })
    }

    pub fn morphism(&self, name: &str) -> Result<&GraphMorphism> {
        self.typed(name, "morphism", |o| match o {
            Object::Morphism { value, .. } => Some(value),
            _ => None,
        })
    }

    pub fn textile(&self, name: &str) -> Result<&TextileSystem> {
        self.typed(name, "textile", |o| match o {
            Object::Textile { value, .. } => Some(value),
            _ => None,
        })
    }

    pub fn shift(&self, name: &str) -> Result<&MatrixShift> {
        self.typed(name, "shift", |o| match o {
            Object::Shift(x) => Some(x),
            _ => None,
        })
    }

    pub fn rank_two(&self, name: &str) -> Result<&RankTwoData> {
        self.typed(name, "rank2", |o| match o {
            Object::RankTwo { value, .. } => Some(value),
            _ => None,
        })
    }

    pub fn automaton(&self, name: &str) -> Result<&CellularAutomaton> {
        self.typed(name, "ca", |o| match o {
            Object::Automaton(c) => Some(c),
            _ => None,
        })
    }

    pub fn pattern(&self, name: &str) -> Result<&PatternShift2D> {
        self.typed(name, "pattern", |o| match o {
            Object::Pattern(p) => Some(p),
            _ => None,
        })
    }

    /// A document holding a textile and the graphs and morphisms it needs,
    /// named `<name>_G`, `<name>_H`, `<name>_p`, `<name>_q`.
    pub fn from_textile(name: &str, t: &TextileSystem) -> Result<Self> {
        let mut doc = InputDocument::new();
        let [g, h, p, q] = ["G", "H", "p", "q"].map(|s| format!("{name}_{s}"));
        doc.push(g.clone(), Object::Graph(t.g().clone()))?;
        doc.push(h.clone(), Object::Graph(t.h().clone()))?;
        for (m, value) in [(&p, t.p()), (&q, t.q())] {
            doc.push(
                m.clone(),
                Object::Morphism {
                    domain: g.clone(),
                    codomain: h.clone(),
                    value: value.clone(),
                },
            )?;
        }
        doc.push(
            name,
            Object::Textile {
                g,
                h,
                p,
                q,
                value: t.clone(),
            },
        )?;
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (name, object)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_object(&mut out, name, object);
        }
        out
    }
}

fn check_token(s: &str) -> std::result::Result<(), String> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') || s == ":" || s == "->" {
        Err(format!("`{s}` is not a valid name"))
    } else {
        Ok(())
    }
}

fn write_matrix(out: &mut String, label: &str, m: &IntMatrix) {
    let _ = writeln!(out, "{label}");
    for row in m.row_vecs() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

fn word(alphabet: &[String], symbols: &[usize]) -> String {
    let compact = alphabet.iter().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = symbols.iter().map(|&s| alphabet[s].as_str()).collect();
    parts.join(if compact { "" } else { "," })
}

fn write_object(out: &mut String, name: &str, object: &Object) {
    match object {
        Object::Graph(g) => {
            let _ = writeln!(out, "graph {name}");
            for v in g.vertices() {
                let _ = writeln!(out, "vertex {v}");
            }
            for e in g.edges() {
                let _ = writeln!(out, "edge {} {} {}", e.name, g.vertex_name(e.source), g.vertex_name(e.range));
            }
        }
        Object::Morphism { domain, codomain, value } => {
            let _ = writeln!(out, "morphism {name} : {domain} -> {codomain}");
            let (g, h) = (value.domain(), value.codomain());
            for v in 0..g.vertex_count() {
                let _ = writeln!(out, "vmap {} {}", g.vertex_name(v), h.vertex_name(value.on_vertex(v)));
            }
            for e in 0..g.edge_count() {
                let _ = writeln!(out, "emap {} {}", g.edge_name(e), h.edge_name(value.on_edge(e)));
            }
        }
        Object::Textile { g, h, p, q, .. } => {
            let _ = writeln!(out, "textile {name} : {g} {h} {p} {q}");
        }
        Object::Shift(x) => {
            let _ = writeln!(out, "shift {name}");
            let _ = writeln!(out, "alphabet {}", x.alphabet().join(" "));
            write_matrix(out, "A", x.horizontal());
            write_matrix(out, "B", x.vertical());
        }
        Object::RankTwo { g1, g2, value } => {
            let _ = writeln!(out, "rank2 {name} : {g1} {g2}");
            let (a, b) = (value.g1(), value.g2());
            for &((x, y), (y2, x2)) in value.theta() {
                let _ = writeln!(
                    out,
                    "theta {} {} -> {} {}",
                    a.edge_name(x),
                    b.edge_name(y),
                    b.edge_name(y2),
                    a.edge_name(x2)
                );
            }
        }
        Object::Automaton(ca) => {
            let _ = writeln!(out, "ca {name} : alphabet {}", ca.alphabet().join(" "));
            write_matrix(out, "C", ca.transitions());
            let _ = writeln!(out, "window {}", ca.window());
            for (w, s) in ca.rules() {
                let _ = writeln!(out, "rule {} {}", word(ca.alphabet(), &w), ca.alphabet()[s]);
            }
        }
        Object::Pattern(ps) => {
            let _ = writeln!(out, "pattern {name}");
            let _ = writeln!(out, "alphabet {}", ps.alphabet().join(" "));
            let cells: Vec<String> = ps.window().iter().map(|(x, y)| format!("{x},{y}")).collect();
            let _ = writeln!(out, "window {}", cells.join(" "));
            for p in ps.patterns() {
                let _ = writeln!(out, "allow {}", word(ps.alphabet(), p));
            }
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &content[s..],
            column: content[..s].chars().count() + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Wraps construction errors with the stanza's line; name lookups become reference errors.
fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::UnknownVertex(_) | Error::UnknownEdge(_) => Error::Reference {
            line,
            message: e.to_string(),
        },
        Error::Reference { line: 0, message } => Error::Reference { line, message },
        Error::Duplicate { .. } => Error::Reference {
            line,
            message: e.to_string(),
        },
        e if e.is_input_error() => e,
        e => Error::Validation {
            line,
            inner: Box::new(e),
        },
    }
}

#[derive(Default)]
struct MatrixRows {
    rows: Vec<(usize, Vec<u64>)>,
}

impl MatrixRows {
    fn build(&self, k: usize, label: &str, line: usize) -> Result<IntMatrix> {
        if self.rows.len() != k {
            return Err(syntax(line, 1, format!("{label} needs {k} rows, found {}", self.rows.len())));
        }
        for (l, r) in &self.rows {
            if r.len() != k {
                return Err(syntax(*l, 1, format!("{label} row has {} entries, expected {k}", r.len())));
            }
        }
        IntMatrix::from_rows(self.rows.iter().map(|(_, r)| r.clone()).collect()).map_err(at_line(line))
    }
}

fn parse_row(tokens: &[Token<'_>], line: usize) -> Result<Vec<u64>> {
    let digits = |t: &Token<'_>| t.text.chars().all(|c| c.is_ascii_digit());
    if let Some(bad) = tokens.iter().find(|t| !digits(t)) {
        return Err(syntax(line, bad.column, format!("`{}` is not a matrix entry", bad.text)));
    }
    Ok(if tokens.len() == 1 && tokens[0].text.len() > 1 {
        tokens[0].text.bytes().map(|b| u64::from(b - b'0')).collect()
    } else {
        let mut row = Vec::new();
        for t in tokens {
            row.push(t.text.parse().map_err(|_| syntax(line, t.column, "entry out of range"))?);
        }
        row
    })
}

fn parse_word(alphabet: &[String], token: &Token<'_>, line: usize) -> Result<Vec<usize>> {
    let compact = alphabet.iter().all(|s| s.chars().count() == 1);
    let parts: Vec<String> = if compact && !token.text.contains(',') {
        token.text.chars().map(String::from).collect()
    } else {
        token.text.split(',').map(String::from).collect()
    };
    parts
        .iter()
        .map(|p| {
            alphabet
                .iter()
                .position(|s| s == p)
                .ok_or_else(|| Error::Reference {
                    line,
                    message: format!("`{p}` is not in the alphabet"),
                })
        })
        .collect()
}

enum Stanza {
    Graph {
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    },
    Morphism {
        domain: String,
        codomain: String,
        vmap: Vec<(String, String)>,
        emap: Vec<(String, String)>,
    },
    Shift {
        alphabet: Option<Vec<String>>,
        a: Option<MatrixRows>,
        b: Option<MatrixRows>,
        current: char,
    },
    RankTwo {
        g1: String,
        g2: String,
        theta: Vec<(usize, [String; 4])>,
    },
    Automaton {
        alphabet: Option<Vec<String>>,
        c: Option<MatrixRows>,
        window: Option<usize>,
        rules: Vec<(usize, String, String, usize)>,
    },
    Pattern {
        alphabet: Option<Vec<String>>,
        window: Option<Vec<(usize, usize)>>,
        allow: Vec<(usize, String, usize)>,
    },
}

struct Open {
    name: String,
    line: usize,
    stanza: Stanza,
}

fn expect_len(tokens: &[Token<'_>], n: usize, line: usize, usage: &str) -> Result<()> {
    if tokens.len() != n {
        let column = tokens.get(n).or(tokens.last()).map_or(1, |t| t.column);
        return Err(syntax(line, column, format!("expected `{usage}`")));
    }
    Ok(())
}

fn expect_sep(tokens: &[Token<'_>], i: usize, sep: &str, line: usize, usage: &str) -> Result<()> {
    if tokens[i].text != sep {
        return Err(syntax(line, tokens[i].column, format!("expected `{sep}` in `{usage}`")));
    }
    Ok(())
}

fn names(tokens: &[Token<'_>]) -> Vec<String> {
    tokens.iter().map(|t| t.text.to_string()).collect()
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut doc = InputDocument::new();
    let mut open: Option<Open> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else { continue };
        let header = matches!(head.text, "graph" | "morphism" | "textile" | "shift" | "rank2" | "ca" | "pattern");
        if header {
            if let Some(o) = open.take() {
                finish(&mut doc, o)?;
            }
            if tokens.len() < 2 {
                return Err(syntax(line, head.column, format!("`{}` needs a name", head.text)));
            }
            let name = tokens[1].text.to_string();
            if doc.get(&name).is_some() {
                return Err(Error::Reference {
                    line,
                    message: format!("duplicate name `{name}`"),
                });
            }
            let stanza = match head.text {
                "graph" => {
                    expect_len(&tokens, 2, line, "graph <name>")?;
                    Stanza::Graph {
                        vertices: Vec::new(),
                        edges: Vec::new(),
                    }
                }
                "morphism" => {
                    let usage = "morphism <name> : <G> -> <H>";
                    expect_len(&tokens, 6, line, usage)?;
                    expect_sep(&tokens, 2, ":", line, usage)?;
                    expect_sep(&tokens, 4, "->", line, usage)?;
                    Stanza::Morphism {
                        domain: tokens[3].text.into(),
                        codomain: tokens[5].text.into(),
                        vmap: Vec::new(),
                        emap: Vec::new(),
                    }
                }
                "textile" => {
                    let usage = "textile <name> : <G> <H> <p> <q>";
                    expect_len(&tokens, 7, line, usage)?;
                    expect_sep(&tokens, 2, ":", line, usage)?;
                    let [g, h, p, q] = [3, 4, 5, 6].map(|i| tokens[i].text.to_string());
                    let value = (|| {
                        let (pm, qm) = (doc.morphism(&p)?, doc.morphism(&q)?);
                        for (m, which) in [(pm, &p), (qm, &q)] {
                            if m.domain() != doc.graph(&g)? || m.codomain() != doc.graph(&h)? {
                                return Err(lookup_error(format!("morphism `{which}` is not a map {g} -> {h}")));
                            }
                        }
                        TextileSystem::new(pm.clone(), qm.clone())
                    })()
                    .map_err(at_line(line))?;
                    doc.push(name, Object::Textile { g, h, p, q, value })
                        .map_err(at_line(line))?;
                    continue;
                }
                "shift" => {
                    expect_len(&tokens, 2, line, "shift <name>")?;
                    Stanza::Shift {
                        alphabet: None,
                        a: None,
                        b: None,
                        current: ' ',
                    }
                }
                "rank2" => {
                    let usage = "rank2 <name> : <G1> <G2>";
                    expect_len(&tokens, 5, line, usage)?;
                    expect_sep(&tokens, 2, ":", line, usage)?;
                    Stanza::RankTwo {
                        g1: tokens[3].text.into(),
                        g2: tokens[4].text.into(),
                        theta: Vec::new(),
                    }
                }
                "ca" => {
                    let alphabet = if tokens.len() > 2 {
                        let usage = "ca <name> : alphabet <symbols>";
                        expect_sep(&tokens, 2, ":", line, usage)?;
                        if tokens.len() < 5 || tokens[3].text != "alphabet" {
                            return Err(syntax(line, tokens[2].column, format!("expected `{usage}`")));
                        }
                        Some(names(&tokens[4..]))
                    } else {
                        None
                    };
                    Stanza::Automaton {
                        alphabet,
                        c: None,
                        window: None,
                        rules: Vec::new(),
                    }
                }
                _ => {
                    expect_len(&tokens, 2, line, "pattern <name>")?;
                    Stanza::Pattern {
                        alphabet: None,
                        window: None,
                        allow: Vec::new(),
                    }
                }
            };
            open = Some(Open { name, line, stanza });
            continue;
        }
        let Some(o) = open.as_mut() else {
            return Err(syntax(line, head.column, format!("`{}` outside of any stanza", head.text)));
        };
        let misplaced = || syntax(line, head.column, format!("`{}` is not allowed here", head.text));
        let is_row = head.text.chars().all(|c| c.is_ascii_digit());
        match &mut o.stanza {
            Stanza::Graph { vertices, edges } => match head.text {
                "vertex" => {
                    expect_len(&tokens, 2, line, "vertex <v>")?;
                    vertices.push(tokens[1].text.into());
                }
                "edge" => {
                    expect_len(&tokens, 4, line, "edge <e> <src> <dst>")?;
                    edges.push((tokens[1].text.into(), tokens[2].text.into(), tokens[3].text.into()));
                }
                _ => return Err(misplaced()),
            },
            Stanza::Morphism { vmap, emap, .. } => match head.text {
                "vmap" => {
                    expect_len(&tokens, 3, line, "vmap <v> <w>")?;
                    vmap.push((tokens[1].text.into(), tokens[2].text.into()));
                }
                "emap" => {
                    expect_len(&tokens, 3, line, "emap <e> <f>")?;
                    emap.push((tokens[1].text.into(), tokens[2].text.into()));
                }
                _ => return Err(misplaced()),
            },
            Stanza::Shift {
                alphabet,
                a,
                b,
                current,
            } => match head.text {
                "alphabet" if alphabet.is_none() => *alphabet = Some(names(&tokens[1..])),
                "A" if a.is_none() => {
                    expect_len(&tokens, 1, line, "A")?;
                    *a = Some(MatrixRows::default());
                    *current = 'A';
                }
                "B" if b.is_none() => {
                    expect_len(&tokens, 1, line, "B")?;
                    *b = Some(MatrixRows::default());
                    *current = 'B';
                }
                _ if is_row && *current != ' ' => {
                    let target = if *current == 'A' { a.as_mut() } else { b.as_mut() };
                    target.unwrap().rows.push((line, parse_row(&tokens, line)?));
                }
                _ => return Err(misplaced()),
            },
            Stanza::RankTwo { theta, .. } => match head.text {
                "theta" => {
                    let usage = "theta <a> <b> -> <b'> <a'>";
                    expect_len(&tokens, 6, line, usage)?;
                    expect_sep(&tokens, 3, "->", line, usage)?;
                    let t = [1, 2, 4, 5].map(|i| tokens[i].text.to_string());
                    theta.push((line, t));
                }
                _ => return Err(misplaced()),
            },
            Stanza::Automaton {
                alphabet,
                c,
                window,
                rules,
            } => match head.text {
                "alphabet" if alphabet.is_none() => *alphabet = Some(names(&tokens[1..])),
                "C" if c.is_none() => {
                    expect_len(&tokens, 1, line, "C")?;
                    *c = Some(MatrixRows::default());
                }
                "window" if window.is_none() => {
                    expect_len(&tokens, 2, line, "window <w>")?;
                    *window = Some(
                        tokens[1]
                            .text
                            .parse()
                            .map_err(|_| syntax(line, tokens[1].column, "window must be a number"))?,
                    );
                }
                "rule" => {
                    expect_len(&tokens, 3, line, "rule <word> <symbol>")?;
                    rules.push((line, tokens[1].text.into(), tokens[2].text.into(), tokens[1].column));
                }
                _ if is_row && c.is_some() && window.is_none() && rules.is_empty() => {
                    c.as_mut().unwrap().rows.push((line, parse_row(&tokens, line)?));
                }
                _ => return Err(misplaced()),
            },
            Stanza::Pattern {
                alphabet,
                window,
                allow,
            } => match head.text {
                "alphabet" if alphabet.is_none() => *alphabet = Some(names(&tokens[1..])),
                "window" if window.is_none() => {
                    let mut cells = Vec::new();
                    for t in &tokens[1..] {
                        let cell = t
                            .text
                            .split_once(',')
                            .and_then(|(x, y)| Some((x.parse().ok()?, y.parse().ok()?)))
                            .ok_or_else(|| syntax(line, t.column, "window cells are written x,y"))?;
                        cells.push(cell);
                    }
                    *window = Some(cells);
                }
                "allow" => {
                    expect_len(&tokens, 2, line, "allow <word>")?;
                    allow.push((line, tokens[1].text.into(), tokens[1].column));
                }
                _ => return Err(misplaced()),
            },
        }
    }
    if let Some(o) = open.take() {
        finish(&mut doc, o)?;
    }
    Ok(doc)
}

fn need<T>(value: Option<T>, line: usize, what: &str) -> Result<T> {
    value.ok_or_else(|| syntax(line, 1, format!("missing `{what}`")))
}

fn finish(doc: &mut InputDocument, o: Open) -> Result<()> {
    let Open { name, line, stanza } = o;
    let wrap = at_line(line);
    let object = match stanza {
        Stanza::Graph { vertices, edges } => Object::Graph(Arc::new(DirectedGraph::new(vertices, edges).map_err(&wrap)?)),
        Stanza::Morphism {
            domain,
            codomain,
            vmap,
            emap,
        } => {
            let (g, h) = (doc.graph(&domain).map_err(&wrap)?, doc.graph(&codomain).map_err(&wrap)?);
            let value = GraphMorphism::from_names(g.clone(), h.clone(), &vmap, &emap).map_err(&wrap)?;
            Object::Morphism {
                domain,
                codomain,
                value,
            }
        }
        Stanza::Shift { alphabet, a, b, .. } => {
            let alphabet = need(alphabet, line, "alphabet")?;
            let k = alphabet.len();
            let a = need(a, line, "A")?.build(k, "A", line)?;
            let b = need(b, line, "B")?.build(k, "B", line)?;
            Object::Shift(MatrixShift::new(alphabet, a, b).map_err(&wrap)?)
        }
        Stanza::RankTwo { g1, g2, theta } => {
            let (a, b) = (doc.graph(&g1).map_err(&wrap)?.clone(), doc.graph(&g2).map_err(&wrap)?.clone());
            let mut pairs = Vec::new();
            for (l, [x, y, y2, x2]) in theta {
                let id = |g: &DirectedGraph, e: &str| {
                    g.edge_id(e).ok_or_else(|| Error::Reference {
                        line: l,
                        message: format!("unknown edge `{e}`"),
                    })
                };
                pairs.push(((id(&a, &x)?, id(&b, &y)?), (id(&b, &y2)?, id(&a, &x2)?)));
            }
            Object::RankTwo {
                value: RankTwoData::new(a, b, pairs).map_err(&wrap)?,
                g1,
                g2,
            }
        }
        Stanza::Automaton {
            alphabet,
            c,
            window,
            rules,
        } => {
            let alphabet = need(alphabet, line, "alphabet")?;
            let c = need(c, line, "C")?.build(alphabet.len(), "C", line)?;
            let window = need(window, line, "window")?;
            let mut parsed = Vec::new();
            for (l, w, s, column) in rules {
                let word = parse_word(&alphabet, &Token { text: &w, column }, l)?;
                let image = parse_word(&alphabet, &Token { text: &s, column }, l)?;
                if image.len() != 1 {
                    return Err(syntax(l, column, "a rule maps a word to one symbol"));
                }
                parsed.push((word, image[0]));
            }
            Object::Automaton(CellularAutomaton::new(alphabet, c, window, parsed).map_err(&wrap)?)
        }
        Stanza::Pattern {
            alphabet,
            window,
            allow,
        } => {
            let alphabet = need(alphabet, line, "alphabet")?;
            let window = need(window, line, "window")?;
            let mut patterns = Vec::new();
            for (l, w, column) in allow {
                patterns.push(parse_word(&alphabet, &Token { text: &w, column }, l)?);
            }
            Object::Pattern(PatternShift2D::new(alphabet, window, patterns).map_err(&wrap)?)
        }
    };
    doc.push(name, object).map_err(wrap)
}


#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = "shift golden-mean\nalphabet 0 1\nA\n1 1\n1 0\nB\n11\n10\n";

    #[test]
    fn parses_a_shift() {
        let doc = parse_input(GOLDEN).unwrap();
        let x = doc.shift("golden-mean").unwrap();
        assert_eq!(x.size(), 2);
        assert_eq!(x.vertical(), &IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn empty_and_comment_only_files() {
        assert!(parse_input("").unwrap().is_empty());
        assert!(parse_input("# nothing\n\n   # here\n").unwrap().is_empty());
    }

    #[test]
    fn undeclared_vertex_is_named() {
        let err = parse_input("graph G\nvertex u\nedge a u v\n").unwrap_err();
        assert!(err.is_input_error());
        assert!(err.to_string().contains("`v`"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_input("graph G\nvertex u\n  edge a u\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_input("vertex u\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        let err = parse_input("shift X\nalphabet 0 1\nA\n1 1\n1 x\nB\n1 1\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, column: 3, .. }), "{err:?}");
    }

    #[test]
    fn duplicates_and_dangling_references() {
        let err = parse_input("graph G\nvertex u\ngraph G\n").unwrap_err();
        assert!(matches!(err, Error::Reference { line: 3, .. }));
        let err = parse_input("morphism p : G -> H\n").unwrap_err();
        assert!(matches!(err, Error::Reference { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn round_trip() {
        let text = "\
graph G
vertex u
edge a u u
edge b u u
graph H
vertex w
edge x w w
morphism p : G -> H
vmap u w
emap a x
emap b x
textile T : G H p p

ca C : alphabet 0 1
C
11
11
window 2
rule 00 0
rule 01 1
rule 10 1
rule 11 0

pattern P
alphabet 0 1
window 0,0 1,0 0,1
allow 000
allow 011
";
        let doc = parse_input(text).unwrap();
        assert_eq!(doc.len(), 6);
        let again = parse_input(&doc.to_text()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(again.to_text(), doc.to_text());
    }

    #[test]
    fn textile_documents() {
        let doc = parse_input("graph G\nvertex u\nedge a u u\nmorphism p : G -> G\nvmap u u\nemap a a\ntextile T : G G p p\n")
            .unwrap();
        let t = doc.textile("T").unwrap();
        let out = InputDocument::from_textile("D", t).unwrap();
        assert_eq!(parse_input(&out.to_text()).unwrap().textile("D").unwrap(), t);
        assert!(doc.shift("T").is_err());
    }
}
