//! Named graph families and the textual spec grammar
//!
//! ```text
//! spec := path:<n> | cycle:<n> | pan:<n> | ce:<n> | tadpole:3,<n>
//!       | complete:<n> | empty:<n> | bk:<m>,<n>
//!       | union(<spec>,<spec>) | file:<path>
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    /// `C_n` with a pendant vertex `n + 1` attached to vertex `n`.
    Pan(usize),
    /// `C_n` with the chord `{n - 2, n}`.
    Ce(usize),
    /// Triangle `1,2,3` joined to the path `4..=n+3` by the bridge `{3,4}`.
    Tadpole3(usize),
    Complete(usize),
    Empty(usize),
    /// Bipartite graph on `V1 = 1..=n-m`, `V2 = n-m+1..=n`, `V3 = n+1..=n+m`:
    /// complete between `V1` and `V2`, perfect matching `V2 -> V3`.
    Bk {
        m: usize,
        n: usize,
    },
    Union(Box<FamilySpec>, Box<FamilySpec>),
    File(PathBuf),
}

impl FamilySpec {
    pub fn union(a: FamilySpec, b: FamilySpec) -> Self {
        FamilySpec::Union(Box::new(a), Box::new(b))
    }

    /// Checks the per-family parameter constraints without building the graph.
    pub fn validate(&self) -> Result<()> {
        let need = |family: &'static str, ok: bool, constraint: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Constraint {
                    family,
                    constraint: constraint.to_string(),
                })
            }
        };
        match *self {
            FamilySpec::Path(n) => need("path", n >= 1, "requires n >= 1"),
            FamilySpec::Cycle(n) => need("cycle", n >= 3, "requires n >= 3"),
            FamilySpec::Pan(n) => need("pan", n >= 3, "requires n >= 3"),
            FamilySpec::Ce(n) => need(
                "ce",
                n >= 4,
                "requires n >= 4 (for n = 3 the chord {n-2,n} is a cycle edge)",
            ),
            FamilySpec::Tadpole3(n) => need("tadpole", n >= 1, "requires n >= 1"),
            FamilySpec::Complete(n) => need("complete", n >= 1, "requires n >= 1"),
            FamilySpec::Empty(n) => need("empty", n >= 1, "requires n >= 1"),
            FamilySpec::Bk { m, n } => need("bk", m >= 1 && n > m, "requires m >= 1 and n > m"),
            FamilySpec::Union(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            FamilySpec::File(_) => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Pan(n) => write!(f, "pan:{n}"),
            FamilySpec::Ce(n) => write!(f, "ce:{n}"),
            FamilySpec::Tadpole3(n) => write!(f, "tadpole:3,{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Empty(n) => write!(f, "empty:{n}"),
            FamilySpec::Bk { m, n } => write!(f, "bk:{m},{n}"),
            FamilySpec::Union(a, b) => write!(f, "union({a},{b})"),
            FamilySpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let g = match *spec {
        FamilySpec::Path(n) => path_graph(n),
        FamilySpec::Cycle(n) => {
            let mut g = path_graph(n);
            g.link(0, n - 1);
            g
        }
        FamilySpec::Pan(n) => {
            let mut g = make_family(&FamilySpec::Cycle(n))?.disjoint_union(&Graph::empty(1));
            g.link(n - 1, n);
            g
        }
        FamilySpec::Ce(n) => {
            let mut g = make_family(&FamilySpec::Cycle(n))?;
            g.link(n - 3, n - 1);
            g
        }
        FamilySpec::Tadpole3(n) => {
            let mut g = make_family(&FamilySpec::Cycle(3))?.disjoint_union(&path_graph(n));
            g.link(2, 3);
            g
        }
        FamilySpec::Complete(n) => {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.link(u, v);
                }
            }
            g
        }
        FamilySpec::Empty(n) => Graph::empty(n),
        FamilySpec::Bk { m, n } => {
            let mut g = Graph::empty(n + m);
            let v1 = n - m;
            for u in 0..v1 {
                for w in v1..n {
                    g.link(u, w);
                }
            }
            for i in 0..m {
                g.link(v1 + i, n + i);
            }
            g
        }
        FamilySpec::Union(ref a, ref b) => make_family(a)?.disjoint_union(&make_family(b)?),
        FamilySpec::File(ref path) => read_edge_list(path)?,
    };
    Ok(g)
}

fn path_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.link(v - 1, v);
    }
    g
}

/// Parses a spec string and builds its graph.
pub fn parse_spec(text: &str) -> Result<Graph> {
    make_family(&parse_family(text)?)
}

/// Parses a spec string into a [`FamilySpec`] without building the graph.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let mut p = Parser { text, pos: 0 };
    let spec = p.spec()?;
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a decimal integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        let word_len = self
            .rest()
            .bytes()
            .take_while(u8::is_ascii_alphabetic)
            .count();
        let start = self.pos;
        let text = self.text;
        let word = &text[start..start + word_len];
        self.pos += word_len;
        let spec = match word {
            "union" => {
                self.eat("(")?;
                let a = self.spec()?;
                self.eat(",")?;
                let b = self.spec()?;
                self.eat(")")?;
                return Ok(FamilySpec::union(a, b));
            }
            "file" => {
                self.eat(":")?;
                // a file path runs to the end of the spec, or to the
                // delimiter closing an enclosing union
                let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
                if len == 0 {
                    return Err(self.error("expected a file path"));
                }
                let path = PathBuf::from(&self.rest()[..len]);
                self.pos += len;
                return Ok(FamilySpec::File(path));
            }
            "path" | "cycle" | "pan" | "ce" | "complete" | "empty" => {
                self.eat(":")?;
                let n = self.number()?;
                match word {
                    "path" => FamilySpec::Path(n),
                    "cycle" => FamilySpec::Cycle(n),
                    "pan" => FamilySpec::Pan(n),
                    "ce" => FamilySpec::Ce(n),
                    "complete" => FamilySpec::Complete(n),
                    _ => FamilySpec::Empty(n),
                }
            }
            "tadpole" => {
                self.eat(":")?;
                self.eat("3")?;
                self.eat(",")?;
                FamilySpec::Tadpole3(self.number()?)
            }
            "bk" => {
                self.eat(":")?;
                let m = self.number()?;
                self.eat(",")?;
                let n = self.number()?;
                FamilySpec::Bk { m, n }
            }
            _ => {
                self.pos = start;
                return Err(self.error("unknown graph family"));
            }
        };
        Ok(spec)
    }
}

/// Reads the edge-list format: first data line is `n`, then one `u v` per
/// line with `1 <= u < v <= n`. Blank lines and `#` comments are skipped.
pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text, path)
}

/// Parses edge-list text; `path` is only used in error messages.
pub fn parse_edge_list(text: &str, path: &Path) -> Result<Graph> {
    let err = |line: usize, message: String| Error::EdgeList {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected vertex count, found `{header}`")))?;
    if n == 0 {
        return Err(err(first, "vertex count must be positive".into()));
    }

    let mut g = Graph::empty(n);
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected `u v`, found `{content}`")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(line, format!("`{s}` is not a vertex")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if !(1 <= u && u < v && v <= n) {
            return Err(err(
                line,
                format!("edge {u} {v} violates 1 <= u < v <= {n}"),
            ));
        }
        if g.has_edge(u, v) {
            return Err(err(line, format!("duplicate edge {u} {v}")));
        }
        g.link(u - 1, v - 1);
    }
    Ok(g)
}
