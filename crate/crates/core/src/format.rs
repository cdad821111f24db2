//! Text formats for instances, matchings and graphs.
//!
//! Instance files are line oriented; `#` starts a comment:
//!
//! ```text
//! hrlq 2 2
//! hospital h1 0 1 : r1 r2
//! hospital h2 [1,1] : r1
//! resident r1 : h1 h2
//! resident r2 : h1
//! ```
//!
//! Quotas may be written `<q-> <q+>` or `[q-,q+]`. Hospitals and residents
//! get dense indices in declaration order. Matching files hold one
//! `<resident> <hospital>` pair per line; graph files hold the vertex count
//! followed by one `u v` edge per line with 0-based vertices.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::model::{Instance, Matching, ModelError, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `hrlq <residents> <hospitals>` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected token {0:?}")]
    Unexpected(String),
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("{0} is declared twice")]
    DuplicateName(String),
    #[error("unknown resident {0:?}")]
    UnknownResident(String),
    #[error("unknown hospital {0:?}")]
    UnknownHospital(String),
    #[error("{0:?} appears twice in this list")]
    DuplicateEntry(String),
    #[error("lower quota {lower} exceeds upper quota {upper}")]
    QuotaOrder { lower: usize, upper: usize },
    #[error("header announces {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("resident {0:?} is matched twice")]
    MatchedTwice(String),
    #[error("{0}")]
    Graph(GraphError),
}

/// An instance together with the names used in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedInstance {
    pub instance: Instance,
    pub resident_names: Vec<String>,
    pub hospital_names: Vec<String>,
}

impl NamedInstance {
    /// Names `r1..rn` and `h1..hm`.
    pub fn with_default_names(instance: Instance) -> Self {
        Self {
            resident_names: (1..=instance.num_residents())
                .map(|i| format!("r{i}"))
                .collect(),
            hospital_names: (1..=instance.num_hospitals())
                .map(|i| format!("h{i}"))
                .collect(),
            instance,
        }
    }

    pub fn resident_index(&self, name: &str) -> Option<usize> {
        self.resident_names.iter().position(|n| n == name)
    }

    pub fn hospital_index(&self, name: &str) -> Option<usize> {
        self.hospital_names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        let boundary = c.is_whitespace() || c == ':';
        if boundary {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
            }
            if c == ':' {
                out.push(Token {
                    text: &body[i..i + 1],
                    column: body[..i].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            column: body[..s].chars().count() + 1,
        });
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn number(line: usize, tok: Token<'_>) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| {
        err(
            line,
            tok.column,
            ParseErrorKind::BadNumber(tok.text.to_string()),
        )
    })
}

struct Decl<'a> {
    line: usize,
    name: Token<'a>,
    list: Vec<Token<'a>>,
    quotas: Option<(usize, usize)>,
}

// Parses quotas starting at `toks[0]`; returns them and the tokens consumed.
fn quotas(
    line: usize,
    toks: &[Token<'_>],
    fallback_col: usize,
) -> Result<((usize, usize), usize), ParseError> {
    let first = toks
        .first()
        .ok_or_else(|| err(line, fallback_col, ParseErrorKind::Expected("quotas")))?;
    if first.text.starts_with('[') {
        let inner = first
            .text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| {
                err(
                    line,
                    first.column,
                    ParseErrorKind::Expected("`[lower,upper]`"),
                )
            })?;
        let (a, b) = inner.split_once(',').ok_or_else(|| {
            err(
                line,
                first.column,
                ParseErrorKind::Expected("`[lower,upper]`"),
            )
        })?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| err(line, first.column, ParseErrorKind::BadNumber(s.to_string())))
        };
        return Ok(((parse(a)?, parse(b)?), 1));
    }
    let lower = number(line, *first)?;
    let second = toks
        .get(1)
        .ok_or_else(|| err(line, first.column, ParseErrorKind::Expected("upper quota")))?;
    Ok(((lower, number(line, *second)?), 2))
}

fn declaration<'a>(
    line: usize,
    toks: &[Token<'a>],
    hospital: bool,
) -> Result<Decl<'a>, ParseError> {
    let kw = toks[0];
    let name = *toks
        .get(1)
        .filter(|t| t.text != ":")
        .ok_or_else(|| err(line, kw.column, ParseErrorKind::Expected("a name")))?;
    let mut pos = 2;
    let mut q = None;
    if hospital {
        let (qq, used) = quotas(line, &toks[pos..], name.column)?;
        if qq.0 > qq.1 {
            return Err(err(
                line,
                toks[pos].column,
                ParseErrorKind::QuotaOrder {
                    lower: qq.0,
                    upper: qq.1,
                },
            ));
        }
        q = Some(qq);
        pos += used;
    }
    match toks.get(pos) {
        Some(t) if t.text == ":" => {}
        Some(t) => return Err(err(line, t.column, ParseErrorKind::Expected("`:`"))),
        None => {
            let col = toks.last().map_or(1, |t| t.column);
            return Err(err(line, col, ParseErrorKind::Expected("`:`")));
        }
    }
    Ok(Decl {
        line,
        name,
        list: toks[pos + 1..].to_vec(),
        quotas: q,
    })
}

/// Parses an instance file; positions in errors are 1-based.
pub fn parse_instance(text: &str) -> Result<NamedInstance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut header_line = 0;
    let mut hospitals: Vec<Decl<'_>> = Vec::new();
    let mut residents: Vec<Decl<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw);
        let Some(first) = toks.first() else { continue };
        if header.is_none() {
            if first.text != "hrlq" {
                return Err(err(line, first.column, ParseErrorKind::MissingHeader));
            }
            if toks.len() != 3 {
                return Err(err(
                    line,
                    first.column,
                    ParseErrorKind::MalformedHeader("expected two counts".into()),
                ));
            }
            header = Some((number(line, toks[1])?, number(line, toks[2])?));
            header_line = line;
            continue;
        }
        match first.text {
            "hospital" => hospitals.push(declaration(line, &toks, true)?),
            "resident" => residents.push(declaration(line, &toks, false)?),
            other => {
                return Err(err(
                    line,
                    first.column,
                    ParseErrorKind::Unexpected(other.to_string()),
                ))
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(1, 1, ParseErrorKind::MissingHeader))?;
    if hospitals.len() != m {
        return Err(err(
            header_line,
            1,
            ParseErrorKind::CountMismatch {
                what: "hospitals",
                expected: m,
                found: hospitals.len(),
            },
        ));
    }
    if residents.len() != n {
        return Err(err(
            header_line,
            1,
            ParseErrorKind::CountMismatch {
                what: "residents",
                expected: n,
                found: residents.len(),
            },
        ));
    }
    let index = |decls: &[Decl<'_>]| -> Result<HashMap<String, usize>, ParseError> {
        let mut map = HashMap::new();
        for (i, d) in decls.iter().enumerate() {
            if map.insert(d.name.text.to_string(), i).is_some() {
                return Err(err(
                    d.line,
                    d.name.column,
                    ParseErrorKind::DuplicateName(d.name.text.to_string()),
                ));
            }
        }
        Ok(map)
    };
    let h_index = index(&hospitals)?;
    let r_index = index(&residents)?;
    let resolve =
        |d: &Decl<'_>, map: &HashMap<String, usize>, unknown: fn(String) -> ParseErrorKind| {
            let mut out = Vec::with_capacity(d.list.len());
            for t in &d.list {
                let id = *map
                    .get(t.text)
                    .ok_or_else(|| err(d.line, t.column, unknown(t.text.to_string())))?;
                if out.contains(&id) {
                    return Err(err(
                        d.line,
                        t.column,
                        ParseErrorKind::DuplicateEntry(t.text.to_string()),
                    ));
                }
                out.push(id);
            }
            Ok(out)
        };
    let mut hp = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for d in &hospitals {
        hp.push(resolve(d, &r_index, ParseErrorKind::UnknownResident)?);
        let (lo, hi) = d.quotas.expect("hospital quotas");
        lower.push(lo);
        upper.push(hi);
    }
    let mut rp = Vec::new();
    for d in &residents {
        rp.push(resolve(d, &h_index, ParseErrorKind::UnknownHospital)?);
    }
    let instance = Instance::new(rp, hp, lower, upper).map_err(|e| match e {
        ModelError::Invalid(violations) => {
            let v = &violations[0];
            let (line, column) = violation_position(v, &hospitals, &residents);
            err(line, column, ParseErrorKind::Invalid(v.to_string()))
        }
        other => err(header_line, 1, ParseErrorKind::Invalid(other.to_string())),
    })?;
    Ok(NamedInstance {
        instance,
        resident_names: residents.iter().map(|d| d.name.text.to_string()).collect(),
        hospital_names: hospitals.iter().map(|d| d.name.text.to_string()).collect(),
    })
}

fn violation_position(
    v: &Violation,
    hospitals: &[Decl<'_>],
    residents: &[Decl<'_>],
) -> (usize, usize) {
    let at = |d: &Decl<'_>| (d.line, d.name.column);
    match *v {
        Violation::HospitalOnlyEdge { hospital, .. }
        | Violation::DuplicateInHospitalList { hospital, .. }
        | Violation::LowerAboveUpper { hospital, .. }
        | Violation::ZeroUpperQuota { hospital }
        | Violation::LowerAboveListLength { hospital, .. } => at(&hospitals[hospital]),
        Violation::ResidentOnlyEdge { resident, .. }
        | Violation::DuplicateInResidentList { resident, .. } => at(&residents[resident]),
    }
}

/// Renders an instance; [`parse_instance`] reads it back unchanged.
pub fn render_instance(named: &NamedInstance) -> String {
    let inst = &named.instance;
    let mut out = String::new();
    writeln!(
        out,
        "hrlq {} {}",
        inst.num_residents(),
        inst.num_hospitals()
    )
    .unwrap();
    for h in 0..inst.num_hospitals() {
        write!(
            out,
            "hospital {} {} {} :",
            named.hospital_names[h],
            inst.lower_quota(h),
            inst.upper_quota(h)
        )
        .unwrap();
        for &r in inst.hospital_prefs(h) {
            write!(out, " {}", named.resident_names[r]).unwrap();
        }
        out.push('\n');
    }
    for r in 0..inst.num_residents() {
        write!(out, "resident {} :", named.resident_names[r]).unwrap();
        for &h in inst.resident_prefs(r) {
            write!(out, " {}", named.hospital_names[h]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses `<resident> <hospital>` lines against the names of `named`.
pub fn parse_matching(text: &str, named: &NamedInstance) -> Result<Matching, ParseError> {
    let mut m = Matching::empty(named.instance.num_residents());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            return Err(err(
                line,
                toks[0].column,
                ParseErrorKind::Expected("`<resident> <hospital>`"),
            ));
        }
        let r = named.resident_index(toks[0].text).ok_or_else(|| {
            err(
                line,
                toks[0].column,
                ParseErrorKind::UnknownResident(toks[0].text.into()),
            )
        })?;
        let h = named.hospital_index(toks[1].text).ok_or_else(|| {
            err(
                line,
                toks[1].column,
                ParseErrorKind::UnknownHospital(toks[1].text.into()),
            )
        })?;
        if m.hospital_of(r).is_some() {
            return Err(err(
                line,
                toks[0].column,
                ParseErrorKind::MatchedTwice(toks[0].text.into()),
            ));
        }
        m.assign(r, h);
    }
    Ok(m)
}

pub fn render_matching(m: &Matching, named: &NamedInstance) -> String {
    let mut out = String::new();
    for (r, h) in m.pairs() {
        writeln!(
            out,
            "{} {}",
            named.resident_names[r], named.hospital_names[h]
        )
        .unwrap();
    }
    out
}

/// Matched pairs as names.
pub fn named_pairs(m: &Matching, named: &NamedInstance) -> Vec<(String, String)> {
    m.pairs()
        .map(|(r, h)| {
            (
                named.resident_names[r].clone(),
                named.hospital_names[h].clone(),
            )
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        last_line = line;
        match n {
            None => {
                if toks.len() != 1 {
                    return Err(err(
                        line,
                        toks[0].column,
                        ParseErrorKind::Expected("the vertex count"),
                    ));
                }
                n = Some(number(line, toks[0])?);
            }
            Some(_) => {
                if toks.len() != 2 {
                    return Err(err(line, toks[0].column, ParseErrorKind::Expected("`u v`")));
                }
                edges.push((number(line, toks[0])?, number(line, toks[1])?));
            }
        }
    }
    let n = n.ok_or_else(|| err(1, 1, ParseErrorKind::Expected("the vertex count")))?;
    Graph::new(n, edges).map_err(|e| err(last_line, 1, ParseErrorKind::Graph(e)))
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.num_vertices());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

impl fmt::Display for NamedInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_instance(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    const PAIR2: &str = "\
# two residents, two hospitals
hrlq 2 2
hospital h1 0 1 : r1 r2
hospital h2 [1,1] : r1   # needs one resident
resident r1 : h1 h2
resident r2 : h1
";

    #[test]
    fn parses_pair2() {
        let named = parse_instance(PAIR2).unwrap();
        assert_eq!(named.instance, pair2());
        assert_eq!(named.resident_names, vec!["r1", "r2"]);
    }

    #[test]
    fn round_trip() {
        let named = NamedInstance::with_default_names(chain3());
        assert_eq!(parse_instance(&render_instance(&named)).unwrap(), named);
    }

    #[test]
    fn quota_order_error() {
        let text = "hrlq 1 1\nhospital h2 [2,1] : r1\nresident r1 : h2\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
        assert_eq!(e.kind, ParseErrorKind::QuotaOrder { lower: 2, upper: 1 });
    }

    #[test]
    fn unknown_name_error() {
        let text = "hrlq 1 1\nhospital h1 0 1 : r1 r9\nresident r1 : h1\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!((e.line, e.column), (2, 22));
        assert_eq!(e.kind, ParseErrorKind::UnknownResident("r9".into()));
    }

    #[test]
    fn duplicate_entry_error() {
        let text = "hrlq 1 1\nhospital h1 0 1 : r1\nresident r1 : h1 h1\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateEntry("h1".into()));
        assert_eq!((e.line, e.column), (3, 18));
    }

    #[test]
    fn header_errors() {
        assert_eq!(
            parse_instance("").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
        let e = parse_instance("hrlq 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedHeader(_)));
        let e = parse_instance("hrlq 2 0\nresident r1 :\n").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::CountMismatch {
                what: "residents",
                ..
            }
        ));
    }

    #[test]
    fn asymmetric_edge_points_at_the_hospital() {
        let text = "hrlq 1 1\nhospital h1 0 1 : r1\nresident r1 :\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Invalid(_)));
    }

    #[test]
    fn matching_round_trip() {
        let named = NamedInstance::with_default_names(pair2());
        let mm = m(2, &[(0, 1), (1, 0)]);
        let text = render_matching(&mm, &named);
        assert_eq!(text, "r1 h2\nr2 h1\n");
        assert_eq!(parse_matching(&text, &named).unwrap(), mm);
        assert!(parse_matching("r1 h1\nr1 h2\n", &named).is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = Graph::triangle();
        assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
        assert!(parse_graph("2\n0 0\n").is_err());
    }
}
