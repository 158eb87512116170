//! Line-oriented text formats. `#` starts a comment; blank lines are
//! ignored; element labels are 1-based.
//!
//! ```text
//! quandle <name> <n>          followed by n rows of n labels
//! group <name> <n>            followed by n rows of n labels, identity first
//! permgroup <name> <deg> <k>  followed by k rows of deg images
//! auto <name> <group>         followed by one row of images
//! galex <name> <group> <auto> GAlex(G, f) from earlier records
//! cocycle <name> <quandle> <group>
//!                             followed by |X| rows of Λ labels and an
//!                             optional `section s1 … s|X|` row
//! knot <name> <n> <k> <w1> … <wk>
//! ```
//!
//! Records may refer only to records that appear earlier in the same text.
//! Names are single tokens without `#`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::braid::{parse_braid, NamedBraid};
use crate::extension::{galex, Cocycle};
use crate::group::{FiniteGroup, GroupAutomorphism};
use crate::perm::Perm;
use crate::permgroup::PermGroup;
use crate::psi::Symmetry;
use crate::quandle::Quandle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line number.
    pub line: usize,
    pub record: Option<String>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.record {
            Some(r) => write!(f, "line {} (record {r}): {}", self.line, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Record {
    Quandle { name: String, quandle: Quandle },
    Group { name: String, group: FiniteGroup },
    PermGroup { name: String, degree: usize, generators: Vec<Perm> },
    Auto { name: String, group: String, automorphism: GroupAutomorphism },
    Galex { name: String, group: String, auto: String, quandle: Quandle },
    Cocycle { name: String, quandle: String, group: String, cocycle: Cocycle },
    Knot(NamedBraid),
}

impl Record {
    pub fn name(&self) -> &str {
        match self {
            Record::Quandle { name, .. }
            | Record::Group { name, .. }
            | Record::PermGroup { name, .. }
            | Record::Auto { name, .. }
            | Record::Galex { name, .. }
            | Record::Cocycle { name, .. } => name,
            Record::Knot(k) => &k.name,
        }
    }
}

/// A quandle with the name it was recorded under and, for `galex`
/// records, the group and automorphism it was built from.
#[derive(Debug, Clone)]
pub struct NamedQuandle {
    pub name: String,
    pub quandle: Quandle,
    pub origin: Option<(FiniteGroup, GroupAutomorphism)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub records: Vec<Record>,
}

impl Document {
    fn find(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name() == name)
    }

    pub fn group(&self, name: &str) -> Option<&FiniteGroup> {
        match self.find(name)? {
            Record::Group { group, .. } => Some(group),
            _ => None,
        }
    }

    pub fn automorphism(&self, name: &str) -> Option<&GroupAutomorphism> {
        match self.find(name)? {
            Record::Auto { automorphism, .. } => Some(automorphism),
            _ => None,
        }
    }

    pub fn quandle(&self, name: &str) -> Option<&Quandle> {
        match self.find(name)? {
            Record::Quandle { quandle, .. } | Record::Galex { quandle, .. } => Some(quandle),
            _ => None,
        }
    }

    pub fn perm_group(&self, name: &str) -> Option<PermGroup> {
        match self.find(name)? {
            Record::PermGroup { degree, generators, .. } => PermGroup::new(*degree, generators.clone()).ok(),
            _ => None,
        }
    }

    pub fn quandles(&self) -> Vec<NamedQuandle> {
        self.records
            .iter()
            .filter_map(|r| match r {
                Record::Quandle { name, quandle } => {
                    Some(NamedQuandle { name: name.clone(), quandle: quandle.clone(), origin: None })
                }
                Record::Galex { name, group, auto, quandle } => Some(NamedQuandle {
                    name: name.clone(),
                    quandle: quandle.clone(),
                    origin: Some((self.group(group)?.clone(), self.automorphism(auto)?.clone())),
                }),
                _ => None,
            })
            .collect()
    }

    pub fn knots(&self) -> Vec<NamedBraid> {
        self.records
            .iter()
            .filter_map(|r| match r {
                Record::Knot(k) => Some(k.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn cocycles(&self) -> Vec<(String, Cocycle)> {
        self.records
            .iter()
            .filter_map(|r| match r {
                Record::Cocycle { name, cocycle, .. } => Some((name.clone(), cocycle.clone())),
                _ => None,
            })
            .collect()
    }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|(_, t)| t[0])
    }
}

struct Ctx<'a> {
    line: usize,
    record: Option<&'a str>,
}

impl Ctx<'_> {
    fn err(&self, message: impl fmt::Display) -> FormatError {
        FormatError { line: self.line, record: self.record.map(str::to_string), message: message.to_string() }
    }

    fn number(&self, tok: Option<&&str>, what: &str) -> Result<usize, FormatError> {
        let tok = tok.ok_or_else(|| self.err(format!("missing {what}")))?;
        tok.parse().map_err(|_| self.err(format!("{what} is not a non-negative integer: {tok:?}")))
    }

    fn labels(&self, toks: &[&str], len: usize, bound: usize) -> Result<Vec<usize>, FormatError> {
        if toks.len() != len {
            return Err(self.err(format!("expected {len} labels, found {}", toks.len())));
        }
        toks.iter()
            .map(|t| match t.parse::<usize>() {
                Ok(x) if (1..=bound).contains(&x) => Ok(x - 1),
                _ => Err(self.err(format!("label {t:?} is not in 1..={bound}"))),
            })
            .collect()
    }
}

fn table_rows(
    lines: &mut Lines<'_>,
    ctx: &mut Ctx<'_>,
    rows: usize,
    cols: usize,
    bound: usize,
) -> Result<Vec<Vec<usize>>, FormatError> {
    (0..rows)
        .map(|_| {
            let (ln, toks) = lines.next().ok_or_else(|| ctx.err("unexpected end of input"))?;
            ctx.line = ln;
            ctx.labels(&toks, cols, bound)
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut lines = Lines::new(text);
    let mut doc = Document::default();
    let mut names: HashMap<String, usize> = HashMap::new();
    while let Some((ln, toks)) = lines.next() {
        let mut ctx = Ctx { line: ln, record: toks.get(1).copied() };
        let name = toks.get(1).ok_or_else(|| ctx.err("missing record name"))?.to_string();
        if let Some(&prev) = names.get(&name) {
            return Err(ctx.err(format!("name already used on line {prev}")));
        }
        let record = match toks[0] {
            "quandle" => {
                let n = ctx.number(toks.get(2), "order")?;
                let rows = table_rows(&mut lines, &mut ctx, n, n, n)?;
                ctx.line = ln;
                let quandle = Quandle::from_table(&rows).map_err(|e| ctx.err(e))?;
                Record::Quandle { name: name.clone(), quandle }
            }
            "group" => {
                let n = ctx.number(toks.get(2), "order")?;
                let rows = table_rows(&mut lines, &mut ctx, n, n, n)?;
                ctx.line = ln;
                let group = FiniteGroup::from_table(&rows).map_err(|e| ctx.err(e))?;
                Record::Group { name: name.clone(), group }
            }
            "permgroup" => {
                let degree = ctx.number(toks.get(2), "degree")?;
                let k = ctx.number(toks.get(3), "generator count")?;
                let rows = table_rows(&mut lines, &mut ctx, k, degree, degree)?;
                let generators = rows
                    .into_iter()
                    .map(|r| {
                        Perm::from_images(r.into_iter().map(|x| x as u32).collect())
                            .ok_or_else(|| ctx.err("generator is not a permutation"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Record::PermGroup { name: name.clone(), degree, generators }
            }
            "auto" => {
                let gname = toks.get(2).ok_or_else(|| ctx.err("missing group name"))?.to_string();
                let group = doc.group(&gname).ok_or_else(|| ctx.err(format!("no earlier group {gname}")))?;
                let n = group.order();
                let rows = table_rows(&mut lines, &mut ctx, 1, n, n)?;
                let automorphism = GroupAutomorphism::from_images(group, &rows[0]).map_err(|e| ctx.err(e))?;
                Record::Auto { name: name.clone(), group: gname, automorphism }
            }
            "galex" => {
                let (Some(g), Some(f)) = (toks.get(2), toks.get(3)) else {
                    return Err(ctx.err("expected `galex <name> <group> <auto>`"));
                };
                let group = doc.group(g).ok_or_else(|| ctx.err(format!("no earlier group {g}")))?;
                let auto = match doc.find(f) {
                    Some(Record::Auto { automorphism, group: of, .. }) if of == g => automorphism,
                    _ => return Err(ctx.err(format!("no earlier automorphism {f} of {g}"))),
                };
                Record::Galex { name: name.clone(), group: g.to_string(), auto: f.to_string(), quandle: galex(group, auto) }
            }
            "cocycle" => {
                let (Some(qn), Some(gn)) = (toks.get(2), toks.get(3)) else {
                    return Err(ctx.err("expected `cocycle <name> <quandle> <group>`"));
                };
                let base = doc.quandle(qn).ok_or_else(|| ctx.err(format!("no earlier quandle {qn}")))?.clone();
                let lam = doc.group(gn).ok_or_else(|| ctx.err(format!("no earlier group {gn}")))?.clone();
                let (x, l) = (base.order(), lam.order());
                let rows = table_rows(&mut lines, &mut ctx, x, x, l)?;
                let section = if lines.peek_keyword() == Some("section") {
                    let (ln, toks) = lines.next().expect("peeked");
                    ctx.line = ln;
                    let s = toks[1..]
                        .iter()
                        .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| ctx.err("section labels must be positive integers"))?;
                    Some(s)
                } else {
                    None
                };
                let cocycle = Cocycle::new(base, lam, &rows, section).map_err(|e| ctx.err(e))?;
                Record::Cocycle { name: name.clone(), quandle: qn.to_string(), group: gn.to_string(), cocycle }
            }
            "knot" => Record::Knot(parse_braid(&toks.join(" ")).map_err(|e| ctx.err(e))?),
            other => return Err(ctx.err(format!("unknown record type {other:?}"))),
        };
        names.insert(name, ln);
        doc.records.push(record);
    }
    Ok(doc)
}

fn write_rows(out: &mut String, rows: impl IntoIterator<Item = Vec<usize>>) {
    for r in rows {
        let parts: Vec<String> = r.iter().map(|x| (x + 1).to_string()).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            Record::Quandle { name, quandle } => {
                writeln!(out, "quandle {name} {}", quandle.order())?;
                write_rows(&mut out, quandle.rows());
            }
            Record::Group { name, group } => {
                writeln!(out, "group {name} {}", group.order())?;
                write_rows(&mut out, group.elements().map(|a| group.row(a).iter().map(|&x| x as usize).collect()));
            }
            Record::PermGroup { name, degree, generators } => {
                writeln!(out, "permgroup {name} {degree} {}", generators.len())?;
                write_rows(&mut out, generators.iter().map(|g| g.images().iter().map(|&x| x as usize).collect()));
            }
            Record::Auto { name, group, automorphism } => {
                writeln!(out, "auto {name} {group}")?;
                write_rows(&mut out, [automorphism.images()]);
            }
            Record::Galex { name, group, auto, .. } => writeln!(out, "galex {name} {group} {auto}")?,
            Record::Cocycle { name, quandle, group, cocycle } => {
                writeln!(out, "cocycle {name} {quandle} {group}")?;
                write_rows(&mut out, cocycle.rows());
                if let Some(s) = cocycle.section() {
                    let parts: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
                    writeln!(out, "section {}", parts.join(" "))?;
                }
            }
            Record::Knot(k) => writeln!(out, "{k}")?,
        }
        f.write_str(&out)
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// One `sweep`/`symmetry` output row, tab-separated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub knot: String,
    pub quandle: String,
    pub psi: Vec<u64>,
    pub psi_m: Vec<u64>,
    pub psi_r: Vec<u64>,
    pub psi_rm: Vec<u64>,
    pub distinguished: Vec<Symmetry>,
}

fn join_counts(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dist = if self.distinguished.is_empty() {
            "-".to_string()
        } else {
            self.distinguished.iter().map(Symmetry::to_string).collect::<Vec<_>>().join(",")
        };
        write!(
            f,
            "{}\t{}\tpsi={}\tpsi_m={}\tpsi_r={}\tpsi_rm={}\tdistinguishes={}",
            self.knot,
            self.quandle,
            join_counts(&self.psi),
            join_counts(&self.psi_m),
            join_counts(&self.psi_r),
            join_counts(&self.psi_rm),
            dist
        )
    }
}

impl std::str::FromStr for ReportLine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.trim_end_matches('\n').split('\t').collect();
        let [knot, quandle, rest @ ..] = fields.as_slice() else {
            return Err("report line needs knot and quandle fields".into());
        };
        if rest.len() != 5 {
            return Err(format!("expected 7 tab-separated fields, found {}", fields.len()));
        }
        let value = |field: &str, key: &str| -> Result<String, String> {
            field
                .strip_prefix(key)
                .and_then(|v| v.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| format!("expected field {key}=…, found {field:?}"))
        };
        let counts = |field: &str, key: &str| -> Result<Vec<u64>, String> {
            value(field, key)?
                .split(',')
                .map(|c| c.parse().map_err(|_| format!("bad count {c:?} in {key}")))
                .collect()
        };
        let dist = value(rest[4], "distinguishes")?;
        let distinguished = if dist == "-" {
            Vec::new()
        } else {
            dist.split(',').map(str::parse).collect::<Result<_, _>>()?
        };
        Ok(ReportLine {
            knot: knot.to_string(),
            quandle: quandle.to_string(),
            psi: counts(rest[0], "psi")?,
            psi_m: counts(rest[1], "psi_m")?,
            psi_r: counts(rest[2], "psi_r")?,
            psi_rm: counts(rest[3], "psi_rm")?,
            distinguished,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R3: &str = "# dihedral quandle of order 3\nquandle r3 3\n1 3 2\n3 2 1\n2 1 3\n";

    #[test]
    fn parses_r3() {
        let doc = parse_document(R3).unwrap();
        assert_eq!(doc.quandle("r3").unwrap(), &Quandle::dihedral(3));
        assert_eq!(doc.to_string(), R3.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    }

    #[test]
    fn errors_name_line_and_record() {
        let bad = "quandle q 2\n1 1\n1 2\n";
        let err = parse_document(bad).unwrap_err();
        assert_eq!(err.to_string(), "line 1 (record q): column 1 is not a bijection");
        let err = parse_document("quandle q 2\n1 2\n").unwrap_err();
        assert_eq!(err.message, "unexpected end of input");
        let err = parse_document("quandle q 2\n1 2\n2 3\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn galex_record_builds_from_references() {
        let text = "group z3 3\n1 2 3\n2 3 1\n3 1 2\nauto neg z3\n1 3 2\ngalex r z3 neg\n";
        let doc = parse_document(text).unwrap();
        let qs = doc.quandles();
        assert_eq!(qs.len(), 1);
        assert_eq!(qs[0].quandle, Quandle::dihedral(3));
        assert!(qs[0].origin.is_some());
        assert_eq!(doc.to_string(), text);
        assert!(parse_document("galex r z3 neg\n").is_err());
    }

    #[test]
    fn report_round_trip() {
        let line = ReportLine {
            knot: "3_1".into(),
            quandle: "sl23ext".into(),
            psi: vec![1, 0, 0, 4],
            psi_m: vec![1, 0, 4, 0],
            psi_r: vec![1, 0, 0, 4],
            psi_rm: vec![1, 0, 4, 0],
            distinguished: vec![Symmetry::Mirror, Symmetry::ReverseMirror],
        };
        let s = line.to_string();
        assert_eq!(s, "3_1\tsl23ext\tpsi=1,0,0,4\tpsi_m=1,0,4,0\tpsi_r=1,0,0,4\tpsi_rm=1,0,4,0\tdistinguishes=m,rm");
        assert_eq!(s.parse::<ReportLine>().unwrap(), line);
    }
}
