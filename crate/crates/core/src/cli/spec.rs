//! The on-disk schema shared by the text format and JSON.
//!
//! Text format, one definition per block, `#` starts a comment:
//!
//! ```text
//! semiring f2
//!   elements 0 1
//!   zero 0
//!   one 1
//!   add 0 1
//!       1 0
//!   mul 0 0
//!       0 1
//! end
//!
//! monoid z2
//!   size 2
//!   unit 0
//!   op 0 1 1 0
//! end
//!
//! set two = 2
//! monad m = semimodule(f2)
//!
//! map flip
//!   from two
//!   to two
//!   table 1 0
//! end
//!
//! algebra line = free(1) over semimodule(f2)
//! algebra zero
//!   monad semimodule(f2)
//!   carrier 1
//!   structure 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
//! end
//!
//! family bad
//!   law dst
//!   monad semimodule(f2)
//!   override 1 1: 0 0 0 0
//! end
//!
//! family sigma
//!   morphism maybe -> semimodule(bool)
//!   builtin maybe_to
//! end
//! ```
//!
//! Tables are row-major; a key's values may continue on following lines
//! that hold only values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceSpec {
    #[serde(default)]
    pub semirings: Vec<SemiringDef>,
    #[serde(default)]
    pub monoids: Vec<MonoidDef>,
    #[serde(default)]
    pub sets: Vec<SetDef>,
    #[serde(default)]
    pub monads: Vec<MonadDef>,
    #[serde(default)]
    pub maps: Vec<MapDef>,
    #[serde(default)]
    pub algebras: Vec<AlgebraDef>,
    #[serde(default)]
    pub families: Vec<FamilyDef>,
}

impl WorkspaceSpec {
    pub fn merge(&mut self, other: WorkspaceSpec) {
        self.semirings.extend(other.semirings);
        self.monoids.extend(other.monoids);
        self.sets.extend(other.sets);
        self.monads.extend(other.monads);
        self.maps.extend(other.maps);
        self.algebras.extend(other.algebras);
        self.families.extend(other.families);
    }

    pub fn is_empty(&self) -> bool {
        *self == WorkspaceSpec::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub unit: usize,
    pub op: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadDef {
    pub name: String,
    pub expr: String,
}

/// `from` and `to` are set names or sizes; table entries are indices or
/// labels of the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub name: String,
    pub from: String,
    pub to: String,
    pub table: Vec<String>,
}

/// Either `free` (a base set) or `carrier` with a `structure` table on
/// `T(carrier)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub name: String,
    pub monad: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDef {
    pub sizes: Vec<u64>,
    pub table: Vec<u64>,
}

/// A law (`law` + `monad`) or a monad morphism (`source`, `target` and
/// either `builtin` or one component table per carrier size).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monad: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<ComponentDef>,
}

pub fn parse_json(path: &str, text: &str) -> Result<WorkspaceSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

struct Line<'a> {
    number: usize,
    indent: usize,
    words: Vec<&'a str>,
}

struct Parser<'a> {
    path: &'a str,
    lines: Vec<Line<'a>>,
    pos: usize,
}

fn is_value(w: &str) -> bool {
    !w.is_empty() && !KEYS.contains(&w) && w != "end"
}

const KEYS: &[&str] = &[
    "elements",
    "size",
    "zero",
    "one",
    "add",
    "mul",
    "unit",
    "op",
    "from",
    "to",
    "table",
    "monad",
    "free",
    "carrier",
    "structure",
    "law",
    "morphism",
    "builtin",
    "component",
    "override",
];

pub fn parse_text(path: &str, text: &str) -> Result<WorkspaceSpec> {
    let lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            if words.is_empty() {
                return None;
            }
            let indent = body.len() - body.trim_start().len();
            Some(Line { number: i + 1, indent, words })
        })
        .collect();
    let mut p = Parser { path, lines, pos: 0 };
    let mut spec = WorkspaceSpec::default();
    while p.pos < p.lines.len() {
        p.definition(&mut spec)?;
    }
    Ok(spec)
}

type Fields<'a> = Vec<(usize, &'a str, Vec<&'a str>)>;

impl<'a> Parser<'a> {
    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.into(),
            line,
            column,
            message: message.into(),
        }
    }

    fn definition(&mut self, spec: &mut WorkspaceSpec) -> Result<()> {
        let line = &self.lines[self.pos];
        let number = line.number;
        let col = line.indent + 1;
        let words = line.words.clone();
        self.pos += 1;
        let kind = words[0];
        let name = *words.get(1).ok_or_else(|| self.error(number, col, format!("`{kind}` needs a name")))?;
        if words.get(2) == Some(&"=") {
            let rest = &words[3..];
            if rest.is_empty() {
                return Err(self.error(number, col, "empty definition after `=`"));
            }
            return self.one_liner(spec, number, kind, name, rest);
        }
        if words.len() > 2 {
            return Err(self.error(number, col, format!("unexpected `{}` after the name", words[2])));
        }
        let fields = self.block(number, kind)?;
        match kind {
            "semiring" => spec.semirings.push(self.semiring(number, name, &fields)?),
            "monoid" => spec.monoids.push(self.monoid(number, name, &fields)?),
            "set" => spec.sets.push(SetDef {
                name: name.into(),
                elements: self.words(&fields, "elements").map(|w| w.iter().map(|s| s.to_string()).collect()),
                size: self.scalar(&fields, "size")?,
            }),
            "map" => spec.maps.push(MapDef {
                name: name.into(),
                from: self.required_word(number, &fields, "from")?,
                to: self.required_word(number, &fields, "to")?,
                table: self.words(&fields, "table").unwrap_or_default().iter().map(|s| s.to_string()).collect(),
            }),
            "algebra" => spec.algebras.push(AlgebraDef {
                name: name.into(),
                monad: self.joined(&fields, "monad").ok_or_else(|| self.error(number, 1, "algebra needs `monad`"))?,
                free: self.joined(&fields, "free"),
                carrier: self.joined(&fields, "carrier"),
                structure: self.numbers(&fields, "structure")?,
            }),
            "family" => spec.families.push(self.family(number, name, &fields)?),
            "monad" => return Err(self.error(number, col, "write monads as `monad <name> = <expression>`")),
            other => return Err(self.error(number, col, format!("unknown section `{other}`"))),
        }
        Ok(())
    }

    fn one_liner(&self, spec: &mut WorkspaceSpec, number: usize, kind: &str, name: &str, rest: &[&str]) -> Result<()> {
        match kind {
            "monad" => spec.monads.push(MonadDef {
                name: name.into(),
                expr: rest.join(""),
            }),
            "set" => {
                let size = rest[0].parse().map_err(|_| self.error(number, 1, format!("`{}` is not a size", rest[0])))?;
                spec.sets.push(SetDef {
                    name: name.into(),
                    elements: None,
                    size: Some(size),
                });
            }
            "algebra" => {
                let over = rest
                    .iter()
                    .position(|w| *w == "over")
                    .ok_or_else(|| self.error(number, 1, "expected `free(<set>) over <monad>`"))?;
                let head = rest[..over].join("");
                let base = head
                    .strip_prefix("free(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| self.error(number, 1, format!("expected `free(<set>)`, found `{head}`")))?;
                spec.algebras.push(AlgebraDef {
                    name: name.into(),
                    monad: rest[over + 1..].join(""),
                    free: Some(base.into()),
                    carrier: None,
                    structure: None,
                });
            }
            other => return Err(self.error(number, 1, format!("`{other}` has no one-line form"))),
        }
        Ok(())
    }

    fn block(&mut self, start: usize, kind: &str) -> Result<Fields<'a>> {
        let mut fields: Fields<'a> = Vec::new();
        loop {
            let Some(line) = self.lines.get(self.pos) else {
                return Err(self.error(start, 1, format!("`{kind}` block is not closed by `end`")));
            };
            self.pos += 1;
            if line.words == ["end"] {
                return Ok(fields);
            }
            let head = line.words[0];
            if is_value(head) {
                match fields.last_mut() {
                    Some(last) if !last.2.is_empty() || matches!(last.1, "add" | "mul" | "op" | "table" | "structure") => {
                        last.2.extend(line.words.iter().copied());
                    }
                    _ => return Err(self.error(line.number, line.indent + 1, format!("unknown key `{head}`"))),
                }
                continue;
            }
            if head == "end" {
                return Err(self.error(line.number, line.indent + 1, "`end` takes no arguments"));
            }
            fields.push((line.number, head, line.words[1..].to_vec()));
        }
    }

    fn words(&self, fields: &Fields<'a>, key: &str) -> Option<Vec<&'a str>> {
        fields.iter().find(|f| f.1 == key).map(|f| f.2.clone())
    }

    fn joined(&self, fields: &Fields<'a>, key: &str) -> Option<String> {
        self.words(fields, key).map(|w| w.join(""))
    }

    fn required_word(&self, number: usize, fields: &Fields<'a>, key: &str) -> Result<String> {
        self.joined(fields, key).ok_or_else(|| self.error(number, 1, format!("missing `{key}`")))
    }

    fn parse_numbers<T: std::str::FromStr>(&self, line: usize, words: &[&str]) -> Result<Vec<T>> {
        words
            .iter()
            .map(|w| w.parse().map_err(|_| self.error(line, 1, format!("`{w}` is not a non-negative integer"))))
            .collect()
    }

    fn numbers<T: std::str::FromStr>(&self, fields: &Fields<'a>, key: &str) -> Result<Option<Vec<T>>> {
        match fields.iter().find(|f| f.1 == key) {
            None => Ok(None),
            Some((line, _, w)) => self.parse_numbers(*line, w).map(Some),
        }
    }

    fn scalar<T: std::str::FromStr + Copy>(&self, fields: &Fields<'a>, key: &str) -> Result<Option<T>> {
        match fields.iter().find(|f| f.1 == key) {
            None => Ok(None),
            Some((line, _, w)) if w.len() == 1 => Ok(Some(self.parse_numbers::<T>(*line, w)?[0])),
            Some((line, _, _)) => Err(self.error(*line, 1, format!("`{key}` takes one value"))),
        }
    }

    fn order(&self, number: usize, fields: &Fields<'a>) -> Result<(Option<Vec<String>>, Option<usize>, usize)> {
        let elements: Option<Vec<String>> = self.words(fields, "elements").map(|w| w.iter().map(|s| s.to_string()).collect());
        let size: Option<usize> = self.scalar(fields, "size")?;
        let n = match (&elements, size) {
            (Some(e), _) => e.len(),
            (None, Some(n)) => n,
            (None, None) => return Err(self.error(number, 1, "give `elements` or `size`")),
        };
        Ok((elements, size, n))
    }

    fn element(&self, line: usize, word: &str, elements: &Option<Vec<String>>) -> Result<usize> {
        if let Some(i) = elements.as_ref().and_then(|e| e.iter().position(|l| l == word)) {
            return Ok(i);
        }
        word.parse()
            .map_err(|_| self.error(line, 1, format!("`{word}` is neither an element nor an index")))
    }

    fn element_field(&self, number: usize, fields: &Fields<'a>, key: &str, elements: &Option<Vec<String>>) -> Result<usize> {
        match fields.iter().find(|f| f.1 == key) {
            Some((line, _, w)) if w.len() == 1 => self.element(*line, w[0], elements),
            Some((line, _, _)) => Err(self.error(*line, 1, format!("`{key}` takes one value"))),
            None => Err(self.error(number, 1, format!("missing `{key}`"))),
        }
    }

    fn matrix(&self, number: usize, fields: &Fields<'a>, key: &str, n: usize, elements: &Option<Vec<String>>) -> Result<Vec<Vec<usize>>> {
        let (line, _, words) = fields
            .iter()
            .find(|f| f.1 == key)
            .ok_or_else(|| self.error(number, 1, format!("missing `{key}` table")))?;
        let flat = words.iter().map(|w| self.element(*line, w, elements)).collect::<Result<Vec<usize>>>()?;
        if n == 0 || flat.len() != n * n {
            return Err(self.error(*line, 1, format!("`{key}` needs {} entries, found {}", n * n, flat.len())));
        }
        Ok(flat.chunks(n).map(<[usize]>::to_vec).collect())
    }

    fn semiring(&self, number: usize, name: &str, fields: &Fields<'a>) -> Result<SemiringDef> {
        let (elements, size, n) = self.order(number, fields)?;
        Ok(SemiringDef {
            name: name.into(),
            zero: self.element_field(number, fields, "zero", &elements)?,
            one: self.element_field(number, fields, "one", &elements)?,
            add: self.matrix(number, fields, "add", n, &elements)?,
            mul: self.matrix(number, fields, "mul", n, &elements)?,
            elements,
            size,
        })
    }

    fn monoid(&self, number: usize, name: &str, fields: &Fields<'a>) -> Result<MonoidDef> {
        let (elements, size, n) = self.order(number, fields)?;
        Ok(MonoidDef {
            name: name.into(),
            unit: self.element_field(number, fields, "unit", &elements)?,
            op: self.matrix(number, fields, "op", n, &elements)?,
            elements,
            size,
        })
    }

    fn components(&self, fields: &Fields<'a>, key: &str) -> Result<Vec<ComponentDef>> {
        fields
            .iter()
            .filter(|f| f.1 == key)
            .map(|(line, _, words)| {
                let joined = words.join(" ");
                let (sizes, table) = joined
                    .split_once(':')
                    .ok_or_else(|| self.error(*line, 1, format!("`{key}` is `<sizes>: <table>`")))?;
                let sizes: Vec<&str> = sizes.split_whitespace().collect();
                let table: Vec<&str> = table.split_whitespace().collect();
                Ok(ComponentDef {
                    sizes: self.parse_numbers(*line, &sizes)?,
                    table: self.parse_numbers(*line, &table)?,
                })
            })
            .collect()
    }

    fn family(&self, number: usize, name: &str, fields: &Fields<'a>) -> Result<FamilyDef> {
        let (source, target) = match self.words(fields, "morphism") {
            None => (None, None),
            Some(w) => {
                let joined = w.join("");
                let (s, t) = joined
                    .split_once("->")
                    .ok_or_else(|| self.error(number, 1, "`morphism` is `<source> -> <target>`"))?;
                (Some(s.to_string()), Some(t.to_string()))
            }
        };
        Ok(FamilyDef {
            name: name.into(),
            law: self.joined(fields, "law"),
            monad: self.joined(fields, "monad"),
            source,
            target,
            builtin: self.joined(fields, "builtin"),
            components: self.components(fields, "component")?,
            overrides: self.components(fields, "override")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_an_empty_spec() {
        assert!(parse_text("empty.ws", "").unwrap().is_empty());
        assert!(parse_text("c.ws", "# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn tables_continue_across_lines() {
        let spec = parse_text("m.ws", "monoid z2\n  size 2\n  unit 0\n  op 0 1\n     1 0\nend\n").unwrap();
        assert_eq!(spec.monoids[0].op, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn one_liners() {
        let spec = parse_text("o.ws", "set two = 2\nmonad m = product(semimodule(f2), maybe)\nalgebra l = free(two) over m\n").unwrap();
        assert_eq!(spec.sets[0].size, Some(2));
        assert_eq!(spec.monads[0].expr, "product(semimodule(f2),maybe)");
        assert_eq!(spec.algebras[0].free.as_deref(), Some("two"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_text("bad.ws", "semiring s\n  size 2\n  zero x\nend\n") {
            Err(Error::Parse { line, path, .. }) => assert_eq!((line, path.as_str()), (3, "bad.ws")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_text("open.ws", "set a\n size 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text("k.ws", "widget w\nend\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn families() {
        let text = "family f\n  law dst\n  monad semimodule(f2)\n  override 1 1: 0 0 0 0\nend\nfamily s\n  morphism maybe -> semimodule(bool)\n  component 0: 0\n  component 1: 1 0\nend\n";
        let spec = parse_text("f.ws", text).unwrap();
        assert_eq!(spec.families[0].overrides[0].sizes, vec![1, 1]);
        assert_eq!(spec.families[1].source.as_deref(), Some("maybe"));
        assert_eq!(spec.families[1].components[1].table, vec![1, 0]);
    }

    #[test]
    fn json_round_trip() {
        let spec = parse_text("o.ws", "set two = 2\nmonad m = maybe\n").unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(parse_json("o.json", &text).unwrap(), spec);
        assert!(matches!(parse_json("x.json", "{\"sets\": 3}"), Err(Error::Parse { line: 1, .. })));
    }
}
