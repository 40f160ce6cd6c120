//! Experiment specification: an INI file with ring, module, K, bound and operation sections.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use ini::Ini;

use crate::CliError;

/// How K is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KChoice {
    Trivial,
    Canonical,
    Explicit(String),
}

/// A parsed call `name(arg, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub name: String,
    pub args: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub name: String,
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub defining: Vec<String>,
    /// Named modules and ideals in declaration order.
    pub objects: Vec<(String, Call)>,
    pub k: KChoice,
    pub bound: usize,
    pub window: RangeInclusive<i32>,
    pub ops: Vec<Call>,
    pub output: Option<String>,
}

pub const OBJECT_KINDS: &[&str] = &["ideal", "quotient", "free", "canonical", "tensor", "hom", "ext", "sum", "twist", "link"];

pub const OPERATIONS: &[&str] = &[
    "gb",
    "colon",
    "invariants",
    "betti",
    "hf",
    "ext",
    "tor",
    "perfect",
    "gk_perfect",
    "semidualizing",
    "link",
    "is_linked",
    "double_link",
    "cyclic_link",
    "self_link",
    "horizontal",
    "regular_sequence",
    "change_of_rings",
    "walk",
    "depth_formula",
    "unmixed",
    "local_cohomology",
    "serre",
    "generalized_cm",
    "bass",
    "schenzel",
    "duality",
    "class",
    "foxby",
    "pk_dim",
    "colink",
    "adjoint",
];

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line, col, msg: msg.into() }
}

/// Splits `a, b(c, d), e` at top-level commas.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

pub fn parse_call(src: &str, line: usize) -> Result<Call, CliError> {
    let src = src.trim();
    let open = src.find('(').ok_or_else(|| syntax(line, 1, format!("expected a call, found `{src}`")))?;
    if !src.ends_with(')') {
        return Err(syntax(line, src.len(), "missing closing parenthesis"));
    }
    let name = src[..open].trim().to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax(line, 1, format!("bad name `{name}`")));
    }
    let args = split_args(&src[open + 1..src.len() - 1]);
    Ok(Call { name, args, line })
}

pub fn parse_window(s: &str) -> Option<RangeInclusive<i32>> {
    let (a, b) = s.split_once("..")?;
    let lo: i32 = a.trim().parse().ok()?;
    let hi: i32 = b.trim().parse().ok()?;
    (lo <= hi).then_some(lo..=hi)
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// Line of the first occurrence of `key =` inside `[section]`.
fn locate(text: &str, section: &str, key: &str, nth: usize) -> usize {
    let mut in_section = false;
    let mut seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.starts_with('[') {
            in_section = l == format!("[{section}]");
            continue;
        }
        if in_section {
            if let Some((k, _)) = l.split_once('=') {
                if k.trim() == key {
                    if seen == nth {
                        return i + 1;
                    }
                    seen += 1;
                }
            }
        }
    }
    0
}

/// Identifiers in an argument that look like names.
fn referenced_names(arg: &str) -> Vec<String> {
    let a = arg.trim();
    if a.chars().next().is_some_and(|c| c.is_ascii_uppercase()) && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        vec![a.to_string()]
    } else if let Some((l, r)) = a.split_once("->") {
        referenced_names(l).into_iter().chain(referenced_names(r)).collect()
    } else {
        Vec::new()
    }
}

pub fn parse_spec(text: &str) -> Result<ExperimentSpec, CliError> {
    let ini = Ini::load_from_str(text).map_err(|e| syntax(e.line, e.col, e.msg.to_string()))?;
    let ring = ini.section(Some("ring")).ok_or_else(|| syntax(1, 1, "missing [ring] section"))?;
    let characteristic = match ring.get("char") {
        Some(p) => p.trim().parse().map_err(|_| syntax(locate(text, "ring", "char", 0), 1, format!("bad characteristic `{p}`")))?,
        None => 32003,
    };
    let vars = list(ring.get("vars").ok_or_else(|| syntax(1, 1, "missing vars in [ring]"))?);
    let defining = ring.get("defining").map(list).unwrap_or_default();
    let name = ini.section(None::<String>).and_then(|s| s.get("name")).unwrap_or("experiment").to_string();

    let mut objects = Vec::new();
    let mut names = BTreeSet::new();
    if let Some(sec) = ini.section(Some("modules")) {
        let mut counts = std::collections::HashMap::new();
        for (k, v) in sec.iter() {
            let nth = counts.entry(k.to_string()).or_insert(0usize);
            let line = locate(text, "modules", k, *nth);
            *nth += 1;
            if !k.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
                return Err(syntax(line, 1, format!("object names start with an upper-case letter: `{k}`")));
            }
            if k == "K" || k == "R" {
                return Err(syntax(line, 1, format!("`{k}` is reserved")));
            }
            if !names.insert(k.to_string()) {
                return Err(syntax(line, 1, format!("duplicate name `{k}`")));
            }
            let call = parse_call(v, line)?;
            if !OBJECT_KINDS.contains(&call.name.as_str()) {
                return Err(syntax(line, 1, format!("unknown object kind `{}`", call.name)));
            }
            for a in &call.args {
                for r in referenced_names(a) {
                    if (!names.contains(&r) && r != "K" && r != "R") || r == k {
                        return Err(CliError::UnknownName(r));
                    }
                }
            }
            objects.push((k.to_string(), call));
        }
    }

    let k = match ini.section(Some("k")) {
        None => KChoice::Trivial,
        Some(sec) => match sec.get("kind").map(str::trim) {
            None | Some("trivial") => KChoice::Trivial,
            Some("canonical") => KChoice::Canonical,
            Some("explicit") => {
                let m = sec.get("module").ok_or_else(|| syntax(locate(text, "k", "kind", 0), 1, "explicit K needs module ="))?;
                if !names.contains(m.trim()) {
                    return Err(CliError::UnknownName(m.trim().to_string()));
                }
                KChoice::Explicit(m.trim().to_string())
            }
            Some(other) => return Err(syntax(locate(text, "k", "kind", 0), 1, format!("unknown K kind `{other}`"))),
        },
    };

    let mut bound = 4;
    let mut window = -4..=8;
    if let Some(sec) = ini.section(Some("bounds")) {
        if let Some(b) = sec.get("bound") {
            bound = b.trim().parse().map_err(|_| syntax(locate(text, "bounds", "bound", 0), 1, format!("bad bound `{b}`")))?;
        }
        if let Some(w) = sec.get("window") {
            window = parse_window(w).ok_or_else(|| syntax(locate(text, "bounds", "window", 0), 1, format!("bad window `{w}`")))?;
        }
    }

    let mut ops = Vec::new();
    if let Some(sec) = ini.section(Some("ops")) {
        for (nth, v) in sec.get_all("op").enumerate() {
            let line = locate(text, "ops", "op", nth);
            let call = parse_call(v, line)?;
            if !OPERATIONS.contains(&call.name.as_str()) {
                return Err(syntax(line, 1, format!("unknown operation `{}`", call.name)));
            }
            for a in &call.args {
                for r in referenced_names(a) {
                    if !names.contains(&r) && r != "K" && r != "R" {
                        return Err(CliError::UnknownName(r));
                    }
                }
            }
            ops.push(call);
        }
    }
    let output = ini.section(Some("output")).and_then(|s| s.get("path")).map(str::to_string);
    Ok(ExperimentSpec { name, characteristic, vars, defining, objects, k, bound, window, ops, output })
}
