//! Lexical layer of the task-file format: sections, definitions and task
//! lines, each piece tagged with its 1-based line and column.

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Spanned {
    fn new(text: &str, line: usize, col: usize) -> Spanned {
        Spanned {
            text: text.to_string(),
            line,
            col,
        }
    }

    /// The byte range `start..end` of `text` with its own position.
    pub fn slice(&self, start: usize, end: usize) -> Spanned {
        Spanned {
            text: self.text[start..end].to_string(),
            line: self.line,
            col: self.col + self.text[..start].chars().count(),
        }
    }

    /// Drops surrounding whitespace, keeping the column accurate.
    pub fn trim(&self) -> Spanned {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.slice(start, end)
    }

    pub fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    /// Re-anchors an error from parsing this fragment as a single line.
    pub fn relocate(&self, e: orderforge_core::Error) -> CliError {
        match e {
            orderforge_core::Error::Parse { column, message, .. } => CliError::Parse {
                line: self.line,
                column: self.col + column - 1,
                message,
            },
            other => self.error(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub kind: Spanned,
    pub name: Spanned,
    pub expr: Spanned,
}

#[derive(Clone, Debug)]
pub struct TaskLine {
    pub op: Spanned,
    pub args: Vec<(Spanned, Spanned)>,
}

#[derive(Clone, Debug, Default)]
pub struct TaskFile {
    pub ring: Vec<(Spanned, Spanned)>,
    pub defs: Vec<Definition>,
    pub tasks: Vec<TaskLine>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Ring,
    Define,
    Tasks,
}

/// Splits at `sep` outside `()`, `[]` and double quotes.
pub fn split_top(s: &Spanned, sep: impl Fn(char) -> bool) -> Result<Vec<Spanned>, CliError> {
    let mut depth: Vec<char> = Vec::new();
    let mut out = Vec::new();
    let mut start = 0;
    let mut quoted = None;
    for (i, c) in s.text.char_indices() {
        if c == '"' {
            quoted = if quoted.is_some() { None } else { Some(i) };
            continue;
        }
        if quoted.is_some() {
            continue;
        }
        match c {
            '(' | '[' => depth.push(c),
            ')' | ']' => {
                let open = if c == ')' { '(' } else { '[' };
                if depth.pop() != Some(open) {
                    return Err(s.slice(i, i).error(format!("unbalanced `{c}`")));
                }
            }
            _ if depth.is_empty() && sep(c) => {
                out.push(s.slice(start, i));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if let Some(q) = quoted {
        return Err(s.slice(q, q).error("unterminated quote"));
    }
    if let Some(c) = depth.last() {
        return Err(s.slice(s.text.len(), s.text.len()).error(format!("unclosed `{c}`")));
    }
    out.push(s.slice(start, s.text.len()));
    Ok(out)
}

/// Contents of `open ... close` wrapping the whole of `s`, if it does.
pub fn strip_wrapped(s: &Spanned, open: char, close: char) -> Option<Spanned> {
    let t = &s.text;
    if !(t.starts_with(open) && t.ends_with(close)) || t.len() < 2 {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        if c == '(' || c == '[' {
            depth += 1;
        } else if c == ')' || c == ']' {
            depth -= 1;
            if depth == 0 && i + c.len_utf8() < t.len() {
                return None;
            }
        }
    }
    Some(s.slice(open.len_utf8(), t.len() - close.len_utf8()))
}

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

pub fn parse(source: &str) -> Result<TaskFile, CliError> {
    let mut file = TaskFile::default();
    let mut section = None;
    for (k, raw) in source.lines().enumerate() {
        let line_no = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let line = Spanned::new(body, line_no, 1).trim();
        if line.text.is_empty() {
            continue;
        }
        if line.text.starts_with('[') && line.text.ends_with(']') && !line.text.contains('=') {
            section = Some(match &line.text[1..line.text.len() - 1] {
                "ring" => Section::Ring,
                "define" => Section::Define,
                "tasks" => Section::Tasks,
                other => return Err(line.error(format!("unknown section `[{other}]`"))),
            });
            continue;
        }
        match section {
            None => return Err(line.error("content before the first section header")),
            Some(Section::Ring) => {
                let eq = line.text.find('=').ok_or_else(|| line.error("expected `key = value`"))?;
                let key = line.slice(0, eq).trim();
                let value = line.slice(eq + 1, line.text.len()).trim();
                if !is_identifier(&key.text) {
                    return Err(key.error("expected a key"));
                }
                if value.text.is_empty() {
                    return Err(value.error("missing value"));
                }
                file.ring.push((key, value));
            }
            Some(Section::Define) => {
                let eq = line.text.find('=').ok_or_else(|| line.error("expected `kind name = expression`"))?;
                let head = split_top(&line.slice(0, eq).trim(), char::is_whitespace)?;
                let head: Vec<Spanned> = head.into_iter().filter(|s| !s.text.is_empty()).collect();
                if head.len() != 2 {
                    return Err(line.error("expected `kind name = expression`"));
                }
                if !is_identifier(&head[1].text) {
                    return Err(head[1].error(format!("bad name `{}`", head[1].text)));
                }
                let expr = line.slice(eq + 1, line.text.len()).trim();
                if expr.text.is_empty() {
                    return Err(expr.error("missing expression"));
                }
                file.defs.push(Definition {
                    kind: head[0].clone(),
                    name: head[1].clone(),
                    expr,
                });
            }
            Some(Section::Tasks) => {
                let words: Vec<Spanned> = split_top(&line, char::is_whitespace)?
                    .into_iter()
                    .filter(|s| !s.text.is_empty())
                    .collect();
                let op = words[0].clone();
                if !is_identifier(&op.text) {
                    return Err(op.error(format!("bad task name `{}`", op.text)));
                }
                let mut args: Vec<(Spanned, Spanned)> = Vec::new();
                for w in &words[1..] {
                    let eq = w.text.find('=').ok_or_else(|| w.error("expected `key=value`"))?;
                    let key = w.slice(0, eq);
                    let mut value = w.slice(eq + 1, w.text.len());
                    if value.text.len() >= 2 && value.text.starts_with('"') && value.text.ends_with('"') {
                        value = value.slice(1, value.text.len() - 1);
                    } else if value.text.contains('"') {
                        return Err(value.error("quotes must enclose the whole value"));
                    }
                    if !is_identifier(&key.text) {
                        return Err(key.error("expected an argument name"));
                    }
                    if value.text.is_empty() {
                        return Err(value.error("missing value"));
                    }
                    if args.iter().any(|(k, _)| k.text == key.text) {
                        return Err(key.error(format!("duplicate argument `{}`", key.text)));
                    }
                    args.push((key, value));
                }
                file.tasks.push(TaskLine { op, args });
            }
        }
    }
    Ok(file)
}
