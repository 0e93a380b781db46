//! Scene text -> AST, with per-line error recovery.

use std::collections::HashMap;

use super::{Diagnostic, Scene, Stmt, TheoremId};

struct Tok<'a> {
    text: &'a str,
    col: u32,
}

/// Split one source line into whitespace-separated tokens, dropping
/// everything from the first `#` on.  Columns are 1-based bytes.
fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut toks = Vec::new();
    let mut start = None;
    for (i, b) in code.bytes().enumerate() {
        if b.is_ascii_whitespace() {
            if let Some(s) = start.take() {
                toks.push(Tok {
                    text: &code[s..i],
                    col: s as u32 + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        toks.push(Tok {
            text: &code[s..],
            col: s as u32 + 1,
        });
    }
    toks
}

/// Decimal or scientific reals only; hex floats, inf and nan are all
/// rejected up front so `f64::from_str` never smuggles them in.
fn parse_real(tok: &str) -> Option<f64> {
    let ok = !tok.is_empty()
        && tok
            .bytes()
            .all(|b| matches!(b, b'0'..=b'9' | b'+' | b'-' | b'.' | b'e' | b'E'));
    if !ok {
        return None;
    }
    tok.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn valid_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct LineParser<'a> {
    toks: &'a [Tok<'a>],
    next: usize,
    line_no: u32,
    /// Column just past the end of the last token, for "missing
    /// argument" diagnostics.
    end_col: u32,
}

impl<'a> LineParser<'a> {
    fn take(&mut self, what: &str) -> Result<&'a Tok<'a>, Diagnostic> {
        match self.toks.get(self.next) {
            Some(t) => {
                self.next += 1;
                Ok(t)
            }
            None => Err(self.err_at(self.end_col, format!("missing {what}"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<String, Diagnostic> {
        let t = self.take(what)?;
        if valid_name(t.text) {
            Ok(t.text.to_string())
        } else {
            Err(self.err_at(t.col, format!("invalid name `{}` for {what}", t.text)))
        }
    }

    fn real(&mut self, what: &str) -> Result<f64, Diagnostic> {
        let t = self.take(what)?;
        parse_real(t.text)
            .ok_or_else(|| self.err_at(t.col, format!("invalid real `{}` for {what}", t.text)))
    }

    fn finish(&mut self, stmt: Stmt) -> Result<Stmt, Diagnostic> {
        if let Some(t) = self.toks.get(self.next) {
            return Err(self.err_at(t.col, format!("unexpected trailing token `{}`", t.text)));
        }
        Ok(stmt)
    }

    fn err_at(&self, col: u32, message: String) -> Diagnostic {
        Diagnostic {
            line: self.line_no,
            col,
            message,
        }
    }
}

/// The assertion bound: either a glued `deviation<=REAL` token or the
/// two tokens `deviation<=` REAL.
fn parse_bound(p: &mut LineParser) -> Result<f64, Diagnostic> {
    let t = p.take("`deviation<=BOUND`")?;
    let col = t.col;
    match t.text.strip_prefix("deviation<=") {
        Some("") => p.real("assertion bound"),
        Some(rest) => parse_real(rest)
            .ok_or_else(|| p.err_at(col, format!("invalid real `{rest}` for assertion bound"))),
        None => Err(p.err_at(col, format!("expected `deviation<=BOUND`, got `{}`", t.text))),
    }
}

fn parse_stmt(toks: &[Tok], line_no: u32) -> Result<Option<(Stmt, u32)>, Diagnostic> {
    let Some(kw) = toks.first() else {
        return Ok(None); // blank or comment-only line
    };
    let end_col = toks.last().map(|t| t.col + t.text.len() as u32).unwrap_or(1);
    let mut p = LineParser {
        toks,
        next: 1,
        line_no,
        end_col,
    };
    let stmt = match kw.text {
        "ball" => {
            let s = p.real("ball radius")?;
            p.finish(Stmt::Ball(s))?
        }
        "point" => {
            let name = p.name("point name")?;
            let re = p.real("x coordinate")?;
            let im = p.real("y coordinate")?;
            p.finish(Stmt::Point { name, re, im })?
        }
        "line" => {
            let name = p.name("line name")?;
            let a = p.name("first point")?;
            let b = p.name("second point")?;
            p.finish(Stmt::Line { name, a, b })?
        }
        "triangle" => {
            let name = p.name("figure name")?;
            let verts = [
                p.name("vertex")?,
                p.name("vertex")?,
                p.name("vertex")?,
            ];
            p.finish(Stmt::Triangle { name, verts })?
        }
        "quad" => {
            let name = p.name("figure name")?;
            let verts = [
                p.name("vertex")?,
                p.name("vertex")?,
                p.name("vertex")?,
                p.name("vertex")?,
            ];
            p.finish(Stmt::Quad { name, verts })?
        }
        "cevian" => {
            let name = p.name("point name")?;
            let line = p.name("carrier line")?;
            let t = p.real("parameter")?;
            p.finish(Stmt::Cevian { name, line, t })?
        }
        "assert" => {
            let t = p.take("theorem id")?;
            let theorem = TheoremId::from_token(t.text)
                .ok_or_else(|| p.err_at(t.col, format!("unknown theorem id `{}`", t.text)))?;
            let bound = parse_bound(&mut p)?;
            p.finish(Stmt::Assert { theorem, bound })?
        }
        other => {
            return Err(Diagnostic {
                line: line_no,
                col: kw.col,
                message: format!("unknown statement keyword `{other}`"),
            })
        }
    };
    Ok(Some((stmt, kw.col)))
}

/// Names bind in a single namespace shared by points, lines, figures
/// and cevians.
fn defined_name(stmt: &Stmt) -> Option<&str> {
    match stmt {
        Stmt::Point { name, .. }
        | Stmt::Line { name, .. }
        | Stmt::Triangle { name, .. }
        | Stmt::Quad { name, .. }
        | Stmt::Cevian { name, .. } => Some(name),
        _ => None,
    }
}

fn check_semantics(stmts: &[(Stmt, u32, u32)], diags: &mut Vec<Diagnostic>) {
    let mut defined: HashMap<&str, u32> = HashMap::new();
    for (stmt, line, col) in stmts {
        if let Some(name) = defined_name(stmt) {
            if defined.insert(name, *line).is_some() {
                diags.push(Diagnostic {
                    line: *line,
                    col: *col,
                    message: format!("duplicate name `{name}`"),
                });
            }
        }
    }

    let is_point = |n: &str| {
        stmts.iter().any(|(s, _, _)| {
            matches!(s, Stmt::Point { name, .. } | Stmt::Cevian { name, .. } if name == n)
        })
    };
    let is_line =
        |n: &str| stmts.iter().any(|(s, _, _)| matches!(s, Stmt::Line { name, .. } if name == n));
    let want_point = |n: &str, line: u32, col: u32, diags: &mut Vec<Diagnostic>| {
        if !is_point(n) {
            diags.push(Diagnostic {
                line,
                col,
                message: format!("reference `{n}` does not name a point"),
            });
        }
    };

    let mut ball = 1.0;
    let mut ball_seen = false;
    let mut point_seen = false;
    for (stmt, line, col) in stmts {
        match stmt {
            Stmt::Ball(s) => {
                if ball_seen {
                    diags.push(Diagnostic {
                        line: *line,
                        col: *col,
                        message: "duplicate ball statement".into(),
                    });
                } else if point_seen {
                    diags.push(Diagnostic {
                        line: *line,
                        col: *col,
                        message: "ball statement must precede point definitions".into(),
                    });
                } else if !(*s > 0.0) {
                    diags.push(Diagnostic {
                        line: *line,
                        col: *col,
                        message: format!("ball radius must be positive, got {s}"),
                    });
                } else {
                    ball = *s;
                }
                ball_seen = true;
            }
            Stmt::Point { name, re, im } => {
                point_seen = true;
                if re * re + im * im >= ball * ball {
                    diags.push(Diagnostic {
                        line: *line,
                        col: *col,
                        message: format!("point `{name}` is outside ball of radius {ball}"),
                    });
                }
            }
            Stmt::Line { a, b, .. } => {
                want_point(a, *line, *col, diags);
                want_point(b, *line, *col, diags);
            }
            Stmt::Triangle { verts, .. } => {
                for v in verts {
                    want_point(v, *line, *col, diags);
                }
            }
            Stmt::Quad { verts, .. } => {
                for v in verts {
                    want_point(v, *line, *col, diags);
                }
            }
            Stmt::Cevian { line: carrier, .. } => {
                point_seen = true;
                if !is_line(carrier) {
                    diags.push(Diagnostic {
                        line: *line,
                        col: *col,
                        message: format!("reference `{carrier}` does not name a line"),
                    });
                }
            }
            Stmt::Assert { .. } => {}
        }
    }
}

/// Parse scene text.  All diagnostics from one pass are returned
/// together; the scene is only produced when there are none.
pub fn parse(text: &str) -> Result<Scene, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut stmts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx as u32 + 1;
        let toks = tokenize(raw);
        match parse_stmt(&toks, line_no) {
            Ok(Some((stmt, col))) => stmts.push((stmt, line_no, col)),
            Ok(None) => {}
            Err(d) => diags.push(d),
        }
    }
    check_semantics(&stmts, &mut diags);
    if diags.is_empty() {
        Ok(Scene {
            stmts: stmts.into_iter().map(|(s, _, _)| s).collect(),
        })
    } else {
        Err(diags)
    }
}
