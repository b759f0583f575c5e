//! The line-oriented gem text format.
//!
//! ```text
//! gem fig1
//! colors 3
//! vertices 8
//! color 0: 1-2 3-4 5-6 7-8
//! color 1: 1-8 2-3 4-5 6-7
//! color 2: 1-7 2-6 3-5 4-8
//! ```
//!
//! `#` starts a comment. Every color `0..d` appears exactly once and lists its
//! `n/2` matched pairs.

use std::fmt::Write as _;

use crate::error::{GemError, ParseError};
use crate::gem::Gem;

/// A gem together with the name given on its `gem` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GemFile {
    pub name: String,
    pub gem: Gem,
}

struct Line<'a> {
    number: usize,
    // byte offset of `text` within the original line
    offset: usize,
    text: &'a str,
}

fn significant_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let offset = body.len() - trimmed.len();
            let text = trimmed.trim_end();
            (!text.is_empty()).then_some(Line {
                number: i + 1,
                offset,
                text,
            })
        })
        .collect()
}

fn keyword_value<'a>(line: &Line<'a>, keyword: &str) -> Result<&'a str, ParseError> {
    let mut parts = line.text.splitn(2, char::is_whitespace);
    let head = parts.next().unwrap_or("");
    if head != keyword {
        return Err(ParseError::syntax(
            line.number,
            line.offset + 1,
            format!("expected `{keyword}`, found `{head}`"),
        ));
    }
    let rest = parts.next().unwrap_or("").trim();
    if rest.is_empty() {
        return Err(ParseError::syntax(
            line.number,
            line.offset + head.len() + 1,
            format!("`{keyword}` needs a value"),
        ));
    }
    Ok(rest)
}

fn number(line: &Line<'_>, keyword: &str) -> Result<usize, ParseError> {
    let value = keyword_value(line, keyword)?;
    value.parse().map_err(|_| {
        ParseError::syntax(
            line.number,
            line.offset + keyword.len() + 2,
            format!("`{value}` is not a number"),
        )
    })
}

/// Column (1-based) of `sub` inside `line`, where `sub` borrows from it.
fn column_of(line: &Line<'_>, sub: &str) -> usize {
    line.offset + (sub.as_ptr() as usize - line.text.as_ptr() as usize) + 1
}

/// Parses the text format into a validated gem.
pub fn parse_gem(src: &str) -> Result<GemFile, ParseError> {
    let lines = significant_lines(src);
    let header = |idx: usize, what: &str| {
        lines.get(idx).ok_or_else(|| {
            let last = lines.last().map_or(1, |l| l.number + 1);
            ParseError::syntax(last, 1, format!("missing `{what}` line"))
        })
    };
    let name_line = header(0, "gem")?;
    let name = keyword_value(name_line, "gem")?.to_string();
    let colors_line = header(1, "colors")?;
    let color_count = number(colors_line, "colors")?;
    if color_count < 2 {
        return Err(ParseError::invalid(
            colors_line.number,
            1,
            GemError::TooFewColors(color_count),
        ));
    }
    let vertices_line = header(2, "vertices")?;
    let n = number(vertices_line, "vertices")?;
    if n % 2 == 1 {
        return Err(ParseError::invalid(
            vertices_line.number,
            1,
            GemError::OddVertexCount(n),
        ));
    }
    if n < 2 {
        return Err(ParseError::invalid(
            vertices_line.number,
            1,
            GemError::TooFewVertices(n),
        ));
    }

    let mut tables: Vec<Option<Vec<usize>>> = vec![None; color_count];
    for line in &lines[3..] {
        let (head, pairs) = line.text.split_once(':').ok_or_else(|| {
            ParseError::syntax(
                line.number,
                line.offset + 1,
                "expected `color <c>: a-b ...`",
            )
        })?;
        let color_str = keyword_value(
            &Line {
                number: line.number,
                offset: line.offset,
                text: head,
            },
            "color",
        )?;
        let color: usize = color_str.parse().map_err(|_| {
            ParseError::syntax(
                line.number,
                column_of(line, color_str),
                format!("`{color_str}` is not a color"),
            )
        })?;
        if color >= color_count {
            return Err(ParseError::invalid(
                line.number,
                column_of(line, color_str),
                GemError::ColorOutOfRange {
                    color,
                    count: color_count,
                },
            ));
        }
        if tables[color].is_some() {
            return Err(ParseError::syntax(
                line.number,
                column_of(line, color_str),
                format!("color {color} listed twice"),
            ));
        }
        let mut table = vec![0usize; n];
        for token in pairs.split_whitespace() {
            let col = column_of(line, token);
            let (a, b) = token
                .split_once('-')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| {
                    ParseError::syntax(line.number, col, format!("`{token}` is not a pair a-b"))
                })?;
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(ParseError::invalid(
                        line.number,
                        col,
                        GemError::VertexOutOfRange {
                            color,
                            vertex: v,
                            n,
                        },
                    ));
                }
            }
            if a == b {
                return Err(ParseError::invalid(
                    line.number,
                    col,
                    GemError::FixedPoint { color, vertex: a },
                ));
            }
            for (x, y) in [(a, b), (b, a)] {
                if table[x - 1] != 0 {
                    return Err(ParseError::invalid(
                        line.number,
                        col,
                        GemError::NotInvolution { color, vertex: x },
                    ));
                }
                table[x - 1] = y;
            }
        }
        if table.contains(&0) {
            return Err(ParseError::invalid(
                line.number,
                line.offset + 1,
                GemError::MissingColor(color),
            ));
        }
        tables[color] = Some(table);
    }
    let end = lines.last().map_or(1, |l| l.number);
    let tables = tables
        .into_iter()
        .enumerate()
        .map(|(c, t)| t.ok_or_else(|| ParseError::invalid(end, 1, GemError::MissingColor(c))))
        .collect::<Result<Vec<_>, _>>()?;
    let gem = Gem::build(n, tables).map_err(|e| ParseError::invalid(end, 1, e))?;
    Ok(GemFile { name, gem })
}

/// Renders a gem in the text format.
pub fn write_gem(name: &str, gem: &Gem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gem {name}");
    let _ = writeln!(out, "colors {}", gem.color_count());
    let _ = writeln!(out, "vertices {}", gem.n_vertices());
    for c in 0..gem.color_count() {
        let _ = write!(out, "color {c}:");
        for (a, b) in gem.color_pairs(c) {
            let _ = write!(out, " {a}-{b}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;

    const FIG1: &str = "gem fig1\ncolors 3\nvertices 8\n# thin sides\ncolor 0: 1-2 3-4 5-6 7-8\ncolor 1: 1-8 2-3 4-5 6-7\ncolor 2: 1-7 2-6 3-5 4-8  # chords\n";

    #[test]
    fn parses_and_round_trips() {
        let f = parse_gem(FIG1).unwrap();
        assert_eq!(f.name, "fig1");
        assert_eq!(f.gem.n_vertices(), 8);
        assert_eq!(f.gem.neighbor(2, 4), 8);
        let again = parse_gem(&write_gem(&f.name, &f.gem)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn colors_may_come_in_any_order() {
        let src = "gem g\ncolors 2\nvertices 2\ncolor 1: 1-2\ncolor 0: 2-1\n";
        assert_eq!(parse_gem(src).unwrap().gem, Gem::dipole_gem(2));
    }

    #[test]
    fn odd_vertex_count_points_at_its_line() {
        let err = parse_gem("gem g\ncolors 3\nvertices 3\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(
            err.kind,
            ParseErrorKind::Invalid(GemError::OddVertexCount(3))
        );
        assert!(err.to_string().contains("OddVertexCount"));
    }

    #[test]
    fn repeated_vertex_is_not_an_involution() {
        let src = "gem g\ncolors 2\nvertices 4\ncolor 0: 1-2 3-4\ncolor 1: 1-2 2-3\n";
        let err = parse_gem(src).unwrap_err();
        assert_eq!(err.line, 5);
        assert_eq!(err.column, 14);
        assert_eq!(
            err.kind,
            ParseErrorKind::Invalid(GemError::NotInvolution {
                color: 1,
                vertex: 2
            })
        );
    }

    #[test]
    fn missing_and_duplicate_colors() {
        let src = "gem g\ncolors 3\nvertices 2\ncolor 0: 1-2\ncolor 1: 1-2\n";
        let err = parse_gem(src).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Invalid(GemError::MissingColor(2)));
        let src = "gem g\ncolors 2\nvertices 2\ncolor 0: 1-2\ncolor 0: 1-2\n";
        assert!(matches!(
            parse_gem(src).unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
    }

    #[test]
    fn loops_and_ranges() {
        let src = "gem g\ncolors 2\nvertices 2\ncolor 0: 1-1\ncolor 1: 1-2\n";
        assert_eq!(
            parse_gem(src).unwrap_err().kind,
            ParseErrorKind::Invalid(GemError::FixedPoint {
                color: 0,
                vertex: 1
            })
        );
        let src = "gem g\ncolors 2\nvertices 2\ncolor 0: 1-5\ncolor 1: 1-2\n";
        assert!(matches!(
            parse_gem(src).unwrap_err().kind,
            ParseErrorKind::Invalid(GemError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_gem("").is_err());
        assert!(parse_gem("graph g\n").is_err());
        assert!(parse_gem("gem g\ncolors x\n").is_err());
        assert!(parse_gem("gem g\ncolors 2\nvertices 2\ncolor 0 1-2\n").is_err());
        assert!(parse_gem("gem g\ncolors 2\nvertices 2\ncolor 0: 1+2\n").is_err());
    }
}
