//! Text formats for polarities, finite orders and frames.
//!
//! ```text
//! polarity 2 2        order 3             frame 1 1
//! 11                  1 1 1               1
//! 10                  0 1 1               unit 0
//!                     0 0 1               op
//!                     labels 0 0.5 1      0
//!                                         res
//!                                         0
//! ```
//! Relation and order rows are `0`/`1` entries, separated by spaces or not.
//! Blank lines and `#` comments are ignored.

use super::frame::HeytingFrame;
use super::order::Poset;
use super::polarity::Polarity;
use crate::error::{ParseError, Result};

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Lines<'a> {
        let lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let line = self.lines.get(self.pos).or(self.lines.last()).map_or(1, |l| l.0);
        ParseError { line, col: 1, message: message.into() }
    }

    fn next(&mut self, what: &str) -> std::result::Result<&'a str, ParseError> {
        let l = self.lines.get(self.pos).map(|l| l.1).ok_or_else(|| self.err(format!("expected {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    fn back(&mut self) {
        self.pos -= 1;
    }

    fn header(&mut self, keyword: &str, arity: usize) -> std::result::Result<Vec<usize>, ParseError> {
        let l = self.next(keyword)?;
        let mut parts = l.split_whitespace();
        if parts.next() != Some(keyword) {
            self.back();
            return Err(self.err(format!("expected `{keyword}`")));
        }
        let nums: Vec<usize> = parts.map(|p| p.parse().map_err(|_| self.err(format!("bad number {p}")))).collect::<std::result::Result<_, _>>()?;
        if nums.len() != arity {
            self.back();
            return Err(self.err(format!("`{keyword}` takes {arity} numbers")));
        }
        Ok(nums)
    }

    fn bits(&mut self, width: usize) -> std::result::Result<Vec<bool>, ParseError> {
        let l = self.next("a 0/1 row")?;
        let row: Vec<bool> = l
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(c),
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(|c| {
                self.back();
                self.err(format!("unexpected `{c}` in a 0/1 row"))
            })?;
        if row.len() != width {
            self.back();
            return Err(self.err(format!("row has {} entries, expected {width}", row.len())));
        }
        Ok(row)
    }

    fn indices(&mut self, width: usize) -> std::result::Result<Vec<usize>, ParseError> {
        let l = self.next("a row of indices")?;
        let row: Vec<usize> = l
            .split_whitespace()
            .map(|p| p.parse().map_err(|_| self.err(format!("bad index {p}"))))
            .collect::<std::result::Result<_, _>>()?;
        if row.len() != width {
            self.back();
            return Err(self.err(format!("row has {} entries, expected {width}", row.len())));
        }
        Ok(row)
    }

    fn keyword(&mut self, keyword: &str) -> std::result::Result<(), ParseError> {
        if self.next(keyword)? != keyword {
            self.back();
            return Err(self.err(format!("expected `{keyword}`")));
        }
        Ok(())
    }

    fn finish(&self) -> std::result::Result<(), ParseError> {
        if self.pos < self.lines.len() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }
}

fn relation(lines: &mut Lines, w: usize, w2: usize) -> Result<Polarity> {
    let rows = (0..w).map(|_| lines.bits(w2)).collect::<std::result::Result<Vec<_>, _>>()?;
    Polarity::new(&rows, w2)
}

pub fn parse_polarity(src: &str) -> Result<Polarity> {
    let mut lines = Lines::new(src);
    let h = lines.header("polarity", 2)?;
    let p = relation(&mut lines, h[0], h[1])?;
    lines.finish()?;
    Ok(p)
}

pub fn parse_order(src: &str) -> Result<Poset> {
    let mut lines = Lines::new(src);
    let n = lines.header("order", 1)?[0];
    let rows = (0..n).map(|_| lines.bits(n)).collect::<std::result::Result<Vec<_>, _>>()?;
    let labels = match lines.next("labels") {
        Ok(l) if l.starts_with("labels") => {
            let ls: Vec<String> = l.split_whitespace().skip(1).map(String::from).collect();
            if ls.len() != n {
                lines.back();
                return Err(lines.err(format!("{} labels for {n} elements", ls.len())).into());
            }
            Some(ls)
        }
        Ok(_) => {
            lines.back();
            None
        }
        Err(_) => None,
    };
    lines.finish()?;
    match labels {
        Some(l) => Poset::with_labels(rows, l),
        None => Poset::new(rows),
    }
}

pub fn parse_frame(src: &str) -> Result<HeytingFrame> {
    let mut lines = Lines::new(src);
    let h = lines.header("frame", 2)?;
    let (w, w2) = (h[0], h[1]);
    let p = relation(&mut lines, w, w2)?;
    let unit = lines.header("unit", 1)?[0];
    lines.keyword("op")?;
    let op = (0..w).map(|_| lines.indices(w)).collect::<std::result::Result<Vec<_>, _>>()?;
    lines.keyword("res")?;
    let res = (0..w).map(|_| lines.indices(w2)).collect::<std::result::Result<Vec<_>, _>>()?;
    lines.finish()?;
    HeytingFrame::new(p, op, unit, res)
}

/// Hasse diagram as `node i label` lines followed by `edge i j` lines (`i` covered by `j`).
pub fn hasse(p: &Poset) -> String {
    let mut out = String::new();
    for (i, l) in p.labels().iter().enumerate() {
        out.push_str(&format!("node {i} {l}\n"));
    }
    for (a, b) in p.hasse_edges() {
        out.push_str(&format!("edge {a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::lattice::frame::frame_plus;

    #[test]
    fn polarity_rows() {
        let p = parse_polarity("polarity 2 2\n11\n1 0\n").unwrap();
        assert!(p.related(0, 1) && !p.related(1, 1));
        let Err(Error::Parse(e)) = parse_polarity("polarity 2 2\n11\n102\n") else { panic!() };
        assert_eq!(e.line, 3);
    }

    #[test]
    fn order_with_labels() {
        let p = parse_order("order 3\n111\n011\n001\nlabels 0 0.5 1\n").unwrap();
        assert_eq!(p.label(1), "0.5");
        assert_eq!(hasse(&p), "node 0 0\nnode 1 0.5\nnode 2 1\nedge 0 1\nedge 1 2\n");
        assert!(matches!(parse_order("order 2\n11\n11\n"), Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn frame_text() {
        let src = "frame 1 1\n1\nunit 0\nop\n0\nres\n0\n";
        let f = parse_frame(src).unwrap();
        assert_eq!(frame_plus(&f).unwrap().algebra.len(), 1);
    }
}
