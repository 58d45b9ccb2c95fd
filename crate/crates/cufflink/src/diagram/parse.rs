use super::{Crossing, CrossingId, Diagram, EdgeId, LinkDiagram, SpineDiagram};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next line that carries content, with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let mut lines = Lines::new(text);
    let (no, header) = match lines.next() {
        Some(l) => l,
        None => return err(1, "empty input, expected `spine g=<n>` or `link n=<n>` header"),
    };
    if let Some(rest) = header.strip_prefix("spine") {
        let g = parse_count(no, rest, "g")?;
        parse_spine_body(lines, no, g).map(Diagram::Spine)
    } else if let Some(rest) = header.strip_prefix("link") {
        let n = parse_count(no, rest, "n")?;
        parse_link_body(lines, no, n).map(Diagram::Link)
    } else {
        err(no, "expected `spine g=<n>` or `link n=<n>` header")
    }
}

pub fn parse_spine(text: &str) -> Result<SpineDiagram, ParseError> {
    match parse(text)? {
        Diagram::Spine(d) => Ok(d),
        Diagram::Link(_) => err(1, "expected a spine file, found a link header"),
    }
}

pub fn parse_link(text: &str) -> Result<LinkDiagram, ParseError> {
    match parse(text)? {
        Diagram::Link(d) => Ok(d),
        Diagram::Spine(_) => err(1, "expected a link file, found a spine header"),
    }
}

fn parse_count(no: usize, rest: &str, key: &str) -> Result<usize, ParseError> {
    let rest = rest.trim();
    let value = match rest.strip_prefix(key).map(|r| r.trim_start()) {
        Some(r) => match r.strip_prefix('=') {
            Some(v) => v.trim(),
            None => return err(no, format!("expected `{key}=<n>` in header")),
        },
        None => return err(no, format!("expected `{key}=<n>` in header")),
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => err(no, format!("`{key}` must be a positive integer")),
    }
}

fn parse_edge_list(no: usize, rest: &str) -> Result<Vec<EdgeId>, ParseError> {
    let mut out = Vec::new();
    for tok in rest.split_whitespace() {
        match tok.parse::<u32>() {
            Ok(v) => out.push(EdgeId(v)),
            Err(_) => return err(no, format!("bad edge id `{tok}`")),
        }
    }
    if out.is_empty() {
        return err(no, "expected at least one edge id");
    }
    Ok(out)
}

fn parse_indexed(no: usize, rest: &str, what: &str, max: usize) -> Result<(usize, Vec<EdgeId>), ParseError> {
    let (idx, list) = match rest.split_once(':') {
        Some(p) => p,
        None => return err(no, format!("expected `{what} <i>: <edge ids>`")),
    };
    let i = match idx.trim().parse::<usize>() {
        Ok(v) if (1..=max).contains(&v) => v,
        _ => return err(no, format!("{what} index must be in 1..={max}")),
    };
    Ok((i - 1, parse_edge_list(no, list)?))
}

fn parse_crossing(no: usize, rest: &str) -> Result<Crossing, ParseError> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    if toks.len() != 6 || !toks[5].starts_with("over=") {
        return err(no, "expected `X <id> <a> <b> <c> <d> over=<edge>`");
    }
    let id = match toks[0].parse::<u32>() {
        Ok(v) => CrossingId(v),
        Err(_) => return err(no, format!("bad crossing id `{}`", toks[0])),
    };
    let mut slots = [EdgeId(0); 4];
    for (k, tok) in toks[1..5].iter().enumerate() {
        match tok.parse::<u32>() {
            Ok(v) => slots[k] = EdgeId(v),
            Err(_) => return err(no, format!("bad edge id `{tok}`")),
        }
    }
    let over_in = match toks[5]["over=".len()..].parse::<u32>() {
        Ok(v) => EdgeId(v),
        Err(_) => return err(no, "bad `over=` edge id"),
    };
    if over_in != slots[1] && over_in != slots[3] {
        return err(no, format!("over={over_in} names neither slot 1 nor slot 3"));
    }
    Ok(Crossing { id, slots, over_in })
}

struct Body {
    loops: Vec<Option<Vec<EdgeId>>>,
    arcs: Vec<Option<Vec<EdgeId>>>,
    wedge: Option<Vec<EdgeId>>,
    crossings: Vec<Crossing>,
}

fn parse_body(mut lines: Lines, n_loops: usize, n_arcs: usize) -> Result<Body, ParseError> {
    let mut body = Body {
        loops: vec![None; n_loops],
        arcs: vec![None; n_arcs],
        wedge: None,
        crossings: Vec::new(),
    };
    while let Some((no, line)) = lines.next() {
        if let Some(rest) = line.strip_prefix("loop ") {
            let (i, list) = parse_indexed(no, rest, "loop", n_loops)?;
            if body.loops[i].replace(list).is_some() {
                return err(no, format!("duplicate loop {}", i + 1));
            }
        } else if let Some(rest) = line.strip_prefix("arc ") {
            if n_arcs == 0 {
                return err(no, "`arc` lines are only valid in spine files");
            }
            let (i, list) = parse_indexed(no, rest, "arc", n_arcs)?;
            if body.arcs[i].replace(list).is_some() {
                return err(no, format!("duplicate arc {}", i + 1));
            }
        } else if let Some(rest) = line.strip_prefix("wedge:") {
            if n_arcs == 0 {
                return err(no, "`wedge` lines are only valid in spine files");
            }
            if body.wedge.replace(parse_edge_list(no, rest)?).is_some() {
                return err(no, "duplicate wedge line");
            }
        } else if let Some(rest) = line.strip_prefix("X ") {
            let c = parse_crossing(no, rest)?;
            if body.crossings.iter().any(|p| p.id == c.id) {
                return err(no, format!("duplicate crossing id {}", c.id));
            }
            body.crossings.push(c);
        } else {
            return err(no, format!("unrecognized line `{line}`"));
        }
    }
    Ok(body)
}

fn parse_link_body(lines: Lines, header_no: usize, n: usize) -> Result<LinkDiagram, ParseError> {
    let body = parse_body(lines, n, 0)?;
    let mut components = Vec::with_capacity(n);
    for (i, lp) in body.loops.into_iter().enumerate() {
        match lp {
            Some(list) => components.push(list),
            None => return err(header_no, format!("missing loop {}", i + 1)),
        }
    }
    Ok(LinkDiagram {
        components,
        crossings: body.crossings,
    })
}

fn parse_spine_body(lines: Lines, header_no: usize, g: usize) -> Result<SpineDiagram, ParseError> {
    let body = parse_body(lines, g, g)?;
    let mut loops = Vec::with_capacity(g);
    let mut arcs = Vec::with_capacity(g);
    for (i, lp) in body.loops.into_iter().enumerate() {
        match lp {
            Some(list) => loops.push(list),
            None => return err(header_no, format!("missing loop {}", i + 1)),
        }
    }
    for (i, arc) in body.arcs.into_iter().enumerate() {
        match arc {
            Some(list) => arcs.push(list),
            None => return err(header_no, format!("missing arc {}", i + 1)),
        }
    }
    let wedge = match body.wedge {
        Some(w) => w,
        None => return err(header_no, "missing wedge line"),
    };
    if wedge.len() != g {
        return err(header_no, format!("wedge must list {g} arc end ids"));
    }
    for (i, arc) in arcs.iter().enumerate() {
        let end = *arc.last().unwrap();
        if !wedge.contains(&end) {
            return err(
                header_no,
                format!("arc {} ends on edge {end} which the wedge does not list", i + 1),
            );
        }
    }
    Ok(SpineDiagram {
        loops,
        arcs,
        wedge,
        crossings: body.crossings,
    })
}
