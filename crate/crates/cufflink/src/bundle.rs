//! Text form of a certificate bundle, and the independent re-check.
//!
//! The format is line-oriented with a fixed section order so bundles
//! diff cleanly and emit byte-deterministically. `certify` re-derives
//! every claim from the recorded input — replaying the transcript,
//! recomputing classes from the strand records, re-running the
//! blow-down verification — so a bundle stands or falls on its own,
//! no matter who produced it.

use std::fmt::Write as _;

use crate::diagram::{parse_spine, validate_spine, CrossingId, Sign};
use crate::homology::intersection_delta;
use crate::pipeline::{
    clear_arcs, replay, surface_summaries, CertificateBundle, DualCurves, Mode, MoveTranscript,
    StandardFormAttestation, SurfaceSummary, TranscriptMove,
};
use crate::seifert::spine_surface_system;
use crate::surgery::{
    verify_reflexive, BlowdownCertificate, BlowdownStep, FramedSurgeryLink, Slope,
    SurgeryComponent, SurgeryKind,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn class_text(class: &[i64]) -> String {
    let cells: Vec<String> = class.iter().map(|c| c.to_string()).collect();
    cells.join(",")
}

fn matrix_text(m: &[Vec<u64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn emit(b: &CertificateBundle) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "certificate-bundle v1");
    let _ = writeln!(s, "mode {}", b.mode);

    s.push_str("\nVALIDATION\n");
    if b.validation.is_empty() {
        s.push_str("ok\n");
    } else {
        for issue in &b.validation {
            let _ = writeln!(s, "issue: {issue}");
        }
    }

    s.push_str("\nSURFACES\n");
    for f in &b.surfaces {
        let _ = writeln!(
            s,
            "surface {}: disks={} bands={} chi={} genus={} boundary={}",
            f.looped + 1,
            f.disks,
            f.bands,
            f.chi,
            f.genus,
            f.boundary
        );
    }
    for (piece, loops) in &b.shared {
        let ls: Vec<String> = loops.iter().map(|l| (l + 1).to_string()).collect();
        let _ = writeln!(s, "shared piece {}: loops {}", piece + 1, ls.join(" "));
    }

    s.push_str("\nTRANSCRIPT\n");
    let order: Vec<String> = b.transcript.order.iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(s, "order: {}", order.join(" "));
    let bps: Vec<String> = b
        .transcript
        .basepoints
        .iter()
        .map(|i| (i + 1).to_string())
        .collect();
    let _ = writeln!(s, "basepoints: {}", bps.join(" "));
    for m in &b.transcript.moves {
        match *m {
            TranscriptMove::ArcExchange { site, new } => {
                let _ = writeln!(s, "move exchange site={site} new={},{}", new[0], new[1]);
            }
            TranscriptMove::CrossingChange { site, component } => {
                let _ = writeln!(s, "move bcc site={site} component={component}");
            }
            TranscriptMove::Twist { site, n, component } => {
                let _ = writeln!(s, "move twist site={site} n={n} component={component}");
            }
        }
    }
    s.push_str("input:\n");
    for line in b.transcript.input.lines() {
        let _ = writeln!(s, "  {line}");
    }
    s.push_str("final:\n");
    for line in b.transcript.finished.lines() {
        let _ = writeln!(s, "  {line}");
    }

    s.push_str("\nSURGERY\n");
    let _ = writeln!(s, "pairwise-unlinked: {}", yes_no(b.link.pairwise_unlinked));
    for c in &b.link.components {
        let _ = writeln!(
            s,
            "surgery {} kind={} site={} framing={} class=({})",
            c.id,
            c.kind,
            c.site,
            c.framing,
            class_text(&c.class)
        );
        let strands: Vec<String> = c
            .strands
            .iter()
            .map(|&(lp, sg)| format!("loop {} {}", lp + 1, sg))
            .collect();
        let _ = writeln!(s, "strands {}: {}", c.id, strands.join(", "));
    }

    s.push_str("\nHOMOLOGY\n");
    for (id, class) in &b.homology {
        let _ = writeln!(s, "homology: component {id} class=({})", class_text(class));
    }

    s.push_str("\nBLOWDOWN\n");
    for (i, st) in b.blowdown.steps.iter().enumerate() {
        let _ = writeln!(
            s,
            "blowdown step {}: component {} {}({})",
            i + 1,
            st.component,
            if st.ok { "ok" } else { "fail" },
            st.reason
        );
    }
    let _ = writeln!(s, "blowdown valid: {}", yes_no(b.blowdown.valid));

    s.push_str("\nDELTA\n");
    match &b.delta {
        None => s.push_str("delta: none\n"),
        Some(d) => {
            for &(c, l) in &d.recorded {
                let _ = writeln!(s, "meeting curve={} loop={}", c + 1, l + 1);
            }
            let _ = writeln!(
                s,
                "delta: {} {}",
                matrix_text(&d.matrix),
                if d.pass { "pass" } else { "fail" }
            );
        }
    }

    s.push_str("\nATTESTATION\n");
    let a = &b.attestation;
    let _ = writeln!(s, "attest split-trivial-loops: {}", yes_no(a.split_trivial_loops));
    let _ = writeln!(s, "attest twist-counters-zero: {}", yes_no(a.twist_counters_zero));
    let _ = writeln!(s, "attest arcs-crossing-free: {}", yes_no(a.arcs_crossing_free));
    let _ = writeln!(s, "attest layout-standard: {}", yes_no(a.layout_standard));
    let _ = writeln!(s, "bundle: {}", if b.passes() { "pass" } else { "fail" });
    s
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    /// Error at the line most recently taken (1-based).
    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, BundleError> {
        Err(BundleError::Syntax {
            line: self.pos.max(1),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Result<&'a str, BundleError> {
        self.pos += 1;
        match self.lines.get(self.pos - 1) {
            Some(&l) => Ok(l),
            None => self.fail("unexpected end of bundle"),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn expect(&mut self, exact: &str) -> Result<(), BundleError> {
        let l = self.next()?;
        if l == exact {
            Ok(())
        } else {
            self.fail(format!("expected `{exact}`, found `{l}`"))
        }
    }

    fn num<T: std::str::FromStr>(&self, tok: &str) -> Result<T, BundleError> {
        tok.parse()
            .map_err(|_| BundleError::Syntax {
                line: self.pos.max(1),
                msg: format!("bad number `{tok}`"),
            })
    }

    fn kv<'s>(&self, tok: Option<&'s str>, key: &str) -> Result<&'s str, BundleError> {
        match tok.and_then(|t| t.strip_prefix(key)?.strip_prefix('=')) {
            Some(v) => Ok(v),
            None => self.fail(format!("expected `{key}=…`")),
        }
    }

    fn yes_no(&self, tok: &str) -> Result<bool, BundleError> {
        match tok {
            "yes" => Ok(true),
            "no" => Ok(false),
            _ => self.fail(format!("expected yes or no, found `{tok}`")),
        }
    }

    /// Indented two-space block, dedented, with trailing newline.
    fn block(&mut self) -> String {
        let mut out = String::new();
        while let Some(rest) = self.peek().and_then(|l| l.strip_prefix("  ")) {
            out.push_str(rest);
            out.push('\n');
            self.pos += 1;
        }
        out
    }
}

fn parse_class(c: &Cursor, s: &str) -> Result<Vec<i64>, BundleError> {
    let inner = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(i) => i,
        None => return c.fail(format!("expected a (…) class, found `{s}`")),
    };
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| c.num(t)).collect()
}

fn parse_sign(c: &Cursor, s: &str) -> Result<Sign, BundleError> {
    match s {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => c.fail(format!("expected a sign, found `{s}`")),
    }
}

fn parse_matrix(c: &Cursor, s: &str) -> Result<Vec<Vec<u64>>, BundleError> {
    let bad = || BundleError::Syntax {
        line: c.pos.max(1),
        msg: format!("bad matrix `{s}`"),
    };
    let t = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?;
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for r in t.split("],[") {
        let r = r.strip_prefix('[').unwrap_or(r);
        let r = r.strip_suffix(']').unwrap_or(r);
        let row: Result<Vec<u64>, _> = r.split(',').map(|x| x.parse().map_err(|_| bad())).collect();
        rows.push(row?);
    }
    Ok(rows)
}

/// One-based index list ("1 3 2") to zero-based.
fn parse_indices(c: &Cursor, s: &str) -> Result<Vec<usize>, BundleError> {
    s.split_whitespace()
        .map(|t| {
            let n: usize = c.num(t)?;
            if n == 0 {
                c.fail("indices are 1-based")
            } else {
                Ok(n - 1)
            }
        })
        .collect()
}

/// Parse a bundle back out of its text form. The second value is the
/// recorded `bundle:` verdict, which `certify` checks against the
/// recomputed one.
pub fn parse(text: &str) -> Result<(CertificateBundle, bool), BundleError> {
    let mut c = Cursor::new(text);
    c.expect("certificate-bundle v1")?;
    let mode = match c.next()? {
        "mode part1" => Mode::Part1,
        "mode part2" => Mode::Part2,
        l => return c.fail(format!("expected a mode line, found `{l}`")),
    };

    c.expect("")?;
    c.expect("VALIDATION")?;
    let mut validation = Vec::new();
    let mut saw_ok = false;
    while let Some(l) = c.peek() {
        if l.is_empty() {
            break;
        }
        c.pos += 1;
        if l == "ok" {
            saw_ok = true;
        } else if let Some(msg) = l.strip_prefix("issue: ") {
            validation.push(msg.to_string());
        } else {
            return c.fail(format!("expected `ok` or `issue:`, found `{l}`"));
        }
    }
    if saw_ok == !validation.is_empty() {
        return c.fail("validation section must be `ok` or a list of issues");
    }

    c.expect("")?;
    c.expect("SURFACES")?;
    let mut surfaces = Vec::new();
    let mut shared = Vec::new();
    while let Some(l) = c.peek() {
        if l.is_empty() {
            break;
        }
        c.pos += 1;
        if let Some(rest) = l.strip_prefix("surface ") {
            let (n, fields) = match rest.split_once(": ") {
                Some(p) => p,
                None => return c.fail("malformed surface line"),
            };
            let looped = c.num::<usize>(n)?.checked_sub(1).map_or_else(
                || c.fail("surface indices are 1-based"),
                Ok,
            )?;
            let mut toks = fields.split(' ');
            let disks = c.num(c.kv(toks.next(), "disks")?)?;
            let bands = c.num(c.kv(toks.next(), "bands")?)?;
            let chi = c.num(c.kv(toks.next(), "chi")?)?;
            let genus = c.num(c.kv(toks.next(), "genus")?)?;
            let boundary = c.num(c.kv(toks.next(), "boundary")?)?;
            surfaces.push(SurfaceSummary {
                looped,
                disks,
                bands,
                chi,
                genus,
                boundary,
            });
        } else if let Some(rest) = l.strip_prefix("shared piece ") {
            let (n, loops) = match rest.split_once(": loops ") {
                Some(p) => p,
                None => return c.fail("malformed shared line"),
            };
            let piece = c.num::<usize>(n)?.checked_sub(1).map_or_else(
                || c.fail("piece indices are 1-based"),
                Ok,
            )?;
            shared.push((piece, parse_indices(&c, loops)?));
        } else {
            return c.fail(format!("expected a surface or shared line, found `{l}`"));
        }
    }

    c.expect("")?;
    c.expect("TRANSCRIPT")?;
    let order_line = c.next()?;
    let order = match order_line.strip_prefix("order:") {
        Some(rest) => parse_indices(&c, rest)?,
        None => return c.fail("expected an order line"),
    };
    let bp_line = c.next()?;
    let basepoints = match bp_line.strip_prefix("basepoints:") {
        Some(rest) => parse_indices(&c, rest)?,
        None => return c.fail("expected a basepoints line"),
    };
    let mut moves = Vec::new();
    while let Some(l) = c.peek() {
        let Some(rest) = l.strip_prefix("move ") else {
            break;
        };
        c.pos += 1;
        let mut toks = rest.split(' ');
        match toks.next() {
            Some("exchange") => {
                let site = CrossingId(c.num(c.kv(toks.next(), "site")?)?);
                let pair = c.kv(toks.next(), "new")?;
                let (a, b) = match pair.split_once(',') {
                    Some(p) => p,
                    None => return c.fail("expected new=<id>,<id>"),
                };
                moves.push(TranscriptMove::ArcExchange {
                    site,
                    new: [CrossingId(c.num(a)?), CrossingId(c.num(b)?)],
                });
            }
            Some("bcc") => {
                let site = CrossingId(c.num(c.kv(toks.next(), "site")?)?);
                let component = c.num(c.kv(toks.next(), "component")?)?;
                moves.push(TranscriptMove::CrossingChange { site, component });
            }
            Some("twist") => {
                let site = CrossingId(c.num(c.kv(toks.next(), "site")?)?);
                let n = c.num(c.kv(toks.next(), "n")?)?;
                let component = c.num(c.kv(toks.next(), "component")?)?;
                moves.push(TranscriptMove::Twist { site, n, component });
            }
            _ => return c.fail(format!("unknown move `{rest}`")),
        }
    }
    c.expect("input:")?;
    let input = c.block();
    c.expect("final:")?;
    let finished = c.block();

    c.expect("")?;
    c.expect("SURGERY")?;
    let pu_line = c.next()?;
    let pairwise_unlinked = match pu_line.strip_prefix("pairwise-unlinked: ") {
        Some(v) => c.yes_no(v)?,
        None => return c.fail("expected a pairwise-unlinked line"),
    };
    let mut components = Vec::new();
    while let Some(l) = c.peek() {
        let Some(rest) = l.strip_prefix("surgery ") else {
            break;
        };
        c.pos += 1;
        let mut toks = rest.split(' ');
        let id: u32 = match toks.next() {
            Some(t) => c.num(t)?,
            None => return c.fail("malformed surgery line"),
        };
        let kind = match c.kv(toks.next(), "kind")? {
            "bcc" => SurgeryKind::BandCrossingChange,
            "twist" => SurgeryKind::FullTwist,
            k => return c.fail(format!("unknown surgery kind `{k}`")),
        };
        let site = CrossingId(c.num(c.kv(toks.next(), "site")?)?);
        let framing_tok = c.kv(toks.next(), "framing")?;
        let framing = match framing_tok.split_once('/') {
            Some((n, d)) => Slope {
                num: c.num(n)?,
                den: c.num(d)?,
            },
            None => return c.fail(format!("bad framing `{framing_tok}`")),
        };
        let class = parse_class(&c, c.kv(toks.next(), "class")?)?;

        let strand_line = c.next()?;
        let rest = match strand_line.strip_prefix(&format!("strands {id}: ")) {
            Some(r) => r,
            None => return c.fail(format!("expected a strands line for component {id}")),
        };
        let mut strands = Vec::new();
        for entry in rest.split(", ") {
            let mut toks = entry.split(' ');
            if toks.next() != Some("loop") {
                return c.fail(format!("bad strand entry `{entry}`"));
            }
            let lp = match toks.next() {
                Some(t) => c.num::<usize>(t)?,
                None => return c.fail("bad strand entry"),
            };
            if lp == 0 {
                return c.fail("loop indices are 1-based");
            }
            let sg = match toks.next() {
                Some(t) => parse_sign(&c, t)?,
                None => return c.fail("strand entry missing its sign"),
            };
            strands.push((lp - 1, sg));
        }
        components.push(SurgeryComponent {
            id,
            kind,
            site,
            framing,
            strands,
            class,
        });
    }

    c.expect("")?;
    c.expect("HOMOLOGY")?;
    let mut homology = Vec::new();
    while let Some(l) = c.peek() {
        let Some(rest) = l.strip_prefix("homology: component ") else {
            break;
        };
        c.pos += 1;
        let (id, class_tok) = match rest.split_once(' ') {
            Some(p) => p,
            None => return c.fail("malformed homology line"),
        };
        homology.push((
            c.num(id)?,
            parse_class(&c, c.kv(Some(class_tok), "class")?)?,
        ));
    }

    c.expect("")?;
    c.expect("BLOWDOWN")?;
    let mut steps = Vec::new();
    while let Some(l) = c.peek() {
        let Some(rest) = l.strip_prefix("blowdown step ") else {
            break;
        };
        c.pos += 1;
        let body = match rest.split_once(": component ") {
            Some((_, b)) => b,
            None => return c.fail("malformed blowdown step"),
        };
        let (id, verdict) = match body.split_once(' ') {
            Some(p) => p,
            None => return c.fail("malformed blowdown step"),
        };
        let (ok, reason) = if let Some(r) = verdict.strip_prefix("ok(") {
            (true, r)
        } else if let Some(r) = verdict.strip_prefix("fail(") {
            (false, r)
        } else {
            return c.fail(format!("bad blowdown verdict `{verdict}`"));
        };
        let reason = match reason.strip_suffix(')') {
            Some(r) => r.to_string(),
            None => return c.fail("unclosed blowdown reason"),
        };
        steps.push(BlowdownStep {
            component: c.num(id)?,
            ok,
            reason,
        });
    }
    let valid_line = c.next()?;
    let valid = match valid_line.strip_prefix("blowdown valid: ") {
        Some(v) => c.yes_no(v)?,
        None => return c.fail("expected a blowdown valid line"),
    };

    c.expect("")?;
    c.expect("DELTA")?;
    let delta = if c.peek() == Some("delta: none") {
        c.pos += 1;
        None
    } else {
        let mut recorded = Vec::new();
        while let Some(l) = c.peek() {
            let Some(rest) = l.strip_prefix("meeting ") else {
                break;
            };
            c.pos += 1;
            let mut toks = rest.split(' ');
            let curve: usize = c.num(c.kv(toks.next(), "curve")?)?;
            let lp: usize = c.num(c.kv(toks.next(), "loop")?)?;
            if curve == 0 || lp == 0 {
                return c.fail("meeting indices are 1-based");
            }
            recorded.push((curve - 1, lp - 1));
        }
        let dl = c.next()?;
        let rest = match dl.strip_prefix("delta: ") {
            Some(r) => r,
            None => return c.fail("expected a delta line"),
        };
        let (m, verdict) = match rest.rsplit_once(' ') {
            Some(p) => p,
            None => return c.fail("malformed delta line"),
        };
        let pass = match verdict {
            "pass" => true,
            "fail" => false,
            _ => return c.fail(format!("bad delta verdict `{verdict}`")),
        };
        Some(DualCurves {
            recorded,
            matrix: parse_matrix(&c, m)?,
            pass,
        })
    };

    c.expect("")?;
    c.expect("ATTESTATION")?;
    let mut attest = |key: &str| -> Result<bool, BundleError> {
        let l = c.next()?;
        match l.strip_prefix(&format!("attest {key}: ")) {
            Some(v) => c.yes_no(v),
            None => c.fail(format!("expected `attest {key}:`, found `{l}`")),
        }
    };
    let attestation = StandardFormAttestation {
        split_trivial_loops: attest("split-trivial-loops")?,
        twist_counters_zero: attest("twist-counters-zero")?,
        arcs_crossing_free: attest("arcs-crossing-free")?,
        layout_standard: attest("layout-standard")?,
    };
    let recorded_pass = match c.next()? {
        "bundle: pass" => true,
        "bundle: fail" => false,
        l => return c.fail(format!("expected a bundle verdict, found `{l}`")),
    };
    while let Some(l) = c.peek() {
        if !l.is_empty() {
            c.pos += 1;
            return c.fail(format!("trailing content `{l}`"));
        }
        c.pos += 1;
    }

    Ok((
        CertificateBundle {
            mode,
            validation,
            surfaces,
            shared,
            transcript: MoveTranscript {
                order,
                basepoints,
                moves,
                input,
                finished,
            },
            link: FramedSurgeryLink {
                components,
                pairwise_unlinked,
            },
            homology,
            blowdown: BlowdownCertificate { steps, valid },
            delta,
            attestation,
        },
        recorded_pass,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    pub problems: Vec<String>,
}

impl CertifyReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Re-derive every certificate in a bundle from its own recorded
/// input and compare against what the bundle claims.
pub fn certify(text: &str) -> Result<CertifyReport, BundleError> {
    let (b, recorded_pass) = parse(text)?;
    let mut problems = Vec::new();

    let input = match parse_spine(&b.transcript.input) {
        Ok(sp) => {
            let rep = validate_spine(&sp);
            if !rep.ok() {
                problems.push(format!("recorded input is invalid: {}", rep.issues[0].msg));
                None
            } else {
                Some(sp)
            }
        }
        Err(e) => {
            problems.push(format!("recorded input does not parse: {e}"));
            None
        }
    };
    if !b.validation.is_empty() {
        problems.push("bundle records validation issues".into());
    }

    let replay_ok = match replay(&b.transcript) {
        Ok(_) => true,
        Err(e) => {
            problems.push(format!("transcript does not replay: {e}"));
            false
        }
    };

    match parse_spine(&b.transcript.finished) {
        Ok(fin) => {
            let a = &b.attestation;
            if a.split_trivial_loops != fin.loops_as_link().crossings.is_empty() {
                problems.push("attested split-trivial-loops contradicts the final diagram".into());
            }
            if a.arcs_crossing_free != fin.is_normal_form() {
                problems.push("attested arcs-crossing-free contradicts the final diagram".into());
            }
            if a.layout_standard != fin.is_standard_layout() {
                problems.push("attested layout-standard contradicts the final diagram".into());
            }
            if replay_ok && !a.twist_counters_zero {
                problems.push("attested twist counters contradict a clean replay".into());
            }
        }
        Err(e) => problems.push(format!("recorded final diagram does not parse: {e}")),
    }

    if let Some(sp) = &input {
        match clear_arcs(sp).map_err(|e| e.to_string()).and_then(|(normal, _)| {
            spine_surface_system(&normal).map_err(|e| e.to_string())
        }) {
            Ok(sys) => {
                if surface_summaries(&sys) != b.surfaces {
                    problems.push("surface summaries do not match the input's system".into());
                }
                if sys.shared != b.shared {
                    problems.push("shared-piece records do not match the input's system".into());
                }
                if b.mode == Mode::Part2 && !sys.is_disjoint() {
                    problems.push("part2 bundle over a shared surface system".into());
                }
            }
            Err(e) => problems.push(format!("input spans no surface system: {e}")),
        }
    }

    let genus = input.as_ref().map(|sp| sp.genus());
    for comp in &b.link.components {
        if !comp.framing.is_one_over_integer() {
            problems.push(format!(
                "component {} framing {} is not of the form 1/n",
                comp.id, comp.framing
            ));
        }
        if let Some(g) = genus {
            let mut class = vec![0i64; g];
            let mut in_range = true;
            for &(lp, sg) in &comp.strands {
                if lp < g {
                    class[lp] += sg.value();
                } else {
                    in_range = false;
                }
            }
            if !in_range {
                problems.push(format!("component {} strand names a missing loop", comp.id));
            } else if class != comp.class {
                problems.push(format!(
                    "component {} class does not match its strand record",
                    comp.id
                ));
            }
        }
    }
    let expected: Vec<(u32, Vec<i64>)> = b
        .link
        .components
        .iter()
        .map(|comp| (comp.id, comp.class.clone()))
        .collect();
    if b.homology != expected {
        problems.push("homology table does not match the surgery components".into());
    }

    let fresh = verify_reflexive(&b.link);
    let agree = fresh.valid == b.blowdown.valid
        && fresh.steps.len() == b.blowdown.steps.len()
        && fresh
            .steps
            .iter()
            .zip(&b.blowdown.steps)
            .all(|(x, y)| (x.component, x.ok) == (y.component, y.ok));
    if !agree {
        problems.push("blow-down certificate does not match a fresh verification".into());
    }

    if let (Some(d), Some(g)) = (&b.delta, genus) {
        match intersection_delta(g, &d.recorded) {
            Ok((m, pass)) => {
                if m != d.matrix || pass != d.pass {
                    problems.push("delta record does not match its meeting lines".into());
                }
            }
            Err(e) => problems.push(format!("meeting record is malformed: {e}")),
        }
    }

    if recorded_pass != b.passes() {
        problems.push("recorded bundle verdict does not match its members".into());
    }
    if !b.passes() {
        problems.push("bundle does not pass".into());
    }
    Ok(CertifyReport { problems })
}
