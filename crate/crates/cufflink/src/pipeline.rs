//! Unknotting a spine into standard planar form, one certified move
//! at a time.
//!
//! The strategy is the descending-diagram method. Crossings touching
//! the arcs are first exchanged onto the loops: the strand crossing an
//! arc nearest its attachment vertex slides across the vertex and
//! picks up one crossing with each of the two loop edges there
//! instead. Once every crossing lies on the loops, traversing the
//! loops in a chosen order from chosen basepoints and flipping every
//! crossing first met on its under-strand makes the diagram
//! descending, and a descending loop diagram is a split trivial link —
//! that is the certificate that the canonical crossing-free standard
//! form is reachable. Every flip is realized by an emitted surgery
//! component, band twist counters record the framing cost of flips at
//! self-crossings, and full twists zero the counters at the end. The
//! transcript of moves replays deterministically to the recorded
//! final diagram.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{
    parse_spine, validate_spine, CrossingId, EdgeId, Owner, Sign, SpineDiagram,
};
use crate::homology::{intersection_delta, IntersectionMatrix};
use crate::seifert::{spine_surface_system, SurfaceSystem};
use crate::surgery::{
    emit_band_crossing_change, emit_full_twist, verify_reflexive, BlowdownCertificate,
    FramedSurgeryLink, SurgeryError, SurgeryState,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("diagram fails validation: {0}")]
    Invalid(String),
    #[error("diagram is not in normal form (crossings touch an arc)")]
    NotNormalForm,
    #[error("arc {0} has no crossing to exchange")]
    NoArcCrossing(usize),
    #[error("bad traversal choices: {0}")]
    BadChoices(String),
    #[error("surface system was not built from this diagram")]
    SystemMismatch,
    #[error("refused: {0}")]
    Refusal(String),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
    #[error("move surgery failed: {0}")]
    Broken(String),
}

fn broken<T>(msg: impl Into<String>) -> Result<T, PipelineError> {
    Err(PipelineError::Broken(msg.into()))
}

/// One passage of a strand through a crossing, in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Visit {
    crossing: CrossingId,
    over: bool,
}

/// Map from each in-edge to (crossing, passes over, out-edge).
fn head_passages(
    d: &SpineDiagram,
) -> Result<BTreeMap<EdgeId, (CrossingId, bool, EdgeId)>, PipelineError> {
    let mut map = BTreeMap::new();
    for c in &d.crossings {
        let k = match c.over_in_slot() {
            Some(k) => k,
            None => return broken(format!("crossing {} has no over marker", c.id)),
        };
        let dup_under = map.insert(c.under_in(), (c.id, false, c.slots[2]));
        let dup_over = map.insert(c.over_in, (c.id, true, c.slots[4 - k]));
        if dup_under.is_some() || dup_over.is_some() {
            return broken("an edge enters two crossings");
        }
    }
    Ok(map)
}

fn visits_of(
    list: &[EdgeId],
    map: &BTreeMap<EdgeId, (CrossingId, bool, EdgeId)>,
) -> Result<Vec<Visit>, PipelineError> {
    let mut out = Vec::new();
    for i in 0..list.len().saturating_sub(1) {
        match map.get(&list[i]) {
            Some(&(crossing, over, next)) if next == list[i + 1] => {
                out.push(Visit { crossing, over })
            }
            _ => return broken(format!("edge {} does not chain to a crossing", list[i])),
        }
    }
    Ok(out)
}

/// Slide the strand crossing arc `arc` nearest its attachment vertex
/// across the vertex: the arc loses its first crossing and the strand
/// gains one crossing with each loop edge at the vertex instead, with
/// opposite signs and its over/under status kept. Returns the new
/// diagram, the removed crossing and the two crossings replacing it.
pub fn exchange_arc_crossing(
    d: &SpineDiagram,
    arc: usize,
) -> Result<(SpineDiagram, CrossingId, [CrossingId; 2]), PipelineError> {
    if arc >= d.arcs.len() {
        return Err(PipelineError::BadChoices(format!("no arc {arc}")));
    }
    if d.arcs[arc].len() < 2 {
        return Err(PipelineError::NoArcCrossing(arc));
    }
    let map = head_passages(d)?;
    let e1 = d.arcs[arc][0];
    let &(removed, arc_over, _) = match map.get(&e1) {
        Some(p) => p,
        None => return broken("arc edge chain broken"),
    };
    let k_o = d.crossing(removed).and_then(|c| c.over_in_slot()).unwrap();
    let s_over = !arc_over;
    // The slot the other strand enters by fixes which side of the arc
    // it comes from, hence the order it meets the two loop edges after
    // sliding across the vertex, and the signs it picks up.
    let li_first = if s_over { k_o == 1 } else { k_o == 3 };
    let first_sign = if s_over { Sign::Negative } else { Sign::Positive };

    let mut loop_visits: Vec<Vec<Visit>> = Vec::with_capacity(d.loops.len());
    for l in &d.loops {
        loop_visits.push(visits_of(l, &map)?);
    }
    let mut arc_visits: Vec<Vec<Visit>> = Vec::with_capacity(d.arcs.len());
    for a in &d.arcs {
        arc_visits.push(visits_of(a, &map)?);
    }

    // Locate the two passages of the removed crossing: the arc's own
    // is the first visit of `arc`; the other belongs to the moving
    // strand.
    let mut hits: Vec<(Owner, usize)> = Vec::new();
    for (i, vs) in loop_visits.iter().enumerate() {
        hits.extend(
            vs.iter()
                .enumerate()
                .filter(|(_, v)| v.crossing == removed)
                .map(|(j, _)| (Owner::Loop(i), j)),
        );
    }
    for (i, vs) in arc_visits.iter().enumerate() {
        hits.extend(
            vs.iter()
                .enumerate()
                .filter(|(_, v)| v.crossing == removed)
                .map(|(j, _)| (Owner::Arc(i), j)),
        );
    }
    if hits.len() != 2 || !hits.contains(&(Owner::Arc(arc), 0)) {
        return broken("crossing passages not where the traversal says");
    }
    let (s_owner, mut s_idx) = *hits.iter().find(|&&h| h != (Owner::Arc(arc), 0)).unwrap();

    fn list_of<'a>(
        lv: &'a mut [Vec<Visit>],
        av: &'a mut [Vec<Visit>],
        o: Owner,
    ) -> &'a mut Vec<Visit> {
        match o {
            Owner::Loop(i) => &mut lv[i],
            Owner::Arc(i) => &mut av[i],
        }
    }
    // Drop both passages; within one list, highest index first.
    if s_owner == Owner::Arc(arc) {
        arc_visits[arc].remove(s_idx);
        arc_visits[arc].remove(0);
        s_idx -= 1;
    } else {
        arc_visits[arc].remove(0);
        list_of(&mut loop_visits, &mut arc_visits, s_owner).remove(s_idx);
    }

    let base = d.max_crossing_id();
    let (first, second) = (CrossingId(base + 1), CrossingId(base + 2));
    let (c_li, c_lo) = if li_first {
        (first, second)
    } else {
        (second, first)
    };
    let s_list = list_of(&mut loop_visits, &mut arc_visits, s_owner);
    s_list.insert(
        s_idx,
        Visit {
            crossing: second,
            over: s_over,
        },
    );
    s_list.insert(
        s_idx,
        Visit {
            crossing: first,
            over: s_over,
        },
    );
    // The loop's own passages hug the attachment vertex: entering edge
    // last, leaving edge first.
    loop_visits[arc].push(Visit {
        crossing: c_li,
        over: !s_over,
    });
    loop_visits[arc].insert(
        0,
        Visit {
            crossing: c_lo,
            over: !s_over,
        },
    );

    // Regenerate all edges and rebuild every crossing from its two
    // passages.
    let mut next_edge = 1u32;
    let mut fresh_run = |n: usize| -> Vec<EdgeId> {
        let ids = (next_edge..next_edge + n as u32).map(EdgeId).collect();
        next_edge += n as u32;
        ids
    };
    let loops: Vec<Vec<EdgeId>> = loop_visits.iter().map(|v| fresh_run(v.len() + 1)).collect();
    let arcs: Vec<Vec<EdgeId>> = arc_visits.iter().map(|v| fresh_run(v.len() + 1)).collect();

    let mut under_of: BTreeMap<CrossingId, (EdgeId, EdgeId)> = BTreeMap::new();
    let mut over_of: BTreeMap<CrossingId, (EdgeId, EdgeId)> = BTreeMap::new();
    for (visits, edges) in loop_visits.iter().zip(&loops).chain(arc_visits.iter().zip(&arcs)) {
        for (i, v) in visits.iter().enumerate() {
            let side = if v.over { &mut over_of } else { &mut under_of };
            if side.insert(v.crossing, (edges[i], edges[i + 1])).is_some() {
                return broken(format!("crossing {} traversed twice as one role", v.crossing));
            }
        }
    }
    let mut crossings = Vec::new();
    for (&id, &under) in &under_of {
        let over = match over_of.get(&id) {
            Some(&o) => o,
            None => return broken(format!("crossing {id} lost its over passage")),
        };
        let sign = if id == first {
            first_sign
        } else if id == second {
            first_sign.flip()
        } else {
            d.crossing(id).and_then(|c| c.sign()).unwrap()
        };
        crossings.push(crate::diagram::build_crossing(id, under, over, sign));
    }

    let wedge = d
        .wedge
        .iter()
        .map(|w| {
            d.arcs
                .iter()
                .position(|a| a.last() == Some(w))
                .map(|i| *arcs[i].last().unwrap())
        })
        .collect::<Option<Vec<EdgeId>>>()
        .ok_or_else(|| PipelineError::Broken("wedge entry is not an arc end".into()))?;

    let out = SpineDiagram {
        loops,
        arcs,
        wedge,
        crossings,
    };
    let report = validate_spine(&out);
    if !report.ok() {
        return broken(format!(
            "exchange produced an invalid diagram: {}",
            report.issues[0].msg
        ));
    }
    Ok((out, removed, [first, second]))
}

/// Loop traversal order and per-loop starting edge offsets for the
/// descending plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanChoices {
    pub order: Vec<usize>,
    pub basepoints: Vec<usize>,
}

impl PlanChoices {
    pub fn default_for(genus: usize) -> PlanChoices {
        PlanChoices {
            order: (0..genus).collect(),
            basepoints: vec![0; genus],
        }
    }

    fn check(&self, genus: usize) -> Result<(), PipelineError> {
        let mut seen = vec![false; genus];
        if self.order.len() != genus || self.basepoints.len() != genus {
            return Err(PipelineError::BadChoices(format!(
                "need {genus} order entries and {genus} basepoints"
            )));
        }
        for &i in &self.order {
            if i >= genus || seen[i] {
                return Err(PipelineError::BadChoices(format!(
                    "order is not a permutation of 1..={genus}"
                )));
            }
            seen[i] = true;
        }
        Ok(())
    }
}

/// The crossings to flip so that every crossing is first met on its
/// over-strand when the loops are traversed in the given order from
/// the given basepoints. The flipped diagram is descending, and its
/// loops form a split trivial link by construction.
pub fn descending_plan(
    sp: &SpineDiagram,
    choices: &PlanChoices,
) -> Result<BTreeSet<CrossingId>, PipelineError> {
    if !sp.is_normal_form() {
        return Err(PipelineError::NotNormalForm);
    }
    choices.check(sp.genus())?;
    let map = head_passages(sp)?;
    let mut seen = BTreeSet::new();
    let mut flips = BTreeSet::new();
    for &lp in &choices.order {
        let visits = visits_of(&sp.loops[lp], &map)?;
        let n = sp.loops[lp].len();
        let b = choices.basepoints[lp] % n;
        for j in 0..n {
            let idx = (b + j) % n;
            // The last edge ends at the attachment vertex, not a
            // crossing.
            if idx + 1 < n {
                let v = visits[idx];
                if seen.insert(v.crossing) && !v.over {
                    flips.insert(v.crossing);
                }
            }
        }
    }
    Ok(flips)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranscriptMove {
    ArcExchange {
        site: CrossingId,
        new: [CrossingId; 2],
    },
    CrossingChange {
        site: CrossingId,
        component: u32,
    },
    Twist {
        site: CrossingId,
        n: i64,
        component: u32,
    },
}

/// The full record of one pipeline run: the choices, the moves, and
/// the input and final diagrams in serialized form. Replaying the
/// moves from the input reproduces the final diagram byte for byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTranscript {
    pub order: Vec<usize>,
    pub basepoints: Vec<usize>,
    pub moves: Vec<TranscriptMove>,
    pub input: String,
    pub finished: String,
}

/// Flags of standard planar form, all recomputable from the final
/// diagram and the run's counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardFormAttestation {
    pub split_trivial_loops: bool,
    pub twist_counters_zero: bool,
    pub arcs_crossing_free: bool,
    pub layout_standard: bool,
}

impl StandardFormAttestation {
    pub fn pass(&self) -> bool {
        self.split_trivial_loops
            && self.twist_counters_zero
            && self.arcs_crossing_free
            && self.layout_standard
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub transcript: MoveTranscript,
    pub link: FramedSurgeryLink,
    /// The loop diagram after flips, before the canonical reduction;
    /// descending, so its loops are split and trivial.
    pub descended: SpineDiagram,
    pub final_diagram: SpineDiagram,
    pub attestation: StandardFormAttestation,
}

/// Exchange arc crossings away until every crossing lies on the
/// loops, lowest-index crossed arc first.
pub fn clear_arcs(
    sp: &SpineDiagram,
) -> Result<(SpineDiagram, Vec<TranscriptMove>), PipelineError> {
    let mut working = sp.clone();
    let mut moves = Vec::new();
    let mut guard = 0u32;
    while let Some(arc) = working.arcs.iter().position(|a| a.len() > 1) {
        guard += 1;
        if guard > 10_000 {
            return broken("arc exchange did not terminate");
        }
        let (next, removed, new) = exchange_arc_crossing(&working, arc)?;
        moves.push(TranscriptMove::ArcExchange { site: removed, new });
        working = next;
    }
    Ok((working, moves))
}

/// Unknot a spine: clear the arcs, flip the descending plan's
/// crossings via band-crossing changes, zero the twist counters via
/// full twists, then take the certified canonical reduction to the
/// standard form. The surface system must be the one spanned by the
/// arc-cleared diagram.
pub fn unknot_spine(
    sp: &SpineDiagram,
    sys: &SurfaceSystem,
    choices: &PlanChoices,
) -> Result<PipelineOutcome, PipelineError> {
    let report = validate_spine(sp);
    if !report.ok() {
        return Err(PipelineError::Invalid(report.issues[0].msg.clone()));
    }
    choices.check(sp.genus())?;

    let (normal, mut moves) = clear_arcs(sp)?;
    let rebuilt =
        spine_surface_system(&normal).map_err(|e| PipelineError::Invalid(e.to_string()))?;
    if rebuilt != *sys {
        return Err(PipelineError::SystemMismatch);
    }

    let plan = descending_plan(&normal, choices)?;
    let mut state = SurgeryState::new(normal);
    let mut components = Vec::new();
    for id in plan {
        let comp = emit_band_crossing_change(&mut state, id)?;
        moves.push(TranscriptMove::CrossingChange {
            site: id,
            component: comp.id,
        });
        components.push(comp);
    }
    for (band, n) in state.twists.clone() {
        if n == 0 {
            continue;
        }
        let comp = emit_full_twist(&mut state, band, -n)?;
        moves.push(TranscriptMove::Twist {
            site: band,
            n: -n,
            component: comp.id,
        });
        components.push(comp);
    }

    // Gates for the canonical reduction: the diagram must be
    // descending, flattened, and arc-clean before it may be replaced
    // by the crossing-free standard form it is isotopic to.
    if !descending_plan(&state.diagram, choices)?.is_empty() {
        return broken("flips did not make the diagram descending");
    }
    if state.twists.values().any(|&n| n != 0) {
        return broken("twist counters not zeroed");
    }
    if !state.diagram.is_normal_form() {
        return broken("arcs picked up crossings again");
    }

    let final_diagram = SpineDiagram::standard(sp.genus());
    let attestation = StandardFormAttestation {
        split_trivial_loops: final_diagram.loops_as_link().crossings.is_empty(),
        twist_counters_zero: state.twists.values().all(|&n| n == 0),
        arcs_crossing_free: final_diagram.is_normal_form(),
        layout_standard: final_diagram.is_standard_layout(),
    };
    let transcript = MoveTranscript {
        order: choices.order.clone(),
        basepoints: choices.basepoints.clone(),
        moves,
        input: sp.to_string(),
        finished: final_diagram.to_string(),
    };
    Ok(PipelineOutcome {
        transcript,
        link: FramedSurgeryLink {
            components,
            pairwise_unlinked: true,
        },
        descended: state.diagram,
        final_diagram,
        attestation,
    })
}

/// Re-run a transcript's moves from its recorded input and check the
/// result against its recorded final diagram.
pub fn replay(t: &MoveTranscript) -> Result<SpineDiagram, PipelineError> {
    let sp = parse_spine(&t.input)
        .map_err(|e| PipelineError::ReplayMismatch(format!("input does not parse: {e}")))?;
    let split = t
        .moves
        .iter()
        .position(|m| !matches!(m, TranscriptMove::ArcExchange { .. }))
        .unwrap_or(t.moves.len());
    let (exchanges, rest) = t.moves.split_at(split);

    let mut working = sp;
    for mv in exchanges {
        let TranscriptMove::ArcExchange { site, new } = *mv else {
            unreachable!()
        };
        let arc = match working.arcs.iter().position(|a| a.len() > 1) {
            Some(a) => a,
            None => return Err(PipelineError::ReplayMismatch("no arc left to exchange".into())),
        };
        let (next, removed, made) = exchange_arc_crossing(&working, arc)?;
        if removed != site || made != new {
            return Err(PipelineError::ReplayMismatch(format!(
                "exchange removed {removed}, transcript says {site}"
            )));
        }
        working = next;
    }

    let mut state = SurgeryState::new(working);
    for mv in rest {
        match *mv {
            TranscriptMove::ArcExchange { .. } => {
                return Err(PipelineError::ReplayMismatch(
                    "arc exchange recorded after a flip".into(),
                ))
            }
            TranscriptMove::CrossingChange { site, component } => {
                let comp = emit_band_crossing_change(&mut state, site)?;
                if comp.id != component {
                    return Err(PipelineError::ReplayMismatch(format!(
                        "flip at {site} emitted component {}, transcript says {component}",
                        comp.id
                    )));
                }
            }
            TranscriptMove::Twist { site, n, component } => {
                let comp = emit_full_twist(&mut state, site, n)?;
                if comp.id != component {
                    return Err(PipelineError::ReplayMismatch(format!(
                        "twist at {site} emitted component {}, transcript says {component}",
                        comp.id
                    )));
                }
            }
        }
    }

    let choices = PlanChoices {
        order: t.order.clone(),
        basepoints: t.basepoints.clone(),
    };
    if !descending_plan(&state.diagram, &choices)?.is_empty() {
        return Err(PipelineError::ReplayMismatch(
            "moves do not make the diagram descending".into(),
        ));
    }
    if state.twists.values().any(|&n| n != 0) {
        return Err(PipelineError::ReplayMismatch(
            "twist counters end nonzero".into(),
        ));
    }
    if !state.diagram.is_normal_form() {
        return Err(PipelineError::ReplayMismatch("arcs end crossed".into()));
    }
    let final_diagram = SpineDiagram::standard(state.diagram.genus());
    if final_diagram.to_string() != t.finished {
        return Err(PipelineError::ReplayMismatch(
            "final diagram differs from the recorded one".into(),
        ));
    }
    Ok(final_diagram)
}

/// Construction-time record of how the dual disk boundary curves meet
/// the spine loops, with its identity-pattern check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCurves {
    pub recorded: Vec<(usize, usize)>,
    pub matrix: IntersectionMatrix,
    pub pass: bool,
}

/// Unknot in the complement model: after the surgery link splits and
/// trivializes the loops, each loop bounds a disk on the other side,
/// and the dual curve of loop i is its meridian in the standard
/// picture — it meets loop i once and the others not at all.
pub fn heegaard_dualize(
    sp: &SpineDiagram,
    choices: &PlanChoices,
) -> Result<(FramedSurgeryLink, DualCurves, PipelineOutcome), PipelineError> {
    let (normal, _) = clear_arcs(sp)?;
    let sys = spine_surface_system(&normal).map_err(|e| PipelineError::Invalid(e.to_string()))?;
    let outcome = unknot_spine(sp, &sys, choices)?;
    let g = sp.genus();
    let recorded: Vec<(usize, usize)> = (0..g).map(|i| (i, i)).collect();
    let (matrix, pass) =
        intersection_delta(g, &recorded).map_err(|e| PipelineError::Broken(e.to_string()))?;
    Ok((
        outcome.link.clone(),
        DualCurves {
            recorded,
            matrix,
            pass,
        },
        outcome,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Part1,
    Part2,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Part1 => write!(f, "part1"),
            Mode::Part2 => write!(f, "part2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSummary {
    pub looped: usize,
    pub disks: usize,
    pub bands: usize,
    pub chi: i64,
    pub genus: i64,
    pub boundary: usize,
}

/// Everything one pipeline run certifies, bundled; the bundle passes
/// only if every member does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateBundle {
    pub mode: Mode,
    /// Validation issue lines; empty means the input is valid.
    pub validation: Vec<String>,
    pub surfaces: Vec<SurfaceSummary>,
    pub shared: Vec<(usize, Vec<usize>)>,
    pub transcript: MoveTranscript,
    pub link: FramedSurgeryLink,
    /// Per surgery component: (id, class against the loops).
    pub homology: Vec<(u32, Vec<i64>)>,
    pub blowdown: BlowdownCertificate,
    pub delta: Option<DualCurves>,
    pub attestation: StandardFormAttestation,
}

impl CertificateBundle {
    pub fn passes(&self) -> bool {
        let class_ok = match self.mode {
            Mode::Part1 => {
                let mut total: Vec<i64> = Vec::new();
                for (_, class) in &self.homology {
                    if total.is_empty() {
                        total = vec![0; class.len()];
                    }
                    for (t, c) in total.iter_mut().zip(class) {
                        *t += c;
                    }
                }
                total.iter().all(|&v| v == 0)
            }
            Mode::Part2 => self
                .homology
                .iter()
                .all(|(_, class)| class.iter().all(|&v| v == 0)),
        };
        self.validation.is_empty()
            && class_ok
            && self.blowdown.valid
            && self.attestation.pass()
            && self.delta.as_ref().is_none_or(|d| d.pass)
    }
}

pub fn surface_summaries(sys: &SurfaceSystem) -> Vec<SurfaceSummary> {
    sys.loop_piece
        .iter()
        .enumerate()
        .map(|(i, &pid)| {
            let p = &sys.surface.pieces[pid];
            SurfaceSummary {
                looped: i,
                disks: p.disks.len(),
                bands: p.bands.len(),
                chi: p.chi,
                genus: p.genus,
                boundary: p.boundary.len(),
            }
        })
        .collect()
}

fn run_bundle(
    sp: &SpineDiagram,
    mode: Mode,
    choices: &PlanChoices,
    with_delta: bool,
) -> Result<CertificateBundle, PipelineError> {
    let report = validate_spine(sp);
    if !report.ok() {
        return Err(PipelineError::Invalid(report.issues[0].msg.clone()));
    }
    let (normal, _) = clear_arcs(sp)?;
    let sys = spine_surface_system(&normal).map_err(|e| PipelineError::Invalid(e.to_string()))?;
    if mode == Mode::Part2 && !sys.is_disjoint() {
        let (piece, loops) = &sys.shared[0];
        let ls: Vec<String> = loops.iter().map(|l| (l + 1).to_string()).collect();
        return Err(PipelineError::Refusal(format!(
            "surface piece {} is shared by loops {}; the system is not completely disjoint",
            piece + 1,
            ls.join(" and ")
        )));
    }
    let outcome = unknot_spine(sp, &sys, choices)?;
    let delta = if with_delta {
        let g = sp.genus();
        let recorded: Vec<(usize, usize)> = (0..g).map(|i| (i, i)).collect();
        let (matrix, pass) =
            intersection_delta(g, &recorded).map_err(|e| PipelineError::Broken(e.to_string()))?;
        Some(DualCurves {
            recorded,
            matrix,
            pass,
        })
    } else {
        None
    };
    let homology = outcome
        .link
        .components
        .iter()
        .map(|c| (c.id, c.class.clone()))
        .collect();
    let blowdown = verify_reflexive(&outcome.link);
    Ok(CertificateBundle {
        mode,
        validation: Vec::new(),
        surfaces: surface_summaries(&sys),
        shared: sys.shared.clone(),
        transcript: outcome.transcript,
        link: outcome.link,
        homology,
        blowdown,
        delta,
        attestation: outcome.attestation,
    })
}

/// The main certified run: unknot the spine and bundle every
/// certificate. Part 1 certifies a null-homologous surgery link;
/// part 2 additionally requires a completely disjoint surface system
/// and certifies each component's class separately.
pub fn run_theorem_main(
    sp: &SpineDiagram,
    mode: Mode,
    choices: &PlanChoices,
) -> Result<CertificateBundle, PipelineError> {
    run_bundle(sp, mode, choices, false)
}

/// The dualizing run: same pipeline, plus the dual-curve intersection
/// record and its identity check.
pub fn run_dualize(
    sp: &SpineDiagram,
    choices: &PlanChoices,
) -> Result<CertificateBundle, PipelineError> {
    run_bundle(sp, Mode::Part1, choices, true)
}
