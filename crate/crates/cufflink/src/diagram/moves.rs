//! Reidemeister moves with explicit locations.
//!
//! Locations are darts: an edge plus a direction, naming the face on
//! the dart's left. Every application rebuilds the incidence skeleton
//! afterwards and rejects moves that would break planarity, so a bad
//! location cannot corrupt a diagram.

use super::skeleton::{Pieces, Skeleton, VertexKind};
use super::{Crossing, CrossingId, EdgeId, LinkDiagram, Sign, SpineDiagram};

/// An edge with a direction; the move's face is the one on its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc {
    pub edge: EdgeId,
    pub fwd: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReidemeisterMove {
    /// Add a kink of the given sign on an edge.
    R1Insert { edge: EdgeId, sign: Sign },
    /// Remove a kink crossing.
    R1Remove { crossing: CrossingId },
    /// Push the strand of `over` across their shared face and over
    /// the strand of `under`.
    R2Insert { over: Loc, under: Loc },
    /// Remove the bigon on the left of the dart.
    R2Remove { at: Loc },
    /// Slide the dart's strand across the far corner of the triangle
    /// on the dart's left.
    R3 { at: Loc },
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("no edge {0} in the diagram")]
    UnknownEdge(EdgeId),
    #[error("no crossing {0} in the diagram")]
    UnknownCrossing(CrossingId),
    #[error("crossing {0} is not a kink")]
    NotAKink(CrossingId),
    #[error("the face at {0:?} is not a removable bigon")]
    NotABigon(Loc),
    #[error("the face at {0:?} is not a triangle")]
    NotATriangle(Loc),
    #[error("the strand at {0:?} is not consistently over or under its triangle corners")]
    TriangleBlocked(Loc),
    #[error("both locations lie on edge {0}; split the strand with another move first")]
    SameEdge(EdgeId),
    #[error("edge {0} bounds no face; give it a crossing first")]
    FreeCircle(EdgeId),
    #[error("diagram is not valid before the move")]
    InvalidInput,
    #[error("move would break the diagram: {0}")]
    Broken(String),
}

struct Ctx {
    closed: Vec<Vec<EdgeId>>,
    open: Vec<Vec<EdgeId>>,
    wedge: Option<Vec<EdgeId>>,
    crossings: Vec<Crossing>,
    next_edge: u32,
    next_crossing: u32,
}

impl Ctx {
    fn fresh_edge(&mut self) -> EdgeId {
        self.next_edge += 1;
        EdgeId(self.next_edge)
    }

    fn fresh_crossing(&mut self) -> CrossingId {
        self.next_crossing += 1;
        CrossingId(self.next_crossing)
    }

    fn list_of(&mut self, e: EdgeId) -> Option<&mut Vec<EdgeId>> {
        self.closed
            .iter_mut()
            .chain(self.open.iter_mut())
            .find(|l| l.contains(&e))
    }

    /// Split `e` in two; `e` keeps its tail, the fresh edge takes the
    /// head. Returns the fresh edge.
    fn split_edge(&mut self, e: EdgeId) -> Result<EdgeId, MoveError> {
        let new = self.fresh_edge();
        let list = self.list_of(e).ok_or(MoveError::UnknownEdge(e))?;
        let pos = list.iter().position(|&x| x == e).unwrap();
        list.insert(pos + 1, new);
        self.rename_head(e, new);
        Ok(new)
    }

    /// A bare circle: a single closed edge with no incidences. Its
    /// placement in the plane is pinned only once a move touches it.
    fn is_free(&self, e: EdgeId) -> bool {
        self.wedge.is_none()
            && !self.crossings.iter().any(|c| c.slots.contains(&e))
            && self.closed.iter().any(|l| l.len() == 1 && l[0] == e)
    }

    /// Cut a strand at two points around `at`, returning the pieces
    /// (before, between, after) in the dart's direction. A bare circle
    /// needs a single cut: its before and after pieces coincide.
    fn strand_pieces(&mut self, at: Loc) -> Result<(EdgeId, EdgeId, EdgeId), MoveError> {
        let e = at.edge;
        if self.is_free(e) {
            let m = self.split_edge(e)?;
            return Ok((e, m, e));
        }
        let m = self.split_edge(e)?;
        let f = self.split_edge(m)?;
        Ok(if at.fwd { (e, m, f) } else { (f, m, e) })
    }

    /// Redirect the head occurrence of `from` (its incoming slot at a
    /// crossing, or its wedge entry) to `to`.
    fn rename_head(&mut self, from: EdgeId, to: EdgeId) {
        for c in &mut self.crossings {
            let Some(k) = c.over_in_slot() else { continue };
            for head_slot in [0, k] {
                if c.slots[head_slot] == from {
                    c.slots[head_slot] = to;
                    if head_slot == k {
                        c.over_in = to;
                    }
                    return;
                }
            }
        }
        if let Some(w) = self.wedge.as_mut() {
            for x in w.iter_mut() {
                if *x == from {
                    *x = to;
                    return;
                }
            }
        }
    }

    /// Remove a crossing and smooth both passages through it,
    /// merging each outgoing edge into its incoming one.
    fn delete_crossing_smoothing(&mut self, id: CrossingId) -> Result<(), MoveError> {
        let pos = self
            .crossings
            .iter()
            .position(|c| c.id == id)
            .ok_or(MoveError::UnknownCrossing(id))?;
        let c = self.crossings.remove(pos);
        // Mid-surgery a neighbor crossing may degenerate so that both
        // odd slots hold the over edge; either reading smooths the same.
        let over_out = match c.over_in_slot() {
            Some(k) => c.slots[4 - k],
            None if c.slots[1] == c.slots[3] && c.slots[1] == c.over_in => c.over_in,
            None => return Err(MoveError::InvalidInput),
        };
        let mut passages = [(c.slots[0], c.slots[2]), (c.over_in, over_out)];
        for i in 0..2 {
            let (keep, gone) = passages[i];
            if keep == gone {
                continue;
            }
            let list = self.list_of(gone).ok_or(MoveError::UnknownEdge(gone))?;
            let pos = list.iter().position(|&x| x == gone).unwrap();
            list.remove(pos);
            self.rename_head(gone, keep);
            for p in passages.iter_mut().skip(i + 1) {
                if p.0 == gone {
                    p.0 = keep;
                }
                if p.1 == gone {
                    p.1 = keep;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn build_crossing(
    id: CrossingId,
    under: (EdgeId, EdgeId),
    over: (EdgeId, EdgeId),
    sign: Sign,
) -> Crossing {
    Crossing::from_strands(id, under, over, sign)
}

fn apply_in_ctx(ctx: &mut Ctx, skel: &Skeleton, mv: &ReidemeisterMove) -> Result<(), MoveError> {
    match *mv {
        ReidemeisterMove::R1Insert { edge, sign } => {
            let (e, m, f) = if ctx.is_free(edge) {
                let m = ctx.split_edge(edge)?;
                (edge, m, edge)
            } else {
                let m = ctx.split_edge(edge)?;
                let f = ctx.split_edge(m)?;
                (edge, m, f)
            };
            let id = ctx.fresh_crossing();
            let slots = match sign {
                Sign::Positive => [e, f, m, m],
                Sign::Negative => [e, m, m, f],
            };
            ctx.crossings.push(Crossing {
                id,
                slots,
                over_in: m,
            });
            Ok(())
        }
        ReidemeisterMove::R1Remove { crossing } => {
            let c = ctx
                .crossings
                .iter()
                .find(|c| c.id == crossing)
                .ok_or(MoveError::UnknownCrossing(crossing))?;
            let kink = (0..4).any(|i| c.slots[i] == c.slots[(i + 1) % 4]);
            if !kink {
                return Err(MoveError::NotAKink(crossing));
            }
            ctx.delete_crossing_smoothing(crossing)
        }
        ReidemeisterMove::R2Insert { over, under } => {
            if over.edge == under.edge {
                return Err(MoveError::SameEdge(over.edge));
            }
            // Pieces of each strand in the order the dart meets them.
            // The darts fix where the new crossings sit and the slot
            // rotations around them; the strands' own orientations fix
            // which piece enters each crossing.
            let (ap, am, aq) = ctx.strand_pieces(over)?;
            let (bp, bm, bq) = ctx.strand_pieces(under)?;
            let rotate_to = |cycle: [EdgeId; 4], first: EdgeId| -> [EdgeId; 4] {
                let k = cycle.iter().position(|&e| e == first).unwrap();
                std::array::from_fn(|i| cycle[(k + i) % 4])
            };
            let k1_cycle = [bm, am, bq, ap];
            let k1_under_in = if under.fwd { bm } else { bq };
            let k1_over_in = if over.fwd { ap } else { am };
            let k2_cycle = [bp, am, bm, aq];
            let k2_under_in = if under.fwd { bp } else { bm };
            let k2_over_in = if over.fwd { am } else { aq };
            for (cycle, under_in, over_in) in [
                (k1_cycle, k1_under_in, k1_over_in),
                (k2_cycle, k2_under_in, k2_over_in),
            ] {
                let id = ctx.fresh_crossing();
                ctx.crossings.push(Crossing {
                    id,
                    slots: rotate_to(cycle, under_in),
                    over_in,
                });
            }
            Ok(())
        }
        ReidemeisterMove::R2Remove { at } => {
            let face = face_of(skel, at)?;
            if face.len() != 2 {
                return Err(MoveError::NotABigon(at));
            }
            let (d1, d2) = (face[0], face[1]);
            if d1.edge == d2.edge {
                return Err(MoveError::NotABigon(at));
            }
            let corners = [dart_head_crossing(skel, d1), dart_head_crossing(skel, d2)];
            let (c1, c2) = match corners {
                [Some(x), Some(y)] if x != y => (x, y),
                _ => return Err(MoveError::NotABigon(at)),
            };
            // Removable only when one strand is over at both corners.
            // A side's ends sit at the two corners, and odd slots carry
            // the over-strand, so its end parities must agree.
            let info = skel.edges[&d1.edge];
            let par = |s: Option<super::skeleton::SlotRef>| s.map(|x| x.slot % 2);
            if par(info.head) != par(info.tail) {
                return Err(MoveError::NotABigon(at));
            }
            ctx.delete_crossing_smoothing(c1)?;
            ctx.delete_crossing_smoothing(c2)
        }
        ReidemeisterMove::R3 { at } => {
            let face = face_of(skel, at)?;
            if face.len() != 3 {
                return Err(MoveError::NotATriangle(at));
            }
            let at_dart = super::skeleton::Dart {
                edge: at.edge,
                fwd: at.fwd,
            };
            let shift = face.iter().position(|&d| d == at_dart).unwrap();
            let d: Vec<_> = (0..3).map(|i| face[(shift + i) % 3]).collect();
            let sides = [d[0].edge, d[1].edge, d[2].edge];
            if sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2] {
                return Err(MoveError::NotATriangle(at));
            }
            // Corner between d[i] and d[i+1] is d[i]'s head vertex.
            let mut corners = [0usize; 3];
            for i in 0..3 {
                let sr = dart_head_slot(skel, d[i]);
                match skel.vertices[sr.vertex].kind {
                    VertexKind::Crossing(_) => corners[i] = sr.vertex,
                    _ => return Err(MoveError::NotATriangle(at)),
                }
            }
            let (v12, v23, v31) = (corners[0], corners[1], corners[2]);
            if v12 == v23 || v23 == v31 || v12 == v31 {
                return Err(MoveError::NotATriangle(at));
            }
            let x1 = sides[0];
            let (x2, x3) = (sides[1], sides[2]);
            // The mover must pass over both corners or under both:
            // equal slot parity at its two ends.
            let m_info = skel.edges[&x1];
            if m_info.head.unwrap().slot % 2 != m_info.tail.unwrap().slot % 2 {
                return Err(MoveError::TriangleBlocked(at));
            }

            let pass = |v: usize, e: EdgeId| passage_edges_at(skel, v, e);
            let m1 = pass(v12, x1);
            let m2 = pass(v31, x1);
            let p2a = pass(v12, x2);
            let p2b = pass(v23, x2);
            let p3a = pass(v23, x3);
            let p3b = pass(v31, x3);

            // Under-strand sits in even slots.
            let side_under_at = |v: usize, e: EdgeId| -> bool {
                let info = skel.edges[&e];
                let sr = [info.tail, info.head]
                    .into_iter()
                    .flatten()
                    .find(|s| s.vertex == v)
                    .unwrap();
                sr.slot % 2 == 0
            };

            let rebuild = |v: usize, side_pass: (EdgeId, EdgeId), side_edge: EdgeId, other: (EdgeId, EdgeId)| {
                let id = match skel.vertices[v].kind {
                    VertexKind::Crossing(id) => id,
                    _ => unreachable!(),
                };
                let sign = ctx_sign(ctx, id);
                if side_under_at(v, side_edge) {
                    build_crossing(id, side_pass, other, sign)
                } else {
                    build_crossing(id, other, side_pass, sign)
                }
            };

            // Every strand's two passages swap between its corners:
            // the triangle re-forms on the far side of each crossing.
            let new_v12 = rebuild(v12, p2b, x2, m2);
            let new_v23 = rebuild(v23, p2a, x2, p3b);
            let new_v31 = rebuild(v31, p3a, x3, m1);
            for newc in [new_v12, new_v23, new_v31] {
                let slot = ctx.crossings.iter_mut().find(|c| c.id == newc.id).unwrap();
                *slot = newc;
            }
            Ok(())
        }
    }
}

fn ctx_sign(ctx: &Ctx, id: CrossingId) -> Sign {
    ctx.crossings
        .iter()
        .find(|c| c.id == id)
        .and_then(|c| c.sign())
        .expect("validated crossing")
}

/// The passage at vertex `v` using edge `e`, as (incoming, outgoing).
fn passage_edges_at(skel: &Skeleton, v: usize, e: EdgeId) -> (EdgeId, EdgeId) {
    let info = skel.edges[&e];
    if info.head.map(|s| s.vertex) == Some(v) {
        let p = skel.passages[&e];
        (e, skel.vertices[p.vertex].slots[p.out_slot])
    } else {
        let t = info.tail.expect("side edge has a tail");
        let (&in_edge, _) = skel
            .passages
            .iter()
            .find(|(_, p)| p.vertex == v && p.out_slot == t.slot)
            .expect("tail end has a passage");
        (in_edge, e)
    }
}

fn dart_head_slot(skel: &Skeleton, d: super::skeleton::Dart) -> super::skeleton::SlotRef {
    let info = skel.edges[&d.edge];
    if d.fwd {
        info.head.unwrap()
    } else {
        info.tail.unwrap()
    }
}

fn vertex_crossing(skel: &Skeleton, v: usize) -> Option<CrossingId> {
    match skel.vertices[v].kind {
        VertexKind::Crossing(id) => Some(id),
        _ => None,
    }
}

fn dart_head_crossing(skel: &Skeleton, d: super::skeleton::Dart) -> Option<CrossingId> {
    vertex_crossing(skel, dart_head_slot(skel, d).vertex)
}

fn face_of(skel: &Skeleton, at: Loc) -> Result<Vec<super::skeleton::Dart>, MoveError> {
    if !skel.edges.contains_key(&at.edge) {
        return Err(MoveError::UnknownEdge(at.edge));
    }
    let dart = super::skeleton::Dart {
        edge: at.edge,
        fwd: at.fwd,
    };
    match skel.face_of(dart) {
        Some(i) => {
            let f = &skel.faces[i];
            let shift = f.darts.iter().position(|&d| d == dart).unwrap();
            Ok((0..f.darts.len())
                .map(|k| f.darts[(shift + k) % f.darts.len()])
                .collect())
        }
        None => Err(MoveError::FreeCircle(at.edge)),
    }
}

fn planar(p: Pieces) -> Result<(), String> {
    match Skeleton::build(p) {
        Ok(skel) => {
            for (comp, v, e, f) in skel.euler_by_component() {
                if v as i64 - e as i64 + f as i64 != 2 {
                    return Err(format!("piece {comp} fails the Euler check"));
                }
            }
            Ok(())
        }
        Err(errs) => Err(errs[0].to_string()),
    }
}

pub fn apply_reidemeister(d: &LinkDiagram, mv: &ReidemeisterMove) -> Result<LinkDiagram, MoveError> {
    let skel = Skeleton::of_link(d).map_err(|_| MoveError::InvalidInput)?;
    let mut ctx = Ctx {
        closed: d.components.clone(),
        open: Vec::new(),
        wedge: None,
        crossings: d.crossings.clone(),
        next_edge: d.max_edge_id(),
        next_crossing: d.max_crossing_id(),
    };
    apply_in_ctx(&mut ctx, &skel, mv)?;
    let out = LinkDiagram {
        components: ctx.closed,
        crossings: ctx.crossings,
    };
    planar(Pieces::from(&out)).map_err(MoveError::Broken)?;
    Ok(out)
}

pub fn apply_reidemeister_spine(
    d: &SpineDiagram,
    mv: &ReidemeisterMove,
) -> Result<SpineDiagram, MoveError> {
    let skel = Skeleton::of_spine(d).map_err(|_| MoveError::InvalidInput)?;
    let mut ctx = Ctx {
        closed: d.loops.clone(),
        open: d.arcs.clone(),
        wedge: Some(d.wedge.clone()),
        crossings: d.crossings.clone(),
        next_edge: d.max_edge_id(),
        next_crossing: d.max_crossing_id(),
    };
    apply_in_ctx(&mut ctx, &skel, mv)?;
    let out = SpineDiagram {
        loops: ctx.closed,
        arcs: ctx.open,
        wedge: ctx.wedge.unwrap(),
        crossings: ctx.crossings,
    };
    planar(Pieces::from(&out)).map_err(MoveError::Broken)?;
    Ok(out)
}

/// Applicable kink removals.
pub fn kink_sites(d: &LinkDiagram) -> Vec<CrossingId> {
    d.crossings
        .iter()
        .filter(|c| (0..4).any(|i| c.slots[i] == c.slots[(i + 1) % 4]))
        .map(|c| c.id)
        .collect()
}

fn sites_from_skeleton(
    skel: &Skeleton,
) -> (Vec<Loc>, Vec<Loc>, Vec<(Loc, Loc)>) {
    let mut bigons = Vec::new();
    let mut triangles = Vec::new();
    let mut pairs = Vec::new();
    for f in &skel.faces {
        let locs: Vec<Loc> = f
            .darts
            .iter()
            .map(|d| Loc {
                edge: d.edge,
                fwd: d.fwd,
            })
            .collect();
        if f.darts.len() == 2 {
            let (d1, d2) = (f.darts[0], f.darts[1]);
            let c1 = dart_head_crossing(skel, d1);
            let c2 = dart_head_crossing(skel, d2);
            if d1.edge != d2.edge && c1.is_some() && c2.is_some() && c1 != c2 {
                let e = d1.edge;
                let info = skel.edges[&e];
                let par = |s: Option<super::skeleton::SlotRef>| s.map(|x| x.slot % 2);
                if par(info.head) == par(info.tail) {
                    bigons.push(locs[0]);
                }
            }
        }
        if f.darts.len() == 3 {
            let distinct_corners = {
                let cs: Vec<_> = f.darts.iter().map(|&d| dart_head_slot(skel, d).vertex).collect();
                cs[0] != cs[1]
                    && cs[1] != cs[2]
                    && cs[0] != cs[2]
                    && f
                        .darts
                        .iter()
                        .all(|&d| vertex_crossing(skel, dart_head_slot(skel, d).vertex).is_some())
            };
            let distinct_sides = {
                let es = [f.darts[0].edge, f.darts[1].edge, f.darts[2].edge];
                es[0] != es[1] && es[1] != es[2] && es[0] != es[2]
            };
            if distinct_corners && distinct_sides {
                for (i, &loc) in locs.iter().enumerate() {
                    let info = skel.edges[&f.darts[i].edge];
                    if info.head.unwrap().slot % 2 == info.tail.unwrap().slot % 2 {
                        triangles.push(loc);
                    }
                }
            }
        }
        for (i, &la) in locs.iter().enumerate() {
            for (j, &lb) in locs.iter().enumerate() {
                if i != j && la.edge != lb.edge {
                    pairs.push((la, lb));
                }
            }
        }
    }
    (bigons, triangles, pairs)
}

/// Removable bigon faces.
pub fn bigon_sites(d: &LinkDiagram) -> Vec<Loc> {
    Skeleton::of_link(d).map(|s| sites_from_skeleton(&s).0).unwrap_or_default()
}

/// Admissible triangle moves.
pub fn triangle_sites(d: &LinkDiagram) -> Vec<Loc> {
    Skeleton::of_link(d).map(|s| sites_from_skeleton(&s).1).unwrap_or_default()
}

/// Dart pairs sharing a face: candidate strand-over-strand pushes.
pub fn face_dart_pairs(d: &LinkDiagram) -> Vec<(Loc, Loc)> {
    Skeleton::of_link(d).map(|s| sites_from_skeleton(&s).2).unwrap_or_default()
}

pub fn kink_sites_spine(d: &SpineDiagram) -> Vec<CrossingId> {
    kink_sites(&LinkDiagram {
        components: d.loops.clone(),
        crossings: d.crossings.clone(),
    })
}

pub fn bigon_sites_spine(d: &SpineDiagram) -> Vec<Loc> {
    Skeleton::of_spine(d).map(|s| sites_from_skeleton(&s).0).unwrap_or_default()
}

pub fn triangle_sites_spine(d: &SpineDiagram) -> Vec<Loc> {
    Skeleton::of_spine(d).map(|s| sites_from_skeleton(&s).1).unwrap_or_default()
}

pub fn face_dart_pairs_spine(d: &SpineDiagram) -> Vec<(Loc, Loc)> {
    Skeleton::of_spine(d).map(|s| sites_from_skeleton(&s).2).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate_link;

    #[test]
    fn r1_insert_remove_roundtrip() {
        let d = LinkDiagram::trefoil();
        for sign in [Sign::Positive, Sign::Negative] {
            let kinked = apply_reidemeister(
                &d,
                &ReidemeisterMove::R1Insert {
                    edge: EdgeId(2),
                    sign,
                },
            )
            .unwrap();
            assert!(validate_link(&kinked).ok());
            assert_eq!(kinked.crossings.len(), 4);
            assert_eq!(kinked.writhe(0).unwrap(), 3 + sign.value());
            let sites = kink_sites(&kinked);
            assert_eq!(sites.len(), 1);
            let back = apply_reidemeister(&kinked, &ReidemeisterMove::R1Remove { crossing: sites[0] })
                .unwrap();
            assert_eq!(back.to_string(), d.to_string());
        }
    }

    #[test]
    fn r1_on_free_circle() {
        let d = LinkDiagram::unknot();
        let kinked = apply_reidemeister(
            &d,
            &ReidemeisterMove::R1Insert {
                edge: EdgeId(1),
                sign: Sign::Positive,
            },
        )
        .unwrap();
        assert!(validate_link(&kinked).ok());
        assert_eq!(kinked.writhe(0).unwrap(), 1);
        let back = apply_reidemeister(
            &kinked,
            &ReidemeisterMove::R1Remove {
                crossing: kinked.crossings[0].id,
            },
        )
        .unwrap();
        assert_eq!(back.to_string(), d.to_string());
    }

    #[test]
    fn r2_insert_then_remove() {
        let d = LinkDiagram::trefoil();
        let pairs = face_dart_pairs(&d);
        assert!(!pairs.is_empty());
        let mut checked = 0;
        for &(over, under) in pairs.iter().take(12) {
            let pushed = apply_reidemeister(&d, &ReidemeisterMove::R2Insert { over, under }).unwrap();
            assert!(validate_link(&pushed).ok());
            assert_eq!(pushed.crossings.len(), 5);
            assert_eq!(pushed.writhe(0).unwrap(), 3);
            let bigons = bigon_sites(&pushed);
            assert!(!bigons.is_empty());
            let mut undone = false;
            for &b in &bigons {
                let back = apply_reidemeister(&pushed, &ReidemeisterMove::R2Remove { at: b }).unwrap();
                assert!(validate_link(&back).ok());
                assert_eq!(back.crossings.len(), 3);
                undone = true;
            }
            assert!(undone);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn r2_push_bare_circles() {
        // Bare circles carry no darts, but a push pins them down.
        let d = LinkDiagram::unlink(2);
        let pushed = apply_reidemeister(
            &d,
            &ReidemeisterMove::R2Insert {
                over: Loc { edge: EdgeId(1), fwd: true },
                under: Loc { edge: EdgeId(2), fwd: true },
            },
        )
        .unwrap();
        assert!(validate_link(&pushed).ok());
        assert_eq!(pushed.crossings.len(), 2);
        let bigons = bigon_sites(&pushed);
        assert!(!bigons.is_empty());
        let back = apply_reidemeister(&pushed, &ReidemeisterMove::R2Remove { at: bigons[0] }).unwrap();
        assert!(validate_link(&back).ok());
        assert!(back.crossings.is_empty());
        assert_eq!(back.components.len(), 2);
    }

    #[test]
    fn hopf_bigons_are_clasps() {
        // The alternating Hopf bigon is not a Reidemeister 2 site.
        assert!(bigon_sites(&LinkDiagram::hopf()).is_empty());
    }

    #[test]
    fn alternating_trefoil_has_no_triangle_move() {
        assert!(triangle_sites(&LinkDiagram::trefoil()).is_empty());
    }

    #[test]
    fn r3_preserves_writhe_and_signs() {
        // Flip one trefoil crossing; the diagram stays planar with the
        // same faces and gains admissible triangles.
        let mut d = LinkDiagram::trefoil();
        let flipped = d.crossings[0].flipped().unwrap();
        d.crossings[0] = flipped;
        assert!(validate_link(&d).ok());
        let sites = triangle_sites(&d);
        assert!(!sites.is_empty());
        for &at in &sites {
            let moved = apply_reidemeister(&d, &ReidemeisterMove::R3 { at }).unwrap();
            assert!(validate_link(&moved).ok(), "R3 at {at:?}");
            assert_eq!(moved.crossings.len(), 3);
            assert_eq!(moved.writhe(0).unwrap(), d.writhe(0).unwrap());
        }
    }

    #[test]
    fn bad_locations_are_rejected() {
        let d = LinkDiagram::trefoil();
        assert!(matches!(
            apply_reidemeister(&d, &ReidemeisterMove::R1Remove { crossing: CrossingId(1) }),
            Err(MoveError::NotAKink(_))
        ));
        assert!(matches!(
            apply_reidemeister(
                &d,
                &ReidemeisterMove::R2Insert {
                    over: Loc { edge: EdgeId(1), fwd: true },
                    under: Loc { edge: EdgeId(1), fwd: false },
                }
            ),
            Err(MoveError::SameEdge(_))
        ));
        assert!(matches!(
            apply_reidemeister(&d, &ReidemeisterMove::R1Insert { edge: EdgeId(99), sign: Sign::Positive }),
            Err(MoveError::UnknownEdge(_))
        ));
    }
}
