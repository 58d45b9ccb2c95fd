//! Oriented surface construction by smoothing crossings.
//!
//! Smoothing a crossing joins each incoming strand to the outgoing
//! strand that keeps orientations parallel; the resulting circles
//! bound disks, and each crossing contributes a half-twisted band
//! between the disks it touches. Euler characteristic and genus of
//! each connected piece follow by counting.

use crate::diagram::{Crossing, CrossingId, EdgeId, LinkDiagram, SpineDiagram};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePiece {
    /// Smoothing circles spanning this piece (indices into `circles`).
    pub disks: Vec<usize>,
    /// Crossings whose bands join the disks.
    pub bands: Vec<CrossingId>,
    pub chi: i64,
    pub genus: i64,
    /// Diagram components this piece spans.
    pub boundary: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    /// Each circle as the edge cycle it follows.
    pub circles: Vec<Vec<EdgeId>>,
    pub pieces: Vec<SurfacePiece>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("diagram is not valid: {0}")]
    Invalid(String),
    #[error("spine has crossings on arcs; exchange them off first")]
    NotNormalForm,
    #[error("loop {0} is not spanned by any piece")]
    MissingLoop(usize),
}

/// Smoothing successor of an in-slot: the adjacent out-slot.
fn smoothed_out(in_slot: usize, out_slots: [usize; 2]) -> usize {
    let cand = (in_slot + 1) % 4;
    if out_slots.contains(&cand) {
        cand
    } else {
        (in_slot + 3) % 4
    }
}

fn circles_of(components: &[Vec<EdgeId>], crossings: &[Crossing]) -> Vec<Vec<EdgeId>> {
    // Map each edge to its smoothing successor.
    let mut next: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut at_crossing: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for c in crossings {
        let k = c.over_in_slot().expect("validated crossing");
        let outs = [2, 4 - k];
        for in_slot in [0, k] {
            let out = smoothed_out(in_slot, outs);
            at_crossing.insert(c.slots[in_slot], c.slots[out]);
        }
    }
    for comp in components {
        for (j, &e) in comp.iter().enumerate() {
            let succ = match at_crossing.get(&e) {
                Some(&s) => s,
                None => comp[(j + 1) % comp.len()],
            };
            next.insert(e, succ);
        }
    }
    let mut seen: BTreeMap<EdgeId, bool> = next.keys().map(|&e| (e, false)).collect();
    let mut circles = Vec::new();
    for comp in components {
        for &start in comp {
            if seen[&start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = start;
            loop {
                cyc.push(e);
                seen.insert(e, true);
                e = next[&e];
                if e == start {
                    break;
                }
            }
            circles.push(cyc);
        }
    }
    circles
}


fn assemble(
    components: &[Vec<EdgeId>],
    crossings: &[Crossing],
) -> SurfaceData {
    let circles = circles_of(components, crossings);
    let circle_of: BTreeMap<EdgeId, usize> = circles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&e| (e, i)))
        .collect();

    // Union circles joined by bands.
    let mut parent: Vec<usize> = (0..circles.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for c in crossings {
        let a = circle_of[&c.slots[0]];
        let b = circle_of[&c.over_in];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }

    let mut piece_ids: Vec<usize> = Vec::new();
    let mut pieces: Vec<SurfacePiece> = Vec::new();
    for i in 0..circles.len() {
        let r = find(&mut parent, i);
        let pid = match piece_ids.iter().position(|&x| x == r) {
            Some(p) => p,
            None => {
                piece_ids.push(r);
                pieces.push(SurfacePiece {
                    disks: Vec::new(),
                    bands: Vec::new(),
                    chi: 0,
                    genus: 0,
                    boundary: Vec::new(),
                });
                pieces.len() - 1
            }
        };
        pieces[pid].disks.push(i);
    }
    for c in crossings {
        let r = find(&mut parent, circle_of[&c.slots[0]]);
        let pid = piece_ids.iter().position(|&x| x == r).unwrap();
        pieces[pid].bands.push(c.id);
    }
    for (ci, comp) in components.iter().enumerate() {
        let r = find(&mut parent, circle_of[&comp[0]]);
        let pid = piece_ids.iter().position(|&x| x == r).unwrap();
        pieces[pid].boundary.push(ci);
    }
    for p in &mut pieces {
        p.chi = p.disks.len() as i64 - p.bands.len() as i64;
        let b = p.boundary.len() as i64;
        debug_assert_eq!((2 - p.chi - b) % 2, 0);
        p.genus = (2 - p.chi - b) / 2;
    }
    SurfaceData { circles, pieces }
}

/// Circles of the oriented smoothing, each as its edge cycle.
pub fn seifert_circles(d: &LinkDiagram) -> Result<Vec<Vec<EdgeId>>, SurfaceError> {
    let report = crate::diagram::validate_link(d);
    if !report.ok() {
        return Err(SurfaceError::Invalid(report.issues[0].msg.clone()));
    }
    Ok(circles_of(&d.components, &d.crossings))
}

/// The banded surface spanned by a link diagram.
pub fn build_surface(d: &LinkDiagram) -> Result<SurfaceData, SurfaceError> {
    let report = crate::diagram::validate_link(d);
    if !report.ok() {
        return Err(SurfaceError::Invalid(report.issues[0].msg.clone()));
    }
    Ok(assemble(&d.components, &d.crossings))
}

/// One oriented spanning surface per loop of a spine.
///
/// The surface for a loop is the connected piece spanning it. Pieces
/// built this way are pairwise disjoint in space, so the system is
/// embedded; a piece whose boundary takes in more than one loop is
/// recorded as shared between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSystem {
    pub surface: SurfaceData,
    /// Piece index assigned to each loop.
    pub loop_piece: Vec<usize>,
    /// Pieces spanning more than one loop, with the loops they join.
    pub shared: Vec<(usize, Vec<usize>)>,
}

impl SurfaceSystem {
    pub fn is_disjoint(&self) -> bool {
        self.shared.is_empty()
    }
}

pub fn spine_surface_system(d: &SpineDiagram) -> Result<SurfaceSystem, SurfaceError> {
    let report = crate::diagram::validate_spine(d);
    if !report.ok() {
        return Err(SurfaceError::Invalid(report.issues[0].msg.clone()));
    }
    if report.normal_form != Some(true) {
        return Err(SurfaceError::NotNormalForm);
    }
    let surface = assemble(&d.loops, &d.crossings);
    let mut loop_piece = Vec::with_capacity(d.genus());
    for i in 0..d.genus() {
        let pid = surface
            .pieces
            .iter()
            .position(|p| p.boundary.contains(&i))
            .ok_or(SurfaceError::MissingLoop(i))?;
        loop_piece.push(pid);
    }
    let shared = surface
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| p.boundary.len() > 1)
        .map(|(i, p)| (i, p.boundary.clone()))
        .collect();
    Ok(SurfaceSystem {
        surface,
        loop_piece,
        shared,
    })
}

/// Boundary slope of a surface pushed off into the complement of the
/// spine's handlebody, in (meridian, longitude) coordinates of the
/// loop it spans: the boundary runs once along the loop and bounds in
/// the complement, so it is the longitude.
pub const EXTERIOR_BOUNDARY_SLOPE: (i64, i64) = (0, 1);

/// Per-loop record of a surface system met from outside the
/// handlebody: what remains after cutting the system's collar back to
/// the boundary torus of each loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorSurface {
    pub looped: usize,
    pub chi: i64,
    pub genus: i64,
    pub boundary_slope: (i64, i64),
}

pub fn restrict_to_exterior(sys: &SurfaceSystem) -> Vec<ExteriorSurface> {
    sys.loop_piece
        .iter()
        .enumerate()
        .map(|(i, &pid)| {
            let p = &sys.surface.pieces[pid];
            ExteriorSurface {
                looped: i,
                chi: p.chi,
                genus: p.genus,
                boundary_slope: EXTERIOR_BOUNDARY_SLOPE,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn trefoil_surface() {
        let d = LinkDiagram::trefoil();
        let circles = seifert_circles(&d).unwrap();
        assert_eq!(circles.len(), 2);
        let s = build_surface(&d).unwrap();
        assert_eq!(s.pieces.len(), 1);
        let p = &s.pieces[0];
        assert_eq!(p.disks.len(), 2);
        assert_eq!(p.bands.len(), 3);
        assert_eq!(p.chi, -1);
        assert_eq!(p.genus, 1);
        assert_eq!(p.boundary, vec![0]);
    }

    #[test]
    fn hopf_annulus() {
        let s = build_surface(&LinkDiagram::hopf()).unwrap();
        assert_eq!(s.circles.len(), 2);
        assert_eq!(s.pieces.len(), 1);
        let p = &s.pieces[0];
        assert_eq!((p.chi, p.genus), (0, 0));
        assert_eq!(p.boundary, vec![0, 1]);
    }

    #[test]
    fn figure_eight_genus_one() {
        let s = build_surface(&LinkDiagram::figure_eight()).unwrap();
        assert_eq!(s.circles.len(), 3);
        let p = &s.pieces[0];
        assert_eq!(s.pieces.len(), 1);
        assert_eq!(p.chi, -1);
        assert_eq!(p.genus, 1);
    }

    #[test]
    fn kink_spans_a_disk() {
        for sign in [Sign::Positive, Sign::Negative] {
            let s = build_surface(&LinkDiagram::kink(sign)).unwrap();
            assert_eq!(s.circles.len(), 2);
            assert_eq!(s.pieces.len(), 1);
            assert_eq!((s.pieces[0].chi, s.pieces[0].genus), (1, 0));
        }
    }

    #[test]
    fn unlink_disks() {
        let s = build_surface(&LinkDiagram::unlink(3)).unwrap();
        assert_eq!(s.circles.len(), 3);
        assert_eq!(s.pieces.len(), 3);
        for p in &s.pieces {
            assert_eq!((p.chi, p.genus, p.boundary.len()), (1, 0, 1));
        }
    }

    #[test]
    fn chi_adds_up_and_whitehead_is_consistent() {
        for d in [
            LinkDiagram::trefoil(),
            LinkDiagram::hopf(),
            LinkDiagram::figure_eight(),
            LinkDiagram::whitehead(),
        ] {
            let s = build_surface(&d).unwrap();
            let total: i64 = s.pieces.iter().map(|p| p.chi).sum();
            assert_eq!(
                total,
                s.circles.len() as i64 - d.crossings.len() as i64
            );
            for p in &s.pieces {
                assert!(p.genus >= 0, "negative genus in {d}");
                assert_eq!(p.chi, 2 - 2 * p.genus - p.boundary.len() as i64);
            }
        }
    }

    #[test]
    fn trefoil_spine_system() {
        let sys = spine_surface_system(&SpineDiagram::trefoil_spine()).unwrap();
        assert!(sys.is_disjoint());
        assert_eq!(sys.loop_piece, vec![0]);
        let p = &sys.surface.pieces[0];
        assert_eq!((p.genus, p.chi), (1, -1));
        let ext = restrict_to_exterior(&sys);
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0].boundary_slope, (0, 1));
    }

    #[test]
    fn hopf_spine_system_is_shared() {
        let sys = spine_surface_system(&SpineDiagram::hopf_spine()).unwrap();
        assert!(!sys.is_disjoint());
        assert_eq!(sys.shared.len(), 1);
        assert_eq!(sys.shared[0].1, vec![0, 1]);
        // Both loops lease the same annulus.
        assert_eq!(sys.loop_piece[0], sys.loop_piece[1]);
        let p = &sys.surface.pieces[sys.loop_piece[0]];
        assert_eq!((p.chi, p.genus), (0, 0));
    }

    #[test]
    fn standard_spine_spans_disks() {
        for g in 1..4 {
            let sys = spine_surface_system(&SpineDiagram::standard(g)).unwrap();
            assert!(sys.is_disjoint());
            for &pid in &sys.loop_piece {
                let p = &sys.surface.pieces[pid];
                assert_eq!((p.chi, p.genus), (1, 0));
            }
        }
    }

    #[test]
    fn smoothing_respects_orientation() {
        // A kink inserted on any trefoil edge adds exactly one circle.
        use crate::diagram::{apply_reidemeister, ReidemeisterMove};
        let d = LinkDiagram::trefoil();
        let base = seifert_circles(&d).unwrap().len();
        for e in 1..=6 {
            for sign in [Sign::Positive, Sign::Negative] {
                let kinked = apply_reidemeister(
                    &d,
                    &ReidemeisterMove::R1Insert {
                        edge: crate::diagram::EdgeId(e),
                        sign,
                    },
                )
                .unwrap();
                assert_eq!(seifert_circles(&kinked).unwrap().len(), base + 1);
            }
        }
    }
}
