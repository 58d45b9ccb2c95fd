//! Incidence structure behind a diagram: vertices with rotations,
//! edge endpoints, strand passages and traced faces.

use super::{Crossing, CrossingId, EdgeId, LinkDiagram, SpineDiagram};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VertexKind {
    Crossing(CrossingId),
    Attach(usize),
    Wedge,
}

#[derive(Debug, Clone)]
pub(crate) struct Vertex {
    pub kind: VertexKind,
    pub slots: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SlotRef {
    pub vertex: usize,
    pub slot: usize,
}

/// Closed components (link components or spine loops) come first;
/// arcs follow where present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum CompRef {
    Closed(usize),
    Arc(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PassageKind {
    Under,
    Over,
    Through,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Passage {
    pub vertex: usize,
    #[allow(dead_code)]
    pub in_slot: usize,
    pub out_slot: usize,
    #[allow(dead_code)]
    pub kind: PassageKind,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct EdgeInfo {
    pub tail: Option<SlotRef>,
    pub head: Option<SlotRef>,
    #[allow(dead_code)]
    pub comp: CompRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Dart {
    pub edge: EdgeId,
    pub fwd: bool,
}


#[derive(Debug, Clone)]
pub(crate) struct Face {
    pub darts: Vec<Dart>,
    pub component: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Skeleton {
    pub vertices: Vec<Vertex>,
    pub edges: BTreeMap<EdgeId, EdgeInfo>,
    /// Passage consuming each edge at its head, keyed by incoming edge.
    pub passages: BTreeMap<EdgeId, Passage>,
    /// Closed components that are bare circles without incidences.
    pub free_circles: Vec<usize>,
    pub faces: Vec<Face>,
    /// Vertex-graph connected component of each vertex.
    pub vertex_component: Vec<usize>,
    pub n_components: usize,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub(crate) enum Structure {
    #[error("edge {0} appears {1} times in incidence lists, expected 2")]
    EdgeCount(EdgeId, usize),
    #[error("edge {0} is listed in crossings or vertices but on no component")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is listed on more than one component")]
    DuplicateListing(EdgeId),
    #[error("crossing {0} has an inconsistent or ambiguous over marker")]
    BadOverMarker(CrossingId),
    #[error("edge {0} has conflicting orientations at its endpoints")]
    OrientationConflict(EdgeId),
    #[error("component traversal breaks after edge {0}: diagram continues to {1}, list says {2}")]
    TraversalMismatch(EdgeId, EdgeId, EdgeId),
    #[error("component traversal breaks after edge {0}: no continuation in the diagram")]
    TraversalDeadEnd(EdgeId),
    #[error("arc {0} does not start at its attachment vertex")]
    ArcStart(usize),
    #[error("arc {0} does not end at the wedge")]
    ArcEnd(usize),
    #[error("wedge lists edge {0} more than once")]
    WedgeDuplicate(EdgeId),
}

pub(crate) struct Pieces<'a> {
    pub closed: &'a [Vec<EdgeId>],
    pub arcs: &'a [Vec<EdgeId>],
    pub wedge: Option<&'a [EdgeId]>,
    pub crossings: &'a [Crossing],
}

impl<'a> From<&'a LinkDiagram> for Pieces<'a> {
    fn from(d: &'a LinkDiagram) -> Self {
        Pieces {
            closed: &d.components,
            arcs: &[],
            wedge: None,
            crossings: &d.crossings,
        }
    }
}

impl<'a> From<&'a SpineDiagram> for Pieces<'a> {
    fn from(d: &'a SpineDiagram) -> Self {
        Pieces {
            closed: &d.loops,
            arcs: &d.arcs,
            wedge: Some(&d.wedge),
            crossings: &d.crossings,
        }
    }
}

impl Skeleton {
    pub fn of_link(d: &LinkDiagram) -> Result<Skeleton, Vec<Structure>> {
        Skeleton::build(Pieces::from(d))
    }

    pub fn of_spine(d: &SpineDiagram) -> Result<Skeleton, Vec<Structure>> {
        Skeleton::build(Pieces::from(d))
    }

    pub fn build(p: Pieces) -> Result<Skeleton, Vec<Structure>> {
        let mut errors = Vec::new();

        let mut comp_of: BTreeMap<EdgeId, CompRef> = BTreeMap::new();
        for (i, comp) in p.closed.iter().enumerate() {
            for &e in comp {
                if comp_of.insert(e, CompRef::Closed(i)).is_some() {
                    errors.push(Structure::DuplicateListing(e));
                }
            }
        }
        for (i, arc) in p.arcs.iter().enumerate() {
            for &e in arc {
                if comp_of.insert(e, CompRef::Arc(i)).is_some() {
                    errors.push(Structure::DuplicateListing(e));
                }
            }
        }

        let mut vertices = Vec::new();
        for c in p.crossings {
            vertices.push(Vertex {
                kind: VertexKind::Crossing(c.id),
                slots: c.slots.to_vec(),
            });
        }
        for i in 0..p.arcs.len() {
            vertices.push(Vertex {
                kind: VertexKind::Attach(i),
                slots: vec![p.closed[i][0], *p.closed[i].last().unwrap(), p.arcs[i][0]],
            });
        }
        if let Some(w) = p.wedge {
            let mut seen = Vec::new();
            for &e in w {
                if seen.contains(&e) {
                    errors.push(Structure::WedgeDuplicate(e));
                }
                seen.push(e);
            }
            vertices.push(Vertex {
                kind: VertexKind::Wedge,
                slots: w.to_vec(),
            });
        }

        let mut occurrences: BTreeMap<EdgeId, Vec<SlotRef>> = BTreeMap::new();
        for (vi, v) in vertices.iter().enumerate() {
            for (si, &e) in v.slots.iter().enumerate() {
                occurrences.entry(e).or_default().push(SlotRef {
                    vertex: vi,
                    slot: si,
                });
            }
        }

        for (&e, occ) in &occurrences {
            if !comp_of.contains_key(&e) {
                errors.push(Structure::UnknownEdge(e));
            } else if occ.len() != 2 {
                errors.push(Structure::EdgeCount(e, occ.len()));
            }
        }

        let mut free_circles = Vec::new();
        for (i, comp) in p.closed.iter().enumerate() {
            for &e in comp {
                let n = occurrences.get(&e).map_or(0, |o| o.len());
                if n == 0 {
                    if comp.len() == 1 {
                        free_circles.push(i);
                    } else {
                        errors.push(Structure::EdgeCount(e, 0));
                    }
                }
            }
        }
        for arc in p.arcs {
            for &e in arc {
                if occurrences.get(&e).map_or(0, |o| o.len()) == 0 {
                    errors.push(Structure::EdgeCount(e, 0));
                }
            }
        }

        // Passages, and the tail/head role each slot imposes.
        let mut passages: BTreeMap<EdgeId, Passage> = BTreeMap::new();
        let mut tails: Vec<SlotRef> = Vec::new();
        let mut heads: Vec<SlotRef> = Vec::new();
        for (vi, v) in vertices.iter().enumerate() {
            match v.kind {
                VertexKind::Crossing(id) => {
                    let c = p.crossings.iter().find(|c| c.id == id).unwrap();
                    let over = match c.over_in_slot() {
                        Some(k) => k,
                        None => {
                            errors.push(Structure::BadOverMarker(id));
                            continue;
                        }
                    };
                    for (kind, in_slot, out_slot) in [
                        (PassageKind::Under, 0, 2),
                        (PassageKind::Over, over, 4 - over),
                    ] {
                        heads.push(SlotRef { vertex: vi, slot: in_slot });
                        tails.push(SlotRef { vertex: vi, slot: out_slot });
                        passages.insert(
                            v.slots[in_slot],
                            Passage {
                                vertex: vi,
                                in_slot,
                                out_slot,
                                kind,
                            },
                        );
                    }
                }
                VertexKind::Attach(_) => {
                    tails.push(SlotRef { vertex: vi, slot: 0 });
                    heads.push(SlotRef { vertex: vi, slot: 1 });
                    tails.push(SlotRef { vertex: vi, slot: 2 });
                    passages.insert(
                        v.slots[1],
                        Passage {
                            vertex: vi,
                            in_slot: 1,
                            out_slot: 0,
                            kind: PassageKind::Through,
                        },
                    );
                }
                VertexKind::Wedge => {
                    for si in 0..v.slots.len() {
                        heads.push(SlotRef { vertex: vi, slot: si });
                    }
                }
            }
        }

        if !errors.is_empty() {
            return Err(errors);
        }

        let mut edges: BTreeMap<EdgeId, EdgeInfo> = BTreeMap::new();
        for (&e, &comp) in &comp_of {
            edges.insert(
                e,
                EdgeInfo {
                    tail: None,
                    head: None,
                    comp,
                },
            );
        }
        for (list, is_tail) in [(&tails, true), (&heads, false)] {
            for &sr in list.iter() {
                let e = vertices[sr.vertex].slots[sr.slot];
                let info = edges.get_mut(&e).unwrap();
                let slot = if is_tail { &mut info.tail } else { &mut info.head };
                if slot.replace(sr).is_some() {
                    errors.push(Structure::OrientationConflict(e));
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        // Every component list must follow the diagram's own strand
        // continuation edge by edge.
        for (i, comp) in p.closed.iter().enumerate() {
            if free_circles.contains(&i) {
                continue;
            }
            let n = comp.len();
            for j in 0..n {
                let e = comp[j];
                let expect = comp[(j + 1) % n];
                match passages.get(&e) {
                    Some(pass) => {
                        let out = vertices[pass.vertex].slots[pass.out_slot];
                        if out != expect {
                            errors.push(Structure::TraversalMismatch(e, out, expect));
                        }
                    }
                    None => errors.push(Structure::TraversalDeadEnd(e)),
                }
            }
        }
        for (i, arc) in p.arcs.iter().enumerate() {
            for j in 0..arc.len() - 1 {
                let e = arc[j];
                let expect = arc[j + 1];
                match passages.get(&e) {
                    Some(pass) => {
                        let out = vertices[pass.vertex].slots[pass.out_slot];
                        if out != expect {
                            errors.push(Structure::TraversalMismatch(e, out, expect));
                        }
                    }
                    None => errors.push(Structure::TraversalDeadEnd(e)),
                }
            }
            let first = edges[&arc[0]];
            match first.tail {
                Some(sr) if matches!(vertices[sr.vertex].kind, VertexKind::Attach(k) if k == i) => {}
                _ => errors.push(Structure::ArcStart(i)),
            }
            let last = edges[arc.last().unwrap()];
            match last.head {
                Some(sr) if matches!(vertices[sr.vertex].kind, VertexKind::Wedge) => {}
                _ => errors.push(Structure::ArcEnd(i)),
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        let mut skel = Skeleton {
            vertices,
            edges,
            passages,
            free_circles,
            faces: Vec::new(),
            vertex_component: Vec::new(),
            n_components: 0,
        };
        skel.connect();
        skel.trace_faces();
        Ok(skel)
    }

    fn connect(&mut self) {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for info in self.edges.values() {
            if let (Some(t), Some(h)) = (info.tail, info.head) {
                let (a, b) = (find(&mut parent, t.vertex), find(&mut parent, h.vertex));
                parent[a] = b;
            }
        }
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(n);
        for v in 0..n {
            let r = find(&mut parent, v);
            let next = label.len();
            out.push(*label.entry(r).or_insert(next));
        }
        self.n_components = label.len();
        self.vertex_component = out;
    }

    /// End of a dart: the slot it points into.
    fn dart_head(&self, d: Dart) -> Option<SlotRef> {
        let info = self.edges.get(&d.edge)?;
        if d.fwd {
            info.head
        } else {
            info.tail
        }
    }

    /// Dart leaving a slot, pointing away from the vertex.
    fn dart_leaving(&self, sr: SlotRef) -> Dart {
        let e = self.vertices[sr.vertex].slots[sr.slot];
        let info = &self.edges[&e];
        Dart {
            edge: e,
            fwd: info.tail == Some(sr),
        }
    }

    /// Successor along the face to the left of the dart: arriving in
    /// slot `s` of a counterclockwise rotation, the walk leaves by the
    /// clockwise neighbor `s - 1`.
    pub fn face_next(&self, d: Dart) -> Option<Dart> {
        let sr = self.dart_head(d)?;
        let arity = self.vertices[sr.vertex].slots.len();
        let next = SlotRef {
            vertex: sr.vertex,
            slot: (sr.slot + arity - 1) % arity,
        };
        Some(self.dart_leaving(next))
    }

    fn trace_faces(&mut self) {
        let mut all: Vec<Dart> = Vec::new();
        for (&e, info) in &self.edges {
            if info.tail.is_some() && info.head.is_some() {
                all.push(Dart { edge: e, fwd: true });
                all.push(Dart { edge: e, fwd: false });
            }
        }
        let mut seen: std::collections::BTreeSet<Dart> = Default::default();
        let mut faces = Vec::new();
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                orbit.push(d);
                seen.insert(d);
                d = self.face_next(d).expect("validated edges have both ends");
                if d == start {
                    break;
                }
            }
            let component = self.vertex_component[self.dart_head(start).unwrap().vertex];
            faces.push(Face {
                darts: orbit,
                component,
            });
        }
        self.faces = faces;
    }

    /// Euler characteristic check per connected vertex component.
    /// Returns (component, v, e, f) for each.
    pub fn euler_by_component(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut rows = Vec::new();
        for comp in 0..self.n_components {
            let v = self
                .vertex_component
                .iter()
                .filter(|&&c| c == comp)
                .count();
            let e = self
                .edges
                .values()
                .filter(|i| match i.tail {
                    Some(sr) => self.vertex_component[sr.vertex] == comp,
                    None => false,
                })
                .count();
            let f = self.faces.iter().filter(|f| f.component == comp).count();
            rows.push((comp, v, e, f));
        }
        rows
    }

    /// Number of regions a plane embedding has: connected pieces share
    /// the outer region, and each bare circle adds one region.
    pub fn region_count(&self) -> usize {
        let bounded: usize = self
            .euler_by_component()
            .iter()
            .map(|&(_, _, _, f)| f.saturating_sub(1))
            .sum();
        1 + bounded + self.free_circles.len()
    }

    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.faces.iter().position(|f| f.darts.contains(&d))
    }
}
