//! Planar diagrams of oriented links and handcuff-graph spines.
//!
//! A diagram is a 4-valent plane graph with over/under data at each
//! crossing. Crossings list their four incident edge ends in
//! counterclockwise order starting at the incoming under-strand, and
//! `over_in` names the edge on which the over-strand enters. Component
//! edge lists fix the orientations: each component is traversed in its
//! listed edge order.
//!
//! Spines additionally carry `g` arcs joining each loop to a common
//! wedge vertex. The attachment vertex of loop `i` sits between the
//! loop's last and first listed edges, with counterclockwise rotation
//! (loop out, loop in, arc out); the wedge's rotation is the listed
//! order of the arcs' final edges.

mod moves;
mod parse;
mod skeleton;
mod validate;

pub use moves::{
    apply_reidemeister, apply_reidemeister_spine, bigon_sites, bigon_sites_spine,
    face_dart_pairs, face_dart_pairs_spine, kink_sites, kink_sites_spine, triangle_sites,
    triangle_sites_spine, Loc, MoveError, ReidemeisterMove,
};
pub(crate) use moves::build_crossing;
pub use parse::{parse, parse_link, parse_spine, ParseError};
pub use validate::{validate, validate_link, validate_spine, Issue, IssueCode, ValidationReport};

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn of(n: i64) -> Sign {
        if n >= 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "+"),
            Sign::Negative => write!(f, "-"),
        }
    }
}

/// One crossing: four edge ends counterclockwise from the incoming
/// under-strand, plus the edge on which the over-strand enters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub id: CrossingId,
    pub slots: [EdgeId; 4],
    pub over_in: EdgeId,
}

impl Crossing {
    /// Slot tuple realizing a crossing from its two passages and sign.
    pub fn from_strands(
        id: CrossingId,
        under: (EdgeId, EdgeId),
        over: (EdgeId, EdgeId),
        sign: Sign,
    ) -> Crossing {
        let slots = match sign {
            Sign::Positive => [under.0, over.1, under.1, over.0],
            Sign::Negative => [under.0, over.0, under.1, over.1],
        };
        Crossing {
            id,
            slots,
            over_in: over.0,
        }
    }

    /// Slot index (1 or 3) of the incoming over-strand, if the marker
    /// is consistent and unambiguous.
    pub fn over_in_slot(&self) -> Option<usize> {
        match (self.slots[1] == self.over_in, self.slots[3] == self.over_in) {
            (true, false) => Some(1),
            (false, true) => Some(3),
            _ => None,
        }
    }

    /// Right-handed crossings are positive: the under-strand passes
    /// right to left when viewed along the over-strand, which puts the
    /// incoming over edge at slot 3.
    pub fn sign(&self) -> Option<Sign> {
        self.over_in_slot().map(|s| match s {
            3 => Sign::Positive,
            _ => Sign::Negative,
        })
    }

    pub fn under_in(&self) -> EdgeId {
        self.slots[0]
    }

    pub fn under_out(&self) -> EdgeId {
        self.slots[2]
    }

    pub fn over_out(&self) -> Option<EdgeId> {
        self.over_in_slot().map(|s| self.slots[4 - s])
    }

    /// Crossing change: the under-strand becomes the over-strand.
    /// Rotates the slot tuple so the old incoming over edge sits at
    /// slot 0, preserving the counterclockwise order.
    pub fn flipped(&self) -> Option<Crossing> {
        let k = self.over_in_slot()?;
        let s = self.slots;
        Some(Crossing {
            id: self.id,
            slots: [s[k], s[(k + 1) % 4], s[(k + 2) % 4], s[(k + 3) % 4]],
            over_in: s[0],
        })
    }

    pub fn involves(&self, e: EdgeId) -> bool {
        self.slots.contains(&e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub components: Vec<Vec<EdgeId>>,
    pub crossings: Vec<Crossing>,
}

impl LinkDiagram {
    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn crossing_mut(&mut self, id: CrossingId) -> Option<&mut Crossing> {
        self.crossings.iter_mut().find(|c| c.id == id)
    }

    /// Sum of self-crossing signs of one component.
    pub fn writhe(&self, component: usize) -> Result<i64, WritheError> {
        if component >= self.components.len() {
            return Err(WritheError::NoSuchComponent(component));
        }
        let edges = &self.components[component];
        let mut total = 0;
        for c in &self.crossings {
            let on_comp = |e: EdgeId| edges.contains(&e);
            if on_comp(c.under_in()) && on_comp(c.slots[1]) {
                total += c.sign().ok_or(WritheError::BadCrossing(c.id))?.value();
            }
        }
        Ok(total)
    }

    pub fn max_edge_id(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|e| e.0)
            .max()
            .unwrap_or(0)
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.crossings.iter().map(|c| c.id.0).max().unwrap_or(0)
    }

    pub fn component_of(&self, e: EdgeId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&e))
    }

    /// Exchange which strand is on top at one crossing. Returns the
    /// sign the crossing had before.
    pub fn flip_crossing(&mut self, id: CrossingId) -> Result<Sign, EditError> {
        let c = self
            .crossing_mut(id)
            .ok_or(EditError::NoSuchCrossing(id))?;
        let old = c.sign().ok_or(EditError::BadCrossing(id))?;
        *c = c.flipped().ok_or(EditError::BadCrossing(id))?;
        Ok(old)
    }

    /// Reverse the orientation of one component. Crossings touching it
    /// are rewritten in place: a reversed under-strand rotates the slot
    /// cycle to the new incoming edge, a reversed over-strand moves the
    /// over marker to the other end.
    pub fn reverse_component(&mut self, i: usize) -> Result<(), EditError> {
        let edges = self
            .components
            .get(i)
            .ok_or(EditError::NoSuchComponent(i))?
            .clone();
        for c in &mut self.crossings {
            let k = c.over_in_slot().ok_or(EditError::BadCrossing(c.id))?;
            if edges.contains(&c.over_in) {
                c.over_in = c.slots[4 - k];
            }
            if edges.contains(&c.slots[0]) {
                c.slots.rotate_left(2);
            }
        }
        self.components[i].reverse();
        Ok(())
    }

    /// Disjoint union, renumbering the other diagram's edges and
    /// crossings above this one's.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let de = self.max_edge_id();
        let dc = self.max_crossing_id();
        let mut out = self.clone();
        for comp in &other.components {
            out.components
                .push(comp.iter().map(|e| EdgeId(e.0 + de)).collect());
        }
        for c in &other.crossings {
            out.crossings.push(Crossing {
                id: CrossingId(c.id.0 + dc),
                slots: c.slots.map(|e| EdgeId(e.0 + de)),
                over_in: EdgeId(c.over_in.0 + de),
            });
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EditError {
    #[error("no crossing {0} in the diagram")]
    NoSuchCrossing(CrossingId),
    #[error("crossing {0} has an inconsistent over marker")]
    BadCrossing(CrossingId),
    #[error("no component {0} in the diagram")]
    NoSuchComponent(usize),
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link n={}", self.components.len())?;
        for (i, comp) in self.components.iter().enumerate() {
            write!(f, "loop {}:", i + 1)?;
            for e in comp {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        write_crossings(f, &self.crossings)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineDiagram {
    pub loops: Vec<Vec<EdgeId>>,
    pub arcs: Vec<Vec<EdgeId>>,
    pub wedge: Vec<EdgeId>,
    pub crossings: Vec<Crossing>,
}

/// Which constituent of a spine an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Loop(usize),
    Arc(usize),
}

impl SpineDiagram {
    pub fn genus(&self) -> usize {
        self.loops.len()
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn crossing_mut(&mut self, id: CrossingId) -> Option<&mut Crossing> {
        self.crossings.iter_mut().find(|c| c.id == id)
    }

    /// Exchange which strand is on top at one crossing. Returns the
    /// sign the crossing had before.
    pub fn flip_crossing(&mut self, id: CrossingId) -> Result<Sign, EditError> {
        let c = self
            .crossing_mut(id)
            .ok_or(EditError::NoSuchCrossing(id))?;
        let old = c.sign().ok_or(EditError::BadCrossing(id))?;
        *c = c.flipped().ok_or(EditError::BadCrossing(id))?;
        Ok(old)
    }

    pub fn owner_of(&self, e: EdgeId) -> Option<Owner> {
        if let Some(i) = self.loops.iter().position(|l| l.contains(&e)) {
            return Some(Owner::Loop(i));
        }
        self.arcs.iter().position(|a| a.contains(&e)).map(Owner::Arc)
    }

    pub fn is_arc_edge(&self, e: EdgeId) -> bool {
        matches!(self.owner_of(e), Some(Owner::Arc(_)))
    }

    /// True when no crossing touches an arc; the wedge and arcs are
    /// then crossing-free and every crossing lies on the loops.
    pub fn is_normal_form(&self) -> bool {
        self.crossings
            .iter()
            .all(|c| c.slots.iter().all(|&e| !self.is_arc_edge(e)))
    }

    /// The loops as a bare link diagram: attachment vertices are
    /// smoothed away by merging each loop's last edge into its first.
    pub fn loops_as_link(&self) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        let mut components = Vec::new();
        for lp in &self.loops {
            if lp.len() == 1 {
                components.push(lp.clone());
                continue;
            }
            let first = lp[0];
            let last = *lp.last().unwrap();
            // `first` leaves the attachment vertex, `last` enters it;
            // drop `first` and reroute its far end onto `last`.
            for c in &mut crossings {
                for s in &mut c.slots {
                    if *s == first {
                        *s = last;
                    }
                }
                if c.over_in == first {
                    c.over_in = last;
                }
            }
            components.push(lp[1..].to_vec());
        }
        LinkDiagram {
            components,
            crossings,
        }
    }

    pub fn writhe(&self, lp: usize) -> Result<i64, WritheError> {
        self.loops_as_link().writhe(lp)
    }

    pub fn max_edge_id(&self) -> u32 {
        self.loops
            .iter()
            .chain(self.arcs.iter())
            .flatten()
            .map(|e| e.0)
            .max()
            .unwrap_or(0)
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.crossings.iter().map(|c| c.id.0).max().unwrap_or(0)
    }

    /// The crossing-free standard form: `g` one-edge loops in a row,
    /// each joined by a one-edge arc to the wedge.
    pub fn standard(genus: usize) -> SpineDiagram {
        let loops = (0..genus).map(|i| vec![EdgeId(2 * i as u32 + 1)]).collect();
        let arcs: Vec<_> = (0..genus).map(|i| vec![EdgeId(2 * i as u32 + 2)]).collect();
        let wedge = arcs.iter().map(|a| a[0]).collect();
        SpineDiagram {
            loops,
            arcs,
            wedge,
            crossings: Vec::new(),
        }
    }

    /// Structural match against the standard form, ignoring labels.
    pub fn is_standard_layout(&self) -> bool {
        self.crossings.is_empty()
            && self.loops.iter().all(|l| l.len() == 1)
            && self.arcs.iter().all(|a| a.len() == 1)
            && self.wedge.len() == self.genus()
    }
}

impl fmt::Display for SpineDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spine g={}", self.genus())?;
        for (i, lp) in self.loops.iter().enumerate() {
            write!(f, "loop {}:", i + 1)?;
            for e in lp {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        for (i, arc) in self.arcs.iter().enumerate() {
            write!(f, "arc {}:", i + 1)?;
            for e in arc {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "wedge:")?;
        for e in &self.wedge {
            write!(f, " {e}")?;
        }
        writeln!(f)?;
        write_crossings(f, &self.crossings)
    }
}

fn write_crossings(f: &mut fmt::Formatter<'_>, crossings: &[Crossing]) -> fmt::Result {
    for c in crossings {
        writeln!(
            f,
            "X {} {} {} {} {} over={}",
            c.id, c.slots[0], c.slots[1], c.slots[2], c.slots[3], c.over_in
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Link(LinkDiagram),
    Spine(SpineDiagram),
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Link(d) => d.fmt(f),
            Diagram::Spine(d) => d.fmt(f),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum WritheError {
    #[error("no component {0}")]
    NoSuchComponent(usize),
    #[error("crossing {0} has an inconsistent over marker")]
    BadCrossing(CrossingId),
}
