//! 1/n-framed surgery instructions and their blow-down certificates.
//!
//! A band-crossing change or a full twist of a spanning surface is
//! realized by surgery on a small circle encircling the bands
//! involved: slope -1/1 or +1/1 undoes a crossing, slope 1/(-n) adds
//! n full twists. The circles are kept symbolic — site, encircled
//! strands, framing — rather than woven into the planar diagram,
//! because every certificate downstream consumes only linking and
//! framing data. Each circle bounds a disk meeting the diagram in the
//! recorded strands alone, and those strands come in oppositely
//! oriented pairs per band, so its class against every spine loop is
//! zero by construction (asserted at every emission).

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{CrossingId, Owner, Sign, SpineDiagram};

/// A surgery slope, normally `1/n`. The numerator is carried so that
/// corrupted certificates can state slopes like `2/3` and be rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slope {
    pub num: i64,
    pub den: i64,
}

impl Slope {
    pub fn one_over(n: i64) -> Slope {
        Slope { num: 1, den: n }
    }

    /// True for the slopes a blow-down can remove: `1/n`, n nonzero.
    pub fn is_one_over_integer(self) -> bool {
        self.num == 1 && self.den != 0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryKind {
    BandCrossingChange,
    FullTwist,
}

impl fmt::Display for SurgeryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryKind::BandCrossingChange => write!(f, "bcc"),
            SurgeryKind::FullTwist => write!(f, "twist"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryComponent {
    pub id: u32,
    pub kind: SurgeryKind,
    /// The crossing whose sign the component changes, or the crossing
    /// whose band it twists.
    pub site: CrossingId,
    pub framing: Slope,
    /// Strands puncturing the component's disk: (loop index, sign of
    /// the puncture). Always oppositely oriented pairs per band.
    pub strands: Vec<(usize, Sign)>,
    /// Linking record against the spine loops, indexed by loop.
    pub class: Vec<i64>,
}

impl SurgeryComponent {
    fn class_of(strands: &[(usize, Sign)], genus: usize) -> Vec<i64> {
        let mut class = vec![0i64; genus];
        for &(lp, s) in strands {
            class[lp] += s.value();
        }
        class
    }
}

/// An ordered surgery link together with the structural attestation
/// that its components bound pairwise disjoint disks at distinct
/// sites. The attestation is granted at emission time, not recomputed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FramedSurgeryLink {
    pub components: Vec<SurgeryComponent>,
    pub pairwise_unlinked: bool,
}

impl FramedSurgeryLink {
    pub fn empty() -> FramedSurgeryLink {
        FramedSurgeryLink {
            components: Vec::new(),
            pairwise_unlinked: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("no crossing {0} in the working diagram")]
    NoSuchCrossing(CrossingId),
    #[error("crossing {0} involves an arc; exchange it onto the loops first")]
    ArcCrossing(CrossingId),
    #[error("no band at crossing {0} in the current surface")]
    UnknownBand(CrossingId),
    #[error("band at crossing {0} is shared between two loops; twist refused")]
    SharedBand(CrossingId),
    #[error("a full twist needs a nonzero twist count")]
    ZeroTwist,
    #[error("no boundary record for surgery component {0}")]
    MissingRecord(u32),
    #[error(transparent)]
    Edit(#[from] crate::diagram::EditError),
}

/// Working state threaded through the emitters: the diagram being
/// unknotted, the accumulated full-twist counter per band, and the
/// next component id.
#[derive(Debug, Clone)]
pub struct SurgeryState {
    pub diagram: SpineDiagram,
    /// Net full twists applied to the band at each crossing. Flipping
    /// a self-crossing of sign s changes its band's counter by -s.
    pub twists: BTreeMap<CrossingId, i64>,
    next_id: u32,
}

impl SurgeryState {
    pub fn new(diagram: SpineDiagram) -> SurgeryState {
        SurgeryState {
            diagram,
            twists: BTreeMap::new(),
            next_id: 1,
        }
    }

    pub fn twist_of(&self, band: CrossingId) -> i64 {
        self.twists.get(&band).copied().unwrap_or(0)
    }

    fn fresh_id(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    /// The loops carrying a crossing, (under, over), when both strands
    /// are loop strands.
    fn band_loops(&self, id: CrossingId) -> Result<(usize, usize), SurgeryError> {
        let c = self
            .diagram
            .crossing(id)
            .ok_or(SurgeryError::NoSuchCrossing(id))?;
        let under = self.diagram.owner_of(c.under_in());
        let over = self.diagram.owner_of(c.over_in);
        match (under, over) {
            (Some(Owner::Loop(a)), Some(Owner::Loop(b))) => Ok((a, b)),
            _ => Err(SurgeryError::ArcCrossing(id)),
        }
    }
}

/// Flip one crossing between surface bands and emit the surgery
/// circle realizing the flip: it encircles both bands (four strands,
/// oppositely oriented per band) with framing -s/1 for original sign
/// s, written as 1/(-s).
pub fn emit_band_crossing_change(
    state: &mut SurgeryState,
    crossing: CrossingId,
) -> Result<SurgeryComponent, SurgeryError> {
    let (a, b) = state.band_loops(crossing)?;
    let old = state.diagram.flip_crossing(crossing)?;
    if a == b {
        *state.twists.entry(crossing).or_insert(0) -= old.value();
    }
    let strands = vec![
        (a, Sign::Positive),
        (a, Sign::Negative),
        (b, Sign::Positive),
        (b, Sign::Negative),
    ];
    let class = SurgeryComponent::class_of(&strands, state.diagram.genus());
    assert!(class.iter().all(|&v| v == 0), "emitted class must vanish");
    Ok(SurgeryComponent {
        id: state.fresh_id(),
        kind: SurgeryKind::BandCrossingChange,
        site: crossing,
        framing: Slope::one_over(-old.value()),
        strands,
        class,
    })
}

/// Apply `n` full twists to the band at a self-crossing and emit the
/// surgery circle realizing them: it encircles the one band (two
/// opposite strands) with framing 1/(-n).
pub fn emit_full_twist(
    state: &mut SurgeryState,
    band: CrossingId,
    n: i64,
) -> Result<SurgeryComponent, SurgeryError> {
    if n == 0 {
        return Err(SurgeryError::ZeroTwist);
    }
    let (a, b) = state.band_loops(band).map_err(|e| match e {
        SurgeryError::NoSuchCrossing(id) => SurgeryError::UnknownBand(id),
        other => other,
    })?;
    if a != b {
        // The band at an inter-loop crossing belongs to a shared
        // piece, not to a single surface, so "full twist of F_i" has
        // no owner to act on.
        return Err(SurgeryError::SharedBand(band));
    }
    *state.twists.entry(band).or_insert(0) += n;
    let strands = vec![(a, Sign::Positive), (a, Sign::Negative)];
    let class = SurgeryComponent::class_of(&strands, state.diagram.genus());
    assert!(class.iter().all(|&v| v == 0), "emitted class must vanish");
    Ok(SurgeryComponent {
        id: state.fresh_id(),
        kind: SurgeryKind::FullTwist,
        site: band,
        framing: Slope::one_over(-n),
        strands,
        class,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowdownStep {
    pub component: u32,
    pub ok: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowdownCertificate {
    pub steps: Vec<BlowdownStep>,
    pub valid: bool,
}

/// Certify that surgery along the link returns the 3-sphere: blow
/// down one component per step. A step is justified when the
/// component is unknotted by construction (both emitter kinds bound
/// embedded disks), carries a 1/n slope, and the link's
/// pairwise-unlinked attestation is present.
pub fn verify_reflexive(l: &FramedSurgeryLink) -> BlowdownCertificate {
    let mut steps = Vec::new();
    let mut valid = true;
    for c in &l.components {
        let (ok, reason) = if !c.framing.is_one_over_integer() {
            (false, format!("non-1/\u{2124} slope {}", c.framing))
        } else if !l.pairwise_unlinked {
            (false, "missing unlinked attestation".to_string())
        } else {
            (
                true,
                format!("unknotted {} circle, slope {}, unlinked", c.kind, c.framing),
            )
        };
        valid &= ok;
        steps.push(BlowdownStep {
            component: c.id,
            ok,
            reason,
        });
    }
    BlowdownCertificate { steps, valid }
}

/// Meridian intersection counts of one component's surgery torus with
/// the boundary circles of the extended surfaces crossing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRecord {
    pub component: u32,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreLinkData {
    pub per_component: Vec<BoundaryRecord>,
    pub pass: bool,
}

/// Check the core-link condition: after 1/n filling, the meridian of
/// each core circle must meet every extended-surface boundary
/// component on its torus exactly once.
pub fn core_link_check(
    l: &FramedSurgeryLink,
    records: &[BoundaryRecord],
) -> Result<CoreLinkData, SurgeryError> {
    let mut per_component = Vec::new();
    let mut pass = true;
    for c in &l.components {
        let rec = records
            .iter()
            .find(|r| r.component == c.id)
            .ok_or(SurgeryError::MissingRecord(c.id))?;
        pass &= rec.counts.iter().all(|&n| n == 1);
        per_component.push(rec.clone());
    }
    Ok(CoreLinkData {
        per_component,
        pass,
    })
}

/// Boundary records as the emitters' punctured-surface geometry gives
/// them: one boundary circle per distinct loop whose strands puncture
/// the component's disk, met once each.
pub fn punctured_surface_records(l: &FramedSurgeryLink) -> Vec<BoundaryRecord> {
    l.components
        .iter()
        .map(|c| {
            let mut loops: Vec<usize> = c.strands.iter().map(|&(lp, _)| lp).collect();
            loops.sort_unstable();
            loops.dedup();
            BoundaryRecord {
                component: c.id,
                counts: vec![1; loops.len()],
            }
        })
        .collect()
}

/// A meridian disk turned into a genus-t surface by tubing along t
/// core-link passages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TubedSurface {
    pub disk: usize,
    pub tubes: u64,
    pub chi: i64,
    pub genus: u64,
}

/// Tube each meridian disk along its core-link intersections: every
/// tube removes two disks from the surface and glues in an annulus,
/// so χ drops by exactly 2 per tube while the boundary circle stays.
pub fn tube_system(tubes: &[u64]) -> Vec<TubedSurface> {
    tubes
        .iter()
        .enumerate()
        .map(|(i, &t)| TubedSurface {
            disk: i,
            tubes: t,
            chi: 1 - 2 * t as i64,
            genus: t,
        })
        .collect()
}
