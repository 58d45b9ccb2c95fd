use super::skeleton::{Skeleton, Structure};
use super::{Diagram, EdgeId, LinkDiagram, SpineDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IssueCode {
    Structure,
    NonPlanar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub code: IssueCode,
    pub msg: String,
}

/// Outcome of structural validation. A diagram with issues is
/// rejected by downstream operations; a valid spine may still be
/// flagged as not in normal form, which only restricts what can be
/// done with it.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    /// Total plane regions, when the structure is sound.
    pub faces: Option<usize>,
    /// Edge cycle of each traced face.
    pub face_cycles: Vec<Vec<EdgeId>>,
    /// `v - e + f = 2` per connected piece.
    pub euler_ok: bool,
    /// For spines: arcs and wedge are crossing-free.
    pub normal_form: Option<bool>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

fn report(skel: Result<Skeleton, Vec<Structure>>, normal_form: Option<bool>) -> ValidationReport {
    match skel {
        Err(errors) => ValidationReport {
            issues: errors
                .into_iter()
                .map(|e| Issue {
                    code: IssueCode::Structure,
                    msg: e.to_string(),
                })
                .collect(),
            faces: None,
            face_cycles: Vec::new(),
            euler_ok: false,
            normal_form,
        },
        Ok(skel) => {
            let mut issues = Vec::new();
            let mut euler_ok = true;
            for (comp, v, e, f) in skel.euler_by_component() {
                if v as i64 - e as i64 + f as i64 != 2 {
                    euler_ok = false;
                    issues.push(Issue {
                        code: IssueCode::NonPlanar,
                        msg: format!(
                            "piece {comp}: v - e + f = {} - {} + {} != 2, not a plane diagram",
                            v, e, f
                        ),
                    });
                }
            }
            let face_cycles = skel
                .faces
                .iter()
                .map(|f| f.darts.iter().map(|d| d.edge).collect())
                .collect();
            ValidationReport {
                issues,
                faces: Some(skel.region_count()),
                face_cycles,
                euler_ok,
                normal_form,
            }
        }
    }
}

pub fn validate_link(d: &LinkDiagram) -> ValidationReport {
    report(Skeleton::of_link(d), None)
}

pub fn validate_spine(d: &SpineDiagram) -> ValidationReport {
    report(Skeleton::of_spine(d), Some(d.is_normal_form()))
}

pub fn validate(d: &Diagram) -> ValidationReport {
    match d {
        Diagram::Link(d) => validate_link(d),
        Diagram::Spine(d) => validate_spine(d),
    }
}
