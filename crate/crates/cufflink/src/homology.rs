//! Linking numbers and first-homology bookkeeping for links in the
//! complement of a spine.
//!
//! A closed curve in the handlebody exterior is pinned down, up to
//! homology, by how it links the spine loops: the class of a link `L`
//! relative to loops `l_1..l_g` has coordinates `lk(L, l_i)`. Surgery
//! instructions are only safe to blow down when every individual
//! component has the zero class, so the distinction between
//! `is_null_homologous` (the classes cancel in total) and
//! `is_completely_null_homologous` (each one vanishes) matters.

use std::collections::BTreeSet;

use crate::diagram::{CrossingId, EdgeId, LinkDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LinkingError {
    #[error("no component {0} in the diagram")]
    NoSuchComponent(usize),
    #[error("component {0} does not link itself")]
    SelfLinking(usize),
    #[error("crossing {0} has an inconsistent over marker")]
    BadCrossing(CrossingId),
    #[error("odd signed crossing sum between components {0} and {1}")]
    OddParity(usize, usize),
}

/// Half the signed count of crossings between two distinct components.
pub fn linking_number(d: &LinkDiagram, a: usize, b: usize) -> Result<i64, LinkingError> {
    let (ea, eb) = component_edges(d, a, b)?;
    let mut total = 0i64;
    for c in &d.crossings {
        let sign = c.sign().ok_or(LinkingError::BadCrossing(c.id))?;
        let under_a = ea.contains(&c.under_in());
        let under_b = eb.contains(&c.under_in());
        let over_a = ea.contains(&c.over_in);
        let over_b = eb.contains(&c.over_in);
        if (under_a && over_b) || (under_b && over_a) {
            total += sign.value();
        }
    }
    if total.rem_euclid(2) != 0 {
        return Err(LinkingError::OddParity(a, b));
    }
    Ok(total / 2)
}

/// Signed count of the crossings where `a` passes over `b`. Agrees
/// with [`linking_number`] but counts each crossing once instead of
/// halving, which makes it an independent cross-check.
pub fn linking_number_by_overpasses(
    d: &LinkDiagram,
    a: usize,
    b: usize,
) -> Result<i64, LinkingError> {
    let (ea, eb) = component_edges(d, a, b)?;
    let mut total = 0i64;
    for c in &d.crossings {
        let sign = c.sign().ok_or(LinkingError::BadCrossing(c.id))?;
        if ea.contains(&c.over_in) && eb.contains(&c.under_in()) {
            total += sign.value();
        }
    }
    Ok(total)
}

fn component_edges(
    d: &LinkDiagram,
    a: usize,
    b: usize,
) -> Result<(BTreeSet<EdgeId>, BTreeSet<EdgeId>), LinkingError> {
    if a >= d.components.len() {
        return Err(LinkingError::NoSuchComponent(a));
    }
    if b >= d.components.len() {
        return Err(LinkingError::NoSuchComponent(b));
    }
    if a == b {
        return Err(LinkingError::SelfLinking(a));
    }
    let ea = d.components[a].iter().copied().collect();
    let eb = d.components[b].iter().copied().collect();
    Ok((ea, eb))
}

/// Symmetric table of pairwise linking numbers; the diagonal is unused
/// and left at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingTable(pub Vec<Vec<i64>>);

#[allow(clippy::needless_range_loop)] // symmetric fill needs both indices
pub fn linking_table(d: &LinkDiagram) -> Result<LinkingTable, LinkingError> {
    let n = d.components.len();
    let mut t = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let v = linking_number(d, a, b)?;
            t[a][b] = v;
            t[b][a] = v;
        }
    }
    Ok(LinkingTable(t))
}

/// Class of the union of the components `comps` against the loop
/// components `loops`: coordinate `i` is the total linking with
/// `loops[i]`.
pub fn homology_class(
    d: &LinkDiagram,
    comps: &[usize],
    loops: &[usize],
) -> Result<Vec<i64>, LinkingError> {
    let mut class = vec![0i64; loops.len()];
    for (i, &l) in loops.iter().enumerate() {
        for &k in comps {
            class[i] += linking_number(d, k, l)?;
        }
    }
    Ok(class)
}

pub fn is_null_homologous(
    d: &LinkDiagram,
    comps: &[usize],
    loops: &[usize],
) -> Result<bool, LinkingError> {
    Ok(homology_class(d, comps, loops)?.iter().all(|&v| v == 0))
}

/// True when every single component already has the zero class, not
/// just their union.
pub fn is_completely_null_homologous(
    d: &LinkDiagram,
    comps: &[usize],
    loops: &[usize],
) -> Result<bool, LinkingError> {
    for &k in comps {
        if !is_null_homologous(d, &[k], loops)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub type IntersectionMatrix = Vec<Vec<u64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("curve index {0} out of range for genus {1}")]
    CurveIndex(usize, usize),
}

/// Tally recorded meetings of dual curves with spine loops and test
/// the duality pattern: curve `i` meets loop `j` exactly `δ_ij` times.
/// Entries are plain counts, so an extra pair of meetings fails even
/// if their signs would cancel.
pub fn intersection_delta(
    g: usize,
    recorded: &[(usize, usize)],
) -> Result<(IntersectionMatrix, bool), DeltaError> {
    let mut m = vec![vec![0u64; g]; g];
    for &(i, j) in recorded {
        if i >= g {
            return Err(DeltaError::CurveIndex(i, g));
        }
        if j >= g {
            return Err(DeltaError::CurveIndex(j, g));
        }
        m[i][j] += 1;
    }
    let pass = (0..g).all(|i| (0..g).all(|j| m[i][j] == u64::from(i == j)));
    Ok((m, pass))
}
