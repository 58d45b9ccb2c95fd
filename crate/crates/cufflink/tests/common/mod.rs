//! Shared machinery for the integration suites: seeded diagram
//! generators, an independent smoothing-circle count, a bounded
//! exhaustive Reidemeister search, and the small-spine enumeration.

#![allow(dead_code)] // each suite uses its own subset

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cufflink::diagram::{
    apply_reidemeister, apply_reidemeister_spine, bigon_sites, bigon_sites_spine,
    face_dart_pairs, face_dart_pairs_spine, kink_sites, kink_sites_spine, triangle_sites,
    triangle_sites_spine, validate_spine, Crossing, CrossingId, EdgeId, LinkDiagram,
    ReidemeisterMove, Sign, SpineDiagram,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn edges_of(d: &LinkDiagram) -> Vec<EdgeId> {
    d.components.iter().flatten().copied().collect()
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Grow a valid diagram from an unlink by random moves until it has
/// at least `target` crossings (or growth stalls).
pub fn random_link(rng: &mut ChaCha8Rng, components: usize, target: usize) -> LinkDiagram {
    let mut d = LinkDiagram::unlink(components);
    let mut stall = 0;
    while d.crossings.len() < target && stall < 60 {
        let room = target - d.crossings.len();
        let mv = match rng.gen_range(0..4) {
            0 => edges_of(&d).choose(rng).map(|&edge| ReidemeisterMove::R1Insert {
                edge,
                sign: random_sign(rng),
            }),
            1 | 2 if room >= 2 => face_dart_pairs(&d)
                .choose(rng)
                .map(|&(over, under)| ReidemeisterMove::R2Insert { over, under }),
            1 | 2 => None,
            _ => triangle_sites(&d)
                .choose(rng)
                .map(|&at| ReidemeisterMove::R3 { at }),
        };
        match mv.and_then(|mv| apply_reidemeister(&d, &mv).ok()) {
            Some(next) => {
                stall = if next.crossings.len() > d.crossings.len() { 0 } else { stall + 1 };
                d = next;
            }
            None => stall += 1,
        }
    }
    d
}

/// One random move of any kind, keeping the crossing count at or
/// under `cap`. Returns the move applied.
pub fn random_move(
    rng: &mut ChaCha8Rng,
    d: &LinkDiagram,
    cap: usize,
) -> Option<(ReidemeisterMove, LinkDiagram)> {
    let mut kinds = [0usize, 1, 2, 3, 4];
    kinds.shuffle(rng);
    for kind in kinds {
        let mv = match kind {
            0 if d.crossings.len() < cap => {
                edges_of(d).choose(rng).map(|&edge| ReidemeisterMove::R1Insert {
                    edge,
                    sign: random_sign(rng),
                })
            }
            1 if d.crossings.len() + 2 <= cap => face_dart_pairs(d)
                .choose(rng)
                .map(|&(over, under)| ReidemeisterMove::R2Insert { over, under }),
            2 => triangle_sites(d).choose(rng).map(|&at| ReidemeisterMove::R3 { at }),
            3 => kink_sites(d)
                .choose(rng)
                .map(|&crossing| ReidemeisterMove::R1Remove { crossing }),
            4 => bigon_sites(d).choose(rng).map(|&at| ReidemeisterMove::R2Remove { at }),
            _ => None,
        };
        if let Some(mv) = mv {
            if let Ok(next) = apply_reidemeister(d, &mv) {
                return Some((mv, next));
            }
        }
    }
    None
}

/// Scramble a spine by random moves; the result stays valid.
pub fn random_spine(rng: &mut ChaCha8Rng, seed: &SpineDiagram, steps: usize) -> SpineDiagram {
    let mut d = seed.clone();
    for _ in 0..steps {
        let mut all_edges: Vec<EdgeId> = d.loops.iter().flatten().copied().collect();
        all_edges.extend(d.arcs.iter().flatten().copied());
        let mv = match rng.gen_range(0..5) {
            0 => all_edges.choose(rng).map(|&edge| ReidemeisterMove::R1Insert {
                edge,
                sign: random_sign(rng),
            }),
            1 | 2 => face_dart_pairs_spine(&d)
                .choose(rng)
                .map(|&(over, under)| ReidemeisterMove::R2Insert { over, under }),
            3 => triangle_sites_spine(&d)
                .choose(rng)
                .map(|&at| ReidemeisterMove::R3 { at }),
            _ => {
                let mut removals: Vec<ReidemeisterMove> = kink_sites_spine(&d)
                    .into_iter()
                    .map(|crossing| ReidemeisterMove::R1Remove { crossing })
                    .collect();
                removals.extend(
                    bigon_sites_spine(&d)
                        .into_iter()
                        .map(|at| ReidemeisterMove::R2Remove { at }),
                );
                removals.choose(rng).copied()
            }
        };
        if let Some(next) = mv.and_then(|mv| apply_reidemeister_spine(&d, &mv).ok()) {
            d = next;
        }
    }
    d
}

/// Count the circles of the orientation-respecting smoothing without
/// the surface builder: the smoothing always reconnects under-in to
/// over-out and over-in to under-out, so the circles are the orbits
/// of that successor map.
pub fn independent_circle_count(d: &LinkDiagram) -> usize {
    let mut next: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for comp in &d.components {
        for (i, &e) in comp.iter().enumerate() {
            next.insert(e, comp[(i + 1) % comp.len()]);
        }
    }
    for c in &d.crossings {
        next.insert(c.under_in(), c.over_out().expect("consistent crossing"));
        next.insert(c.over_in, c.under_out());
    }
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut circles = 0;
    for &start in next.keys() {
        if seen.contains(&start) {
            continue;
        }
        circles += 1;
        let mut cur = start;
        while seen.insert(cur) {
            cur = next[&cur];
        }
    }
    circles
}

/// Deterministic key invariant under edge renaming: renumber edges in
/// listing order, then renumber crossings in under-in order.
fn canonical_key(d: &LinkDiagram) -> String {
    let mut map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut fresh = 0u32;
    let components: Vec<Vec<EdgeId>> = d
        .components
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&e| {
                    *map.entry(e).or_insert_with(|| {
                        fresh += 1;
                        EdgeId(fresh)
                    })
                })
                .collect()
        })
        .collect();
    let mut crossings: Vec<Crossing> = d
        .crossings
        .iter()
        .map(|c| Crossing {
            id: c.id,
            slots: c.slots.map(|e| map[&e]),
            over_in: map[&c.over_in],
        })
        .collect();
    crossings.sort_by_key(|c| c.under_in());
    for (i, c) in crossings.iter_mut().enumerate() {
        c.id = CrossingId(i as u32 + 1);
    }
    LinkDiagram { components, crossings }.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchVerdict {
    SplitTrivial,
    NotSplitTrivial,
    Inconclusive,
}

fn monotone_reduce(start: &LinkDiagram) -> LinkDiagram {
    let mut d = start.clone();
    loop {
        let mv = kink_sites(&d)
            .first()
            .map(|&crossing| ReidemeisterMove::R1Remove { crossing })
            .or_else(|| bigon_sites(&d).first().map(|&at| ReidemeisterMove::R2Remove { at }));
        match mv.and_then(|mv| apply_reidemeister(&d, &mv).ok()) {
            Some(next) => d = next,
            None => return d,
        }
    }
}

/// Exhaustive breadth-first Reidemeister search for a crossing-free
/// diagram, allowing the crossing count to rise `extra` above the
/// start. Every link diagram of a split trivial link reaches zero
/// crossings; a knotted or linked one exhausts the bounded space.
pub fn search_split_trivial(start: &LinkDiagram, extra: usize, node_cap: usize) -> SearchVerdict {
    // Fast path: plain kink and bigon removal settles most inputs.
    let reduced = monotone_reduce(start);
    if reduced.crossings.is_empty() {
        return SearchVerdict::SplitTrivial;
    }

    let cap = start.crossings.len() + extra;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_key(&reduced));
    queue.push_back(reduced);
    while let Some(d) = queue.pop_front() {
        if d.crossings.is_empty() {
            return SearchVerdict::SplitTrivial;
        }
        let mut moves: Vec<ReidemeisterMove> = Vec::new();
        for crossing in kink_sites(&d) {
            moves.push(ReidemeisterMove::R1Remove { crossing });
        }
        for at in bigon_sites(&d) {
            moves.push(ReidemeisterMove::R2Remove { at });
        }
        for at in triangle_sites(&d) {
            moves.push(ReidemeisterMove::R3 { at });
        }
        if d.crossings.len() + 2 <= cap {
            for (over, under) in face_dart_pairs(&d) {
                moves.push(ReidemeisterMove::R2Insert { over, under });
            }
        }
        for mv in moves {
            if let Ok(next) = apply_reidemeister(&d, &mv) {
                if seen.len() >= node_cap {
                    return SearchVerdict::Inconclusive;
                }
                if seen.insert(canonical_key(&next)) {
                    queue.push_back(next);
                }
            }
        }
    }
    SearchVerdict::NotSplitTrivial
}

/// All unordered pairings of `0..n` (n even), as index pairs.
fn pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    let items: Vec<usize> = (0..n).collect();
    pairings_of(&items)
}

fn pairings_of(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let mate = items[i];
        let remaining: Vec<usize> = items[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in pairings_of(&remaining) {
            let mut p = vec![(first, mate)];
            p.append(&mut tail);
            out.push(p);
        }
    }
    out
}

/// Compositions of `total` into `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut tail in compositions(total - head, parts - 1) {
            let mut v = vec![head];
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in permutations(n - 1) {
        for slot in 0..n {
            let mut p: Vec<usize> = tail.iter().map(|&v| v + 1).collect();
            p.insert(slot, 0);
            out.push(p);
        }
    }
    out
}

/// Every valid spine diagram of the given genus with exactly
/// `crossings` crossings, up to edge renaming: enumerate the crossing
/// passages positionally over the loop and arc traversals, realize
/// each role and sign assignment and each wedge rotation, and keep
/// what the validator accepts.
pub fn enumerate_spines(genus: usize, crossings: usize) -> Vec<SpineDiagram> {
    let visits = 2 * crossings;
    let lists = 2 * genus; // loops then arcs
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();

    // Wedge lists are rotations of one cyclic order; fixing arc 1
    // first enumerates each order once.
    let wedge_orders: Vec<Vec<usize>> = permutations(genus.saturating_sub(1))
        .into_iter()
        .map(|p| {
            let mut w = vec![0];
            w.extend(p.into_iter().map(|v| v + 1));
            w
        })
        .collect();

    for comp in compositions(visits, lists) {
        // Positions are dealt to the lists in order.
        let owner_of_pos: Vec<usize> = comp
            .iter()
            .enumerate()
            .flat_map(|(li, &n)| std::iter::repeat_n(li, n))
            .collect();
        'pairing: for pairing in pairings(visits) {
            // Two closed curves cross each other evenly; arcs are open
            // and exempt.
            let mut loop_pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &(p, q) in &pairing {
                let (a, b) = (owner_of_pos[p], owner_of_pos[q]);
                if a != b && a < genus && b < genus {
                    *loop_pair_count.entry((a.min(b), a.max(b))).or_default() += 1;
                }
            }
            if loop_pair_count.values().any(|&n| n % 2 == 1) {
                continue 'pairing;
            }

            for roles in 0..1u32 << crossings {
                for signs in 0..1u32 << crossings {
                    for wedge_order in &wedge_orders {
                        let sp = realize(genus, &comp, &pairing, roles, signs, wedge_order);
                        if validate_spine(&sp).ok() && seen.insert(sp.to_string()) {
                            out.push(sp);
                        }
                    }
                }
            }
        }
    }
    out
}

fn realize(
    genus: usize,
    comp: &[usize],
    pairing: &[(usize, usize)],
    roles: u32,
    signs: u32,
    wedge_order: &[usize],
) -> SpineDiagram {
    // Edge runs: list with n visits has n + 1 edges, numbered fresh
    // across loops then arcs.
    let mut next_edge = 0u32;
    let mut runs: Vec<Vec<EdgeId>> = Vec::with_capacity(comp.len());
    for &n in comp {
        runs.push(
            (0..=n as u32)
                .map(|k| EdgeId(next_edge + k + 1))
                .collect(),
        );
        next_edge += n as u32 + 1;
    }
    // Visit position -> (in edge, out edge).
    let mut pos_edges = Vec::with_capacity(pairing.len() * 2);
    for (li, &n) in comp.iter().enumerate() {
        for k in 0..n {
            pos_edges.push((runs[li][k], runs[li][k + 1]));
        }
    }
    let mut crossings = Vec::with_capacity(pairing.len());
    for (ci, &(p, q)) in pairing.iter().enumerate() {
        let (under, over) = if roles >> ci & 1 == 0 { (p, q) } else { (q, p) };
        let sign = if signs >> ci & 1 == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        crossings.push(Crossing::from_strands(
            CrossingId(ci as u32 + 1),
            pos_edges[under],
            pos_edges[over],
            sign,
        ));
    }
    // A list with n visits has n + 1 edges: the run's last edge ends
    // at the attachment vertex (loops) or the wedge (arcs).
    let loops: Vec<Vec<EdgeId>> = runs[..genus].to_vec();
    let arcs: Vec<Vec<EdgeId>> = runs[genus..].to_vec();
    let wedge: Vec<EdgeId> = wedge_order
        .iter()
        .map(|&a| *arcs[a].last().unwrap())
        .collect();
    SpineDiagram {
        loops,
        arcs,
        wedge,
        crossings,
    }
}
