//! Seeded random generators for quotient graphs, gain-tight graphs (grown by
//! forward construction moves) and well-positioned symmetric frameworks.
//!
//! Everything is driven by a caller-supplied [`rand::Rng`]; [`rng`] builds
//! the deterministic generator used throughout the crate, so corpora are
//! reproducible from a single `u64` seed.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{QuadNorm, SymmetricFramework, Vec2};
use crate::moves::{
    apply_move, k4_plus_parallel_base, two_k3_minus_edge_base, unbalanced_loop_base, K4Target,
    Mode, Move, NewEdge,
};
use crate::quotient::{GainEdge, Sign, SignedQuotientGraph};
use crate::rational::q;

/// The deterministic generator used for all randomized corpora.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Hands out names `{prefix}{k}` that collide neither with the taken set
/// nor with each other (a move needs several fresh ids at once).
struct NameAlloc {
    prefix: &'static str,
    taken: BTreeSet<String>,
    next: usize,
}

impl NameAlloc {
    fn for_edges(q: &SignedQuotientGraph) -> Self {
        NameAlloc {
            prefix: "e",
            taken: q.edges().iter().map(|e| e.id.clone()).collect(),
            next: q.n_edges(),
        }
    }

    fn for_orbits(q: &SignedQuotientGraph) -> Self {
        NameAlloc {
            prefix: "v",
            taken: q.orbits().iter().cloned().collect(),
            next: q.n_orbits(),
        }
    }

    fn next(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// An arbitrary valid signed quotient multigraph: up to `max_orbits` orbits
/// and `max_edges` edges, loops carrying gain −1 and parallel edges distinct
/// gains. Not biased towards tightness — the sparsity fuzz corpus.
pub fn random_quotient(
    rng: &mut impl Rng,
    max_orbits: usize,
    max_edges: usize,
) -> SignedQuotientGraph {
    let n = rng.gen_range(1..=max_orbits.max(1));
    let target = rng.gen_range(0..=max_edges);
    let mut edges: Vec<GainEdge> = Vec::new();
    let mut next_id = 0usize;
    for _ in 0..4 * target {
        if edges.len() >= target {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let gain = if u == v { Sign::Minus } else { random_sign(rng) };
        let pair = (u.min(v), u.max(v));
        let occupied = edges
            .iter()
            .filter(|e| e.pair() == pair)
            .map(|e| e.gain)
            .collect::<Vec<_>>();
        let full = if u == v {
            !occupied.is_empty()
        } else {
            occupied.contains(&gain)
        };
        if full {
            continue;
        }
        edges.push(GainEdge {
            id: format!("e{next_id}"),
            u,
            v,
            gain,
        });
        next_id += 1;
    }
    SignedQuotientGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges)
        .expect("construction respects the multigraph invariants")
}

/// A random gain-tight quotient graph with exactly `target_orbits` orbits,
/// grown from one of `mode`'s base graphs by random forward moves (so
/// tightness holds by move soundness, not by rejection sampling).
///
/// Symmetric mode starts from the unbalanced loop and uses H1a/b/c, H2a/b/c,
/// EdgeToK3 and VertexToK4; anti-symmetric mode starts from a three- or
/// four-orbit base and uses the loopless moves plus K3Join. Requires
/// `target_orbits >= 1` (symmetric) or `>= 3` (anti-symmetric).
pub fn random_gain_tight(
    rng: &mut impl Rng,
    mode: Mode,
    target_orbits: usize,
) -> SignedQuotientGraph {
    let mut q = match mode {
        Mode::Symmetric => {
            assert!(target_orbits >= 1, "symmetric base has one orbit");
            unbalanced_loop_base("v0", "e0")
        }
        Mode::AntiSymmetric => {
            assert!(target_orbits >= 3, "anti-symmetric bases have 3 or 4 orbits");
            if target_orbits >= 4 && rng.gen_bool(0.2) {
                let signing = [
                    random_sign(rng),
                    random_sign(rng),
                    random_sign(rng),
                    random_sign(rng),
                ];
                k4_plus_parallel_base(
                    &std::array::from_fn(|i| format!("v{i}")),
                    &std::array::from_fn(|i| format!("e{i}")),
                    &signing,
                )
            } else {
                two_k3_minus_edge_base(
                    &std::array::from_fn(|i| format!("v{i}")),
                    &std::array::from_fn(|i| format!("e{i}")),
                    random_sign(rng),
                )
            }
        }
    };
    while q.n_orbits() < target_orbits {
        let room = target_orbits - q.n_orbits();
        if let Some(next) = random_growth_move(rng, &q, mode, room) {
            q = next;
        }
    }
    q
}

/// Try one randomly parameterized forward move; `None` if the draw was
/// rejected (caller retries). `room` caps the orbit growth.
fn random_growth_move(
    rng: &mut impl Rng,
    q: &SignedQuotientGraph,
    mode: Mode,
    room: usize,
) -> Option<SignedQuotientGraph> {
    let n = q.n_orbits();
    let mut orbit_names = NameAlloc::for_orbits(q);
    let mut edge_ids = NameAlloc::for_edges(q);
    let mv = match (mode, rng.gen_range(0..10u8)) {
        // H1a needs two distinct attachment orbits.
        (_, 0 | 1) if n >= 2 => {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            Move::H1a {
                new_orbit: orbit_names.next(),
                e1: NewEdge {
                    id: edge_ids.next(),
                    to: q.orbit_name(a).to_string(),
                    gain: random_sign(rng),
                },
                e2: NewEdge {
                    id: edge_ids.next(),
                    to: q.orbit_name(b).to_string(),
                    gain: random_sign(rng),
                },
            }
        }
        (_, 2) => Move::H1b {
            new_orbit: orbit_names.next(),
            to: q.orbit_name(rng.gen_range(0..n)).to_string(),
            plus_id: edge_ids.next(),
            minus_id: edge_ids.next(),
        },
        (Mode::Symmetric, 3) => Move::H1c {
            new_orbit: orbit_names.next(),
            loop_id: edge_ids.next(),
            e: NewEdge {
                id: edge_ids.next(),
                to: q.orbit_name(rng.gen_range(0..n)).to_string(),
                gain: random_sign(rng),
            },
        },
        (_, 4 | 5) => random_h2(rng, q, mode, &mut orbit_names, &mut edge_ids)?,
        (_, 6 | 7) => random_edge_to_k3(rng, q, &mut orbit_names, &mut edge_ids)?,
        (_, 8) if room >= 3 => random_vertex_to_k4(rng, q, &mut orbit_names, &mut edge_ids),
        (Mode::AntiSymmetric, 9) if room >= 3 => Move::K3Join {
            orbits: std::array::from_fn(|_| orbit_names.next()),
            edge_ids: std::array::from_fn(|_| edge_ids.next()),
            ab_gain: random_sign(rng),
            attach_from: rng.gen_range(0..3),
            attach_to: q.orbit_name(rng.gen_range(0..n)).to_string(),
            attach_gain: random_sign(rng),
        },
        _ => return None,
    };
    apply_move(q, &mv).ok()
}

fn random_h2(
    rng: &mut impl Rng,
    q: &SignedQuotientGraph,
    mode: Mode,
    orbit_names: &mut NameAlloc,
    edge_ids: &mut NameAlloc,
) -> Option<Move> {
    let edges = q.edges();
    if edges.is_empty() {
        return None;
    }
    let removed = &edges[rng.gen_range(0..edges.len())];
    let g1 = random_sign(rng);
    let g2 = removed.gain * g1;
    let e1 = NewEdge {
        id: edge_ids.next(),
        to: q.orbit_name(removed.u).to_string(),
        gain: g1,
    };
    let e2 = NewEdge {
        id: edge_ids.next(),
        to: q.orbit_name(removed.v).to_string(),
        gain: g2,
    };
    let z = rng.gen_range(0..q.n_orbits());
    let e3 = NewEdge {
        id: edge_ids.next(),
        to: q.orbit_name(z).to_string(),
        gain: random_sign(rng),
    };
    let new_orbit = orbit_names.next();
    let mv = if removed.is_loop() {
        if mode == Mode::AntiSymmetric {
            return None;
        }
        Move::H2c {
            removed: removed.id.clone(),
            new_orbit,
            e1,
            e2,
            e3,
        }
    } else if z == removed.u || z == removed.v {
        Move::H2b {
            removed: removed.id.clone(),
            new_orbit,
            e1,
            e2,
            e3,
        }
    } else {
        Move::H2a {
            removed: removed.id.clone(),
            new_orbit,
            e1,
            e2,
            e3,
        }
    };
    Some(mv)
}

fn random_edge_to_k3(
    rng: &mut impl Rng,
    q: &SignedQuotientGraph,
    orbit_names: &mut NameAlloc,
    edge_ids: &mut NameAlloc,
) -> Option<Move> {
    let non_loops: Vec<usize> = (0..q.n_edges())
        .filter(|&i| !q.edges()[i].is_loop())
        .collect();
    if non_loops.is_empty() {
        return None;
    }
    let removed = &q.edges()[non_loops[rng.gen_range(0..non_loops.len())]];
    // Split one endpoint of the removed edge.
    let split = if rng.gen_bool(0.5) { removed.u } else { removed.v };
    let reattach = q
        .incident_edges(split)
        .into_iter()
        .filter(|&i| q.edges()[i].id != removed.id)
        .map(|i| (q.edges()[i].id.clone(), rng.gen_range(0..2u8)))
        .collect();
    Some(Move::EdgeToK3 {
        split: q.orbit_name(split).to_string(),
        removed: removed.id.clone(),
        v0: orbit_names.next(),
        v1: orbit_names.next(),
        t01_gain: random_sign(rng),
        t01: edge_ids.next(),
        t0u: edge_ids.next(),
        t1u: edge_ids.next(),
        reattach,
    })
}

fn random_vertex_to_k4(
    rng: &mut impl Rng,
    q: &SignedQuotientGraph,
    orbit_names: &mut NameAlloc,
    edge_ids: &mut NameAlloc,
) -> Move {
    let victim = rng.gen_range(0..q.n_orbits());
    let reattach = q
        .incident_edges(victim)
        .into_iter()
        .map(|i| {
            let e = &q.edges()[i];
            let target = if e.is_loop() {
                let a = rng.gen_range(0..4u8);
                let mut b = rng.gen_range(0..4u8);
                while b == a {
                    b = rng.gen_range(0..4u8);
                }
                K4Target::Internal(a.min(b), a.max(b))
            } else {
                K4Target::Orbit(rng.gen_range(0..4u8))
            };
            (e.id.clone(), target)
        })
        .collect();
    Move::VertexToK4 {
        removed_orbit: q.orbit_name(victim).to_string(),
        k4: std::array::from_fn(|_| orbit_names.next()),
        k4_edge_ids: std::array::from_fn(|_| edge_ids.next()),
        k4_signing: std::array::from_fn(|_| random_sign(rng)),
        reattach,
    }
}

/// Random integer representative points in normalized coordinates: first
/// component nonzero (off the mirror), all points distinct. `span` bounds
/// the coordinates.
pub fn random_normalized_reps(rng: &mut impl Rng, count: usize, span: i64) -> Vec<Vec2> {
    let span = span.max(2);
    let mut reps: Vec<Vec2> = Vec::with_capacity(count);
    while reps.len() < count {
        let mut u1 = rng.gen_range(-span..=span);
        if u1 == 0 {
            u1 = 1;
        }
        let u2 = rng.gen_range(-span..=span);
        let p = Vec2::new(q(u1), q(u2));
        if !reps.contains(&p) {
            reps.push(p);
        }
    }
    reps
}

/// Place a given quotient as a well-positioned symmetric framework: sample
/// integer representatives on a grid that widens with the attempt index,
/// keeping the first placement where construction succeeds and every bar is
/// decisively coloured.
pub fn place_quotient(
    rng: &mut impl Rng,
    norm: &QuadNorm,
    quotient: &SignedQuotientGraph,
    attempts: usize,
) -> Option<SymmetricFramework> {
    for attempt in 0..attempts {
        let span = 4 + 2 * attempt as i64;
        let reps = random_normalized_reps(rng, quotient.n_orbits(), span)
            .iter()
            .map(|u| norm.denormalize(u))
            .collect();
        let Ok(fw) = SymmetricFramework::new(norm.clone(), quotient.clone(), reps) else {
            continue;
        };
        if fw.colour_edges().is_ok() {
            return Some(fw);
        }
    }
    None
}

/// A random well-positioned symmetric framework on an arbitrary quotient.
pub fn random_symmetric_framework(
    rng: &mut impl Rng,
    norm: &QuadNorm,
    max_orbits: usize,
    max_edges: usize,
) -> SymmetricFramework {
    loop {
        let quotient = random_quotient(rng, max_orbits, max_edges);
        if let Some(fw) = place_quotient(rng, norm, &quotient, 32) {
            return fw;
        }
    }
}
