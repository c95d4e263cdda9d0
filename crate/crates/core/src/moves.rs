//! Construction moves on gain-tight quotient graphs.
//!
//! Every `(2,2,1)`-gain-tight graph is reachable from a single unbalanced
//! loop by moves that each add orbits while preserving tightness; in the
//! loopless (anti-symmetric) setting the base is the three-orbit graph
//! `two-triangles-minus-an-edge` and two joining moves enter the move set.
//! This module implements the forward moves, searches for inverse moves by
//! *generate and verify* (build the candidate predecessor, re-apply the move,
//! compare with the input up to switching isomorphism), and extracts full
//! construction sequences by depth-first reduction.
//!
//! Moves:
//!
//! * `H1a`/`H1b`/`H1c` — add a new orbit of quotient degree two: two edges to
//!   distinct orbits, a parallel pair with distinct gains, or a loop plus an
//!   edge.
//! * `H2a`/`H2b`/`H2c` — remove an edge, add a new orbit subdividing it (the
//!   two replacement gains multiply to the removed gain) plus a third edge;
//!   the variants record whether the third edge goes elsewhere, doubles up a
//!   subdivision edge, or whether a loop was subdivided into a parallel pair.
//! * `EdgeToK3` — split an orbit along an incident trivial-gain edge into
//!   two orbits joined in a trivial triangle with the old neighbour.
//! * `VertexToK4` — blow an orbit up into a trivial-gain complete graph on
//!   four orbits, redistributing its edges; a fixed-edge loop may return as
//!   a loop on, or a negative edge inside, the new quadruple.
//! * `K3Join` — attach a fresh copy of the loopless base graph by a single
//!   edge (anti-symmetric setting only).
//! * `GraphJoin` — attach any gain-tight loopless graph by a single edge, a
//!   generalization accepted on replay but never produced by extraction.

use crate::quotient::{GainEdge, QuotientError, Sign, SignedQuotientGraph};
use crate::sparsity::{is_gain_tight, SparsityError, SparsityVariant};
use thiserror::Error;

/// Largest orbit count for switching-isomorphism searches (permutations of
/// orbits are enumerated).
pub const MAX_ISO_ORBITS: usize = 8;

/// Which construction theory a sequence lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Loops allowed; base graph is a single unbalanced loop; no joins.
    Symmetric,
    /// Loopless; base graph is `two-triangles-minus-an-edge`; joins allowed.
    AntiSymmetric,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symmetric => "symmetric",
            Mode::AntiSymmetric => "anti-symmetric",
        }
    }
}

/// An edge from a newly added orbit to an existing one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewEdge {
    pub id: String,
    pub to: String,
    pub gain: Sign,
}

/// Where a redistributed edge of a `VertexToK4` move lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K4Target {
    /// Endpoint moves to the `i`-th new orbit; a loop becomes a loop there.
    Orbit(u8),
    /// A loop becomes a negative edge between two of the new orbits.
    Internal(u8, u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    H1a {
        new_orbit: String,
        e1: NewEdge,
        e2: NewEdge,
    },
    H1b {
        new_orbit: String,
        to: String,
        plus_id: String,
        minus_id: String,
    },
    H1c {
        new_orbit: String,
        loop_id: String,
        e: NewEdge,
    },
    H2a {
        removed: String,
        new_orbit: String,
        e1: NewEdge,
        e2: NewEdge,
        e3: NewEdge,
    },
    H2b {
        removed: String,
        new_orbit: String,
        e1: NewEdge,
        e2: NewEdge,
        e3: NewEdge,
    },
    H2c {
        removed: String,
        new_orbit: String,
        e1: NewEdge,
        e2: NewEdge,
        e3: NewEdge,
    },
    EdgeToK3 {
        /// Orbit being split (removed).
        split: String,
        /// The edge at `split` replaced by the triangle; its gain is read
        /// from the graph.
        removed: String,
        v0: String,
        v1: String,
        /// Gain of the `v0-v1` triangle edge. The canonical move has
        /// trivial gain; a negative gain is its switching at `v1`, so edges
        /// redistributed to `v1` have their gains multiplied by it.
        t01_gain: Sign,
        /// Ids of the triangle edges `v0-v1`, `v0-u`, `v1-u`; their gains
        /// are `t01_gain`, the removed gain, and the product.
        t01: String,
        t0u: String,
        t1u: String,
        /// Other edges at `split`: id and whether they move to `v1`.
        reattach: Vec<(String, u8)>,
    },
    VertexToK4 {
        removed_orbit: String,
        k4: [String; 4],
        /// Ids of the six new edges, pair order
        /// `(0,1),(0,2),(0,3),(1,2),(1,3),(2,3)`.
        k4_edge_ids: [String; 6],
        /// Signing of the new orbits; edge `(i,j)` gets gain `s_i * s_j`
        /// and an edge redistributed to orbit `i` has its gain multiplied
        /// by `s_i`. All-trivial gives the canonical move; anything else is
        /// one of its switchings.
        k4_signing: [Sign; 4],
        /// Every edge at the removed orbit: id and destination.
        reattach: Vec<(String, K4Target)>,
    },
    K3Join {
        /// Names of the fresh base-copy orbits, role order `a, b, c` (the
        /// single edge joins `a` and `b`).
        orbits: [String; 3],
        /// Ids `ab, bc+, bc-, ac+, ac-, join`.
        edge_ids: [String; 6],
        /// Gain of the single `a-b` edge (trivial in the canonical piece;
        /// negative in its switchings).
        ab_gain: Sign,
        /// Which fresh orbit carries the join edge (0..3).
        attach_from: u8,
        attach_to: String,
        attach_gain: Sign,
    },
    GraphJoin {
        piece_orbits: Vec<String>,
        /// Edges of the attached piece: `(id, u, v, gain)` over piece names.
        piece_edges: Vec<(String, String, String, Sign)>,
        join_id: String,
        join_from: String,
        join_to: String,
        join_gain: Sign,
    },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::H1a { .. } => "H1a",
            Move::H1b { .. } => "H1b",
            Move::H1c { .. } => "H1c",
            Move::H2a { .. } => "H2a",
            Move::H2b { .. } => "H2b",
            Move::H2c { .. } => "H2c",
            Move::EdgeToK3 { .. } => "EdgeToK3",
            Move::VertexToK4 { .. } => "VertexToK4",
            Move::K3Join { .. } => "K3Join",
            Move::GraphJoin { .. } => "GraphJoin",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("orbit name {0:?} is already taken")]
    OrbitNameTaken(String),
    #[error("edge id {0:?} is already taken")]
    EdgeIdTaken(String),
    #[error("unknown orbit {0:?}")]
    UnknownOrbit(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edge {edge:?} does not have the endpoints the move requires")]
    EndpointMismatch { edge: String },
    #[error("subdivision gains must multiply to the removed gain")]
    GainProductMismatch,
    #[error("move {move_name} does not match the referenced edges ({detail})")]
    WrongMoveKind {
        move_name: &'static str,
        detail: String,
    },
    #[error("redistribution must list each edge at the removed orbit exactly once ({0})")]
    ReattachMismatch(String),
    #[error("index {0} is out of range for the new orbits")]
    BadTargetIndex(u8),
    #[error("resulting graph is invalid: {0}")]
    Invalid(#[from] QuotientError),
    #[error(transparent)]
    Sparsity(#[from] SparsityError),
    #[error("graph after step {step} is not gain-tight")]
    NotTight { step: usize },
    #[error("graph after step {step} has a loop, which the anti-symmetric theory forbids")]
    NotLoopless { step: usize },
    #[error("{mode} sequences do not admit the move {move_name}")]
    ModeExcludesMove {
        mode: &'static str,
        move_name: &'static str,
    },
    #[error("isomorphism search supports at most {max} orbits, got {found}")]
    TooManyOrbitsForIso { found: usize, max: usize },
    #[error("no construction sequence found; the graph is not reachable by the move set")]
    NoConstruction,
    #[error("the graph does not reduce to the {0} base graph")]
    BaseMismatch(&'static str),
    #[error("the attached piece must itself be gain-tight and loopless")]
    BadPiece,
    #[error("enumeration supports at most {max} orbits, got {found}")]
    EnumerationTooLarge { found: usize, max: usize },
}

/// Name-addressed edge used while performing surgery.
#[derive(Clone, Debug)]
struct NamedEdge {
    id: String,
    u: String,
    v: String,
    gain: Sign,
}

fn to_named(q: &SignedQuotientGraph) -> (Vec<String>, Vec<NamedEdge>) {
    let orbits = q.orbits().to_vec();
    let edges = q
        .edges()
        .iter()
        .map(|e| NamedEdge {
            id: e.id.clone(),
            u: orbits[e.u].clone(),
            v: orbits[e.v].clone(),
            gain: e.gain,
        })
        .collect();
    (orbits, edges)
}

fn from_named(
    orbits: Vec<String>,
    edges: Vec<NamedEdge>,
) -> Result<SignedQuotientGraph, MoveError> {
    let index = |name: &str| -> Result<usize, MoveError> {
        orbits
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| MoveError::UnknownOrbit(name.to_string()))
    };
    let mut gain_edges = Vec::with_capacity(edges.len());
    for e in &edges {
        gain_edges.push(GainEdge {
            id: e.id.clone(),
            u: index(&e.u)?,
            v: index(&e.v)?,
            gain: e.gain,
        });
    }
    Ok(SignedQuotientGraph::new(orbits, gain_edges)?)
}

fn ensure_fresh_orbit(q: &SignedQuotientGraph, name: &str) -> Result<(), MoveError> {
    if q.orbits().iter().any(|o| o == name) {
        Err(MoveError::OrbitNameTaken(name.to_string()))
    } else {
        Ok(())
    }
}

fn ensure_fresh_edge(q: &SignedQuotientGraph, id: &str) -> Result<(), MoveError> {
    if q.edges().iter().any(|e| e.id == id) {
        Err(MoveError::EdgeIdTaken(id.to_string()))
    } else {
        Ok(())
    }
}

fn ensure_orbit(q: &SignedQuotientGraph, name: &str) -> Result<(), MoveError> {
    q.orbit_index(name)
        .map(|_| ())
        .map_err(|_| MoveError::UnknownOrbit(name.to_string()))
}

/// Apply one move. Side conditions are validated; gain-tightness of the
/// result is the caller's concern (see [`replay`]).
pub fn apply_move(q: &SignedQuotientGraph, mv: &Move) -> Result<SignedQuotientGraph, MoveError> {
    match mv {
        Move::H1a { new_orbit, e1, e2 } => {
            ensure_fresh_orbit(q, new_orbit)?;
            for e in [e1, e2] {
                ensure_fresh_edge(q, &e.id)?;
                ensure_orbit(q, &e.to)?;
            }
            if e1.to == e2.to {
                return Err(MoveError::WrongMoveKind {
                    move_name: "H1a",
                    detail: "both edges lead to the same orbit; use H1b".into(),
                });
            }
            let (mut orbits, mut edges) = to_named(q);
            orbits.push(new_orbit.clone());
            for e in [e1, e2] {
                edges.push(NamedEdge {
                    id: e.id.clone(),
                    u: new_orbit.clone(),
                    v: e.to.clone(),
                    gain: e.gain,
                });
            }
            from_named(orbits, edges)
        }
        Move::H1b {
            new_orbit,
            to,
            plus_id,
            minus_id,
        } => {
            ensure_fresh_orbit(q, new_orbit)?;
            ensure_fresh_edge(q, plus_id)?;
            ensure_fresh_edge(q, minus_id)?;
            ensure_orbit(q, to)?;
            let (mut orbits, mut edges) = to_named(q);
            orbits.push(new_orbit.clone());
            for (id, gain) in [(plus_id, Sign::Plus), (minus_id, Sign::Minus)] {
                edges.push(NamedEdge {
                    id: id.clone(),
                    u: new_orbit.clone(),
                    v: to.clone(),
                    gain,
                });
            }
            from_named(orbits, edges)
        }
        Move::H1c {
            new_orbit,
            loop_id,
            e,
        } => {
            ensure_fresh_orbit(q, new_orbit)?;
            ensure_fresh_edge(q, loop_id)?;
            ensure_fresh_edge(q, &e.id)?;
            ensure_orbit(q, &e.to)?;
            let (mut orbits, mut edges) = to_named(q);
            orbits.push(new_orbit.clone());
            edges.push(NamedEdge {
                id: loop_id.clone(),
                u: new_orbit.clone(),
                v: new_orbit.clone(),
                gain: Sign::Minus,
            });
            edges.push(NamedEdge {
                id: e.id.clone(),
                u: new_orbit.clone(),
                v: e.to.clone(),
                gain: e.gain,
            });
            from_named(orbits, edges)
        }
        Move::H2a {
            removed,
            new_orbit,
            e1,
            e2,
            e3,
        } => apply_h2(q, "H2a", removed, new_orbit, e1, e2, e3),
        Move::H2b {
            removed,
            new_orbit,
            e1,
            e2,
            e3,
        } => apply_h2(q, "H2b", removed, new_orbit, e1, e2, e3),
        Move::H2c {
            removed,
            new_orbit,
            e1,
            e2,
            e3,
        } => apply_h2(q, "H2c", removed, new_orbit, e1, e2, e3),
        Move::EdgeToK3 {
            split,
            removed,
            v0,
            v1,
            t01_gain,
            t01,
            t0u,
            t1u,
            reattach,
        } => {
            ensure_orbit(q, split)?;
            let removed_idx = q
                .edge_index(removed)
                .map_err(|_| MoveError::UnknownEdge(removed.clone()))?;
            let old = &q.edges()[removed_idx];
            if old.is_loop() {
                return Err(MoveError::WrongMoveKind {
                    move_name: "EdgeToK3",
                    detail: "a loop cannot be split".into(),
                });
            }
            let psi = old.gain;
            let split_idx = q.orbit_index(split).unwrap();
            if old.u != split_idx && old.v != split_idx {
                return Err(MoveError::EndpointMismatch {
                    edge: removed.clone(),
                });
            }
            let u_name = q.orbit_name(old.other(split_idx)).to_string();
            for name in [v0, v1] {
                ensure_fresh_orbit(q, name)?;
            }
            if v0 == v1 {
                return Err(MoveError::OrbitNameTaken(v1.clone()));
            }
            for id in [t01, t0u, t1u] {
                ensure_fresh_edge(q, id)?;
            }
            // Every other edge at `split` must be redistributed exactly once.
            let incident: Vec<usize> = q
                .incident_edges(split_idx)
                .into_iter()
                .filter(|&i| i != removed_idx)
                .collect();
            check_reattach_cover(
                q,
                &incident,
                reattach.iter().map(|(id, _)| id.as_str()),
            )?;
            let (orbits, edges) = to_named(q);
            let mut new_orbits: Vec<String> =
                orbits.into_iter().filter(|o| o != split).collect();
            new_orbits.push(v0.clone());
            new_orbits.push(v1.clone());
            let mut new_edges = Vec::new();
            for e in edges {
                if e.id == *removed {
                    continue;
                }
                if e.u == *split || e.v == *split {
                    let target = reattach
                        .iter()
                        .find(|(id, _)| *id == e.id)
                        .map(|&(_, t)| t)
                        .unwrap();
                    if target > 1 {
                        return Err(MoveError::BadTargetIndex(target));
                    }
                    let new_name = if target == 0 { v0 } else { v1 };
                    let mut e = e;
                    let is_loop = e.u == e.v;
                    if e.u == *split {
                        e.u = new_name.clone();
                    }
                    if e.v == *split {
                        e.v = new_name.clone();
                    }
                    // Moving to the switched side multiplies non-loop gains
                    // by the switch; loops are untouched by switching.
                    if target == 1 && !is_loop {
                        e.gain = e.gain * *t01_gain;
                    }
                    new_edges.push(e);
                } else {
                    new_edges.push(e);
                }
            }
            for (id, a, b, gain) in [
                (t01, v0.clone(), v1.clone(), *t01_gain),
                (t0u, v0.clone(), u_name.clone(), psi),
                (t1u, v1.clone(), u_name.clone(), *t01_gain * psi),
            ] {
                new_edges.push(NamedEdge {
                    id: id.clone(),
                    u: a,
                    v: b,
                    gain,
                });
            }
            from_named(new_orbits, new_edges)
        }
        Move::VertexToK4 {
            removed_orbit,
            k4,
            k4_edge_ids,
            k4_signing,
            reattach,
        } => {
            ensure_orbit(q, removed_orbit)?;
            for name in k4 {
                ensure_fresh_orbit(q, name)?;
            }
            if k4.iter().collect::<std::collections::BTreeSet<_>>().len() != 4 {
                return Err(MoveError::OrbitNameTaken(k4[0].clone()));
            }
            for id in k4_edge_ids {
                ensure_fresh_edge(q, id)?;
            }
            let removed_idx = q.orbit_index(removed_orbit).unwrap();
            let incident = q.incident_edges(removed_idx);
            check_reattach_cover(
                q,
                &incident,
                reattach.iter().map(|(id, _)| id.as_str()),
            )?;
            let (orbits, edges) = to_named(q);
            let mut new_orbits: Vec<String> =
                orbits.into_iter().filter(|o| o != removed_orbit).collect();
            new_orbits.extend(k4.iter().cloned());
            let mut new_edges = Vec::new();
            for e in edges {
                if e.u != *removed_orbit && e.v != *removed_orbit {
                    new_edges.push(e);
                    continue;
                }
                let target = reattach
                    .iter()
                    .find(|(id, _)| *id == e.id)
                    .map(|&(_, t)| t)
                    .unwrap();
                let is_loop = e.u == e.v;
                match target {
                    K4Target::Orbit(i) => {
                        let i = usize::from(i);
                        if i >= 4 {
                            return Err(MoveError::BadTargetIndex(i as u8));
                        }
                        let mut e = e;
                        if e.u == *removed_orbit {
                            e.u = k4[i].clone();
                        }
                        if e.v == *removed_orbit {
                            e.v = k4[i].clone();
                        }
                        // Landing on a negatively signed new orbit flips
                        // non-loop gains; loops are untouched by switching.
                        if !is_loop {
                            e.gain = e.gain * k4_signing[i];
                        }
                        new_edges.push(e);
                    }
                    K4Target::Internal(i, j) => {
                        if !is_loop {
                            return Err(MoveError::WrongMoveKind {
                                move_name: "VertexToK4",
                                detail: format!(
                                    "edge {:?} is not a loop and cannot become internal",
                                    e.id
                                ),
                            });
                        }
                        if i >= 4 || j >= 4 || i == j {
                            return Err(MoveError::BadTargetIndex(j));
                        }
                        let (i, j) = (usize::from(i), usize::from(j));
                        new_edges.push(NamedEdge {
                            id: e.id,
                            u: k4[i].clone(),
                            v: k4[j].clone(),
                            gain: Sign::Minus * k4_signing[i] * k4_signing[j],
                        });
                    }
                }
            }
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for (id, &(i, j)) in k4_edge_ids.iter().zip(&pairs) {
                new_edges.push(NamedEdge {
                    id: id.clone(),
                    u: k4[i].clone(),
                    v: k4[j].clone(),
                    gain: k4_signing[i] * k4_signing[j],
                });
            }
            from_named(new_orbits, new_edges)
        }
        Move::K3Join {
            orbits,
            edge_ids,
            ab_gain,
            attach_from,
            attach_to,
            attach_gain,
        } => {
            for name in orbits {
                ensure_fresh_orbit(q, name)?;
            }
            if orbits
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len()
                != 3
            {
                return Err(MoveError::OrbitNameTaken(orbits[0].clone()));
            }
            for id in edge_ids {
                ensure_fresh_edge(q, id)?;
            }
            ensure_orbit(q, attach_to)?;
            if *attach_from > 2 {
                return Err(MoveError::BadTargetIndex(*attach_from));
            }
            let (mut all_orbits, mut edges) = to_named(q);
            all_orbits.extend(orbits.iter().cloned());
            let (a, b, c) = (&orbits[0], &orbits[1], &orbits[2]);
            let piece = [
                (a, b, *ab_gain),
                (b, c, Sign::Plus),
                (b, c, Sign::Minus),
                (a, c, Sign::Plus),
                (a, c, Sign::Minus),
            ];
            for ((u, v, gain), id) in piece.into_iter().zip(edge_ids.iter()) {
                edges.push(NamedEdge {
                    id: id.clone(),
                    u: u.clone(),
                    v: v.clone(),
                    gain,
                });
            }
            edges.push(NamedEdge {
                id: edge_ids[5].clone(),
                u: orbits[usize::from(*attach_from)].clone(),
                v: attach_to.clone(),
                gain: *attach_gain,
            });
            from_named(all_orbits, edges)
        }
        Move::GraphJoin {
            piece_orbits,
            piece_edges,
            join_id,
            join_from,
            join_to,
            join_gain,
        } => {
            for name in piece_orbits {
                ensure_fresh_orbit(q, name)?;
            }
            ensure_fresh_edge(q, join_id)?;
            for (id, _, _, _) in piece_edges {
                ensure_fresh_edge(q, id)?;
            }
            ensure_orbit(q, join_to)?;
            if !piece_orbits.contains(join_from) {
                return Err(MoveError::UnknownOrbit(join_from.clone()));
            }
            // The piece must stand alone as a gain-tight loopless graph.
            let piece_named: Vec<NamedEdge> = piece_edges
                .iter()
                .map(|(id, u, v, gain)| NamedEdge {
                    id: id.clone(),
                    u: u.clone(),
                    v: v.clone(),
                    gain: *gain,
                })
                .collect();
            let piece = from_named(piece_orbits.clone(), piece_named.clone())
                .map_err(|_| MoveError::BadPiece)?;
            if piece.has_loops() || !is_gain_tight(&piece, SparsityVariant::TwoTwoOne)? {
                return Err(MoveError::BadPiece);
            }
            let (mut all_orbits, mut edges) = to_named(q);
            all_orbits.extend(piece_orbits.iter().cloned());
            edges.extend(piece_named);
            edges.push(NamedEdge {
                id: join_id.clone(),
                u: join_from.clone(),
                v: join_to.clone(),
                gain: *join_gain,
            });
            from_named(all_orbits, edges)
        }
    }
}

fn apply_h2(
    q: &SignedQuotientGraph,
    kind: &'static str,
    removed: &str,
    new_orbit: &str,
    e1: &NewEdge,
    e2: &NewEdge,
    e3: &NewEdge,
) -> Result<SignedQuotientGraph, MoveError> {
    ensure_fresh_orbit(q, new_orbit)?;
    for e in [e1, e2, e3] {
        ensure_fresh_edge(q, &e.id)?;
        ensure_orbit(q, &e.to)?;
        if e.to == new_orbit {
            return Err(MoveError::UnknownOrbit(e.to.clone()));
        }
    }
    let removed_idx = q
        .edge_index(removed)
        .map_err(|_| MoveError::UnknownEdge(removed.to_string()))?;
    let old = &q.edges()[removed_idx];
    let x = q.orbit_name(old.u).to_string();
    let y = q.orbit_name(old.v).to_string();
    let endpoints_match = (e1.to == x && e2.to == y) || (e1.to == y && e2.to == x);
    if !endpoints_match {
        return Err(MoveError::EndpointMismatch {
            edge: removed.to_string(),
        });
    }
    if e1.gain * e2.gain != old.gain {
        return Err(MoveError::GainProductMismatch);
    }
    let expected = if old.is_loop() {
        "H2c"
    } else if e3.to == x || e3.to == y {
        "H2b"
    } else {
        "H2a"
    };
    if expected != kind {
        return Err(MoveError::WrongMoveKind {
            move_name: expected,
            detail: format!("declared as {kind}"),
        });
    }
    let (mut orbits, edges) = to_named(q);
    orbits.push(new_orbit.to_string());
    let mut new_edges: Vec<NamedEdge> = edges.into_iter().filter(|e| e.id != removed).collect();
    for e in [e1, e2, e3] {
        new_edges.push(NamedEdge {
            id: e.id.clone(),
            u: new_orbit.to_string(),
            v: e.to.clone(),
            gain: e.gain,
        });
    }
    from_named(orbits, new_edges)
}

/// Check that a reattachment list covers the given edge indices exactly.
fn check_reattach_cover<'a>(
    q: &SignedQuotientGraph,
    incident: &[usize],
    listed: impl Iterator<Item = &'a str>,
) -> Result<(), MoveError> {
    let mut want: Vec<&str> = incident.iter().map(|&i| q.edges()[i].id.as_str()).collect();
    want.sort_unstable();
    let mut got: Vec<&str> = listed.collect();
    got.sort_unstable();
    if want != got {
        return Err(MoveError::ReattachMismatch(format!(
            "expected {want:?}, got {got:?}"
        )));
    }
    Ok(())
}

/// The single-orbit, single-loop base graph of the symmetric theory.
pub fn unbalanced_loop_base(orbit: &str, edge_id: &str) -> SignedQuotientGraph {
    SignedQuotientGraph::new(
        vec![orbit.to_string()],
        vec![GainEdge {
            id: edge_id.to_string(),
            u: 0,
            v: 0,
            gain: Sign::Minus,
        }],
    )
    .expect("base graph is valid")
}

/// The three-orbit base graph of the anti-symmetric theory: a single edge
/// `a-b` (trivial in the canonical form; `ab_gain` admits its switchings)
/// plus parallel pairs `b-c` and `a-c`.
pub fn two_k3_minus_edge_base(
    orbits: &[String; 3],
    edge_ids: &[String; 5],
    ab_gain: Sign,
) -> SignedQuotientGraph {
    let gains = [
        (0usize, 1usize, ab_gain),
        (1, 2, Sign::Plus),
        (1, 2, Sign::Minus),
        (0, 2, Sign::Plus),
        (0, 2, Sign::Minus),
    ];
    SignedQuotientGraph::new(
        orbits.to_vec(),
        gains
            .iter()
            .zip(edge_ids)
            .map(|(&(u, v, gain), id)| GainEdge {
                id: id.clone(),
                u,
                v,
                gain,
            })
            .collect(),
    )
    .expect("base graph is valid")
}

/// The four-orbit base graph of the anti-symmetric theory: a K4 whose six
/// edges all have trivial gain plus one extra gain −1 edge parallel to the
/// `(0,1)` edge (`signing` admits its switchings: edge `(i,j)` carries gain
/// `s_i·s_j`, the extra edge the opposite).
///
/// This graph is loopless and gain-tight but admits no inverse move whose
/// predecessor is again loopless: contracting any single edge duplicates a
/// parallel edge, merging at any degree-3 orbit duplicates a K4 edge, and
/// collapsing the K4 leaves a single orbit carrying a loop.  Since it is
/// nevertheless anti-symmetrically realizable (see the isostatic
/// certificate test in `characterize`), it joins `TwoK3MinusEdge` as a
/// starting point of anti-symmetric construction sequences.
///
/// Edge id slots: `(0,1)` with gain `s_0·s_1`, `(0,1)` opposite, `(0,2)`,
/// `(0,3)`, `(1,2)`, `(1,3)`, `(2,3)`.
pub fn k4_plus_parallel_base(
    orbits: &[String; 4],
    edge_ids: &[String; 7],
    signing: &[Sign; 4],
) -> SignedQuotientGraph {
    let s = |i: usize, j: usize| signing[i] * signing[j];
    let gains = [
        (0usize, 1usize, s(0, 1)),
        (0, 1, -s(0, 1)),
        (0, 2, s(0, 2)),
        (0, 3, s(0, 3)),
        (1, 2, s(1, 2)),
        (1, 3, s(1, 3)),
        (2, 3, s(2, 3)),
    ];
    SignedQuotientGraph::new(
        orbits.to_vec(),
        gains
            .iter()
            .zip(edge_ids)
            .map(|(&(u, v, gain), id)| GainEdge {
                id: id.clone(),
                u,
                v,
                gain,
            })
            .collect(),
    )
    .expect("base graph is valid")
}

/// Starting graph of a construction sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    UnbalancedLoop {
        orbit: String,
        edge_id: String,
    },
    TwoK3MinusEdge {
        orbits: [String; 3],
        edge_ids: [String; 5],
        ab_gain: Sign,
    },
    K4PlusParallelEdge {
        orbits: [String; 4],
        edge_ids: [String; 7],
        signing: [Sign; 4],
    },
}

impl Base {
    pub fn graph(&self) -> SignedQuotientGraph {
        match self {
            Base::UnbalancedLoop { orbit, edge_id } => unbalanced_loop_base(orbit, edge_id),
            Base::TwoK3MinusEdge {
                orbits,
                edge_ids,
                ab_gain,
            } => two_k3_minus_edge_base(orbits, edge_ids, *ab_gain),
            Base::K4PlusParallelEdge {
                orbits,
                edge_ids,
                signing,
            } => k4_plus_parallel_base(orbits, edge_ids, signing),
        }
    }
}

/// A base graph plus forward moves; replaying yields a gain-tight graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSequence {
    pub mode: Mode,
    pub base: Base,
    pub moves: Vec<Move>,
}

/// Replay a construction sequence, enforcing the mode's move set and
/// checking gain-tightness (and looplessness in anti-symmetric mode) after
/// the base and after every move.
pub fn replay(seq: &ConstructionSequence) -> Result<SignedQuotientGraph, MoveError> {
    match (seq.mode, &seq.base) {
        (Mode::Symmetric, Base::UnbalancedLoop { .. }) => {}
        (Mode::AntiSymmetric, Base::TwoK3MinusEdge { .. }) => {}
        (Mode::AntiSymmetric, Base::K4PlusParallelEdge { .. }) => {}
        _ => return Err(MoveError::BaseMismatch(seq.mode.name())),
    }
    let mut q = seq.base.graph();
    check_step(&q, seq.mode, 0)?;
    for (step, mv) in seq.moves.iter().enumerate() {
        let excluded = match seq.mode {
            Mode::Symmetric => matches!(mv, Move::K3Join { .. } | Move::GraphJoin { .. }),
            Mode::AntiSymmetric => matches!(mv, Move::H1c { .. } | Move::H2c { .. }),
        };
        if excluded {
            return Err(MoveError::ModeExcludesMove {
                mode: seq.mode.name(),
                move_name: mv.name(),
            });
        }
        q = apply_move(&q, mv)?;
        check_step(&q, seq.mode, step + 1)?;
    }
    Ok(q)
}

fn check_step(q: &SignedQuotientGraph, mode: Mode, step: usize) -> Result<(), MoveError> {
    if !is_gain_tight(q, SparsityVariant::TwoTwoOne)? {
        return Err(MoveError::NotTight { step });
    }
    if mode == Mode::AntiSymmetric && q.has_loops() {
        return Err(MoveError::NotLoopless { step });
    }
    Ok(())
}

/// Whether two quotient graphs are equal as name-addressed structures: the
/// same orbit names and the same set of edges `(id, endpoints, gain)`,
/// regardless of storage order.
pub fn same_named_graph(a: &SignedQuotientGraph, b: &SignedQuotientGraph) -> bool {
    let orbit_set = |g: &SignedQuotientGraph| -> std::collections::BTreeSet<String> {
        g.orbits().iter().cloned().collect()
    };
    if orbit_set(a) != orbit_set(b) {
        return false;
    }
    let edge_set = |g: &SignedQuotientGraph| -> std::collections::BTreeSet<(String, String, String, Sign)> {
        g.edges()
            .iter()
            .map(|e| {
                let u = g.orbit_name(e.u).to_string();
                let v = g.orbit_name(e.v).to_string();
                let (u, v) = if u <= v { (u, v) } else { (v, u) };
                (e.id.clone(), u, v, e.gain)
            })
            .collect()
    };
    edge_set(a) == edge_set(b)
}

/// Decide whether two quotient graphs are isomorphic up to relabelling
/// orbits and switching. Edge ids are ignored.
pub fn switching_isomorphic(
    a: &SignedQuotientGraph,
    b: &SignedQuotientGraph,
) -> Result<bool, MoveError> {
    let n = a.n_orbits();
    if n != b.n_orbits() || a.n_edges() != b.n_edges() {
        return Ok(false);
    }
    if n > MAX_ISO_ORBITS {
        return Err(MoveError::TooManyOrbitsForIso {
            found: n,
            max: MAX_ISO_ORBITS,
        });
    }
    // Pair profiles: (count, has a loop) per unordered pair, plus the gain
    // of single non-loop edges for the parity constraints.
    let profile = |g: &SignedQuotientGraph| -> std::collections::BTreeMap<(usize, usize), Vec<Sign>> {
        let mut map: std::collections::BTreeMap<(usize, usize), Vec<Sign>> =
            std::collections::BTreeMap::new();
        for e in g.edges() {
            map.entry(e.pair()).or_default().push(e.gain);
        }
        for gains in map.values_mut() {
            gains.sort_unstable();
        }
        map
    };
    let pa = profile(a);
    let pb = profile(b);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if permutation_admits_switching(&pa, &pb, &perm, n) {
            return Ok(true);
        }
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
    }
}

fn permutation_admits_switching(
    pa: &std::collections::BTreeMap<(usize, usize), Vec<Sign>>,
    pb: &std::collections::BTreeMap<(usize, usize), Vec<Sign>>,
    perm: &[usize],
    n: usize,
) -> bool {
    // Shape check: mapped pairs must carry the same edge counts, and loops
    // and parallel pairs must correspond (switching never changes either).
    let mapped = |&(u, v): &(usize, usize)| -> (usize, usize) {
        let (x, y) = (perm[u], perm[v]);
        (x.min(y), x.max(y))
    };
    if pa.len() != pb.len() {
        return false;
    }
    for (pair, gains) in pa {
        let Some(other) = pb.get(&mapped(pair)) else {
            return false;
        };
        if gains.len() != other.len() {
            return false;
        }
        if pair.0 == pair.1 && gains != other {
            return false;
        }
    }
    // Parity constraints from single non-loop edges: a switching `s` must
    // satisfy s(u) * s(v) = gain_a * gain_b on each.
    let mut parent: Vec<usize> = (0..n).collect();
    let mut sign: Vec<Sign> = vec![Sign::Plus; n];
    fn find(parent: &mut [usize], sign: &mut [Sign], x: usize) -> (usize, Sign) {
        if parent[x] == x {
            return (x, sign[x]);
        }
        let (root, parent_sign) = find(parent, sign, parent[x]);
        parent[x] = root;
        sign[x] = sign[x] * parent_sign;
        (root, sign[x])
    }
    for (pair, gains) in pa {
        if pair.0 == pair.1 || gains.len() != 1 {
            continue;
        }
        let other = &pb[&mapped(pair)];
        let rel = gains[0] * other[0];
        let (ru, su) = find(&mut parent, &mut sign, pair.0);
        let (rv, sv) = find(&mut parent, &mut sign, pair.1);
        if ru == rv {
            if su * sv != rel {
                return false;
            }
        } else {
            parent[rv] = ru;
            sign[rv] = su * sv * rel;
        }
    }
    true
}

/// Advance to the next lexicographic permutation; `false` when exhausted.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A verified inverse: applying `move` to `predecessor` reproduces the input
/// exactly (same names, ids and gains), and the predecessor is gain-tight
/// (and loopless in anti-symmetric mode) with one fewer orbit (three fewer
/// for joins and `VertexToK4`).
pub type InverseCandidate = (Move, SignedQuotientGraph);

/// All verified inverse moves of `q` under the mode's move set, in the
/// deterministic search order `H1, H2, EdgeToK3, VertexToK4, K3Join`.
pub fn inverse_candidates(
    q: &SignedQuotientGraph,
    mode: Mode,
) -> Result<Vec<InverseCandidate>, MoveError> {
    let mut raw: Vec<(Move, SignedQuotientGraph)> = Vec::new();
    collect_h1_inverses(q, &mut raw);
    collect_h2_inverses(q, &mut raw);
    collect_edge_to_k3_inverses(q, &mut raw);
    collect_vertex_to_k4_inverses(q, &mut raw);
    if mode == Mode::AntiSymmetric {
        collect_k3_join_inverses(q, &mut raw);
    }
    let mut verified = Vec::new();
    for (mv, predecessor) in raw {
        if predecessor.n_orbits() == 0 {
            continue;
        }
        if !is_gain_tight(&predecessor, SparsityVariant::TwoTwoOne)? {
            continue;
        }
        if mode == Mode::AntiSymmetric && predecessor.has_loops() {
            continue;
        }
        let Ok(rebuilt) = apply_move(&predecessor, &mv) else {
            continue;
        };
        if same_named_graph(&rebuilt, q) {
            verified.push((mv, predecessor));
        }
    }
    Ok(verified)
}

fn remove_orbit_and_edges(
    q: &SignedQuotientGraph,
    orbit: usize,
    drop_edges: &[usize],
    add: Vec<NamedEdge>,
) -> Result<SignedQuotientGraph, MoveError> {
    let (orbits, edges) = to_named(q);
    let name = q.orbit_name(orbit);
    let orbits: Vec<String> = orbits.into_iter().filter(|o| o != name).collect();
    let mut kept: Vec<NamedEdge> = edges
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !drop_edges.contains(i))
        .map(|(_, e)| e)
        .collect();
    kept.extend(add);
    from_named(orbits, kept)
}

fn collect_h1_inverses(q: &SignedQuotientGraph, out: &mut Vec<(Move, SignedQuotientGraph)>) {
    for v in 0..q.n_orbits() {
        let incident = q.incident_edges(v);
        if incident.len() != 2 {
            continue;
        }
        let (i, j) = (incident[0], incident[1]);
        let (f, g) = (&q.edges()[i], &q.edges()[j]);
        let mv = match (f.is_loop(), g.is_loop()) {
            (false, false) => {
                let x = f.other(v);
                let y = g.other(v);
                if x == y {
                    let (plus, minus) = if f.gain == Sign::Plus { (f, g) } else { (g, f) };
                    Move::H1b {
                        new_orbit: q.orbit_name(v).to_string(),
                        to: q.orbit_name(x).to_string(),
                        plus_id: plus.id.clone(),
                        minus_id: minus.id.clone(),
                    }
                } else {
                    Move::H1a {
                        new_orbit: q.orbit_name(v).to_string(),
                        e1: NewEdge {
                            id: f.id.clone(),
                            to: q.orbit_name(x).to_string(),
                            gain: f.gain,
                        },
                        e2: NewEdge {
                            id: g.id.clone(),
                            to: q.orbit_name(y).to_string(),
                            gain: g.gain,
                        },
                    }
                }
            }
            (true, false) | (false, true) => {
                let (l, e) = if f.is_loop() { (f, g) } else { (g, f) };
                Move::H1c {
                    new_orbit: q.orbit_name(v).to_string(),
                    loop_id: l.id.clone(),
                    e: NewEdge {
                        id: e.id.clone(),
                        to: q.orbit_name(e.other(v)).to_string(),
                        gain: e.gain,
                    },
                }
            }
            (true, true) => continue,
        };
        if let Ok(p) = remove_orbit_and_edges(q, v, &[i, j], vec![]) {
            out.push((mv, p));
        }
    }
}

fn collect_h2_inverses(q: &SignedQuotientGraph, out: &mut Vec<(Move, SignedQuotientGraph)>) {
    for v in 0..q.n_orbits() {
        let incident = q.incident_edges(v);
        if incident.len() != 3 || incident.iter().any(|&i| q.edges()[i].is_loop()) {
            continue;
        }
        for merge in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (i, j, k) = (
                incident[merge.0],
                incident[merge.1],
                incident[merge.2],
            );
            let (fi, fj, fk) = (&q.edges()[i], &q.edges()[j], &q.edges()[k]);
            let x = fi.other(v);
            let y = fj.other(v);
            let merged_gain = fi.gain * fj.gain;
            if x == y && merged_gain != Sign::Minus {
                continue; // a trivial-gain loop cannot exist
            }
            let merged_id = q.fresh_edge_id(q.n_edges());
            let merged = NamedEdge {
                id: merged_id.clone(),
                u: q.orbit_name(x).to_string(),
                v: q.orbit_name(y).to_string(),
                gain: merged_gain,
            };
            let Ok(p) = remove_orbit_and_edges(q, v, &[i, j, k], vec![merged]) else {
                continue;
            };
            let z = fk.other(v);
            let new_orbit = q.orbit_name(v).to_string();
            let e1 = NewEdge {
                id: fi.id.clone(),
                to: q.orbit_name(x).to_string(),
                gain: fi.gain,
            };
            let e2 = NewEdge {
                id: fj.id.clone(),
                to: q.orbit_name(y).to_string(),
                gain: fj.gain,
            };
            let e3 = NewEdge {
                id: fk.id.clone(),
                to: q.orbit_name(z).to_string(),
                gain: fk.gain,
            };
            let mv = if x == y {
                Move::H2c {
                    removed: merged_id,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                }
            } else if z == x || z == y {
                Move::H2b {
                    removed: merged_id,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                }
            } else {
                Move::H2a {
                    removed: merged_id,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                }
            };
            out.push((mv, p));
        }
    }
}

fn collect_edge_to_k3_inverses(
    q: &SignedQuotientGraph,
    out: &mut Vec<(Move, SignedQuotientGraph)>,
) {
    for f_idx in 0..q.n_edges() {
        let f = &q.edges()[f_idx];
        if f.is_loop() {
            continue;
        }
        let (v0, v1) = (f.u, f.v);
        // The contracted pair must be joined by exactly this edge.
        let between = q
            .edges()
            .iter()
            .filter(|e| e.pair() == f.pair())
            .count();
        if between != 1 {
            continue;
        }
        for u in 0..q.n_orbits() {
            if u == v0 || u == v1 {
                continue;
            }
            let g0s: Vec<usize> = (0..q.n_edges())
                .filter(|&i| q.edges()[i].pair() == (v0.min(u), v0.max(u)))
                .collect();
            let g1s: Vec<usize> = (0..q.n_edges())
                .filter(|&i| q.edges()[i].pair() == (v1.min(u), v1.max(u)))
                .collect();
            for &g0_idx in &g0s {
                for &g1_idx in &g1s {
                    let g0 = &q.edges()[g0_idx];
                    let g1 = &q.edges()[g1_idx];
                    if f.gain * g0.gain * g1.gain != Sign::Plus {
                        continue; // the triangle must be balanced
                    }
                    // Contract the triangle along f: the merged edge keeps
                    // g0's gain (seen from the v0 side) and edges on the v1
                    // side are transported through f.
                    let merged_name = q.fresh_orbit_name(q.n_orbits());
                    let removed_id = q.fresh_edge_id(q.n_edges());
                    let (orbits, edges) = to_named(q);
                    let name0 = q.orbit_name(v0).to_string();
                    let name1 = q.orbit_name(v1).to_string();
                    let mut new_orbits: Vec<String> = orbits
                        .into_iter()
                        .filter(|o| *o != name0 && *o != name1)
                        .collect();
                    new_orbits.push(merged_name.clone());
                    let mut reattach = Vec::new();
                    let mut new_edges = Vec::new();
                    for (idx, mut e) in edges.into_iter().enumerate() {
                        if [f_idx, g0_idx, g1_idx].contains(&idx) {
                            continue;
                        }
                        let at0 = e.u == name0 || e.v == name0;
                        let at1 = e.u == name1 || e.v == name1;
                        if at0 || at1 {
                            reattach.push((e.id.clone(), u8::from(at1)));
                            let is_loop = e.u == e.v;
                            if e.u == name0 || e.u == name1 {
                                e.u = merged_name.clone();
                            }
                            if e.v == name0 || e.v == name1 {
                                e.v = merged_name.clone();
                            }
                            if at1 && !is_loop {
                                e.gain = e.gain * f.gain;
                            }
                        }
                        new_edges.push(e);
                    }
                    new_edges.push(NamedEdge {
                        id: removed_id.clone(),
                        u: merged_name.clone(),
                        v: q.orbit_name(u).to_string(),
                        gain: g0.gain,
                    });
                    let Ok(p) = from_named(new_orbits, new_edges) else {
                        continue;
                    };
                    out.push((
                        Move::EdgeToK3 {
                            split: merged_name,
                            removed: removed_id,
                            v0: name0,
                            v1: name1,
                            t01_gain: f.gain,
                            t01: f.id.clone(),
                            t0u: g0.id.clone(),
                            t1u: g1.id.clone(),
                            reattach,
                        },
                        p,
                    ));
                }
            }
        }
    }
}

fn collect_vertex_to_k4_inverses(
    q: &SignedQuotientGraph,
    out: &mut Vec<(Move, SignedQuotientGraph)>,
) {
    let n = q.n_orbits();
    if n < 4 {
        return;
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    try_k4_subset(q, &[a, b, c, d], out);
                }
            }
        }
    }
}

fn try_k4_subset(
    q: &SignedQuotientGraph,
    s: &[usize; 4],
    out: &mut Vec<(Move, SignedQuotientGraph)>,
) {
    let inside: Vec<usize> = (0..q.n_edges())
        .filter(|&i| {
            let e = &q.edges()[i];
            s.contains(&e.u) && s.contains(&e.v)
        })
        .collect();
    if inside.len() < 6 || inside.len() > 7 {
        return;
    }
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    // Candidate edges per pair.
    let per_pair: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(i, j)| {
            let key = (s[i].min(s[j]), s[i].max(s[j]));
            inside
                .iter()
                .copied()
                .filter(|&e| q.edges()[e].pair() == key)
                .collect()
        })
        .collect();
    if per_pair.iter().any(Vec::is_empty) {
        return;
    }
    // Enumerate one choice per pair (at most one pair is doubled in a
    // gain-tight graph, so this stays tiny).
    let mut choices = vec![0usize; 6];
    loop {
        let chosen: Vec<usize> = (0..6).map(|p| per_pair[p][choices[p]]).collect();
        let outcome = crate::quotient::balance(q, &chosen);
        if outcome.balanced {
            let signing = outcome.signing.unwrap();
            emit_k4_candidate(q, s, &chosen, &signing, &inside, out);
        }
        // Advance the mixed-radix counter.
        let mut p = 0;
        loop {
            if p == 6 {
                return;
            }
            choices[p] += 1;
            if choices[p] < per_pair[p].len() {
                break;
            }
            choices[p] = 0;
            p += 1;
        }
    }
}

fn emit_k4_candidate(
    q: &SignedQuotientGraph,
    s: &[usize; 4],
    chosen: &[usize],
    signing: &[Sign],
    inside: &[usize],
    out: &mut Vec<(Move, SignedQuotientGraph)>,
) {
    // `signing` witnesses balance: every chosen edge has gain s(u) * s(v),
    // so the new orbits' signing in the move is its restriction.
    let k4_signing = [
        signing[s[0]],
        signing[s[1]],
        signing[s[2]],
        signing[s[3]],
    ];
    debug_assert!(chosen
        .iter()
        .all(|&i| q.edges()[i].gain == signing[q.edges()[i].u] * signing[q.edges()[i].v]));
    let extra: Vec<usize> = inside
        .iter()
        .copied()
        .filter(|i| !chosen.contains(i))
        .collect();
    let merged_name = q.fresh_orbit_name(q.n_orbits());
    let names: Vec<String> = s.iter().map(|&v| q.orbit_name(v).to_string()).collect();
    let (orbits, edges) = to_named(q);
    let mut new_orbits: Vec<String> = orbits
        .into_iter()
        .filter(|o| !names.contains(o))
        .collect();
    new_orbits.push(merged_name.clone());
    let mut reattach: Vec<(String, K4Target)> = Vec::new();
    let mut new_edges: Vec<NamedEdge> = Vec::new();
    let role = |name: &str| -> Option<u8> {
        names.iter().position(|x| x == name).map(|i| i as u8)
    };
    for (idx, mut e) in edges.into_iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let ru = role(&e.u);
        let rv = role(&e.v);
        match (ru, rv) {
            (None, None) => new_edges.push(e),
            (Some(i), None) => {
                reattach.push((e.id.clone(), K4Target::Orbit(i)));
                e.u = merged_name.clone();
                e.gain = e.gain * k4_signing[usize::from(i)];
                new_edges.push(e);
            }
            (None, Some(j)) => {
                reattach.push((e.id.clone(), K4Target::Orbit(j)));
                e.v = merged_name.clone();
                e.gain = e.gain * k4_signing[usize::from(j)];
                new_edges.push(e);
            }
            (Some(i), Some(j)) => {
                // The extra inside edge: a former fixed-edge loop.
                debug_assert!(extra.contains(&idx));
                if i == j {
                    reattach.push((e.id.clone(), K4Target::Orbit(i)));
                } else {
                    let (iu, ju) = (usize::from(i), usize::from(j));
                    if e.gain != Sign::Minus * k4_signing[iu] * k4_signing[ju] {
                        return; // not a switched negative internal edge
                    }
                    reattach.push((e.id.clone(), K4Target::Internal(i, j)));
                }
                new_edges.push(NamedEdge {
                    id: e.id,
                    u: merged_name.clone(),
                    v: merged_name.clone(),
                    gain: Sign::Minus,
                });
            }
        }
    }
    let Ok(p) = from_named(new_orbits, new_edges) else {
        return;
    };
    let k4_edge_ids: Vec<String> = chosen.iter().map(|&i| q.edges()[i].id.clone()).collect();
    out.push((
        Move::VertexToK4 {
            removed_orbit: merged_name,
            k4: [
                names[0].clone(),
                names[1].clone(),
                names[2].clone(),
                names[3].clone(),
            ],
            k4_edge_ids: match <[String; 6]>::try_from(k4_edge_ids) {
                Ok(ids) => ids,
                Err(_) => return,
            },
            k4_signing,
            reattach,
        },
        p,
    ));
}

fn collect_k3_join_inverses(
    q: &SignedQuotientGraph,
    out: &mut Vec<(Move, SignedQuotientGraph)>,
) {
    let n = q.n_orbits();
    if n < 4 {
        return;
    }
    for cut in 0..q.n_edges() {
        let cut_edge = &q.edges()[cut];
        if cut_edge.is_loop() {
            continue;
        }
        // Components after removing the cut edge.
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = next;
            next += 1;
            let mut stack = vec![start];
            comp[start] = c;
            while let Some(w) = stack.pop() {
                for (i, e) in q.edges().iter().enumerate() {
                    if i == cut {
                        continue;
                    }
                    for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                        if x == w && comp[y] == usize::MAX {
                            comp[y] = c;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        if comp[cut_edge.u] == comp[cut_edge.v] {
            continue;
        }
        for (piece_end, keep_end) in [
            (cut_edge.u, cut_edge.v),
            (cut_edge.v, cut_edge.u),
        ] {
            let piece_comp = comp[piece_end];
            let piece_orbits: Vec<usize> =
                (0..n).filter(|&v| comp[v] == piece_comp).collect();
            if piece_orbits.len() != 3 {
                continue;
            }
            let piece_edges: Vec<usize> = (0..q.n_edges())
                .filter(|&i| i != cut && piece_orbits.contains(&q.edges()[i].u))
                .collect();
            if piece_edges.len() != 5 {
                continue;
            }
            let Some((roles, ids, ab_gain)) = identify_base_piece(q, &piece_orbits, &piece_edges)
            else {
                continue;
            };
            // Predecessor: everything outside the piece.
            let (orbits, edges) = to_named(q);
            let piece_names: Vec<String> = piece_orbits
                .iter()
                .map(|&v| q.orbit_name(v).to_string())
                .collect();
            let kept_orbits: Vec<String> = orbits
                .into_iter()
                .filter(|o| !piece_names.contains(o))
                .collect();
            let kept_edges: Vec<NamedEdge> = edges
                .into_iter()
                .enumerate()
                .filter(|(i, _)| *i != cut && !piece_edges.contains(i))
                .map(|(_, e)| e)
                .collect();
            let Ok(p) = from_named(kept_orbits, kept_edges) else {
                continue;
            };
            let attach_from = roles
                .iter()
                .position(|&r| r == piece_end)
                .expect("cut endpoint lies in the piece") as u8;
            let mut edge_ids: Vec<String> = ids;
            edge_ids.push(cut_edge.id.clone());
            out.push((
                Move::K3Join {
                    orbits: [
                        q.orbit_name(roles[0]).to_string(),
                        q.orbit_name(roles[1]).to_string(),
                        q.orbit_name(roles[2]).to_string(),
                    ],
                    edge_ids: match <[String; 6]>::try_from(edge_ids) {
                        Ok(ids) => ids,
                        Err(_) => continue,
                    },
                    ab_gain,
                    attach_from,
                    attach_to: q.orbit_name(keep_end).to_string(),
                    attach_gain: cut_edge.gain,
                },
                p,
            ));
        }
    }
}

/// Match a 3-orbit, 5-edge subgraph against the loopless base shape. Returns
/// the orbits in role order `a, b, c`, edge ids in slot order
/// `ab, bc+, bc-, ac+, ac-`, and the gain of the single `a-b` edge.
fn identify_base_piece(
    q: &SignedQuotientGraph,
    orbits: &[usize],
    edges: &[usize],
) -> Option<([usize; 3], Vec<String>, Sign)> {
    if orbits.len() != 3 || edges.len() != 5 {
        return None;
    }
    if edges.iter().any(|&i| q.edges()[i].is_loop()) {
        return None;
    }
    // Count edges per pair.
    let mut pair_edges: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for &i in edges {
        pair_edges.entry(q.edges()[i].pair()).or_default().push(i);
    }
    if pair_edges.len() != 3 {
        return None;
    }
    let mut single = None;
    let mut doubles = Vec::new();
    for (pair, es) in &pair_edges {
        match es.len() {
            1 => single = Some((*pair, es[0])),
            2 => doubles.push((*pair, es.clone())),
            _ => return None,
        }
    }
    let (single_pair, single_edge) = single?;
    if doubles.len() != 2 {
        return None;
    }
    // Role c: shared by both doubled pairs; roles a, b: the single edge's
    // endpoints, a the smaller.
    let d0: Vec<usize> = vec![doubles[0].0 .0, doubles[0].0 .1];
    let c = if d0.contains(&doubles[1].0 .0) && !single_pair_contains(single_pair, doubles[1].0 .0)
    {
        doubles[1].0 .0
    } else {
        doubles[1].0 .1
    };
    let (a, b) = (single_pair.0, single_pair.1);
    if c == a || c == b {
        return None;
    }
    let pick = |x: usize, y: usize, want: Sign| -> Option<String> {
        let key = (x.min(y), x.max(y));
        pair_edges
            .get(&key)?
            .iter()
            .find(|&&i| q.edges()[i].gain == want)
            .map(|&i| q.edges()[i].id.clone())
    };
    let ids = vec![
        q.edges()[single_edge].id.clone(),
        pick(b, c, Sign::Plus)?,
        pick(b, c, Sign::Minus)?,
        pick(a, c, Sign::Plus)?,
        pick(a, c, Sign::Minus)?,
    ];
    Some(([a, b, c], ids, q.edges()[single_edge].gain))
}

fn single_pair_contains(pair: (usize, usize), v: usize) -> bool {
    pair.0 == v || pair.1 == v
}

/// Recognize a switching of the K4-plus-parallel-edge base graph: roles
/// `0,1` are the doubled pair's endpoints, roles `2,3` the rest, and the
/// five single edges must be consistent with some signing `s` (edge `(i,j)`
/// carrying gain `s_i·s_j`).  Returns role indices, edge ids in base slot
/// order and the signing.
fn identify_k4_base(q: &SignedQuotientGraph) -> Option<([usize; 4], [String; 7], [Sign; 4])> {
    if q.n_orbits() != 4 || q.n_edges() != 7 || q.has_loops() {
        return None;
    }
    let mut pair_edges: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, e) in q.edges().iter().enumerate() {
        pair_edges.entry(e.pair()).or_default().push(i);
    }
    if pair_edges.len() != 6 {
        return None;
    }
    let mut doubled = None;
    for (pair, es) in &pair_edges {
        if es.len() == 2 {
            if doubled.is_some() {
                return None;
            }
            doubled = Some(*pair);
        }
    }
    let (r0, r1) = doubled?;
    let (r2, r3) = match [r0, r1] {
        [0, 1] => (2, 3),
        [0, 2] => (1, 3),
        [0, 3] => (1, 2),
        [1, 2] => (0, 3),
        [1, 3] => (0, 2),
        [2, 3] => (0, 1),
        _ => return None,
    };
    let roles = [r0, r1, r2, r3];
    let single_gain = |i: usize, j: usize| -> Sign {
        let key = (roles[i].min(roles[j]), roles[i].max(roles[j]));
        q.edges()[pair_edges[&key][0]].gain
    };
    // Solve s from the single edges reachable from role 0, then check the
    // remaining ones.
    let mut signing = [Sign::Plus; 4];
    signing[2] = single_gain(0, 2);
    signing[3] = single_gain(0, 3);
    signing[1] = single_gain(1, 2) * signing[2];
    if single_gain(1, 3) != signing[1] * signing[3]
        || single_gain(2, 3) != signing[2] * signing[3]
    {
        return None;
    }
    let single_id = |i: usize, j: usize| -> String {
        let key = (roles[i].min(roles[j]), roles[i].max(roles[j]));
        q.edges()[pair_edges[&key][0]].id.clone()
    };
    let doubled_ids = &pair_edges[&(r0, r1)];
    let (plus_slot, minus_slot) = if q.edges()[doubled_ids[0]].gain == signing[0] * signing[1] {
        (doubled_ids[0], doubled_ids[1])
    } else {
        (doubled_ids[1], doubled_ids[0])
    };
    let ids = [
        q.edges()[plus_slot].id.clone(),
        q.edges()[minus_slot].id.clone(),
        single_id(0, 2),
        single_id(0, 3),
        single_id(1, 2),
        single_id(1, 3),
        single_id(2, 3),
    ];
    Some((roles, ids, signing))
}

/// Extract a construction sequence by depth-first inverse reduction.
///
/// The input must be gain-tight (and loopless in anti-symmetric mode).
/// Every inverse step reproduces the graph it came from exactly, so
/// replaying the result rebuilds the input verbatim: same orbit names, edge
/// ids and gains.
pub fn extract_sequence(
    q: &SignedQuotientGraph,
    mode: Mode,
) -> Result<ConstructionSequence, MoveError> {
    if !is_gain_tight(q, SparsityVariant::TwoTwoOne)? {
        return Err(MoveError::NotTight { step: 0 });
    }
    if mode == Mode::AntiSymmetric && q.has_loops() {
        return Err(MoveError::NotLoopless { step: 0 });
    }
    extract_inner(q, mode)
}

fn extract_inner(
    q: &SignedQuotientGraph,
    mode: Mode,
) -> Result<ConstructionSequence, MoveError> {
    match mode {
        Mode::Symmetric if q.n_orbits() == 1 => {
            let e = &q.edges()[0];
            if q.n_edges() == 1 && e.is_loop() {
                return Ok(ConstructionSequence {
                    mode,
                    base: Base::UnbalancedLoop {
                        orbit: q.orbit_name(0).to_string(),
                        edge_id: e.id.clone(),
                    },
                    moves: vec![],
                });
            }
            return Err(MoveError::BaseMismatch(mode.name()));
        }
        Mode::AntiSymmetric if q.n_orbits() == 3 => {
            let orbits: Vec<usize> = (0..3).collect();
            let edges: Vec<usize> = (0..q.n_edges()).collect();
            let Some((roles, ids, ab_gain)) = identify_base_piece(q, &orbits, &edges) else {
                return Err(MoveError::BaseMismatch(mode.name()));
            };
            let base = Base::TwoK3MinusEdge {
                orbits: [
                    q.orbit_name(roles[0]).to_string(),
                    q.orbit_name(roles[1]).to_string(),
                    q.orbit_name(roles[2]).to_string(),
                ],
                edge_ids: match <[String; 5]>::try_from(ids) {
                    Ok(ids) => ids,
                    Err(_) => return Err(MoveError::BaseMismatch(mode.name())),
                },
                ab_gain,
            };
            debug_assert!(same_named_graph(&base.graph(), q));
            return Ok(ConstructionSequence {
                mode,
                base,
                moves: vec![],
            });
        }
        _ => {}
    }
    if mode == Mode::AntiSymmetric && q.n_orbits() == 4 {
        if let Some((roles, edge_ids, signing)) = identify_k4_base(q) {
            let base = Base::K4PlusParallelEdge {
                orbits: roles.map(|r| q.orbit_name(r).to_string()),
                edge_ids,
                signing,
            };
            debug_assert!(same_named_graph(&base.graph(), q));
            return Ok(ConstructionSequence {
                mode,
                base,
                moves: vec![],
            });
        }
    }
    for (mv, predecessor) in inverse_candidates(q, mode)? {
        if let Ok(mut seq) = extract_inner(&predecessor, mode) {
            seq.moves.push(mv);
            return Ok(seq);
        }
    }
    Err(MoveError::NoConstruction)
}

/// All gain-tight graphs on exactly `n` labeled orbits (optionally
/// loopless). Supports `n <= 4`.
pub fn enumerate_tight_labeled(
    n: usize,
    loopless: bool,
) -> Result<Vec<SignedQuotientGraph>, MoveError> {
    const MAX: usize = 4;
    if n > MAX {
        return Err(MoveError::EnumerationTooLarge { found: n, max: MAX });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let target = 2 * n - 1;
    let mut found = Vec::new();
    // Per pair: none, +, -, both. Per orbit: loop or not.
    let pair_options: [&[Sign]; 4] = [&[], &[Sign::Plus], &[Sign::Minus], &[Sign::Plus, Sign::Minus]];
    let n_pair_configs = 4usize.pow(pairs.len() as u32);
    let n_loop_configs = if loopless { 1 } else { 1usize << n };
    for pair_config in 0..n_pair_configs {
        for loop_config in 0..n_loop_configs {
            let mut edges: Vec<GainEdge> = Vec::new();
            let mut id = 0;
            let mut push = |u: usize, v: usize, gain: Sign, id: &mut usize| {
                edges.push(GainEdge {
                    id: format!("e{id}"),
                    u,
                    v,
                    gain,
                });
                *id += 1;
            };
            let mut cfg = pair_config;
            for &(u, v) in &pairs {
                for &gain in pair_options[cfg % 4] {
                    push(u, v, gain, &mut id);
                }
                cfg /= 4;
            }
            for v in 0..n {
                if loop_config >> v & 1 == 1 {
                    push(v, v, Sign::Minus, &mut id);
                }
            }
            if edges.len() != target {
                continue;
            }
            let orbits = (0..n).map(|i| format!("v{i}")).collect();
            let q = SignedQuotientGraph::new(orbits, edges).expect("construction is valid");
            if is_gain_tight(&q, SparsityVariant::TwoTwoOne)? {
                found.push(q);
            }
        }
    }
    Ok(found)
}

/// All gain-tight graphs on exactly `n` orbits (optionally loopless), up to
/// switching isomorphism. Supports `n <= 4`.
pub fn enumerate_tight(n: usize, loopless: bool) -> Result<Vec<SignedQuotientGraph>, MoveError> {
    let mut representatives: Vec<SignedQuotientGraph> = Vec::new();
    for q in enumerate_tight_labeled(n, loopless)? {
        let mut known = false;
        for r in &representatives {
            if switching_isomorphic(r, &q)? {
                known = true;
                break;
            }
        }
        if !known {
            representatives.push(q);
        }
    }
    Ok(representatives)
}
