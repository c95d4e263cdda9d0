//! Geometric realization of construction sequences, plus a randomized
//! realizer.
//!
//! [`realize`] walks a [`ConstructionSequence`] and places each new orbit
//! the way the constructive proofs do: the ideal location is the
//! intersection of facet-direction lines through existing joints (so the
//! new bars point into the required colour cones), and the joint is then
//! perturbed inside a ball whose radius is halved until an exact check
//! accepts the placement.  The invariants maintained after every move:
//!
//! * all `2n` covering points are pairwise distinct and off the mirror;
//! * every bar is decisively coloured, and the colour of every bar matches
//!   a running per-edge colour plan (new bars join the plan with the colour
//!   the move's proof assigns; surviving bars keep theirs).
//!
//! The plan's two colour classes stay a spanning unbalanced map graph plus
//! a spanning tree throughout, so the finished framework certifies the
//! mode, which [`realize`] re-checks with the exact rank crosscheck.
//!
//! Everything happens in normalized coordinates; the requested norm enters
//! only when the finished placement is mapped back through its inverse
//! normalizing map.  Realizations are deterministic: no randomness is
//! involved, and the perturbation candidates are a fixed list.
//!
//! [`random_realize`] is the probabilistic alternative for a bare quotient
//! graph: sample integer representatives on a widening grid and keep the
//! first placement whose exact rank report certifies the requested goal.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::characterize::{crosscheck, Crosscheck};
use crate::geometry::{
    colour_normalized, Colour, GeometryError, QuadNorm, SymmetricFramework, Vec2,
};
use crate::moves::{
    apply_move, extract_sequence, replay, Base, ConstructionSequence, Mode, Move, MoveError,
};
use crate::quotient::{GainEdge, Sign, SignedQuotientGraph};
use crate::random::{random_normalized_reps, rng};
use crate::rational::{q, qr};
use crate::Q;

/// Maximum number of radius halvings per move before giving up.  The
/// placement rules guarantee feasibility for small enough radii, so running
/// out indicates a defect in the rules, not in the input.
pub const SHRINK_BUDGET: usize = 64;

/// What a randomized realization must certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityGoal {
    /// Symmetrically isostatic: symmetric orbit matrix of full rank `2n−1`
    /// with a one-dimensional (trivial) kernel.
    Symmetric,
    /// Anti-symmetrically isostatic.
    AntiSymmetric,
    /// Infinitesimally rigid (no flexes beyond the two translations).
    InfinitesimallyRigid,
}

/// A certified placement.
#[derive(Clone, Debug)]
pub struct RealizationResult {
    pub framework: SymmetricFramework,
    /// Exact rank report next to the combinatorial characterization, with
    /// their agreement bits; the requested goal holds on both sides.
    pub certificate: Crosscheck,
    /// Placement attempts consumed (1 for the deterministic realizer).
    pub attempts: usize,
    /// Total radius halvings across all moves (0 for the random realizer).
    pub shrink_steps: usize,
}

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Sequence(#[from] MoveError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no valid placement for {move_name} (step {step}) within {budget} halvings")]
    ShrinkBudget {
        move_name: &'static str,
        step: usize,
        budget: usize,
    },
    #[error("no accepted placement after {attempts} attempts")]
    Exhausted { attempts: usize },
    #[error("finished placement fails its certificate: {0}")]
    BadCertificate(String),
}

/// Reflection in the mirror, normalized coordinates.
fn reflect(u: &Vec2) -> Vec2 {
    Vec2::new(-u.x.clone(), u.y.clone())
}

/// Apply the gain's symmetry operation to a normalized point.
fn tau(gain: Sign, u: &Vec2) -> Vec2 {
    match gain {
        Sign::Plus => u.clone(),
        Sign::Minus => reflect(u),
    }
}

/// Normalized direction of the representative bar of an edge.
fn edge_delta(qg: &SignedQuotientGraph, reps: &BTreeMap<String, Vec2>, e: &GainEdge) -> Vec2 {
    let u = &reps[qg.orbit_name(e.u)];
    let v = &reps[qg.orbit_name(e.v)];
    u.sub(&tau(e.gain, v))
}

/// Exact acceptance check for a full placement: representatives present and
/// off the mirror, all covering points pairwise distinct, every bar
/// decisively coloured with its planned colour.
fn accepts(
    qg: &SignedQuotientGraph,
    reps: &BTreeMap<String, Vec2>,
    plan: &BTreeMap<String, Colour>,
) -> bool {
    let mut points: Vec<Vec2> = Vec::with_capacity(2 * qg.n_orbits());
    for name in qg.orbits() {
        let Some(u) = reps.get(name) else {
            return false;
        };
        if u.x == q(0) {
            return false;
        }
        points.push(u.clone());
        points.push(reflect(u));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    qg.edges().iter().all(|e| {
        colour_normalized(&edge_delta(qg, reps, e))
            .is_some_and(|c| plan.get(&e.id) == Some(&c))
    })
}

/// Perturbation candidates: directions covering both colour cones and their
/// boundaries' neighbourhoods, scaled to stay inside a ball of radius `r`.
fn ball_offsets(r: &Q) -> Vec<Vec2> {
    const DIRS: [(i64, i64); 17] = [
        (0, 0),
        (1, 0),
        (0, 1),
        (-1, 0),
        (0, -1),
        (1, 1),
        (1, -1),
        (-1, 1),
        (-1, -1),
        (2, 1),
        (1, 2),
        (-2, 1),
        (-1, 2),
        (2, -1),
        (1, -2),
        (-2, -1),
        (-1, -2),
    ];
    let step = r / q(4);
    DIRS.iter()
        .map(|&(x, y)| Vec2::from_ints(x, y).scale(&step))
        .collect()
}

/// Intersection of the line through `a1` and `a2` (a chord of known
/// `chord_colour`) with the facet-direction line of the opposite colour
/// through `b`.  The chord's dominant component is nonzero, so the division
/// is safe, and the two lines are never parallel.
fn chord_axis_intersection(a1: &Vec2, a2: &Vec2, b: &Vec2, chord_colour: Colour) -> Vec2 {
    let d = a2.sub(a1);
    match chord_colour {
        // The third bar runs along the F2 facet direction: a vertical line.
        Colour::F1 => {
            let t = (&b.x - &a1.x) / &d.x;
            Vec2::new(b.x.clone(), &a1.y + &(&t * &d.y))
        }
        // The third bar runs along the F1 facet direction: a horizontal line.
        Colour::F2 => {
            let t = (&b.y - &a1.y) / &d.y;
            Vec2::new(&a1.x + &(&t * &d.x), b.y.clone())
        }
    }
}

/// Standard well-positioned isostatic four-joint cluster, used scaled down
/// for `VertexToK4`: both monochrome classes are paths of length three.
fn k4_standard_offsets() -> [Vec2; 4] {
    [
        Vec2::zero(),
        Vec2::new(qr(1, 5), q(1)),
        Vec2::new(q(1), qr(-1, 5)),
        Vec2::new(qr(7, 5), qr(6, 5)),
    ]
}

/// Colours of the six standard-cluster edges in slot order
/// `(0,1),(0,2),(0,3),(1,2),(1,3),(2,3)`.
const K4_SLOT_COLOURS: [Colour; 6] = [
    Colour::F2,
    Colour::F1,
    Colour::F1,
    Colour::F2,
    Colour::F1,
    Colour::F2,
];

/// Frozen base placement of the three-orbit loopless base graph, normalized
/// coordinates.  Verified by the regression tests below: the single `a-b`
/// edge and the negative `a-c` edge come out `F1` (a spanning tree), the
/// remaining three edges `F2` (a spanning unbalanced map graph), for either
/// gain of the `a-b` edge.
fn triangle_base_reps() -> [Vec2; 3] {
    [
        Vec2::new(qr(-3, 2), q(0)),
        Vec2::new(qr(-1, 2), q(0)),
        Vec2::new(qr(-1, 2), qr(3, 2)),
    ]
}

/// Colours of the three-orbit base edges in slot order
/// `ab, bc+, bc−, ac+, ac−`.
const TRIANGLE_SLOT_COLOURS: [Colour; 5] = [
    Colour::F1,
    Colour::F2,
    Colour::F2,
    Colour::F2,
    Colour::F1,
];

/// Frozen base placement of the four-orbit loopless base graph (canonical
/// signing), normalized coordinates.  The three single edges at orbit 0 and
/// the `1-3` edge... see the slot colours: `0-2`, `0-3`, `1-3` form the
/// `F1` spanning tree, the doubled pair plus `1-2` and `2-3` the `F2`
/// spanning unbalanced map graph.
fn k4_base_reps() -> [Vec2; 4] {
    [
        Vec2::from_ints(1, 0),
        Vec2::from_ints(2, 4),
        Vec2::from_ints(3, 1),
        Vec2::new(q(6), qr(9, 2)),
    ]
}

/// Colours of the four-orbit base edges in slot order
/// `(0,1), (0,1)', (0,2), (0,3), (1,2), (1,3), (2,3)`.
const K4_BASE_SLOT_COLOURS: [Colour; 7] = [
    Colour::F2,
    Colour::F2,
    Colour::F1,
    Colour::F1,
    Colour::F2,
    Colour::F1,
    Colour::F2,
];

/// Incremental placement state: the graph built so far, normalized
/// representatives by orbit name, and the colour plan by edge id.
struct Placer {
    graph: SignedQuotientGraph,
    reps: BTreeMap<String, Vec2>,
    plan: BTreeMap<String, Colour>,
    shrink_steps: usize,
}

impl Placer {
    fn from_base(base: &Base) -> Placer {
        let graph = base.graph();
        let mut reps = BTreeMap::new();
        let mut plan = BTreeMap::new();
        match base {
            Base::UnbalancedLoop { orbit, edge_id } => {
                reps.insert(orbit.clone(), Vec2::from_ints(1, 0));
                plan.insert(edge_id.clone(), Colour::F1);
            }
            Base::TwoK3MinusEdge {
                orbits, edge_ids, ..
            } => {
                for (name, p) in orbits.iter().zip(triangle_base_reps()) {
                    reps.insert(name.clone(), p);
                }
                for (id, c) in edge_ids.iter().zip(TRIANGLE_SLOT_COLOURS) {
                    plan.insert(id.clone(), c);
                }
            }
            Base::K4PlusParallelEdge {
                orbits,
                edge_ids,
                signing,
            } => {
                // A nontrivial signing is a switching of the canonical
                // base, which geometrically re-chooses representatives:
                // reflect the representative of every negatively signed
                // orbit.  Reflection preserves both colour cones, so the
                // slot colours are those of the canonical placement.
                for ((name, p), s) in orbits.iter().zip(k4_base_reps()).zip(signing) {
                    reps.insert(name.clone(), tau(*s, &p));
                }
                for (id, c) in edge_ids.iter().zip(K4_BASE_SLOT_COLOURS) {
                    plan.insert(id.clone(), c);
                }
            }
        }
        debug_assert!(accepts(&graph, &reps, &plan));
        Placer {
            graph,
            reps,
            plan,
            shrink_steps: 0,
        }
    }

    fn realize_sequence(seq: &ConstructionSequence) -> Result<Placer, RealizeError> {
        let mut placer = Placer::from_base(&seq.base);
        for (step, mv) in seq.moves.iter().enumerate() {
            placer.apply(mv, step)?;
        }
        Ok(placer)
    }

    fn rep(&self, name: &str) -> &Vec2 {
        &self.reps[name]
    }

    /// Planned (= actual) colour of an edge about to be removed.
    fn take_colour(plan: &mut BTreeMap<String, Colour>, id: &str) -> Colour {
        plan.remove(id).expect("removed edges are in the plan")
    }

    /// Search placements for the orbits of one move: for each radius in the
    /// halving schedule, every candidate assignment is checked exactly, and
    /// the first acceptable one is committed.
    fn place<F>(
        &mut self,
        after: SignedQuotientGraph,
        plan: BTreeMap<String, Colour>,
        dropped_orbits: &[&str],
        candidates: F,
        step: usize,
        move_name: &'static str,
    ) -> Result<(), RealizeError>
    where
        F: Fn(&Q) -> Vec<Vec<(String, Vec2)>>,
    {
        let mut base_reps = self.reps.clone();
        for name in dropped_orbits {
            base_reps.remove(*name);
        }
        let mut radius = q(1);
        for halving in 0..SHRINK_BUDGET {
            for assignment in candidates(&radius) {
                let mut reps = base_reps.clone();
                for (name, p) in assignment {
                    reps.insert(name, p);
                }
                if accepts(&after, &reps, &plan) {
                    self.graph = after;
                    self.reps = reps;
                    self.plan = plan;
                    self.shrink_steps += halving;
                    return Ok(());
                }
            }
            radius = &radius / &q(2);
        }
        Err(RealizeError::ShrinkBudget {
            move_name,
            step,
            budget: SHRINK_BUDGET,
        })
    }

    fn apply(&mut self, mv: &Move, step: usize) -> Result<(), RealizeError> {
        let after = apply_move(&self.graph, mv)?;
        let mut plan = self.plan.clone();
        match mv {
            Move::H1a { new_orbit, e1, e2 } => {
                // New joint at the crossing of the F1 line through e1's
                // anchor with the F2 line through e2's anchor.
                plan.insert(e1.id.clone(), Colour::F1);
                plan.insert(e2.id.clone(), Colour::F2);
                let a1 = tau(e1.gain, self.rep(&e1.to));
                let a2 = tau(e2.gain, self.rep(&e2.to));
                let ideal = Vec2::new(a2.x, a1.y);
                let name = new_orbit.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    move |r| {
                        ball_offsets(r)
                            .iter()
                            .map(|o| vec![(name.clone(), ideal.add(o))])
                            .collect()
                    },
                    step,
                    "H1a",
                )
            }
            Move::H1b {
                new_orbit,
                to,
                plus_id,
                minus_id,
            } => {
                // Anchors are the two lifts of the same orbit, so the ideal
                // point is the reflected representative; the trivial-gain
                // bar comes out F1, the reflected one F2.
                plan.insert(plus_id.clone(), Colour::F1);
                plan.insert(minus_id.clone(), Colour::F2);
                let w = self.rep(to);
                let ideal = reflect(w);
                let name = new_orbit.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    move |r| {
                        ball_offsets(r)
                            .iter()
                            .map(|o| vec![(name.clone(), ideal.add(o))])
                            .collect()
                    },
                    step,
                    "H1b",
                )
            }
            Move::H1c {
                new_orbit,
                loop_id,
                e,
            } => {
                // Any point on the F2 facet line through the anchor works:
                // the new loop spans the mirror and is F1 wherever the
                // joint sits off the mirror.
                plan.insert(loop_id.clone(), Colour::F1);
                plan.insert(e.id.clone(), Colour::F2);
                let ideal = tau(e.gain, self.rep(&e.to)).add(&Vec2::from_ints(0, 1));
                let name = new_orbit.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    move |r| {
                        ball_offsets(r)
                            .iter()
                            .map(|o| vec![(name.clone(), ideal.add(o))])
                            .collect()
                    },
                    step,
                    "H1c",
                )
            }
            Move::H2a {
                removed,
                new_orbit,
                e1,
                e2,
                e3,
            }
            | Move::H2b {
                removed,
                new_orbit,
                e1,
                e2,
                e3,
            }
            | Move::H2c {
                removed,
                new_orbit,
                e1,
                e2,
                e3,
            } => {
                // Subdivision: the new joint sits where the removed bar's
                // chord crosses the opposite-colour facet line through the
                // third anchor, so both replacement bars inherit the
                // removed colour.
                let colour = Self::take_colour(&mut plan, removed);
                plan.insert(e1.id.clone(), colour);
                plan.insert(e2.id.clone(), colour);
                plan.insert(e3.id.clone(), colour.opposite());
                let a1 = tau(e1.gain, self.rep(&e1.to));
                let a2 = tau(e2.gain, self.rep(&e2.to));
                let b = tau(e3.gain, self.rep(&e3.to));
                let ideal = chord_axis_intersection(&a1, &a2, &b, colour);
                let name = new_orbit.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    move |r| {
                        ball_offsets(r)
                            .iter()
                            .map(|o| vec![(name.clone(), ideal.add(o))])
                            .collect()
                    },
                    step,
                    mv.name(),
                )
            }
            Move::EdgeToK3 {
                split,
                removed,
                v0,
                v1,
                t01_gain,
                t01,
                t0u,
                t1u,
                ..
            } => {
                // Split: v0 takes the vacated spot exactly, v1 sits next to
                // it along the opposite-colour facet direction (reflected
                // when the triangle gain is a switching), so both edges to
                // the old neighbour stay parallel to the removed bar.
                let colour = Self::take_colour(&mut plan, removed);
                plan.insert(t0u.clone(), colour);
                plan.insert(t1u.clone(), colour);
                plan.insert(t01.clone(), colour.opposite());
                let p = self.rep(split).clone();
                let dir = colour.opposite().axis_normalized();
                let t = *t01_gain;
                let (v0, v1) = (v0.clone(), v1.clone());
                self.place(
                    after,
                    plan,
                    &[split.as_str()],
                    move |r| {
                        [qr(1, 4), qr(-1, 4), qr(1, 8), qr(-1, 8)]
                            .iter()
                            .map(|eps| {
                                let shift = dir.scale(&(r * eps));
                                vec![
                                    (v0.clone(), p.clone()),
                                    (v1.clone(), tau(t, &p.add(&shift))),
                                ]
                            })
                            .collect()
                    },
                    step,
                    "EdgeToK3",
                )
            }
            Move::VertexToK4 {
                removed_orbit,
                k4,
                k4_edge_ids,
                k4_signing,
                ..
            } => {
                // Blow-up: a scaled standard cluster around the vacated
                // spot; negatively signed orbits are switchings and get the
                // reflected copy.  Cluster-internal colours hold exactly at
                // every radius; shrinking protects the reattached bars.
                for (id, c) in k4_edge_ids.iter().zip(K4_SLOT_COLOURS) {
                    plan.insert(id.clone(), c);
                }
                let p = self.rep(removed_orbit).clone();
                let names = k4.clone();
                let signing = *k4_signing;
                self.place(
                    after,
                    plan,
                    &[removed_orbit.as_str()],
                    move |r| {
                        let scale = r / q(4);
                        vec![names
                            .iter()
                            .zip(k4_standard_offsets())
                            .zip(signing)
                            .map(|((name, offset), s)| {
                                (name.clone(), tau(s, &p.add(&offset.scale(&scale))))
                            })
                            .collect()]
                    },
                    step,
                    "VertexToK4",
                )
            }
            Move::K3Join {
                orbits,
                edge_ids,
                attach_from,
                attach_to,
                ..
            } => {
                for (id, c) in edge_ids.iter().zip(TRIANGLE_SLOT_COLOURS) {
                    plan.insert(id.clone(), c);
                }
                plan.insert(edge_ids[5].clone(), Colour::F1);
                let piece: Vec<(String, Vec2)> = orbits
                    .iter()
                    .cloned()
                    .zip(triangle_base_reps())
                    .collect();
                let from = orbits[usize::from(*attach_from)].clone();
                let anchor_y = self.rep(attach_to).y.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    join_candidates(piece, from, anchor_y),
                    step,
                    "K3Join",
                )
            }
            Move::GraphJoin {
                piece_orbits,
                piece_edges,
                join_id,
                join_from,
                join_to,
                ..
            } => {
                // The attached piece is realized recursively through its
                // own extracted construction sequence, then joined exactly
                // like the three-orbit piece.
                let index = |name: &String| {
                    piece_orbits
                        .iter()
                        .position(|o| o == name)
                        .expect("validated by apply_move")
                };
                let piece_graph = SignedQuotientGraph::new(
                    piece_orbits.clone(),
                    piece_edges
                        .iter()
                        .map(|(id, u, v, gain)| GainEdge {
                            id: id.clone(),
                            u: index(u),
                            v: index(v),
                            gain: *gain,
                        })
                        .collect(),
                )
                .map_err(MoveError::from)?;
                let sub_seq = extract_sequence(&piece_graph, Mode::AntiSymmetric)?;
                let sub = Placer::realize_sequence(&sub_seq)?;
                self.shrink_steps += sub.shrink_steps;
                for (id, c) in sub.plan {
                    plan.insert(id, c);
                }
                plan.insert(join_id.clone(), Colour::F1);
                let piece: Vec<(String, Vec2)> = sub.reps.into_iter().collect();
                let from = join_from.clone();
                let anchor_y = self.rep(join_to).y.clone();
                self.place(
                    after,
                    plan,
                    &[],
                    join_candidates(piece, from, anchor_y),
                    step,
                    "GraphJoin",
                )
            }
        }
    }

    /// Denormalize the finished placement into the requested norm.
    fn framework(&self, norm: &QuadNorm) -> Result<SymmetricFramework, GeometryError> {
        let reps = self
            .graph
            .orbits()
            .iter()
            .map(|name| norm.denormalize(&self.reps[name]))
            .collect();
        SymmetricFramework::new(norm.clone(), self.graph.clone(), reps)
    }
}

/// Candidate transforms for a join: scale the realized piece about the
/// mirror's origin (preserving its symmetry and every colour exactly) and
/// translate it along the mirror so the attach orbit reaches the anchor's
/// facet line; small vertical offsets resolve joint coincidences while the
/// join bar stays in the F1 cone.
fn join_candidates(
    piece: Vec<(String, Vec2)>,
    from: String,
    anchor_y: Q,
) -> impl Fn(&Q) -> Vec<Vec<(String, Vec2)>> {
    move |r| {
        let half = r / q(2);
        let scales = [q(1), &q(1) + &half, &q(1) - &half];
        let quarter = r / q(4);
        let tiny = r / q(32);
        let etas = [q(0), quarter.clone(), -&quarter, tiny.clone(), -&tiny];
        let from_rep = &piece
            .iter()
            .find(|(name, _)| *name == from)
            .expect("join orbit is in the piece")
            .1;
        let mut out = Vec::with_capacity(scales.len() * etas.len());
        for s in &scales {
            let lift = &anchor_y - &(s * &from_rep.y);
            for eta in &etas {
                let dy = &lift + eta;
                out.push(
                    piece
                        .iter()
                        .map(|(name, p)| {
                            (name.clone(), Vec2::new(s * &p.x, &(s * &p.y) + &dy))
                        })
                        .collect(),
                );
            }
        }
        out
    }
}

/// Realize a construction sequence as a certified framework in the given
/// norm.  Deterministic; the sequence's own mode decides which certificate
/// is demanded.
pub fn realize(
    seq: &ConstructionSequence,
    norm: &QuadNorm,
) -> Result<RealizationResult, RealizeError> {
    replay(seq)?;
    let placer = Placer::realize_sequence(seq)?;
    let framework = placer.framework(norm)?;
    let certificate = crosscheck(&framework)?;
    let goal_holds = match seq.mode {
        Mode::Symmetric => {
            certificate.rank.sym_isostatic && certificate.combinatorial.sym_isostatic
        }
        Mode::AntiSymmetric => {
            certificate.rank.anti_isostatic && certificate.combinatorial.anti_isostatic
        }
    };
    if !goal_holds || !certificate.all_agree() {
        return Err(RealizeError::BadCertificate(format!(
            "{} realization: rank sym/anti {}/{}, combinatorial sym/anti {}/{}",
            seq.mode.name(),
            certificate.rank.sym_isostatic,
            certificate.rank.anti_isostatic,
            certificate.combinatorial.sym_isostatic,
            certificate.combinatorial.anti_isostatic,
        )));
    }
    Ok(RealizationResult {
        framework,
        certificate,
        attempts: 1,
        shrink_steps: placer.shrink_steps,
    })
}

/// Sample integer representatives on a grid that widens with the attempt
/// index and return the first placement whose exact rank report certifies
/// `goal`.  Reproducible per seed; exhaustion is not a refutation.
pub fn random_realize(
    quotient: &SignedQuotientGraph,
    goal: RigidityGoal,
    norm: &QuadNorm,
    seed: u64,
    attempts: usize,
) -> Result<RealizationResult, RealizeError> {
    let mut rand = rng(seed);
    for attempt in 0..attempts {
        let span = 4 + 2 * attempt as i64;
        let reps = random_normalized_reps(&mut rand, quotient.n_orbits(), span)
            .iter()
            .map(|u| norm.denormalize(u))
            .collect();
        let Ok(framework) = SymmetricFramework::new(norm.clone(), quotient.clone(), reps) else {
            continue;
        };
        if framework.colour_edges().is_err() {
            continue;
        }
        let certificate = crosscheck(&framework)?;
        let goal_holds = match goal {
            RigidityGoal::Symmetric => certificate.rank.sym_isostatic,
            RigidityGoal::AntiSymmetric => certificate.rank.anti_isostatic,
            RigidityGoal::InfinitesimallyRigid => certificate.rank.inf_rigid,
        };
        if goal_holds && certificate.all_agree() {
            return Ok(RealizationResult {
                framework,
                certificate,
                attempts: attempt + 1,
                shrink_steps: 0,
            });
        }
    }
    Err(RealizeError::Exhausted { attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{two_k3_minus_edge_base, NewEdge};
    use crate::random::random_gain_tight;

    fn names<const N: usize>(prefix: &str) -> [String; N] {
        std::array::from_fn(|i| format!("{prefix}{i}"))
    }

    #[test]
    fn the_empty_symmetric_sequence_realizes_the_fixed_bar() {
        let seq = ConstructionSequence {
            mode: Mode::Symmetric,
            base: Base::UnbalancedLoop {
                orbit: "v0".into(),
                edge_id: "e0".into(),
            },
            moves: vec![],
        };
        let got = realize(&seq, &QuadNorm::linf()).unwrap();
        assert_eq!(got.framework.covering().n_vertices(), 2);
        assert!(got.certificate.rank.sym_isostatic);
        assert!(got.certificate.combinatorial.sym_isostatic);
        assert!(!got.certificate.rank.anti_isostatic);
        assert_eq!(got.attempts, 1);
    }

    #[test]
    fn the_frozen_triangle_placement_certifies_both_gain_variants() {
        for ab_gain in [Sign::Plus, Sign::Minus] {
            let seq = ConstructionSequence {
                mode: Mode::AntiSymmetric,
                base: Base::TwoK3MinusEdge {
                    orbits: names("a"),
                    edge_ids: names("e"),
                    ab_gain,
                },
                moves: vec![],
            };
            let got = realize(&seq, &QuadNorm::linf()).unwrap();
            assert!(got.certificate.rank.anti_isostatic);
            assert!(!got.certificate.rank.sym_isostatic);
            assert!(!got.certificate.rank.inf_rigid);
            // Regression: the committed constants are the placement.
            let expected = triangle_base_reps();
            for (i, want) in expected.iter().enumerate() {
                assert_eq!(got.framework.normalized_point(2 * i), want);
            }
        }
    }

    #[test]
    fn the_frozen_k4_placement_certifies_every_signing() {
        for signing_bits in 0..16u8 {
            let signing: [Sign; 4] = std::array::from_fn(|i| {
                if signing_bits & (1 << i) == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            });
            let seq = ConstructionSequence {
                mode: Mode::AntiSymmetric,
                base: Base::K4PlusParallelEdge {
                    orbits: names("v"),
                    edge_ids: names("e"),
                    signing,
                },
                moves: vec![],
            };
            let got = realize(&seq, &QuadNorm::linf()).unwrap();
            assert!(got.certificate.rank.anti_isostatic);
            assert!(!got.certificate.rank.inf_rigid);
        }
    }

    #[test]
    fn a_handwritten_symmetric_sequence_realizes_with_every_h_move() {
        // Loop base; H1c hangs a loop-plus-edge orbit on it; H1b doubles
        // up; H1a spans two orbits; H2a subdivides an edge; H2c subdivides
        // a loop.
        let seq = ConstructionSequence {
            mode: Mode::Symmetric,
            base: Base::UnbalancedLoop {
                orbit: "v0".into(),
                edge_id: "e0".into(),
            },
            moves: vec![
                Move::H1c {
                    new_orbit: "v1".into(),
                    loop_id: "e1".into(),
                    e: NewEdge {
                        id: "e2".into(),
                        to: "v0".into(),
                        gain: Sign::Plus,
                    },
                },
                Move::H1b {
                    new_orbit: "v2".into(),
                    to: "v1".into(),
                    plus_id: "e3".into(),
                    minus_id: "e4".into(),
                },
                Move::H1a {
                    new_orbit: "v3".into(),
                    e1: NewEdge {
                        id: "e5".into(),
                        to: "v2".into(),
                        gain: Sign::Minus,
                    },
                    e2: NewEdge {
                        id: "e6".into(),
                        to: "v0".into(),
                        gain: Sign::Plus,
                    },
                },
                Move::H2a {
                    removed: "e5".into(),
                    new_orbit: "v4".into(),
                    e1: NewEdge {
                        id: "e7".into(),
                        to: "v3".into(),
                        gain: Sign::Plus,
                    },
                    e2: NewEdge {
                        id: "e8".into(),
                        to: "v2".into(),
                        gain: Sign::Minus,
                    },
                    e3: NewEdge {
                        id: "e9".into(),
                        to: "v1".into(),
                        gain: Sign::Plus,
                    },
                },
                Move::H2c {
                    removed: "e1".into(),
                    new_orbit: "v5".into(),
                    e1: NewEdge {
                        id: "e10".into(),
                        to: "v1".into(),
                        gain: Sign::Plus,
                    },
                    e2: NewEdge {
                        id: "e11".into(),
                        to: "v1".into(),
                        gain: Sign::Minus,
                    },
                    e3: NewEdge {
                        id: "e12".into(),
                        to: "v4".into(),
                        gain: Sign::Minus,
                    },
                },
            ],
        };
        let got = realize(&seq, &QuadNorm::linf()).unwrap();
        assert_eq!(got.framework.quotient().n_orbits(), 6);
        assert!(got.certificate.rank.sym_isostatic);
        assert!(got.certificate.combinatorial.sym_isostatic);
        assert!(got.certificate.all_agree());
    }

    #[test]
    fn blowing_up_and_splitting_realize_with_switched_parameters() {
        // The loop blows up into the four-orbit cluster (loop re-entering
        // as the internal negative edge), one cluster orbit splits along a
        // cluster edge with a switched triangle gain, and the switched
        // triangle edge is subdivided.
        let seq = ConstructionSequence {
            mode: Mode::Symmetric,
            base: Base::UnbalancedLoop {
                orbit: "v0".into(),
                edge_id: "e0".into(),
            },
            moves: vec![
                Move::VertexToK4 {
                    removed_orbit: "v0".into(),
                    k4: names("k"),
                    k4_edge_ids: names("m"),
                    k4_signing: [Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus],
                    reattach: vec![("e0".into(), crate::moves::K4Target::Internal(0, 1))],
                },
                Move::EdgeToK3 {
                    split: "k2".into(),
                    removed: "m5".into(),
                    v0: "w0".into(),
                    v1: "w1".into(),
                    t01_gain: Sign::Minus,
                    t01: "t0".into(),
                    t0u: "t1".into(),
                    t1u: "t2".into(),
                    reattach: vec![("m1".into(), 0), ("m3".into(), 1)],
                },
                Move::H2b {
                    removed: "t0".into(),
                    new_orbit: "z".into(),
                    e1: NewEdge {
                        id: "s0".into(),
                        to: "w0".into(),
                        gain: Sign::Plus,
                    },
                    e2: NewEdge {
                        id: "s1".into(),
                        to: "w1".into(),
                        gain: Sign::Minus,
                    },
                    e3: NewEdge {
                        id: "s2".into(),
                        to: "w0".into(),
                        gain: Sign::Minus,
                    },
                },
            ],
        };
        let got = realize(&seq, &QuadNorm::linf()).unwrap();
        assert_eq!(got.framework.quotient().n_orbits(), 6);
        assert!(got.certificate.rank.sym_isostatic);
        assert!(got.certificate.all_agree());
    }

    #[test]
    fn joining_two_triangle_pieces_gives_twelve_joints() {
        let seq = ConstructionSequence {
            mode: Mode::AntiSymmetric,
            base: Base::TwoK3MinusEdge {
                orbits: names("a"),
                edge_ids: names("e"),
                ab_gain: Sign::Plus,
            },
            moves: vec![Move::K3Join {
                orbits: names("b"),
                edge_ids: names("f"),
                ab_gain: Sign::Minus,
                attach_from: 1,
                attach_to: "a0".into(),
                attach_gain: Sign::Plus,
            }],
        };
        let got = realize(&seq, &QuadNorm::linf()).unwrap();
        assert_eq!(got.framework.covering().n_vertices(), 12);
        assert!(got.certificate.rank.anti_isostatic);
        assert!(got.certificate.combinatorial.anti_isostatic);
    }

    #[test]
    fn the_graph_join_realizes_an_arbitrary_tight_piece() {
        // Join a second triangle piece through the generalized move (the
        // piece is handed over as a raw graph, not as a fresh base copy).
        let piece = two_k3_minus_edge_base(&names::<3>("b"), &names::<5>("f"), Sign::Plus);
        let seq = ConstructionSequence {
            mode: Mode::AntiSymmetric,
            base: Base::TwoK3MinusEdge {
                orbits: names("a"),
                edge_ids: names("e"),
                ab_gain: Sign::Plus,
            },
            moves: vec![Move::GraphJoin {
                piece_orbits: piece.orbits().to_vec(),
                piece_edges: piece
                    .edges()
                    .iter()
                    .map(|e| {
                        (
                            e.id.clone(),
                            piece.orbit_name(e.u).to_string(),
                            piece.orbit_name(e.v).to_string(),
                            e.gain,
                        )
                    })
                    .collect(),
                join_id: "join".into(),
                join_from: "b2".into(),
                join_to: "a2".into(),
                join_gain: Sign::Minus,
            }],
        };
        let got = realize(&seq, &QuadNorm::linf()).unwrap();
        assert_eq!(got.framework.quotient().n_orbits(), 6);
        assert!(got.certificate.rank.anti_isostatic);
    }

    #[test]
    fn extracted_sequences_of_random_tight_graphs_realize_in_their_mode() {
        let mut rand = rng(23);
        for case in 0..10 {
            let mode = if case % 2 == 0 {
                Mode::Symmetric
            } else {
                Mode::AntiSymmetric
            };
            let target = match mode {
                Mode::Symmetric => 1 + case % 4,
                Mode::AntiSymmetric => 3 + case % 2,
            };
            let tight = random_gain_tight(&mut rand, mode, target);
            let seq = extract_sequence(&tight, mode).unwrap();
            let got = realize(&seq, &QuadNorm::linf()).unwrap();
            match mode {
                Mode::Symmetric => assert!(got.certificate.rank.sym_isostatic),
                Mode::AntiSymmetric => assert!(got.certificate.rank.anti_isostatic),
            }
            // The realized framework lives on the extracted (= original)
            // quotient, names, ids and gains included.
            assert!(crate::moves::same_named_graph(
                got.framework.quotient(),
                &tight
            ));
        }
    }

    #[test]
    fn norm_transport_changes_joints_but_not_the_report() {
        let mut rand = rng(5);
        let tight = random_gain_tight(&mut rand, Mode::Symmetric, 3);
        let seq = extract_sequence(&tight, Mode::Symmetric).unwrap();
        let in_linf = realize(&seq, &QuadNorm::linf()).unwrap();
        let in_l1 = realize(&seq, &QuadNorm::l1()).unwrap();
        let n = in_linf.framework.covering().n_vertices();
        for v in 0..n {
            assert_eq!(
                in_linf.framework.normalized_point(v),
                in_l1.framework.normalized_point(v),
                "normalized placements are norm-independent"
            );
        }
        assert_ne!(
            in_linf.framework.point(0),
            in_l1.framework.point(0),
            "user coordinates go through the inverse normalizing map"
        );
        assert_eq!(
            in_linf.certificate.combinatorial.colours.quotient_colours,
            in_l1.certificate.combinatorial.colours.quotient_colours
        );
        assert!(in_l1.certificate.rank.sym_isostatic);
    }

    #[test]
    fn random_realize_certifies_the_loop_and_the_triangle() {
        let loop_graph = crate::moves::unbalanced_loop_base("v0", "e0");
        let got = random_realize(
            &loop_graph,
            RigidityGoal::Symmetric,
            &QuadNorm::linf(),
            1,
            16,
        )
        .unwrap();
        assert_eq!(got.attempts, 1, "one joint off the mirror suffices");
        assert!(got.certificate.rank.sym_isostatic);

        let triangle = two_k3_minus_edge_base(&names::<3>("a"), &names::<5>("e"), Sign::Plus);
        let got = random_realize(
            &triangle,
            RigidityGoal::AntiSymmetric,
            &QuadNorm::l1(),
            7,
            64,
        )
        .unwrap();
        assert!(got.certificate.rank.anti_isostatic);
    }

    #[test]
    fn random_realize_cannot_make_the_triangle_rigid() {
        // Five orbit edges cannot reach covering rank 10 = 2·6 − 2: the
        // triangle piece is anti-isostatic but never infinitesimally rigid.
        let triangle = two_k3_minus_edge_base(&names::<3>("a"), &names::<5>("e"), Sign::Plus);
        let err = random_realize(
            &triangle,
            RigidityGoal::InfinitesimallyRigid,
            &QuadNorm::linf(),
            3,
            20,
        )
        .unwrap_err();
        assert!(matches!(err, RealizeError::Exhausted { attempts: 20 }));
    }
}
