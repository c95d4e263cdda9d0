//! JSON documents for quotient graphs, frameworks, construction sequences
//! and analysis reports.
//!
//! Parsing is strict. Unknown fields, missing fields, wrong types, dangling
//! orbit references and malformed rationals are *schema* errors and carry
//! the JSON path of the offending value (`$.edges[1].gain`). Inputs that
//! are well-shaped but invalid as mathematical objects — a joint on the
//! mirror, a degenerate norm, an ill-positioned edge — surface as *domain*
//! errors. Command-line tools map the two kinds to different exit codes.
//!
//! Serialization is deterministic: a value always renders to the same
//! bytes, with object keys in a fixed documented order. Rationals are
//! strings (`"3/2"`, `"-1"`), gains are the integers `1` and `-1`.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use crate::characterize::{CharacterizationReport, Crosscheck};
use crate::geometry::{Colour, QuadNorm, SymmetricFramework, Vec2};
use crate::moves::{Base, ConstructionSequence, K4Target, Mode, Move, NewEdge};
use crate::quotient::{GainEdge, Sign, SignedQuotientGraph, SubgraphClassification};
use crate::rational::{format_rational, parse_rational};
use crate::realize::RealizationResult;
use crate::rigidity::{MatrixSummary, RigidityReport};
use crate::sparsity::{SparsityReport, ViolationKind};
use crate::Q;

/// Failure to interpret a JSON document.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum JsonError {
    /// The document does not match the format: wrong shape, wrong type,
    /// unknown or missing field, malformed rational, dangling reference.
    /// `path` locates the offending value (`$.edges[0].u`).
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    /// The document is well-shaped but describes an invalid object.
    #[error("{0}")]
    Domain(String),
}

impl JsonError {
    pub fn is_schema(&self) -> bool {
        matches!(self, JsonError::Schema { .. })
    }
}

fn domain(err: impl std::fmt::Display) -> JsonError {
    JsonError::Domain(err.to_string())
}

/// A value together with the JSON path that reaches it, for diagnostics.
#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Cursor<'a> {
    pub fn root(value: &'a Value) -> Self {
        Cursor {
            value,
            path: "$".to_string(),
        }
    }

    fn err(&self, message: impl Into<String>) -> JsonError {
        JsonError::Schema {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    /// Demand an object whose every key is in `allowed`.
    fn object(&self, allowed: &[&str]) -> Result<&'a Map<String, Value>, JsonError> {
        let map = self
            .value
            .as_object()
            .ok_or_else(|| self.err("expected an object"))?;
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.err(format!("unknown field {key:?}")));
            }
        }
        Ok(map)
    }

    /// Descend into a required object field.
    fn field(&self, name: &str) -> Result<Cursor<'a>, JsonError> {
        match self.value.get(name) {
            Some(value) => Ok(Cursor {
                value,
                path: format!("{}.{}", self.path, name),
            }),
            None => Err(self.err(format!("missing field {name:?}"))),
        }
    }

    fn array(&self) -> Result<Vec<Cursor<'a>>, JsonError> {
        let items = self
            .value
            .as_array()
            .ok_or_else(|| self.err("expected an array"))?;
        Ok(items
            .iter()
            .enumerate()
            .map(|(i, value)| Cursor {
                value,
                path: format!("{}[{}]", self.path, i),
            })
            .collect())
    }

    fn fixed_array<const N: usize>(&self) -> Result<[Cursor<'a>; N], JsonError> {
        let items = self.array()?;
        let found = items.len();
        items
            .try_into()
            .map_err(|_| self.err(format!("expected exactly {N} elements, found {found}")))
    }

    fn str(&self) -> Result<&'a str, JsonError> {
        self.value
            .as_str()
            .ok_or_else(|| self.err("expected a string"))
    }

    /// A non-empty name (orbit or edge identifier).
    fn name(&self) -> Result<String, JsonError> {
        let s = self.str()?;
        if s.is_empty() {
            return Err(self.err("name must be non-empty"));
        }
        Ok(s.to_string())
    }

    fn index(&self, bound: u8) -> Result<u8, JsonError> {
        let n = self
            .value
            .as_u64()
            .filter(|&n| n < u64::from(bound))
            .ok_or_else(|| self.err(format!("expected an integer in 0..{bound}")))?;
        Ok(n as u8)
    }

    fn sign(&self) -> Result<Sign, JsonError> {
        match self.value.as_i64() {
            Some(1) => Ok(Sign::Plus),
            Some(-1) => Ok(Sign::Minus),
            _ => Err(self.err("expected the gain 1 or -1")),
        }
    }

    fn rational(&self) -> Result<Q, JsonError> {
        let s = self.str()?;
        parse_rational(s).map_err(|message| self.err(message))
    }

    fn vec2(&self) -> Result<Vec2, JsonError> {
        let [x, y] = self.fixed_array::<2>()?;
        Ok(Vec2::new(x.rational()?, y.rational()?))
    }
}

fn value_from_text(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Schema {
        path: "$".to_string(),
        message: format!("invalid JSON: {e}"),
    })
}

/// Render a document with a trailing newline; the byte output is a
/// deterministic function of the value.
pub fn to_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializing JSON cannot fail");
    text.push('\n');
    text
}

/// Render a report on a single line with a trailing newline.
pub fn to_compact(value: &Value) -> String {
    let mut text = serde_json::to_string(value).expect("serializing JSON cannot fail");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Quotient graphs
// ---------------------------------------------------------------------------

/// Parse a signed quotient graph document:
/// `{"orbits": ["a", "b"], "edges": [{"id": "e1", "u": "a", "v": "b", "gain": 1}]}`.
pub fn parse_quotient(text: &str) -> Result<SignedQuotientGraph, JsonError> {
    let value = value_from_text(text)?;
    quotient_from_value(&Cursor::root(&value))
}

pub fn quotient_from_value(cur: &Cursor) -> Result<SignedQuotientGraph, JsonError> {
    cur.object(&["orbits", "edges"])?;
    let mut orbits = Vec::new();
    let mut orbit_index = std::collections::BTreeMap::new();
    for oc in cur.field("orbits")?.array()? {
        let name = oc.name()?;
        if orbit_index.insert(name.clone(), orbits.len()).is_some() {
            return Err(oc.err(format!("duplicate orbit {name:?}")));
        }
        orbits.push(name);
    }
    let mut edges = Vec::new();
    let mut ids = BTreeSet::new();
    let mut parallel = BTreeSet::new();
    for ec in cur.field("edges")?.array()? {
        ec.object(&["id", "u", "v", "gain"])?;
        let idc = ec.field("id")?;
        let id = idc.name()?;
        if !ids.insert(id.clone()) {
            return Err(idc.err(format!("duplicate edge id {id:?}")));
        }
        let endpoint = |key: &str| -> Result<usize, JsonError> {
            let fc = ec.field(key)?;
            let orbit = fc.name()?;
            orbit_index
                .get(&orbit)
                .copied()
                .ok_or_else(|| fc.err(format!("unknown orbit {orbit:?}")))
        };
        let u = endpoint("u")?;
        let v = endpoint("v")?;
        let gain = ec.field("gain")?.sign()?;
        if u == v && gain == Sign::Plus {
            return Err(ec
                .field("gain")?
                .err("a loop must carry gain -1".to_string()));
        }
        if !parallel.insert((u.min(v), u.max(v), gain)) {
            return Err(ec.err("parallel edges must carry distinct gains".to_string()));
        }
        edges.push(GainEdge { id, u, v, gain });
    }
    SignedQuotientGraph::new(orbits, edges).map_err(|e| JsonError::Schema {
        path: "$".to_string(),
        message: e.to_string(),
    })
}

pub fn quotient_to_value(q: &SignedQuotientGraph) -> Value {
    let edges: Vec<Value> = q
        .edges()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "u": q.orbit_name(e.u),
                "v": q.orbit_name(e.v),
                "gain": e.gain.as_i8(),
            })
        })
        .collect();
    json!({"orbits": q.orbits(), "edges": edges})
}

// ---------------------------------------------------------------------------
// Norms and frameworks
// ---------------------------------------------------------------------------

/// Parse a norm document: `{"F1": ["0", "1"], "F2": ["1", "0"]}` with the
/// two facet functionals as rational pairs.
pub fn parse_norm(text: &str) -> Result<QuadNorm, JsonError> {
    let value = value_from_text(text)?;
    norm_from_value(&Cursor::root(&value))
}

pub fn norm_from_value(cur: &Cursor) -> Result<QuadNorm, JsonError> {
    cur.object(&["F1", "F2"])?;
    let f1 = cur.field("F1")?.vec2()?;
    let f2 = cur.field("F2")?.vec2()?;
    QuadNorm::new(f1, f2).map_err(domain)
}

pub fn norm_to_value(norm: &QuadNorm) -> Value {
    let (f1, f2) = norm.functionals();
    json!({"F1": vec2_to_value(f1), "F2": vec2_to_value(f2)})
}

pub fn rational_to_value(x: &Q) -> Value {
    Value::String(format_rational(x))
}

pub fn vec2_to_value(v: &Vec2) -> Value {
    json!([format_rational(&v.x), format_rational(&v.y)])
}

/// Parse a framework document: a norm, a quotient graph, and one
/// representative joint per orbit, keyed by orbit name:
/// `{"norm": {...}, "quotient": {...}, "reps": {"a": ["3/2", "1"], ...}}`.
pub fn parse_framework(text: &str) -> Result<SymmetricFramework, JsonError> {
    let value = value_from_text(text)?;
    framework_from_value(&Cursor::root(&value))
}

pub fn framework_from_value(cur: &Cursor) -> Result<SymmetricFramework, JsonError> {
    cur.object(&["norm", "quotient", "reps"])?;
    let norm = norm_from_value(&cur.field("norm")?)?;
    let quotient = quotient_from_value(&cur.field("quotient")?)?;
    let reps_cur = cur.field("reps")?;
    let map = reps_cur
        .value
        .as_object()
        .ok_or_else(|| reps_cur.err("expected an object keyed by orbit name"))?;
    for key in map.keys() {
        if quotient.orbit_index(key).is_err() {
            return Err(JsonError::Schema {
                path: format!("{}.{}", reps_cur.path, key),
                message: format!("unknown orbit {key:?}"),
            });
        }
    }
    let mut reps = Vec::with_capacity(quotient.n_orbits());
    for name in quotient.orbits() {
        let value = map
            .get(name)
            .ok_or_else(|| reps_cur.err(format!("missing representative for orbit {name:?}")))?;
        let rep_cur = Cursor {
            value,
            path: format!("{}.{}", reps_cur.path, name),
        };
        reps.push(rep_cur.vec2()?);
    }
    SymmetricFramework::new(norm, quotient, reps).map_err(domain)
}

pub fn framework_to_value(fw: &SymmetricFramework) -> Value {
    let mut reps = Map::new();
    for (i, name) in fw.quotient().orbits().iter().enumerate() {
        reps.insert(name.clone(), vec2_to_value(fw.rep_point(i)));
    }
    json!({
        "norm": norm_to_value(fw.norm()),
        "quotient": quotient_to_value(fw.quotient()),
        "reps": Value::Object(reps),
    })
}

// ---------------------------------------------------------------------------
// Construction sequences
// ---------------------------------------------------------------------------

/// Parse a construction-sequence document:
/// `{"mode": "symmetric", "base": {"kind": ...}, "moves": [{"move": ...}]}`.
/// Every move carries its full parameters, so the sequence replays to a
/// unique graph.
pub fn parse_sequence(text: &str) -> Result<ConstructionSequence, JsonError> {
    let value = value_from_text(text)?;
    sequence_from_value(&Cursor::root(&value))
}

pub fn sequence_from_value(cur: &Cursor) -> Result<ConstructionSequence, JsonError> {
    cur.object(&["mode", "base", "moves"])?;
    let mode_cur = cur.field("mode")?;
    let mode = match mode_cur.str()? {
        "symmetric" => Mode::Symmetric,
        "anti-symmetric" => Mode::AntiSymmetric,
        other => {
            return Err(mode_cur.err(format!(
                "unknown mode {other:?}, expected \"symmetric\" or \"anti-symmetric\""
            )))
        }
    };
    let base = base_from_value(&cur.field("base")?)?;
    let mut moves = Vec::new();
    for mc in cur.field("moves")?.array()? {
        moves.push(move_from_value(&mc)?);
    }
    Ok(ConstructionSequence { mode, base, moves })
}

fn names<const N: usize>(cur: &Cursor) -> Result<[String; N], JsonError> {
    let items = cur.fixed_array::<N>()?;
    let mut out = Vec::with_capacity(N);
    for item in &items {
        out.push(item.name()?);
    }
    Ok(out.try_into().expect("length checked"))
}

fn signs<const N: usize>(cur: &Cursor) -> Result<[Sign; N], JsonError> {
    let items = cur.fixed_array::<N>()?;
    let mut out = Vec::with_capacity(N);
    for item in &items {
        out.push(item.sign()?);
    }
    Ok(out.try_into().expect("length checked"))
}

fn base_from_value(cur: &Cursor) -> Result<Base, JsonError> {
    let kind_cur = cur.field("kind")?;
    match kind_cur.str()? {
        "unbalanced_loop" => {
            cur.object(&["kind", "orbit", "edge_id"])?;
            Ok(Base::UnbalancedLoop {
                orbit: cur.field("orbit")?.name()?,
                edge_id: cur.field("edge_id")?.name()?,
            })
        }
        "two_k3_minus_edge" => {
            cur.object(&["kind", "orbits", "edge_ids", "ab_gain"])?;
            Ok(Base::TwoK3MinusEdge {
                orbits: names::<3>(&cur.field("orbits")?)?,
                edge_ids: names::<5>(&cur.field("edge_ids")?)?,
                ab_gain: cur.field("ab_gain")?.sign()?,
            })
        }
        "k4_plus_parallel_edge" => {
            cur.object(&["kind", "orbits", "edge_ids", "signing"])?;
            Ok(Base::K4PlusParallelEdge {
                orbits: names::<4>(&cur.field("orbits")?)?,
                edge_ids: names::<7>(&cur.field("edge_ids")?)?,
                signing: signs::<4>(&cur.field("signing")?)?,
            })
        }
        other => Err(kind_cur.err(format!("unknown base kind {other:?}"))),
    }
}

fn base_to_value(base: &Base) -> Value {
    match base {
        Base::UnbalancedLoop { orbit, edge_id } => {
            json!({"kind": "unbalanced_loop", "orbit": orbit, "edge_id": edge_id})
        }
        Base::TwoK3MinusEdge {
            orbits,
            edge_ids,
            ab_gain,
        } => json!({
            "kind": "two_k3_minus_edge",
            "orbits": orbits.as_slice(),
            "edge_ids": edge_ids.as_slice(),
            "ab_gain": ab_gain.as_i8(),
        }),
        Base::K4PlusParallelEdge {
            orbits,
            edge_ids,
            signing,
        } => json!({
            "kind": "k4_plus_parallel_edge",
            "orbits": orbits.as_slice(),
            "edge_ids": edge_ids.as_slice(),
            "signing": signing.iter().map(|s| s.as_i8()).collect::<Vec<_>>(),
        }),
    }
}

fn new_edge_from_value(cur: &Cursor) -> Result<NewEdge, JsonError> {
    cur.object(&["id", "to", "gain"])?;
    Ok(NewEdge {
        id: cur.field("id")?.name()?,
        to: cur.field("to")?.name()?,
        gain: cur.field("gain")?.sign()?,
    })
}

fn new_edge_to_value(e: &NewEdge) -> Value {
    json!({"id": e.id, "to": e.to, "gain": e.gain.as_i8()})
}

fn k4_target_from_value(cur: &Cursor) -> Result<K4Target, JsonError> {
    let map = cur
        .value
        .as_object()
        .ok_or_else(|| cur.err("expected an object"))?;
    if map.contains_key("orbit") {
        cur.object(&["orbit"])?;
        Ok(K4Target::Orbit(cur.field("orbit")?.index(4)?))
    } else if map.contains_key("internal") {
        cur.object(&["internal"])?;
        let [i, j] = cur.field("internal")?.fixed_array::<2>()?;
        Ok(K4Target::Internal(i.index(4)?, j.index(4)?))
    } else {
        Err(cur.err(r#"expected {"orbit": i} or {"internal": [i, j]}"#))
    }
}

fn k4_target_to_value(t: &K4Target) -> Value {
    match t {
        K4Target::Orbit(i) => json!({"orbit": i}),
        K4Target::Internal(i, j) => json!({"internal": [i, j]}),
    }
}

fn move_from_value(cur: &Cursor) -> Result<Move, JsonError> {
    let name_cur = cur.field("move")?;
    match name_cur.str()? {
        "H1a" => {
            cur.object(&["move", "new_orbit", "e1", "e2"])?;
            Ok(Move::H1a {
                new_orbit: cur.field("new_orbit")?.name()?,
                e1: new_edge_from_value(&cur.field("e1")?)?,
                e2: new_edge_from_value(&cur.field("e2")?)?,
            })
        }
        "H1b" => {
            cur.object(&["move", "new_orbit", "to", "plus_id", "minus_id"])?;
            Ok(Move::H1b {
                new_orbit: cur.field("new_orbit")?.name()?,
                to: cur.field("to")?.name()?,
                plus_id: cur.field("plus_id")?.name()?,
                minus_id: cur.field("minus_id")?.name()?,
            })
        }
        "H1c" => {
            cur.object(&["move", "new_orbit", "loop_id", "e"])?;
            Ok(Move::H1c {
                new_orbit: cur.field("new_orbit")?.name()?,
                loop_id: cur.field("loop_id")?.name()?,
                e: new_edge_from_value(&cur.field("e")?)?,
            })
        }
        kind @ ("H2a" | "H2b" | "H2c") => {
            cur.object(&["move", "removed", "new_orbit", "e1", "e2", "e3"])?;
            let removed = cur.field("removed")?.name()?;
            let new_orbit = cur.field("new_orbit")?.name()?;
            let e1 = new_edge_from_value(&cur.field("e1")?)?;
            let e2 = new_edge_from_value(&cur.field("e2")?)?;
            let e3 = new_edge_from_value(&cur.field("e3")?)?;
            Ok(match kind {
                "H2a" => Move::H2a {
                    removed,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                },
                "H2b" => Move::H2b {
                    removed,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                },
                _ => Move::H2c {
                    removed,
                    new_orbit,
                    e1,
                    e2,
                    e3,
                },
            })
        }
        "EdgeToK3" => {
            cur.object(&[
                "move", "split", "removed", "v0", "v1", "t01_gain", "t01", "t0u", "t1u",
                "reattach",
            ])?;
            let mut reattach = Vec::new();
            for rc in cur.field("reattach")?.array()? {
                let [id, side] = rc.fixed_array::<2>()?;
                reattach.push((id.name()?, side.index(2)?));
            }
            Ok(Move::EdgeToK3 {
                split: cur.field("split")?.name()?,
                removed: cur.field("removed")?.name()?,
                v0: cur.field("v0")?.name()?,
                v1: cur.field("v1")?.name()?,
                t01_gain: cur.field("t01_gain")?.sign()?,
                t01: cur.field("t01")?.name()?,
                t0u: cur.field("t0u")?.name()?,
                t1u: cur.field("t1u")?.name()?,
                reattach,
            })
        }
        "VertexToK4" => {
            cur.object(&[
                "move",
                "removed_orbit",
                "k4",
                "k4_edge_ids",
                "k4_signing",
                "reattach",
            ])?;
            let mut reattach = Vec::new();
            for rc in cur.field("reattach")?.array()? {
                let [id, target] = rc.fixed_array::<2>()?;
                reattach.push((id.name()?, k4_target_from_value(&target)?));
            }
            Ok(Move::VertexToK4 {
                removed_orbit: cur.field("removed_orbit")?.name()?,
                k4: names::<4>(&cur.field("k4")?)?,
                k4_edge_ids: names::<6>(&cur.field("k4_edge_ids")?)?,
                k4_signing: signs::<4>(&cur.field("k4_signing")?)?,
                reattach,
            })
        }
        "K3Join" => {
            cur.object(&[
                "move",
                "orbits",
                "edge_ids",
                "ab_gain",
                "attach_from",
                "attach_to",
                "attach_gain",
            ])?;
            Ok(Move::K3Join {
                orbits: names::<3>(&cur.field("orbits")?)?,
                edge_ids: names::<6>(&cur.field("edge_ids")?)?,
                ab_gain: cur.field("ab_gain")?.sign()?,
                attach_from: cur.field("attach_from")?.index(3)?,
                attach_to: cur.field("attach_to")?.name()?,
                attach_gain: cur.field("attach_gain")?.sign()?,
            })
        }
        "GraphJoin" => {
            cur.object(&[
                "move",
                "piece_orbits",
                "piece_edges",
                "join_id",
                "join_from",
                "join_to",
                "join_gain",
            ])?;
            let mut piece_orbits = Vec::new();
            for oc in cur.field("piece_orbits")?.array()? {
                piece_orbits.push(oc.name()?);
            }
            let mut piece_edges = Vec::new();
            for ec in cur.field("piece_edges")?.array()? {
                let [id, u, v, gain] = ec.fixed_array::<4>()?;
                piece_edges.push((id.name()?, u.name()?, v.name()?, gain.sign()?));
            }
            Ok(Move::GraphJoin {
                piece_orbits,
                piece_edges,
                join_id: cur.field("join_id")?.name()?,
                join_from: cur.field("join_from")?.name()?,
                join_to: cur.field("join_to")?.name()?,
                join_gain: cur.field("join_gain")?.sign()?,
            })
        }
        other => Err(name_cur.err(format!("unknown move {other:?}"))),
    }
}

fn move_to_value(mv: &Move) -> Value {
    match mv {
        Move::H1a { new_orbit, e1, e2 } => json!({
            "move": "H1a",
            "new_orbit": new_orbit,
            "e1": new_edge_to_value(e1),
            "e2": new_edge_to_value(e2),
        }),
        Move::H1b {
            new_orbit,
            to,
            plus_id,
            minus_id,
        } => json!({
            "move": "H1b",
            "new_orbit": new_orbit,
            "to": to,
            "plus_id": plus_id,
            "minus_id": minus_id,
        }),
        Move::H1c {
            new_orbit,
            loop_id,
            e,
        } => json!({
            "move": "H1c",
            "new_orbit": new_orbit,
            "loop_id": loop_id,
            "e": new_edge_to_value(e),
        }),
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
        } => json!({
            "move": mv.name(),
            "removed": removed,
            "new_orbit": new_orbit,
            "e1": new_edge_to_value(e1),
            "e2": new_edge_to_value(e2),
            "e3": new_edge_to_value(e3),
        }),
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
        } => json!({
            "move": "EdgeToK3",
            "split": split,
            "removed": removed,
            "v0": v0,
            "v1": v1,
            "t01_gain": t01_gain.as_i8(),
            "t01": t01,
            "t0u": t0u,
            "t1u": t1u,
            "reattach": reattach
                .iter()
                .map(|(id, side)| json!([id, side]))
                .collect::<Vec<_>>(),
        }),
        Move::VertexToK4 {
            removed_orbit,
            k4,
            k4_edge_ids,
            k4_signing,
            reattach,
        } => json!({
            "move": "VertexToK4",
            "removed_orbit": removed_orbit,
            "k4": k4.as_slice(),
            "k4_edge_ids": k4_edge_ids.as_slice(),
            "k4_signing": k4_signing.iter().map(|s| s.as_i8()).collect::<Vec<_>>(),
            "reattach": reattach
                .iter()
                .map(|(id, target)| json!([id, k4_target_to_value(target)]))
                .collect::<Vec<_>>(),
        }),
        Move::K3Join {
            orbits,
            edge_ids,
            ab_gain,
            attach_from,
            attach_to,
            attach_gain,
        } => json!({
            "move": "K3Join",
            "orbits": orbits.as_slice(),
            "edge_ids": edge_ids.as_slice(),
            "ab_gain": ab_gain.as_i8(),
            "attach_from": attach_from,
            "attach_to": attach_to,
            "attach_gain": attach_gain.as_i8(),
        }),
        Move::GraphJoin {
            piece_orbits,
            piece_edges,
            join_id,
            join_from,
            join_to,
            join_gain,
        } => json!({
            "move": "GraphJoin",
            "piece_orbits": piece_orbits,
            "piece_edges": piece_edges
                .iter()
                .map(|(id, u, v, gain)| json!([id, u, v, gain.as_i8()]))
                .collect::<Vec<_>>(),
            "join_id": join_id,
            "join_from": join_from,
            "join_to": join_to,
            "join_gain": join_gain.as_i8(),
        }),
    }
}

pub fn sequence_to_value(seq: &ConstructionSequence) -> Value {
    json!({
        "mode": seq.mode.name(),
        "base": base_to_value(&seq.base),
        "moves": seq.moves.iter().map(move_to_value).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

pub fn matrix_summary_to_value(s: &MatrixSummary) -> Value {
    json!({"rows": s.rows, "cols": s.cols, "rank": s.rank, "nullity": s.nullity})
}

pub fn rigidity_report_to_value(r: &RigidityReport) -> Value {
    json!({
        "covering": matrix_summary_to_value(&r.covering),
        "sym": matrix_summary_to_value(&r.sym),
        "anti": matrix_summary_to_value(&r.anti),
        "trivial_dims": {
            "covering": r.trivial_dims.0,
            "sym": r.trivial_dims.1,
            "anti": r.trivial_dims.2,
        },
        "has_fixed_bars": r.has_fixed_bars,
        "inf_rigid": r.inf_rigid,
        "isostatic": r.isostatic,
        "sym_inf_rigid": r.sym_inf_rigid,
        "sym_isostatic": r.sym_isostatic,
        "anti_inf_rigid": r.anti_inf_rigid,
        "anti_isostatic": r.anti_isostatic,
    })
}

fn colour_name(c: Colour) -> &'static str {
    match c {
        Colour::F1 => "F1",
        Colour::F2 => "F2",
    }
}

fn edge_ids(q: &SignedQuotientGraph, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&k| q.edges()[k].id.clone()).collect()
}

fn classification_to_value(c: &SubgraphClassification, q: &SignedQuotientGraph) -> Value {
    json!({
        "spanning": c.spanning,
        "connected": c.connected,
        "balanced": c.balanced,
        "tree": c.tree,
        "unbalanced_map_graph": c.unbalanced_map_graph,
        "contains_spanning_unbalanced_map_graph": c.contains_spanning_unbalanced_map_graph,
        "witness": c.certificate.as_ref().map(|es| edge_ids(q, es)),
    })
}

pub fn characterization_to_value(c: &CharacterizationReport, q: &SignedQuotientGraph) -> Value {
    let mut colours = Map::new();
    for (k, edge) in q.edges().iter().enumerate() {
        colours.insert(
            edge.id.clone(),
            Value::String(colour_name(c.colours.quotient_colours[k]).to_string()),
        );
    }
    json!({
        "colours": Value::Object(colours),
        "f1": classification_to_value(&c.f1, q),
        "f2": classification_to_value(&c.f2, q),
        "covering_f1_spanning_tree": c.covering_f1_spanning_tree,
        "covering_f2_spanning_tree": c.covering_f2_spanning_tree,
        "sym_isostatic": c.sym_isostatic,
        "anti_isostatic": c.anti_isostatic,
        "inf_rigid": c.inf_rigid,
        "isostatic": c.isostatic,
    })
}

pub fn crosscheck_to_value(c: &Crosscheck, q: &SignedQuotientGraph) -> Value {
    json!({
        "rank": rigidity_report_to_value(&c.rank),
        "combinatorial": characterization_to_value(&c.combinatorial, q),
        "sym_agree": c.sym_agree,
        "anti_agree": c.anti_agree,
        "rigid_agree": c.rigid_agree,
        "isostatic_agree": c.isostatic_agree,
        "all_agree": c.all_agree(),
    })
}

/// The CLI verdict `{"sparse": .., "tight": ..}`, with a `"witness"` field
/// naming the violating edge set when the graph is not sparse.
pub fn sparsity_report_to_value(r: &SparsityReport, q: &SignedQuotientGraph) -> Value {
    let tight = r.sparse && q.n_orbits() > 0 && q.n_edges() == r.variant.tight_count(q.n_orbits());
    let mut out = Map::new();
    out.insert("sparse".to_string(), json!(r.sparse));
    out.insert("tight".to_string(), json!(tight));
    if let Some(v) = &r.violation {
        out.insert(
            "witness".to_string(),
            json!({
                "kind": match v.kind {
                    ViolationKind::GeneralCount => "general_count",
                    ViolationKind::BalancedCount => "balanced_count",
                },
                "orbits": v.orbits.iter().map(|&i| q.orbit_name(i)).collect::<Vec<_>>(),
                "edges": edge_ids(q, &v.edges),
                "bound": v.bound,
            }),
        );
    }
    Value::Object(out)
}

pub fn realization_to_value(res: &RealizationResult) -> Value {
    json!({
        "framework": framework_to_value(&res.framework),
        "certificate": crosscheck_to_value(&res.certificate, res.framework.quotient()),
        "attempts": res.attempts,
        "shrink_steps": res.shrink_steps,
    })
}
