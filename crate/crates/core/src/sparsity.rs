//! Gain-sparsity counts on signed quotient graphs.
//!
//! A set `F` of gain edges with touched orbit set `V(F)` must satisfy
//! `|F| <= 2|V(F)| - 2` when `F` is balanced, and `|F| <= 2|V(F)| - 1`
//! (variant `(2,2,1)`) or `|F| <= 2|V(F)|` (variant `(2,2,0)`) in general.
//! A quotient graph is *gain-sparse* when every nonempty edge subset obeys
//! its bound, and *gain-tight* when additionally the whole edge set meets
//! the general bound with equality.
//!
//! Instead of enumerating all edge subsets, [`check_gain_sparsity`] walks
//! vertex subsets `W`: the full edge set inside `W` is the worst case for the
//! general bound, and the *maximum balanced subset* `mb(W)` of the edges
//! inside `W` is the worst case for the balanced bound. Checking the induced
//! subgraph's balance instead of `mb(W)` would be wrong: a large balanced
//! subset can hide inside an unbalanced induced subgraph whose general count
//! is fine (see the regression test with a trivially-signed near-complete
//! graph plus one negative parallel edge). `mb(W)` is found by enumerating
//! vertex signings, which is exact because a balanced subset is precisely a
//! subset realized by some signing.
//!
//! [`oracle_check_by_edge_subsets`] is the independent brute-force reference
//! over all edge subsets, usable for small graphs only.

use crate::quotient::{balance, GainEdge, Sign, SignedQuotientGraph};
use thiserror::Error;

/// Largest orbit count accepted by the vertex-subset checker.
pub const MAX_CHECK_ORBITS: usize = 20;
/// Largest edge count accepted by the edge-subset oracle.
pub const MAX_ORACLE_EDGES: usize = 18;

/// Which pair of counting rules to enforce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SparsityVariant {
    /// Balanced subsets `<= 2|W| - 2`, all subsets `<= 2|W| - 1`.
    TwoTwoOne,
    /// Balanced subsets `<= 2|W| - 2`, all subsets `<= 2|W|`.
    TwoTwoZero,
}

impl SparsityVariant {
    /// Bound on an arbitrary subset touching `w` orbits.
    pub fn general_bound(self, w: usize) -> usize {
        match self {
            SparsityVariant::TwoTwoOne => 2 * w - 1,
            SparsityVariant::TwoTwoZero => 2 * w,
        }
    }

    /// Bound on a balanced subset touching `w` orbits.
    pub fn balanced_bound(self, w: usize) -> usize {
        2 * w - 2
    }

    /// Edge count a tight graph on `n` orbits must have.
    pub fn tight_count(self, n: usize) -> usize {
        self.general_bound(n)
    }

    pub fn name(self) -> &'static str {
        match self {
            SparsityVariant::TwoTwoOne => "(2,2,1)",
            SparsityVariant::TwoTwoZero => "(2,2,0)",
        }
    }
}

/// Which counting rule a violating subset breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    GeneralCount,
    BalancedCount,
}

/// A subset certifying failure of a sparsity count.
#[derive(Clone, Debug)]
pub struct SparsityViolation {
    pub kind: ViolationKind,
    /// Orbits touched by the violating edge set, sorted.
    pub orbits: Vec<usize>,
    /// The violating edge set, sorted by edge index. For
    /// [`ViolationKind::BalancedCount`] this set is balanced.
    pub edges: Vec<usize>,
    /// The bound the edge set exceeds.
    pub bound: usize,
}

#[derive(Clone, Debug)]
pub struct SparsityReport {
    pub variant: SparsityVariant,
    pub sparse: bool,
    pub violation: Option<SparsityViolation>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SparsityError {
    #[error("sparsity check supports at most {max} orbits, got {found}")]
    TooManyOrbits { found: usize, max: usize },
    #[error("edge-subset oracle supports at most {max} edges, got {found}")]
    TooManyEdges { found: usize, max: usize },
}

/// Decide gain-sparsity by scanning vertex subsets.
///
/// Subsets are visited in size-then-lexicographic order and the first
/// violation is reported; on each subset the general count is tested before
/// the balanced count. Runs in `O(2^n)` subsets with an extra `O(2^|W|)`
/// signing enumeration on candidate subsets, so inputs are capped at
/// [`MAX_CHECK_ORBITS`] orbits.
pub fn check_gain_sparsity(
    q: &SignedQuotientGraph,
    variant: SparsityVariant,
) -> Result<SparsityReport, SparsityError> {
    let n = q.n_orbits();
    if n > MAX_CHECK_ORBITS {
        return Err(SparsityError::TooManyOrbits {
            found: n,
            max: MAX_CHECK_ORBITS,
        });
    }
    let edge_masks: Vec<u32> = q
        .edges()
        .iter()
        .map(|e| (1u32 << e.u) | (1u32 << e.v))
        .collect();
    for size in 1..=n {
        let mut w_mask: u32 = (1u32 << size) - 1;
        let last = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        while w_mask <= last {
            if let Some(v) = check_vertex_subset(q, variant, &edge_masks, w_mask) {
                return Ok(SparsityReport {
                    variant,
                    sparse: false,
                    violation: Some(v),
                });
            }
            // Gosper's hack: next mask with the same popcount.
            let c = w_mask & w_mask.wrapping_neg();
            let r = w_mask + c;
            if r == 0 {
                break;
            }
            w_mask = (((w_mask ^ r) >> 2) / c) | r;
            if w_mask & !last != 0 {
                break;
            }
        }
    }
    Ok(SparsityReport {
        variant,
        sparse: true,
        violation: None,
    })
}

fn check_vertex_subset(
    q: &SignedQuotientGraph,
    variant: SparsityVariant,
    edge_masks: &[u32],
    w_mask: u32,
) -> Option<SparsityViolation> {
    let w = w_mask.count_ones() as usize;
    let inside: Vec<usize> = (0..q.n_edges())
        .filter(|&i| edge_masks[i] & !w_mask == 0)
        .collect();
    if inside.len() > variant.general_bound(w) {
        let orbits: Vec<usize> = (0..q.n_orbits()).filter(|&v| w_mask >> v & 1 == 1).collect();
        return Some(SparsityViolation {
            kind: ViolationKind::GeneralCount,
            orbits,
            edges: inside,
            bound: variant.general_bound(w),
        });
    }
    let nonloop: Vec<usize> = inside
        .iter()
        .copied()
        .filter(|&i| !q.edges()[i].is_loop())
        .collect();
    // A balanced subset only uses non-loop edges; when there are too few of
    // them the balanced bound cannot break, so skip the signing enumeration.
    if nonloop.len() <= variant.balanced_bound(w) {
        return None;
    }
    let (best, best_edges) = max_balanced_subset(q, &nonloop, w_mask);
    if best > variant.balanced_bound(w) {
        let mut touched = 0u32;
        for &i in &best_edges {
            touched |= edge_masks[i];
        }
        let orbits: Vec<usize> = (0..q.n_orbits())
            .filter(|&v| touched >> v & 1 == 1)
            .collect();
        return Some(SparsityViolation {
            kind: ViolationKind::BalancedCount,
            orbits,
            edges: best_edges,
            bound: variant.balanced_bound(w),
        });
    }
    None
}

/// Maximum balanced subset of the given non-loop edges, by enumerating vertex
/// signings of the orbits in `w_mask` (the first orbit's sign is pinned).
/// Returns the size and the first maximizing edge set.
fn max_balanced_subset(
    q: &SignedQuotientGraph,
    nonloop: &[usize],
    w_mask: u32,
) -> (usize, Vec<usize>) {
    let orbits: Vec<usize> = (0..q.n_orbits()).filter(|&v| w_mask >> v & 1 == 1).collect();
    let free = orbits.len().saturating_sub(1);
    let mut position = [usize::MAX; MAX_CHECK_ORBITS];
    for (p, &v) in orbits.iter().enumerate() {
        position[v] = p;
    }
    let consistent = |e: &GainEdge, signing: u32| -> bool {
        // Position 0 is pinned positive; signing bit p is the sign of
        // position p + 1.
        let bit = |v: usize| -> bool {
            let p = position[v];
            p > 0 && signing >> (p - 1) & 1 == 1
        };
        (e.gain == Sign::Minus) == (bit(e.u) ^ bit(e.v))
    };
    let mut best = 0usize;
    let mut best_signing = 0u32;
    for signing in 0..(1u32 << free) {
        let count = nonloop
            .iter()
            .filter(|&&i| consistent(&q.edges()[i], signing))
            .count();
        if count > best {
            best = count;
            best_signing = signing;
        }
    }
    let edges: Vec<usize> = nonloop
        .iter()
        .copied()
        .filter(|&i| consistent(&q.edges()[i], best_signing))
        .collect();
    (best, edges)
}

/// Gain-tightness: sparse with exactly `tight_count` edges.
pub fn is_gain_tight(
    q: &SignedQuotientGraph,
    variant: SparsityVariant,
) -> Result<bool, SparsityError> {
    if q.n_orbits() == 0 {
        return Ok(false);
    }
    let report = check_gain_sparsity(q, variant)?;
    Ok(report.sparse && q.n_edges() == variant.tight_count(q.n_orbits()))
}

/// Brute-force reference: test every nonempty edge subset against its bound.
pub fn oracle_check_by_edge_subsets(
    q: &SignedQuotientGraph,
    variant: SparsityVariant,
) -> Result<SparsityReport, SparsityError> {
    let m = q.n_edges();
    if m > MAX_ORACLE_EDGES {
        return Err(SparsityError::TooManyEdges {
            found: m,
            max: MAX_ORACLE_EDGES,
        });
    }
    for mask in 1u32..(1u32 << m) {
        let edges: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut touched = vec![false; q.n_orbits()];
        for &i in &edges {
            touched[q.edges()[i].u] = true;
            touched[q.edges()[i].v] = true;
        }
        let w = touched.iter().filter(|&&t| t).count();
        let balanced = balance(q, &edges).balanced;
        let bound = if balanced {
            variant.balanced_bound(w)
        } else {
            variant.general_bound(w)
        };
        if edges.len() > bound {
            let orbits: Vec<usize> = (0..q.n_orbits()).filter(|&v| touched[v]).collect();
            return Ok(SparsityReport {
                variant,
                sparse: false,
                violation: Some(SparsityViolation {
                    kind: if balanced {
                        ViolationKind::BalancedCount
                    } else {
                        ViolationKind::GeneralCount
                    },
                    orbits,
                    edges,
                    bound,
                }),
            });
        }
    }
    Ok(SparsityReport {
        variant,
        sparse: true,
        violation: None,
    })
}
