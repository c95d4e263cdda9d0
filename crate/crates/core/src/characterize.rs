//! Combinatorial characterizations of the rank-based rigidity predicates.
//!
//! For a well-positioned symmetric framework the monochrome quotient
//! subgraphs decide everything:
//!
//! * **symmetrically isostatic** — the `F1` subgraph is a spanning
//!   unbalanced map graph (every component has exactly one cycle, of gain
//!   `-1`) and the `F2` subgraph is a spanning tree. The one-orbit framework
//!   consisting of a single fixed bar is the degenerate base case: it is
//!   symmetrically isostatic even though its `F2` subgraph is empty.
//! * **anti-symmetrically isostatic** — the roles swap: `F1` spanning tree,
//!   `F2` spanning unbalanced map graph. A fixed bar always lands in `F1`
//!   and closes a cycle there, so loops are excluded automatically.
//! * **infinitesimally rigid** — both monochrome quotient subgraphs are
//!   spanning, connected and unbalanced (each contains a connected spanning
//!   unbalanced map graph; this makes both monochrome covering subgraphs
//!   connected and spanning).
//! * **isostatic** (no symmetry assumed) — both monochrome subgraphs of the
//!   *covering* graph are spanning trees. For mirror-symmetric frameworks
//!   this never holds: the `F2` covering subgraph has an even number of
//!   bars, a spanning tree an odd count.
//!
//! [`crosscheck`] runs both the rank route and this combinatorial route and
//! compares all four predicates; the theory says they agree on every
//! well-positioned framework, and the test suites verify exactly that.

use crate::geometry::{GeometryError, MonochromeDecomposition, PlainFramework, SymmetricFramework};
use crate::quotient::{classify_subgraph, SubgraphClassification};
use crate::rigidity::{plain_rigidity_matrix, rigidity_report, summarize, RigidityReport};

/// Combinatorial rigidity facts about one symmetric framework.
#[derive(Clone, Debug)]
pub struct CharacterizationReport {
    pub colours: MonochromeDecomposition,
    /// Classification of the `F1` monochrome quotient subgraph.
    pub f1: SubgraphClassification,
    /// Classification of the `F2` monochrome quotient subgraph.
    pub f2: SubgraphClassification,
    pub covering_f1_spanning_tree: bool,
    pub covering_f2_spanning_tree: bool,
    pub sym_isostatic: bool,
    pub anti_isostatic: bool,
    pub inf_rigid: bool,
    pub isostatic: bool,
}

/// Decide all four predicates from the monochrome decomposition alone.
pub fn characterize(fw: &SymmetricFramework) -> Result<CharacterizationReport, GeometryError> {
    let colours = fw.colour_edges()?;
    let q = fw.quotient();
    let f1 = classify_subgraph(q, &colours.quotient_f1);
    let f2 = classify_subgraph(q, &colours.quotient_f2);
    let single_fixed_bar = q.n_orbits() == 1 && q.n_edges() == 1 && q.edges()[0].is_loop();
    let sym_isostatic = single_fixed_bar
        || (f1.spanning && f1.unbalanced_map_graph && f2.spanning && f2.tree);
    let anti_isostatic = f1.spanning && f1.tree && f2.spanning && f2.unbalanced_map_graph;
    let inf_rigid = f1.contains_spanning_unbalanced_map_graph
        && f2.contains_spanning_unbalanced_map_graph;

    let cov = fw.covering();
    let endpoints = |edge_indices: &[usize]| -> Vec<(usize, usize)> {
        edge_indices
            .iter()
            .map(|&k| {
                let e = &cov.edges()[k];
                (e.a, e.b)
            })
            .collect()
    };
    let covering_f1_spanning_tree =
        is_spanning_tree(cov.n_vertices(), &endpoints(&colours.covering_f1));
    let covering_f2_spanning_tree =
        is_spanning_tree(cov.n_vertices(), &endpoints(&colours.covering_f2));
    let isostatic = covering_f1_spanning_tree && covering_f2_spanning_tree;

    Ok(CharacterizationReport {
        colours,
        f1,
        f2,
        covering_f1_spanning_tree,
        covering_f2_spanning_tree,
        sym_isostatic,
        anti_isostatic,
        inf_rigid,
        isostatic,
    })
}

/// Whether the edge list is a spanning tree on vertices `0..n`.
fn is_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merges = 0;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
        merges += 1;
    }
    merges == n - 1
}

/// Combinatorial facts about a plain framework: per-colour connectivity.
#[derive(Clone, Debug)]
pub struct PlainCharacterization {
    pub f1_connected_spanning: bool,
    pub f2_connected_spanning: bool,
    pub f1_spanning_tree: bool,
    pub f2_spanning_tree: bool,
    pub inf_rigid: bool,
    pub isostatic: bool,
}

/// Decide plain rigidity from monochrome connectivity: rigid when both
/// monochrome subgraphs are connected and spanning, isostatic when both are
/// spanning trees.
pub fn characterize_plain(fw: &PlainFramework) -> Result<PlainCharacterization, GeometryError> {
    let colours = fw.edge_colours()?;
    let split = |want| -> Vec<(usize, usize)> {
        fw.edges()
            .iter()
            .zip(&colours)
            .filter(|&(_, c)| *c == want)
            .map(|(&e, _)| e)
            .collect()
    };
    let f1 = split(crate::geometry::Colour::F1);
    let f2 = split(crate::geometry::Colour::F2);
    let n = fw.n_vertices();
    let f1_connected_spanning = is_connected_spanning(n, &f1);
    let f2_connected_spanning = is_connected_spanning(n, &f2);
    let f1_spanning_tree = is_spanning_tree(n, &f1);
    let f2_spanning_tree = is_spanning_tree(n, &f2);
    Ok(PlainCharacterization {
        f1_connected_spanning,
        f2_connected_spanning,
        f1_spanning_tree,
        f2_spanning_tree,
        inf_rigid: f1_connected_spanning && f2_connected_spanning,
        isostatic: f1_spanning_tree && f2_spanning_tree,
    })
}

fn is_connected_spanning(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Both decision routes side by side, with agreement flags per predicate.
#[derive(Clone, Debug)]
pub struct Crosscheck {
    pub rank: RigidityReport,
    pub combinatorial: CharacterizationReport,
    pub sym_agree: bool,
    pub anti_agree: bool,
    pub rigid_agree: bool,
    pub isostatic_agree: bool,
}

impl Crosscheck {
    pub fn all_agree(&self) -> bool {
        self.sym_agree && self.anti_agree && self.rigid_agree && self.isostatic_agree
    }
}

/// Run the exact rank computation and the combinatorial characterization and
/// compare the four predicates.
pub fn crosscheck(fw: &SymmetricFramework) -> Result<Crosscheck, GeometryError> {
    let rank = rigidity_report(fw)?;
    let combinatorial = characterize(fw)?;
    Ok(Crosscheck {
        sym_agree: rank.sym_isostatic == combinatorial.sym_isostatic,
        anti_agree: rank.anti_isostatic == combinatorial.anti_isostatic,
        rigid_agree: rank.inf_rigid == combinatorial.inf_rigid,
        isostatic_agree: rank.isostatic == combinatorial.isostatic,
        rank,
        combinatorial,
    })
}

/// Rank route and connectivity route for a plain framework.
#[derive(Clone, Debug)]
pub struct PlainCrosscheck {
    pub rigid_agree: bool,
    pub isostatic_agree: bool,
    pub rank_rigid: bool,
    pub rank_isostatic: bool,
    pub combinatorial: PlainCharacterization,
}

pub fn crosscheck_plain(fw: &PlainFramework) -> Result<PlainCrosscheck, GeometryError> {
    let df = summarize(&plain_rigidity_matrix(fw)?.matrix);
    let rank_rigid = df.nullity == 2;
    let rank_isostatic = rank_rigid && df.rank == df.rows;
    let combinatorial = characterize_plain(fw)?;
    Ok(PlainCrosscheck {
        rigid_agree: rank_rigid == combinatorial.inf_rigid,
        isostatic_agree: rank_isostatic == combinatorial.isostatic,
        rank_rigid,
        rank_isostatic,
        combinatorial,
    })
}
