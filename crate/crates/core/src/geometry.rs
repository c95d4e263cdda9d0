//! Quadrilateral norms, mirror symmetry, and placed frameworks.
//!
//! A quadrilateral norm is given by two independent linear functionals
//! `f1, f2` via `|x| = max(|f1 . x|, |f2 . x|)`; its unit ball is a
//! quadrilateral with two facet pairs. The *normalizing map* `N x =
//! (f1 . x, f2 . x)` carries the norm to the max-norm, so all combinatorial
//! and matrix work happens in normalized coordinates `u = (u1, u2)`.
//!
//! The mirror symmetry fixes the line `{u1 = 0}`; in normalized coordinates
//! the reflection is `(u1, u2) -> (-u1, u2)`. A bar with direction `d` is
//! *coloured* by the facet pair its norm is attained on: `F1` when
//! `|u1(d)| > |u2(d)|`, `F2` when `|u2(d)| > |u1(d)|`, and ill-positioned on
//! ties. Reflected bars keep their colour, so colours are constant on edge
//! orbits, and a fixed bar (joining a vertex to its mirror image) always has
//! colour `F1`.

use crate::quotient::{build_covering, CoveringGraph, SignedQuotientGraph};
use crate::rational::format_rational;
use crate::Q;
use num::{One, Zero};
use num_traits::Signed;
use thiserror::Error;

/// An exact point or direction in the plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec2 {
    pub x: Q,
    pub y: Q,
}

impl Vec2 {
    pub fn new(x: Q, y: Q) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(Q::zero(), Q::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(crate::rational::q(x), crate::rational::q(y))
    }

    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Vec2 {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, t: &Q) -> Vec2 {
        Vec2::new(&self.x * t, &self.y * t)
    }

    pub fn dot(&self, o: &Vec2) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl std::fmt::Display for Vec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

/// An exact 2x2 matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[Q; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Mat2::new(Q::one(), Q::zero(), Q::zero(), Q::one())
    }

    pub fn from_rows(r0: &Vec2, r1: &Vec2) -> Self {
        Mat2::new(r0.x.clone(), r0.y.clone(), r1.x.clone(), r1.y.clone())
    }

    pub fn det(&self) -> Q {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Mat2::new(
            &self.m[1][1] / &det,
            -(&self.m[0][1] / &det),
            -(&self.m[1][0] / &det),
            &self.m[0][0] / &det,
        ))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(
            &self.m[0][0] * &v.x + &self.m[0][1] * &v.y,
            &self.m[1][0] * &v.x + &self.m[1][1] * &v.y,
        )
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut out = Mat2::identity();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] =
                    &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
            }
        }
        out
    }
}

/// Facet-pair colour of a bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    F1,
    F2,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::F1 => Colour::F2,
            Colour::F2 => Colour::F1,
        }
    }

    /// Facet midpoint in normalized coordinates: bars in this exact
    /// direction carry the colour.
    pub fn axis_normalized(self) -> Vec2 {
        match self {
            Colour::F1 => Vec2::from_ints(1, 0),
            Colour::F2 => Vec2::from_ints(0, 1),
        }
    }
}

impl std::fmt::Display for Colour {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colour::F1 => write!(f, "F1"),
            Colour::F2 => write!(f, "F2"),
        }
    }
}

/// Colour of a normalized direction; `None` on the cone boundary
/// (`|u1| = |u2|`, the ill-positioned case).
pub fn colour_normalized(d: &Vec2) -> Option<Colour> {
    let ax = d.x.abs();
    let ay = d.y.abs();
    if ax > ay {
        Some(Colour::F1)
    } else if ay > ax {
        Some(Colour::F2)
    } else {
        None
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("norm functionals must be linearly independent")]
    SingularNorm,
    #[error("expected {expected} representative points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("orbit {orbit:?} is placed on the mirror; the symmetry must move every joint")]
    VertexOnMirror { orbit: String },
    #[error("edge {edge:?} has zero length")]
    DegenerateEdge { edge: String },
    #[error("edge {edge:?} is ill-positioned: its direction lies on the cone boundary |u1| = |u2|")]
    IllPositionedEdge { edge: String },
    #[error("edge references vertex {vertex} but there are only {n_vertices} vertices")]
    BadVertexIndex { vertex: usize, n_vertices: usize },
}

/// A norm whose unit ball is a quadrilateral, `|x| = max(|f1.x|, |f2.x|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadNorm {
    f1: Vec2,
    f2: Vec2,
    n: Mat2,
    n_inv: Mat2,
}

impl QuadNorm {
    pub fn new(f1: Vec2, f2: Vec2) -> Result<Self, GeometryError> {
        let n = Mat2::from_rows(&f1, &f2);
        let n_inv = n.inverse().ok_or(GeometryError::SingularNorm)?;
        Ok(QuadNorm { f1, f2, n, n_inv })
    }

    /// The max-norm: unit ball the axis-aligned square, mirror the x-axis.
    pub fn linf() -> Self {
        QuadNorm::new(Vec2::from_ints(0, 1), Vec2::from_ints(1, 0)).unwrap()
    }

    /// The taxicab norm: unit ball the diagonal square, mirror the
    /// anti-diagonal.
    pub fn l1() -> Self {
        QuadNorm::new(Vec2::from_ints(1, 1), Vec2::from_ints(1, -1)).unwrap()
    }

    pub fn functionals(&self) -> (&Vec2, &Vec2) {
        (&self.f1, &self.f2)
    }

    /// User coordinates to normalized coordinates.
    pub fn normalize(&self, p: &Vec2) -> Vec2 {
        self.n.apply(p)
    }

    /// Normalized coordinates back to user coordinates.
    pub fn denormalize(&self, u: &Vec2) -> Vec2 {
        self.n_inv.apply(u)
    }

    /// Norm of a user-coordinates vector.
    pub fn value(&self, p: &Vec2) -> Q {
        let a = self.f1.dot(p).abs();
        let b = self.f2.dot(p).abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    /// The mirror reflection in normalized coordinates: `diag(-1, 1)`.
    pub fn reflection_normalized() -> Mat2 {
        Mat2::new(-Q::one(), Q::zero(), Q::zero(), Q::one())
    }

    /// The mirror reflection in user coordinates.
    pub fn reflection_user(&self) -> Mat2 {
        self.n_inv
            .mul(&QuadNorm::reflection_normalized())
            .mul(&self.n)
    }

    /// Colour of a bar with user-coordinates direction `d`.
    pub fn colour(&self, d: &Vec2) -> Option<Colour> {
        colour_normalized(&self.normalize(d))
    }
}

/// The two monochrome subgraphs of a coloured framework.
#[derive(Clone, Debug)]
pub struct MonochromeDecomposition {
    /// Colour per quotient edge (constant on each edge orbit).
    pub quotient_colours: Vec<Colour>,
    /// Covering edge indices with colour F1 / F2.
    pub covering_f1: Vec<usize>,
    pub covering_f2: Vec<usize>,
    /// Quotient edge indices with colour F1 / F2.
    pub quotient_f1: Vec<usize>,
    pub quotient_f2: Vec<usize>,
}

impl MonochromeDecomposition {
    pub fn quotient_edges(&self, colour: Colour) -> &[usize] {
        match colour {
            Colour::F1 => &self.quotient_f1,
            Colour::F2 => &self.quotient_f2,
        }
    }

    pub fn covering_edges(&self, colour: Colour) -> &[usize] {
        match colour {
            Colour::F1 => &self.covering_f1,
            Colour::F2 => &self.covering_f2,
        }
    }
}

/// A placed graph without symmetry: a bar-joint framework in a
/// quadrilateral norm.
#[derive(Clone, Debug)]
pub struct PlainFramework {
    norm: QuadNorm,
    points: Vec<Vec2>,
    edges: Vec<(usize, usize)>,
}

impl PlainFramework {
    pub fn new(
        norm: QuadNorm,
        points: Vec<Vec2>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GeometryError> {
        for (k, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= points.len() {
                    return Err(GeometryError::BadVertexIndex {
                        vertex: w,
                        n_vertices: points.len(),
                    });
                }
            }
            if points[u] == points[v] {
                return Err(GeometryError::DegenerateEdge {
                    edge: format!("{k}"),
                });
            }
        }
        Ok(PlainFramework {
            norm,
            points,
            edges,
        })
    }

    pub fn norm(&self) -> &QuadNorm {
        &self.norm
    }

    pub fn n_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Normalized direction of edge `k`, oriented from its first endpoint.
    pub fn direction_normalized(&self, k: usize) -> Vec2 {
        let (u, v) = self.edges[k];
        self.norm
            .normalize(&self.points[u].sub(&self.points[v]))
    }

    /// Colour per edge; fails on an ill-positioned edge.
    pub fn edge_colours(&self) -> Result<Vec<Colour>, GeometryError> {
        self.edges
            .iter()
            .enumerate()
            .map(|(k, _)| {
                colour_normalized(&self.direction_normalized(k)).ok_or_else(|| {
                    GeometryError::IllPositionedEdge {
                        edge: format!("{k}"),
                    }
                })
            })
            .collect()
    }
}

/// A mirror-symmetric placed framework, built from one point per orbit.
///
/// Covering vertex `2i` gets the representative point of orbit `i`, vertex
/// `2i + 1` its mirror image. Construction rejects joints on the mirror and
/// zero-length bars.
#[derive(Clone, Debug)]
pub struct SymmetricFramework {
    norm: QuadNorm,
    quotient: SignedQuotientGraph,
    covering: CoveringGraph,
    /// Per covering vertex, user coordinates.
    points: Vec<Vec2>,
    /// Per covering vertex, normalized coordinates.
    normalized: Vec<Vec2>,
}

impl SymmetricFramework {
    pub fn new(
        norm: QuadNorm,
        quotient: SignedQuotientGraph,
        reps: Vec<Vec2>,
    ) -> Result<Self, GeometryError> {
        if reps.len() != quotient.n_orbits() {
            return Err(GeometryError::WrongPointCount {
                expected: quotient.n_orbits(),
                found: reps.len(),
            });
        }
        let covering = build_covering(&quotient);
        let reflection = QuadNorm::reflection_normalized();
        let mut points = Vec::with_capacity(2 * reps.len());
        let mut normalized = Vec::with_capacity(2 * reps.len());
        for (i, p) in reps.iter().enumerate() {
            let u = norm.normalize(p);
            if u.x.is_zero() {
                return Err(GeometryError::VertexOnMirror {
                    orbit: quotient.orbit_name(i).to_string(),
                });
            }
            let u_image = reflection.apply(&u);
            points.push(p.clone());
            points.push(norm.denormalize(&u_image));
            normalized.push(u);
            normalized.push(u_image);
        }
        for (k, e) in covering.edges().iter().enumerate() {
            if points[e.a] == points[e.b] {
                return Err(GeometryError::DegenerateEdge {
                    edge: covering.edge_label(k),
                });
            }
        }
        Ok(SymmetricFramework {
            norm,
            quotient,
            covering,
            points,
            normalized,
        })
    }

    pub fn norm(&self) -> &QuadNorm {
        &self.norm
    }

    pub fn quotient(&self) -> &SignedQuotientGraph {
        &self.quotient
    }

    pub fn covering(&self) -> &CoveringGraph {
        &self.covering
    }

    /// Representative (user coordinates) of an orbit.
    pub fn rep_point(&self, orbit: usize) -> &Vec2 {
        &self.points[2 * orbit]
    }

    /// User coordinates of a covering vertex.
    pub fn point(&self, vertex: usize) -> &Vec2 {
        &self.points[vertex]
    }

    /// Normalized coordinates of a covering vertex.
    pub fn normalized_point(&self, vertex: usize) -> &Vec2 {
        &self.normalized[vertex]
    }

    /// Normalized direction of covering edge `k`, oriented `a - b`.
    pub fn direction_normalized(&self, k: usize) -> Vec2 {
        let e = &self.covering.edges()[k];
        self.normalized[e.a].sub(&self.normalized[e.b])
    }

    /// Colour the bars and split both graphs into monochrome subgraphs.
    /// Fails on an ill-positioned bar.
    pub fn colour_edges(&self) -> Result<MonochromeDecomposition, GeometryError> {
        let n_quotient = self.quotient.n_edges();
        let mut quotient_colours: Vec<Option<Colour>> = vec![None; n_quotient];
        let mut covering_f1 = Vec::new();
        let mut covering_f2 = Vec::new();
        for (k, e) in self.covering.edges().iter().enumerate() {
            let colour = colour_normalized(&self.direction_normalized(k)).ok_or_else(|| {
                GeometryError::IllPositionedEdge {
                    edge: self.covering.edge_label(k),
                }
            })?;
            match colour {
                Colour::F1 => covering_f1.push(k),
                Colour::F2 => covering_f2.push(k),
            }
            // Reflection preserves |u1| and |u2|, so the two bars of an
            // orbit always agree.
            let slot = &mut quotient_colours[e.orbit_edge];
            assert!(
                slot.is_none() || *slot == Some(colour),
                "bar colours must be constant on edge orbits"
            );
            *slot = Some(colour);
        }
        let quotient_colours: Vec<Colour> =
            quotient_colours.into_iter().map(Option::unwrap).collect();
        let quotient_f1: Vec<usize> = (0..n_quotient)
            .filter(|&i| quotient_colours[i] == Colour::F1)
            .collect();
        let quotient_f2: Vec<usize> = (0..n_quotient)
            .filter(|&i| quotient_colours[i] == Colour::F2)
            .collect();
        Ok(MonochromeDecomposition {
            quotient_colours,
            covering_f1,
            covering_f2,
            quotient_f1,
            quotient_f2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::{GainEdge, Sign};
    use crate::rational::qr;

    fn edge(id: &str, u: usize, v: usize, gain: Sign) -> GainEdge {
        GainEdge {
            id: id.to_string(),
            u,
            v,
            gain,
        }
    }

    fn names(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn preset_norms_evaluate_correctly() {
        let linf = QuadNorm::linf();
        assert_eq!(linf.value(&Vec2::from_ints(3, -4)), crate::rational::q(4));
        assert_eq!(linf.value(&Vec2::from_ints(-5, 2)), crate::rational::q(5));
        let l1 = QuadNorm::l1();
        assert_eq!(l1.value(&Vec2::from_ints(3, -4)), crate::rational::q(7));
        assert_eq!(l1.value(&Vec2::from_ints(-5, 2)), crate::rational::q(7));
    }

    #[test]
    fn singular_functionals_are_rejected() {
        let err = QuadNorm::new(Vec2::from_ints(1, 2), Vec2::from_ints(2, 4));
        assert_eq!(err.unwrap_err(), GeometryError::SingularNorm);
    }

    #[test]
    fn normalize_and_denormalize_are_inverse() {
        for norm in [QuadNorm::linf(), QuadNorm::l1()] {
            let p = Vec2::new(qr(3, 7), qr(-2, 5));
            assert_eq!(norm.denormalize(&norm.normalize(&p)), p);
        }
    }

    #[test]
    fn reflection_is_an_involutive_isometry_fixing_the_mirror() {
        for norm in [
            QuadNorm::linf(),
            QuadNorm::l1(),
            QuadNorm::new(Vec2::from_ints(1, 3), Vec2::from_ints(2, -1)).unwrap(),
        ] {
            let t = norm.reflection_user();
            assert_eq!(t.mul(&t), Mat2::identity(), "reflection must square to identity");
            for p in [Vec2::from_ints(3, -4), Vec2::new(qr(1, 2), qr(5, 3))] {
                assert_eq!(norm.value(&t.apply(&p)), norm.value(&p));
            }
        }
        // The max-norm mirror is the x-axis.
        let linf = QuadNorm::linf();
        let t = linf.reflection_user();
        assert_eq!(t.apply(&Vec2::from_ints(5, 0)), Vec2::from_ints(5, 0));
        assert_eq!(t.apply(&Vec2::from_ints(2, 3)), Vec2::from_ints(2, -3));
    }

    #[test]
    fn colours_follow_the_dominant_functional() {
        let linf = QuadNorm::linf();
        // Vertical bars cross the horizontal facet pair F1.
        assert_eq!(linf.colour(&Vec2::from_ints(0, 3)), Some(Colour::F1));
        assert_eq!(linf.colour(&Vec2::from_ints(1, 3)), Some(Colour::F1));
        // Horizontal-ish bars cross F2.
        assert_eq!(linf.colour(&Vec2::from_ints(2, 1)), Some(Colour::F2));
        // Diagonal directions are ill-positioned.
        assert_eq!(linf.colour(&Vec2::from_ints(2, -2)), None);

        let l1 = QuadNorm::l1();
        assert_eq!(l1.colour(&Vec2::from_ints(1, 1)), Some(Colour::F1));
        assert_eq!(l1.colour(&Vec2::from_ints(1, -1)), Some(Colour::F2));
        assert_eq!(l1.colour(&Vec2::from_ints(1, 0)), None);
    }

    #[test]
    fn symmetric_framework_places_mirror_images() {
        let q = SignedQuotientGraph::new(
            names(&["a", "b"]),
            vec![edge("e1", 0, 1, Sign::Plus), edge("e2", 0, 1, Sign::Minus)],
        )
        .unwrap();
        let fw = SymmetricFramework::new(
            QuadNorm::linf(),
            q,
            vec![Vec2::from_ints(0, 2), Vec2::from_ints(3, 1)],
        )
        .unwrap();
        // Image of (x, y) under the max-norm mirror is (x, -y).
        assert_eq!(*fw.point(1), Vec2::from_ints(0, -2));
        assert_eq!(*fw.point(3), Vec2::from_ints(3, -1));
        // Normalized coordinates swap and the image negates u1.
        assert_eq!(*fw.normalized_point(0), Vec2::from_ints(2, 0));
        assert_eq!(*fw.normalized_point(1), Vec2::from_ints(-2, 0));
    }

    #[test]
    fn joints_on_the_mirror_are_rejected() {
        let q = SignedQuotientGraph::new(names(&["a"]), vec![]).unwrap();
        let err = SymmetricFramework::new(QuadNorm::linf(), q, vec![Vec2::from_ints(4, 0)]);
        assert_eq!(
            err.unwrap_err(),
            GeometryError::VertexOnMirror { orbit: "a".into() }
        );
    }

    #[test]
    fn degenerate_bars_are_rejected() {
        let q = SignedQuotientGraph::new(
            names(&["a", "b"]),
            vec![edge("e1", 0, 1, Sign::Plus)],
        )
        .unwrap();
        let err = SymmetricFramework::new(
            QuadNorm::linf(),
            q,
            vec![Vec2::from_ints(1, 2), Vec2::from_ints(1, 2)],
        );
        assert!(matches!(
            err.unwrap_err(),
            GeometryError::DegenerateEdge { .. }
        ));
    }

    #[test]
    fn fixed_bars_are_always_coloured_f1() {
        let q = SignedQuotientGraph::new(
            names(&["a"]),
            vec![edge("e1", 0, 0, Sign::Minus)],
        )
        .unwrap();
        for p in [
            Vec2::from_ints(1, 2),
            Vec2::from_ints(-3, 1),
            Vec2::new(qr(1, 7), qr(22, 7)),
        ] {
            let fw =
                SymmetricFramework::new(QuadNorm::linf(), q.clone(), vec![p]).unwrap();
            let dec = fw.colour_edges().unwrap();
            assert_eq!(dec.quotient_colours, vec![Colour::F1]);
        }
    }

    #[test]
    fn colours_are_constant_on_edge_orbits_and_partition_the_bars() {
        let q = SignedQuotientGraph::new(
            names(&["a", "b", "c"]),
            vec![
                edge("e1", 0, 1, Sign::Plus),
                edge("e2", 1, 2, Sign::Plus),
                edge("e3", 0, 2, Sign::Plus),
                edge("e4", 0, 2, Sign::Minus),
                edge("e5", 1, 1, Sign::Minus),
            ],
        )
        .unwrap();
        let fw = SymmetricFramework::new(
            QuadNorm::linf(),
            q,
            vec![
                Vec2::from_ints(0, -2),
                Vec2::new(qr(1, 2), qr(-1, 1)),
                Vec2::new(qr(3, 2), qr(-3, 2)),
            ],
        )
        .unwrap();
        let dec = fw.colour_edges().unwrap();
        assert_eq!(
            dec.covering_f1.len() + dec.covering_f2.len(),
            fw.covering().edges().len()
        );
        for (k, e) in fw.covering().edges().iter().enumerate() {
            let colour = if dec.covering_f1.contains(&k) {
                Colour::F1
            } else {
                Colour::F2
            };
            assert_eq!(colour, dec.quotient_colours[e.orbit_edge]);
        }
    }

    #[test]
    fn ill_positioned_bars_are_reported() {
        let q = SignedQuotientGraph::new(
            names(&["a", "b"]),
            vec![edge("e1", 0, 1, Sign::Plus)],
        )
        .unwrap();
        // Bar direction (1, 1) lies on the cone boundary of the max-norm.
        let fw = SymmetricFramework::new(
            QuadNorm::linf(),
            q,
            vec![Vec2::from_ints(0, 1), Vec2::from_ints(1, 2)],
        )
        .unwrap();
        assert!(matches!(
            fw.colour_edges().unwrap_err(),
            GeometryError::IllPositionedEdge { .. }
        ));
    }

    #[test]
    fn plain_framework_colours_a_placed_graph() {
        let points = vec![
            Vec2::from_ints(0, 0),
            Vec2::new(qr(1, 1), qr(1, 5)),
            Vec2::new(qr(-1, 5), qr(1, 1)),
        ];
        let fw = PlainFramework::new(
            QuadNorm::linf(),
            points,
            vec![(0, 1), (0, 2), (1, 2)],
        )
        .unwrap();
        let colours = fw.edge_colours().unwrap();
        assert_eq!(colours, vec![Colour::F2, Colour::F1, Colour::F2]);
    }
}
