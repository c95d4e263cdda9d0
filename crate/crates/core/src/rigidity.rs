//! Rigidity and orbit matrices, flexes, and the rank-based predicates.
//!
//! For a well-positioned bar with direction `d` and colour `Fj`, the smooth
//! part of the length condition differentiates to `sign(fj . d) *
//! fj . (velocity_a - velocity_b) = 0`; the rigidity matrix collects one such
//! row per bar over velocity columns `(x, y)` per joint, in user coordinates.
//!
//! Splitting velocity fields into their symmetric part (`q(-v) = T q(v)`) and
//! anti-symmetric part (`q(-v) = -T q(v)`) block-diagonalizes the covering
//! rigidity matrix into two *orbit matrices* over one column pair per orbit:
//! the symmetric orbit matrix has a row per quotient edge (a fixed bar
//! contributes `f (I - T)` at its orbit), the anti-symmetric orbit matrix a
//! row per non-loop quotient edge (a fixed bar's anti-symmetric condition
//! vanishes identically). Consequently ranks and nullities add up, which the
//! tests check exactly.
//!
//! The framework is infinitesimally rigid when the covering nullity is 2
//! (translations only — quadrilateral norms admit no infinitesimal
//! rotations), symmetrically rigid when the symmetric orbit nullity is 1
//! (translations along the mirror), and anti-symmetrically isostatic when
//! the anti-symmetric orbit matrix is square-like of full rank over the
//! non-loop edges of a loopless quotient, with nullity 1 (translations
//! perpendicular to the mirror, which are anti-symmetric).

use crate::geometry::{
    colour_normalized, Colour, GeometryError, Mat2, PlainFramework, QuadNorm, SymmetricFramework,
    Vec2,
};
use crate::linalg::Matrix;
use crate::quotient::{covering_vertex, Sign};
use crate::{Q, QMatrix};
use num::{Signed as _, Zero};

/// A matrix with human-readable row and column labels.
#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub matrix: QMatrix,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

/// Shape, rank and nullity of one matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixSummary {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub nullity: usize,
}

pub fn summarize(m: &QMatrix) -> MatrixSummary {
    let rank = m.rank();
    MatrixSummary {
        rows: m.rows(),
        cols: m.cols(),
        rank,
        nullity: m.cols() - rank,
    }
}

/// The signed facet functional of a bar: `sign(fj . d) * fj` for the facet
/// pair `Fj` the norm of `d` is attained on.
fn signed_functional(
    norm: &QuadNorm,
    d: &Vec2,
    label: &str,
) -> Result<(Colour, Vec2), GeometryError> {
    let u = norm.normalize(d);
    let colour = colour_normalized(&u).ok_or_else(|| GeometryError::IllPositionedEdge {
        edge: label.to_string(),
    })?;
    let (f1, f2) = norm.functionals();
    let (f, along) = match colour {
        Colour::F1 => (f1, u.x),
        Colour::F2 => (f2, u.y),
    };
    let signed = if along.is_negative() { f.neg() } else { f.clone() };
    Ok((colour, signed))
}

/// Row vector times 2x2 matrix.
fn row_times(f: &Vec2, m: &Mat2) -> Vec2 {
    Vec2::new(
        &f.x * &m.m[0][0] + &f.y * &m.m[1][0],
        &f.x * &m.m[0][1] + &f.y * &m.m[1][1],
    )
}

fn add_block(row: &mut [Q], vertex: usize, f: &Vec2, negate: bool) {
    let (x, y) = if negate {
        (-f.x.clone(), -f.y.clone())
    } else {
        (f.x.clone(), f.y.clone())
    };
    row[2 * vertex] = &row[2 * vertex] + &x;
    row[2 * vertex + 1] = &row[2 * vertex + 1] + &y;
}

fn point_col_labels(names: &[String]) -> Vec<String> {
    names
        .iter()
        .flat_map(|n| [format!("{n}.x"), format!("{n}.y")])
        .collect()
}

/// Rigidity matrix of the full covering framework: one row per bar, two
/// velocity columns per covering vertex.
pub fn rigidity_matrix(fw: &SymmetricFramework) -> Result<LabeledMatrix, GeometryError> {
    let cov = fw.covering();
    let cols = 2 * cov.n_vertices();
    let mut rows = Vec::with_capacity(cov.edges().len());
    let mut row_labels = Vec::new();
    for (k, e) in cov.edges().iter().enumerate() {
        let d = fw.point(e.a).sub(fw.point(e.b));
        let label = cov.edge_label(k);
        let (_, f) = signed_functional(fw.norm(), &d, &label)?;
        let mut row = vec![Q::zero(); cols];
        add_block(&mut row, e.a, &f, false);
        add_block(&mut row, e.b, &f, true);
        rows.push(row);
        row_labels.push(label);
    }
    let vertex_names: Vec<String> = (0..cov.n_vertices()).map(|v| cov.vertex_label(v)).collect();
    Ok(LabeledMatrix {
        matrix: if rows.is_empty() {
            Matrix::zero(0, cols)
        } else {
            Matrix::from_rows(rows)
        },
        row_labels,
        col_labels: point_col_labels(&vertex_names),
    })
}

/// Rigidity matrix of a plain (non-symmetric) framework.
pub fn plain_rigidity_matrix(fw: &PlainFramework) -> Result<LabeledMatrix, GeometryError> {
    let cols = 2 * fw.n_vertices();
    let mut rows = Vec::with_capacity(fw.edges().len());
    let mut row_labels = Vec::new();
    for &(a, b) in fw.edges() {
        let d = fw.points()[a].sub(&fw.points()[b]);
        let label = format!("{a}-{b}");
        let (_, f) = signed_functional(fw.norm(), &d, &label)?;
        let mut row = vec![Q::zero(); cols];
        add_block(&mut row, a, &f, false);
        add_block(&mut row, b, &f, true);
        rows.push(row);
        row_labels.push(label);
    }
    let vertex_names: Vec<String> = (0..fw.n_vertices()).map(|v| format!("p{v}")).collect();
    Ok(LabeledMatrix {
        matrix: if rows.is_empty() {
            Matrix::zero(0, cols)
        } else {
            Matrix::from_rows(rows)
        },
        row_labels,
        col_labels: point_col_labels(&vertex_names),
    })
}

/// Symmetric orbit matrix: one row per quotient edge, two columns per orbit.
/// Velocities are the user-coordinate velocities of the representatives; the
/// image joints move by `T` times the representative velocity.
pub fn orbit_matrix_sym(fw: &SymmetricFramework) -> Result<LabeledMatrix, GeometryError> {
    orbit_matrix(fw, FlexClass::Symmetric)
}

/// Anti-symmetric orbit matrix: one row per non-loop quotient edge, two
/// columns per orbit. Image joints move by `-T` times the representative
/// velocity; fixed bars impose no condition on such fields.
pub fn orbit_matrix_anti(fw: &SymmetricFramework) -> Result<LabeledMatrix, GeometryError> {
    orbit_matrix(fw, FlexClass::AntiSymmetric)
}

/// Which velocity fields an orbit matrix describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlexClass {
    Symmetric,
    AntiSymmetric,
}

fn orbit_matrix(
    fw: &SymmetricFramework,
    class: FlexClass,
) -> Result<LabeledMatrix, GeometryError> {
    let q = fw.quotient();
    let t = fw.norm().reflection_user();
    // Image velocity = image_map * representative velocity.
    let image_map = match class {
        FlexClass::Symmetric => t.clone(),
        FlexClass::AntiSymmetric => {
            let mut neg = t.clone();
            for r in &mut neg.m {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
            }
            neg
        }
    };
    let cols = 2 * q.n_orbits();
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    for e in q.edges() {
        if e.is_loop() {
            if class == FlexClass::AntiSymmetric {
                continue;
            }
            // Fixed bar from the representative to its image.
            let a = covering_vertex(e.u, false);
            let b = covering_vertex(e.u, true);
            let d = fw.point(a).sub(fw.point(b));
            let (_, f) = signed_functional(fw.norm(), &d, &e.id)?;
            let mut row = vec![Q::zero(); cols];
            add_block(&mut row, e.u, &f, false);
            let f_imaged = row_times(&f, &image_map);
            add_block(&mut row, e.u, &f_imaged, true);
            rows.push(row);
            row_labels.push(e.id.clone());
            continue;
        }
        // Representative bar of the orbit: from the representative of `u` to
        // the gain-selected lift of `v`.
        let a = covering_vertex(e.u, false);
        let b = covering_vertex(e.v, e.gain == Sign::Minus);
        let d = fw.point(a).sub(fw.point(b));
        let (_, f) = signed_functional(fw.norm(), &d, &e.id)?;
        let mut row = vec![Q::zero(); cols];
        add_block(&mut row, e.u, &f, false);
        let f_at_w = match e.gain {
            Sign::Plus => f.clone(),
            Sign::Minus => row_times(&f, &image_map),
        };
        add_block(&mut row, e.v, &f_at_w, true);
        rows.push(row);
        row_labels.push(e.id.clone());
    }
    Ok(LabeledMatrix {
        matrix: if rows.is_empty() {
            Matrix::zero(0, cols)
        } else {
            Matrix::from_rows(rows)
        },
        row_labels,
        col_labels: point_col_labels(q.orbits()),
    })
}

/// Lift an orbit velocity field to the covering: representatives move by the
/// field, images by `T` (symmetric) or `-T` (anti-symmetric) times it.
pub fn lift_flex(fw: &SymmetricFramework, class: FlexClass, orbit_flex: &[Q]) -> Vec<Q> {
    let n = fw.quotient().n_orbits();
    assert_eq!(orbit_flex.len(), 2 * n, "orbit flex has two entries per orbit");
    let t = fw.norm().reflection_user();
    let mut out = vec![Q::zero(); 4 * n];
    for i in 0..n {
        let m = Vec2::new(orbit_flex[2 * i].clone(), orbit_flex[2 * i + 1].clone());
        let image = t.apply(&m);
        let image = match class {
            FlexClass::Symmetric => image,
            FlexClass::AntiSymmetric => image.neg(),
        };
        out[4 * i] = m.x;
        out[4 * i + 1] = m.y;
        out[4 * i + 2] = image.x;
        out[4 * i + 3] = image.y;
    }
    out
}

/// Split a covering velocity field into symmetric and anti-symmetric orbit
/// fields: `a = (q_rep + T q_image) / 2`, `b = (q_rep - T q_image) / 2`.
/// Always `lift(a) + lift(b)` reassembles the input.
pub fn decompose_flex(fw: &SymmetricFramework, covering_flex: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let n = fw.quotient().n_orbits();
    assert_eq!(
        covering_flex.len(),
        4 * n,
        "covering flex has two entries per covering vertex"
    );
    let t = fw.norm().reflection_user();
    let half = crate::rational::qr(1, 2);
    let mut sym = Vec::with_capacity(2 * n);
    let mut anti = Vec::with_capacity(2 * n);
    for i in 0..n {
        let rep = Vec2::new(covering_flex[4 * i].clone(), covering_flex[4 * i + 1].clone());
        let img = Vec2::new(
            covering_flex[4 * i + 2].clone(),
            covering_flex[4 * i + 3].clone(),
        );
        let t_img = t.apply(&img);
        let a = rep.add(&t_img).scale(&half);
        let b = rep.sub(&t_img).scale(&half);
        sym.push(a.x);
        sym.push(a.y);
        anti.push(b.x);
        anti.push(b.y);
    }
    (sym, anti)
}

fn mat2_to_matrix(m: &Mat2) -> QMatrix {
    Matrix::from_rows(vec![
        vec![m.m[0][0].clone(), m.m[0][1].clone()],
        vec![m.m[1][0].clone(), m.m[1][1].clone()],
    ])
}

/// Dimensions of the trivial (translational) flexes: all translations, the
/// symmetric ones (along the mirror), and the anti-symmetric ones
/// (perpendicular to it), computed as exact kernels of `I -+ T`.
pub fn trivial_flex_dims(norm: &QuadNorm) -> (usize, usize, usize) {
    let t = norm.reflection_user();
    let i = Mat2::identity();
    let minus = {
        let mut m = i.clone();
        for r in 0..2 {
            for c in 0..2 {
                m.m[r][c] = &m.m[r][c] - &t.m[r][c];
            }
        }
        m
    };
    let plus = {
        let mut m = i;
        for r in 0..2 {
            for c in 0..2 {
                m.m[r][c] = &m.m[r][c] + &t.m[r][c];
            }
        }
        m
    };
    let sym_dim = 2 - mat2_to_matrix(&minus).rank();
    let anti_dim = 2 - mat2_to_matrix(&plus).rank();
    (2, sym_dim, anti_dim)
}

/// Rank-based rigidity facts about one symmetric framework.
#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub covering: MatrixSummary,
    pub sym: MatrixSummary,
    pub anti: MatrixSummary,
    /// `(all translations, symmetric ones, anti-symmetric ones)`.
    pub trivial_dims: (usize, usize, usize),
    pub has_fixed_bars: bool,
    /// Covering nullity 2: only the translations flex the framework.
    pub inf_rigid: bool,
    /// Rigid with independent rows.
    pub isostatic: bool,
    /// Symmetric orbit nullity 1: only the mirror translation is a
    /// fully-symmetric flex.
    pub sym_inf_rigid: bool,
    /// Symmetrically rigid with independent orbit rows.
    pub sym_isostatic: bool,
    /// Anti-symmetric orbit nullity 1.
    pub anti_inf_rigid: bool,
    /// Anti-symmetrically rigid, rows independent, and no fixed bars.
    pub anti_isostatic: bool,
}

/// Compute all three matrices and the derived predicates.
pub fn rigidity_report(fw: &SymmetricFramework) -> Result<RigidityReport, GeometryError> {
    let covering = summarize(&rigidity_matrix(fw)?.matrix);
    let sym = summarize(&orbit_matrix_sym(fw)?.matrix);
    let anti = summarize(&orbit_matrix_anti(fw)?.matrix);
    let has_fixed_bars = fw.quotient().has_loops();
    let inf_rigid = covering.nullity == 2;
    let isostatic = inf_rigid && covering.rank == covering.rows;
    let sym_inf_rigid = sym.nullity == 1;
    let sym_isostatic = sym_inf_rigid && sym.rank == sym.rows;
    let anti_inf_rigid = anti.nullity == 1;
    let anti_isostatic = anti_inf_rigid && anti.rank == anti.rows && !has_fixed_bars;
    Ok(RigidityReport {
        covering,
        sym,
        anti,
        trivial_dims: trivial_flex_dims(fw.norm()),
        has_fixed_bars,
        inf_rigid,
        isostatic,
        sym_inf_rigid,
        sym_isostatic,
        anti_inf_rigid,
        anti_isostatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::{GainEdge, SignedQuotientGraph};
    use crate::rational::{q, qr};

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

    fn single_fixed_bar() -> SymmetricFramework {
        let quotient = SignedQuotientGraph::new(
            names(&["a"]),
            vec![edge("e1", 0, 0, Sign::Minus)],
        )
        .unwrap();
        SymmetricFramework::new(QuadNorm::linf(), quotient, vec![Vec2::from_ints(1, 2)])
            .unwrap()
    }

    /// Triangle of trivial gains, negative parallel edge, loop; placed so
    /// that its symmetric orbit matrix is isostatic.
    fn triangle_parallel_loop_framework() -> SymmetricFramework {
        let quotient = SignedQuotientGraph::new(
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
        SymmetricFramework::new(
            QuadNorm::linf(),
            quotient,
            vec![
                Vec2::from_ints(0, -2),
                Vec2::new(qr(1, 2), q(-1)),
                Vec2::new(qr(3, 2), qr(-3, 2)),
            ],
        )
        .unwrap()
    }

    /// Two parallel pairs and one trivial bridge, loopless; placed so that
    /// its anti-symmetric orbit matrix is isostatic.
    fn double_triangle_framework() -> SymmetricFramework {
        let quotient = SignedQuotientGraph::new(
            names(&["a", "b", "c"]),
            vec![
                edge("e1", 2, 0, Sign::Plus),
                edge("e2", 0, 1, Sign::Plus),
                edge("e3", 0, 1, Sign::Minus),
                edge("e4", 2, 1, Sign::Plus),
                edge("e5", 2, 1, Sign::Minus),
            ],
        )
        .unwrap();
        SymmetricFramework::new(
            QuadNorm::linf(),
            quotient,
            vec![
                Vec2::new(q(0), qr(-1, 2)),
                Vec2::new(qr(3, 2), qr(-1, 2)),
                Vec2::new(q(0), qr(-3, 2)),
            ],
        )
        .unwrap()
    }

    fn sample_frameworks() -> Vec<SymmetricFramework> {
        let l1_pair = {
            let quotient = SignedQuotientGraph::new(
                names(&["a", "b"]),
                vec![
                    edge("e1", 0, 1, Sign::Plus),
                    edge("e2", 0, 1, Sign::Minus),
                    edge("e3", 0, 0, Sign::Minus),
                ],
            )
            .unwrap();
            SymmetricFramework::new(
                QuadNorm::l1(),
                quotient,
                vec![Vec2::from_ints(3, 1), Vec2::from_ints(1, -2)],
            )
            .unwrap()
        };
        vec![
            single_fixed_bar(),
            triangle_parallel_loop_framework(),
            double_triangle_framework(),
            l1_pair,
        ]
    }

    #[test]
    fn fixed_bar_row_matches_hand_computation() {
        let fw = single_fixed_bar();
        let df = rigidity_matrix(&fw).unwrap();
        assert_eq!(df.matrix.rows(), 1);
        assert_eq!(df.matrix.cols(), 4);
        let expect = [q(0), q(1), q(0), q(-1)];
        for (j, want) in expect.iter().enumerate() {
            assert_eq!(&df.matrix[(0, j)], want, "column {j}");
        }

        let o1 = orbit_matrix_sym(&fw).unwrap();
        assert_eq!(o1.matrix.rows(), 1);
        assert_eq!(o1.matrix[(0, 0)], q(0));
        assert_eq!(o1.matrix[(0, 1)], q(2));

        let o2 = orbit_matrix_anti(&fw).unwrap();
        assert_eq!(o2.matrix.rows(), 0);
        assert_eq!(o2.matrix.cols(), 2);

        let report = rigidity_report(&fw).unwrap();
        assert!(report.sym_isostatic, "one fixed bar pins the symmetric dof");
        assert!(!report.anti_inf_rigid);
        assert!(!report.inf_rigid);
    }

    #[test]
    fn triangle_parallel_loop_is_sym_isostatic_but_flexible() {
        let report = rigidity_report(&triangle_parallel_loop_framework()).unwrap();
        assert_eq!(report.sym.rank, 5);
        assert_eq!(report.sym.nullity, 1);
        assert!(report.sym_isostatic);
        assert!(!report.anti_inf_rigid);
        assert!(!report.inf_rigid, "anti-symmetric flexes remain");
    }

    #[test]
    fn double_triangle_is_anti_isostatic_but_not_sym_rigid() {
        let report = rigidity_report(&double_triangle_framework()).unwrap();
        assert_eq!(report.anti.rank, 5);
        assert_eq!(report.anti.nullity, 1);
        assert!(report.anti_isostatic);
        assert!(!report.sym_inf_rigid, "a fully-symmetric flex remains");
        assert!(!report.inf_rigid);
    }

    #[test]
    fn ranks_and_nullities_add_up() {
        for fw in sample_frameworks() {
            let report = rigidity_report(&fw).unwrap();
            assert_eq!(
                report.covering.rank,
                report.sym.rank + report.anti.rank,
                "rank additivity"
            );
            assert_eq!(
                report.covering.nullity,
                report.sym.nullity + report.anti.nullity,
                "nullity additivity"
            );
        }
    }

    #[test]
    fn lifted_kernel_vectors_are_covering_flexes() {
        for fw in sample_frameworks() {
            let df = rigidity_matrix(&fw).unwrap().matrix;
            for (class, labeled) in [
                (FlexClass::Symmetric, orbit_matrix_sym(&fw).unwrap()),
                (FlexClass::AntiSymmetric, orbit_matrix_anti(&fw).unwrap()),
            ] {
                for v in labeled.matrix.nullspace() {
                    let lifted = lift_flex(&fw, class, &v);
                    let image = df.mul_vec(&lifted);
                    assert!(
                        image.iter().all(Q::is_zero),
                        "lifted {class:?} flex must satisfy every bar condition"
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_splits_covering_flexes_exactly() {
        for fw in sample_frameworks() {
            let df = rigidity_matrix(&fw).unwrap().matrix;
            let o1 = orbit_matrix_sym(&fw).unwrap().matrix;
            let o2 = orbit_matrix_anti(&fw).unwrap().matrix;
            for flex in df.nullspace() {
                let (a, b) = decompose_flex(&fw, &flex);
                assert!(o1.mul_vec(&a).iter().all(Q::is_zero), "symmetric part");
                assert!(o2.mul_vec(&b).iter().all(Q::is_zero), "anti-symmetric part");
                let rebuilt: Vec<Q> = lift_flex(&fw, FlexClass::Symmetric, &a)
                    .into_iter()
                    .zip(lift_flex(&fw, FlexClass::AntiSymmetric, &b))
                    .map(|(x, y)| x + y)
                    .collect();
                assert_eq!(rebuilt, flex, "parts must reassemble the flex");
            }
        }
    }

    #[test]
    fn constant_translations_are_trivial_flexes() {
        for fw in sample_frameworks() {
            let t = fw.norm().reflection_user();
            let minus = mat2_to_matrix(&{
                let mut m = Mat2::identity();
                for r in 0..2 {
                    for c in 0..2 {
                        m.m[r][c] = &m.m[r][c] - &t.m[r][c];
                    }
                }
                m
            });
            let plus = mat2_to_matrix(&{
                let mut m = Mat2::identity();
                for r in 0..2 {
                    for c in 0..2 {
                        m.m[r][c] = &m.m[r][c] + &t.m[r][c];
                    }
                }
                m
            });
            let n = fw.quotient().n_orbits();
            // Mirror-direction translation is a symmetric flex.
            let o1 = orbit_matrix_sym(&fw).unwrap().matrix;
            for basis in minus.nullspace() {
                let field: Vec<Q> = (0..n).flat_map(|_| basis.clone()).collect();
                assert!(o1.mul_vec(&field).iter().all(Q::is_zero));
            }
            // Perpendicular translation is an anti-symmetric flex.
            let o2 = orbit_matrix_anti(&fw).unwrap().matrix;
            for basis in plus.nullspace() {
                let field: Vec<Q> = (0..n).flat_map(|_| basis.clone()).collect();
                assert!(o2.mul_vec(&field).iter().all(Q::is_zero));
            }
        }
    }

    #[test]
    fn trivial_dims_are_two_one_one() {
        for norm in [
            QuadNorm::linf(),
            QuadNorm::l1(),
            QuadNorm::new(Vec2::from_ints(2, 3), Vec2::from_ints(1, -1)).unwrap(),
        ] {
            assert_eq!(trivial_flex_dims(&norm), (2, 1, 1));
        }
    }

    #[test]
    fn placed_triangle_ranks_follow_the_edge_count() {
        // Three joints, growing edge sets: a two-bar path, a triangle, then
        // the complete graph on four joints.
        let p = vec![
            Vec2::from_ints(0, 0),
            Vec2::new(q(1), qr(1, 5)),
            Vec2::new(qr(-1, 5), q(1)),
        ];
        let path = PlainFramework::new(QuadNorm::linf(), p.clone(), vec![(0, 1), (0, 2)]).unwrap();
        let df = plain_rigidity_matrix(&path).unwrap().matrix;
        assert_eq!((df.rank(), df.cols() - df.rank()), (2, 4));

        let triangle =
            PlainFramework::new(QuadNorm::linf(), p.clone(), vec![(0, 1), (0, 2), (1, 2)])
                .unwrap();
        let df = plain_rigidity_matrix(&triangle).unwrap().matrix;
        assert_eq!((df.rank(), df.cols() - df.rank()), (3, 3));

        let mut p4 = p;
        p4.push(Vec2::new(qr(6, 5), qr(7, 5)));
        let k4 = PlainFramework::new(
            QuadNorm::linf(),
            p4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let df = plain_rigidity_matrix(&k4).unwrap().matrix;
        assert_eq!((df.rank(), df.cols() - df.rank()), (6, 2));
    }
}
