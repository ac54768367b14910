use num::{One, Zero};
use proptest::prelude::*;

use postrip::algebra::classical::{Field, KMatrix};
use postrip::algebra::{build_classical, Family};
use postrip::linalg::matrix::{dot, vec_add, vec_is_zero, Matrix};
use postrip::linalg::rref::{nullspace_rows, rref};
use postrip::linalg::scalar::{self, frac};
use postrip::linalg::{rank, Scalar, SparseEliminator, Subspace};

fn small() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(0i64).prop_map(|_| Scalar::zero()),
        4 => (-4i64..=4).prop_map(|n| frac(n, 1)),
        2 => (-6i64..=6, 1i64..=5).prop_map(|(n, d)| frac(n, d)),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(small(), r * c).prop_map(move |d| Matrix::from_vec(r, c, d)))
}

fn vectors(ambient: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(small(), ambient), 0..=max)
}

/// Textbook Gauss-Jordan over the rationals.
fn naive_rref(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::R), Just(Field::C), Just(Field::H)]
}

/// Hamilton product on `(1, i, j, k)` coordinates, truncated to the field.
fn kmul(f: Field, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let g = |v: &[Scalar], i: usize| v.get(i).cloned().unwrap_or_else(Scalar::zero);
    let (a1, b1, c1, d1) = (g(x, 0), g(x, 1), g(x, 2), g(x, 3));
    let (a2, b2, c2, d2) = (g(y, 0), g(y, 1), g(y, 2), g(y, 3));
    let full = [
        &a1 * &a2 - &b1 * &b2 - &c1 * &c2 - &d1 * &d2,
        &a1 * &b2 + &b1 * &a2 + &c1 * &d2 - &d1 * &c2,
        &a1 * &c2 - &b1 * &d2 + &c1 * &a2 + &d1 * &b2,
        &a1 * &d2 + &b1 * &c2 - &c1 * &b2 + &d1 * &a2,
    ];
    full[..f.dim()].to_vec()
}

type Dense = Vec<Vec<Vec<Scalar>>>;

fn kmatrix(f: Field, n: usize) -> impl Strategy<Value = Dense> {
    prop::collection::vec(prop::collection::vec(prop::collection::vec(small(), f.dim()), n), n)
}

fn dense_mul(f: Field, x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(vec![Scalar::zero(); f.dim()], |acc, l| vec_add(&acc, &kmul(f, &x[i][l], &y[l][j]))))
                .collect()
        })
        .collect()
}

fn to_kmatrix(f: Field, x: &Dense) -> KMatrix {
    let n = x.len();
    let mut k = KMatrix::new(f, n);
    for i in 0..n {
        for j in 0..n {
            k = k.set(i, j, x[i][j].clone());
        }
    }
    k
}

fn family() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (2usize..=4).prop_map(|n| (Family::So, n)),
        (2usize..=3).prop_map(|n| (Family::Su, n)),
        (1usize..=2).prop_map(|n| (Family::U, n)),
        (1usize..=2).prop_map(|n| (Family::Sp, n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(6, 7)) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn fraction_free_elimination_matches_gauss_jordan(m in matrix(6, 7)) {
        let red = rref(&m);
        let (rows, pivots) = naive_rref(&m);
        prop_assert_eq!(red.matrix.row_vecs(), rows);
        prop_assert_eq!(red.pivots, pivots);
    }

    #[test]
    fn sparse_eliminator_matches_dense(m in matrix(7, 6)) {
        let mut e = SparseEliminator::new(m.cols());
        for r in m.row_vecs() {
            e.push_dense(&r);
        }
        prop_assert_eq!(e.into_rref(), rref(&m));
    }

    #[test]
    fn rank_plus_nullity(m in matrix(6, 7)) {
        let null = nullspace_rows(&m);
        prop_assert_eq!(rank(&m) + null.len(), m.cols());
        for v in &null {
            prop_assert!(vec_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn dimension_formula((ambient, u, w) in (1usize..=12).prop_flat_map(|a| (Just(a), vectors(a, 6), vectors(a, 6)))) {
        let (u, w) = (Subspace::span(ambient, &u), Subspace::span(ambient, &w));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains_subspace(&u) && sum.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&cap) && w.contains_subspace(&cap));
    }

    #[test]
    fn projection_splits_orthogonally(
        basis in vectors(6, 4),
        v in prop::collection::vec(small(), 6),
        weights in prop::collection::vec(1i64..=4, 6),
    ) {
        let mut gram = Matrix::zeros(6, 6);
        for (i, w) in weights.iter().enumerate() {
            gram[(i, i)] = frac(*w, 1);
        }
        let s = Subspace::span(6, &basis);
        let rest = s.orthocomplement(&Subspace::full(6), &gram).unwrap();
        prop_assert_eq!(s.dim() + rest.dim(), 6);
        let p = s.projector(&gram).unwrap();
        let q = rest.projector(&gram).unwrap();
        prop_assert_eq!(p.mul(&p), p.clone());
        let (a, b) = (p.mul_vec(&v), q.mul_vec(&v));
        prop_assert_eq!(vec_add(&a, &b), v);
        prop_assert!(s.contains(&a) && rest.contains(&b));
        prop_assert!(dot(&a, &gram.mul_vec(&b)).is_zero());
    }

    #[test]
    fn realification_is_multiplicative((f, x, y) in field().prop_flat_map(|f| (1usize..=3).prop_flat_map(move |n| (Just(f), kmatrix(f, n), kmatrix(f, n))))) {
        let (rx, ry) = (to_kmatrix(f, &x).realify(), to_kmatrix(f, &y).realify());
        let xy = to_kmatrix(f, &dense_mul(f, &x, &y)).realify();
        let yx = to_kmatrix(f, &dense_mul(f, &y, &x)).realify();
        prop_assert_eq!(rx.mul(&ry), xy.clone());
        prop_assert_eq!(rx.commutator(&ry), xy.sub(&yx));
    }

    #[test]
    fn brackets_are_lie_and_the_form_is_invariant(
        (fam, n) in family(),
        c in prop::collection::vec(prop::collection::vec(small(), 10), 3),
    ) {
        let l = build_classical(fam, n).unwrap();
        let d = l.dim();
        let [x, y, z] = [&c[0], &c[1], &c[2]].map(|v| v.iter().cycle().take(d).cloned().collect::<Vec<_>>());
        let xy = l.bracket(&x, &y);
        prop_assert_eq!(xy.iter().map(|a| -a).collect::<Vec<_>>(), l.bracket(&y, &x));
        let jacobi = vec_add(&vec_add(&l.bracket(&x, &l.bracket(&y, &z)), &l.bracket(&y, &l.bracket(&z, &x))), &l.bracket(&z, &l.bracket(&x, &y)));
        prop_assert!(vec_is_zero(&jacobi));
        prop_assert_eq!(l.element(&xy), l.element(&x).commutator(&l.element(&y)));
        prop_assert_eq!(l.inner(&xy, &z), -l.inner(&y, &l.bracket(&x, &z)));
        if !vec_is_zero(&x) {
            prop_assert!(scalar::is_positive(&l.inner(&x, &x)));
        }
    }

    #[test]
    fn scalars_survive_text(n in -1000i64..1000, d in 1i64..1000) {
        let x = frac(n, d);
        prop_assert_eq!(scalar::parse(&scalar::to_string(&x)), Some(x));
    }
}
