//! The published basis of the maximal so(3) in sp(2) has entries in Q(√3).
//! Checked here in exact Q(√3) arithmetic against the rational model.

use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, Zero};

use postrip::algebra::classical::{so3max_generators, Field, KMatrix};
use postrip::linalg::matrix::Matrix;
use postrip::linalg::scalar::frac;
use postrip::linalg::Scalar;

/// `a + b√3`.
#[derive(Clone, Debug, PartialEq)]
struct Q3(BigRational, BigRational);

impl Q3 {
    fn r(n: i64, d: i64) -> Q3 {
        Q3(frac(n, d), BigRational::zero())
    }
    fn s(n: i64, d: i64) -> Q3 {
        Q3(BigRational::zero(), frac(n, d))
    }
    fn zero() -> Q3 {
        Q3::r(0, 1)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn inv(&self) -> Q3 {
        let n = &self.0 * &self.0 - frac(3, 1) * &self.1 * &self.1;
        Q3(&self.0 / &n, -&self.1 / &n)
    }
}

impl Add for Q3 {
    type Output = Q3;
    fn add(self, o: Q3) -> Q3 {
        Q3(self.0 + o.0, self.1 + o.1)
    }
}
impl Sub for Q3 {
    type Output = Q3;
    fn sub(self, o: Q3) -> Q3 {
        Q3(self.0 - o.0, self.1 - o.1)
    }
}
impl Neg for Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3(-self.0, -self.1)
    }
}
impl Mul for Q3 {
    type Output = Q3;
    fn mul(self, o: Q3) -> Q3 {
        let three = frac(3, 1);
        Q3(&self.0 * &o.0 + three * &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
}

type Quat = [Q3; 4];

fn qzero() -> Quat {
    [Q3::zero(), Q3::zero(), Q3::zero(), Q3::zero()]
}

fn qmul(x: &Quat, y: &Quat) -> Quat {
    let [a1, b1, c1, d1] = x.clone();
    let [a2, b2, c2, d2] = y.clone();
    [
        a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
        a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
        a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn qadd(x: &Quat, y: &Quat) -> Quat {
    std::array::from_fn(|i| x[i].clone() + y[i].clone())
}

fn qconj(x: &Quat) -> Quat {
    [x[0].clone(), -x[1].clone(), -x[2].clone(), -x[3].clone()]
}

fn qscale(x: &Quat, c: &Q3) -> Quat {
    std::array::from_fn(|i| x[i].clone() * c.clone())
}

/// 2x2 quaternionic matrix.
type M2 = [[Quat; 2]; 2];

fn mmul(x: &M2, y: &M2) -> M2 {
    std::array::from_fn(|i| std::array::from_fn(|j| qadd(&qmul(&x[i][0], &y[0][j]), &qmul(&x[i][1], &y[1][j]))))
}

fn msub(x: &M2, y: &M2) -> M2 {
    std::array::from_fn(|i| std::array::from_fn(|j| qadd(&x[i][j], &qscale(&y[i][j], &Q3::r(-1, 1)))))
}

fn bracket(x: &M2, y: &M2) -> M2 {
    msub(&mmul(x, y), &mmul(y, x))
}

/// `Re tr(X Y*)`.
fn pairing(x: &M2, y: &M2) -> Q3 {
    let mut s = Q3::zero();
    for i in 0..2 {
        for j in 0..2 {
            s = s + qmul(&x[i][j], &qconj(&y[i][j]))[0].clone();
        }
    }
    s
}

fn q(a: Q3, b: Q3, c: Q3, d: Q3) -> Quat {
    [a, b, c, d]
}

fn published() -> [M2; 3] {
    let z = Q3::zero;
    [
        [[q(z(), Q3::r(3, 2), z(), z()), qzero()], [qzero(), q(z(), Q3::r(1, 2), z(), z())]],
        [[qzero(), q(Q3::s(1, 2), z(), z(), z())], [q(Q3::s(-1, 2), z(), z(), z()), q(z(), z(), Q3::r(1, 1), z())]],
        [[qzero(), q(z(), Q3::s(1, 2), z(), z())], [q(z(), Q3::s(1, 2), z(), z()), q(z(), z(), z(), Q3::r(1, 1))]],
    ]
}

/// `S X S^{-1}` with `S = diag(√3, 1)`.
fn conjugate(x: &M2) -> M2 {
    let s = [Q3::s(1, 1), Q3::r(1, 1)];
    std::array::from_fn(|i| std::array::from_fn(|j| qscale(&x[i][j], &(s[i].clone() * s[j].inv()))))
}

fn rational(x: &Q3) -> Scalar {
    assert!(x.1.is_zero(), "entry {x:?} is irrational");
    x.0.clone()
}

fn realify(x: &M2) -> Matrix {
    let mut k = KMatrix::new(Field::H, 2);
    for i in 0..2 {
        for j in 0..2 {
            k = k.set(i, j, x[i][j].iter().map(rational).collect());
        }
    }
    k.realify()
}

#[test]
fn published_basis_is_skew_hermitian() {
    for x in published() {
        for i in 0..2 {
            for j in 0..2 {
                let lhs = qconj(&x[j][i]);
                let rhs = qscale(&x[i][j], &Q3::r(-1, 1));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn conjugation_gives_the_rational_model() {
    let ours = so3max_generators(2);
    for (x, y) in published().iter().zip(&ours) {
        assert_eq!(realify(&conjugate(x)), *y);
    }
}

#[test]
fn structure_constants_agree() {
    let p = published();
    let ours = so3max_generators(2);
    for i in 0..3 {
        for j in i + 1..3 {
            let c = bracket(&p[i], &p[j]);
            // The published basis is orthogonal for Re tr(X Y*).
            let coeffs: Vec<Q3> =
                (0..3).map(|k| pairing(&c, &p[k]) * pairing(&p[k], &p[k]).inv()).collect();
            let mut rebuilt: M2 = std::array::from_fn(|_| std::array::from_fn(|_| qzero()));
            for (k, ck) in coeffs.iter().enumerate() {
                rebuilt = std::array::from_fn(|a| std::array::from_fn(|b| qadd(&rebuilt[a][b], &qscale(&p[k][a][b], ck))));
            }
            assert_eq!(rebuilt, c, "bracket of {i},{j} leaves the span");
            let mut expected = Matrix::zeros(8, 8);
            for (k, ck) in coeffs.iter().enumerate() {
                expected.axpy(&rational(ck), &ours[k]);
            }
            assert_eq!(ours[i].commutator(&ours[j]), expected);
            assert!(coeffs.iter().any(|c| !c.is_zero()));
        }
    }
}
