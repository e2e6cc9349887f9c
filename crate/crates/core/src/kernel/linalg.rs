//! Dense exact linear algebra over the rationals.
//!
//! Elimination always pivots on the first nonzero entry of a column so that
//! echelon forms and nullspace bases are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type QVector = Vec<Rational>;
pub type QMatrix = Vec<Vec<Rational>>;
pub type IntVector = Vec<BigInt>;

/// A feasible solution of `A x = b`: one particular solution and a basis of
/// the nullspace of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: QVector,
    pub nullspace: Vec<QVector>,
}

fn check_rows(a: &[QVector]) -> Result<usize> {
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("matrix rows have different lengths".into()));
    }
    Ok(cols)
}

/// Reduced row echelon form. Returns the reduced matrix and the pivot columns.
pub fn rref(a: &[QVector]) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &[QVector]) -> usize {
    rref(a).1.len()
}

/// Basis of `{x : A x = 0}`, one vector per free column, in column order.
pub fn nullspace(a: &[QVector], cols: usize) -> Vec<QVector> {
    let (m, pivots) = rref(a);
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][f];
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` exactly.
///
/// Returns `Ok(None)` when the system is infeasible.
///
/// # Errors
///
/// Fails when the rows of `A` have different lengths or `b` has the wrong length.
pub fn solve_linear(a: &[QVector], b: &[Rational]) -> Result<Option<LinearSolution>> {
    let cols = check_rows(a)?;
    if b.len() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} for {} equations",
            b.len(),
            a.len()
        )));
    }
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][cols].clone();
    }
    Ok(Some(LinearSolution { particular: x, nullspace: nullspace(a, cols) }))
}

pub fn determinant(a: &[QVector]) -> Rational {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip().expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[QVector]) -> Option<QMatrix> {
    let n = a.len();
    let aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(a: &[QVector]) -> QMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &[QVector], x: &[Rational]) -> QVector {
    a.iter().map(|r| dot(r, x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rational_vec(v: &[BigInt]) -> QVector {
    v.iter().map(Rational::from).collect()
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Divides an integer vector by the gcd of its entries, keeping the sign.
///
/// # Errors
///
/// Fails on the zero vector.
pub fn primitive(v: &[BigInt]) -> Result<IntVector> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

/// Scales a nonzero rational vector to the primitive integer vector pointing
/// the same way.
///
/// # Errors
///
/// Fails on the zero vector.
pub fn primitive_direction(v: &[Rational]) -> Result<IntVector> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: IntVector = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

/// Lattice length of the segment `t * p` where `p` is the primitive integer
/// direction of `d`; this is `t`.
///
/// # Errors
///
/// Fails on the zero vector.
pub fn lattice_length(d: &[Rational]) -> Result<Rational> {
    let p = primitive_direction(d)?;
    let (i, pi) = p.iter().enumerate().find(|(_, x)| !x.is_zero()).expect("primitive vector is nonzero");
    Ok((&d[i] / Rational::from(pi)).abs())
}

/// Converts an integral rational vector to integers.
pub fn to_int_vec(v: &[Rational]) -> Option<IntVector> {
    v.iter().map(Rational::to_integer).collect()
}

pub fn abs_sum(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub fn bigint_abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qi};

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn identity_solve() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let s = solve_linear(&a, &[q(1, 2), qi(0)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q(1, 2), qi(0)]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn underdetermined_solve() {
        let a = m(&[&[1, 1]]);
        let s = solve_linear(&a, &[qi(0)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![qi(0), qi(0)]);
        assert_eq!(s.nullspace, vec![vec![qi(-1), qi(1)]]);
    }

    #[test]
    fn infeasible_is_not_an_error() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&a, &[qi(1), qi(3)]).unwrap(), None);
    }

    #[test]
    fn ragged_rows_rejected() {
        let a = vec![vec![qi(1)], vec![qi(1), qi(2)]];
        assert!(solve_linear(&a, &[qi(0), qi(0)]).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        // fiber conormals of a Delta_3 bundle: -e1, -e2, -e3, e1+e2+e3
        let fib = m(&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[1, 1, 1, 0]]);
        assert_eq!(rank(&fib), 3);
    }

    #[test]
    fn codimension_one_span_of_remaining_conormals() {
        // All conormals of the Delta_3 bundle over Delta_1 except the first two.
        let rows = m(&[&[0, 0, -1, 0], &[1, 1, 1, 0], &[0, 0, 0, -1], &[-1, -1, 0, 1]]);
        // Nullspace of A (vectors x with <eta_k, x> = 0 for all remaining k).
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(mat_vec(&rows, v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&int_vec(&[2, 4, -6])).unwrap(), int_vec(&[1, 2, -3]));
        assert_eq!(primitive(&int_vec(&[0, 0, 5])).unwrap(), int_vec(&[0, 0, 1]));
        assert_eq!(primitive(&int_vec(&[1, 0, 1, -1])).unwrap(), int_vec(&[1, 0, 1, -1]));
        assert!(primitive(&int_vec(&[0, 0])).is_err());
        assert_eq!(primitive_direction(&[q(1, 2), q(-1, 3)]).unwrap(), int_vec(&[3, -2]));
    }

    #[test]
    fn lattice_lengths() {
        assert_eq!(lattice_length(&[qi(2), qi(0)]).unwrap(), qi(2));
        assert_eq!(lattice_length(&[qi(1), qi(1)]).unwrap(), qi(1));
        assert_eq!(lattice_length(&[qi(-3), qi(6)]).unwrap(), qi(3));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&a), qi(-2));
        let inv = inverse(&a).unwrap();
        let prod: QMatrix =
            a.iter().map(|r| (0..3).map(|j| (0..3).map(|k| &r[k] * &inv[k][j]).sum()).collect()).collect();
        assert_eq!(prod, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
