//! Small dense linear algebra over F_{q^n}.

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};

pub type Mat<const N: usize> = [[Fe; N]; N];
pub type Mat2 = Mat<2>;
pub type Mat3 = Mat<3>;

pub fn identity<const N: usize>() -> Mat<N> {
    let mut a = [[Fe::ZERO; N]; N];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Fe::ONE;
    }
    a
}

pub fn transpose<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut t = [[Fe::ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn map_entries<const N: usize>(a: &Mat<N>, f: impl Fn(Fe) -> Fe) -> Mat<N> {
    a.map(|row| row.map(&f))
}

pub fn mat_mul<const N: usize>(field: &FieldTower, a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = [[Fe::ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut acc = Fe::ZERO;
            for k in 0..N {
                acc = field.add(acc, field.mul(a[i][k], b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_vec<const N: usize>(field: &FieldTower, a: &Mat<N>, v: &[Fe; N]) -> [Fe; N] {
    let mut out = [Fe::ZERO; N];
    for i in 0..N {
        let mut acc = Fe::ZERO;
        for k in 0..N {
            acc = field.add(acc, field.mul(a[i][k], v[k]));
        }
        out[i] = acc;
    }
    out
}

pub fn scale_mat<const N: usize>(field: &FieldTower, rho: Fe, a: &Mat<N>) -> Mat<N> {
    map_entries(a, |x| field.mul(rho, x))
}

pub fn dot<const N: usize>(field: &FieldTower, a: &[Fe; N], b: &[Fe; N]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn cross(field: &FieldTower, a: &[Fe; 3], b: &[Fe; 3]) -> [Fe; 3] {
    let f = |i: usize, j: usize| field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i]));
    [f(1, 2), f(2, 0), f(0, 1)]
}

pub fn det3(field: &FieldTower, a: &Mat3) -> Fe {
    let c = cross(field, &a[1], &a[2]);
    dot(field, &a[0], &c)
}

/// Inverse of a 3×3 matrix via the adjugate.
pub fn inverse3(field: &FieldTower, a: &Mat3) -> Result<Mat3> {
    // rows of the adjugate transposed: columns are cross products of rows
    let c0 = cross(field, &a[1], &a[2]);
    let c1 = cross(field, &a[2], &a[0]);
    let c2 = cross(field, &a[0], &a[1]);
    let det = dot(field, &a[0], &c0);
    let inv_det = field.inv(det).map_err(|_| Error::SingularMatrix)?;
    let mut out = [[Fe::ZERO; 3]; 3];
    for i in 0..3 {
        out[i][0] = field.mul(c0[i], inv_det);
        out[i][1] = field.mul(c1[i], inv_det);
        out[i][2] = field.mul(c2[i], inv_det);
    }
    Ok(out)
}

/// Gauss-Jordan inverse for any square size.
pub fn inverse<const N: usize>(field: &FieldTower, a: &Mat<N>) -> Result<Mat<N>> {
    let mut rows: Vec<Vec<Fe>> = (0..N)
        .map(|i| {
            let mut r = a[i].to_vec();
            r.extend((0..N).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    let pivots = rref(field, &mut rows);
    if pivots.len() < N || pivots[N - 1] != N - 1 {
        return Err(Error::SingularMatrix);
    }
    let mut out = [[Fe::ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = rows[i][N + j];
        }
    }
    Ok(out)
}

/// Reduces `rows` to reduced row echelon form in place, choosing the first
/// non-zero entry of each column as pivot. Returns the pivot columns.
pub fn rref(field: &FieldTower, rows: &mut [Vec<Fe>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("pivot is non-zero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &FieldTower, rows: &[Vec<Fe>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

pub fn mat_rank<const N: usize>(field: &FieldTower, a: &Mat<N>) -> usize {
    let rows: Vec<Vec<Fe>> = a.iter().map(|r| r.to_vec()).collect();
    rank(field, &rows)
}

/// Basis of {x : rows · x = 0}, one vector per free column, in column order.
pub fn nullspace(field: &FieldTower, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; ncols];
        v[free] = Fe::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(work[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves a·x = b for a square invertible system.
pub fn solve<const N: usize>(field: &FieldTower, a: &Mat<N>, b: &[Fe; N]) -> Result<[Fe; N]> {
    let inv = inverse(field, a)?;
    Ok(mat_vec(field, &inv, b))
}
