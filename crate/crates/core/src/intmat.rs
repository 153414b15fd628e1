//! Small exact integer linear algebra on 3x3 matrices.
//!
//! Matrices are stored row-major as `[[i64; 3]; 3]`. Every routine here is
//! exact; intermediate values are widened to `i128` where products of
//! three entries appear.

#![allow(clippy::needless_range_loop)]

pub type Vec3 = [i64; 3];
pub type Mat3 = [[i64; 3]; 3];

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn det3(m: &Mat3) -> i64 {
    let [a, b, c] = m.map(|row| row.map(i128::from));
    let d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    i64::try_from(d).expect("determinant overflows i64")
}

/// Determinant of the matrix whose rows are `a`, `b`, `c`.
pub fn det_rows(a: &Vec3, b: &Vec3, c: &Vec3) -> i64 {
    det3(&[*a, *b, *c])
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn gcd_vec(v: &Vec3) -> i64 {
    use num_integer::Integer;
    v[0].gcd(&v[1]).gcd(&v[2])
}

/// Divides `v` by the gcd of its entries. The zero vector is returned as is.
pub fn primitive_dir(v: &Vec3) -> Vec3 {
    let g = gcd_vec(v);
    if g == 0 {
        *v
    } else {
        v.map(|x| x / g)
    }
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut t = [[0; 3]; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = *x;
        }
    }
    t
}

/// Adjugate, so that `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let mut adj = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Row vector times matrix.
pub fn vec_mat(v: &Vec3, m: &Mat3) -> Vec3 {
    let mut out = [0; 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|k| v[k] * m[k][j]).sum();
    }
    out
}

/// Hermite basis of the lattice spanned by the given integer row vectors.
///
/// Returns an upper-triangular basis with positive diagonal, or `None` when
/// the rows do not span a rank-3 lattice.
pub fn hermite_basis(rows: &[Vec3]) -> Option<Mat3> {
    let mut rows: Vec<Vec3> = rows.to_vec();
    let mut pivot = 0;
    for col in 0..3 {
        loop {
            // smallest nonzero |entry| in this column becomes the pivot
            let best = (pivot..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let p = rows[pivot];
            let mut done = true;
            for row in rows.iter_mut().skip(pivot + 1) {
                let q = row[col].div_euclid(p[col]);
                for k in 0..3 {
                    row[k] -= q * p[k];
                }
                if row[col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot < rows.len() && rows[pivot][col] != 0 {
            pivot += 1;
        } else {
            return None;
        }
    }
    let mut basis = [rows[0], rows[1], rows[2]];
    for i in 0..3 {
        if basis[i][i] < 0 {
            basis[i] = basis[i].map(|x| -x);
        }
    }
    // reduce entries above the diagonal
    for j in 1..3 {
        for i in 0..j {
            let q = basis[i][j].div_euclid(basis[j][j]);
            let pj = basis[j];
            for k in 0..3 {
                basis[i][k] -= q * pj[k];
            }
        }
    }
    Some(basis)
}

/// Smith normal form `u * a * v = diag(d)` with `d[0] | d[1] | d[2]`,
/// `d[i] >= 0`, and `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Mat3,
    pub v: Mat3,
    pub diag: [i64; 3],
}

pub fn smith(a: &Mat3) -> Smith {
    let mut m = *a;
    let mut u = IDENTITY;
    let mut v = IDENTITY;
    for t in 0..3 {
        loop {
            // move the smallest nonzero entry of the trailing block to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..3 {
                for j in t..3 {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            swap_rows(&mut m, &mut u, t, bi);
            swap_cols(&mut m, &mut v, t, bj);
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..3 {
                let q = m[i][t].div_euclid(p);
                add_row(&mut m, &mut u, i, t, -q);
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..3 {
                let q = m[t][j].div_euclid(p);
                add_col(&mut m, &mut v, j, t, -q);
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let bad = (t + 1..3)
                .flat_map(|i| (t + 1..3).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => add_row(&mut m, &mut u, t, i, 1),
                None => break,
            }
        }
    }
    for t in 0..3 {
        if m[t][t] < 0 {
            for k in 0..3 {
                m[t][k] = -m[t][k];
                u[t][k] = -u[t][k];
            }
        }
    }
    Smith {
        u,
        v,
        diag: [m[0][0], m[1][1], m[2][2]],
    }
}

fn swap_rows(m: &mut Mat3, u: &mut Mat3, a: usize, b: usize) {
    m.swap(a, b);
    u.swap(a, b);
}

fn swap_cols(m: &mut Mat3, v: &mut Mat3, a: usize, b: usize) {
    for row in m.iter_mut().chain(v.iter_mut()) {
        row.swap(a, b);
    }
}

/// row[dst] += k * row[src]
fn add_row(m: &mut Mat3, u: &mut Mat3, dst: usize, src: usize, k: i64) {
    for c in 0..3 {
        m[dst][c] += k * m[src][c];
        u[dst][c] += k * u[src][c];
    }
}

/// col[dst] += k * col[src]
fn add_col(m: &mut Mat3, v: &mut Mat3, dst: usize, src: usize, k: i64) {
    for row in m.iter_mut().chain(v.iter_mut()) {
        row[dst] += k * row[src];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_identity_and_swap() {
        assert_eq!(det3(&IDENTITY), 1);
        assert_eq!(det3(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]), -1);
        assert_eq!(det3(&[[2, 0, 0], [0, 3, 0], [1, 1, 5]]), 30);
    }

    #[test]
    fn adjugate_inverts() {
        let m = [[2, 1, 0], [1, 3, 1], [0, 4, 5]];
        let d = det3(&m);
        let p = mat_mul(&m, &adjugate(&m));
        assert_eq!(p, [[d, 0, 0], [0, d, 0], [0, 0, d]]);
    }

    #[test]
    fn hermite_basis_of_index_eleven_overlattice() {
        // 11 * (Z^3 + Z (1,2,8)/11)
        let rows = [[11, 0, 0], [0, 11, 0], [0, 0, 11], [1, 2, 8]];
        let b = hermite_basis(&rows).unwrap();
        assert_eq!(det3(&b).abs(), 11 * 11);
        assert_eq!(b[0], [1, 2, 8]);
    }

    #[test]
    fn hermite_basis_rejects_rank_deficient() {
        assert!(hermite_basis(&[[1, 0, 0], [2, 0, 0], [0, 1, 0]]).is_none());
    }

    #[test]
    fn smith_of_diagonalizable() {
        let a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
        let s = smith(&a);
        assert_eq!(s.diag, [2, 6, 12]);
        let prod = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(prod, [[2, 0, 0], [0, 6, 0], [0, 0, 12]]);
        assert_eq!(det3(&s.u).abs(), 1);
        assert_eq!(det3(&s.v).abs(), 1);
    }

    #[test]
    fn smith_of_cyclic_quotient() {
        let a = [[1, 0, 0], [0, 1, 0], [1, 2, 7]];
        let s = smith(&a);
        assert_eq!(s.diag, [1, 1, 7]);
    }
}
