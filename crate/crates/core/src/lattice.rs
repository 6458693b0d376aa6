//! Small-integer lattice helpers: primitive vectors, integer kernels, bases of
//! direction lattices and coordinates with respect to them.

use num_integer::Integer;

pub type Point = Vec<i64>;

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divide by the gcd of the entries; zero stays zero.
pub fn primitive(v: &[i64]) -> Point {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Determinant by cofactor expansion (dimensions here are at most 3).
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Basis of the integer kernel `{x in Z^n : rows . x = 0}`, via unimodular
/// column reduction of the row matrix.
pub fn integer_kernel(rows: &[Point], n: usize) -> Vec<Point> {
    // Columns of `u` track the unimodular transform applied to the columns of `a`.
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut pivot_col = 0;
    for r in 0..a.len() {
        if pivot_col >= n {
            break;
        }
        loop {
            // Euclid across columns pivot_col.. on row r.
            let nz: Vec<usize> = (pivot_col..n).filter(|&c| a[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            swap_cols(&mut a, &mut u, pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..n {
                if a[r][c] != 0 {
                    let q = Integer::div_floor(&a[r][c], &a[r][pivot_col]);
                    add_col(&mut a, &mut u, c, pivot_col, -q);
                    if a[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (pivot_col..n)
        .map(|c| primitive(&(0..n).map(|i| u[i][c]).collect::<Vec<_>>()))
        .collect()
}

fn swap_cols(a: &mut [Vec<i64>], u: &mut [Vec<i64>], i: usize, j: usize) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

fn add_col(a: &mut [Vec<i64>], u: &mut [Vec<i64>], target: usize, src: usize, k: i64) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row[target] += k * row[src];
    }
}

/// Basis of `span_R(vectors) ∩ Z^n` (the saturated lattice), of size equal to
/// the rank of `vectors`.
pub fn saturated_basis(vectors: &[Point], n: usize) -> Vec<Point> {
    let nonzero: Vec<Point> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let complement = integer_kernel(&nonzero, n);
    integer_kernel(&complement, n)
}

pub fn rank(vectors: &[Point], n: usize) -> usize {
    saturated_basis(vectors, n).len()
}

/// Coordinates of `v` in the lattice basis `basis` (assumed to contain `v` in
/// its span). Solved by exact elimination on a `k x k` nonsingular minor.
pub fn coordinates(basis: &[Point], v: &[i64]) -> Point {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let n = v.len();
    // pick k coordinate rows giving a nonsingular minor
    for rows in choose(n, k) {
        let m: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| basis.iter().map(|b| b[r]).collect())
            .collect();
        let d = det(&m);
        if d == 0 {
            continue;
        }
        // Cramer's rule
        let coords: Point = (0..k)
            .map(|j| {
                let mj: Vec<Vec<i64>> = rows
                    .iter()
                    .enumerate()
                    .map(|(ri, &r)| {
                        (0..k)
                            .map(|c| if c == j { v[r] } else { m[ri][c] })
                            .collect()
                    })
                    .collect();
                let num = det(&mj);
                debug_assert_eq!(num % d, 0, "vector not in lattice");
                num / d
            })
            .collect();
        return coords;
    }
    panic!("degenerate lattice basis");
}

pub fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Integer normal to the hyperplane spanned by `n - 1` vectors in `Z^n`
/// (generalized cross product); zero when they are dependent.
pub fn normal_vector(vectors: &[Point], n: usize) -> Point {
    assert_eq!(vectors.len() + 1, n);
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_plane() {
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 1, 1]), 0);
        }
        // basis of the lattice: determinant of the 2x2 minors has gcd 1
        let n = normal_vector(&k, 3);
        assert_eq!(primitive(&n).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn saturation_recovers_primitive_direction() {
        let b = saturated_basis(&[vec![-2, 2, 0]], 3);
        assert_eq!(b.len(), 1);
        assert_eq!(gcd_all(&b[0]), 1);
        assert_eq!(coordinates(&b, &[-2, 2, 0]).iter().map(|x| x.abs()).sum::<i64>(), 2);
    }

    #[test]
    fn normal_of_two_vectors() {
        let n = normal_vector(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        assert_eq!(n, vec![0, 0, 1]);
        assert_eq!(det(&[vec![1, 0, 0], vec![2, 1, 1], vec![0, 1, 0]]), -1);
    }
}
