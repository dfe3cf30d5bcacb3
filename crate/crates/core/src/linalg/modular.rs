//! Linear congruences over `Z/m`, used for discrete-log systems.

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// One solution of `a x ≡ b (mod m)` for an integer matrix `a` given by
/// rows, or `None` if the system is inconsistent. The matrix is diagonalized
/// by unimodular row and column operations (Euclid steps), so the result is
/// deterministic.
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], m: i64) -> Option<Vec<i64>> {
    assert!(m >= 1);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let md = |x: i64| x.rem_euclid(m);
    let mut mat: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| md(x)).collect()).collect();
    let mut rhs: Vec<i64> = b.iter().map(|&x| md(x)).collect();
    // Column operations are tracked in `v` so that x = v y.
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();

    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in mat.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bx, _, _)| x < bx) {
                    best = Some((x, i, j));
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        mat.swap(t, bi);
        rhs.swap(t, bi);
        for row in mat.iter_mut().chain(v.iter_mut()) {
            row.swap(t, bj);
        }
        // Euclid steps on rows and columns until the pivot's row and column
        // are clear; the pivot value never increases, so this terminates.
        loop {
            for i in t + 1..rows {
                if mat[i][t] == 0 {
                    continue;
                }
                let (_, s, q, u, w) = step(mat[t][t], mat[i][t]);
                for j in 0..cols {
                    let (x, y) = (mat[t][j], mat[i][j]);
                    mat[t][j] = md(s * x + q * y);
                    mat[i][j] = md(-w * x + u * y);
                }
                let (x, y) = (rhs[t], rhs[i]);
                rhs[t] = md(s * x + q * y);
                rhs[i] = md(-w * x + u * y);
            }
            for j in t + 1..cols {
                if mat[t][j] == 0 {
                    continue;
                }
                let (_, s, q, u, w) = step(mat[t][t], mat[t][j]);
                for row in mat.iter_mut().chain(v.iter_mut()) {
                    let (x, y) = (row[t], row[j]);
                    row[t] = md(s * x + q * y);
                    row[j] = md(-w * x + u * y);
                }
            }
            if (t + 1..rows).all(|i| mat[i][t] == 0) {
                break;
            }
        }
        t += 1;
    }
    finish(&mat, &rhs, &v, t, m, cols)
}

/// Unimodular `[[s, q], [-w, u]]` sending `(a, b)` to `(g, 0)`. When `a`
/// divides `b` it is a plain elimination, so the pivot's other entries are
/// left alone and the reduction loop terminates.
fn step(a: i64, b: i64) -> (i64, i64, i64, i64, i64) {
    if b % a == 0 {
        return (a, 1, 0, 1, b / a);
    }
    let (g, s, q) = egcd(a, b);
    (g, s, q, a / g, b / g)
}

fn finish(mat: &[Vec<i64>], rhs: &[i64], v: &[Vec<i64>], diag: usize, m: i64, cols: usize) -> Option<Vec<i64>> {
    let mut y = vec![0i64; cols];
    for i in 0..diag {
        let d = mat[i][i];
        let g = egcd(d, m).0.abs();
        if rhs[i] % g != 0 {
            return None;
        }
        let mg = m / g;
        let (_, inv, _) = egcd((d / g).rem_euclid(mg.max(1)), mg.max(1));
        y[i] = if mg == 1 { 0 } else { ((rhs[i] / g) % mg * inv.rem_euclid(mg)).rem_euclid(mg) };
    }
    if rhs.iter().skip(diag).any(|&x| x.rem_euclid(m) != 0) {
        return None;
    }
    Some((0..cols).map(|i| (0..cols).map(|j| v[i][j] * y[j]).sum::<i64>().rem_euclid(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn residual_ok(a: &[Vec<i64>], b: &[i64], x: &[i64], m: i64) -> bool {
        a.iter().zip(b).all(|(row, &bi)| (row.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() - bi).rem_euclid(m) == 0)
    }

    #[test]
    fn simple_congruences() {
        // 2x ≡ 4 (mod 6)
        let x = solve_mod(&[vec![2]], &[4], 6).unwrap();
        assert!(residual_ok(&[vec![2]], &[4], &x, 6));
        // 2x ≡ 1 (mod 4) is inconsistent
        assert!(solve_mod(&[vec![2]], &[1], 4).is_none());
    }

    proptest! {
        #[test]
        fn solutions_of_consistent_systems(
            m in 2i64..13,
            a in proptest::collection::vec(proptest::collection::vec(-4i64..5, 3), 1..5),
            x0 in proptest::collection::vec(0i64..12, 3),
        ) {
            let b: Vec<i64> = a.iter().map(|r| r.iter().zip(&x0).map(|(p, q)| p * q).sum()).collect();
            let x = solve_mod(&a, &b, m);
            prop_assert!(x.is_some());
            prop_assert!(residual_ok(&a, &b, &x.unwrap(), m));
        }

        #[test]
        fn reported_solutions_are_valid(
            m in 2i64..9,
            a in proptest::collection::vec(proptest::collection::vec(0i64..9, 2), 1..4),
            b in proptest::collection::vec(0i64..9, 4),
        ) {
            let b = &b[..a.len()];
            if let Some(x) = solve_mod(&a, b, m) {
                prop_assert!(residual_ok(&a, b, &x, m));
            }
        }
    }
}
