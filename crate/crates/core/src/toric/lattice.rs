//! Integer linear algebra: ranks, Hermite bases of point lattices and
//! fraction-free determinants.

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    echelon(rows.to_vec()).0.len()
}

/// Row-style Hermite reduction of the lattice spanned by `rows`: returns a
/// basis in echelon form together with each basis row's pivot column.
pub fn echelon(mut rows: Vec<Vec<i128>>) -> (Vec<Vec<i128>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        loop {
            let Some(best) = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs())
            else {
                break;
            };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col] / rows[top][col];
                    let pivot_row = rows[top].clone();
                    for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if rows[top][col] < 0 {
                    rows[top].iter_mut().for_each(|x| *x = -*x);
                }
                pivots.push(col);
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    (rows, pivots)
}

/// Integer coordinates of `x` in an echelon basis; `None` if `x` is not in
/// the lattice.
pub fn coordinates(basis: &[Vec<i128>], pivots: &[usize], x: &[i128]) -> Option<Vec<i128>> {
    let mut rest = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for (b, &p) in basis.iter().zip(pivots) {
        if rest[p] % b[p] != 0 {
            return None;
        }
        let c = rest[p] / b[p];
        for (r, y) in rest.iter_mut().zip(b) {
            *r -= c * y;
        }
        coords.push(c);
    }
    rest.iter().all(|&r| r == 0).then_some(coords)
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .expect("determinant overflow");
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(determinant(vec![vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(determinant(Vec::new()), 1);
    }

    #[test]
    fn hermite_basis_of_even_lattice() {
        let rows = vec![vec![2, 0], vec![0, 2], vec![2, 2], vec![4, 6]];
        let (basis, pivots) = echelon(rows);
        assert_eq!(basis.len(), 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(
            coordinates(&basis, &pivots, &[2, 4]).map(|c| c.len()),
            Some(2)
        );
        assert_eq!(coordinates(&basis, &pivots, &[1, 0]), None);
        assert_eq!(rank(&[vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 5]]), 2);
    }
}
