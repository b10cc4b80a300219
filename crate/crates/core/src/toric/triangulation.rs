//! Placing triangulation of a full-dimensional point configuration in
//! `Z^d`, used only to sum simplex volumes.
//!
//! The boundary of the current triangulated hull is kept as oriented
//! `(d-1)`-simplices. A new point outside the hull is coned over every
//! boundary face it sees strictly; the horizon ridges then close the new
//! boundary. Points inside or on the hull add nothing.

use std::collections::HashMap;

use super::lattice::{determinant, rank};

struct Face {
    vertices: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

impl Face {
    /// `normal . p - offset`; equals the signed `d!`-volume of the simplex
    /// spanned by the face and `p`.
    fn height(&self, p: &[i128]) -> i128 {
        self.normal.iter().zip(p).map(|(a, b)| a * b).sum::<i128>() - self.offset
    }
}

/// Cofactor normal of the hyperplane through `vertices` (d points in Z^d).
fn oriented_face(
    points: &[Vec<i128>],
    vertices: Vec<usize>,
    reference: &[i128],
    scale: i128,
) -> Face {
    let d = points[0].len();
    let base = &points[vertices[0]];
    let diffs: Vec<Vec<i128>> = vertices[1..]
        .iter()
        .map(|&v| points[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal: Vec<i128> = (0..d)
        .map(|k| {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != k)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if (k + d - 1) % 2 == 0 { 1 } else { -1 };
            sign * determinant(minor)
        })
        .collect();
    let mut offset: i128 = normal.iter().zip(base).map(|(a, b)| a * b).sum();
    // the reference point is `reference / scale`; it must lie below
    let side: i128 = normal
        .iter()
        .zip(reference)
        .map(|(a, b)| a * b)
        .sum::<i128>()
        - scale * offset;
    assert!(side != 0, "reference point on a boundary hyperplane");
    if side > 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    Face {
        vertices,
        normal,
        offset,
    }
}

/// Normalized volume (`d!` times Euclidean volume) of the convex hull of
/// `points`, which must affinely span `Z^d`. Points are placed in the
/// given order.
pub fn normalized_volume(points: &[Vec<i128>]) -> u128 {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 {
        return 1;
    }
    // initial simplex: greedily grow an affinely independent set
    let mut simplex = vec![0usize];
    for (k, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let mut diffs: Vec<Vec<i128>> = simplex[1..]
            .iter()
            .map(|&v| {
                points[v]
                    .iter()
                    .zip(&points[0])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        diffs.push(p.iter().zip(&points[0]).map(|(a, b)| a - b).collect());
        if rank(&diffs) == diffs.len() {
            simplex.push(k);
        }
    }
    assert_eq!(simplex.len(), d + 1, "points do not span the ambient space");

    let edges: Vec<Vec<i128>> = simplex[1..]
        .iter()
        .map(|&v| {
            points[v]
                .iter()
                .zip(&points[simplex[0]])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let mut volume = determinant(edges).unsigned_abs();

    let scale = (d + 1) as i128;
    let reference: Vec<i128> = (0..d)
        .map(|c| simplex.iter().map(|&v| points[v][c]).sum())
        .collect();
    let mut faces: Vec<Face> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            oriented_face(points, verts, &reference, scale)
        })
        .collect();

    for (k, p) in points.iter().enumerate() {
        if simplex.contains(&k) {
            continue;
        }
        let (visible, hidden): (Vec<Face>, Vec<Face>) =
            faces.into_iter().partition(|f| f.height(p) > 0);
        faces = hidden;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &visible {
            volume += f.height(p) as u128;
            for skip in 0..f.vertices.len() {
                let mut ridge = f.vertices.clone();
                ridge.remove(skip);
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        for (ridge, count) in ridges {
            if count == 1 {
                let mut verts = ridge;
                verts.push(k);
                faces.push(oriented_face(points, verts, &reference, scale));
            }
        }
    }
    volume
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_and_cube() {
        let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(normalized_volume(&square), 2);
        let cube: Vec<Vec<i128>> = (0..8)
            .map(|m| (0..3).map(|b| (m >> b) & 1).collect())
            .collect();
        assert_eq!(normalized_volume(&cube), 6);
    }

    #[test]
    fn interior_points_change_nothing() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1], vec![1, 0]];
        assert_eq!(normalized_volume(&pts), 4);
    }

    #[test]
    fn segment() {
        assert_eq!(normalized_volume(&[vec![0], vec![3], vec![1]]), 3);
    }
}
